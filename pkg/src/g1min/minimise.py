"""Local and global minimisation with level certificates.

A run at a prime p repeats: compute the level against the Jacobian; if it is
positive, try the fiber-driven moves (one per non-normal configuration), and
failing that a bounded search over elementary moves.  Every accepted move has
determinant a negative power of p, so ``v_p(disc)`` drops by a multiple of 12
and nothing changes at other primes.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from sympy import factorint

from .arith import (
    INF,
    LocalContext,
    MultiPoly,
    complete_basis_mod_p,
    mod_pk,
    nullspace_mod_p,
    poly_valuation,
    projective_points,
    reduce_mod_p,
    substitute_linear,
    unimodular_from_mod_p,
    valuation,
)
from .errors import SingularInput, UnsupportedResidueField
from .fiber import (
    FiberKind,
    _ctx,
    check_input,
    classify_fiber,
    cubic_split,
    prime_bound,
    singular_lines,
    singular_points,
)
from .invariants import invariants
from .jacobian import level, minimal_discriminant_from_invariants, model_with_invariants
from .models import (
    GenusOneEquation,
    T1,
    T2,
    T3,
    T4,
    apply,
    compose,
    identity_transformation,
)

PRECISION = 8  # p-adic precision used for shifts and inverses


class Status(enum.Enum):
    MINIMAL_CERTIFIED = "MinimalCertified"
    MINIMAL_NO_CERTIFICATE = "MinimalNoCertificate"
    NOT_MINIMAL_DETECTED = "NotMinimalDetected"


class GeometricStatus(enum.Enum):
    GEOMETRICALLY_MINIMAL = "GeometricallyMinimal"
    NOT_GEOMETRICALLY_MINIMAL = "NotGeometricallyMinimal"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Move:
    transformation: object
    tag: str
    k: int  # v_p(disc) drops by 12 k
    shape: object = None  # the scaling part, for the fiber-driven moves
    position: object = None  # the positioning part, likewise


@dataclass(frozen=True)
class MinimisationCertificate:
    prime: int
    input: GenusOneEquation
    moves: tuple
    valuations: tuple  # v_p(disc) before the first move and after each move
    final: GenusOneEquation
    level: int
    status: Status  # of the final equation
    input_status: Status  # of the input equation
    transformation: object  # composite of all moves
    hint: Optional[str] = None

    @property
    def is_minimal(self) -> Optional[bool]:
        """Three-valued verdict on the input: True, False, or None when unknown."""
        return {Status.MINIMAL_CERTIFIED: True,
                Status.NOT_MINIMAL_DETECTED: False,
                Status.MINIMAL_NO_CERTIFICATE: None}[self.input_status]


def _vdisc(phi, p):
    return valuation(invariants(phi).disc, p)


def _finish_move(phi, g, p, tag, shape=None, position=None):
    """Wrap g as a Move if it keeps phi integral and strictly lowers v_p(disc)."""
    psi = apply(g, phi)
    if any(valuation(c, p) < 0 for c in psi.coeffs):
        return None
    drop = _vdisc(phi, p) - _vdisc(psi, p)
    if drop <= 0:
        return None
    return Move(g, tag, drop // 12, shape, position)


# ---------------------------------------------------------------------------
# degree 1


def weierstrass_move(E: GenusOneEquation, p: int, k: int) -> Move:
    """T1 with u = p^k onto an integral model of the curve scaled down by u."""
    c4, c6, _ = invariants(E)
    u = Fraction(p) ** k
    target = model_with_invariants(c4 / u**4, c6 / u**6)
    a1, a2, a3, _, _ = E.coeffs
    b1, b2, b3, _, _ = target.coeffs
    s = (u * b1 - a1) / 2
    r = (u * u * b2 - a2 + s * a1 + s * s) / 3
    t = (u**3 * b3 - a3 - r * a1) / 2
    g = T1(u, r, s, t)
    if apply(g, E) != target:
        raise AssertionError("Weierstrass change of variables does not reach the target")
    return Move(g, "weierstrass", k)


# ---------------------------------------------------------------------------
# fiber-driven moves


def _diag(*xs):
    n = len(xs)
    return tuple(tuple(Fraction(xs[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def nonminimal_step(phi: GenusOneEquation, ctx) -> Optional[Move]:
    """The level-lowering move attached to a non-normal special fiber, if any."""
    ctx = _ctx(ctx)
    p = ctx.p
    check_input(phi, ctx)
    if phi.degree == 1:
        lv = level(phi, ctx)
        return weierstrass_move(phi, p, lv.value) if lv.value > 0 else None
    if p > prime_bound():
        return None
    try:
        cls, pos = classify_fiber(phi, ctx)
    except UnsupportedResidueField:
        return None
    if pos is None:
        return None
    psi = pos.equation
    P = Fraction(p)
    if phi.degree == 2:
        g, f = psi.binary_forms()
        if poly_valuation(f, ctx) < 2:
            return None
        shape = T2(1 / P)
        return _finish_move(phi, compose(shape, pos.transformation), p, "n2-double-line", shape, pos.transformation)
    if phi.degree == 3:
        _, _, f2, f3 = cubic_split(psi)
        if poly_valuation(f2, ctx) < 1 or poly_valuation(f3, ctx) < 2:
            return None
        shape = T3(1 / P**2, _diag(1, p, 1))
        return _finish_move(phi, compose(shape, pos.transformation), p, "n3-multiple-line", shape, pos.transformation)
    return _deg4_step(phi, ctx, cls, pos)


def _deg4_step(phi, ctx, cls, pos):
    from .fiber4 import LINE_SETS, conic_double_line_poly, double_conic_mu

    p = ctx.p
    P = Fraction(p)
    psi = pos.equation
    k = cls.kind
    if k is FiberKind.CONIC_PLUS_DOUBLE_LINE:
        if poly_valuation(conic_double_line_poly(psi), ctx) < 2:
            return None
        clean = _conic_cleanup(psi, p)
        shape = T4(_diag(1 / P**2, 1 / P**2), _diag(p * p, p, 1, 1))
        position = compose(clean, pos.transformation)
        return _finish_move(phi, compose(shape, position), p, "n4-conic-double-line", shape, position)
    if k is FiberKind.DOUBLE_CONIC:
        mu = double_conic_mu(psi, ctx)
        if mu is None:
            return None
        shape = T4(((1 / P**2, -mu / P**2), (0, 1)), _diag(p, 1, 1, 1))
        return _finish_move(phi, compose(shape, pos.transformation), p, "n4-double-conic", shape, pos.transformation)
    if k in LINE_SETS:
        F = psi.quadrics()[0]
        for line in LINE_SETS[k]:
            rest = MultiPoly(4, {e: c for e, c in F.terms.items() if all(e[i] == 0 for i in line)})
            if poly_valuation(rest, ctx) >= 2:
                scal = [p if i in line else 1 for i in range(4)]
                shape = T4(_diag(1 / P**2, 1 / P), _diag(*scal))
                mv = _finish_move(phi, compose(shape, pos.transformation), p, "n4-multiple-line",
                                  shape, pos.transformation)
                if mv is not None:
                    return mv
    return None


def _idx(i, j):
    from .fiber4 import MONO_INDEX, _pair
    return MONO_INDEX[_pair(i, j)]


def _conic_cleanup(psi: GenusOneEquation, p: int):
    """Unimodular integral change clearing x1-terms (other than x1x3 in F, x1x4 in G)
    to valuation >= 2, then the shear removing the x3^2 and x3x4 terms of F."""
    K = PRECISION
    pk = p**K
    total = identity_transformation(4)
    cur = psi

    def c(eq, quad, i, j):
        return eq.coeffs[10 * quad + _idx(i, j)]

    def transvection(col, entries):
        N = [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
        for row, val in entries.items():
            N[row][col] = Fraction(val)
        return T4(((1, 0), (0, 1)), N)

    for _ in range(4 * K):
        F_bad = [c(cur, 0, 0, 0), c(cur, 0, 0, 3)]
        G_bad = [c(cur, 1, 0, 0), c(cur, 1, 0, 2)]
        if all(valuation(x, p) >= 2 for x in F_bad + G_bad):
            break
        inv_a3 = pow(mod_pk(c(cur, 0, 0, 2), p, K), -1, pk)
        g = transvection(2, {0: -inv_a3 * mod_pk(c(cur, 0, 0, 0), p, K) % pk,
                             1: -inv_a3 * mod_pk(c(cur, 0, 0, 1), p, K) % pk,
                             3: -inv_a3 * mod_pk(c(cur, 0, 0, 3), p, K) % pk})
        cur, total = apply(g, cur), compose(g, total)
        inv_b4 = pow(mod_pk(c(cur, 1, 0, 3), p, K), -1, pk)
        g = transvection(3, {0: -inv_b4 * mod_pk(c(cur, 1, 0, 0), p, K) % pk,
                             1: -inv_b4 * mod_pk(c(cur, 1, 0, 1), p, K) % pk,
                             2: -inv_b4 * mod_pk(c(cur, 1, 0, 2), p, K) % pk})
        cur, total = apply(g, cur), compose(g, total)
    inv_a3 = pow(mod_pk(c(cur, 0, 0, 2), p, K), -1, pk)
    l3 = -mod_pk(c(cur, 0, 2, 2), p, K) * inv_a3 % pk
    l4 = -mod_pk(c(cur, 0, 2, 3), p, K) * inv_a3 % pk
    g = transvection(0, {2: l3, 3: l4})
    return compose(g, total)


# ---------------------------------------------------------------------------
# guided search


def _weights(n):
    return [e for e in itertools.product(range(3), repeat=n) if min(e) == 0 and max(e) > 0]


def _frame_from_rows(rows, p):
    return unimodular_from_mod_p(rows, p)


def _frames(phi, p, limit_points=40):
    """Integer det-1 matrices whose rows start at special points/lines/planes of the reduction."""
    n = {2: 2, 3: 3, 4: 4}[phi.degree]
    ctx = LocalContext(p)
    frames = [[[int(i == j) for j in range(n)] for i in range(n)]]
    seen = {tuple(map(tuple, frames[0]))}

    def add(rows):
        try:
            U = _frame_from_rows(rows, p)
        except (ValueError, StopIteration):
            return
        key = tuple(tuple(x % p for x in r) for r in U)
        if key not in seen:
            seen.add(key)
            frames.append(U)

    if phi.degree == 2:
        for pt in projective_points(2, p):
            add(complete_basis_mod_p([list(pt)], p, 2))
        return frames
    polys = [reduce_mod_p(P, ctx) for P in phi.polys()]
    if all(f.is_zero() for f in polys):
        return frames
    polys = [f for f in polys if not f.is_zero()]
    if phi.degree == 4 and len(polys) < 2:
        return frames
    pts = singular_points(polys, p, n)
    if len(pts) <= limit_points:
        for s in pts:
            add(complete_basis_mod_p([list(s)], p, n))
            # the complementary orientation: s as the last row
            b = complete_basis_mod_p([list(s)], p, n)
            add(b[1:] + b[:1])
        for a, b in singular_lines(polys, p, n) if len(pts) >= 2 else []:
            base = complete_basis_mod_p([list(a), list(b)], p, n)
            if n == 3:
                add([base[0], base[2], base[1]])
                add([base[2], base[0], base[1]])
            else:
                add([base[2], base[3], base[0], base[1]])
                add([base[0], base[1], base[2], base[3]])
    if phi.degree == 4 and p != 2:
        from .fiber4 import linear_factors, sym_mod_p
        SF, SG = sym_mod_p(phi.coeffs[:10], p), sym_mod_p(phi.coeffs[10:], p)
        members = [SF] + [[[(lam * a + b) % p for a, b in zip(r1, r2)] for r1, r2 in zip(SF, SG)]
                          for lam in range(p)]
        for S in members:
            for ell in linear_factors(S, p):
                plane = nullspace_mod_p([list(ell)], p, 4)
                add(complete_basis_mod_p(plane, p, 4)[3:] + plane)
    try:
        _, pos = classify_fiber(phi, ctx)
        if pos is not None:
            g = pos.transformation
            M = g.M if phi.degree == 3 else g.N
            add([[int(x) % p for x in r] for r in M])
    except Exception:
        pass
    return frames


def _valuation_table(poly: MultiPoly, p):
    return [(e, valuation(c, p)) for e, c in poly.terms.items()]


def _weighted_min(table, e):
    return min((v + sum(a * b for a, b in zip(e, ex)) for ex, v in table), default=INF)


def _pencil_reduce(F, G, p, mF, mG, rounds=6):
    """Greedy row operations on (F, G) raising mF + mG.  Returns (M, mF, mG) with
    M an integer matrix of determinant 1 such that M (F, G) has valuations (mF, mG)."""
    ctx = LocalContext(p)
    M = [[1, 0], [0, 1]]
    for _ in range(rounds):
        if mF is INF or mG is INF:
            break
        if mF >= mG:
            A, B, mA, mB, ia, ib = F, G, mF, mG, 0, 1
        else:
            A, B, mA, mB, ia, ib = G, F, mG, mF, 1, 0
        Ar = reduce_mod_p(A * Fraction(1, p**mA), ctx)
        Br = reduce_mod_p(B * Fraction(1, p**mB), ctx)
        lead = next(iter(sorted(Br.terms)))
        c = Ar.coeff(lead) * pow(Br.coeff(lead), -1, p) % p
        if not (Ar - Br * c).is_zero():
            break
        factor = c * p ** (mA - mB)
        A = A - B * factor
        M[ia] = [M[ia][0] - factor * M[ib][0], M[ia][1] - factor * M[ib][1]]
        mA_new = poly_valuation(A, ctx)
        if ia == 0:
            F, mF = A, mA_new
        else:
            G, mG = A, mA_new
    return M, mF, mG


def _elementary(phi, p, want_neutral=False):
    """Yield (transformation, drop) for elementary moves in a fixed order."""
    n = {2: 2, 3: 3, 4: 4}[phi.degree]
    P = Fraction(p)
    shift = None
    if phi.degree == 2:
        shift = _deg2_shift_candidates(phi, p)
    for U in _frames(phi, p):
        Uq = tuple(tuple(Fraction(x) for x in r) for r in U)
        for r in (shift or [None]):
            if phi.degree == 2:
                g0 = T2(1, r)
                cur = apply(g0, phi)
                g, f = cur.binary_forms()
                tg = _valuation_table(substitute_linear(g, Uq), p)
                tf = _valuation_table(substitute_linear(f, Uq), p)
                for e in _weights(n):
                    vg, vf = _weighted_min(tg, e), _weighted_min(tf, e)
                    a = min(vg, vf // 2 if vf is not INF else INF)
                    if a is INF:
                        continue
                    d = a - sum(e)
                    if d > 0 or (want_neutral and d == 0):
                        D = _diag(*[p**x for x in e])
                        M = _matmul(D, Uq)
                        yield compose(T2(1 / P**a, (0, 0, 0), M), g0), d
            elif phi.degree == 3:
                FU = substitute_linear(phi.cubic(), Uq)
                t = _valuation_table(FU, p)
                for e in _weights(n):
                    m = _weighted_min(t, e)
                    d = m - sum(e)
                    if d > 0 or (want_neutral and d == 0):
                        M = _matmul(_diag(*[p**x for x in e]), Uq)
                        yield T3(1 / P**m, M), d
            else:
                F, G = phi.quadrics()
                FU, GU = substitute_linear(F, Uq), substitute_linear(G, Uq)
                tF, tG = _valuation_table(FU, p), _valuation_table(GU, p)
                for e in _weights(n):
                    mF, mG = _weighted_min(tF, e), _weighted_min(tG, e)
                    s = sum(e)
                    Mp = [[1, 0], [0, 1]]
                    if mF + mG < s + 1:
                        if mF + mG < s - 2:
                            continue
                        scale = [P**x for x in e]
                        Fe, Ge = FU.scale_vars(scale), GU.scale_vars(scale)
                        Mp, mF, mG = _pencil_reduce(Fe, Ge, p, mF, mG)
                    d = mF + mG - s
                    if d > 0 or (want_neutral and d == 0):
                        D = _diag(*[p**x for x in e])
                        N = _matmul(D, Uq)
                        Mfull = ((Mp[0][0] / P**mF, Mp[0][1] / P**mF), (Mp[1][0] / P**mG, Mp[1][1] / P**mG))
                        yield T4(Mfull, N), d


def _matmul(A, B):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _deg2_shift_candidates(phi, p):
    """y-shifts to try: for odd p the one killing g to high precision, for p = 2 all residues."""
    K = PRECISION
    if p != 2:
        inv2 = pow(2, -1, p**K)
        return [tuple(-mod_pk(c, p, K) * inv2 % p**K for c in phi.coeffs[:3])]
    return [tuple(r) for r in itertools.product(range(2), repeat=3)]


def search_move(phi: GenusOneEquation, ctx, depth: int = 3, tag: str = "search") -> Optional[Move]:
    """First elementary composite (up to ``depth`` steps) that lowers v_p(disc)."""
    ctx = _ctx(ctx)
    p = ctx.p
    if phi.degree == 1 or p > prime_bound():
        return None
    v0 = _vdisc(phi, p)
    frontier = [(identity_transformation(phi.degree), phi)]
    seen = {phi.coeffs}
    for level_ in range(depth):
        nxt = []
        for g_acc, cur in frontier:
            for g, d in _elementary(cur, p, want_neutral=level_ < depth - 1):
                total = compose(g, g_acc)
                psi = apply(g, cur)
                if d > 0:
                    mv = _finish_move(phi, total, p, tag)
                    if mv is not None:
                        return mv
                    continue
                if psi.coeffs not in seen and _vdisc(psi, p) == v0:
                    seen.add(psi.coeffs)
                    nxt.append((total, psi))
        frontier = nxt[:60]
        if not frontier:
            break
    return None


# ---------------------------------------------------------------------------
# drivers


def minimise_local(phi: GenusOneEquation, ctx, depth: int = 3, max_moves: int = 64) -> MinimisationCertificate:
    ctx = _ctx(ctx)
    p = ctx.p
    check_input(phi, ctx)
    hint = None
    if phi.degree == 4 and p != 2 and p <= prime_bound():
        from .fiber4 import reduction_screen
        screen = reduction_screen(phi, ctx)
        if screen is not None:
            hint = "common-factor" if screen.kind is FiberKind.COMMON_FACTOR else "degenerate-x1x2"
    cur = phi
    moves, vals = [], [_vdisc(phi, p)]
    total = identity_transformation(phi.degree)
    lv = level(cur, ctx)
    while lv.value > 0 and len(moves) < max_moves:
        mv = nonminimal_step(cur, ctx)
        if mv is None:
            mv = search_move(cur, ctx, depth, tag=hint if (hint and not moves) else "search")
        if mv is None:
            break
        cur = apply(mv.transformation, cur)
        total = compose(mv.transformation, total)
        moves.append(mv)
        vals.append(_vdisc(cur, p))
        lv = level(cur, ctx)
    status = Status.MINIMAL_CERTIFIED if lv.value == 0 else Status.MINIMAL_NO_CERTIFICATE
    if moves or hint == "common-factor":
        input_status = Status.NOT_MINIMAL_DETECTED
    else:
        input_status = status
    return MinimisationCertificate(p, phi, tuple(moves), tuple(vals), cur, lv.value, status,
                                   input_status, total, hint)


def is_minimal(phi: GenusOneEquation, ctx, depth: int = 3):
    cert = minimise_local(phi, ctx, depth)
    return cert.is_minimal, cert


def geometric_status(cert: MinimisationCertificate, verdict) -> GeometricStatus:
    if cert.input_status is Status.NOT_MINIMAL_DETECTED:
        return GeometricStatus.NOT_GEOMETRICALLY_MINIMAL
    if cert.input_status is Status.MINIMAL_CERTIFIED and verdict is not None and verdict.is_normal is True:
        return GeometricStatus.GEOMETRICALLY_MINIMAL
    return GeometricStatus.UNKNOWN


@dataclass(frozen=True)
class GlobalCertificate:
    input: GenusOneEquation
    final: GenusOneEquation
    local: dict  # prime -> MinimisationCertificate
    transformation: object
    delta_final: Fraction
    delta_min: Fraction

    @property
    def certified(self) -> bool:
        return all(c.status is Status.MINIMAL_CERTIFIED for c in self.local.values()) and \
            abs(self.delta_final) == abs(self.delta_min)


def minimise_global(phi: GenusOneEquation, depth: int = 3) -> GlobalCertificate:
    if any(c.denominator != 1 for c in phi.coeffs):
        from .errors import NonIntegralCoefficient
        raise NonIntegralCoefficient("global minimisation needs integer coefficients")
    c4, c6, disc = invariants(phi)
    if disc == 0:
        raise SingularInput("discriminant is zero")
    report = minimal_discriminant_from_invariants(c4, c6)
    cur = phi
    total = identity_transformation(phi.degree)
    local = {}
    for p in sorted(factorint(abs(disc.numerator))):
        if valuation(disc, p) - report.valuations.get(p, 0) < 12:
            continue
        cert = minimise_local(cur, p, depth)
        local[p] = cert
        cur = cert.final
        total = compose(cert.transformation, total)
    return GlobalCertificate(phi, cur, local, total, invariants(cur).disc, report.delta_min)
