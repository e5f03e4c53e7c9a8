"""Special fibers of quadric intersections (degree 4).

Quadrics are handled mod p as symmetric matrices (p odd), with points as row
vectors: ``F(x) = x S x^T``.  A substitution ``x_old = x_new N`` acts by
``S -> N S N^T``.  Classification order:

1. common factor of the two reductions (proportional, or a shared rational plane);
2. both quadrics binary in the same two forms: ``x1^2 = x2^2 = 0`` type;
3. a pencil member that is a square ``c l^2``: double conic, two double lines,
   quadruple line, according to the other quadric on ``l = 0``;
4. a line along which the reduction is singular: the remaining table rows,
   told apart by the 2x2 coupling between the line and its complement.
"""
from __future__ import annotations

import itertools

from .arith import (
    MultiPoly,
    complete_basis_mod_p,
    mod_p,
    nullspace_mod_p,
    poly_valuation,
    rank_mod_p,
    reduce_mod_p,
    unimodular_from_mod_p,
)
from .errors import PositionViolation, UnsupportedResidueField
from .fiber import (
    ALL_MULT_ONE,
    FiberClass,
    FiberKind,
    NormalityVerdict,
    StandardPosition,
    _ctx,
    singular_lines,
)
from .models import QUADRIC_MONOMIALS, GenusOneEquation, T4, apply

MONO_INDEX = {m: k for k, m in enumerate(QUADRIC_MONOMIALS)}


def _pair(i, j):
    e = [0, 0, 0, 0]
    e[i] += 1
    e[j] += 1
    return tuple(e)


def sym_mod_p(coeffs, p):
    inv2 = pow(2, -1, p)
    S = [[0] * 4 for _ in range(4)]
    for c, m in zip(coeffs, QUADRIC_MONOMIALS):
        c = mod_p(c, p)
        idx = [i for i in range(4) for _ in range(m[i])]
        i, j = idx
        if i == j:
            S[i][i] = c
        else:
            S[i][j] = S[j][i] = c * inv2 % p
    return S


def bil(S, u, v, p):
    return sum(u[i] * S[i][j] * v[j] for i in range(len(u)) for j in range(len(v))) % p


def congruent(S, V, p):
    """V S V^T for a list of row vectors V."""
    return [[bil(S, a, b, p) for b in V] for a in V]


def _rank(S, p):
    return rank_mod_p(S, p)


def _sym_to_support(S, p):
    sup = set()
    for i in range(4):
        for j in range(i, 4):
            if S[i][j] % p:
                sup.add(_pair(i, j))
    return sup


def _comb(coeffs, vecs, p):
    out = [0] * len(vecs[0])
    for c, v in zip(coeffs, vecs):
        out = [(a + c * b) % p for a, b in zip(out, v)]
    return out


def _inv(a, p):
    return pow(a % p, -1, p)


class _Frame:
    """The pair (S_F, S_G) in moving coordinates; rows of N are the new basis points."""

    def __init__(self, SF, SG, p):
        self.p = p
        self.SF, self.SG = SF, SG
        self.rows = [[int(i == j) for j in range(4)] for i in range(4)]
        self.M = [[1, 0], [0, 1]]

    def set_rows(self, rows):
        self.rows = [[x % self.p for x in r] for r in rows]

    def F(self, u, v):
        return bil(self.SF, u, v, self.p)

    def G(self, u, v):
        return bil(self.SG, u, v, self.p)

    def pencil(self, M):
        p = self.p
        (a, b), (c, d) = M
        SF = [[(a * x + b * y) % p for x, y in zip(r1, r2)] for r1, r2 in zip(self.SF, self.SG)]
        SG = [[(c * x + d * y) % p for x, y in zip(r1, r2)] for r1, r2 in zip(self.SF, self.SG)]
        self.SF, self.SG = SF, SG
        self.M = [[(M[i][0] * self.M[0][j] + M[i][1] * self.M[1][j]) % p for j in range(2)] for i in range(2)]

    def shift(self, i, coeffs_by_row):
        """rows[i] += sum c_k rows[k]."""
        p = self.p
        r = list(self.rows[i])
        for k, c in coeffs_by_row.items():
            r = [(a + c * b) % p for a, b in zip(r, self.rows[k])]
        self.rows[i] = r

    def current(self):
        R = self.rows
        return congruent(self.SF, R, self.p), congruent(self.SG, R, self.p)


def _finish(phi, frame, kind, param=None):
    p = frame.p
    N = unimodular_from_mod_p(frame.rows, p)
    M = unimodular_from_mod_p(frame.M, p)
    g = T4(M, N)
    psi = apply(g, phi)
    cls = FiberClass(kind, param)
    if not table_form_ok(psi, p, cls):
        raise PositionViolation(f"positioning for {cls} did not reach the table form")
    return cls, StandardPosition(g, psi)


# expected supports of the reductions in standard position (unit scalars allowed)
X = _pair
TABLE_SUPPORT = {
    FiberKind.CONIC_PLUS_DOUBLE_LINE: ({X(0, 2)}, {X(1, 1), X(0, 3)}),
    FiberKind.DOUBLE_CONIC: ({X(0, 0)}, {X(1, 1), X(2, 3)}),
    FiberKind.QUADRUPLE_LINE: ({X(0, 0)}, {X(1, 1), X(0, 2)}),
    FiberKind.TRIPLE_LINE_PLUS_LINE: ({X(0, 1)}, {X(0, 0), X(1, 3)}),
}
BINARY = {X(0, 0), X(0, 1), X(1, 1)}


def table_form_ok(psi: GenusOneEquation, p: int, cls: FiberClass) -> bool:
    """Does the reduction of ``psi`` have the table's shape for ``cls``?

    Exact supports are required, so only unit scalars on monomials can differ.
    For the double line + two lines row the binary quadric is any rank 2 form
    in x1, x2 (over F_p it need not be equivalent to x1^2 + x2^2).
    """
    SF = sym_mod_p(psi.coeffs[:10], p)
    SG = sym_mod_p(psi.coeffs[10:], p)
    sF, sG = _sym_to_support(SF, p), _sym_to_support(SG, p)
    k = cls.kind
    if k in TABLE_SUPPORT:
        return (sF, sG) == TABLE_SUPPORT[k]
    if k is FiberKind.TWO_DOUBLE_LINES:
        return sF == {X(1, 1)} and sG == ({X(0, 2), X(1, 3)} if cls.param else {X(0, 2)})
    if k is FiberKind.DOUBLE_LINE_PLUS_TWO_LINES:
        q = [row[:2] for row in SF[:2]]
        return (sF <= BINARY and _rank(q, p) == 2
                and sG == ({X(0, 2), X(1, 3)} if cls.param else {X(0, 2)}))
    return False


# ---------------------------------------------------------------------------
# step 1: common factors


def linear_factors(S, p):
    """Rational linear factors (as coefficient vectors) of a quadric of rank <= 2."""
    r = _rank(S, p)
    if r == 0 or r > 2:
        return []
    K = nullspace_mod_p(S, p, 4)
    if r == 1:
        return [nullspace_mod_p(K, p, 4)[0]]
    W = complete_basis_mod_p(K, p, 4)[len(K):]
    w1, w2 = W
    q11, q12, q22 = bil(S, w1, w1, p), bil(S, w1, w2, p), bil(S, w2, w2, p)
    out = []
    for s, t in [(1, t) for t in range(p)] + [(0, 1)]:
        if (q11 * s * s + 2 * q12 * s * t + q22 * t * t) % p == 0:
            v = _comb((s, t), (w1, w2), p)
            out.append(nullspace_mod_p(K + [v], p, 4)[0])
    return out


def vanishes_on_plane(S, ell, p):
    V = nullspace_mod_p([list(ell)], p, 4)
    return all(x % p == 0 for row in congruent(S, V, p) for x in row)


def _has_common_factor(SF, SG, p):
    vF = [x for r in SF for x in r]
    vG = [x for r in SG for x in r]
    if rank_mod_p([vF, vG], p) < 2:
        return True
    for S, T in ((SF, SG), (SG, SF)):
        for ell in linear_factors(S, p):
            if vanishes_on_plane(T, ell, p):
                return True
    return False


def reduction_screen(phi: GenusOneEquation, ctx):
    """CommonFactor, DegenerateX1X2 or None."""
    ctx = _ctx(ctx)
    p = ctx.p
    if p == 2:
        raise UnsupportedResidueField("degree 4 fibers are handled for odd p only")
    SF, SG = sym_mod_p(phi.coeffs[:10], p), sym_mod_p(phi.coeffs[10:], p)
    if _has_common_factor(SF, SG, p):
        return FiberClass(FiberKind.COMMON_FACTOR)
    if len(nullspace_mod_p(SF + SG, p, 4)) >= 2:
        return FiberClass(FiberKind.DEGENERATE_X1X2)
    return None


# ---------------------------------------------------------------------------
# step 3: square members


def _square_member(fr):
    p = fr.p
    members = [((1, 0), fr.SF)] + [((lam, 1), [[(lam * a + b) % p for a, b in zip(r1, r2)]
                                               for r1, r2 in zip(fr.SF, fr.SG)]) for lam in range(p)]
    for c, S in members:
        if _rank(S, p) == 1:
            return c
    return None


def _hyperbolic_pair(Sv, basis, p):
    """Isotropic P, Q in span(basis) with Sv(P, Q) = 1/2 (form restricted is nondegenerate there)."""
    n = len(basis)
    P = None
    for coeffs in itertools.product(range(p), repeat=n):
        if any(coeffs):
            v = _comb(coeffs, basis, p)
            if bil(Sv, v, v, p) == 0:
                P = v
                break
    if P is None:
        return None
    w = next(b for b in basis if bil(Sv, P, b, p))
    bpw = bil(Sv, P, w, p)
    Q = [(x - bil(Sv, w, w, p) * _inv(2 * bpw, p) * y) % p for x, y in zip(w, P)]
    scale = _inv(2 * bil(Sv, P, Q, p), p)
    Q = [x * scale % p for x in Q]
    return P, Q


def _classify_square(phi, fr, c):
    p = fr.p
    if c != (1, 0):
        fr.pencil([[c[0], c[1]], [1, 0]])  # F <- square member, G <- old F
    ell = nullspace_mod_p(nullspace_mod_p(fr.SF, p, 4), p, 4)[0]
    V = nullspace_mod_p([ell], p, 4)  # three points spanning the plane ell = 0
    TV = congruent(fr.SG, V, p)
    r = _rank(TV, p)
    j = next(i for i, x in enumerate(ell) if x)
    r1 = [int(i == j) for i in range(4)]
    if r == 3:
        P, Q = _hyperbolic_pair(fr.SG, V, p)
        R = nullspace_mod_p([[bil(fr.SG, P, e, p) for e in _units()], [bil(fr.SG, Q, e, p) for e in _units()]]
                            + [ell], p, 4)[0]
        fr.set_rows([r1, R, P, Q])
        _kill_cross(fr, 0, [1, 2, 3])
        _absorb_square(fr, 0)
        return _finish(phi, fr, FiberKind.DOUBLE_CONIC)
    if r == 2:
        K = nullspace_mod_p(TV, p, 3)
        k = _comb(K[0], V, p)
        comp = [_comb(b, V, p) for b in complete_basis_mod_p(K, p, 3)[1:]]
        pair = _hyperbolic_pair(fr.SG, comp, p)
        if pair is None:
            raise UnsupportedResidueField("the two double lines are conjugate over F_p")
        P, Q = pair
        fr.set_rows([P, r1, Q, k])
        # x2 is the square variable: clear x1x2 and x2x3 via the isotropic pair
        a = fr.G(fr.rows[1], fr.rows[0])
        b = fr.G(fr.rows[1], fr.rows[2])
        fr.shift(1, {0: -2 * b % p, 2: -2 * a % p})
        _absorb_square(fr, 1)
        delta = fr.G(fr.rows[1], fr.rows[3])
        mu = 0
        if delta:
            fr.rows[3] = [x * _inv(2 * delta, p) % p for x in fr.rows[3]]
            mu = 1
        return _finish(phi, fr, FiberKind.TWO_DOUBLE_LINES, mu)
    if r == 1:
        K = nullspace_mod_p(TV, p, 3)  # two plane points on the double line
        k1, k2 = (_comb(b, V, p) for b in K)
        v2 = _comb(complete_basis_mod_p(K, p, 3)[2], V, p)
        fr.set_rows([r1, v2, k1, k2])
        d = fr.G(v2, v2)
        fr.shift(0, {1: -fr.G(fr.rows[0], v2) * _inv(d, p) % p})
        al, be = fr.G(fr.rows[0], k1), fr.G(fr.rows[0], k2)
        if al == 0:
            k1, k2, al, be = k2, k1, be, al
        if al == 0:
            raise UnsupportedResidueField("unexpected quadruple-line configuration")
        k1n = [x * _inv(2 * al, p) % p for x in k1]
        k2n = [(x - be * _inv(al, p) * y) % p for x, y in zip(k2, k1)]
        fr.rows[2], fr.rows[3] = k1n, k2n
        _absorb_square(fr, 0)
        return _finish(phi, fr, FiberKind.QUADRUPLE_LINE)
    raise UnsupportedResidueField("square member divides the other quadric")


def _units():
    return [[int(i == j) for j in range(4)] for i in range(4)]


def _kill_cross(fr, i, others):
    """Make rows[i] G-orthogonal to the given rows, which are G-orthogonal to each other
    except for a hyperbolic pair in positions others[1], others[2]."""
    p = fr.p
    R = fr.rows
    a, b, c = others
    d = fr.G(R[a], R[a])
    coeffs = {a: -fr.G(R[i], R[a]) * _inv(d, p) % p,
              b: -2 * fr.G(R[i], R[c]) % p,
              c: -2 * fr.G(R[i], R[b]) % p}
    fr.shift(i, coeffs)


def _absorb_square(fr, i):
    """Remove the x_i^2 term from G using the square member F = s x_i^2."""
    p = fr.p
    s = fr.F(fr.rows[i], fr.rows[i])
    c = fr.G(fr.rows[i], fr.rows[i])
    if c:
        fr.pencil([[1, 0], [-c * _inv(s, p) % p, 1]])


# ---------------------------------------------------------------------------
# step 4: multiple lines


def _coupling(S, rows, p):
    return [[bil(S, rows[i], rows[j], p) for j in (2, 3)] for i in (0, 1)]


def _mat_rank2(C, p):
    return rank_mod_p(C, p)


def _classify_line(phi, fr, a, b):
    p = fr.p
    base = complete_basis_mod_p([list(a), list(b)], p, 4)
    fr.set_rows([base[2], base[3], list(a), list(b)])
    CF, CG = _coupling(fr.SF, fr.rows, p), _coupling(fr.SG, fr.rows, p)
    zero = lambda C: all(x == 0 for r in C for x in r)  # noqa: E731
    binary = None
    if zero(CF):
        binary = (1, 0)
    else:
        for lam in range(p):
            if zero([[(lam * x + y) % p for x, y in zip(r1, r2)] for r1, r2 in zip(CF, CG)]):
                binary = (lam, 1)
                break
    if binary is not None:
        if binary != (1, 0):
            fr.pencil([[binary[0], binary[1]], [1, 0]])
        return _classify_binary(phi, fr)
    # common left kernel of the couplings: conic + double line
    W = nullspace_mod_p([[CF[0][j], CF[1][j]] for j in range(2)] + [[CG[0][j], CG[1][j]] for j in range(2)], p, 2)
    if not W:
        raise UnsupportedResidueField("multiple line of an unrecognised type")
    return _classify_conic_double_line(phi, fr, W[0])


def _rebase_12(fr, U):
    """Replace rows 1, 2 by combinations U (2x2) of them."""
    p = fr.p
    r1, r2 = fr.rows[0], fr.rows[1]
    fr.rows[0] = _comb(U[0], [r1, r2], p)
    fr.rows[1] = _comb(U[1], [r1, r2], p)


def _rebase_34(fr, X):
    p = fr.p
    k3, k4 = fr.rows[2], fr.rows[3]
    fr.rows[2] = _comb(X[0], [k3, k4], p)
    fr.rows[3] = _comb(X[1], [k3, k4], p)


def _half_inverse_transpose(C, p):
    (a, b), (c, d) = C
    di = _inv(a * d - b * c, p)
    inv2 = _inv(2, p)
    # (C^{-1})^T / 2
    return [[d * di * inv2 % p, -c * di * inv2 % p], [-b * di * inv2 % p, a * di * inv2 % p]]


def _classify_binary(phi, fr):
    p = fr.p
    q = [[fr.F(fr.rows[i], fr.rows[j]) for j in range(2)] for i in range(2)]
    if _rank(q, p) != 2:
        raise UnsupportedResidueField("binary member of rank 1 outside the square-member cases")
    CG = _coupling(fr.SG, fr.rows, p)
    rk = _mat_rank2(CG, p)
    if rk == 2:
        _rebase_34(fr, _half_inverse_transpose(CG, p))
        R = fr.rows
        fr.shift(0, {2: -fr.G(R[0], R[0]) % p, 3: -2 * fr.G(R[0], R[1]) % p})
        fr.shift(1, {3: -fr.G(fr.rows[1], fr.rows[1]) % p})
        return _finish(phi, fr, FiberKind.DOUBLE_LINE_PLUS_TWO_LINES, 1)
    if rk == 0:
        raise UnsupportedResidueField("both quadrics binary")
    # rank one coupling u v^T: the linear form l = u . (x1, x2)
    v = CG[0] if any(CG[0]) else CG[1]
    nz = next(k for k in range(2) if v[k])
    u = [CG[0][nz] * _inv(v[nz], p) % p, CG[1][nz] * _inv(v[nz], p) % p]
    pt = (-u[1] % p, u[0])  # where l vanishes
    l_divides_q = bil(q, pt, pt, p) == 0
    if l_divides_q:
        # target x1x2 = x1^2 + x2x4: l -> x2, so row 1 must satisfy l = 0
        U = [list(pt), [0, 1] if u[1] else [1, 0]]
        _rebase_12(fr, U)
        qa = fr.F(fr.rows[0], fr.rows[1])
        qb = fr.F(fr.rows[1], fr.rows[1])
        fr.shift(1, {0: -qb * _inv(2 * qa, p) % p})
        # coupling now lives on row 2; make it x2x4
        c3, c4 = fr.G(fr.rows[1], fr.rows[2]), fr.G(fr.rows[1], fr.rows[3])
        _rebase_34(fr, _basis_kill(c3, c4, p))
        R = fr.rows
        fr.shift(1, {3: -fr.G(R[1], R[1]) % p})
        fr.shift(0, {3: -2 * fr.G(fr.rows[0], fr.rows[1]) % p})
        return _finish(phi, fr, FiberKind.TRIPLE_LINE_PLUS_LINE)
    # target q(x1, x2) = x1x3: l -> x1, so row 2 must satisfy l = 0
    U = [[1, 0] if u[0] else [0, 1], list(pt)]
    _rebase_12(fr, U)
    c3, c4 = fr.G(fr.rows[0], fr.rows[2]), fr.G(fr.rows[0], fr.rows[3])
    X = _basis_kill(c3, c4, p)
    X = [X[1], X[0]]  # row 3 carries the coupling, row 4 is orthogonal to row 1
    _rebase_34(fr, X)
    gamma = fr.G(fr.rows[1], fr.rows[1])
    if gamma:
        fr.pencil([[1, 0], [-gamma * _inv(fr.F(fr.rows[1], fr.rows[1]), p) % p, 1]])
    R = fr.rows
    fr.shift(0, {2: -fr.G(R[0], R[0]) * _inv(2 * fr.G(R[0], R[2]), p) % p})
    fr.shift(1, {2: -fr.G(fr.rows[0], fr.rows[1]) * _inv(fr.G(fr.rows[0], fr.rows[2]), p) % p})
    return _finish(phi, fr, FiberKind.DOUBLE_LINE_PLUS_TWO_LINES, 0)


def _basis_kill(c3, c4, p):
    """X with rows giving k3', k4' such that the coupling (c3, c4) becomes (0, 1/2)."""
    if c4:
        return [[1, -c3 * _inv(c4, p) % p], [0, _inv(2 * c4, p)]]
    return [[0, 1], [_inv(2 * c3, p), 0]]


def _classify_conic_double_line(phi, fr, w):
    p = fr.p
    other = [1, 0] if w[1] else [0, 1]
    _rebase_12(fr, [other, list(w)])
    C = [[fr.F(fr.rows[0], fr.rows[2]), fr.F(fr.rows[0], fr.rows[3])],
         [fr.G(fr.rows[0], fr.rows[2]), fr.G(fr.rows[0], fr.rows[3])]]
    if rank_mod_p(C, p) < 2:
        raise UnsupportedResidueField("degenerate conic + double line coupling")
    _rebase_34(fr, _half_inverse_transpose(C, p))
    R = fr.rows
    fr.shift(0, {2: -fr.F(R[0], R[0]) % p, 3: -fr.G(R[0], R[0]) % p})
    R = fr.rows
    fr.shift(1, {2: -2 * fr.F(R[0], R[1]) % p, 3: -2 * fr.G(R[0], R[1]) % p})
    a, b = fr.F(fr.rows[1], fr.rows[1]), fr.G(fr.rows[1], fr.rows[1])
    if b:
        t = a * _inv(b, p) % p
        fr.pencil([[1, -t], [0, 1]])
        fr.shift(3, {2: t})
    else:
        fr.pencil([[0, 1], [1, 0]])
        fr.rows[2], fr.rows[3] = fr.rows[3], fr.rows[2]
    return _finish(phi, fr, FiberKind.CONIC_PLUS_DOUBLE_LINE)


# ---------------------------------------------------------------------------


def classify_deg4(phi: GenusOneEquation, ctx):
    ctx = _ctx(ctx)
    p = ctx.p
    screen = reduction_screen(phi, ctx)
    if screen is not None:
        return screen, None
    SF, SG = sym_mod_p(phi.coeffs[:10], p), sym_mod_p(phi.coeffs[10:], p)
    fr = _Frame(SF, SG, p)
    c = _square_member(fr)
    if c is not None:
        return _classify_square(phi, fr, c)
    Ft, Gt = (reduce_mod_p(P, ctx) for P in phi.quadrics())
    lines = singular_lines([Ft, Gt], p, 4)
    if not lines:
        return ALL_MULT_ONE, None
    a, b = lines[0]
    return _classify_line(phi, fr, a, b)


# ---------------------------------------------------------------------------
# normality in standard position


def _restrict(P: MultiPoly, zero_vars):
    return MultiPoly(4, {e: c for e, c in P.terms.items() if all(e[i] == 0 for i in zero_vars)})


LINE_SETS = {
    FiberKind.TWO_DOUBLE_LINES: ((0, 1), (1, 2)),
    FiberKind.QUADRUPLE_LINE: ((0, 1),),
    FiberKind.TRIPLE_LINE_PLUS_LINE: ((0, 1),),
    FiberKind.DOUBLE_LINE_PLUS_TWO_LINES: ((0, 1),),
}


def conic_double_line_poly(psi: GenusOneEquation):
    """b4 x4 F(0,0,x3,x4) - a3 x3 G(0,0,x3,x4) (reduces to the classical one when a3 = b4 = 1)."""
    F, G = psi.quadrics()
    a3, b4 = psi.coeffs[MONO_INDEX[_pair(0, 2)]], psi.coeffs[10 + MONO_INDEX[_pair(0, 3)]]
    x3, x4 = MultiPoly.var(4, 2), MultiPoly.var(4, 3)
    return x4 * _restrict(F, (0, 1)) * b4 - x3 * _restrict(G, (0, 1)) * a3


def double_conic_mu(psi: GenusOneEquation, ctx):
    """mu mod p^2 with F(0,x2,x3,x4) = mu G(0,x2,x3,x4) mod p^2, or None."""
    p = ctx.p
    F, G = psi.quadrics()
    F0, G0 = _restrict(F, (0,)), _restrict(G, (0,))
    for mu in range(p * p):
        if poly_valuation(F0 - G0 * mu, ctx) >= 2:
            return mu
    return None


def normality_deg4(psi: GenusOneEquation, ctx, cls: FiberClass = None) -> NormalityVerdict:
    """Verdict for an equation already in the standard position of ``cls``."""
    ctx = _ctx(ctx)
    p = ctx.p
    if cls is None:
        cls, pos = classify_deg4(psi, ctx)
        if pos is not None:
            psi = pos.equation
    k = cls.kind
    if k is FiberKind.ALL_MULTIPLICITY_ONE:
        return NormalityVerdict(True, "reduced fiber")
    if k is FiberKind.COMMON_FACTOR:
        return NormalityVerdict(False, "reductions share a factor: two-dimensional fiber component")
    if k is FiberKind.DEGENERATE_X1X2:
        return NormalityVerdict(None, "x1^2 = x2^2 = 0 configuration is not covered")
    if not table_form_ok(psi, p, cls):
        raise PositionViolation(f"equation is not in the standard position for {cls}")
    if k is FiberKind.CONIC_PLUS_DOUBLE_LINE:
        v = poly_valuation(conic_double_line_poly(psi), ctx)
        return NormalityVerdict(v == 1, "v(x4 F(0,0,x3,x4) - x3 G(0,0,x3,x4)) = 1", {"valuation": str(v)})
    if k is FiberKind.DOUBLE_CONIC:
        mu = double_conic_mu(psi, ctx)
        if mu is None:
            return NormalityVerdict(True, "no mu with F(0,x2,x3,x4) = mu G(0,x2,x3,x4) mod p^2",
                                    {"searched": p * p})
        return NormalityVerdict(False, "F(0,x2,x3,x4) = mu G(0,x2,x3,x4) mod p^2", {"mu": mu})
    F = psi.quadrics()[0]
    for line in LINE_SETS[k]:
        v = poly_valuation(_restrict(F, line), ctx)
        if v != 1:
            return NormalityVerdict(False, "v(F restricted to the multiple line's complement) = 1",
                                    {"line": [i + 1 for i in line], "valuation": str(v)})
    return NormalityVerdict(True, "v(F restricted to the multiple line's complement) = 1",
                            {"lines": [[i + 1 for i in line] for line in LINE_SETS[k]]})
