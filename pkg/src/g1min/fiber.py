"""Special fibers: reduction mod p, multiple components, normality.

The degree 4 classifier lives in :mod:`g1min.fiber4`; this module holds the
shared types, the point searches, and degrees 2 and 3.
"""
from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .arith import (
    INF,
    FpPoly,
    LocalContext,
    MultiPoly,
    mod_p,
    nullspace_mod_p,
    poly_valuation,
    projective_points,
    reduce_mod_p,
    unimodular_from_mod_p,
)
from .errors import NonIntegralCoefficient, PositionViolation, SingularGenericFiber
from .invariants import completed_quartic, discriminant
from .models import (
    BINARY_QUADRATIC,
    GenusOneEquation,
    T2,
    T3,
    apply,
    is_integral,
)

DEFAULT_PRIME_BOUND = 31


def prime_bound() -> int:
    return int(os.environ.get("G1MIN_PRIME_BOUND", DEFAULT_PRIME_BOUND))


class FiberKind(enum.Enum):
    ALL_MULTIPLICITY_ONE = "all multiplicity-1"
    DOUBLE_LINE_DEG2 = "double line"
    MULTIPLE_COMPONENT_DEG3 = "multiple line"
    CONIC_PLUS_DOUBLE_LINE = "conic + double line"
    DOUBLE_CONIC = "double conic"
    DOUBLE_LINE_PLUS_TWO_LINES = "double line + two lines"
    TRIPLE_LINE_PLUS_LINE = "triple line + line"
    TWO_DOUBLE_LINES = "two double lines"
    QUADRUPLE_LINE = "quadruple line"
    COMMON_FACTOR = "common factor"
    DEGENERATE_X1X2 = "x1^2 = x2^2 = 0"


@dataclass(frozen=True)
class FiberClass:
    kind: FiberKind
    param: Optional[int] = None  # m for degree 3, mu for the table rows that carry one

    @property
    def label(self) -> str:
        if self.kind is FiberKind.MULTIPLE_COMPONENT_DEG3:
            return f"{'double' if self.param == 2 else 'triple'} line"
        if self.param is not None:
            return f"{self.kind.value} (mu={self.param})"
        return self.kind.value

    def __str__(self):
        return self.label


ALL_MULT_ONE = FiberClass(FiberKind.ALL_MULTIPLICITY_ONE)


@dataclass(frozen=True)
class StandardPosition:
    transformation: object
    equation: GenusOneEquation


@dataclass(frozen=True)
class NormalityVerdict:
    is_normal: bool
    criterion: str
    witness: dict = field(default_factory=dict)


def _ctx(ctx) -> LocalContext:
    return ctx if isinstance(ctx, LocalContext) else LocalContext(ctx)


def check_input(phi: GenusOneEquation, ctx):
    if not is_integral(phi, ctx):
        raise NonIntegralCoefficient(f"equation is not integral at {ctx.p}")
    if discriminant(phi) == 0:
        raise SingularGenericFiber("discriminant is zero")


# ---------------------------------------------------------------------------
# point searches over F_p, vectorised


@lru_cache(maxsize=64)
def point_array(n: int, p: int) -> np.ndarray:
    return np.array(list(projective_points(n, p)), dtype=np.int64)


def eval_all(f: FpPoly, pts: np.ndarray) -> np.ndarray:
    p = f.p
    out = np.zeros(len(pts), dtype=np.int64)
    for e, c in f.terms.items():
        term = np.full(len(pts), c, dtype=np.int64)
        for i, k in enumerate(e):
            for _ in range(k):
                term = term * pts[:, i] % p
        out = (out + term) % p
    return out


def partial(f: FpPoly, i: int) -> FpPoly:
    terms = {}
    for e, c in f.terms.items():
        if e[i]:
            e2 = list(e)
            e2[i] -= 1
            terms[tuple(e2)] = c * e[i]
    return FpPoly(f.p, f.nvars, terms)


def singular_points(polys, p: int, n: int):
    """Points of P^{n-1}(F_p) on all ``polys`` where their Jacobian drops rank."""
    pts = point_array(n, p)
    on = np.ones(len(pts), dtype=bool)
    for f in polys:
        on &= eval_all(f, pts) == 0
    pts = pts[on]
    if len(pts) == 0:
        return []
    grads = [[eval_all(partial(f, i), pts) for i in range(n)] for f in polys]
    if len(polys) == 1:
        sing = np.all(np.array(grads[0]) == 0, axis=0)
    else:
        g1, g2 = grads
        sing = np.ones(len(pts), dtype=bool)
        for i, j in itertools.combinations(range(n), 2):
            sing &= (g1[i] * g2[j] - g1[j] * g2[i]) % p == 0
    return [tuple(int(x) for x in row) for row in pts[sing]]


def line_points(a, b, p):
    """The p + 1 points of the line through projective points ``a`` and ``b``."""
    pts = [tuple(b)]
    for t in range(p):
        pts.append(tuple((x + t * y) % p for x, y in zip(a, b)))
    return pts


def _normalise(v, p):
    v = [x % p for x in v]
    lead = next(x for x in v if x)
    inv = pow(lead, -1, p)
    return tuple(x * inv % p for x in v)


def singular_lines(polys, p: int, n: int):
    """Lines of P^{n-1}(F_p) all of whose points are singular, each as a pair of spanning points."""
    sing = singular_points(polys, p, n)
    sset = set(sing)
    seen, out = set(), []
    for a, b in itertools.combinations(sing, 2):
        pts = frozenset(_normalise(q, p) for q in line_points(a, b, p))
        if pts in seen:
            continue
        seen.add(pts)
        if pts <= sset:
            out.append((a, b))
    return out


# ---------------------------------------------------------------------------
# degree 2


def _deg2_shift(phi: GenusOneEquation, p: int):
    """Return r (integers in [0, p)) with y -> y + r putting a double line in
    standard position (g, f both divisible by p), or None if the fiber is reduced."""
    a0, a1, a2 = phi.coeffs[:3]
    f = phi.coeffs[3:]
    if p != 2:
        R = completed_quartic(phi)
        if any(mod_p(c, p) for c in R):
            return None
        inv2 = pow(2, -1, p)
        return tuple(-mod_p(c, p) * inv2 % p for c in (a0, a1, a2))
    if any(mod_p(c, 2) for c in (a0, a1, a2)):
        return None
    fb = [mod_p(c, 2) for c in f]
    if fb[1] or fb[3]:
        return None
    # over F_2 squaring fixes coefficients: (c0 x^2 + c2 xz + c4 z^2)^2 = c0 x^4 + c2 x^2z^2 + c4 z^4
    return (fb[0], fb[2], fb[4])


def classify_deg2(phi, ctx):
    r = _deg2_shift(phi, ctx.p)
    if r is None:
        return ALL_MULT_ONE, None
    g = T2(1, r)
    psi = apply(g, phi)
    if any(mod_p(c, ctx.p) for c in psi.coeffs):
        raise PositionViolation("degree 2 shift did not clear the reduction")
    return FiberClass(FiberKind.DOUBLE_LINE_DEG2), StandardPosition(g, psi)


def _binary_poly(cs, mons):
    return MultiPoly(2, dict(zip(mons, cs)))


def normality_deg2(phi: GenusOneEquation, ctx) -> NormalityVerdict:
    """Search R mod p^2 with v(f + gR - R^2) = 1, pruned by first solving mod p."""
    ctx = _ctx(ctx)
    p = ctx.p
    cls, _ = classify_deg2(phi, ctx)
    if cls.kind is FiberKind.ALL_MULTIPLICITY_ONE:
        return NormalityVerdict(True, "reduced fiber")
    g, f = phi.binary_forms()

    def val(R):
        Rp = _binary_poly(R, BINARY_QUADRATIC)
        return poly_valuation(f + g * Rp - Rp * Rp, ctx)

    tried = 0
    for R0 in itertools.product(range(p), repeat=3):
        if val(R0) < 1:
            continue
        for R1 in itertools.product(range(p), repeat=3):
            R = tuple(a + p * b for a, b in zip(R0, R1))
            tried += 1
            if val(R) == 1:
                return NormalityVerdict(True, "R-search", {"R": [str(x) for x in R]})
    return NormalityVerdict(False, "R-search", {"exhausted": tried})


# ---------------------------------------------------------------------------
# degree 3

Y_DEGREE_SPLIT = {  # monomial index -> power of y, in the printed order
    0: 0, 1: 3, 2: 0, 3: 1, 4: 0, 5: 2, 6: 2, 7: 0, 8: 1, 9: 1,
}


def _line_to_y(ell, p):
    """Integer matrix N with det 1 such that the linear form ell becomes (a unit times) y."""
    basis = nullspace_mod_p([list(ell)], p, 3)  # two points spanning the line
    j = next(i for i, x in enumerate(ell) if x % p)
    m2 = [0, 0, 0]
    m2[j] = pow(ell[j], -1, p)
    return unimodular_from_mod_p([basis[0], m2, basis[1]], p)


def _ydeg_min(F: FpPoly):
    return min((e[1] for e in F.terms), default=INF)


def classify_deg3(phi, ctx):
    p = ctx.p
    Ft = reduce_mod_p(phi.cubic(), ctx)
    if Ft.is_zero():
        return FiberClass(FiberKind.COMMON_FACTOR), None
    # a multiple line consists of singular points; check lines through pairs of them
    sing = singular_points([Ft], p, 3)
    candidates = []
    for a, b in itertools.combinations(sing, 2):
        ell = _normalise(nullspace_mod_p([list(a), list(b)], p, 3)[0], p)
        if ell not in candidates:
            candidates.append(ell)
    for ell in candidates:
        N = _line_to_y(ell, p)
        Fn = Ft.substitute_linear(N)
        m = _ydeg_min(Fn)
        if m >= 2:
            g = T3(1, N)
            psi = apply(g, phi)
            return FiberClass(FiberKind.MULTIPLE_COMPONENT_DEG3, min(m, 3)), StandardPosition(g, psi)
    return ALL_MULT_ONE, None


def cubic_split(phi: GenusOneEquation):
    """(b, f1, f2, f3) with F = b y^3 + f1 y^2 + f2 y + f3."""
    a, b, c, a2, a3, b1, b3, c1, c2, m = phi.coeffs
    f1 = _binary_poly((b1, b3), ((1, 0), (0, 1)))
    f2 = _binary_poly((a2, m, c2), BINARY_QUADRATIC)
    f3 = _binary_poly((a, a3, c1, c), ((3, 0), (2, 1), (1, 2), (0, 3)))
    return b, f1, f2, f3


def normality_deg3(phi: GenusOneEquation, ctx) -> NormalityVerdict:
    """Criterion for a cubic already in standard position (multiple line y = 0)."""
    ctx = _ctx(ctx)
    b, f1, f2, f3 = cubic_split(phi)
    if poly_valuation(f3, ctx) < 1 or poly_valuation(f2, ctx) < 1:
        raise PositionViolation("y = 0 is not a multiple component of the reduction")
    v = poly_valuation(f3, ctx)
    return NormalityVerdict(v == 1, "v(f3) = 1", {"v(f2)": _vstr(poly_valuation(f2, ctx)), "v(f3)": _vstr(v)})


def _vstr(v):
    return "inf" if v is INF else v


# ---------------------------------------------------------------------------
# dispatch


def classify_fiber(phi: GenusOneEquation, ctx):
    ctx = _ctx(ctx)
    check_input(phi, ctx)
    if phi.degree == 2:
        return classify_deg2(phi, ctx)
    if phi.degree == 3:
        return classify_deg3(phi, ctx)
    if phi.degree == 4:
        from .fiber4 import classify_deg4
        return classify_deg4(phi, ctx)
    raise ValueError("fiber classification is implemented for degrees 2, 3, 4")


def normality(phi: GenusOneEquation, ctx) -> NormalityVerdict:
    """Normality verdict for any degree 1-4 equation, positioning as needed."""
    ctx = _ctx(ctx)
    if phi.degree == 1:
        # y^2 + ... = x^3 + ... reduces to a reduced cubic, so only closed points can be singular
        if discriminant(phi) == 0:
            raise SingularGenericFiber("discriminant is zero")
        return NormalityVerdict(True, "reduced Weierstrass fiber")
    cls, pos = classify_fiber(phi, ctx)
    if cls.kind is FiberKind.ALL_MULTIPLICITY_ONE:
        return NormalityVerdict(True, "reduced fiber")
    if phi.degree == 2:
        return normality_deg2(phi, ctx)
    if phi.degree == 3:
        if cls.kind is FiberKind.COMMON_FACTOR:
            return NormalityVerdict(False, "F divisible by p")
        return normality_deg3(pos.equation, ctx)
    from .fiber4 import normality_deg4
    return normality_deg4(pos.equation if pos else phi, ctx, cls)


@dataclass(frozen=True)
class FiberReport:
    fiber_class: FiberClass
    position: Optional[StandardPosition]
    verdict: Optional[NormalityVerdict]
