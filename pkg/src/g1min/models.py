"""Genus one equations of degree 1-4 and their transformation groups.

Coefficients are stored in the printed order:

* degree 1: ``(a1, a2, a3, a4, a6)`` of ``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6``
* degree 2: ``(alpha0, alpha1, alpha2, a, b, c, d, e)`` of
  ``y^2 + (alpha0 x^2 + alpha1 xz + alpha2 z^2) y = a x^4 + b x^3 z + c x^2 z^2 + d xz^3 + e z^4``
* degree 3: ``(a, b, c, a2, a3, b1, b3, c1, c2, m)`` on the monomials
  ``x^3, y^3, z^3, x^2y, x^2z, y^2x, y^2z, z^2x, z^2y, xyz``
* degree 4: ``(a1..a10, b1..b10)`` on ``x1^2, x1x2, x1x3, x1x4, x2^2, x2x3, x2x4, x3^2, x3x4, x4^2``

Orientation of the action.  ``apply(g, phi)`` substitutes the *old* variables
(the primed ones in the classical formulas) as functions of the new ones:

* ``[u; r, s, t]``: ``x_old = u^2 x + r``, ``y_old = u^3 y + s u^2 x + t``, then divide by ``u^6``;
* ``[mu, (r_i), M]``: ``(x_old, z_old) = (x, z) M``, ``y_old = y / mu + r(x, z)``, then multiply by ``mu^2``;
* ``[mu, M]``: ``F_new(x) = mu * F((x, y, z) M)``;
* ``[M, N]``: ``(F_new, G_new) = M (F, G)`` evaluated at ``(x1..x4) N``.

With these choices every degree obeys ``disc(apply(g, phi)) = det(g)^12 * disc(phi)``
(exponent +12, likewise +4 for c4 and +6 for c6).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import (
    MultiPoly,
    as_rat,
    det as mat_det,
    mat_inv,
    mat_mul,
    substitute_linear,
    valuation,
)
from .errors import DegreeMismatch

NCOEFFS = {1: 5, 2: 8, 3: 10, 4: 20}

COEFF_NAMES = {
    1: ("a1", "a2", "a3", "a4", "a6"),
    2: ("alpha0", "alpha1", "alpha2", "a", "b", "c", "d", "e"),
    3: ("a", "b", "c", "a2", "a3", "b1", "b3", "c1", "c2", "m"),
    4: tuple(f"a{i}" for i in range(1, 11)) + tuple(f"b{i}" for i in range(1, 11)),
}

CUBIC_MONOMIALS = ((3, 0, 0), (0, 3, 0), (0, 0, 3), (2, 1, 0), (2, 0, 1),
                   (1, 2, 0), (0, 2, 1), (1, 0, 2), (0, 1, 2), (1, 1, 1))
QUADRIC_MONOMIALS = ((2, 0, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1), (0, 2, 0, 0),
                     (0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 2, 0), (0, 0, 1, 1), (0, 0, 0, 2))
BINARY_QUARTIC = ((4, 0), (3, 1), (2, 2), (1, 3), (0, 4))
BINARY_QUADRATIC = ((2, 0), (1, 1), (0, 2))


@dataclass(frozen=True)
class GenusOneEquation:
    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.degree not in NCOEFFS:
            raise ValueError(f"degree must be 1..4, got {self.degree}")
        c = tuple(as_rat(x) for x in self.coeffs)
        if len(c) != NCOEFFS[self.degree]:
            raise ValueError(f"degree {self.degree} needs {NCOEFFS[self.degree]} coefficients, got {len(c)}")
        object.__setattr__(self, "coeffs", c)

    def __getitem__(self, name):
        return self.coeffs[COEFF_NAMES[self.degree].index(name)]

    # polynomial views -----------------------------------------------------

    def weierstrass_poly(self) -> MultiPoly:
        """y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6 in variables (x, y)."""
        a1, a2, a3, a4, a6 = self.coeffs
        return MultiPoly(2, {(0, 2): 1, (1, 1): a1, (0, 1): a3, (3, 0): -1, (2, 0): -a2,
                             (1, 0): -a4, (0, 0): -a6})

    def binary_forms(self):
        """(g, f) as binary forms in (x, z)."""
        c = self.coeffs
        g = MultiPoly(2, dict(zip(BINARY_QUADRATIC, c[:3])))
        f = MultiPoly(2, dict(zip(BINARY_QUARTIC, c[3:])))
        return g, f

    def cubic(self) -> MultiPoly:
        return MultiPoly(3, dict(zip(CUBIC_MONOMIALS, self.coeffs)))

    def quadrics(self):
        c = self.coeffs
        return MultiPoly(4, dict(zip(QUADRIC_MONOMIALS, c[:10]))), MultiPoly(4, dict(zip(QUADRIC_MONOMIALS, c[10:])))

    def polys(self):
        """Defining polynomials as a list (used for valuations and reductions)."""
        if self.degree == 1:
            return [self.weierstrass_poly()]
        if self.degree == 2:
            return list(self.binary_forms())
        if self.degree == 3:
            return [self.cubic()]
        return list(self.quadrics())

    @classmethod
    def from_binary_forms(cls, g: MultiPoly, f: MultiPoly):
        return cls(2, [g.coeff(e) for e in BINARY_QUADRATIC] + [f.coeff(e) for e in BINARY_QUARTIC])

    @classmethod
    def from_cubic(cls, F: MultiPoly):
        return cls(3, [F.coeff(e) for e in CUBIC_MONOMIALS])

    @classmethod
    def from_quadrics(cls, F: MultiPoly, G: MultiPoly):
        return cls(4, [F.coeff(e) for e in QUADRIC_MONOMIALS] + [G.coeff(e) for e in QUADRIC_MONOMIALS])

    def __str__(self):
        return f"GenusOneEquation({self.degree}, [{', '.join(str(c) for c in self.coeffs)}])"


def weierstrass(a1=0, a2=0, a3=0, a4=0, a6=0) -> GenusOneEquation:
    return GenusOneEquation(1, (a1, a2, a3, a4, a6))


# ---------------------------------------------------------------------------
# transformations


def _matrix(M, n):
    M = tuple(tuple(as_rat(x) for x in row) for row in M)
    if len(M) != n or any(len(r) != n for r in M):
        raise ValueError(f"expected a {n}x{n} matrix")
    if mat_det(M) == 0:
        raise ValueError("matrix is not invertible")
    return M


@dataclass(frozen=True)
class T1:
    u: Fraction
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    t: Fraction = Fraction(0)
    degree = 1

    def __post_init__(self):
        for k in ("u", "r", "s", "t"):
            object.__setattr__(self, k, as_rat(getattr(self, k)))
        if self.u == 0:
            raise ValueError("u must be nonzero")


@dataclass(frozen=True)
class T2:
    mu: Fraction
    r: tuple = (0, 0, 0)
    M: tuple = ((1, 0), (0, 1))
    degree = 2

    def __post_init__(self):
        object.__setattr__(self, "mu", as_rat(self.mu))
        object.__setattr__(self, "r", tuple(as_rat(x) for x in self.r))
        object.__setattr__(self, "M", _matrix(self.M, 2))
        if self.mu == 0:
            raise ValueError("mu must be nonzero")
        if len(self.r) != 3:
            raise ValueError("r must have three entries (r0, r1, r2)")


@dataclass(frozen=True)
class T3:
    mu: Fraction
    M: tuple = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    degree = 3

    def __post_init__(self):
        object.__setattr__(self, "mu", as_rat(self.mu))
        object.__setattr__(self, "M", _matrix(self.M, 3))
        if self.mu == 0:
            raise ValueError("mu must be nonzero")


@dataclass(frozen=True)
class T4:
    M: tuple = ((1, 0), (0, 1))
    N: tuple = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    degree = 4

    def __post_init__(self):
        object.__setattr__(self, "M", _matrix(self.M, 2))
        object.__setattr__(self, "N", _matrix(self.N, 4))


Transformation = T1 | T2 | T3 | T4


def identity_transformation(degree: int):
    return {1: T1(1), 2: T2(1), 3: T3(1), 4: T4()}[degree]


def det(g) -> Fraction:
    if isinstance(g, T1):
        return 1 / g.u
    if isinstance(g, (T2, T3)):
        return g.mu * mat_det(g.M)
    return mat_det(g.M) * mat_det(g.N)


def _quadratic_form(r) -> MultiPoly:
    return MultiPoly(2, dict(zip(BINARY_QUADRATIC, r)))


def _tuple_matrix(A):
    return tuple(tuple(row) for row in A)


def apply(g, phi: GenusOneEquation) -> GenusOneEquation:
    if g.degree != phi.degree:
        raise DegreeMismatch(f"transformation of degree {g.degree} applied to degree {phi.degree}")
    if isinstance(g, T1):
        u, r, s, t = g.u, g.r, g.s, g.t
        x, y = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
        W = phi.weierstrass_poly().compose([x * (u * u) + r, y * u**3 + x * (s * u * u) + t]) * (1 / u**6)
        a1, a3 = W.coeff((1, 1)), W.coeff((0, 1))
        a2, a4, a6 = -W.coeff((2, 0)), -W.coeff((1, 0)), -W.coeff((0, 0))
        return GenusOneEquation(1, (a1, a2, a3, a4, a6))
    if isinstance(g, T2):
        gq, fq = phi.binary_forms()
        gX, fX = substitute_linear(gq, g.M), substitute_linear(fq, g.M)
        r = _quadratic_form(g.r)
        g_new = (gX + r * 2) * g.mu
        f_new = (fX - gX * r - r * r) * (g.mu * g.mu)
        return GenusOneEquation.from_binary_forms(g_new, f_new)
    if isinstance(g, T3):
        return GenusOneEquation.from_cubic(substitute_linear(phi.cubic(), g.M) * g.mu)
    F, G = phi.quadrics()
    FN, GN = substitute_linear(F, g.N), substitute_linear(G, g.N)
    (m11, m12), (m21, m22) = g.M
    return GenusOneEquation.from_quadrics(FN * m11 + GN * m12, FN * m21 + GN * m22)


def compose(g, h):
    """The transformation acting as ``apply(g, apply(h, .))``."""
    if g.degree != h.degree:
        raise DegreeMismatch("cannot compose transformations of different degrees")
    if isinstance(g, T1):
        u = h.u * g.u
        r = h.u**2 * g.r + h.r
        s = h.u * g.s + h.s
        t = h.u**3 * g.t + h.s * h.u**2 * g.r + h.t
        return T1(u, r, s, t)
    if isinstance(g, T2):
        rh = substitute_linear(_quadratic_form(h.r), g.M)
        r = _quadratic_form(g.r) * (1 / h.mu) + rh
        return T2(g.mu * h.mu, tuple(r.coeff(e) for e in BINARY_QUADRATIC), _tuple_matrix(mat_mul(g.M, h.M)))
    if isinstance(g, T3):
        return T3(g.mu * h.mu, _tuple_matrix(mat_mul(g.M, h.M)))
    return T4(_tuple_matrix(mat_mul(g.M, h.M)), _tuple_matrix(mat_mul(g.N, h.N)))


def inverse(g):
    if isinstance(g, T1):
        u, r, s, t = g.u, g.r, g.s, g.t
        return T1(1 / u, -r / u**2, -s / u, (s * r - t) / u**3)
    if isinstance(g, T2):
        Minv = mat_inv(g.M)
        r = substitute_linear(_quadratic_form(g.r), Minv) * (-g.mu)
        return T2(1 / g.mu, tuple(r.coeff(e) for e in BINARY_QUADRATIC), _tuple_matrix(Minv))
    if isinstance(g, T3):
        return T3(1 / g.mu, _tuple_matrix(mat_inv(g.M)))
    return T4(_tuple_matrix(mat_inv(g.M)), _tuple_matrix(mat_inv(g.N)))


def compose_all(transforms: Sequence, degree: int):
    """Transformation equal to applying ``transforms`` in order (first one first)."""
    out = identity_transformation(degree)
    for g in transforms:
        out = compose(g, out)
    return out


# ---------------------------------------------------------------------------
# integrality


@dataclass(frozen=True)
class IntegralityReport:
    is_integral: bool
    offending: tuple = ()


def integrality(phi: GenusOneEquation, ctx=None) -> IntegralityReport:
    """Integral at ``ctx`` (a prime or LocalContext); over Z when ``ctx`` is None."""
    names = COEFF_NAMES[phi.degree]
    bad = []
    for name, c in zip(names, phi.coeffs):
        if ctx is None:
            ok = c.denominator == 1
        else:
            ok = valuation(c, ctx) >= 0
        if not ok:
            bad.append(name)
    return IntegralityReport(not bad, tuple(bad))


def is_integral(phi: GenusOneEquation, ctx=None) -> bool:
    return integrality(phi, ctx).is_integral


def transformation_to_json(g) -> dict:
    def q(x):
        return str(as_rat(x))

    def mq(M):
        return [[q(x) for x in row] for row in M]

    if isinstance(g, T1):
        return {"degree": 1, "u": q(g.u), "r": q(g.r), "s": q(g.s), "t": q(g.t)}
    if isinstance(g, T2):
        return {"degree": 2, "mu": q(g.mu), "r": [q(x) for x in g.r], "M": mq(g.M)}
    if isinstance(g, T3):
        return {"degree": 3, "mu": q(g.mu), "M": mq(g.M)}
    return {"degree": 4, "M": mq(g.M), "N": mq(g.N)}


def transformation_from_json(d: dict):
    deg = d["degree"]
    if deg == 1:
        return T1(d["u"], d["r"], d["s"], d["t"])
    conv = lambda M: tuple(tuple(as_rat(x) for x in row) for row in M)  # noqa: E731
    if deg == 2:
        return T2(d["mu"], tuple(as_rat(x) for x in d["r"]), conv(d["M"]))
    if deg == 3:
        return T3(d["mu"], conv(d["M"]))
    return T4(conv(d["M"]), conv(d["N"]))
