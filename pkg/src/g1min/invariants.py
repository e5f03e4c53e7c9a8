"""Invariants c4, c6 and the discriminant of genus one equations of degree 1-4.

Each degree reduces to a classical kernel:

* degree 2: the quartic invariants I, J of the completed quartic ``g^2 + 4f``;
* degree 3: the Aronhold invariants S, T of the ternary cubic;
* degree 4: I, J of ``det(x A + z B)`` for the symmetric matrices of the two quadrics.

The kernels are then rescaled so that the standard model of ``y^2 = x^3 + Ax + B``
in each degree has ``c4 = -48A`` and ``c6 = -864B``.  :func:`derive_scalings`
recomputes the constants from scratch; the frozen values below are its output.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import MultiPoly, as_rat, det as mat_det
from .errors import DerivationFailed
from .models import CUBIC_MONOMIALS, QUADRIC_MONOMIALS, GenusOneEquation


@dataclass(frozen=True)
class InvariantTriple:
    c4: Fraction
    c6: Fraction
    disc: Fraction

    def __iter__(self):
        return iter((self.c4, self.c6, self.disc))


@dataclass(frozen=True)
class ScalingConstants:
    """``(lambda4, lambda6)`` per degree 2, 3, 4."""
    deg2: tuple
    deg3: tuple
    deg4: tuple

    def for_degree(self, n):
        return {2: self.deg2, 3: self.deg3, 4: self.deg4}[n]


# Output of derive_scalings(), frozen.  Degree 2 gives c4 = I(R), c6 = J(R)/2,
# which on models with alpha = 0 is (16 I(f), 32 J(f)) since R = 4f.
FROZEN = ScalingConstants(
    deg2=(Fraction(1), Fraction(1, 2)),
    deg3=(Fraction(54), Fraction(-972)),
    deg4=(Fraction(256), Fraction(2048)),
)


# ---------------------------------------------------------------------------
# kernels


def quartic_IJ(q):
    a, b, c, d, e = (as_rat(x) for x in q)
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e - 27 * a * d * d - 27 * e * b * b + 9 * b * c * d - 2 * c**3
    return I, J


def quartic_disc(q):
    I, J = quartic_IJ(q)
    return (4 * I**3 - J**2) / 27


def completed_quartic(phi: GenusOneEquation):
    """Coefficients (x^4, x^3z, x^2z^2, xz^3, z^4) of ``g^2 + 4f``."""
    a0, a1, a2, a, b, c, d, e = phi.coeffs
    return (a0 * a0 + 4 * a,
            2 * a0 * a1 + 4 * b,
            a1 * a1 + 2 * a0 * a2 + 4 * c,
            2 * a1 * a2 + 4 * d,
            a2 * a2 + 4 * e)


_PERMS = [(p, 1 if sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) % 2 == 0 else -1)
          for p in itertools.permutations(range(3))]


def _symbolic_invariant(brackets):
    """Expand a bracket monomial in the symbolic letters of a ternary cubic.

    Each letter stands for the symmetric tensor ``f_ijk`` (the coefficient of
    the corresponding monomial divided by its multinomial multiplicity) and
    must occur in exactly three brackets.  Returns a MultiPoly in the 10 cubic
    coefficients, ordered as in the degree 3 model.
    """
    letters = sorted({l for br in brackets for l in br})
    index_of = {m: i for i, m in enumerate(CUBIC_MONOMIALS)}
    mult = {m: Fraction(1, 6 // (_fact(m[0]) * _fact(m[1]) * _fact(m[2]))) for m in CUBIC_MONOMIALS}
    terms = {}
    for choice in itertools.product(_PERMS, repeat=len(brackets)):
        sign = 1
        slots = {l: [0, 0, 0] for l in letters}
        for br, (perm, sg) in zip(brackets, choice):
            sign *= sg
            for letter, idx in zip(br, perm):
                slots[letter][idx] += 1
        expo = [0] * 10
        coeff = Fraction(sign)
        for l in letters:
            m = tuple(slots[l])
            expo[index_of[m]] += 1
            coeff *= mult[m]
        key = tuple(expo)
        terms[key] = terms.get(key, 0) + coeff
    return MultiPoly(10, terms)


def _fact(k):
    return (1, 1, 2, 6)[k]


@lru_cache(maxsize=None)
def _aronhold_polys():
    S = _symbolic_invariant(["abc", "abd", "acd", "bcd"])
    T = _symbolic_invariant(["abc", "abd", "ace", "bcf", "def", "def"])
    return S, T


def aronhold_ST(phi: GenusOneEquation):
    S, T = _aronhold_polys()
    return S.evaluate(phi.coeffs), T.evaluate(phi.coeffs)


def quadric_matrix(coeffs):
    """Symmetric 4x4 matrix with off-diagonal entries half the coefficients."""
    A = [[Fraction(0)] * 4 for _ in range(4)]
    for c, m in zip(coeffs, QUADRIC_MONOMIALS):
        idx = [i for i in range(4) for _ in range(m[i])]
        i, j = idx
        if i == j:
            A[i][i] = as_rat(c)
        else:
            A[i][j] = A[j][i] = as_rat(c) / 2
    return A


def characteristic_quartic(phi: GenusOneEquation):
    """Coefficients of ``det(x A + z B)`` on x^4, x^3z, ..., z^4."""
    A = quadric_matrix(phi.coeffs[:10])
    B = quadric_matrix(phi.coeffs[10:])
    # det(xA + B) is a quartic in x; interpolate at five points
    xs = [0, 1, -1, 2, -2]
    vals = [mat_det([[x * A[i][j] + B[i][j] for j in range(4)] for i in range(4)]) for x in xs]
    return _interpolate_quartic(xs, vals)


def _interpolate_quartic(xs, vals):
    # solve the Vandermonde system exactly; returns coefficients from x^4 down to x^0
    n = 5
    rows = [[Fraction(x) ** (4 - k) for k in range(n)] + [Fraction(v)] for x, v in zip(xs, vals)]
    for c in range(n):
        piv = next(r for r in range(c, n) if rows[r][c] != 0)
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = 1 / rows[c][c]
        rows[c] = [v * inv for v in rows[c]]
        for r in range(n):
            if r != c and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return tuple(rows[k][n] for k in range(n))


def kernel_invariants(phi: GenusOneEquation):
    """The unscaled weight 4 and weight 6 kernel invariants."""
    if phi.degree == 2:
        return quartic_IJ(completed_quartic(phi))
    if phi.degree == 3:
        return aronhold_ST(phi)
    if phi.degree == 4:
        return quartic_IJ(characteristic_quartic(phi))
    raise ValueError("kernel invariants are defined for degrees 2, 3, 4")


def weierstrass_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return c4, c6, disc


def invariants(phi: GenusOneEquation, constants: ScalingConstants = FROZEN) -> InvariantTriple:
    if phi.degree == 1:
        return InvariantTriple(*weierstrass_invariants(*phi.coeffs))
    k4, k6 = kernel_invariants(phi)
    l4, l6 = constants.for_degree(phi.degree)
    c4, c6 = l4 * k4, l6 * k6
    return InvariantTriple(c4, c6, (c4**3 - c6**2) / 1728)


def discriminant(phi: GenusOneEquation) -> Fraction:
    return invariants(phi).disc


# ---------------------------------------------------------------------------
# standard models and the scaling derivation


def standard_model(degree: int, A, B) -> GenusOneEquation:
    """The degree ``n`` model of ``y^2 = x^3 + Ax + B`` used throughout."""
    A, B = as_rat(A), as_rat(B)
    if degree == 1:
        return GenusOneEquation(1, (0, 0, 0, A, B))
    if degree == 2:
        return GenusOneEquation(2, (0, 0, 0, 0, 1, 0, A, B))
    if degree == 3:
        # y^2 z = x^3 + A x z^2 + B z^3, written as F = 0
        return GenusOneEquation(3, (1, 0, B, 0, 0, 0, -1, A, 0, 0))
    if degree == 4:
        # x1 x3 = x2^2 and x4^2 = x1 x2 + A x2 x3 + B x3^2
        F = [0, 0, 1, 0, -1, 0, 0, 0, 0, 0]
        G = [0, -1, 0, 0, 0, -A, 0, -B, 0, 1]
        return GenusOneEquation(4, F + G)
    raise ValueError("degree must be 1..4")


# The kernel invariants have degree at most 12 in the coefficients, and the
# standard models are linear in (A, B). Two polynomials of degree <= 12 in each
# variable that agree on a 13 x 13 grid are identical, so the grid check below
# proves the scaling identity in symbolic A, B.
_GRID = range(-6, 7)


def derive_scalings() -> ScalingConstants:
    """Recompute the scaling constants from the Weierstrass compatibility condition."""
    out = {}
    for n in (2, 3, 4):
        k4, k6 = kernel_invariants(standard_model(n, 1, 1))
        if k4 == 0 or k6 == 0:
            raise DerivationFailed(f"degree {n}: vanishing kernel invariant at A = B = 1")
        l4, l6 = Fraction(-48) / k4, Fraction(-864) / k6
        for A in _GRID:
            for B in _GRID:
                k4, k6 = kernel_invariants(standard_model(n, A, B))
                if l4 * k4 != -48 * A or l6 * k6 != -864 * B:
                    raise DerivationFailed(f"degree {n}: no constant scaling works at A={A}, B={B}")
        out[n] = (l4, l6)
    return ScalingConstants(out[2], out[3], out[4])
