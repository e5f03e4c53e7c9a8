"""Jacobian curve, minimal discriminant of an elliptic curve, and level.

Minimal discriminants are found by scaling ``(c4, c6)`` by ``u = p^k`` and
asking whether an integral Weierstrass model with the scaled invariants
exists.  For ``p >= 5`` divisibility of ``c4, c6`` is enough; at 2 and 3
the existence test is a direct search over the normalised coefficients
``a1, a3 in {0, 1}``, ``a2 in {-1, 0, 1}`` (every integral model is
equivalent to one of these), which is equivalent to Kraus's congruences.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from sympy import factorint

from .arith import INF, LocalContext, as_rat, valuation
from .errors import NonIntegralCoefficient, NonIntegralLevel, SingularInput
from .invariants import invariants
from .models import GenusOneEquation, is_integral


def _ctx(p):
    return p if isinstance(p, LocalContext) else LocalContext(p)


def _is_int(x, p):
    if p is None:
        return x.denominator == 1
    return valuation(x, p) >= 0


def model_with_invariants(c4, c6, p=None) -> Optional[GenusOneEquation]:
    """A Weierstrass model with exactly these c4, c6, integral at ``p`` (over Z if None)."""
    c4, c6 = as_rat(c4), as_rat(c6)
    for a1 in (0, 1):
        for a3 in (0, 1):
            for a2 in (0, -1, 1):
                b2 = a1 * a1 + 4 * a2
                b4 = (b2 * b2 - c4) / 24
                a4 = (b4 - a1 * a3) / 2
                b6 = (-b2**3 + 36 * b2 * b4 - c6) / 216
                a6 = (b6 - a3 * a3) / 4
                if _is_int(a4, p) and _is_int(a6, p):
                    return GenusOneEquation(1, (a1, a2, a3, a4, a6))
    return None


@dataclass(frozen=True)
class JacobianModel:
    """``model`` has invariants ``(u^4 c4, u^6 c6)``."""
    model: GenusOneEquation
    u: Fraction


def jacobian(c4, c6) -> JacobianModel:
    c4, c6 = as_rat(c4), as_rat(c6)
    if c4**3 == c6**2:
        raise SingularInput("c4^3 = c6^2")
    # smallest u0 making u0^4 c4 and u0^6 c6 integral
    u0 = 1
    den = c4.denominator * c6.denominator
    for p in factorint(den):
        k = 0
        while valuation(c4 * p ** (4 * k), p) < 0 or valuation(c6 * p ** (6 * k), p) < 0:
            k += 1
        u0 *= p**k
    for m in (1, 2, 3, 6):
        u = Fraction(u0 * m)
        E = model_with_invariants(u**4 * c4, u**6 * c6)
        if E is not None:
            return JacobianModel(E, u)
    raise AssertionError("u = 6 always admits an integral model")  # pragma: no cover


def _min_scaling_exponent(c4, c6, disc, p: int) -> int:
    v4, v6, vd = valuation(c4, p), valuation(c6, p), valuation(disc, p)
    bounds = [b for b in (v4 if v4 is INF else v4 // 4, v6 if v6 is INF else v6 // 6, vd // 12) if b is not INF]
    kmax = min(bounds)
    if p >= 5:
        return kmax
    k = kmax
    while model_with_invariants(c4 / p ** (4 * k), c6 / p ** (6 * k), p) is None:
        k -= 1
    return k


def minimal_valuation_from_invariants(c4, c6, ctx) -> int:
    """ν_p of the minimal discriminant of the curve with invariants (c4, c6)."""
    p = _ctx(ctx).p
    c4, c6 = as_rat(c4), as_rat(c6)
    disc = (c4**3 - c6**2) / 1728
    if disc == 0:
        raise SingularInput("discriminant is zero")
    return valuation(disc, p) - 12 * _min_scaling_exponent(c4, c6, disc, p)


def minimal_discriminant_local(E: GenusOneEquation, ctx) -> int:
    ctx = _ctx(ctx)
    if E.degree != 1:
        raise ValueError("expected a Weierstrass equation")
    if not is_integral(E, ctx):
        raise NonIntegralCoefficient(f"model is not integral at {ctx.p}")
    c4, c6, _ = invariants(E)
    return minimal_valuation_from_invariants(c4, c6, ctx)


@dataclass(frozen=True)
class MinimalDiscriminantReport:
    delta_min: Fraction
    valuations: dict = field(default_factory=dict)
    scalings: dict = field(default_factory=dict)
    minimal_model: Optional[GenusOneEquation] = None


def minimal_discriminant_global(E: GenusOneEquation) -> MinimalDiscriminantReport:
    if E.degree != 1:
        raise ValueError("expected a Weierstrass equation")
    if not is_integral(E):
        raise NonIntegralCoefficient("model is not integral")
    c4, c6, disc = invariants(E)
    if disc == 0:
        raise SingularInput("discriminant is zero")
    return minimal_discriminant_from_invariants(c4, c6)


def minimal_discriminant_from_invariants(c4, c6) -> MinimalDiscriminantReport:
    """Global minimal discriminant of the curve with integral invariants (c4, c6)."""
    c4, c6 = as_rat(c4), as_rat(c6)
    disc = (c4**3 - c6**2) / 1728
    if disc == 0:
        raise SingularInput("discriminant is zero")
    u = 1
    vals, scal = {}, {}
    primes = set(factorint(abs(disc.numerator))) | set(factorint(disc.denominator))
    for p in sorted(primes):
        k = _min_scaling_exponent(c4, c6, disc, p)
        vals[p] = valuation(disc, p) - 12 * k
        scal[p] = k
        u *= Fraction(p) ** k
    model = model_with_invariants(c4 / u**4, c6 / u**6)
    return MinimalDiscriminantReport(disc / u**12, vals, scal, model)


@dataclass(frozen=True)
class Level:
    value: int
    prime: int
    disc_valuation: int
    minimal_valuation: int


def level(phi: GenusOneEquation, ctx) -> Level:
    """(ν_p(Δ_φ) − ν_p(Δ_min of the Jacobian)) / 12.

    Level 0 always certifies minimality.  The converse direction needs the
    curve to have a point over Q_p, which cannot be checked here.
    """
    ctx = _ctx(ctx)
    if not is_integral(phi, ctx):
        raise NonIntegralCoefficient(f"equation is not integral at {ctx.p}")
    c4, c6, disc = invariants(phi)
    if disc == 0:
        raise SingularInput("discriminant is zero")
    vd = valuation(disc, ctx)
    vmin = minimal_valuation_from_invariants(c4, c6, ctx)
    diff = vd - vmin
    if diff < 0 or diff % 12:
        raise NonIntegralLevel(f"v(disc) - v(disc_min) = {diff} at p = {ctx.p}")
    return Level(diff // 12, ctx.p, vd, vmin)
