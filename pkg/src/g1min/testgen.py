"""Planted test instances with known levels.

Start from the standard model of ``y^2 = x^3 + Ax + B`` in degree n, then
alternate random integral unimodular transformations with "raisers" of
determinant p (each adds 12 to ``v_p(disc)`` and one to the level).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint

from .arith import valuation
from .invariants import invariants, standard_model
from .jacobian import level, minimal_discriminant_from_invariants
from .models import T1, T2, T3, T4, GenusOneEquation, apply, compose, identity_transformation


@dataclass(frozen=True)
class InstanceRecord:
    A: int
    B: int
    degree: int
    seed: int
    base: GenusOneEquation
    planted: dict  # prime -> number of raisers
    base_levels: dict  # prime -> level of the starting model
    delta_min: Fraction
    transformation: object  # base -> instance

    def expected_level(self, p: int) -> int:
        return self.planted.get(p, 0) + self.base_levels.get(p, 0)


def random_unimodular(n: int, rng: random.Random, steps: int = None, size: int = 2):
    """Product of random integer transvections and a signed permutation."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    M = [M[i] for i in perm]
    if rng.random() < 0.5:
        M[0] = [-x for x in M[0]]
        M[1] = [-x for x in M[1]] if n > 1 else M[1]
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-size, size)
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    return M


def random_equivalence(degree: int, rng: random.Random):
    """A random transformation with integer entries and determinant +-1."""
    sign = rng.choice((1, -1))
    if degree == 1:
        return T1(sign, *(rng.randint(-2, 2) for _ in range(3)))
    if degree == 2:
        return T2(sign, tuple(rng.randint(-2, 2) for _ in range(3)), random_unimodular(2, rng))
    if degree == 3:
        return T3(sign, random_unimodular(3, rng))
    return T4(random_unimodular(2, rng, steps=2, size=1), random_unimodular(4, rng))


def raiser(degree: int, p: int, rng: random.Random):
    """A transformation of determinant p keeping integral equations integral."""
    if degree == 1:
        return T1(Fraction(1, p), 0, 0, 0)
    if degree == 2:
        if rng.random() < 0.5:
            return T2(p)
        return T2(1, (0, 0, 0), ((p, 0), (0, 1)))
    if degree == 3:
        if rng.random() < 0.5:
            return T3(p)
        return T3(1, ((p, 0, 0), (0, 1, 0), (0, 0, 1)))
    if rng.random() < 0.5:
        return T4(((p, 0), (0, 1)))
    return T4(((1, 0), (0, 1)), ((p, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))


def base_levels(phi: GenusOneEquation) -> dict:
    disc = invariants(phi).disc
    out = {}
    for p in factorint(abs(disc.numerator)):
        lv = level(phi, p).value
        if lv:
            out[p] = lv
    return out


def generate_instance(A: int, B: int, degree: int, levels: dict, seed: int = 0):
    """Return ``(phi, record)`` with ``levels[p]`` raisers planted at each p."""
    rng = random.Random(seed)
    base = standard_model(degree, A, B)
    c4, c6, disc = invariants(base)
    if disc == 0:
        raise ValueError("4A^3 + 27B^2 = 0")
    g = identity_transformation(degree)
    steps = [p for p, k in sorted(levels.items()) for _ in range(k)]
    rng.shuffle(steps)
    g = compose(random_equivalence(degree, rng), g)
    for p in steps:
        g = compose(raiser(degree, p, rng), g)
        g = compose(random_equivalence(degree, rng), g)
    phi = apply(g, base)
    assert all(c.denominator == 1 for c in phi.coeffs)
    for p, k in levels.items():
        assert valuation(invariants(phi).disc, p) == valuation(disc, p) + 12 * k
    rec = InstanceRecord(A, B, degree, seed, base, dict(levels), base_levels(base),
                         minimal_discriminant_from_invariants(c4, c6).delta_min, g)
    return phi, rec
