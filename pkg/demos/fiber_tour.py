"""Reductions mod p of some equations with multiple fiber components.

Each example is a quadric pair whose reduction has one of the shapes that
matter for normality; the p-adic tails keep the generic fiber smooth.

Run: python demos/fiber_tour.py
"""
from g1min import GenusOneEquation, classify_fiber, discriminant, normality
from g1min.models import QUADRIC_MONOMIALS
from g1min.minimise import nonminimal_step

p = 5


def pair(F, G):
    """Quadric pair from {monomial: coefficient}, monomials as index strings like '13' for x1x3."""
    def vec(d):
        out = [0] * 10
        for key, c in d.items():
            e = [0] * 4
            for ch in key:
                e[int(ch) - 1] += 1
            out[QUADRIC_MONOMIALS.index(tuple(e))] = c
        return out
    return GenusOneEquation(4, tuple(vec(F) + vec(G)))


examples = {
    "conic + double line (normal)": pair({"13": 1, "44": p, "34": p}, {"22": 1, "14": 1, "33": p}),
    "conic + double line (not normal)": pair({"13": 1, "44": p * p, "34": p * p, "23": p}, {"22": 1, "14": 1, "33": p * p, "12": p}),
    "double conic": pair({"11": 1, "22": p, "33": p, "44": -p}, {"22": 1, "34": 1, "12": p}),
    "triple line + line": pair({"12": 1, "33": p, "44": p}, {"11": 1, "24": 1, "34": p}),
    "quadruple line": pair({"11": 1, "33": p, "34": p}, {"22": 1, "13": 1, "44": p}),
}

for name, phi in examples.items():
    assert discriminant(phi) != 0
    cls, pos = classify_fiber(phi, p)
    verdict = normality(phi, p)
    mv = nonminimal_step(phi, p)
    print(f"{name}")
    print(f"  class: {cls.label}")
    print(f"  normal: {verdict.is_normal} ({verdict.criterion})")
    print(f"  move: {mv.tag + f', drop {12 * mv.k}' if mv else 'none'}")
