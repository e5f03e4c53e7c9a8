"""Hypothesis strategies for equations and transformations."""
from fractions import Fraction

from hypothesis import strategies as st

from g1min.arith import det
from g1min.invariants import discriminant
from g1min.models import NCOEFFS, T1, T2, T3, T4, GenusOneEquation

small = st.integers(-6, 6)
primes = st.sampled_from([2, 3, 5, 7, 11, 13])
nonzero_rat = st.builds(Fraction, st.integers(-50, 50).filter(bool), st.integers(1, 30))


def equations(degree, lo=-6, hi=6, smooth=True):
    s = st.lists(st.integers(lo, hi), min_size=NCOEFFS[degree], max_size=NCOEFFS[degree]).map(
        lambda cs: GenusOneEquation(degree, cs))
    return s.filter(lambda phi: discriminant(phi) != 0) if smooth else s


def _from_transvections(n, ops, perm, sign):
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, j, c in ops:
        if i != j:
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    M = [M[k] for k in perm]
    M[0] = [sign * x for x in M[0]]
    return M


def matrices(n, lo=-3, hi=3, unimodular=False):
    if unimodular:
        ops = st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(-2, 2)), max_size=2 * n)
        return st.builds(_from_transvections, st.just(n), ops, st.permutations(range(n)), st.sampled_from((1, -1)))
    s = st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    return s.filter(lambda M: det(M) != 0)


def transformations(degree, unimodular=False):
    if degree == 1:
        u = st.sampled_from([1, -1]) if unimodular else nonzero_rat
        return st.builds(T1, u, small, small, small)
    mu = st.sampled_from([1, -1]) if unimodular else nonzero_rat
    if degree == 2:
        return st.builds(T2, mu, st.tuples(small, small, small), matrices(2, unimodular=unimodular))
    if degree == 3:
        return st.builds(T3, mu, matrices(3, unimodular=unimodular))
    return st.builds(T4, matrices(2, unimodular=unimodular), matrices(4, -2, 2, unimodular=unimodular))
