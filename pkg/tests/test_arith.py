from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from g1min.arith import (
    INF,
    FpPoly,
    LocalContext,
    MultiPoly,
    det,
    det_mod_p,
    lift_to_sl,
    mod_p,
    nullspace_mod_p,
    poly_valuation,
    projective_points,
    rank_mod_p,
    reduce_mod_p,
    substitute_linear,
    unimodular_from_mod_p,
    valuation,
)
from g1min.errors import NonIntegralCoefficient

from strategies import nonzero_rat, primes

X, Y = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
x3, y3, z3 = (MultiPoly.var(3, i) for i in range(3))


@pytest.mark.parametrize("x,p,v", [(8, 2, 3), (0, 5, INF), (Fraction(45, 14), 7, -1), (Fraction(45, 14), 3, 2)])
def test_valuation_examples(x, p, v):
    assert valuation(x, LocalContext(p)) == v


def test_local_context_rejects_composites():
    with pytest.raises(ValueError):
        LocalContext(9)


def test_inf_orders_above_integers():
    assert INF > 10**9 and not INF < 0 and INF == INF
    assert min(3, INF) == 3


@pytest.mark.parametrize("f,p,v", [(3 * X**2 + 9 * Y, 3, 1), (X + Y, 5, 0), (49 * (X**2 + X * Y), 7, 2),
                                   (MultiPoly(2), 5, INF)])
def test_poly_valuation(f, p, v):
    assert poly_valuation(f, p) == v


def test_reduce_mod_p_examples():
    x, z = X, Y
    assert reduce_mod_p(x**2 + 5 * x * z + 10 * z**2, 5) == FpPoly(5, 2, {(2, 0): 1})
    assert reduce_mod_p(7 * x**3, 7).is_zero()
    assert reduce_mod_p(x**2 + Fraction(3, 2) * x * z, 5) == FpPoly(5, 2, {(2, 0): 1, (1, 1): 4})
    with pytest.raises(NonIntegralCoefficient):
        reduce_mod_p(x * Fraction(1, 5), 5)


def test_substitute_linear_examples():
    x, z = X, Y
    assert substitute_linear(x**2, [[1, 0], [0, 1]]) == x**2
    assert substitute_linear(x * z, [[0, 1], [1, 0]]) == x * z
    assert substitute_linear(x**2 + z**2, [[1, 1], [0, 1]]) == 2 * x**2 + 2 * x * z + z**2


@given(nonzero_rat, nonzero_rat, primes)
def test_valuation_is_a_valuation(a, b, p):
    assert valuation(a * b, p) == valuation(a, p) + valuation(b, p)
    if a + b != 0:
        va, vb = valuation(a, p), valuation(b, p)
        assert valuation(a + b, p) >= min(va, vb)
        if va != vb:
            assert valuation(a + b, p) == min(va, vb)


polys3 = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3), st.integers(-9, 9), max_size=6).map(
    lambda t: MultiPoly(3, t))
mats3 = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3)


@given(polys3, polys3, primes)
def test_reduction_is_a_ring_map(f, g, p):
    assert reduce_mod_p(f * g, p) == reduce_mod_p(f, p) * reduce_mod_p(g, p)
    assert reduce_mod_p(f + g, p) == reduce_mod_p(f, p) + reduce_mod_p(g, p)


@given(polys3, polys3, mats3)
def test_substitution_is_a_ring_map(f, g, M):
    assert substitute_linear(f + g, M) == substitute_linear(f, M) + substitute_linear(g, M)
    assert substitute_linear(f * g, M) == substitute_linear(f, M) * substitute_linear(g, M)


@given(polys3, mats3, mats3)
def test_substitution_composes_in_row_order(f, A, B):
    AB = [[sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert substitute_linear(substitute_linear(f, B), A) == substitute_linear(f, AB)


@given(polys3, mats3, primes)
def test_fp_substitution_matches_lift(f, M, p):
    assert reduce_mod_p(f, p).substitute_linear([[x % p for x in r] for r in M]) == \
        reduce_mod_p(substitute_linear(f, M), p)


def test_mod_p_of_fraction():
    assert mod_p(Fraction(3, 2), 5) == 4
    with pytest.raises(NonIntegralCoefficient):
        mod_p(Fraction(1, 10), 5)


@given(st.lists(st.lists(st.integers(0, 12), min_size=4, max_size=4), min_size=4, max_size=4),
       st.sampled_from([2, 3, 5, 7, 13]))
def test_unimodular_lift(A, p):
    if det_mod_p(A, p) == 0:
        with pytest.raises(ValueError):
            unimodular_from_mod_p(A, p)
        return
    L = unimodular_from_mod_p(A, p)
    assert det(L) == 1
    # rows after the first agree mod p; the first agrees up to a unit
    assert all((a - b) % p == 0 for ra, rb in zip(A[1:], L[1:]) for a, b in zip(ra, rb))
    assert rank_mod_p([A[0], L[0]], p) == 1


def test_lift_to_sl_identity():
    assert lift_to_sl([[1, 0], [0, 1]], 5) == [[1, 0], [0, 1]]


@pytest.mark.parametrize("n,p", [(2, 5), (3, 3), (4, 2)])
def test_projective_point_count(n, p):
    pts = list(projective_points(n, p))
    assert len(pts) == (p**n - 1) // (p - 1) == len(set(pts))


def test_nullspace():
    K = nullspace_mod_p([[1, 2, 3]], 7, 3)
    assert len(K) == 2
    assert all(sum(a * b for a, b in zip([1, 2, 3], v)) % 7 == 0 for v in K)
