import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from g1min.arith import valuation
from g1min.errors import NonIntegralCoefficient, SingularInput
from g1min.invariants import discriminant, invariants, standard_model
from g1min.jacobian import (
    jacobian,
    level,
    minimal_discriminant_from_invariants,
    minimal_discriminant_global,
    minimal_discriminant_local,
    model_with_invariants,
)
from g1min.models import T1, T3, GenusOneEquation, apply, weierstrass

from oracles import brute_minimal_valuation
from strategies import equations, transformations


def test_jacobian_examples():
    J = jacobian(0, -864)
    assert invariants(J.model).disc == -432 * J.u**12
    J = jacobian(-48, -864)
    assert tuple(invariants(J.model))[:2] == (-48 * J.u**4, -864 * J.u**6)
    assert J.u == 1


@given(st.data())
def test_jacobian_of_any_model(data):
    n = data.draw(st.sampled_from((1, 2, 3, 4)))
    phi = data.draw(equations(n))
    c4, c6, disc = invariants(phi)
    J = jacobian(c4, c6)
    assert all(c.denominator == 1 for c in J.model.coeffs)
    assert discriminant(J.model) == disc * J.u**12


@pytest.mark.parametrize("p", [5, 7, 11])
def test_local_examples(p):
    assert minimal_discriminant_local(weierstrass(a6=p**6), p) == 0
    assert minimal_discriminant_local(weierstrass(a6=1), 5) == 0
    assert minimal_discriminant_local(weierstrass(a4=p), p) == 3  # disc = -64 p^3


def test_global_examples():
    assert minimal_discriminant_global(weierstrass(a6=1)).delta_min == -432
    rep = minimal_discriminant_global(weierstrass(a6=2**6 * 3**6))
    assert rep.delta_min == -432 and rep.scalings[2] == 1 and rep.scalings[3] == 1
    assert minimal_discriminant_global(weierstrass(a4=-1)).delta_min == 64
    assert minimal_discriminant_global(weierstrass(a6=-432)).delta_min == -19683


def test_errors():
    with pytest.raises(SingularInput):
        minimal_discriminant_global(weierstrass())
    with pytest.raises(NonIntegralCoefficient):
        minimal_discriminant_local(weierstrass(a4=Fraction(1, 5), a6=1), 5)
    with pytest.raises(SingularInput):
        jacobian(16, 64)  # 16^3 = 64^2
    with pytest.raises(NonIntegralCoefficient):
        level(GenusOneEquation(3, [Fraction(1, 7), 1, 1] + [0] * 7), 7)
    with pytest.raises(SingularInput):
        level(GenusOneEquation(2, (0, 0, 0, 1, 0, 0, 0, 0)), 5)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_brute_force_oracle_agrees(p):
    rng = random.Random(p)
    for _ in range(15):
        a = [rng.randint(-3, 3) for _ in range(5)]
        E = weierstrass(*a)
        if discriminant(E) == 0:
            continue
        k = rng.randint(0, 2)
        scaled = apply(T1(Fraction(1, p**k), 0, 0, 0), E)
        assert minimal_discriminant_local(scaled, p) == brute_minimal_valuation(E, p)


@given(equations(1, -20, 20), st.sampled_from([2, 3, 5, 7]))
def test_gap_is_a_multiple_of_12(E, p):
    gap = valuation(discriminant(E), p) - minimal_discriminant_local(E, p)
    assert gap >= 0 and gap % 12 == 0


@given(equations(1, -9, 9), transformations(1, unimodular=True), st.sampled_from([2, 3, 5]))
def test_local_minimal_is_unimodular_invariant(E, g, p):
    assert minimal_discriminant_local(apply(g, E), p) == minimal_discriminant_local(E, p)


def test_model_with_invariants_round_trip():
    for E in (weierstrass(1, -1, 1, 3, 5), weierstrass(0, 1, 1, -2, 0), weierstrass(1, 0, 0, 4, -7)):
        c4, c6, _ = invariants(E)
        F = model_with_invariants(c4, c6)
        assert tuple(invariants(F))[:2] == (c4, c6)


def test_level_of_scaled_cubic():
    p = 5
    F = standard_model(3, -1, 1)
    assert level(F, p).value == 0
    G = apply(T3(1, ((p, 0, 0), (0, p, 0), (0, 0, p))), F)
    assert valuation(discriminant(G), p) - valuation(discriminant(F), p) == 36
    assert level(G, p).value == 3


def test_report_consistency():
    rep = minimal_discriminant_from_invariants(-48 * 5**4, -864 * 5**6)
    assert rep.valuations[5] == 0 and rep.scalings[5] == 1
    assert discriminant(rep.minimal_model) == rep.delta_min
