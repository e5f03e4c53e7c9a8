from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from g1min.arith import MultiPoly, valuation
from g1min.models import (
    T1,
    T2,
    T3,
    T4,
    GenusOneEquation,
    apply,
    compose,
    det,
    identity_transformation,
    integrality,
    inverse,
    is_integral,
    transformation_from_json,
    transformation_to_json,
)

from strategies import equations, transformations

P = 5
DEGREES = (1, 2, 3, 4)


def test_identity_examples():
    F = GenusOneEquation(3, range(1, 11))
    assert apply(identity_transformation(3), F) == F
    phi = GenusOneEquation(2, range(8))
    assert apply(T2(1, (0, 0, 0), ((1, 0), (0, 1))), phi) == phi


def test_deg3_scaling_matches_substitution():
    t = Fraction(P)
    F = GenusOneEquation(3, [3, 1, 2, 5, -1, 4, 1, 7, -2, 6])
    out = apply(T3(1 / t**2, ((1, 0, 0), (0, t, 0), (0, 0, 1))), F)
    x, y, z = (MultiPoly.var(3, i) for i in range(3))
    expect = F.cubic().compose([x, y * t, z]) * (1 / t**2)
    assert out.cubic() == expect


def test_det_examples():
    assert det(T1(Fraction(1, P), 0, 0, 0)) == P
    assert det(identity_transformation(4)) == 1
    assert det(T2(Fraction(1, P**2), (0, 0, 0), ((P**2, 0), (0, P)))) == P


def test_inverse_of_scaling():
    assert inverse(T1(3, 0, 0, 0)) == T1(Fraction(1, 3), 0, 0, 0)
    for n in DEGREES:
        assert inverse(identity_transformation(n)) == identity_transformation(n)


def test_integrality_examples():
    assert is_integral(GenusOneEquation(2, range(8)))
    cs = [0] * 10
    cs[5] = Fraction(1, P)
    rep = integrality(GenusOneEquation(3, cs), P)
    assert not rep.is_integral and rep.offending == ("b1",)
    cs = [0] * 20
    cs[9] = Fraction(3, 2)
    assert is_integral(GenusOneEquation(4, cs), P)
    assert not is_integral(GenusOneEquation(4, cs))


@given(st.data())
def test_group_action_laws(data):
    n = data.draw(st.sampled_from(DEGREES))
    phi = data.draw(equations(n, smooth=False))
    g, h = data.draw(transformations(n)), data.draw(transformations(n))
    assert apply(compose(g, h), phi) == apply(g, apply(h, phi))
    assert apply(inverse(g), apply(g, phi)) == phi
    assert apply(compose(g, identity_transformation(n)), phi) == apply(g, phi)
    assert apply(compose(g, inverse(g)), phi) == phi


@given(st.data())
def test_det_is_a_homomorphism(data):
    n = data.draw(st.sampled_from(DEGREES))
    g, h = data.draw(transformations(n)), data.draw(transformations(n))
    assert det(compose(g, h)) == det(g) * det(h)
    assert det(inverse(g)) == 1 / det(g)


@given(st.data())
def test_unimodular_stability(data):
    n = data.draw(st.sampled_from(DEGREES))
    phi = data.draw(equations(n, smooth=False))
    g = data.draw(transformations(n, unimodular=True))
    assert valuation(det(g), P) == 0
    assert is_integral(apply(g, phi))


@given(st.data())
def test_transformation_json_round_trip(data):
    n = data.draw(st.sampled_from(DEGREES))
    g = data.draw(transformations(n))
    assert transformation_from_json(transformation_to_json(g)) == g


def test_t4_combines_pencil_and_variables():
    phi = GenusOneEquation(4, list(range(1, 21)))
    g = T4(((1, 2), (0, 1)), [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    F, G = phi.quadrics()
    out = apply(g, phi)
    assert out.quadrics() == (F + G * 2, G)
