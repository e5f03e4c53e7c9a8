from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g1min.arith import valuation
from g1min.fiber import NormalityVerdict, classify_fiber, normality
from g1min.invariants import discriminant, invariants, standard_model
from g1min.minimise import (
    GeometricStatus,
    MinimisationCertificate,
    Status,
    geometric_status,
    is_minimal,
    minimise_global,
    minimise_local,
    nonminimal_step,
    search_move,
)
from g1min.models import T4, apply, det, identity_transformation, is_integral, weierstrass
from g1min.testgen import generate_instance

from corpus import (
    planted_screen_instance,
    trigger_conic,
    trigger_deg2,
    trigger_deg3,
    trigger_double_conic,
    trigger_line,
)

P = Fraction


def diag(*xs):
    return tuple(tuple(P(xs[i]) if i == j else P(0) for j in range(len(xs))) for i in range(len(xs)))


def _check_move(phi, mv, p):
    psi = apply(mv.transformation, phi)
    assert is_integral(psi, p)
    drop = valuation(discriminant(phi), p) - valuation(discriminant(psi), p)
    assert drop == 12 * mv.k and mv.k >= 1
    assert valuation(det(mv.transformation), p) == -mv.k
    return psi


@pytest.mark.parametrize("p", [5, 7])
def test_deg2_trigger(p):
    phi = trigger_deg2(p, 1)
    mv = nonminimal_step(phi, p)
    assert mv.tag == "n2-double-line"
    assert mv.shape.mu == P(1, p) and mv.shape.M == diag(1, 1) and mv.shape.r == (0, 0, 0)
    _check_move(phi, mv, p)


@pytest.mark.parametrize("p", [5, 7])
def test_deg3_trigger(p):
    phi = trigger_deg3(p, 1)
    mv = nonminimal_step(phi, p)
    assert mv.tag == "n3-multiple-line"
    assert mv.shape.mu == P(1, p * p) and mv.shape.M == diag(1, p, 1)
    _check_move(phi, mv, p)


@pytest.mark.parametrize("p", [5, 7])
def test_deg4_triggers(p):
    mv = nonminimal_step(phi := trigger_conic(p, 2), p)
    assert mv.tag == "n4-conic-double-line"
    assert mv.shape == T4(diag(P(1, p * p), P(1, p * p)), diag(p * p, p, 1, 1))
    _check_move(phi, mv, p)

    mu = 2 * p
    mv = nonminimal_step(phi := trigger_double_conic(p, 2, mu), p)
    assert mv.tag == "n4-double-conic"
    assert mv.shape == T4(((P(1, p * p), P(-mu, p * p)), (0, 1)), diag(p, 1, 1, 1))
    _check_move(phi, mv, p)

    for name in ("triple line+line", "quadruple line", "double line+two lines (mu=1)"):
        mv = nonminimal_step(phi := trigger_line(p, 2, name), p)
        assert mv.tag == "n4-multiple-line"
        assert mv.shape == T4(diag(P(1, p * p), P(1, p)), diag(p, p, 1, 1))
        _check_move(phi, mv, p)


def test_normal_configuration_gives_no_move():
    p = 5
    phi = apply(T4(diag(1, 1), diag(1, 1, 1, 1)), standard_model(4, -1, 1))
    assert nonminimal_step(phi, p) is None
    assert nonminimal_step(weierstrass(a6=1), p) is None


def test_already_minimal():
    cert = minimise_local(standard_model(3, -1, 1), 5)
    assert cert.moves == () and cert.status is Status.MINIMAL_CERTIFIED and cert.is_minimal is True


@pytest.mark.parametrize("p", [5, 7, 11])
def test_weierstrass_scaling_move(p):
    cert = minimise_local(weierstrass(a6=p**6), p)
    assert [m.tag for m in cert.moves] == ["weierstrass"]
    assert cert.valuations == (12, 0) and cert.final == weierstrass(a6=1)


def test_is_minimal_examples():
    assert is_minimal(weierstrass(a4=-1, a6=1), 5)[0] is True
    verdict, cert = is_minimal(trigger_deg3(5, 3), 5)
    assert verdict is False and cert.moves[0].tag == "n3-multiple-line"
    verdict, cert = is_minimal(planted_screen_instance("common-factor", -1, 1, 5, 0), 5)
    assert verdict is False and cert.hint == "common-factor"
    assert cert.status is Status.MINIMAL_CERTIFIED


def _cert(status, input_status):
    phi = weierstrass(a6=1)
    return MinimisationCertificate(5, phi, (), (0,), phi, 0, status, input_status, identity_transformation(1))


def test_geometric_status_table():
    yes = NormalityVerdict(True, "reduced fiber")
    no = NormalityVerdict(False, "x")
    c = _cert(Status.MINIMAL_CERTIFIED, Status.MINIMAL_CERTIFIED)
    assert geometric_status(c, yes) is GeometricStatus.GEOMETRICALLY_MINIMAL
    assert geometric_status(c, no) is GeometricStatus.UNKNOWN
    c = _cert(Status.MINIMAL_CERTIFIED, Status.NOT_MINIMAL_DETECTED)
    assert geometric_status(c, yes) is GeometricStatus.NOT_GEOMETRICALLY_MINIMAL
    c = _cert(Status.MINIMAL_NO_CERTIFICATE, Status.MINIMAL_NO_CERTIFICATE)
    assert geometric_status(c, yes) is GeometricStatus.UNKNOWN


def test_global_examples():
    phi, rec = generate_instance(-1, 1, 3, {5: 2, 7: 1}, seed=5)
    gc = minimise_global(phi)
    assert gc.certified and abs(gc.delta_final) == abs(gc.delta_min) == abs(rec.delta_min)
    assert sorted(gc.local) == [5, 7]
    assert apply(gc.transformation, phi) == gc.final
    base = standard_model(2, -1, 1)
    gc = minimise_global(base)
    assert gc.local == {} and gc.final == base
    phi, _ = generate_instance(0, 1, 2, {5: 1}, seed=1)
    gc = minimise_global(phi)
    assert gc.delta_final == -432


def test_search_at_two_for_quadrics():
    phi, rec = generate_instance(-1, 1, 4, {2: 1}, seed=3)
    cert = minimise_local(phi, 2)
    assert cert.status is Status.MINIMAL_CERTIFIED
    assert cert.valuations[-1] == valuation(rec.delta_min, 2)


def test_prime_bound_limits_search(monkeypatch):
    phi, _ = generate_instance(-1, 1, 3, {5: 1}, seed=2)
    monkeypatch.setenv("G1MIN_PRIME_BOUND", "3")
    cert = minimise_local(phi, 5)
    assert cert.status is Status.MINIMAL_NO_CERTIFICATE and cert.level == 1 and cert.is_minimal is None
    assert search_move(phi, 5) is None


@settings(max_examples=30)
@given(st.sampled_from((1, 2, 3, 4)), st.sampled_from((5, 7, 11, 13)), st.integers(1, 2), st.integers(0, 10**6),
       st.sampled_from([(-1, 1), (2, -3), (0, 1), (1, 0), (-7, 6)]))
def test_minimise_properties(n, p, k, seed, AB):
    phi, rec = generate_instance(*AB, n, {p: k}, seed=seed)
    cert = minimise_local(phi, p)
    assert apply(cert.transformation, phi) == cert.final
    assert all(a - b > 0 and (a - b) % 12 == 0 for a, b in zip(cert.valuations, cert.valuations[1:]))
    assert is_integral(cert.final)
    assert cert.status is Status.MINIMAL_CERTIFIED
    assert cert.valuations[-1] == valuation(rec.delta_min, p)
    assert tuple(invariants(cert.final))[2] / tuple(invariants(phi))[2] == det(cert.transformation) ** 12
    if n > 1:
        assert normality(cert.final, p).is_normal is True
        classify_fiber(cert.final, p)
