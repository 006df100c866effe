import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psl2reps.mobius import Mat2, PSL2Element, conjugate, psl
from psl2reps.ucover import (
    IMAGE_COMMUTATOR,
    LIFTED_IDENTITY,
    Central,
    ClassificationError,
    Ell,
    Hyp,
    LiftedElement,
    LiftRule,
    ParNeg,
    ParPos,
    StepSizeError,
    classify_lifted,
    continue_angle,
    continue_path,
    ev_commutator,
    ev_product,
    inv_lifted,
    lift_canonical_ell1,
    lift_canonical_hyp0,
    lifted_to_json,
    mul_lifted,
    orientation_self_test,
    path_lift_commutator_oracle,
    path_lift_product_oracle,
    sl2_projection,
    trace_lifted,
    z_power,
)

D = psl(2, 0, 0, Fraction(1, 2))
A53 = psl(Fraction(5, 3), Fraction(4, 3), Fraction(4, 3), Fraction(5, 3))
P = psl(1, 1, 0, 1)
R = psl(0, 1, -1, 0)


def rotation(t):
    return PSL2Element.of(math.cos(t), math.sin(t), -math.sin(t), math.cos(t))


def parabolic_pair(lam):
    return P, conjugate(P, psl(1, 0, lam, 1))


@st.composite
def lifted_float(draw):
    a = draw(st.floats(0.3, 3)) * draw(st.sampled_from([1, -1]))
    b, c = draw(st.floats(-3, 3)), draw(st.floats(-3, 3))
    return LiftedElement(PSL2Element.of(a, b, c, (1 + b * c) / a), draw(st.integers(-3, 3)))


def test_orientation_calibration():
    orientation_self_test()


def test_canonical_lifts():
    assert lift_canonical_hyp0(psl(-1, 0, 0, -1)) == LIFTED_IDENTITY
    assert classify_lifted(lift_canonical_hyp0(P)) == ParPos(0)
    u = lift_canonical_hyp0(D)
    assert u.theta0 == 0 and classify_lifted(u) == Hyp(0)
    with pytest.raises(ClassificationError):
        lift_canonical_hyp0(R)


def test_ell1_lift():
    u = lift_canonical_ell1(R)
    assert 0 < u.theta0 < math.pi
    assert classify_lifted(u) == Ell(1)
    assert classify_lifted(mul_lifted(z_power(1), u)) == Ell(2)
    thetas = [lift_canonical_ell1(rotation(t)).theta0 for t in np.linspace(0.05, math.pi - 0.05, 200)]
    assert max(np.abs(np.diff(thetas))) < 0.05


def test_central_elements():
    assert z_power(0) == LIFTED_IDENTITY
    assert mul_lifted(z_power(1), z_power(-1)) == LIFTED_IDENTITY
    assert classify_lifted(z_power(3)) == Central(3)
    assert sl2_projection(LIFTED_IDENTITY) == Mat2(1, 0, 0, 1)
    assert sl2_projection(z_power(1)) == Mat2(-1, 0, 0, -1)
    assert trace_lifted(LIFTED_IDENTITY) == 2
    assert trace_lifted(z_power(1)) == -2


@pytest.mark.parametrize("lam,cls", [(0, ParPos(0)), (2, ParNeg(1)), (3, Hyp(1)), (1, Ell(1))])
def test_parabolic_pair_family(lam, cls):
    g1, g2 = parabolic_pair(lam)
    u = ev_product(g1, g2)
    assert classify_lifted(u) == cls
    if lam == 2:
        assert trace_lifted(u) == -2


def test_torus_commutators():
    assert classify_lifted(ev_commutator(A53, D)) == ParPos(-1)
    assert classify_lifted(ev_commutator(D, A53)) == ParNeg(1)
    assert ev_commutator(D, psl(3, 0, 0, Fraction(1, 3))) == LIFTED_IDENTITY


def test_hyp1_trace_and_offdiag_sign():
    u = ev_product(*parabolic_pair(3))
    assert trace_lifted(u) <= -2
    v = ev_product(*parabolic_pair(2))
    w = mul_lifted(z_power(1), lift_canonical_hyp0(P))
    assert classify_lifted(w) == ParPos(1)
    assert sl2_projection(w).b < 0
    assert classify_lifted(v) == ParNeg(1)


def test_lift_rule_errors():
    with pytest.raises(ClassificationError):
        ev_product(R, D, LiftRule.HYP0)
    assert classify_lifted(ev_product(R, psl(1, 0, 0, 1), LiftRule.HYP0_OR_ELL1)) == Ell(1)


def test_oracle_examples():
    D2 = psl(3, 0, 0, Fraction(1, 3))
    for g1, g2 in [(D, D2), parabolic_pair(3)]:
        g1, g2 = PSL2Element(g1.m.to_float()), PSL2Element(g2.m.to_float())
        ref = path_lift_product_oracle(g1, g2)
        got = ev_product(g1, g2)
        assert abs(ref.theta0 - got.theta0) < 1e-6
        assert classify_lifted(ref) == classify_lifted(got)
    ref = path_lift_commutator_oracle(PSL2Element(A53.m.to_float()), PSL2Element(D.m.to_float()))
    assert classify_lifted(ref) == ParPos(-1)


def test_step_size_rejection():
    def jump(t):
        out = np.tile(np.eye(2), (t.size, 1, 1))
        out[t > 0.5] = [[0.0, 1.0], [-1.0, 0.0]]
        return out

    with pytest.raises(StepSizeError):
        continue_path(jump, 64, max_steps=256)
    with pytest.raises(ValueError):
        continue_path(jump, 16)


def test_continue_angle_tracks_rotation():
    t = np.linspace(0, 1, 257)
    path = np.array([[[math.cos(3 * x), math.sin(3 * x)], [-math.sin(3 * x), math.cos(3 * x)]] for x in t])
    theta, worst = continue_angle(path)
    assert theta == pytest.approx(3.0)
    assert worst < 0.02


def test_json():
    u = mul_lifted(z_power(2), lift_canonical_hyp0(D))
    doc = lifted_to_json(u)
    assert doc["theta0"] == pytest.approx(2 * math.pi)
    assert doc["matrix"] == [["2", "0"], ["0", "1/2"]]


@given(lifted_float(), st.integers(-3, 3))
def test_center_commutes(u, n):
    left, right = mul_lifted(u, z_power(n)), mul_lifted(z_power(n), u)
    assert left.theta0 == pytest.approx(right.theta0, abs=1e-12)
    assert left.theta0 == pytest.approx(u.theta0 + n * math.pi, abs=1e-12)


@given(lifted_float(), lifted_float(), lifted_float())
def test_associativity_and_inverse(u, v, w):
    assert mul_lifted(mul_lifted(u, v), w).theta0 == pytest.approx(mul_lifted(u, mul_lifted(v, w)).theta0, abs=1e-8)
    assert mul_lifted(u, inv_lifted(u)).theta0 == pytest.approx(0, abs=1e-8)


@given(lifted_float(), lifted_float())
def test_trace_conjugation_invariant(u, h):
    c = mul_lifted(mul_lifted(h, u), inv_lifted(h))
    assert trace_lifted(c) == pytest.approx(trace_lifted(u), rel=1e-8, abs=1e-8)


rat = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def psl_rational(draw):
    a = draw(rat.filter(lambda x: x != 0))
    b, c = draw(rat), draw(rat)
    return psl(a, b, c, (1 + b * c) / a)


@settings(max_examples=200)
@given(psl_rational(), psl_rational())
def test_commutator_image(g, h):
    assert classify_lifted(ev_commutator(g, h)) in IMAGE_COMMUTATOR


@settings(max_examples=200)
@given(psl_rational(), psl_rational())
def test_commutator_lift_independent(g, h):
    u = ev_commutator(g, h)
    a, b = LiftedElement(g, 1), LiftedElement(h, -2)
    v = mul_lifted(mul_lifted(a, b), mul_lifted(inv_lifted(a), inv_lifted(b)))
    assert v == u
