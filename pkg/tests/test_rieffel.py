import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nctorus.rieffel import (
    build_bump,
    chern_antiderivative,
    chern_number,
    idempotency_residual,
    projection,
    projection_trace,
    rieffel_report,
    unit_projection,
    zero_projection,
)

GOLDEN = (math.sqrt(5) - 1) / 2


def test_bump_shape():
    b = build_bump(GOLDEN)
    f = float(b.f((1 - GOLDEN) / 2))
    assert 0 < f < 1
    x = np.linspace(0.3, 0.7, 101)
    assert np.all(build_bump(0.7).f(x) == 1.0)


def test_bump_relation_and_range():
    b = build_bump(0.7)
    assert b.relation_residual() < 1e-14
    x = b.points()
    f, g = b.f(x), b.g(x)
    assert f.min() >= 0 and f.max() <= 1
    assert np.all(g[x < 0.7] == 0)
    assert np.allclose(g**2, np.where(x >= 0.7, f - f * f, 0), atol=1e-15)


@pytest.mark.parametrize("p", [unit_projection(), zero_projection()])
def test_trivial_projections(p):
    assert idempotency_residual(p) == 0


def test_unit_trace_and_chern():
    u = unit_projection()
    assert projection_trace(u) == 1
    assert chern_number(u) == 0


@pytest.mark.parametrize("theta", [0.55, 0.7, GOLDEN])
def test_trace_and_chern(theta):
    p = projection(build_bump(theta))
    assert projection_trace(p) == pytest.approx(theta, abs=1e-6)
    assert chern_number(p) == pytest.approx(1.0, abs=1e-6)


@settings(max_examples=10, deadline=None)
@given(st.floats(0.52, 0.95), st.sampled_from(["flat-exp", "cosine"]))
def test_chern_is_profile_independent(theta, profile):
    p = projection(build_bump(theta, 2**14, profile))
    assert chern_number(p) == pytest.approx(1.0, abs=1e-5)


def test_antiderivative_is_minus_one_sixth():
    assert chern_antiderivative(build_bump(0.7)) == Fraction(-1, 6)


def test_mirrored_shift_is_idempotent():
    b = build_bump(0.7)
    assert idempotency_residual(projection(b, shift=-1)) < 1e-12


def test_idempotency_does_not_grow_with_grid():
    b = build_bump(0.7)
    p = projection(b, shift=-1)
    assert idempotency_residual(p, 2**14) <= idempotency_residual(p, 2**12) + 1e-15


@pytest.mark.xfail(strict=True, reason="shift direction P rho(h) P^-1 = rho(h(. + theta)) does not give an idempotent")
def test_printed_shift_is_idempotent():
    assert idempotency_residual(projection(build_bump(0.7), shift=1)) < 1e-8


def test_small_theta_is_mirrored():
    b = build_bump(0.3)
    assert b.theta == pytest.approx(0.7)
    assert b.note and "0.3" in b.note


@pytest.mark.parametrize("kwargs", [{"theta": 0.5}, {"theta": 1.2}, {"theta": 0.7, "grid": 1000}, {"theta": 0.7, "profile": "box"}])
def test_bad_parameters(kwargs):
    with pytest.raises(ValueError):
        build_bump(**kwargs)


def test_report_fields():
    rep = rieffel_report(0.7)
    assert set(rep["checks"]) == {"trace", "chern", "idempotency", "relation"}
    assert rep["checks"]["trace"].passed and rep["checks"]["chern"].passed
    assert rep["antiderivative"] == "-1/6"
    assert -6 * rep["antiderivative_quadrature"] == pytest.approx(1.0, abs=1e-6)
