import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nctorus.nc_torus import (
    KOrderContext,
    NCLabel,
    TieError,
    TorusElement,
    _lex_sign,
    commutator,
    cone_labels,
    decompose,
    derivation,
    k_positive,
    k_sign,
    manin_checks,
    nc_basis,
    nc_constants,
    nc_pairing,
    order_agreement,
    order_csv,
    parse_theta,
    printed_gamma,
    rational_correspondence,
    star,
    trace,
    weyl_product,
)

E = TorusElement.mode


def close(a: TorusElement, b: TorusElement, tol=1e-12):
    return a.distance(b) < tol


@pytest.fixture(scope="module")
def nc03():
    return nc_constants(0.3, 3)


def test_parse_theta():
    assert parse_theta("1/5") == Fraction(1, 5)
    assert isinstance(parse_theta("0.3"), float)
    assert parse_theta(Fraction(2, 7)) == Fraction(2, 7)


def test_weyl_product_phase():
    th = 0.3
    got = weyl_product(E(th, (1, 0)), E(th, (0, 1)))
    assert close(got, E(th, (1, 1), cmath.exp(1j * math.pi * th)))


def test_unit_is_neutral():
    a = TorusElement(0.3, {(1, 2): 0.5, (-3, 1): 2 - 1j})
    assert close(E(0.3, (0, 0)) * a, a)
    assert close(a * E(0.3, (0, 0)), a)


def test_commutator_at_half():
    th = Fraction(1, 2)
    got = commutator(E(th, (1, 0)), E(th, (0, 1)))
    assert close(got, E(th, (1, 1), 2j))


def test_commutator_matches_clock_shift_matrices():
    # N = 3 clock and shift matrices realise theta = 1/3
    N = 3
    w = cmath.exp(2j * math.pi / N)
    P = np.diag([w**k for k in range(N)])
    Q = np.roll(np.eye(N), 1, axis=0)
    assert np.allclose(P @ Q, w * Q @ P) or np.allclose(Q @ P, w * P @ Q)
    got = commutator(E(Fraction(1, 3), (1, 0)), E(Fraction(1, 3), (0, 1)))
    assert got[(1, 1)] == pytest.approx(2j * math.sin(math.pi / 3), abs=1e-12)


def test_trace():
    th = 0.3
    assert trace(E(th, (1, 0))) == 0
    assert trace(E(th, (0, 0))) == 1
    u = E(th, (1, 2))
    assert trace(u * star(u)) == pytest.approx(1)


def test_derivations():
    th = 0.3
    p = E(th, (1, 0))
    assert close(derivation(1, p), E(th, (1, 0), 2j * math.pi))
    assert derivation(2, p).coeffs == {}
    a = TorusElement(th, {(1, 2): 1, (-2, 3): 1j, (0, -1): 0.5})
    assert close(derivation(1, derivation(2, a)), derivation(2, derivation(1, a)))
    with pytest.raises(ValueError):
        derivation(3, a)


def test_derivation_is_a_derivation():
    a = TorusElement(0.3, {(1, 2): 1, (0, -1): 0.5})
    b = TorusElement(0.3, {(-1, 1): 2j, (2, 0): 1})
    for j in (1, 2):
        assert close(derivation(j, a * b), derivation(j, a) * b + a * derivation(j, b), 1e-10)


modes = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
    max_size=4,
)


@settings(max_examples=40, deadline=None)
@given(modes, modes, modes)
def test_product_is_associative(x, y, z):
    a, b, c = (TorusElement(0.3, d) for d in (x, y, z))
    assert close((a * b) * c, a * (b * c), 1e-9)


@settings(max_examples=40, deadline=None)
@given(modes, modes)
def test_star_reverses_products(x, y):
    a, b = TorusElement(0.3, x), TorusElement(0.3, y)
    assert close(star(a * b), star(b) * star(a), 1e-9)


def test_k_sign_examples():
    assert k_positive(KOrderContext(0.4), (-1, 3))
    assert k_sign(KOrderContext(Fraction(1, 3)), (-1, 3)) == 0
    assert k_sign(KOrderContext(0.4), (1, -3)) == -1


def test_order_agreement():
    assert order_agreement(1e-3, 20).passed
    far = order_agreement(0.4, 20)
    assert not far.passed
    assert (-1, 3) in far.failures or far.details["disagreements"] > 0
    assert k_sign(KOrderContext(0.4), (-1, 3)) != _lex_sign((-1, 3))


def test_order_csv():
    lines = order_csv(0.4, 2).splitlines()
    assert lines[0] == "m1,m2,sign"
    assert len(lines) == 1 + 25
    assert "-1,3" not in lines  # outside window 2


def test_order_is_additive():
    ctx = KOrderContext(math.sqrt(2) - 1)
    m, n = (2, -1), (-1, 3)
    assert ctx.value((m[0] + n[0], m[1] + n[1])) == pytest.approx(ctx.value(m) + ctx.value(n))
    assert ctx.compare(m, n) == k_sign(ctx, (m[0] - n[0], m[1] - n[1]))


def test_pairing_of_dual_bases():
    ctx = KOrderContext(math.sqrt(2) - 1)
    assert nc_pairing(nc_basis(ctx, "T", (1, 1)), nc_basis(ctx, "U", (1, 1))) == pytest.approx(1)
    assert nc_pairing(nc_basis(ctx, "Tt", (1, 1)), nc_basis(ctx, "Ut", (1, 1))) == pytest.approx(1)
    assert nc_pairing(nc_basis(ctx, "T", (1, 1)), nc_basis(ctx, "Ut", (1, 1))) == pytest.approx(0)


def test_u_family_isotropic():
    ctx = KOrderContext(0.3)
    labels, _ = cone_labels(ctx, 3, "A")
    els = [nc_basis(ctx, lab) for lab in labels]
    assert max(abs(nc_pairing(x, y)) for x in els for y in els) < 1e-12


def test_basis_rejects_labels_outside_cone():
    ctx = KOrderContext(0.3)
    with pytest.raises(ValueError):
        nc_basis(ctx, "U", (-1, 0))
    with pytest.raises(ValueError):
        nc_basis(ctx, "Ut", (0, 0))


def test_rational_theta_ties_are_excluded():
    ctx = KOrderContext(Fraction(1, 3))
    labels, ties = cone_labels(ctx, 3, "A")
    assert (-1, 3) in ties and (1, -3) in ties
    assert all(lab.m not in ties for lab in labels)
    with pytest.raises(TieError):
        decompose(ctx, E(ctx.theta, (-1, 3)))


def test_decompose_roundtrip():
    ctx = KOrderContext(0.3)
    x = TorusElement(0.3, {(1, 2): 1 + 2j, (-1, -2): 0.5, (0, 0): 3 - 1j, (2, -1): 1j})
    coords = decompose(ctx, x)
    back = TorusElement(0.3)
    for lab, v in coords.items():
        back = back + nc_basis(ctx, lab).scale(v)
    assert close(back, x)


def test_uu_bracket_matches_printed_table():
    ctx = KOrderContext(0.3)
    x, y = NCLabel("U", (1, 0)), NCLabel("U", (0, 1))
    got = decompose(ctx, commutator(nc_basis(ctx, x), nc_basis(ctx, y)))
    want = printed_gamma(ctx, x, y)
    assert set(got) == {lab for lab, v in want.items() if abs(v) > 1e-14}
    assert all(got[k] == pytest.approx(want[k]) for k in got)
    assert math.sin(0.3 * math.pi) == pytest.approx(abs(got[NCLabel("U", (1, 1))]))


def test_bracket_with_itself_vanishes():
    ctx = KOrderContext(0.3)
    for fam in ("U", "Ut"):
        u = nc_basis(ctx, fam, (1, 2))
        assert commutator(u, u).coeffs == {}


def test_nc_constants_parts(nc03):
    for name in ("delta_vs_printed", "delta_vs_printed_closure", "gamma_vs_printed_closure", "mixed_manin"):
        assert nc03.parts[name].passed, name


def test_nc_constants_amended_tables_pass(nc03):
    assert nc03.informational["gamma_vs_amended"].passed
    assert nc03.informational["mixed_displays_amended"].passed


def test_first_two_mixed_displays_match(nc03):
    assert [d["display"] for d in nc03.display_matches["[T^m, U_n]"]] == [1]
    assert [d["display"] for d in nc03.display_matches["[T^m, U~_n]"]] == [2]


@pytest.mark.xfail(strict=True, reason="printed U, U~ coefficient for m < n has the opposite sign")
def test_gamma_matches_printed_table(nc03):
    assert nc03.parts["gamma_vs_printed"].passed


@pytest.mark.xfail(strict=True, reason="third and fourth printed mixed displays do not match the bracket")
def test_mixed_displays_match_printed(nc03):
    assert nc03.parts["mixed_displays"].passed


def test_window_too_small():
    with pytest.raises(ValueError):
        nc_constants(0.3, 1)


@pytest.mark.parametrize("theta", [0.3, math.sqrt(2) - 1])
def test_manin_checks(theta):
    assert all(r.passed for r in manin_checks(theta, 3, samples=10).values())


def test_rational_correspondence_n5():
    assert rational_correspondence(5, 2).passed
