import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nctorus.scalar import (
    APPROX,
    ModularImage,
    cyclo_field,
    cyclotomic_polynomial,
    embed,
    euler_phi,
    imag_part,
    root_of_unity,
)

orders = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 10, 12, 20])
small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def elements(L):
    F = cyclo_field(L)
    return st.lists(small, min_size=1, max_size=L).map(lambda cs: sum((F.zeta(k) * c for k, c in enumerate(cs)), F.zero))


def test_i_squared():
    i = root_of_unity(4, 1)
    assert i * i == -1


def test_zeta6_is_square_root_of_omega():
    z = root_of_unity(6, 1)
    assert z * z == cyclo_field(6).zeta(1, 3)
    assert embed(z) == pytest.approx(cmath.exp(1j * math.pi / 3))


@pytest.mark.parametrize("m", range(5))
def test_character_sum(m):
    total = sum((root_of_unity(5, j * m) for j in range(5)), cyclo_field(5).zero)
    assert total == (5 if m == 0 else 0)


def test_imag_part_examples():
    assert imag_part(cyclo_field(4).i) == 1
    assert imag_part(cyclo_field(4).rational(3, 2)) == 0
    assert embed(imag_part(root_of_unity(8, 1))) == pytest.approx(0.7071067811865476, abs=1e-15)


def test_embed_examples():
    assert embed(root_of_unity(4, 1)) == pytest.approx(1j)
    assert embed(root_of_unity(3, 1)) == pytest.approx(complex(-0.5, 0.8660254037844386), abs=1e-15)
    w = root_of_unity(3, 1)
    assert 1 + w + w * w == 0


@pytest.mark.parametrize("L", [1, 2, 3, 4, 6, 8, 9, 12, 20, 24])
def test_representation_length_is_euler_phi(L):
    assert cyclotomic_polynomial(L).degree() == euler_phi(L)
    F = cyclo_field(L)
    assert len(F.zeta(L - 1).coeffs) <= euler_phi(L)


def test_sqrt_in_field():
    F = cyclo_field(12)
    assert F.sqrt(3) * F.sqrt(3) == 3
    F20 = cyclo_field(20)
    assert F20.sqrt(5) * F20.sqrt(5) == 5


def test_division_by_zero_raises():
    F = cyclo_field(4)
    with pytest.raises(ZeroDivisionError):
        F.one / F.zero


@settings(max_examples=60, deadline=None)
@given(st.data(), orders)
def test_field_axioms(data, L):
    a, b, c = (data.draw(elements(L)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if a != 0:
        assert a * a.inverse() == 1
    assert embed(a * b) == pytest.approx(embed(a) * embed(b), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.data(), st.sampled_from([4, 8, 12, 20]))
def test_imag_part_matches_embedding(data, L):
    z = data.draw(elements(L))
    assert embed(imag_part(z)) == pytest.approx(embed(z).imag, abs=1e-9)
    assert imag_part(z).conjugate() == imag_part(z)


@settings(max_examples=40, deadline=None)
@given(st.data(), st.sampled_from([3, 5, 8, 12]))
def test_modular_image_detects_zero(data, L):
    F = cyclo_field(L)
    z = data.draw(elements(L))
    img = ModularImage(F, [z, z - z], bound=10**6)
    assert not img.images[1].any()
    assert bool(img.images[0].any()) == (z != 0)


def test_approx_field_axes_exact():
    assert APPROX.zeta(1, 4) * APPROX.zeta(1, 4) == -1
    assert APPROX.is_zero(1e-12) and not APPROX.is_zero(1e-8)
    assert APPROX.rational(Fraction(1, 3)) == pytest.approx(1 / 3)


@settings(max_examples=30, deadline=None)
@given(st.data(), st.sampled_from([(4, 8), (3, 12), (4, 12), (5, 20)]))
def test_subfield_coercion(data, pair):
    l, L = pair
    z = data.draw(elements(l))
    big = cyclo_field(L).coerce(z)
    assert embed(big) == pytest.approx(embed(z), abs=1e-9)
    assert cyclo_field(L).coerce(z * z) == big * big


def test_coercion_rejects_non_subfield():
    with pytest.raises(ValueError):
        cyclo_field(8).coerce(cyclo_field(3).one)
