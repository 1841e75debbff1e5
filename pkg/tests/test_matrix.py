import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nctorus.fixtures_sl import sl2_fixture
from nctorus.matrix import SquareMatrix, commutator, pairing
from nctorus.rational_torus import build_catalog, generator, torus_field
from nctorus.scalar import APPROX, cyclo_field


def label_map(items):
    return {str(x.label): x.matrix for x in items}


def test_pairing_sl2_dual_basis():
    w = sl2_fixture().witness
    assert pairing(w.a_basis[0], w.b_basis[0]) == 1
    assert pairing(w.a_basis[1], w.b_basis[0]) == 0


def test_pairing_identity_is_zero():
    one = SquareMatrix.identity(3, cyclo_field(12))
    assert pairing(one, one) == 0


def test_pairing_torus_n2():
    cat = build_catalog(2)
    u, t = label_map(cat.unitary), label_map(cat.borel)
    assert pairing(t["T(1,1)"], u["U(1,1)"]) == 1


def test_commutator_self_vanishes():
    q = generator(3, "Q")
    assert commutator(q, q).is_zero()


def test_commutator_n4_sine_law():
    F = torus_field(4)
    c = commutator(generator(4, "e", 1, 0), generator(4, "e", 0, 1))
    two_i_sin = 2 * F.i * F.sqrt(2) / 2
    assert c == generator(4, "e", 1, 1).scale(two_i_sin)


def test_commutator_n3_direct_product():
    # oracle: explicit 3x3 products of the generator matrices
    x = generator(3, "e", 1, 2, field=APPROX).to_complex()
    y = generator(3, "e", 2, 2, field=APPROX).to_complex()
    want = 2j * np.sin(-2 * np.pi / 3) * generator(3, "e", 0, 1, field=APPROX).to_complex()
    assert np.allclose(x @ y - y @ x, want, atol=1e-12)
    exact = commutator(generator(3, "e", 1, 2), generator(3, "e", 2, 2))
    assert np.allclose(exact.to_complex(), want, atol=1e-12)


def random_matrix(data, n, F):
    vals = data.draw(st.lists(st.integers(-3, 3), min_size=2 * n * n, max_size=2 * n * n))
    rows = [[F.rational(vals[2 * (i * n + j)]) + F.rational(vals[2 * (i * n + j) + 1]) * F.i for j in range(n)] for i in range(n)]
    return SquareMatrix.from_rows(rows, F)


@settings(max_examples=40, deadline=None)
@given(st.data(), st.integers(1, 4))
def test_matrix_identities(data, n):
    F = cyclo_field(4)
    x, y = random_matrix(data, n, F), random_matrix(data, n, F)
    assert x.dagger().dagger() == x
    assert (x @ y).trace() == (y @ x).trace()
    assert commutator(x, x).is_zero()
    assert commutator(x, y) == -commutator(y, x)
    assert pairing(x, y) == pairing(y, x)
    assert np.allclose((x @ y).to_complex(), x.to_complex() @ y.to_complex())
    assert np.isclose(float(F.to_complex(pairing(x, y)).real), np.trace(x.to_complex() @ y.to_complex()).imag)


def test_approx_backend_tolerance():
    a = SquareMatrix.identity(2, APPROX)
    b = a + SquareMatrix.from_rows([[1e-12, 0], [0, 0]], APPROX)
    assert a.equals(b)
    assert not a.equals(a.scale(2))
