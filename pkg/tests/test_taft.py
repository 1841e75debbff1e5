import pytest
from hypothesis import given, settings, strategies as st

from nctorus.scalar import APPROX
from nctorus.taft import (
    TensorElement,
    canonical_map,
    chi,
    coaction,
    coinvariants,
    default_field,
    galois_algebra,
    hopf_structure,
    parse_s,
    rewrite_word,
    taft_algebra,
    taft_report,
    translation,
    translation_map_check,
    verify_comodule,
    verify_hopf,
)


def test_default_field_holds_i():
    assert default_field(3).L == 12
    assert default_field(4).L == 4


def test_parse_s():
    F = default_field(2)
    assert parse_s("i", F) == F.zeta(1, 4)
    assert parse_s("0", F) == F.zero
    with pytest.raises(ValueError):
        parse_s("xyz", F)


def test_relations():
    T = taft_algebra(3)
    R, G = T.gens()
    assert R**3 == T.element({})
    assert G**3 == T.one()
    assert R * G == (G * R).scale(T.omega)
    A = galois_algebra(3, "-1")
    r, g = A.gens()
    assert r**3 == A.one().scale(A.s)
    assert A.s == -A.field.one


@pytest.mark.parametrize("N", [2, 3, 5])
def test_hopf_axioms(N):
    assert verify_hopf(N).passed


def test_hopf_axioms_approx():
    assert verify_hopf(3, APPROX).passed


def test_coproduct_of_grouplike_and_counit():
    H = hopf_structure(3)
    T = H.T
    G = T.mono(0, 1)
    assert H.coproduct(G) == TensorElement.pure(G, G)
    assert H.counit(T.one()) == T.field.one
    assert H.counit(T.mono(1, 0)) == T.field.zero


def test_antipode_squared_n2():
    H = hopf_structure(2)
    R = H.T.mono(1, 0)
    assert H.antipode(H.antipode(R)) == -R


@pytest.mark.parametrize("N", [2, 3])
@pytest.mark.parametrize("s", ["0", "1", "-1", "i"])
def test_comodule_and_coinvariants(N, s):
    assert verify_comodule(N, s).passed
    assert coinvariants(N, s)["dimension"] == 1


def test_coinvariants_are_scalars():
    (b,) = coinvariants(3, "1")["basis"]
    assert set(b.coeffs) == {(0, 0)}


def test_trivial_coaction_fixes_everything():
    assert coinvariants(2, "1", trivial=True)["dimension"] == 4


@pytest.mark.parametrize("N, s, expected", [(2, "1", 16), (2, "0", 16), (3, "i", 81)])
def test_canonical_map_rank(N, s, expected):
    cm = canonical_map(N, s)
    assert cm["rank"] == expected and cm["bijective"]


def test_canonical_map_limited_to_small_n():
    with pytest.raises(ValueError):
        canonical_map(4, "1")


@pytest.mark.parametrize("N", [2, 3])
@pytest.mark.parametrize("s", ["0", "1", "-1"])
def test_translation_map(N, s):
    assert translation_map_check(N, s).passed


def test_translation_of_generators():
    delta = coaction(3, "1")
    A = delta.A
    g = A.mono(0, 1)
    assert chi(delta, translation(A, (0, 1))) == TensorElement.pure(A.one(), delta.T.mono(0, 1))
    assert translation(A, (0, 0)) == TensorElement.pure(A.one(), A.one())
    assert chi(delta, TensorElement.pure(A.mono(0, -1), g)) == TensorElement.pure(A.one(), delta.T.mono(0, 1))


words = st.text(alphabet="xy", max_size=9)


@settings(max_examples=60, deadline=None)
@given(words, st.sampled_from([2, 3, 4]), st.sampled_from(["0", "1", "i"]))
def test_normal_order_matches_rewriting(word, N, s):
    A = galois_algebra(N, s)
    x, y = A.gens()
    prod = A.one()
    for ch in word:
        prod = prod * (x if ch == "x" else y)
    assert prod == rewrite_word(A, word)


def test_decimal_s_stays_exact():
    rep = taft_report(2, "0.3+0.1i", with_rank=False)
    assert rep["backend"] == "exact"
    assert rep["comodule"].passed


def test_report_with_approx_field():
    rep = taft_report(3, "0.7071067811865476+0.2i", field=APPROX)
    assert rep["backend"] == "approx"
    assert rep["hopf"].passed and rep["comodule"].passed
    assert rep["coinvariant_dimension"] == 1
    assert rep["canonical_rank"] == 81
