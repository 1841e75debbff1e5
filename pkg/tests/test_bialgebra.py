import json

import pytest
from hypothesis import given, settings, strategies as st

from nctorus.bialgebra import (
    BasisLabel,
    ManinTripleWitness,
    StructureConstants,
    VerificationReport,
    check_all_axioms,
    check_antisymmetry,
    check_cocycle,
    check_cojacobi,
    check_jacobi,
    check_mixed_brackets,
    compare_constants,
    extract_constants,
    verify_manin,
)
from nctorus.fixtures_sl import sl2_fixture, sl3_clockshift_fixture, sl3_gellmann_fixture
from nctorus.matrix import SquareMatrix
from nctorus.rational_torus import manin_witness, sine_constants
from nctorus.scalar import APPROX, cyclo_field

SU2 = [(1, 2, 0, 1), (2, 0, 1, 1), (0, 1, 2, 1)]
SB2 = [(1, 2, 1, 2), (0, 2, 0, 2)]


def labels(n):
    return [BasisLabel("X", (str(k),)) for k in range(1, n + 1)]


def table(gamma=(), delta=(), n=3, **kw):
    return StructureConstants.from_entries(labels(n), cyclo_field(4), gamma=gamma, delta=delta, **kw)


def test_jacobi_examples():
    assert check_jacobi(table(SU2)).passed
    assert check_jacobi(table()).passed
    broken = table(SU2)
    broken.gamma[(1, 2)][0] = -broken.gamma[(1, 2)][0]
    assert not check_antisymmetry(broken).passed
    assert not check_jacobi(broken).passed


def test_cojacobi_examples():
    assert check_cojacobi(table(delta=SB2)).passed
    assert check_cojacobi(table()).passed
    assert check_cojacobi(sl3_gellmann_fixture().expected).passed


def test_cocycle_examples():
    assert check_cocycle(table(SU2, SB2)).passed
    assert check_cocycle(table(SU2)).passed
    # so(3)-shaped cobracket on su(2) is equivariant, hence not a cocycle
    mismatched = table(SU2, SU2)
    r = check_cocycle(mismatched)
    assert not r.passed and r.worst_residual > 0


def test_mixed_brackets_examples():
    sl2 = sl2_fixture()
    assert check_mixed_brackets(sl2.witness, extract_constants(sl2.witness)).passed
    w = sl2.witness
    diag = ManinTripleWitness(2, w.field, [w.labels[2]], [w.a_basis[2]], [w.b_basis[2]])
    sc = extract_constants(diag)
    assert not list(sc.nonzero_gamma()) and not list(sc.nonzero_delta())
    assert check_mixed_brackets(diag, sc).passed
    sl3 = sl3_gellmann_fixture()
    assert check_mixed_brackets(sl3.witness, extract_constants(sl3.witness)).passed


def test_verify_manin_examples():
    assert verify_manin(sl2_fixture().witness).passed
    F = cyclo_field(4)
    zero = SquareMatrix.zeros(2, F)
    degenerate = ManinTripleWitness(2, F, labels(1), [zero], [zero])
    r = verify_manin(degenerate)
    assert not r.passed
    assert not r.details["checks"]["duality"].passed


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_gl_n_manin(N):
    assert verify_manin(manin_witness(N)).passed


def test_extract_examples():
    sl2 = sl2_fixture()
    assert compare_constants(extract_constants(sl2.witness), sl2.expected).passed
    F = cyclo_field(4)
    w = sl2.witness
    abelian = ManinTripleWitness(2, F, [w.labels[2]], [w.a_basis[2]], [w.b_basis[2]])
    sc = extract_constants(abelian)
    assert sc.gamma == {} and sc.delta == {}
    assert compare_constants(extract_constants(manin_witness(3)), sine_constants(3)).passed


def test_extract_requires_duality():
    F = cyclo_field(4)
    zero = SquareMatrix.zeros(2, F)
    with pytest.raises(ValueError):
        extract_constants(ManinTripleWitness(2, F, labels(1), [zero], [zero]))


def test_clockshift_axioms():
    fx = sl3_clockshift_fixture()
    reports = check_all_axioms(fx.witness, extract_constants(fx.witness))
    assert all(r.passed for r in reports.values())


def test_report_json_roundtrip():
    r = VerificationReport.from_residuals("x", 0.5, 1.0, failures=[("a", 1)], details={"k": (1, 2)})
    assert r.passed and bool(r)
    data = json.loads(json.dumps(r.to_json()))
    assert data["check"] == "x" and data["failures"] == [["a", "1"]]
    assert "PASS" in r.line()
    assert not VerificationReport.from_residuals("y", 2.0, 1.0)


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(3)), st.integers(-3, 3).filter(bool))
def test_sl2_axioms_invariant_under_relabel_and_scale(perm, k):
    # scaling X_a by k and X^a by 1/k keeps the triple and the axioms
    w = sl2_fixture().witness.relabel(perm)
    F = w.field
    c = F.rational(k)
    scaled = ManinTripleWitness(2, F, w.labels, [m.scale(c) for m in w.a_basis], [m.scale(1 / c) for m in w.b_basis], ambient_real_dim=6)
    assert verify_manin(scaled).passed
    sc = extract_constants(scaled)
    assert all(r.passed for r in check_all_axioms(scaled, sc).values())


@settings(max_examples=10, deadline=None)
@given(st.integers(2, 6))
def test_approx_extraction_agrees_with_exact(N):
    exact = sine_constants(N, APPROX)
    approx = extract_constants(manin_witness(N, APPROX))
    assert compare_constants(approx, exact, 1e-10).passed
