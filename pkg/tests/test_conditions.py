import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biortho import (
    FAIL,
    PASS,
    STRUCTURAL_NOTES,
    VACUOUS,
    FamilySpec,
    Tolerance,
    check_conditions,
    generate,
    point_spectrum,
    residual_identity_check,
    sigma_set,
)

from conftest import random_complex


@pytest.fixture(scope="module")
def skew_report():
    return check_conditions(np.array([[0.0, 1.0], [-1.0, 0.0]]))


@pytest.fixture(scope="module")
def triangular_report():
    return check_conditions(np.array([[1.0, 1.0], [0.0, 2.0]]))


@pytest.fixture(scope="module")
def nilpotent_report():
    return check_conditions(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_normal_matrix_all_conditions_pass(skew_report):
    r = skew_report
    assert r.sigma_set == ()
    for cid in ("C1", "C3", "C4", "C3'", "C4'"):
        assert r.condition(cid).status == PASS
    # nothing distinguishes left from right kernels, so there is nothing
    # for the skew checks to decide
    assert r.condition("C2").status == VACUOUS
    assert r.condition("C2'").status == VACUOUS
    assert r.diagonalizable
    assert r.biorthonormal_basis_exists
    assert r.kappa_v == pytest.approx(1.0, abs=1e-10)


def test_normal_matrix_normality_report(skew_report):
    nr = skew_report.normality
    assert nr.is_normal
    assert nr.commutator_norm == 0.0
    assert set(nr.properties) == {"a", "b", "c", "d", "e"}
    assert all(v == PASS for v in nr.properties.values())


def test_triangular_sigma_set_is_both_clusters(triangular_report):
    assert triangular_report.sigma_set == (0, 1)


def test_triangular_skew_passes_despite_oblique_kernels(triangular_report):
    c2 = triangular_report.condition("C2")
    assert c2.status == PASS
    assert c2.witnesses == (0, 1)
    for cid in ("C1", "C3", "C4", "C3'", "C4'"):
        assert triangular_report.condition(cid).status == PASS
    assert triangular_report.biorthonormal_basis_exists
    # [e1 | (1,1)/sqrt(2)] has condition number 1 + sqrt(2)
    assert triangular_report.kappa_v == pytest.approx(1.0 + np.sqrt(2.0), rel=1e-10)


def test_triangular_normality_report(triangular_report):
    nr = triangular_report.normality
    assert not nr.is_normal
    # [A, A*] = [[1,1],[1,-1]] elementwise for this matrix
    assert nr.commutator_norm == pytest.approx(2.0, rel=1e-12)
    assert nr.properties["a"] == FAIL
    assert nr.properties["b"] == PASS
    assert nr.properties["c"] == PASS
    assert nr.properties["d"] == PASS
    assert nr.properties["e"] == FAIL


def test_nilpotent_block_diagnosis(nilpotent_report):
    r = nilpotent_report
    assert r.sigma_set == (0,)
    assert r.condition("C1").status == PASS
    c2 = r.condition("C2")
    assert c2.status == FAIL
    assert c2.witnesses == (0,)
    assert r.condition("C3").status == PASS
    assert r.condition("C4").status == FAIL
    assert r.condition("C4").witnesses == (0,)
    # the root subspace is everything on both sides
    assert r.condition("C3'").status == PASS
    assert r.condition("C4'").status == PASS
    assert r.condition("C2'").status == VACUOUS
    assert not r.diagonalizable
    assert not r.biorthonormal_basis_exists
    assert r.kappa_v == float("inf")
    nr = r.normality
    assert not nr.is_normal
    assert nr.properties["a"] == PASS
    assert nr.properties["b"] == FAIL
    assert nr.properties["d"] == FAIL
    assert nr.properties["e"] == FAIL


def test_exceptional_point_fails_skew_linkage():
    r = check_conditions(generate(FamilySpec("ep_family", 2, {"t": 0.0})))
    assert r.condition("C2").status == FAIL
    assert not r.biorthonormal_basis_exists
    assert not r.diagonalizable
    assert r.kappa_v == float("inf")


def test_near_exceptional_point_passes_with_large_kappa():
    r = check_conditions(generate(FamilySpec("ep_family", 2, {"t": 0.01})))
    assert r.biorthonormal_basis_exists
    assert r.condition("C2").status in (PASS, VACUOUS)
    assert r.kappa_v > 10.0


def test_existence_iff_diagonalizable_with_finite_kappa():
    mats = [random_complex(2 + s % 5, None, s) for s in range(25)]
    mats.append(generate(FamilySpec("jordan", 3, {"eigenvalue": 1.0, "segre": (2, 1)})))
    mats.append(generate(FamilySpec("ep_family", 2, {"t": 0.0})))
    mats.append(generate(FamilySpec("shift_trunc", 5, {})))
    mats.append(generate(FamilySpec("random_normal", 6, {}, seed=7)))
    for a in mats:
        r = check_conditions(a)
        assert r.biorthonormal_basis_exists == (
            r.diagonalizable and np.isfinite(r.kappa_v)
        )


@given(st.integers(0, 120))
@settings(max_examples=25, deadline=None)
def test_random_matrices_pass_everything(seed):
    r = check_conditions(random_complex(2 + seed % 6, None, seed))
    for cid in ("C1", "C3", "C4", "C3'", "C4'"):
        assert r.condition(cid).status == PASS
    assert r.condition("C2").status in (PASS, VACUOUS)
    assert r.condition("C2'").status in (PASS, VACUOUS)
    assert r.biorthonormal_basis_exists
    assert r.residual_identity_angle <= 1e-7


def test_normality_is_scale_invariant():
    base = np.array([[0.0, 1.0], [-1.0, 0.0]])
    for s in (1e-6, 1.0, 1e6):
        assert check_conditions(s * base).normality.is_normal
    skewed = np.array([[1.0, 1.0], [0.0, 2.0]])
    for s in (1e-3, 1.0, 1e6):
        assert not check_conditions(s * skewed).normality.is_normal


def test_sigma_set_direct():
    assert sigma_set(point_spectrum(np.diag([1.0, 2.0, 3.0]))) == ()
    assert sigma_set(point_spectrum([[1, 1], [0, 2]])) == (0, 1)


def test_residual_identity_small_for_collapsed_cluster():
    # both eigenvalues merge and the whole shifted matrix collapses, so
    # the empty range's complement must equal the full left kernel
    assert residual_identity_check(np.diag([0.0, 1e-12])) <= 1e-10


def test_residual_identity_small_for_random(rng):
    a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    assert residual_identity_check(a) <= 1e-8


def test_condition_lookup_raises_on_unknown_id(skew_report):
    with pytest.raises(KeyError):
        skew_report.condition("C9")


def test_structural_notes_are_fixed():
    assert len(STRUCTURAL_NOTES) == 2
    assert all("finite dimensions" in note for note in STRUCTURAL_NOTES)


def test_check_conditions_rejects_non_square():
    with pytest.raises(ValueError):
        check_conditions(np.ones((2, 3)))


def test_verdict_details_name_witnesses(nilpotent_report):
    c2 = nilpotent_report.condition("C2")
    assert "0" in c2.detail
    c4 = nilpotent_report.condition("C4")
    assert "1/2" in c4.detail
