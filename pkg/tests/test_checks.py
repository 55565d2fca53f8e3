import numpy as np
import pytest

from src.errors import IllConditioned
from src.matrices.checks import (central_elements, check_identities, check_structure,
                                 properness_witnesses)
from src.matrices.transversal import HermitianPD, Tolerances, compose, frobenius, loop_op
from src.metrics import IdentityReport, StructureReport

ACCEPTANCE = [("real", 2), ("real", 3), ("complex", 2), ("complex", 3)]


@pytest.mark.parametrize("field, n", ACCEPTANCE)
def test_identity_suite(field, n):
    report = check_identities(field=field, n=n, samples=1000, seed=42)
    assert report.passed, report.to_dict()
    assert report.samples == 1000
    assert report.max_condition_number <= 1e6


@pytest.mark.parametrize("field, n", ACCEPTANCE)
def test_structure_suite(field, n):
    report = check_structure(field=field, n=n, samples=1000, seed=42)
    assert report.passed, report.to_dict()
    assert report.kernel_fixed and report.kernel_moves


def test_identity_suite_at_wider_spread():
    report = check_identities(samples=200, seed=42, spread=2.0)
    assert report.passed, report.to_dict()
    wide = check_identities(samples=200, seed=42, spread=4.0)
    assert wide.samples == 200
    assert wide.max_condition_number <= 1e6


def test_condition_limit_fails_report():
    report = IdentityReport(field="real", n=2, samples=1, max_condition_number=2e6)
    assert not report.passed
    report.condition_limit = 1e7
    assert report.passed
    merged = IdentityReport.union_reports([report], seed=1)
    assert merged.condition_limit == 1e7


def test_reports_are_deterministic():
    first = check_identities(samples=60, seed=3, chunk_size=25)
    second = check_identities(samples=60, seed=3, chunk_size=25)
    assert first.to_json() == second.to_json()
    assert check_structure(samples=30, seed=3, chunk_size=10).to_json() == \
        check_structure(samples=30, seed=3, chunk_size=10).to_json()


def test_reports_do_not_depend_on_workers():
    serial = check_identities(field="complex", n=3, samples=40, seed=9, chunk_size=10)
    parallel = check_identities(field="complex", n=3, samples=40, seed=9, chunk_size=10,
                                num_workers=2)
    assert serial.to_json() == parallel.to_json()


def test_report_layout():
    report = check_identities(samples=5, seed=1)
    assert list(report.to_dict()) == ["field", "n", "samples", "seed", "residual_bol",
                                      "residual_aip", "residual_left_inverse", "residual_identity",
                                      "residual_sqrt", "max_condition_number", "pass"]
    assert report.to_dict()["seed"] == 1


def test_diagonal_elements_associate():
    a, b, c = (HermitianPD.of(np.diag(d)) for d in ([2.0, 0.5], [4.0, 0.25], [0.1, 10.0]))
    left = compose(compose(a, b), c)
    right = compose(a, compose(b, c))
    assert frobenius(left.matrix - right.matrix) < 1e-12
    assert frobenius(loop_op(a, b)[1].matrix - np.eye(2)) < 1e-12


def test_properness_witnesses():
    witnesses = properness_witnesses()
    assert witnesses["associativity_defect"] > 1e-2
    assert witnesses["inner_defect"] > 1e-2


@pytest.mark.parametrize("field, n, count", [("real", 2, 2), ("real", 3, 1), ("complex", 2, 2),
                                             ("complex", 3, 3)])
def test_central_elements(field, n, count):
    centre = central_elements(field, n)
    assert len(centre) == count
    for zeta in centre:
        assert abs(np.linalg.det(zeta.matrix) - 1) < 1e-12


def test_resample_budget_is_exhausted():
    with pytest.raises(IllConditioned):
        check_identities(samples=1, tolerances=Tolerances(sample_condition=1.0), resample_budget=2)


def test_argument_checks():
    with pytest.raises(ValueError):
        check_identities(samples=0)
    with pytest.raises(ValueError):
        check_identities(chunk_size=0)
    with pytest.raises(ValueError):
        check_structure(field="quaternion")
    with pytest.raises(ValueError):
        check_structure(n=9)


def test_report_merge():
    report = IdentityReport(field="real", n=2)
    report.update(IdentityReport(field="real", n=2, samples=3, residual_bol=1e-12))
    report.update(IdentityReport(field="real", n=2, samples=2, residual_aip=1e-6))
    assert report.samples == 5
    assert report.residual_bol == 1e-12
    assert not report.passed

    merged = StructureReport.union_reports([
        StructureReport(field="real", n=2, samples=1),
        StructureReport(field="real", n=2, samples=1, kernel_moves=False),
    ], seed=5)
    assert merged.seed == 5 and merged.samples == 2
    assert not merged.kernel_moves and not merged.passed
