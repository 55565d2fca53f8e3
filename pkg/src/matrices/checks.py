import functools
import logging
from multiprocessing import Pool
from typing import Dict, List, Tuple

import numpy as np
from tqdm import tqdm

from src.errors import IllConditioned
from src.matrices.sampling import sample_lg, sample_omega, sample_sl
from src.matrices.transversal import (DEFAULT_TOLERANCES, HermitianPD, OmegaElement, Tolerances,
                                      check_dimension, check_field, compose, delta_residual,
                                      frobenius, hermitian_sqrt, inner_delta, omega_action,
                                      phi_residuals, relative_residual, transversal_residual)
from src.metrics import IdentityReport, StructureReport

logger = logging.getLogger(__name__)

RESAMPLE_BUDGET = 3


def _rotation(angle: float) -> np.ndarray:
    return np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])


# (A, B) with d_{A,B} far from I, and a third C making the product visibly non-associative
INNER_WITNESS = (np.diag([2.0, 0.5]), np.array([[1.25, 0.75], [0.75, 1.25]]))
ASSOCIATIVITY_WITNESS = INNER_WITNESS + (
    _rotation(np.pi / 3) @ np.diag([3.0, 1.0 / 3.0]) @ _rotation(np.pi / 3).T,)


def _chunks(samples: int, chunk_size: int) -> List[Tuple[int, int]]:
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    if chunk_size < 1:
        raise ValueError(f"chunk size must be positive, got {chunk_size}")
    return [(index, min(chunk_size, samples - start))
            for index, start in enumerate(range(0, samples, chunk_size))]


def _draw(field: str, n: int, spread: float, rng: np.random.Generator,
          tolerances: Tolerances, resample_budget: int) -> Tuple[HermitianPD, float]:
    for _ in range(resample_budget + 1):
        a = sample_lg(field, n, spread, rng, tolerances)
        condition = a.condition()
        if condition <= tolerances.sample_condition:
            return a, condition
        logger.debug("resampling an element with condition number %.3e", condition)
    raise IllConditioned(condition, tolerances.sample_condition)


def _run_chunks(worker, chunks: List[Tuple[int, int]], num_workers: int, desc: str) -> list:
    if num_workers > 1 and len(chunks) > 1:
        with Pool(min(num_workers, len(chunks))) as pool:
            return list(tqdm(pool.imap(worker, chunks), total=len(chunks), desc=desc))
    return [worker(chunk) for chunk in tqdm(chunks, total=len(chunks), desc=desc)]


# ========== LOOP IDENTITIES ==========
def _identity_chunk(chunk: Tuple[int, int], field: str, n: int, spread: float, seed: int,
                    tolerances: Tolerances, resample_budget: int) -> IdentityReport:
    index, count = chunk
    rng = np.random.default_rng([seed, index])
    report = IdentityReport(field=field, n=n, tolerance=tolerances.identity,
                            condition_limit=tolerances.sample_condition)
    identity = HermitianPD.identity(field, n)
    for _ in range(count):
        (a, cond_a), (b, cond_b), (c, cond_c) = (
            _draw(field, n, spread, rng, tolerances, resample_budget) for _ in range(3))
        lhs = compose(a, compose(b, compose(a, c, tolerances), tolerances), tolerances)
        rhs = compose(compose(a, compose(b, a, tolerances), tolerances), c, tolerances)
        aip = relative_residual(compose(a, b, tolerances).inverse().matrix,
                                compose(a.inverse(), b.inverse(), tolerances).matrix)
        left_inverse = relative_residual(
            compose(a.inverse(), compose(a, b, tolerances), tolerances).matrix, b.matrix)
        neutral = max(relative_residual(compose(identity, a, tolerances).matrix, a.matrix),
                      relative_residual(compose(a, identity, tolerances).matrix, a.matrix))
        root = HermitianPD.of(hermitian_sqrt(a.matrix), tolerances)
        sqrt = max(relative_residual(compose(root, root, tolerances).matrix, a.matrix),
                   abs(np.linalg.det(root.matrix) - 1))
        report.update(IdentityReport(field=field, n=n, samples=1,
                                     residual_bol=relative_residual(lhs.matrix, rhs.matrix),
                                     residual_aip=aip,
                                     residual_left_inverse=left_inverse,
                                     residual_identity=neutral,
                                     residual_sqrt=float(sqrt),
                                     max_condition_number=max(cond_a, cond_b, cond_c)))
    return report


def check_identities(field: str = "real", n: int = 2, samples: int = 1000, seed: int = 42,
                     spread: float = 1.0, chunk_size: int = 100, num_workers: int = 1,
                     resample_budget: int = RESAMPLE_BUDGET,
                     tolerances: Tolerances = DEFAULT_TOLERANCES) -> IdentityReport:
    """Sampled residuals of the left Bol, AIP, left inverse, identity and square root laws.

    Samples are drawn in chunks of ``chunk_size`` seeded by (seed, chunk index), so
    the report does not depend on ``num_workers``.

    Raises:
        IllConditioned: a sample stays above ``sample_condition`` after ``resample_budget`` redraws
    """
    check_field(field)
    check_dimension(n)
    worker = functools.partial(_identity_chunk, field=field, n=n, spread=spread, seed=seed,
                               tolerances=tolerances, resample_budget=resample_budget)
    reports = _run_chunks(worker, _chunks(samples, chunk_size), num_workers, "identities")
    report = IdentityReport.union_reports(reports, seed=seed)
    logger.info("identity check %s n=%d: pass=%s", field, n, report.passed)
    return report


# ========== TRANSVERSAL STRUCTURE ==========
def central_elements(field: str, n: int) -> List[OmegaElement]:
    """The scalar matrices zeta I in Omega, i.e. zeta^n = 1 (and zeta real for the real field)."""
    if field == "real":
        scalars = [1.0, -1.0] if n % 2 == 0 else [1.0]
        return [OmegaElement.of(s * np.eye(n)) for s in scalars]
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    return [OmegaElement.of(zeta * np.eye(n, dtype=complex)) for zeta in roots]


def _structure_chunk(chunk: Tuple[int, int], field: str, n: int, spread: float, seed: int,
                     tolerances: Tolerances, resample_budget: int) -> StructureReport:
    index, count = chunk
    rng = np.random.default_rng([seed, index])
    report = StructureReport(field=field, n=n, tolerance=tolerances.identity)
    centre = central_elements(field, n)
    sampled: List[HermitianPD] = []
    for _ in range(count):
        g = sample_sl(field, n, spread, rng, tolerances)
        h = sample_sl(field, n, spread, rng, tolerances)
        phi_loop, phi_action = phi_residuals(g, h, tolerances)
        a, b, c = (_draw(field, n, spread, rng, tolerances, resample_budget)[0] for _ in range(3))
        sampled.append(a)
        fixed = all(
            relative_residual(omega_action(zeta, a, tolerances).matrix, a.matrix) <= tolerances.identity
            for zeta in centre)
        report.update(StructureReport(field=field, n=n, samples=1,
                                      residual_phi_loop=phi_loop,
                                      residual_phi_action=phi_action,
                                      residual_delta=delta_residual(a, b, c, tolerances),
                                      residual_transversal=transversal_residual(a, b, tolerances),
                                      kernel_fixed=fixed))
    omega = sample_omega(field, n, rng, tolerances)
    report.kernel_moves = any(
        frobenius(omega_action(omega, a, tolerances).matrix - a.matrix) > tolerances.witness_gap
        for a in sampled)
    return report


def check_structure(field: str = "real", n: int = 2, samples: int = 1000, seed: int = 42,
                    spread: float = 1.0, chunk_size: int = 100, num_workers: int = 1,
                    resample_budget: int = RESAMPLE_BUDGET,
                    tolerances: Tolerances = DEFAULT_TOLERANCES) -> StructureReport:
    """Sampled evidence that g = A w -> (A, w^) is a homomorphism onto the quasidirect product.

    Covers the Phi homomorphism residuals, the realisation of the inner mappings
    by conjugation with d_{A,B}, uniqueness of the splitting, and the kernel: the
    central scalars fix every sampled A while a random w moves some A.
    """
    check_field(field)
    check_dimension(n)
    worker = functools.partial(_structure_chunk, field=field, n=n, spread=spread, seed=seed,
                               tolerances=tolerances, resample_budget=resample_budget)
    reports = _run_chunks(worker, _chunks(samples, chunk_size), num_workers, "structure")
    report = StructureReport.union_reports(reports, seed=seed)
    logger.info("structure check %s n=%d: pass=%s", field, n, report.passed)
    return report


# ========== PROPERNESS WITNESSES ==========
def properness_witnesses(tolerances: Tolerances = DEFAULT_TOLERANCES) -> Dict[str, float]:
    """Associativity defect of the stored triple and ||d - I|| of the stored pair (n = 2, real)."""
    a, b, c = (HermitianPD.of(m, tolerances) for m in ASSOCIATIVITY_WITNESS)
    left = compose(compose(a, b, tolerances), c, tolerances)
    right = compose(a, compose(b, c, tolerances), tolerances)
    d = inner_delta(*(HermitianPD.of(m, tolerances) for m in INNER_WITNESS), tolerances)
    return {
        "associativity_defect": frobenius(left.matrix - right.matrix),
        "inner_defect": frobenius(d.matrix - np.eye(2)),
    }
