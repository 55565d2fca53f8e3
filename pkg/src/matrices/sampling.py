import math
from typing import Union

import numpy as np

from src.matrices.transversal import (DEFAULT_TOLERANCES, HermitianPD, OmegaElement, Tolerances,
                                      check_dimension, check_field)

SeedLike = Union[int, np.random.Generator]

# log-eigenvalues in [-spread, spread] keep the condition number below 10^6
MAX_SPREAD = math.log(1e6) / 2


def _gaussian(field: str, n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n))
    if field == "complex":
        z = (z + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    return z


def haar_matrix(field: str, n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed element of SO(n) or SU(n): QR of a Gaussian matrix with the phases of R removed."""
    q, r = np.linalg.qr(_gaussian(field, n, rng))
    diag = np.diagonal(r)
    q = q * (diag / np.abs(diag))
    det = np.linalg.det(q)
    if field == "real":
        if det < 0:
            q[:, 0] = -q[:, 0]
    else:
        q = q / det ** (1.0 / n)
    return q


def sample_lg(field: str, n: int, spread: float = 1.0, seed: SeedLike = 0,
              tolerances: Tolerances = DEFAULT_TOLERANCES) -> HermitianPD:
    """Random A = Q diag(exp(t)) Q* with sum(t) = 0 and t drawn uniformly in [-spread, spread]."""
    check_field(field)
    check_dimension(n)
    if not 0 <= spread <= MAX_SPREAD:
        raise ValueError(f"spread must lie in [0, {MAX_SPREAD:.3f}], got {spread}")
    if spread == 0:
        return HermitianPD.identity(field, n)
    rng = np.random.default_rng(seed)
    q = haar_matrix(field, n, rng)
    t = rng.uniform(-spread, spread, size=n)
    t = t - t.mean()
    a = (q * np.exp(t)) @ q.conj().T
    return HermitianPD.of((a + a.conj().T) / 2, tolerances)


def sample_omega(field: str, n: int, seed: SeedLike = 0,
                 tolerances: Tolerances = DEFAULT_TOLERANCES) -> OmegaElement:
    check_field(field)
    check_dimension(n)
    return OmegaElement.of(haar_matrix(field, n, np.random.default_rng(seed)), tolerances)


def sample_sl(field: str, n: int, spread: float = 1.0, seed: SeedLike = 0,
              tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """g = A w in SL(n, F) from independent transversal and Omega samples."""
    rng = np.random.default_rng(seed)
    a = sample_lg(field, n, spread, rng, tolerances)
    omega = sample_omega(field, n, rng, tolerances)
    return a.matrix @ omega.matrix
