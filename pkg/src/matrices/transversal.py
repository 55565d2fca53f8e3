"""Positive definite determinant-one matrices as a transversal of SL(n) over SO(n) / SU(n).

Every g in SL(n, F) splits uniquely as g = A w with A Hermitian positive
definite and w in Omega. The product of two transversal elements splits the
same way, AB = (A o B) d_{A,B}, which defines the loop operation o.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from omegaconf import DictConfig

from src.errors import IllConditioned, NotInTransversal, NotUnimodular, NumericalFailure

FIELDS = ("real", "complex")
MIN_DIMENSION = 2
MAX_DIMENSION = 8


@dataclass(frozen=True)
class Tolerances:
    structural: float = 1e-10
    identity: float = 1e-8
    definite: float = 1e-8
    determinant: float = 1e-8
    reconstruction: float = 1e-9
    max_condition: float = 1e8
    sample_condition: float = 1e6
    witness_gap: float = 1e-2

    @staticmethod
    def from_config(config: DictConfig) -> "Tolerances":
        return Tolerances(**{key: float(value) for key, value in config.items()})


DEFAULT_TOLERANCES = Tolerances()


def check_field(field: str):
    if field not in FIELDS:
        raise ValueError(f"field must be one of {FIELDS}, got {field!r}")


def check_dimension(n: int):
    if not MIN_DIMENSION <= n <= MAX_DIMENSION:
        raise ValueError(f"dimension must lie in {MIN_DIMENSION}..{MAX_DIMENSION}, got {n}")


def adjoint(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def frobenius(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, "fro"))


def relative_residual(actual: np.ndarray, expected: np.ndarray) -> float:
    return frobenius(actual - expected) / max(frobenius(expected), 1.0)


def _field_of(m: np.ndarray) -> str:
    return "complex" if np.iscomplexobj(m) else "real"


@dataclass(frozen=True, eq=False)
class HermitianPD:
    """A point of the transversal: Hermitian, positive definite, determinant 1."""
    matrix: np.ndarray

    @staticmethod
    def of(matrix: np.ndarray, tolerances: Tolerances = DEFAULT_TOLERANCES) -> "HermitianPD":
        m = np.asarray(matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NotInTransversal(f"expected a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise NotInTransversal("matrix has non-finite entries")
        scale = max(frobenius(m), 1.0)
        if frobenius(m - adjoint(m)) > tolerances.structural * scale:
            raise NotInTransversal("matrix is not Hermitian")
        m = (m + adjoint(m)) / 2
        smallest = float(np.linalg.eigvalsh(m)[0])
        if smallest <= tolerances.definite:
            raise NotInTransversal(f"smallest eigenvalue {smallest:.3e} is not positive")
        det = np.linalg.det(m)
        if abs(det - 1) > tolerances.determinant:
            raise NotInTransversal(f"determinant {det} is not 1")
        m.setflags(write=False)
        return HermitianPD(m)

    @staticmethod
    def identity(field: str, n: int) -> "HermitianPD":
        check_field(field)
        m = np.eye(n, dtype=complex if field == "complex" else float)
        m.setflags(write=False)
        return HermitianPD(m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def field(self) -> str:
        return _field_of(self.matrix)

    def inverse(self) -> "HermitianPD":
        """The loop inverse, which is the matrix inverse."""
        inv = np.linalg.inv(self.matrix)
        inv = (inv + adjoint(inv)) / 2
        inv.setflags(write=False)
        return HermitianPD(inv)

    def condition(self) -> float:
        return float(np.linalg.cond(self.matrix))


@dataclass(frozen=True, eq=False)
class OmegaElement:
    """An element of SO(n) or SU(n)."""
    matrix: np.ndarray

    @staticmethod
    def of(matrix: np.ndarray, tolerances: Tolerances = DEFAULT_TOLERANCES) -> "OmegaElement":
        m = np.asarray(matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NotInTransversal(f"expected a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise NotInTransversal("matrix has non-finite entries")
        identity = np.eye(m.shape[0])
        if frobenius(adjoint(m) @ m - identity) > tolerances.structural * frobenius(identity):
            raise NotInTransversal("matrix is not orthogonal / unitary")
        det = np.linalg.det(m)
        if abs(det - 1) > tolerances.determinant:
            raise NotInTransversal(f"determinant {det} is not 1")
        m = np.array(m)
        m.setflags(write=False)
        return OmegaElement(m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def inverse(self) -> "OmegaElement":
        return OmegaElement(adjoint(self.matrix))


def hermitian_sqrt(h: np.ndarray) -> np.ndarray:
    """Positive square root of a Hermitian positive definite matrix through its eigendecomposition."""
    h = (h + adjoint(h)) / 2
    w, v = np.linalg.eigh(h)
    if w[0] <= 0:
        raise NumericalFailure(f"matrix handed to the square root has eigenvalue {w[0]:.3e}")
    root = (v * np.sqrt(w)) @ adjoint(v)
    return (root + adjoint(root)) / 2


def _unit_determinant(m: np.ndarray) -> np.ndarray:
    # rescale a Hermitian positive definite matrix back onto det = 1
    _, logdet = np.linalg.slogdet(m)
    return m / np.exp(logdet / m.shape[0])


def _unit_phase(w: np.ndarray) -> np.ndarray:
    # a unitary with det = e^{it} near 1, turned into det = 1
    sign, _ = np.linalg.slogdet(w)
    return w / sign ** (1.0 / w.shape[0])


def _split(g: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """g = U S V* gives g = (U S U*)(U V*) without forming g g*."""
    u, s, vh = np.linalg.svd(g)
    positive = (u * s) @ adjoint(u)
    return (positive + adjoint(positive)) / 2, u @ vh


def _check_pair(a: HermitianPD, b: HermitianPD):
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} and {b.n}")


def polar_part(g: np.ndarray,
               tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[HermitianPD, OmegaElement]:
    """Split g in SL(n) as g = A w with A = (g g*)^(1/2).

    Both parts are put back on determinant 1, so A w is g / det(g)^(1/n).

    Raises:
        NotUnimodular: |det g - 1| is above tolerance
        IllConditioned: the condition number of g is above ``max_condition``
    """
    g = np.asarray(g)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {g.shape}")
    det = np.linalg.det(g)
    if abs(det - 1) > tolerances.determinant:
        raise NotUnimodular(det)
    condition = float(np.linalg.cond(g))
    if condition > tolerances.max_condition:
        raise IllConditioned(condition, tolerances.max_condition)
    a, omega = _split(g)
    if frobenius(a @ omega - g) > tolerances.reconstruction * frobenius(g):
        raise NumericalFailure("polar decomposition does not reconstruct its input")
    return HermitianPD.of(_unit_determinant(a), tolerances), OmegaElement.of(_unit_phase(omega), tolerances)


def loop_op(a: HermitianPD, b: HermitianPD,
            tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[HermitianPD, OmegaElement]:
    """A o B = (A B^2 A)^(1/2) and d_{A,B} = (A o B)^-1 A B, both read off the SVD of AB."""
    _check_pair(a, b)
    ab = a.matrix @ b.matrix
    c, d = _split(ab)
    if frobenius(c @ d - ab) > tolerances.reconstruction * frobenius(ab):
        raise NumericalFailure("loop product does not reconstruct AB")
    return HermitianPD.of(_unit_determinant(c), tolerances), OmegaElement.of(_unit_phase(d), tolerances)


def compose(a: HermitianPD, b: HermitianPD,
            tolerances: Tolerances = DEFAULT_TOLERANCES) -> HermitianPD:
    return loop_op(a, b, tolerances)[0]


def left_divide(x: HermitianPD, y: HermitianPD,
                tolerances: Tolerances = DEFAULT_TOLERANCES) -> HermitianPD:
    """The unique Z with X o Z = Y, namely (X^-1 Y^2 X^-1)^(1/2), the positive part of X^-1 Y."""
    _check_pair(x, y)
    z, _ = _split(np.linalg.solve(x.matrix, y.matrix))
    return HermitianPD.of(_unit_determinant(z), tolerances)


def omega_action(omega: OmegaElement, a: HermitianPD,
                 tolerances: Tolerances = DEFAULT_TOLERANCES) -> HermitianPD:
    """w^(A) = w A w*."""
    if omega.n != a.n:
        raise ValueError(f"dimension mismatch: {omega.n} and {a.n}")
    m = omega.matrix @ a.matrix @ adjoint(omega.matrix)
    return HermitianPD.of(_unit_determinant((m + adjoint(m)) / 2), tolerances)


def inner_delta(a: HermitianPD, b: HermitianPD,
                tolerances: Tolerances = DEFAULT_TOLERANCES) -> OmegaElement:
    """d_{A,B}; conjugation by it is the inner mapping delta_{A,B} of the loop."""
    return loop_op(a, b, tolerances)[1]


def phi_map(g: np.ndarray,
            tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[HermitianPD, OmegaElement]:
    """g = A w -> (A, w^); the action is carried by w itself."""
    return polar_part(g, tolerances)


# ========== RESIDUALS ==========
def delta_residual(a: HermitianPD, b: HermitianPD, c: HermitianPD,
                   tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Distance between lambda_{AoB}^-1 lambda_A lambda_B (C) and d C d*."""
    ab, d = loop_op(a, b, tolerances)
    moved = left_divide(ab, compose(a, compose(b, c, tolerances), tolerances), tolerances)
    return relative_residual(moved.matrix, omega_action(d, c, tolerances).matrix)


def phi_residuals(g: np.ndarray, h: np.ndarray,
                  tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[float, float]:
    """Compare Phi(gh) with (A o w^(B), d_{A, w^(B)} w w') for g = A w, h = B w'.

    Returns the residuals of the transversal and of the Omega component.
    """
    a, omega = phi_map(g, tolerances)
    b, omega_h = phi_map(h, tolerances)
    product, product_omega = phi_map(g @ h, tolerances)
    c, d = loop_op(a, omega_action(omega, b, tolerances), tolerances)
    expected_omega = d.matrix @ omega.matrix @ omega_h.matrix
    return (relative_residual(product.matrix, c.matrix),
            relative_residual(product_omega.matrix, expected_omega))


def transversal_residual(a: HermitianPD, b: HermitianPD,
                         tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Re-split (A o B) d_{A,B} and measure how far the parts move."""
    c, d = loop_op(a, b, tolerances)
    c_again, d_again = polar_part(c.matrix @ d.matrix, tolerances)
    return max(relative_residual(c_again.matrix, c.matrix),
               relative_residual(d_again.matrix, d.matrix))
