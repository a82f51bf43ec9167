"""Density matrices, their spectra, and quantum information quantities.

All matrix functions (log, power, exp) are evaluated through a Hermitian
eigendecomposition; the dimensions in play are small enough that this is
both exact and cheap. Trace distance is the unhalved trace norm
||rho - sigma||_1 = sum |eigenvalues of the difference|, range [0, 2],
mirroring the unhalved total variation on the classical side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import check_alpha

__all__ = [
    "DensityMatrix",
    "Spectrum",
    "validate_density",
    "as_density",
    "spectrum",
    "von_neumann_entropy",
    "alpha_entropy_q",
    "relative_entropy",
    "trace_distance",
    "hs_distance_sq",
    "qubit_mixture_eigenvalues",
    "pure_overlap_eigenvalues",
    "trace_exp_qubit",
    "is_pure",
    "ginibre_state",
    "random_pure_state",
    "random_unitary",
    "density_to_json",
    "density_from_json",
]

HERM_TOL = 1e-10      # max |A - A^dagger| accepted before symmetrization
TRACE_TOL = 1e-9      # |tr - 1| above this is a hard error
EIG_CLIP = 1e-10      # eigenvalues in (-EIG_CLIP, 0) are clipped to 0
EIG_FLOOR = -1e-8     # eigenvalues below this mean a genuinely non-PSD input
PURITY_TOL = 1e-9     # rank-1 test: largest eigenvalue >= 1 - PURITY_TOL
SUPPORT_TOL = 1e-10   # eigenvalues <= this count as the null space


@dataclass(frozen=True)
class DensityMatrix:
    """A Hermitian, unit-trace, PSD (up to tolerance) complex matrix."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order, with optional orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None


def validate_density(raw) -> DensityMatrix:
    """Validate a raw complex matrix as a quantum state.

    Symmetrizes (A + A^dagger)/2 when the Hermitian asymmetry is within
    1e-10, normalizes a trace within 1e-9 of 1, and rejects matrices with
    an eigenvalue below -1e-8. Smaller negative eigenvalues are kept and
    clipped to zero only when entropic quantities are evaluated.
    """
    A = np.asarray(raw, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {A.shape}")
    if A.shape[0] < 1:
        raise ValueError("density matrix must be at least 1x1")
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise ValueError("density matrix entries must be finite")
    asym = float(np.max(np.abs(A - A.conj().T)))
    if asym > HERM_TOL:
        raise ValueError(f"matrix is not Hermitian: max asymmetry {asym:.3e}")
    A = (A + A.conj().T) / 2.0
    tr = float(np.trace(A).real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"trace is {tr}, not 1")
    if tr != 1.0:
        A = A / tr
    w_min = float(np.linalg.eigvalsh(A)[0])
    if w_min < EIG_FLOOR:
        raise ValueError(f"matrix is not positive semidefinite: min eigenvalue {w_min:.3e}")
    return DensityMatrix(matrix=A)


def as_density(obj) -> DensityMatrix:
    """Coerce a DensityMatrix, raw matrix, or JSON-style mapping to a state."""
    if isinstance(obj, DensityMatrix):
        return obj
    if isinstance(obj, dict):
        return density_from_json(obj)
    return validate_density(obj)


def density_to_json(rho) -> dict:
    """Wire format: {"dim": d, "entries": [[[re, im], ...], ...]}."""
    A = as_density(rho).matrix
    entries = [[[float(z.real), float(z.imag)] for z in row] for row in A]
    return {"dim": int(A.shape[0]), "entries": entries}


def density_from_json(obj: dict) -> DensityMatrix:
    if "entries" not in obj:
        raise ValueError('density mapping must contain "entries"')
    rows = obj["entries"]
    A = np.array([[complex(c[0], c[1]) for c in row] for row in rows])
    if "dim" in obj and int(obj["dim"]) != A.shape[0]:
        raise ValueError(f'"dim" is {obj["dim"]} but entries are {A.shape[0]}x{A.shape[1]}')
    return validate_density(A)


def spectrum(rho, with_vectors: bool = False) -> Spectrum:
    """Hermitian eigendecomposition, eigenvalues sorted descending."""
    A = as_density(rho).matrix
    if with_vectors:
        w, V = np.linalg.eigh(A)
        order = np.argsort(w)[::-1]
        return Spectrum(eigenvalues=w[order], eigenvectors=V[:, order])
    w = np.linalg.eigvalsh(A)
    return Spectrum(eigenvalues=w[::-1])


def _clipped_eigs(rho) -> np.ndarray:
    w = spectrum(rho).eigenvalues
    return np.where(w < 0.0, 0.0, w)


def von_neumann_entropy(rho) -> float:
    """S(rho) = -Tr(rho ln rho), in [0, ln d]."""
    w = _clipped_eigs(rho)
    pos = w[w > 0.0]
    return float(-np.dot(pos, np.log(pos)))


def alpha_entropy_q(rho, alpha: float) -> float:
    """Order-alpha entropy (1 - Tr rho^alpha) / (alpha - 1); alpha = 1 is von Neumann."""
    a = check_alpha(alpha)
    if a == 1.0:
        return von_neumann_entropy(rho)
    w = _clipped_eigs(rho)
    return float((1.0 - np.sum(w**a)) / (a - 1.0))


def _check_same_dim(rho, sigma) -> tuple[np.ndarray, np.ndarray]:
    r = as_density(rho).matrix
    s = as_density(sigma).matrix
    if r.shape != s.shape:
        raise ValueError(f"dimension mismatch: {r.shape[0]} vs {s.shape[0]}")
    return r, s


def relative_entropy(rho, sigma) -> float:
    """S(rho||sigma) = Tr rho ln rho - Tr rho ln sigma.

    Returns +inf when the support of rho is not contained in the support
    of sigma (an eigenvector of rho with eigenvalue > 1e-10 has squared
    projection > 1e-10 onto the null space of sigma).
    """
    r, s = _check_same_dim(rho, sigma)
    wr, Vr = np.linalg.eigh(r)
    ws, Vs = np.linalg.eigh(s)
    null_vecs = Vs[:, ws <= SUPPORT_TOL]
    if null_vecs.shape[1] > 0:
        for k in range(len(wr)):
            if wr[k] > SUPPORT_TOL:
                proj = float(np.sum(np.abs(null_vecs.conj().T @ Vr[:, k]) ** 2))
                if proj > SUPPORT_TOL:
                    return math.inf
    wr_pos = wr[wr > SUPPORT_TOL]
    tr_rho_ln_rho = float(np.dot(wr_pos, np.log(wr_pos)))
    tr_rho_ln_sigma = 0.0
    for j in range(len(ws)):
        if ws[j] > SUPPORT_TOL:
            weight = float(np.real(Vs[:, j].conj() @ r @ Vs[:, j]))
            tr_rho_ln_sigma += weight * math.log(ws[j])
    return tr_rho_ln_rho - tr_rho_ln_sigma


def trace_distance(rho, sigma) -> float:
    """||rho - sigma||_1 = sum |eigenvalues of (rho - sigma)|, in [0, 2]."""
    r, s = _check_same_dim(rho, sigma)
    return float(np.sum(np.abs(np.linalg.eigvalsh(r - s))))


def hs_distance_sq(rho, sigma) -> float:
    """Squared Hilbert-Schmidt distance Tr((rho - sigma)^2)."""
    r, s = _check_same_dim(rho, sigma)
    return float(np.sum(np.abs(r - s) ** 2))


def purity(rho) -> float:
    """Tr(rho^2), in [1/d, 1]."""
    A = as_density(rho).matrix
    return float(np.sum(np.abs(A) ** 2))


def is_pure(rho) -> bool:
    """Rank-1 test: largest eigenvalue within 1e-9 of 1."""
    return float(spectrum(rho).eigenvalues[0]) >= 1.0 - PURITY_TOL


def qubit_mixture_eigenvalues(rho) -> tuple[float, float]:
    """Closed-form qubit eigenvalues 1/2 +- sqrt(2 Tr(rho^2) - 1) / 2."""
    state = as_density(rho)
    if state.dim != 2:
        raise ValueError(f"need a 2x2 state, got dimension {state.dim}")
    r = math.sqrt(max(2.0 * purity(state) - 1.0, 0.0))
    return (0.5 + r / 2.0, 0.5 - r / 2.0)


def pure_overlap_eigenvalues(rho1, rho2) -> tuple[float, float]:
    """Nonzero eigenvalues 1/2 +- sqrt(Tr(rho1 rho2)) / 2 of an even mixture of two pure states.

    The remaining d - 2 eigenvalues of (rho1 + rho2) / 2 vanish because the
    mixture is supported on the span of the two state vectors.
    """
    r1 = as_density(rho1)
    r2 = as_density(rho2)
    if not is_pure(r1) or not is_pure(r2):
        raise ValueError("both states must be pure (rank 1)")
    overlap = max(float(np.trace(r1.matrix @ r2.matrix).real), 0.0)
    root = math.sqrt(overlap)
    return (0.5 + root / 2.0, 0.5 - root / 2.0)


def trace_exp_qubit(rho, t: float) -> float:
    """Tr(exp(-t rho)) for a qubit: 2 e^{-t/2} cosh((t/2) sqrt(2 Tr(rho^2) - 1))."""
    state = as_density(rho)
    if state.dim != 2:
        raise ValueError(f"need a 2x2 state, got dimension {state.dim}")
    t = float(t)
    if t < 0.0:
        raise ValueError(f"need t >= 0, got {t}")
    r = math.sqrt(max(2.0 * purity(state) - 1.0, 0.0))
    return 2.0 * math.exp(-t / 2.0) * math.cosh(t * r / 2.0)


def ginibre_state(dim: int, rng: np.random.Generator) -> DensityMatrix:
    """Random full-rank mixed state G G^dagger / Tr(G G^dagger), G complex Gaussian."""
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    A = G @ G.conj().T
    return validate_density(A / np.trace(A).real)


def random_pure_state(dim: int, rng: np.random.Generator) -> DensityMatrix:
    """Rank-1 projector onto a normalized complex Gaussian vector."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v = v / np.linalg.norm(v)
    return validate_density(np.outer(v, v.conj()))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish unitary from the QR decomposition of a complex Gaussian matrix."""
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    Q, R = np.linalg.qr(G)
    return Q * (np.diag(R) / np.abs(np.diag(R)))
