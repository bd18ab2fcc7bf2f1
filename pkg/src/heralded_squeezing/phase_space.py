"""Gaussian states, symplectic maps and characteristic functions.

Conventions: quadratures are ordered ``(q1, p1, q2, p2, ...)``, ``hbar = 1`` and
``q = (a + a^dagger) / sqrt(2)``, so the vacuum has quadrature variance 1/2.
The characteristic function is ``chi(L) = Tr[rho exp(-i L^T Omega xi)]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

VACUUM_VARIANCE = 0.5


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form built from ``[[0, 1], [-1, 0]]``."""
    omega = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(n_modes), omega)


@dataclass(frozen=True)
class GaussianState:
    """Mean vector and covariance matrix of an n-mode Gaussian state."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        if mean.ndim != 1 or mean.size % 2:
            raise ValueError(f"mean must be a vector of even length, got shape {mean.shape}")
        if cov.shape != (mean.size, mean.size):
            raise ValueError(f"cov shape {cov.shape} does not match mean length {mean.size}")
        if not np.allclose(cov, cov.T, atol=1e-12, rtol=0):
            raise ValueError("cov is not symmetric")
        if np.any(np.diag(cov) < 0):
            raise ValueError("cov has negative diagonal entries")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def n_modes(self) -> int:
        return self.mean.size // 2

    def is_physical(self, atol: float = 1e-10) -> bool:
        """Check the uncertainty relation ``V + (i/2) Omega >= 0``."""
        omega = symplectic_form(self.n_modes)
        eigs = np.linalg.eigvalsh(self.cov + 0.5j * omega)
        return bool(eigs.min() >= -atol)


@dataclass(frozen=True)
class SymplecticTransform:
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] % 2:
            raise ValueError(f"symplectic matrix must be square of even size, got {matrix.shape}")
        object.__setattr__(self, "matrix", matrix)

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2

    def is_symplectic(self, atol: float = 1e-10) -> bool:
        omega = symplectic_form(self.n_modes)
        return bool(np.allclose(self.matrix.T @ omega @ self.matrix, omega, atol=atol, rtol=0))

    def apply(self, state: GaussianState) -> GaussianState:
        """Heisenberg action ``xi -> S xi``: mean ``S m``, covariance ``S V S^T``."""
        if state.n_modes != self.n_modes:
            raise ValueError("mode count mismatch")
        s = self.matrix
        return GaussianState(s @ state.mean, s @ state.cov @ s.T)


def vacuum_state(n_modes: int) -> GaussianState:
    if n_modes < 1:
        raise ValueError(f"n_modes must be positive, got {n_modes}")
    return GaussianState(np.zeros(2 * n_modes), VACUUM_VARIANCE * np.eye(2 * n_modes))


def squeezer(r: float) -> SymplecticTransform:
    """Single-mode squeezer ``diag(exp(-r), exp(r))``; positive r squeezes q."""
    return SymplecticTransform(np.diag([np.exp(-r), np.exp(r)]))


def squeeze(state: GaussianState, r: float, mode: int = 0) -> GaussianState:
    """Squeeze ``mode`` of ``state``; the q variance is scaled by ``exp(-2 r)``."""
    if not 0 <= mode < state.n_modes:
        raise IndexError(f"mode {mode} out of range for a {state.n_modes}-mode state")
    s = np.eye(2 * state.n_modes)
    s[2 * mode : 2 * mode + 2, 2 * mode : 2 * mode + 2] = squeezer(r).matrix
    return SymplecticTransform(s).apply(state)


def beam_splitter(T: float) -> SymplecticTransform:
    """Two-mode beam splitter of power transmissivity ``T``.

    ``[[sqrt(T) I, sqrt(1-T) I], [-sqrt(1-T) I, sqrt(T) I]]`` acting on
    ``(q1, p1, q2, p2)``.
    """
    if not 0.0 <= T <= 1.0:
        raise ValueError(f"transmissivity must lie in [0, 1], got {T}")
    t, r = np.sqrt(T), np.sqrt(1.0 - T)
    eye = np.eye(2)
    return SymplecticTransform(np.block([[t * eye, r * eye], [-r * eye, t * eye]]))


def gaussian_chi(state: GaussianState, point) -> complex:
    """Characteristic function ``exp[-L^T (Omega V Omega^T) L / 2 - i (Omega m)^T L]``."""
    point = np.asarray(point, dtype=float)
    if point.shape != state.mean.shape:
        raise ValueError(f"phase point shape {point.shape} does not match state dimension {state.mean.shape}")
    if not np.all(np.isfinite(point)):
        raise ValueError("phase point must be finite")
    omega = symplectic_form(state.n_modes)
    quad = point @ (omega @ state.cov @ omega.T) @ point
    lin = (omega @ state.mean) @ point
    return complex(np.exp(-0.5 * quad - 1j * lin))


def laguerre(m: int, x):
    """Laguerre polynomial ``L_m(x)`` via the three-term recurrence.

    ``(k + 1) L_{k+1} = (2k + 1 - x) L_k - k L_{k-1}``.
    """
    if m < 0:
        raise ValueError(f"order must be non-negative, got {m}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if m == 0:
        return prev
    cur = 1.0 - x
    for k in range(1, m):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur


def fock_chi(m: int, point) -> float:
    """Characteristic function of the Fock state ``|m>`` at ``(tau, sigma)``."""
    tau, sigma = np.asarray(point, dtype=float)
    rho = 0.5 * (tau**2 + sigma**2)
    return float(np.exp(-0.5 * rho) * laguerre(m, rho))
