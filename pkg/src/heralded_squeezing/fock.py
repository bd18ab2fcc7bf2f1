"""Brute-force heralding circuit in a truncated Fock basis.

Independent of the phase-space machinery: the squeezed vacuum is expanded in
photon number, the beam splitter is applied block by block in each
total-photon-number sector, and the ancilla mode is projected onto ``|n>``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEFAULT_CUTOFF = 32
MAX_CUTOFF = 256


class UnconvergedTailWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class FockVector:
    """Single-mode amplitudes ``c_0 .. c_cutoff`` and a bound on the dropped norm."""

    amplitudes: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1:
            raise ValueError("amplitudes must be one-dimensional")
        if np.vdot(amps, amps).real > 1 + 1e-12:
            raise ValueError("state norm exceeds one")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def cutoff(self) -> int:
        return self.amplitudes.size - 1

    @property
    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def converged(self, tol: float = 1e-10) -> bool:
        return self.tail_bound < tol


@dataclass(frozen=True)
class TwoModeFock:
    """Amplitudes ``A[k, l]`` of ``|k>|l>`` with support on ``k + l <= cutoff``."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 2 or amps.shape[0] != amps.shape[1]:
            raise ValueError("two-mode amplitudes must be a square matrix")
        if np.vdot(amps, amps).real > 1 + 1e-12:
            raise ValueError("state norm exceeds one")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def cutoff(self) -> int:
        return self.amplitudes.shape[0] - 1

    @property
    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    @classmethod
    def product(cls, first: FockVector, second: FockVector) -> "TwoModeFock":
        cutoff = first.cutoff + second.cutoff
        amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
        amps[: first.cutoff + 1, : second.cutoff + 1] = np.outer(first.amplitudes, second.amplitudes)
        return cls(amps)


def svs_amplitudes(lam: float, cutoff: int, tol: float | None = None) -> FockVector:
    """Squeezed vacuum ``(1 - lam^2)^(1/4) sum_k sqrt((2k)!) / (2^k k!) (-lam)^k |2k>``.

    The sign ``(-lam)^k`` squeezes the q quadrature. ``tail_bound`` bounds the
    probability beyond ``cutoff`` using the ratio ``|c_{2k+2} / c_{2k}|^2 < lam^2``.
    """
    if not 0 <= lam < 1:
        raise ValueError(f"lambda must satisfy 0 <= lambda < 1, got {lam}")
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    amps = np.zeros(cutoff + 1)
    amps[0] = (1 - lam**2) ** 0.25
    for k in range(cutoff // 2):
        amps[2 * k + 2] = -lam * np.sqrt((2 * k + 1) / (2 * k + 2)) * amps[2 * k]
    k_last = cutoff // 2
    next_weight = amps[2 * k_last] ** 2 * lam**2 * (2 * k_last + 1) / (2 * k_last + 2)
    tail = next_weight / (1 - lam**2)
    if tol is not None and tail > tol:
        raise ValueError(f"cutoff {cutoff} leaves tail {tail:.3g} above tolerance {tol:.3g}")
    return FockVector(amps, tail_bound=float(tail))


def fock_state(m: int, cutoff: int | None = None) -> FockVector:
    cutoff = m if cutoff is None else cutoff
    if not 0 <= m <= cutoff:
        raise ValueError(f"photon number {m} outside 0..{cutoff}")
    amps = np.zeros(cutoff + 1)
    amps[m] = 1.0
    return FockVector(amps)


@lru_cache(maxsize=32)
def _splitter_blocks(T: float, max_photons: int) -> tuple[np.ndarray, ...]:
    """Real unitary ``U_N[k, p] = <k, N-k| U |p, N-p>`` for every ``N <= max_photons``.

    ``U`` maps ``a1^dag -> sqrt(T) a1^dag - sqrt(1-T) a2^dag`` and
    ``a2^dag -> sqrt(1-T) a1^dag + sqrt(T) a2^dag``; the columns of block N
    follow from block N-1 by one more creation operator.
    """
    t, r = np.sqrt(T), np.sqrt(1 - T)
    blocks = [np.ones((1, 1))]
    for N in range(1, max_photons + 1):
        prev = blocks[-1]
        k = np.arange(N)
        # raise mode 1 (index k -> k+1) or mode 2 (index k unchanged)
        up1 = np.zeros((N + 1, N))
        up1[k + 1] = np.sqrt(k + 1)[:, None] * prev
        up2 = np.zeros((N + 1, N))
        up2[k] = np.sqrt(N - k)[:, None] * prev
        cur = np.empty((N + 1, N + 1))
        cur[:, 1:] = (t * up1 - r * up2) / np.sqrt(np.arange(1, N + 1))
        cur[:, 0] = (r * up1[:, 0] + t * up2[:, 0]) / np.sqrt(N)
        blocks.append(cur)
    return tuple(blocks)


def apply_beam_splitter(state: TwoModeFock, T: float) -> TwoModeFock:
    """Apply the beam splitter in each total-photon-number sector."""
    if not 0 <= T <= 1:
        raise ValueError(f"transmissivity must lie in [0, 1], got {T}")
    amps = state.amplitudes
    C = state.cutoff
    k, l = np.indices(amps.shape)
    if np.any(amps[k + l > C] != 0):
        raise ValueError("state has support beyond its photon-number cutoff")
    blocks = _splitter_blocks(float(T), C)
    out = np.zeros_like(amps)
    for N in range(C + 1):
        ks = np.arange(N + 1)
        out[ks, N - ks] = blocks[N] @ amps[ks, N - ks]
    return TwoModeFock(out)


def herald(state: TwoModeFock, n: int) -> tuple[FockVector, float]:
    """Project mode 2 on ``|n>``; return the normalized mode-1 state and its probability."""
    if not 0 <= n <= state.cutoff:
        raise ValueError(f"detected photon number {n} outside 0..{state.cutoff}")
    vec = state.amplitudes[:, n]
    prob = float(np.vdot(vec, vec).real)
    if prob <= 0:
        raise ValueError(f"outcome n={n} has zero probability")
    return FockVector(vec / np.sqrt(prob)), prob


def quadrature_stats(state: FockVector) -> tuple[float, float, float, float]:
    """``(mean_q, var_q, mean_p, var_p)`` with ``q = (a + a^dag)/sqrt(2)``."""
    c = np.append(state.amplitudes, 0.0)
    ladder = np.sqrt(np.arange(1, c.size))
    a = np.diag(ladder, 1)
    q = (a + a.T) / np.sqrt(2)
    p = (a - a.T) / (1j * np.sqrt(2))
    stats = []
    for op in (q, p):
        image = op @ c
        mean = np.vdot(c, image).real
        stats += [mean, np.vdot(image, image).real - mean**2]
    mean_q, var_q, mean_p, var_p = stats
    return float(mean_q), float(var_q), float(mean_p), float(var_p)


@dataclass(frozen=True)
class OracleResult:
    state: FockVector
    probability: float
    mean_q: float
    var_q: float
    mean_p: float
    var_p: float
    cutoff: int
    converged: bool


def _run(m: int, n: int, lam: float, T: float, cutoff: int) -> OracleResult:
    signal = svs_amplitudes(lam, cutoff)
    out = apply_beam_splitter(TwoModeFock.product(signal, fock_state(m)), T)
    if n > out.cutoff:
        raise ValueError(f"detected photon number {n} exceeds cutoff {out.cutoff}")
    state, prob = herald(out, n)
    # dropped input sectors land in orthogonal output sectors
    state = FockVector(state.amplitudes, tail_bound=signal.tail_bound / prob)
    return OracleResult(state, prob, *quadrature_stats(state), cutoff=cutoff, converged=False)


def heralded_state(
    m: int,
    n: int,
    lam: float,
    T: float,
    cutoff: int | None = None,
    tol: float = 1e-10,
    max_cutoff: int = MAX_CUTOFF,
) -> OracleResult:
    """Simulate the heralding circuit for a squeezed vacuum and ancilla ``|m>``.

    With ``cutoff=None`` the signal cutoff starts at ``max(32, n + 16)`` and doubles until the
    relative tail bound and the change in probability and ``var_q`` drop below
    ``tol`` (capped at ``max_cutoff``). A fixed ``cutoff`` is used as given.
    Either way an :class:`UnconvergedTailWarning` is emitted if the tail bound
    stays above ``tol``.
    """
    if cutoff is not None:
        res = _run(m, n, lam, T, cutoff)
        ok = res.state.tail_bound < tol
    else:
        cutoff = max(DEFAULT_CUTOFF, n + 16)
        res = _run(m, n, lam, T, cutoff)
        ok = False
        while cutoff < max_cutoff:
            cutoff = min(2 * cutoff, max_cutoff)
            nxt = _run(m, n, lam, T, cutoff)
            ok = (
                nxt.state.tail_bound < tol
                and abs(nxt.probability - res.probability) <= tol * nxt.probability
                and abs(nxt.var_q - res.var_q) <= tol
            )
            res = nxt
            if ok:
                break
    if not ok:
        warnings.warn(
            f"Fock cutoff {res.cutoff} leaves relative tail {res.state.tail_bound:.3g} "
            f"above {tol:.3g} (lambda={lam}, m={m}, n={n})",
            UnconvergedTailWarning,
            stacklevel=2,
        )
    return OracleResult(**{**res.__dict__, "converged": ok})
