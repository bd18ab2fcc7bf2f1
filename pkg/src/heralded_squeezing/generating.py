"""Closed-form generating function of the heralded single-mode state.

A squeezed vacuum (``lam = tanh r``) is mixed with an ``m``-photon Fock state
on a beam splitter of transmissivity ``T`` and ``n`` photons are detected in
the ancilla output. The unnormalized characteristic function of the signal is

    chi(tau, sigma) = a0 * D[ exp(L^T G1 L + u^T G2 L + u^T G3 u) ]

with ``L = (tau, sigma)``, ``u = (u1, v1, u2, v2)`` and the derivative operator

    D = 2^-(m+n) / (m! n!) d^m/du1^m d^m/dv1^m d^n/du2^n d^n/dv2^n  at u = 0.

The exponent is a quadratic form without linear part in the 6-vector
``w = (u1, v1, u2, v2, tau, sigma)``, so every mixed partial at the origin is
a hafnian with repeated indices. It is evaluated here by extracting the
``w^alpha`` coefficient of ``(w^T Q w)^K / K!`` with ``2K = |alpha|``.

Everything broadcasts over arrays of ``lam`` and ``T`` (batch axes first).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

MAX_PHOTON_ORDER = 48
MAX_QUADRATURE_ORDER = 4
MIN_PROBABILITY = 1e-300
IMAG_RTOL = 1e-10

# position of each variable in w
U1, V1, U2, V2, TAU, SIGMA = range(6)


class VanishingProbabilityError(ValueError):
    """The heralding outcome has (numerically) zero probability."""


@dataclass(frozen=True)
class QuadraticGenerator:
    """Prefactor and exponent matrices of the generating function.

    ``G1`` is ``(..., 2, 2)``, ``G2`` is ``(..., 4, 2)`` and ``G3`` is
    ``(..., 4, 4)``; leading axes follow the broadcast shape of ``lam`` and
    ``T``.
    """

    lam: np.ndarray
    T: np.ndarray
    a0: np.ndarray
    G1: np.ndarray
    G2: np.ndarray
    G3: np.ndarray

    @property
    def shape(self) -> tuple:
        return np.shape(self.a0)

    def quadratic_form(self) -> np.ndarray:
        """Symmetric ``(..., 6, 6)`` matrix ``Q`` with exponent ``w^T Q w``."""
        q = np.zeros(self.shape + (6, 6), dtype=complex)
        q[..., :4, :4] = self.G3
        q[..., 4:, 4:] = self.G1
        q[..., :4, 4:] = 0.5 * self.G2
        q[..., 4:, :4] = 0.5 * np.swapaxes(self.G2, -1, -2)
        return 0.5 * (q + np.swapaxes(q, -1, -2))


@dataclass(frozen=True)
class MomentIndex:
    """Ancilla photons ``m``, detected photons ``n``, powers ``s`` of q and ``t`` of p."""

    m: int
    n: int
    s: int = 0
    t: int = 0

    def __post_init__(self):
        for name in ("m", "n", "s", "t"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value}")
        if self.m + self.n > MAX_PHOTON_ORDER:
            raise ValueError(f"m + n = {self.m + self.n} exceeds supported order {MAX_PHOTON_ORDER}")
        if self.s + self.t > MAX_QUADRATURE_ORDER:
            raise ValueError(f"s + t = {self.s + self.t} exceeds supported order {MAX_QUADRATURE_ORDER}")

    @property
    def derivative_orders(self) -> tuple[int, ...]:
        """Derivative order for each entry of ``w``."""
        return (self.m, self.m, self.n, self.n, self.t, self.s)


@dataclass(frozen=True)
class MomentResult:
    probability: float
    mean_q: float
    mean_p: float
    var_q: float
    var_p: float


def _check_parameters(lam, T):
    lam, T = np.broadcast_arrays(np.asarray(lam, dtype=float), np.asarray(T, dtype=float))
    if np.any(~np.isfinite(lam)) or np.any((lam < 0) | (lam >= 1)):
        raise ValueError("squeezing parameter lambda must satisfy 0 <= lambda < 1")
    if np.any(~np.isfinite(T)) or np.any((T < 0) | (T > 1)):
        raise ValueError("transmissivity T must satisfy 0 <= T <= 1")
    return lam, T


def assemble(lam, T) -> QuadraticGenerator:
    """Build the generating-function data for squeezing ``lam`` and transmissivity ``T``."""
    lam, T = _check_parameters(lam, T)
    lt = lam * T
    den = 1.0 - lt**2
    a0 = np.sqrt((1.0 - lam**2) / den)
    rt, rr = np.sqrt(T), np.sqrt(1.0 - T)
    shape = lam.shape

    g1 = np.zeros(shape + (2, 2))
    g1[..., 0, 0] = -((1 + lt) ** 2) / (4 * den)
    g1[..., 1, 1] = -((1 - lt) ** 2) / (4 * den)

    # column 0 couples to tau, column 1 to sigma
    g2 = np.zeros(shape + (4, 2), dtype=complex)
    g2[..., 0, 0] = 1 + lt
    g2[..., 1, 0] = -(1 + lt)
    g2[..., 2, 0] = -lam * rt * (1 + lt)
    g2[..., 3, 0] = lam * rt * (1 + lt)
    g2[..., 0, 1] = -1j * (lt - 1)
    g2[..., 1, 1] = -1j * (lt - 1)
    g2[..., 2, 1] = -1j * lam * rt * (lt - 1)
    g2[..., 3, 1] = -1j * lam * rt * (lt - 1)
    g2 *= (rr / den)[..., None, None]

    diag_signal = lt * (T - 1)
    cross_signal = 1 - T
    mixed_same = lam * rt * (1 - T)
    mixed_swap = rt * (1 - lam**2 * T)
    diag_ancilla = lam * (T - 1)
    cross_ancilla = lam**2 * T * (1 - T)
    g3 = np.stack(
        [
            np.stack([diag_signal, cross_signal, mixed_same, mixed_swap], axis=-1),
            np.stack([cross_signal, diag_signal, mixed_swap, mixed_same], axis=-1),
            np.stack([mixed_same, mixed_swap, diag_ancilla, cross_ancilla], axis=-1),
            np.stack([mixed_swap, mixed_same, cross_ancilla, diag_ancilla], axis=-1),
        ],
        axis=-2,
    )
    g3 = g3 / den[..., None, None]
    return QuadraticGenerator(lam=lam, T=T, a0=a0, G1=g1, G2=g2, G3=g3)


def series_derivative(q: np.ndarray, orders, chunk: int = 4096) -> np.ndarray:
    """Mixed partial ``d^orders exp(w^T q w)`` at ``w = 0``.

    ``q`` is a symmetric ``(..., k, k)`` matrix; the derivative is read off the
    coefficient of ``w^orders`` in ``(w^T q w)^K / K!``.
    """
    orders = tuple(int(o) for o in orders)
    batch = q.shape[:-2]
    total = sum(orders)
    if total % 2:
        return np.zeros(batch, dtype=complex)
    active = [i for i, o in enumerate(orders) if o > 0]
    if not active:
        return np.ones(batch, dtype=complex)
    box = tuple(orders[i] + 1 for i in active)
    nd = len(box)

    pairs = []
    for a, b in itertools.combinations_with_replacement(range(nd), 2):
        shift = [0] * nd
        shift[a] += 1
        shift[b] += 1
        if any(sh >= size for sh, size in zip(shift, box)):
            continue
        dst = tuple(slice(sh, None) for sh in shift)
        src = tuple(slice(None, size - sh) for sh, size in zip(shift, box))
        pairs.append((active[a], active[b], 1.0 if a == b else 2.0, dst, src))

    # batch on the last axis keeps the shifted slices contiguous
    flat = q.reshape((-1,) + q.shape[-2:])
    out = np.empty(flat.shape[0], dtype=complex)
    target = tuple(orders[i] for i in active)
    for lo in range(0, flat.shape[0], chunk):
        block = flat[lo : lo + chunk]
        coefs = [(mult * block[:, i, j], dst, src) for i, j, mult, dst, src in pairs]
        poly = np.zeros(box + (block.shape[0],), dtype=complex)
        poly[(0,) * nd] = 1.0
        for k in range(total // 2):
            nxt = np.zeros_like(poly)
            for coef, dst, src in coefs:
                nxt[dst] += coef * poly[src]
            nxt /= k + 1
            poly = nxt
        out[lo : lo + chunk] = poly[target]
    scale = float(math.prod(math.factorial(o) for o in orders))
    return out.reshape(batch) * scale


def pairing_derivative(q: np.ndarray, orders) -> complex:
    """Same quantity as :func:`series_derivative` by summing over perfect pairings.

    Exponential in the total order; meant as a cross-check for small orders
    and a single (unbatched) ``q``.
    """
    h = q + q.T
    idx = [i for i, o in enumerate(orders) for _ in range(int(o))]

    def pairings(items):
        if not items:
            return 1.0
        first, rest = items[0], items[1:]
        return sum(h[first, rest[j]] * pairings(rest[:j] + rest[j + 1 :]) for j in range(len(rest)))

    if len(idx) % 2:
        return 0.0
    return complex(pairings(idx))


def raw_moment(gen: QuadraticGenerator, idx: MomentIndex, method: str = "series"):
    """Unnormalized symmetric moment ``P <:q^s p^t:>`` of the heralded state."""
    orders = idx.derivative_orders
    if method == "series":
        deriv = series_derivative(gen.quadratic_form(), orders)
    elif method == "pairing":
        q = gen.quadratic_form()
        flat = q.reshape((-1, 6, 6))
        deriv = np.array([pairing_derivative(x, orders) for x in flat]).reshape(gen.shape)
    else:
        raise ValueError(f"unknown method {method!r}")
    norm = 2.0 ** (idx.m + idx.n) * math.factorial(idx.m) * math.factorial(idx.n)
    phase = (-1j) ** idx.s * (1j) ** idx.t
    value = gen.a0 * deriv * phase / norm
    return value[()] if np.ndim(value) == 0 else value


def _real(value, what: str):
    value = np.asarray(value)
    bad = np.abs(value.imag) > IMAG_RTOL * np.abs(value) + 1e-300
    if np.any(bad):
        raise ArithmeticError(f"{what} has an unexpected imaginary part (max {np.abs(value.imag).max():.3g})")
    return value.real


def probability(m: int, n: int, lam, T):
    """Heralding probability of detecting ``n`` photons with an ``m``-photon ancilla."""
    gen = assemble(lam, T)
    p = _real(raw_moment(gen, MomentIndex(m, n)), "probability")
    return float(p) if np.ndim(p) == 0 else p


def moment_arrays(m: int, n: int, lam, T, include_p: bool = True) -> dict[str, np.ndarray]:
    """Vectorized probability, means and variances; NaN where the outcome is impossible.

    ``include_p=False`` skips the p quadrature, which roughly halves the cost
    of grid scans that only need ``var_q``.
    """
    gen = assemble(lam, T)
    wanted = [(0, 0), (1, 0), (2, 0)] + ([(0, 1), (0, 2)] if include_p else [])
    raw = {st: _real(raw_moment(gen, MomentIndex(m, n, *st)), f"moment {st}") for st in wanted}
    p = raw[(0, 0)]
    ok = p >= MIN_PROBABILITY
    safe = np.where(ok, p, 1.0)
    nan = np.where(ok, 0.0, np.nan)
    out = {"probability": p}
    for name, first, second in [("q", (1, 0), (2, 0)), ("p", (0, 1), (0, 2))]:
        if first not in raw:
            continue
        mean = raw[first] / safe + nan
        out[f"mean_{name}"] = mean
        out[f"var_{name}"] = raw[second] / safe - mean**2 + nan
    return out


def symmetric_moments(m: int, n: int, lam: float, T: float) -> MomentResult:
    """Normalized first and second quadrature moments of the heralded state."""
    if np.ndim(lam) or np.ndim(T):
        raise TypeError("symmetric_moments expects scalar parameters; use moment_arrays for grids")
    out = moment_arrays(m, n, lam, T)
    p = float(out["probability"])
    if not p >= MIN_PROBABILITY:
        raise VanishingProbabilityError(
            f"heralding probability {p:.3g} for m={m}, n={n}, lambda={lam}, T={T} is numerically zero"
        )
    return MomentResult(
        probability=p,
        mean_q=float(out["mean_q"]),
        mean_p=float(out["mean_p"]),
        var_q=float(out["var_q"]),
        var_p=float(out["var_p"]),
    )
