"""Closed-form q-quadrature variances and the distillation classifier.

All variances use the vacuum value 1/2. ``lam = tanh r`` is the input
squeezing and ``T`` the beam-splitter transmissivity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from . import generating
from ._search import coordinate_refine

DISTILLATION_EPSILON = 1e-6
# rounded boundaries of the interior-optimum window for two-photon subtraction
S2_ROUNDED = (0.33, 0.61)

# lam * T at the interior stationary point of the 2-PS variance
STATIONARY_PRODUCT_2PS = (-1 - (25 / (7 + 3 * np.sqrt(6))) ** (1 / 3) + (35 + 15 * np.sqrt(6)) ** (1 / 3)) / 6


class Kind(str, enum.Enum):
    PS = "PS"
    PA = "PA"
    PC = "PC"


@dataclass(frozen=True)
class OpKind:
    """A non-Gaussian operation: ``order``-photon subtraction, addition or catalysis."""

    kind: Kind
    order: int

    def __post_init__(self):
        kind = self.kind if isinstance(self.kind, Kind) else Kind(str(self.kind).upper())
        object.__setattr__(self, "kind", kind)
        if int(self.order) != self.order or self.order < 1:
            raise ValueError(f"order must be a positive integer, got {self.order}")

    @classmethod
    def parse(cls, text: str) -> "OpKind":
        """Parse ``"ps:2"``, ``"PC:1"`` or ``"2-PS"``."""
        text = text.strip()
        if ":" in text:
            kind, order = text.split(":")
        elif "-" in text:
            order, kind = text.split("-")
        else:
            raise ValueError(f"cannot parse operation {text!r}; expected e.g. 'ps:2'")
        return cls(Kind(kind.strip().upper()), int(order))

    @property
    def photons(self) -> tuple[int, int]:
        """``(m, n)``: ancilla photons sent in, photons detected."""
        if self.kind is Kind.PS:
            return 0, self.order
        if self.kind is Kind.PA:
            return self.order, 0
        return self.order, self.order

    @property
    def label(self) -> str:
        return f"{self.order}-{self.kind.value}"

    def __str__(self):
        return self.label


def var_svs(lam):
    """q variance of the squeezed vacuum, ``exp(-2r)/2``."""
    lam = np.asarray(lam, dtype=float)
    return (1 - lam) / (2 * (1 + lam))


def var_1ps(lam, T):
    x = np.asarray(lam) * np.asarray(T)
    return -1.5 + 3 / (1 + x)


def var_2ps(lam, T):
    x = np.asarray(lam) * np.asarray(T)
    return -2.5 + 5 / (x + 1) + 2 * (x - 1) / (2 * x**2 + 1)


def var_2pa(lam, T):
    x = np.asarray(lam) * np.asarray(T)
    return -0.5 + 5 / (x + 1) - 2 * (2 + x) / (2 + x**2)


def var_1pc(lam, T):
    lam = np.asarray(lam, dtype=float)
    T = np.asarray(T, dtype=float)
    x = lam * T
    num = (1 - x) * (
        1
        + 4 * lam
        + 10 * lam**2
        - 4 * x
        - 22 * lam**2 * T
        - 4 * lam**3 * T
        + 10 * x**2
        + 4 * lam**3 * T**2
        + lam**4 * T**2
    )
    den = 2 * (1 + x) * (1 + 2 * lam**2 - 6 * lam**2 * T + 2 * x**2 + lam**4 * T**2)
    return num / den


def probability_2ps(lam, T):
    """Heralding probability of two-photon subtraction."""
    lam = np.asarray(lam, dtype=float)
    T = np.asarray(T, dtype=float)
    x2 = (lam * T) ** 2
    return lam**2 * (1 - T) ** 2 * np.sqrt(1 - lam**2) * (1 + 2 * x2) / (2 * (1 - x2) ** 2.5)


_UNIT_T_LIMITS = {
    ("PS", 1): lambda lam: var_1ps(lam, 1.0),
    ("PA", 1): lambda lam: var_1ps(lam, 1.0),
    ("PS", 2): lambda lam: var_2ps(lam, 1.0),
    ("PA", 2): lambda lam: var_2pa(lam, 1.0),
    ("PC", 1): var_svs,
}


def unit_transmissivity_variance(op: OpKind, lam):
    """Closed-form q variance in the ``T -> 1`` limit, where one is known."""
    try:
        return _UNIT_T_LIMITS[(op.kind.value, op.order)](lam)
    except KeyError:
        raise NotImplementedError(f"no closed-form unit-transmissivity limit for {op}") from None


def _dvar_2ps_dx(x):
    return -5 / (1 + x) ** 2 + (-4 * x**2 + 8 * x + 2) / (2 * x**2 + 1) ** 2


@lru_cache(maxsize=None)
def regions_2ps() -> tuple[float, float]:
    """Numerical ``(lower, upper)`` ends of the window where the 2-PS optimum is interior.

    The 2-PS variance depends on ``lam * T`` only. Its interior stationary
    point ``x*`` lies inside ``T < 1`` once ``lam > x*``; above ``upper`` the
    unit-transmissivity value ``var_2ps(lam, 1)`` drops below the stationary
    value again.
    """
    lower = brentq(_dvar_2ps_dx, 0.05, 0.45, xtol=1e-15)
    v_star = var_2ps(lower, 1.0)
    upper = brentq(lambda lam: var_2ps(lam, 1.0) - v_star, lower + 0.1, 0.99, xtol=1e-15)
    return float(lower), float(upper)


def _in_s2(lam) -> np.ndarray:
    lo, hi = regions_2ps()
    lam = np.asarray(lam, dtype=float)
    return (lam > lo) & (lam < hi)


def t_opt_2ps(lam):
    """Transmissivity minimizing the 2-PS q variance; 1 outside the interior window."""
    lam = np.asarray(lam, dtype=float)
    inside = _in_s2(lam)
    out = np.where(inside, STATIONARY_PRODUCT_2PS / np.where(lam > 0, lam, 1.0), 1.0)
    return float(out) if out.ndim == 0 else out


def var_2ps_at_topt(lam):
    """Minimum of the 2-PS variance over T inside the interior window.

    Because the variance is a function of ``lam * T``, the minimum is the same
    constant ``var_2ps(x*, 1)`` throughout the window.
    """
    if not np.all(_in_s2(lam)):
        lo, hi = regions_2ps()
        raise ValueError(f"lambda must lie in ({lo:.4f}, {hi:.4f})")
    return var_2ps(lam, t_opt_2ps(lam))


@dataclass(frozen=True)
class EnhancementSearch:
    op: OpKind
    max_enhancement: float
    lam: float
    T: float


def max_enhancement(op: OpKind, grid: int = 50, refine: bool = True) -> EnhancementSearch:
    """Largest ``var_svs - var_op`` over ``(lam, T)`` in the open unit square."""
    m, n = op.photons
    axis = (np.arange(grid) + 0.5) / grid
    lam, T = np.meshgrid(axis, axis, indexing="ij")
    var = generating.moment_arrays(m, n, lam, T, include_p=False)["var_q"]
    gain = np.where(np.isnan(var), -np.inf, var_svs(lam) - var)
    i, j = np.unravel_index(int(np.argmax(gain)), gain.shape)
    best = (float(gain[i, j]), float(lam[i, j]), float(T[i, j]))
    if refine:
        edge = 1e-6

        def loss(x):
            out = generating.moment_arrays(m, n, x[0], x[1], include_p=False)["var_q"]
            return np.inf if np.isnan(out) else float(out - var_svs(x[0]))

        x, fx = coordinate_refine(
            loss, best[1:], [edge, edge], [1 - edge, 1 - edge], [1.0 / grid, 1.0 / grid], tol=1e-7, sweeps=8
        )
        if -fx > best[0]:
            best = (float(-fx), float(x[0]), float(x[1]))
    return EnhancementSearch(op, *best)


def classify_distillable(op: OpKind, epsilon: float = DISTILLATION_EPSILON) -> bool:
    """Whether the operation lowers the q variance of some squeezed vacuum by more than ``epsilon``."""
    if not 1 <= op.order <= 4:
        raise ValueError(f"classification supports orders 1..4, got {op.order}")
    return max_enhancement(op).max_enhancement > epsilon
