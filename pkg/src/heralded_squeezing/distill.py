"""Figures of merit for squeezing distillation and their optimization.

The enhancement is ``D = var_svs(lam) - var_op(lam, T)`` and the trade-off
figure is ``R = D * P`` with ``P`` the heralding probability.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import generating
from ._search import coordinate_refine, grid_then_golden
from .phase_space import VACUUM_VARIANCE
from .squeezing import OpKind, unit_transmissivity_variance, var_svs

T_EDGE = 1e-6
SWEEPS_1D = ("var_vs_lambda_at_Topt", "Topt_vs_lambda", "D_and_P_vs_T")
SWEEPS_2D = ("D_contour", "R_contour")
SWEEPS = SWEEPS_1D + SWEEPS_2D


def to_db(var):
    """Squeezing in dB relative to vacuum, ``-10 log10(var / 0.5)``."""
    return -10 * np.log10(np.asarray(var, dtype=float) / VACUUM_VARIANCE) + 0.0


@dataclass(frozen=True)
class DistillationPoint:
    op: OpKind
    lam: float
    T: float
    var: float
    d_ng: float
    probability: float
    r_product: float

    def as_row(self) -> dict:
        row = asdict(self)
        row["op"] = self.op.label
        row["lambda"] = row.pop("lam")
        return {key: row[key] for key in ("op", "lambda", "T", "var", "d_ng", "probability", "r_product")}


@dataclass(frozen=True)
class OptimumRecord:
    op: OpKind
    r_max: float
    lambda_opt: float
    t_opt: float
    var_svs_at_opt: float
    d_at_opt: float
    p_at_opt: float

    def as_row(self) -> dict:
        row = asdict(self)
        row["op"] = self.op.label
        return row


def _point(op, lam, T, var, prob) -> DistillationPoint:
    d = float(var_svs(lam) - var)
    return DistillationPoint(op, float(lam), float(T), float(var), d, float(prob), d * float(prob))


def enhancement(op: OpKind, lam: float, T: float) -> DistillationPoint:
    """Enhancement, heralding probability and their product at one ``(lam, T)``.

    At ``T = 1`` subtraction and addition never herald; the known closed-form
    limit of the variance is used there, with probability 0.
    """
    m, n = op.photons
    try:
        res = generating.symmetric_moments(m, n, lam, T)
    except generating.VanishingProbabilityError:
        if T != 1:
            raise
        try:
            var = float(unit_transmissivity_variance(op, lam))
        except NotImplementedError:
            raise generating.VanishingProbabilityError(
                f"{op} never heralds at T = 1 and has no closed-form limit"
            ) from None
        return _point(op, lam, T, var, 0.0)
    return _point(op, lam, T, res.var_q, res.probability)


def enhancement_grid(op: OpKind, lam, T) -> list[DistillationPoint]:
    """Vectorized :func:`enhancement` over broadcast arrays; impossible outcomes give NaN variance."""
    m, n = op.photons
    lam, T = np.broadcast_arrays(np.asarray(lam, float), np.asarray(T, float))
    out = generating.moment_arrays(m, n, lam, T, include_p=False)
    return [
        _point(op, l, t, v, p)
        for l, t, v, p in zip(lam.ravel(), T.ravel(), out["var_q"].ravel(), out["probability"].ravel())
    ]


def _objective(op: OpKind, lam: float, objective: str):
    m, n = op.photons
    if objective not in ("min_var", "max_R"):
        raise ValueError(f"objective must be 'min_var' or 'max_R', got {objective!r}")

    def f(T):
        out = generating.moment_arrays(m, n, lam, T, include_p=False)
        if objective == "min_var":
            return out["var_q"]
        return -(var_svs(lam) - out["var_q"]) * out["probability"]

    return f


def optimize_T(op: OpKind, lam: float, objective: str = "min_var") -> tuple[float, float]:
    """Best transmissivity at fixed ``lam``: ``(T_star, value)``.

    ``value`` is the variance for ``min_var`` and ``R`` for ``max_R``. A
    ``T_star`` pinned at the upper edge is reported as 1 (the ideal-operation
    limit); the value is then the one at ``1 - 1e-6``.
    """
    if not 0 < lam < 1:
        raise ValueError(f"lambda must lie in (0, 1), got {lam}")
    f = _objective(op, lam, objective)
    hi = 1 - T_EDGE
    T_star, value = grid_then_golden(f, T_EDGE, hi, 1e-3, tol=1e-8)
    if T_star >= hi - 1e-7:
        T_star = 1.0
    return T_star, (value if objective == "min_var" else -value)


def optimize_R(op: OpKind, step: float = 0.005, tol: float = 1e-6) -> OptimumRecord:
    """Maximize ``R = D * P`` over ``(lam, T)``: grid scan, then coordinate golden-section refinement."""
    m, n = op.photons
    axis = np.arange(step, 1.0 - step / 2, step)
    lam, T = np.meshgrid(axis, axis, indexing="ij")
    out = generating.moment_arrays(m, n, lam, T, include_p=False)
    r = (var_svs(lam) - out["var_q"]) * out["probability"]
    r = np.where(np.isnan(r), -np.inf, r)
    i, j = np.unravel_index(int(np.argmax(r)), r.shape)
    if not r[i, j] > 0:
        raise ValueError(f"{op} does not distill squeezing: R <= 0 on the whole grid")

    def loss(x):
        res = generating.moment_arrays(m, n, x[0], x[1], include_p=False)
        val = -(var_svs(x[0]) - res["var_q"]) * res["probability"]
        return np.inf if np.isnan(val) else float(val)

    x, _ = coordinate_refine(loss, (lam[i, j], T[i, j]), (T_EDGE, T_EDGE), (1 - T_EDGE, 1 - T_EDGE), (step, step), tol=tol)
    pt = enhancement(op, x[0], x[1])
    return OptimumRecord(
        op=op,
        r_max=pt.r_product,
        lambda_opt=pt.lam,
        t_opt=pt.T,
        var_svs_at_opt=float(var_svs(pt.lam)),
        d_at_opt=pt.d_ng,
        p_at_opt=pt.probability,
    )


def _interior(grid: int) -> np.ndarray:
    return np.arange(1, grid + 1) / (grid + 1)


def curve(op: OpKind, sweep: str, grid: int = 100, lam: float | None = None) -> list[DistillationPoint]:
    """Tabulate plot-ready points.

    ``var_vs_lambda_at_Topt`` / ``Topt_vs_lambda``: ``grid`` values of lambda,
    each at its variance-minimizing T (evaluated at ``1 - 1e-6`` when the
    optimum sits at the unit edge). ``D_and_P_vs_T``: ``grid`` values of T at
    fixed ``lam``. ``D_contour`` / ``R_contour``: a ``grid x grid`` lattice.
    Grid values are interior, ``k / (grid + 1)``.
    """
    if sweep not in SWEEPS:
        raise ValueError(f"unknown sweep {sweep!r}; choose from {', '.join(SWEEPS)}")
    if grid < 1:
        raise ValueError("grid must be positive")
    axis = _interior(grid)
    if sweep in ("var_vs_lambda_at_Topt", "Topt_vs_lambda"):
        rows = []
        for lv in axis:
            T_star, _ = optimize_T(op, float(lv), "min_var")
            rows.extend(enhancement_grid(op, lv, min(T_star, 1 - T_EDGE)))
        return rows
    if sweep == "D_and_P_vs_T":
        if lam is None:
            raise ValueError("sweep D_and_P_vs_T needs a fixed lambda")
        return enhancement_grid(op, lam, axis)
    L, T = np.meshgrid(axis, axis, indexing="ij")
    return enhancement_grid(op, L, T)
