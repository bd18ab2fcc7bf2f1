import numpy as np
import pytest

from heralded_squeezing.distill import (
    SWEEPS,
    curve,
    enhancement,
    enhancement_grid,
    optimize_R,
    optimize_T,
    to_db,
)
from heralded_squeezing.generating import VanishingProbabilityError
from heralded_squeezing.squeezing import Kind, OpKind, t_opt_2ps, var_2ps, var_svs

PS2 = OpKind(Kind.PS, 2)
PC2 = OpKind(Kind.PC, 2)


def test_to_db():
    assert to_db(0.5) == 0.0
    assert to_db(var_svs(0.27)) == pytest.approx(-10 * np.log10((1 - 0.27) / 1.27), rel=1e-14)
    assert to_db(var_svs(0.27)) == pytest.approx(2.4, abs=0.05)


def test_comparison_point_enhancement():
    pt = enhancement(PS2, 0.27, 0.9)
    assert pt.d_ng == pytest.approx(0.12, abs=0.01)
    assert pt.var == pytest.approx(var_2ps(0.27, 0.9), rel=1e-12)
    assert pt.r_product == pytest.approx(pt.d_ng * pt.probability, rel=1e-15)


@pytest.mark.parametrize("op", [OpKind(Kind.PC, 1), OpKind(Kind.PC, 2), OpKind(Kind.PA, 2)])
def test_vacuum_cannot_be_distilled(op):
    for T in (0.2, 0.7):
        assert enhancement(op, 0.0, T).d_ng <= 1e-10


def test_vacuum_subtraction_never_heralds():
    with pytest.raises(VanishingProbabilityError):
        enhancement(PS2, 0.0, 0.5)


def test_unit_transmissivity_uses_limit():
    pt = enhancement(PS2, 0.5, 1.0)
    assert pt.probability == 0.0
    assert pt.var == pytest.approx(1 / 6, abs=1e-14)
    with pytest.raises(VanishingProbabilityError):
        enhancement(OpKind(Kind.PS, 3), 0.5, 1.0)


def test_enhancement_grid_matches_scalar():
    pts = enhancement_grid(PC2, np.array([0.2, 0.4]), np.array([0.1, 0.6]))
    for pt in pts:
        ref = enhancement(PC2, pt.lam, pt.T)
        assert pt.d_ng == pytest.approx(ref.d_ng, rel=1e-12)
        assert pt.probability == pytest.approx(ref.probability, rel=1e-12)


def test_optimize_T_interior_and_edge():
    T_star, v = optimize_T(PS2, 0.5)
    assert T_star == pytest.approx(t_opt_2ps(0.5), abs=1e-4)
    assert v == pytest.approx(var_2ps(0.5, T_star), rel=1e-12)
    assert optimize_T(PS2, 0.2)[0] == 1.0
    for order in (1, 2, 3):
        assert optimize_T(OpKind(Kind.PA, order), 0.4)[0] == 1.0


def test_optimize_T_rejects_bad_input():
    with pytest.raises(ValueError):
        optimize_T(PS2, 1.0)
    with pytest.raises(ValueError):
        optimize_T(PS2, 0.4, objective="other")


def test_optimize_T_max_R_is_stationary():
    T_star, r = optimize_T(PS2, 0.38, "max_R")
    for dT in (-1e-3, 1e-3):
        assert enhancement(PS2, 0.38, T_star + dT).r_product <= r + 1e-15


@pytest.mark.parametrize("op", [PS2, PC2])
def test_optimize_R_local_maximum(op):
    rec = optimize_R(op)
    assert rec.r_max > 0
    assert rec.var_svs_at_opt == pytest.approx(var_svs(rec.lambda_opt))
    assert rec.r_max == pytest.approx(rec.d_at_opt * rec.p_at_opt, rel=1e-14)
    for dl, dT in [(1e-3, 0), (-1e-3, 0), (0, 1e-3), (0, -1e-3)]:
        assert enhancement(op, rec.lambda_opt + dl, rec.t_opt + dT).r_product <= rec.r_max * (1 + 1e-9)
    assert optimize_R(op) == rec


def test_optimize_R_rejects_non_distilling():
    with pytest.raises(ValueError):
        optimize_R(OpKind(Kind.PA, 1), step=0.05)


def test_optimum_values():
    # values of the true heralding probability; see README for the convention
    rec = optimize_R(PS2)
    assert rec.lambda_opt == pytest.approx(0.3763, abs=1e-3)
    assert rec.t_opt == pytest.approx(0.5555, abs=1e-3)
    assert rec.d_at_opt == pytest.approx(0.0458, abs=1e-3)
    assert rec.p_at_opt == pytest.approx(0.01576, rel=1e-2)


@pytest.mark.parametrize("sweep", ["var_vs_lambda_at_Topt", "Topt_vs_lambda"])
def test_one_dimensional_sweeps(sweep):
    rows = curve(PS2, sweep, grid=20)
    assert len(rows) == 20
    lams = [r.lam for r in rows]
    assert lams == sorted(lams)
    assert all(0 < r.T < 1 for r in rows)


def test_d_and_p_vs_T():
    rows = curve(PS2, "D_and_P_vs_T", grid=50, lam=0.3)
    assert len(rows) == 50
    assert rows[-1].probability < rows[len(rows) // 2].probability
    assert rows[-1].d_ng == pytest.approx(max(r.d_ng for r in rows), rel=0.05)
    with pytest.raises(ValueError):
        curve(PS2, "D_and_P_vs_T", grid=5)


def test_contours():
    rows = curve(PC2, "R_contour", grid=10)
    assert len(rows) == 100
    assert [(r.lam, r.T) for r in rows] == sorted((r.lam, r.T) for r in rows)
    with pytest.raises(ValueError):
        curve(PC2, "nope")
    assert set(SWEEPS) >= {"D_contour", "R_contour"}


def test_boundary_sanity():
    for lam in (0.2, 0.5, 0.8):
        near = [enhancement(PC2, lam, 1 - h) for h in (1e-2, 1e-4, 1e-6)]
        assert abs(near[-1].d_ng) < abs(near[0].d_ng)
        assert abs(near[-1].d_ng) < 1e-5
        ps = [enhancement(PS2, lam, 1 - h).probability for h in (1e-2, 1e-4, 1e-6)]
        assert ps[0] > ps[1] > ps[2]
        assert ps[2] < 1e-10
