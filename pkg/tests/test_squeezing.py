import numpy as np
import pytest

from heralded_squeezing.generating import moment_arrays, symmetric_moments
from heralded_squeezing.squeezing import (
    S2_ROUNDED,
    STATIONARY_PRODUCT_2PS,
    Kind,
    OpKind,
    classify_distillable,
    max_enhancement,
    probability_2ps,
    regions_2ps,
    t_opt_2ps,
    unit_transmissivity_variance,
    var_1pc,
    var_1ps,
    var_2pa,
    var_2ps,
    var_2ps_at_topt,
    var_svs,
)

# minimum of var_2ps over the open window, from a 2e6-point brute-force scan of lam*T
VAR_2PS_MIN = 0.15903372997052578


def test_opkind_parsing():
    assert OpKind.parse("ps:2") == OpKind(Kind.PS, 2)
    assert OpKind.parse("2-PC") == OpKind(Kind.PC, 2)
    assert OpKind("pa", 3).photons == (3, 0)
    assert OpKind(Kind.PS, 2).photons == (0, 2)
    assert OpKind(Kind.PC, 4).photons == (4, 4)
    assert str(OpKind(Kind.PS, 2)) == "2-PS"
    with pytest.raises(ValueError):
        OpKind(Kind.PS, 0)
    with pytest.raises(ValueError):
        OpKind.parse("xx:2")


def test_var_svs_values():
    assert var_svs(0.0) == 0.5
    assert var_svs(0.38) == pytest.approx(0.22463768115942029, rel=1e-15)
    assert var_svs(0.5) == pytest.approx(1 / 6, rel=1e-15)


def test_var_2ps_values():
    assert var_2ps(0.0, 0.3) == pytest.approx(0.5, abs=1e-15)
    assert var_2ps(0.5, 1.0) == pytest.approx(1 / 6, abs=1e-15)
    assert var_2ps(0.38, 0.55) == pytest.approx(0.18075203181540142, rel=1e-13)


def test_var_1ps_values():
    assert var_1ps(0.0, 0.0) == 1.5
    assert var_1ps(1e-6, 1 - 1e-9) == pytest.approx(1.5, abs=1e-5)
    assert var_1ps(0.5, 1.0) == pytest.approx(0.5, abs=1e-15)
    assert var_1ps(0.5, 1.0) >= var_svs(0.5)


def test_var_2pa_values():
    for T in (0.0, 0.4, 1.0):
        assert var_2pa(0.0, T) == pytest.approx(2.5, abs=1e-15)
    assert var_2pa(0.5, 1.0) == pytest.approx(-0.5 + 10 / 3 - 5 / 2.25, abs=1e-15)


def test_var_1pc_values():
    lam = np.linspace(0, 0.95, 12)
    assert np.allclose(var_1pc(lam, 1.0), var_svs(lam), atol=1e-14, rtol=0)
    assert np.allclose(var_1pc(0.0, np.linspace(0, 1, 7)), 0.5, atol=1e-15, rtol=0)
    assert var_1pc(0.3, 0.5) == pytest.approx(symmetric_moments(1, 1, 0.3, 0.5).var_q, abs=1e-12)


def test_probability_2ps_closed_form():
    lam, T = np.meshgrid(np.linspace(0.05, 0.95, 9), np.linspace(0.05, 0.95, 9))
    engine = moment_arrays(0, 2, lam, T, include_p=False)["probability"]
    assert np.allclose(probability_2ps(lam, T), engine, rtol=1e-12, atol=0)


def test_unit_transmissivity_limits():
    assert unit_transmissivity_variance(OpKind(Kind.PC, 1), 0.3) == pytest.approx(var_svs(0.3))
    assert unit_transmissivity_variance(OpKind(Kind.PS, 2), 0.5) == pytest.approx(1 / 6)
    with pytest.raises(NotImplementedError):
        unit_transmissivity_variance(OpKind(Kind.PS, 3), 0.5)


def test_stationary_product_is_a_root():
    x = STATIONARY_PRODUCT_2PS
    h = 1e-6
    assert (var_2ps(x + h, 1) - var_2ps(x - h, 1)) / (2 * h) == pytest.approx(0, abs=1e-8)
    assert var_2ps(x, 1.0) == pytest.approx(VAR_2PS_MIN, abs=1e-14)


def test_regions_match_rounded_boundaries():
    lo, hi = regions_2ps()
    assert lo == pytest.approx(S2_ROUNDED[0], abs=0.01)
    assert hi == pytest.approx(S2_ROUNDED[1], abs=0.01)
    assert lo == pytest.approx(STATIONARY_PRODUCT_2PS, abs=1e-12)
    assert var_2ps(hi, 1.0) == pytest.approx(VAR_2PS_MIN, abs=1e-12)


def test_t_opt_values():
    # brute-force grid argmin at lam = 0.5 over 1e6 values of T
    assert t_opt_2ps(0.5) == pytest.approx(0.6506292, abs=1e-6)
    assert t_opt_2ps(0.5) == pytest.approx(0.6504, abs=1e-3)
    assert t_opt_2ps(0.2) == 1.0
    assert t_opt_2ps(0.8) == 1.0
    assert t_opt_2ps(0.331) == pytest.approx(0.985, abs=3e-3)


def test_var_at_t_opt_matches_brute_force():
    T = np.linspace(1e-6, 1, 1_000_001)
    for lam in (0.4, 0.5, 0.6):
        brute = np.min(var_2ps(lam, T))
        assert var_2ps_at_topt(lam) == pytest.approx(brute, abs=1e-10)
        assert var_2ps_at_topt(lam) == pytest.approx(VAR_2PS_MIN, abs=1e-12)
    assert float(T[np.argmin(var_2ps(0.4, T))]) == pytest.approx(0.8132865, abs=1e-6)
    with pytest.raises(ValueError):
        var_2ps_at_topt(0.2)


def test_region_structure_over_lambda():
    lo, hi = regions_2ps()
    T = np.linspace(1e-4, 1, 20001)
    for lam in np.linspace(0.02, 0.98, 50):
        v = var_2ps(lam, T)
        k = int(np.argmin(v))
        if lam < lo - 1e-3 or lam > hi + 1e-3:
            assert T[k] == pytest.approx(1.0, abs=1e-3) or v[k] >= v[-1] - 1e-12
        if lo + 1e-3 < lam < hi - 1e-3:
            assert T[k] < 1 - 1e-3
            assert T[k] == pytest.approx(t_opt_2ps(lam), abs=1e-4)


def test_single_subtraction_never_beats_the_input():
    lam, T = np.meshgrid(np.linspace(0.01, 0.99, 40), np.linspace(0.01, 0.99, 40))
    assert np.all(var_1ps(lam, T) >= var_svs(lam))


@pytest.mark.parametrize(
    "op, expected",
    [(OpKind(Kind.PS, 2), True), (OpKind(Kind.PA, 3), False), (OpKind(Kind.PC, 1), False), (OpKind(Kind.PS, 1), False)],
)
def test_classification_examples(op, expected):
    assert classify_distillable(op) is expected


def test_classification_order_range():
    with pytest.raises(ValueError):
        classify_distillable(OpKind(Kind.PS, 5))


def test_max_enhancement_location():
    res = max_enhancement(OpKind(Kind.PS, 2))
    assert res.max_enhancement == pytest.approx(0.1505, abs=1e-3)
    assert var_svs(res.lam) - var_2ps(res.lam, res.T) == pytest.approx(res.max_enhancement, abs=1e-10)
