"""Rearrangements and Lorentz quasi-norms on sampled fields."""

import math

import numpy as np
import pytest

from restrictionlab.grids import GridSpec, SampledField
from restrictionlab.lorentz import (
    LorentzExponent,
    RearrangementSteps,
    decreasing_rearrangement,
    indicator_lorentz_norm,
    lorentz_norm,
    lorentz_norm_values,
)


def _field(values, spacing=1.0):
    v = np.asarray(values, dtype=complex)
    return SampledField(values=v, origin=(0.0,) * v.ndim, spacing=(spacing,) * v.ndim)


def test_rearrangement_sorts_and_merges():
    steps = decreasing_rearrangement(_field([3.0, 1.0, 1.0]))
    assert np.array_equal(steps.values, [3.0, 1.0])
    assert np.array_equal(steps.widths, [1.0, 2.0])
    assert steps.total_width() == pytest.approx(3.0)


def test_rearrangement_uses_modulus():
    steps = decreasing_rearrangement(_field([-2.0, 2.0j]))
    assert np.array_equal(steps.values, [2.0])
    assert np.array_equal(steps.widths, [2.0])


def test_rearrangement_drops_zeros():
    steps = decreasing_rearrangement(_field([0.0, 1.0, 0.0]))
    assert np.array_equal(steps.values, [1.0])
    assert np.array_equal(steps.widths, [1.0])


def test_rearrangement_of_zero_field_is_empty():
    steps = decreasing_rearrangement(_field([0.0, 0.0]))
    assert steps.values.size == 0 and steps.widths.size == 0


def test_rearrangement_scales_with_cell_volume():
    steps = decreasing_rearrangement(_field([3.0, 1.0, 1.0], spacing=0.25))
    assert np.array_equal(steps.widths, [0.25, 0.5])


def test_step_validation():
    with pytest.raises(ValueError, match="align"):
        RearrangementSteps(values=np.array([2.0, 1.0]), widths=np.array([1.0]))
    with pytest.raises(ValueError, match="decreasing"):
        RearrangementSteps(values=np.array([1.0, 2.0]), widths=np.array([1.0, 1.0]))
    with pytest.raises(ValueError, match="decreasing"):
        RearrangementSteps(values=np.array([2.0, 2.0]), widths=np.array([1.0, 1.0]))


def test_exponent_validation():
    LorentzExponent(p=2.0, s=math.inf)
    with pytest.raises(ValueError, match="p"):
        LorentzExponent(p=0.0, s=1.0)
    with pytest.raises(ValueError, match="s"):
        LorentzExponent(p=2.0, s=0.0)


def test_norm_matches_hand_integral():
    # f* = 3 on (0, 1/2], 1 on (1/2, 2]; p = 2, s = 1 gives
    # integral t^(-1/2) f*(t) dt = 4 sqrt(2)
    f = _field([3.0, 1.0, 1.0, 1.0], spacing=0.5)
    got = lorentz_norm(f, LorentzExponent(2.0, 1.0))
    assert got == pytest.approx(4.0 * math.sqrt(2.0), rel=1e-12)


def test_weak_norm_of_two_level_field():
    # sup t^(1/2) f*(t) over steps: max(3 sqrt(1/2), 1 sqrt(2)) = 3/sqrt(2)
    f = _field([3.0, 1.0, 1.0, 1.0], spacing=0.5)
    got = lorentz_norm(f, LorentzExponent(2.0, math.inf))
    assert got == pytest.approx(3.0 / math.sqrt(2.0), rel=1e-12)


def test_diagonal_case_is_lebesgue_norm():
    rng = np.random.default_rng(7)
    v = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    f = SampledField(values=v, origin=(0.0, 0.0), spacing=(0.3, 0.3))
    for p in (1.0, 2.0, 4.0, 7.5):
        lp = (np.sum(np.abs(v) ** p) * f.cell_volume) ** (1.0 / p)
        lps = lorentz_norm(f, LorentzExponent(p, p))
        assert abs(lps - lp) <= 1e-10 * lp


def test_p2_s2_small_example():
    f = _field([3.0, 1.0])
    assert lorentz_norm(f, LorentzExponent(2.0, 2.0)) == pytest.approx(
        math.sqrt(10.0), rel=1e-12
    )


def test_indicator_closed_form():
    assert indicator_lorentz_norm(2.0, 1.0, 4.0) == pytest.approx(4.0, rel=1e-14)
    assert indicator_lorentz_norm(3.0, math.inf, 8.0) == pytest.approx(2.0, rel=1e-14)
    assert indicator_lorentz_norm(2.0, 1.0, 0.0) == 0.0
    with pytest.raises(ValueError):
        indicator_lorentz_norm(2.0, 1.0, -1.0)


def test_indicator_matches_sampled_field():
    # 6 unit cells of ones
    f = _field([1.0] * 6)
    for p, s in ((2.0, 1.0), (2.0, 2.0), (1.5, 3.0), (2.0, math.inf)):
        assert lorentz_norm(f, LorentzExponent(p, s)) == pytest.approx(
            indicator_lorentz_norm(p, s, 6.0), rel=1e-12
        )


def test_power_of_two_homogeneity_is_exact():
    rng = np.random.default_rng(11)
    v = rng.standard_normal(32)
    base = lorentz_norm_values(v, 0.7, 2.0, 1.0)
    assert lorentz_norm_values(8.0 * v, 0.7, 2.0, 1.0) == 8.0 * base


def test_rearrangement_invariance_is_exact():
    rng = np.random.default_rng(13)
    v = rng.standard_normal(64)
    w = v.copy()
    rng.shuffle(w)
    e = LorentzExponent(1.5, 2.5)
    assert lorentz_norm(_field(v), e) == lorentz_norm(_field(w), e)


def test_dilation_scaling():
    # same samples, doubled spacing: norm scales by 2^(d/p)
    rng = np.random.default_rng(17)
    v = rng.standard_normal((16, 16))
    f1 = SampledField(values=v, origin=(0.0, 0.0), spacing=(1.0, 1.0))
    f2 = SampledField(values=v, origin=(0.0, 0.0), spacing=(2.0, 2.0))
    for p, s in ((2.0, 1.0), (3.0, math.inf), (1.2, 1.2)):
        n1 = lorentz_norm(f1, LorentzExponent(p, s))
        n2 = lorentz_norm(f2, LorentzExponent(p, s))
        assert abs(n2 - 2.0 ** (2.0 / p) * n1) <= 1e-10 * n2


def test_pointwise_monotonicity():
    rng = np.random.default_rng(19)
    small = rng.standard_normal(40)
    big = small * (1.0 + rng.uniform(0.0, 1.0, 40))
    for p, s in ((2.0, 1.0), (2.0, math.inf), (4.0, 0.5)):
        e = LorentzExponent(p, s)
        assert lorentz_norm(_field(small), e) <= lorentz_norm(_field(big), e) + 1e-14


def test_zero_field_has_zero_norm():
    f = _field([0.0, 0.0, 0.0])
    assert lorentz_norm(f, LorentzExponent(2.0, 1.0)) == 0.0
    assert lorentz_norm(f, LorentzExponent(2.0, math.inf)) == 0.0
