import math

import numpy as np
import pytest

from fqc.errors import BudgetError, InvalidInputError, WindowError
from fqc.windows import bspline, constant, fejer, lemma_al1_function, make_window, squared, surrogate


def numeric_transform(wf, t, half_range=400.0, step=0.01):
    xs = np.arange(-half_range, half_range + step / 2, step)
    return np.sum(wf(xs) * np.exp(-2j * np.pi * xs * t)) * step


@pytest.fixture(scope="module")
def al1():
    return lemma_al1_function()


def test_bspline_transform_matches_numeric_integral():
    wf = bspline(4, 1.0)
    for t in [0.0, 0.3, 0.7, 1.2]:
        assert wf.fourier(np.array([t]))[0] == pytest.approx(numeric_transform(wf, t), abs=1e-6)


def test_bspline_support_and_integral():
    wf = bspline(2, 0.5)
    assert wf.support == (-0.5, 0.5)
    assert wf.integral == pytest.approx(2.0)
    assert wf.fourier(np.array([0.5, 0.75, -0.6])).tolist() == [0.0, 0.0, 0.0]
    assert wf.nonnegative
    assert not bspline(3, 0.5).nonnegative


def test_bspline_rejects_bad_parameters():
    with pytest.raises(InvalidInputError):
        bspline(0, 1.0)
    with pytest.raises(InvalidInputError):
        bspline(2, -1.0)


def test_fejer_is_order_two():
    wf = fejer(0.5)
    assert wf.kind == "fejer"
    xs = np.linspace(-10, 10, 41)
    assert np.allclose(wf(xs), bspline(2, 0.5)(xs))


def test_squared_bspline_stays_closed_form():
    base = bspline(2, 0.25)
    wf = squared(base)
    assert wf.kind == "squared"
    assert wf.support == (-0.5, 0.5)
    assert wf.nonnegative
    xs = np.linspace(-20, 20, 81)
    assert np.allclose(wf(xs), base(xs) ** 2, rtol=1e-12, atol=1e-15)
    assert wf.integral == pytest.approx(numeric_transform(wf, 0.0).real, abs=1e-6)


def test_decay_radius_bounds_the_window():
    wf = bspline(2, 0.5)
    r = wf.decay_radius(1e-4)
    xs = np.linspace(r, 10 * r, 1001)
    assert np.all(np.abs(wf(xs)) < 1e-4)
    with pytest.raises(InvalidInputError):
        wf.decay_radius(0.0)


def test_constant_window():
    wf = constant(2.0)
    assert wf.decay_radius(1e-3) == math.inf
    assert np.all(wf(np.array([0.0, 1e6])) == 2.0)
    with pytest.raises(WindowError):
        wf.fourier(np.zeros(1))


def test_lemma_al1_has_zero_integral(al1):
    assert abs(al1.integral) < 1e-10
    assert al1.support == pytest.approx((-2 / 3, 2 / 3))


def test_lemma_al1_transform_vanishes_outside_support(al1):
    assert abs(al1.fourier(np.array([0.7]))[0]) == 0.0
    assert abs(al1.fourier(np.array([-0.9]))[0]) == 0.0


def test_lemma_al1_positive_far_out(al1):
    R = al1.params["R_reported"]
    assert 0 < R < al1.params["R_target"]
    xs = np.linspace(R, 10 * R, 5001)
    assert np.all(al1(xs) > 0)
    assert np.all(al1(-xs) > 0)


def test_lemma_al1_rejects_wide_band():
    with pytest.raises(InvalidInputError):
        lemma_al1_function(a=0.6)


def test_surrogate_vanishes_on_zeros():
    zeros = [0.5, 1.5, -2.0]
    wf = surrogate(zeros, 0.5)
    assert np.all(wf(np.array(zeros)) <= 1e-12)
    xs = np.linspace(-30, 30, 6001)
    assert np.all(wf(xs) >= 0)
    assert wf.params["b"] == 0.0625


def test_surrogate_is_band_limited():
    wf = surrogate([0.5, 1.5, -2.0], 0.5)
    inside = abs(numeric_transform(wf, 0.0, half_range=4000.0, step=0.05))
    outside = abs(numeric_transform(wf, 0.6, half_range=4000.0, step=0.05))
    assert outside < 1e-3 * inside


def test_surrogate_budget():
    with pytest.raises(BudgetError):
        surrogate([0.5, 1.5, -2.0], 0.5, delta_floor=0.2)
    with pytest.raises(InvalidInputError):
        surrogate([0.0], 0.0)


def test_make_window():
    assert make_window({"kind": "squared"}).support == (-0.5, 0.5)
    assert make_window({"kind": "bspline", "order": 3, "half_width": 0.3}).params["order"] == 3
    with pytest.raises(WindowError):
        make_window({"kind": "gaussian"})
