import math

import numpy as np
import pytest

from fqc.diffraction import (autocorrelation_measure, autocorrelation_points, convergence_report,
                             diffraction_estimate, diffraction_report, epsilon_spectrum,
                             find_annihilating_frequency, fl4_predicted_diffraction, gap_curve,
                             gaussian_tests, random_point_set, split_pure_point, wiener_atom, wiener_energy)
from fqc.errors import AliasingError, InvalidInputError
from fqc.measures import DiscreteMeasure, FrequencyGrid

from .conftest import integer_points, unit_comb


@pytest.fixture(scope="module")
def comb_estimate():
    comb = unit_comb(integer_points(50))
    ac = autocorrelation_measure(comb, 50.0)
    return diffraction_estimate(ac, FrequencyGrid([0.0], 3.5, 2801), 0.05)


def test_autocorrelation_of_short_comb():
    ac = autocorrelation_points(integer_points(5), 5.0)
    assert not ac.tapered
    assert ac.kernel_height == 10.0
    assert ac.measure.weight_at([0.0]) == pytest.approx(1.1)
    assert ac.measure.weight_at([3.0]) == pytest.approx(0.8)
    assert ac.measure.weight_at([-3.0]) == pytest.approx(0.8)


def test_autocorrelation_is_hermitian():
    mu = DiscreteMeasure.from_atoms([-1.3, 0.2, 0.9, 2.4], [1.0, 0.5j, 2 - 1j, -0.7], [[-3, 3]])
    ac = autocorrelation_measure(mu, 3.0)
    for p, w in zip(ac.measure.points, ac.measure.weights):
        assert ac.measure.weight_at(-p) == np.conj(w)


def test_capped_autocorrelation_is_tapered():
    ac = autocorrelation_points(integer_points(5), 5.0, cap_radius=2.0)
    assert ac.tapered
    assert ac.dropped_pairs > 0
    assert ac.kernel_height == pytest.approx(2.0 - 4.0 / 30.0)
    assert np.all(np.abs(ac.measure.points) <= 2.0)


def test_autocorrelation_rejects_bad_radius(z_comb):
    with pytest.raises(InvalidInputError):
        autocorrelation_measure(z_comb, 0.0)


def test_integer_comb_peaks(comb_estimate):
    peaks = comb_estimate.peak_list()
    assert len(peaks) == 7
    locations = sorted(loc[0] for loc, _ in peaks)
    assert np.allclose(locations, np.arange(-3, 4), atol=1e-6)
    for _, intensity in peaks:
        assert intensity == pytest.approx(101 ** 2 / 100 ** 2, abs=0.03)
    assert comb_estimate.min_value >= 0


def test_coarse_grid_is_refused(z_comb):
    ac = autocorrelation_measure(z_comb, 50.0)
    with pytest.raises(AliasingError):
        diffraction_estimate(ac, FrequencyGrid([0.0], 3.5, 101))


def test_grid_dimension_must_match(z_comb):
    ac = autocorrelation_measure(z_comb, 50.0)
    with pytest.raises(InvalidInputError):
        diffraction_estimate(ac, FrequencyGrid([0.0, 0.0], 0.1, 101))


def test_single_point_has_flat_trace():
    ps = integer_points(0.5)
    ac = autocorrelation_points(ps, 10.0)
    est = diffraction_estimate(ac, FrequencyGrid([0.0], 1.0, 161), 0.05)
    assert est.peaks.size <= 1
    assert np.allclose(est.trace.values.real, 1 / 20)


def test_random_points_have_only_the_central_peak():
    ps = random_point_set(1.0, [[-200, 200]], seed=7)
    ac = autocorrelation_points(ps, 200.0)
    # the periodogram of a Poisson set fluctuates around 1/(2R) per cell; its maximum over
    # 3201 cells sits near 0.02 of the central peak, so the default 1e-3 cut would keep noise
    est = diffraction_estimate(ac, FrequencyGrid([0.0], 2.0, 3201), 0.05)
    assert est.peaks.size >= 1
    assert all(abs(loc[0]) < 0.01 for loc, _ in est.peak_list())
    assert est.continuous_mass > 0


def test_split_moves_mass_monotonically(comb_estimate):
    low = split_pure_point(comb_estimate, 0.05)
    high = split_pure_point(comb_estimate, math.inf)
    assert low.discrete.size == 7
    assert high.discrete.size == 0
    assert high.discrete_mass <= low.discrete_mass
    assert high.continuous_mass >= low.continuous_mass


def test_diffraction_report(comb_estimate):
    report = diffraction_report(comb_estimate)
    assert report["R"] == 50.0
    assert len(report["peaks"]) == 7
    assert report["convergence"] is None


def test_convergence_of_comb_peaks(z_comb):
    report = convergence_report(z_comb, 40.0, FrequencyGrid([0.0], 2.5, 2001), top=3, peak_threshold=0.05)
    assert report.matched == 3
    assert report.max_relative_change < 0.05


def test_wiener_energy_recovers_atoms_over_gaussian():
    nu = DiscreteMeasure.from_atoms([0.0, math.sqrt(2)], [1.0, 1.0], [[-5, 5]])
    xs = np.linspace(-5, 5, 2001)
    dx = xs[1] - xs[0]
    energy = wiener_energy(nu, [1e4], density=(xs, np.exp(-np.pi * xs ** 2) * dx))
    assert energy[0] == pytest.approx(2.0, rel=0.02)


def test_wiener_energy_quadrature():
    nu = DiscreteMeasure.from_atoms([0.0, math.sqrt(2)], [1.0, 1.0], [[-1, 2]])
    assert wiener_energy(nu, [100.0], mode="quadrature")[0] == pytest.approx(2.0, rel=0.01)
    with pytest.raises(AliasingError):
        wiener_energy(nu, [100.0], mode="quadrature", pitch=0.5)
    with pytest.raises(InvalidInputError):
        wiener_energy(nu, [100.0], mode="simpson")


def test_wiener_atom():
    nu = DiscreteMeasure.from_atoms([0.0, math.sqrt(2)], [1.0, 2j], [[-1, 2]])
    assert wiener_atom(nu, [0.0], [1e4])[0] == pytest.approx(1.0, abs=1e-3)
    assert wiener_atom(nu, [math.sqrt(2)], [1e4])[0] == pytest.approx(2j, abs=1e-3)


def test_fl4_prediction_squares_weights():
    nu = DiscreteMeasure.from_atoms([0.0, 1.0], [2.0, 1j], [[-1, 2]])
    assert fl4_predicted_diffraction(nu).weights.tolist() == [4.0, 1.0]


def test_symmetric_pair_is_annihilable():
    nu = DiscreteMeasure.from_atoms([0.0, 1.0], [1.0, 1.0], [[-1, 2]])
    tests = gaussian_tests(3, [0.5], 1.0)
    result = find_annihilating_frequency(nu, FrequencyGrid([0.5], 0.5, 101), tests)
    assert result.omega[0] == pytest.approx(0.5)
    assert result.refined_score < 1e-20
    assert result.annihilable


def test_unbalanced_pair_has_positive_floor():
    nu = DiscreteMeasure.from_atoms([0.0, 1.0], [2.0, 1.0], [[-1, 2]])
    result = find_annihilating_frequency(nu, FrequencyGrid([0.5], 0.5, 101))
    assert result.floor > 0
    assert not result.annihilable


def test_zero_measure_scores_zero():
    nu = DiscreteMeasure.empty([[0, 1]])
    result = find_annihilating_frequency(nu, FrequencyGrid([0.0], 1.0, 11))
    assert result.score == 0.0
    assert result.refined_score == 0.0
    assert result.annihilable


def lebesgue_samples(n=1000):
    return (np.arange(n) + 0.5) / n, np.full(n, 1.0 / n)


def test_sampled_lebesgue_measure_is_annihilable():
    x, w = lebesgue_samples()
    nu = DiscreteMeasure.from_atoms(x, w, [[0, 1]])
    result = find_annihilating_frequency(nu, FrequencyGrid([10.0], 5.0, 201))
    assert result.floor == 0.0
    assert result.annihilable
    assert result.score < 1e-3
    assert 5.0 <= result.omega[0] <= 15.0


def test_hidden_atom_has_positive_floor():
    x, w = lebesgue_samples()
    nu = DiscreteMeasure.from_atoms(np.append(x, 0.5), np.append(w, 2.0), [[0, 1]])
    result = find_annihilating_frequency(nu, FrequencyGrid([10.0], 5.0, 201))
    assert result.floor > 0
    assert not result.annihilable
    assert result.score >= result.floor
    assert result.refined_score >= result.floor


def test_random_point_set_is_reproducible():
    a = random_point_set(2.0, [[0, 50]], seed=3)
    b = random_point_set(2.0, [[0, 50]], seed=3)
    assert np.array_equal(a.points, b.points)
    assert 60 < a.size < 140
    with pytest.raises(InvalidInputError):
        random_point_set(0.0, [[0, 1]])


def test_epsilon_levels():
    spec = DiscreteMeasure.from_atoms([0.0, 1.0, 1.5, 4.0], [1.0, 0.5, 0.01, 0.2], [[-1, 5]])
    assert epsilon_spectrum(spec, 0.1).size == 3
    curve = gap_curve(spec, [0.5, 0.005])
    assert curve[0] == (0.5, 2, 1.0)
    assert curve[1][1] == 4
    assert curve[1][2] == pytest.approx(0.5)
