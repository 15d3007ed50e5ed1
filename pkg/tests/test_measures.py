import numpy as np
import pytest

from fqc.config import RunConfig
from fqc.errors import CapExceededError, EmptySetError, InvalidInputError
from fqc.geometry import PointSet
from fqc.measures import (DiscreteMeasure, FrequencyGrid, add, exp_sum, ft_at, ft_grid, hermitian_gram,
                          modulate, nu_h, nu_h_support_check, reflect_conjugate, restrict, s_h,
                          scale_weights, total_mass, translate, translation_bounded_norm)


def test_from_atoms_merges_and_purges():
    mu = DiscreteMeasure.from_atoms([0.0, 1e-12, 1.0, 2.0], [1.0, 1.0, 1.0, 1e-16], [[-3, 3]])
    assert mu.size == 2
    assert mu.weight_at([0.0]) == 2.0
    assert mu.weight_at([2.0]) == 0j


def test_from_atoms_length_mismatch():
    with pytest.raises(InvalidInputError):
        DiscreteMeasure.from_atoms([0.0, 1.0], [1.0], [[-1, 2]])


def test_measure_dict_round_trip():
    mu = DiscreteMeasure.from_atoms([[0.0, 1.0], [0.5, -0.25]], [1 + 2j, -0.5j], [[-1, 1], [-1, 1]])
    back = DiscreteMeasure.from_dict(mu.to_dict())
    assert np.array_equal(back.points, mu.points)
    assert np.array_equal(back.weights, mu.weights)
    assert np.array_equal(back.box, mu.box)


def test_single_atom_at_origin_has_flat_transform():
    values = exp_sum(np.zeros((1, 1)), np.array([1.0 + 0j]), np.linspace(-3, 3, 13))
    assert np.all(values == 1.0)


def test_transform_of_integer_comb(z_comb):
    values = ft_at(z_comb, [0.0, 1.0, 0.5])
    assert values[0].real == pytest.approx(101.0)
    assert values[1].real == pytest.approx(101.0, rel=1e-12)
    assert values[2].real == pytest.approx(1.0, abs=1e-9)


def test_modulation_shifts_transform(z_comb):
    t = np.array([0.13, 0.42, 1.7])
    shifted = ft_at(modulate(z_comb, [0.3]), t)
    assert np.allclose(shifted, ft_at(z_comb, t + 0.3), atol=1e-9)


def test_translation_multiplies_by_phase():
    mu = DiscreteMeasure.from_atoms([0.0, 0.7, 2.2], [1.0, -2.0, 0.5j], [[-1, 3]])
    t = np.array([0.25, -1.1])
    expected = np.exp(-2j * np.pi * 0.4 * t) * ft_at(mu, t)
    assert np.allclose(ft_at(translate(mu, [0.4]), t), expected, atol=1e-12)


def test_linearity():
    mu = DiscreteMeasure.from_atoms([0.0, 1.0], [1.0, 2.0], [[-2, 2]])
    nu = DiscreteMeasure.from_atoms([0.5, 1.0], [1j, -1.0], [[-2, 2]])
    t = np.linspace(-2, 2, 9)
    combined = ft_at(add(mu, nu, 2.0, 1j), t)
    assert np.allclose(combined, 2.0 * ft_at(mu, t) + 1j * ft_at(nu, t), atol=1e-12)


def test_scale_by_zero_is_empty():
    mu = DiscreteMeasure.from_atoms([0.0], [1.0], [[-1, 1]])
    assert scale_weights(mu, 0).size == 0
    assert scale_weights(mu, 3.0).weights[0] == 3.0


def test_restrict_and_total_mass(z_comb):
    part = restrict(z_comb, [[-2.5, 2.5]])
    assert part.size == 5
    assert total_mass(part) == 5.0


def test_reflect_conjugate():
    mu = DiscreteMeasure.from_atoms([1.0], [2 + 1j], [[0, 2]])
    rc = reflect_conjugate(mu)
    assert rc.points[0, 0] == -1.0
    assert rc.weights[0] == 2 - 1j
    assert rc.box.tolist() == [[-2.0, 0.0]]


def test_hermitian_gram(z_comb):
    freqs = np.array([0.0, 0.1, 0.35, 0.8])
    gram = hermitian_gram(z_comb, freqs)
    assert np.allclose(gram, gram.conj().T, rtol=0, atol=1e-12)
    assert np.allclose(np.diag(gram), 101.0)


def test_results_do_not_depend_on_threads(z_comb):
    freqs = np.linspace(-2, 2, 401)
    one = ft_at(z_comb, freqs, RunConfig(threads=1))
    many = ft_at(z_comb, freqs, RunConfig(threads=4, chunk_size=7))
    assert np.array_equal(one, many)


def test_frequency_grid():
    grid = FrequencyGrid([0.0], 1.0, 5)
    assert grid.points()[:, 0].tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert grid.cell_volume() == 0.5
    with pytest.raises(CapExceededError):
        grid.check_cap(4)
    with pytest.raises(CapExceededError):
        ft_grid(DiscreteMeasure.from_atoms([0.0], [1.0], [[-1, 1]]), FrequencyGrid([0.0], 1.0, 17),
                config=RunConfig(grid_cap=16))


def test_ft_grid_per_volume(z_comb):
    trace = ft_grid(z_comb, FrequencyGrid([0.0], 0.5, 3), "per-volume", R=50)
    assert trace.values[1].real == pytest.approx(1.01)
    with pytest.raises(InvalidInputError):
        ft_grid(z_comb, FrequencyGrid([0.0], 0.5, 3), "per-volume")


def test_s_h_and_nu_h():
    spec = DiscreteMeasure.from_atoms([0.0, 1.0, 2.0, 3.0], [1.0, 2.0, 1j, 3.0], [[-1, 4]])
    sh = s_h(spec, [1.0])
    assert sh.points[:, 0].tolist() == [0.0, 1.0, 2.0]
    nu = nu_h(spec, [1.0])
    assert nu.weight_at([0.0]) == 2.0
    assert nu.weight_at([1.0]) == pytest.approx(2.0 * np.conj(1j))
    assert nu.weight_at([2.0]) == pytest.approx(3j)
    assert nu_h(spec, [0.5]).size == 0


def test_nu_h_check_rejects_missing_shift():
    spec = DiscreteMeasure.from_atoms([0.0, 1.0], [1.0, 1.0], [[-1, 2]])
    support = PointSet.from_points([0.0], [[-1, 1]])
    with pytest.raises(EmptySetError):
        nu_h_support_check(spec, [0.5], support, FrequencyGrid([0.0], 1.0, 101))


def test_nu_h_of_integer_spectrum_lives_on_integers():
    # ν_1 of the comb Σ δ_k is again a comb; its transform concentrates on the integers
    spec = DiscreteMeasure.from_atoms(np.arange(-40, 41), np.ones(81), [[-41, 41]])
    support = PointSet.from_points(np.arange(-5, 6), [[-5, 5]])
    report = nu_h_support_check(spec, [1.0], support, FrequencyGrid([0.0], 4.5, 1801))
    assert report.localizable
    assert report.leak < 0.01


def test_translation_bounded_norm(z_comb):
    assert translation_bounded_norm(z_comb) == 3.0
