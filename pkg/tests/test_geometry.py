import math

import numpy as np
import pytest

from fqc.errors import DimensionError, EmptySetError, InvalidInputError
from fqc.cutproject import PHI
from fqc.geometry import (Lattice, PointSet, as_box, bm_upper_density, classify, covering_radius,
                          density_report, difference_set, lower_density, merge_close, min_separation,
                          rho_density, uniform_density)

from .conftest import integer_points


def test_as_box_forms():
    assert as_box(3.0).tolist() == [[-3.0, 3.0]]
    assert as_box([0, 2], 2).tolist() == [[0.0, 2.0], [0.0, 2.0]]
    with pytest.raises(InvalidInputError):
        as_box([[1.0, 0.0]])


def test_from_points_merges_and_clips():
    ps = PointSet.from_points([0.0, 1e-12, 1.0, 5.0], [[-1, 2]])
    assert ps.size == 2
    assert ps.points[:, 0].tolist() == [0.0, 1.0]


def test_merge_close_sums_weights():
    pts = np.array([[0.0], [0.5e-9], [2.0]])
    reps, w = merge_close(pts, np.array([1.0, 2.0, 3.0]), 1e-9)
    assert len(reps) == 2
    assert sorted(w.tolist()) == [3.0, 3.0]


def test_high_dimension_rejected():
    with pytest.raises(DimensionError):
        PointSet.from_points(np.zeros((2, 5)))


def test_lattice_dual_and_det():
    lat = Lattice([[2.0, 0.0], [1.0, 1.0]])
    assert lat.det == pytest.approx(2.0)
    assert lat.dual().det == pytest.approx(0.5)
    products = lat.basis @ lat.dual().basis.T
    assert np.allclose(products, np.eye(2))


def test_singular_lattice():
    with pytest.raises(InvalidInputError):
        Lattice([[1.0, 2.0], [2.0, 4.0]])


def test_min_separation_of_integers():
    assert min_separation(integer_points(10)) == pytest.approx(1.0)


def test_min_separation_single_point_is_infinite():
    assert math.isinf(min_separation(PointSet.from_points([0.0], [[-1, 1]])))


def test_fibonacci_gaps_are_one_and_phi(fib_chain):
    gaps = np.diff(np.sort(fib_chain.points[:, 0]))
    assert min_separation(fib_chain) == pytest.approx(1.0)
    assert np.all(np.isclose(gaps, 1.0) | np.isclose(gaps, PHI))


def test_covering_radius_of_integers():
    ps = integer_points(20)
    assert covering_radius(ps, [[-5, 5]]) == pytest.approx(0.5, abs=0.01)


def test_covering_radius_empty_set():
    with pytest.raises(EmptySetError):
        covering_radius(PointSet(np.zeros((0, 1)), as_box(1.0)), [[-0.5, 0.5]])


def test_difference_set_multiplicities():
    ds = difference_set(PointSet.from_points([0.0, 1.0, 3.0], [[-1, 4]]), 5.0)
    found = dict(zip(np.round(ds.points.points[:, 0], 9).tolist(), ds.multiplicities.tolist()))
    assert found == {0.0: 3, 1.0: 1, 2.0: 1, 3.0: 1, -1.0: 1, -2.0: 1, -3.0: 1}


def test_min_separation_under_translation_and_scaling(fib_chain):
    d = min_separation(fib_chain)
    assert min_separation(fib_chain.translated([37.25])) == pytest.approx(d)
    for c in (2.5, 0.3):
        assert min_separation(fib_chain.scaled(c)) == pytest.approx(c * d)


def test_difference_set_is_symmetric():
    rng = np.random.default_rng(5)
    ps = PointSet.from_points(rng.uniform(0, 20, 40), [[0, 20]])
    ds = difference_set(ps, 6.0)
    order = np.argsort(ds.points.points[:, 0], kind='stable')
    values, counts = ds.points.points[order, 0], ds.multiplicities[order]
    assert np.allclose(values, -values[::-1])
    assert np.array_equal(counts, counts[::-1])


def test_classify_lattice():
    report = classify(integer_points(50))
    assert report.is_delone and report.is_flc and report.is_meyer
    assert report.min_sep == pytest.approx(1.0)


def test_classify_fibonacci_is_meyer(fib):
    from fqc.cutproject import model_set
    report = classify(model_set(fib, box=100.0))
    assert report.is_uniformly_discrete
    assert report.is_relatively_dense
    assert report.is_meyer


def test_classify_accumulating_differences_is_not_flc():
    k = np.arange(1, 101)
    ps = PointSet.from_points(k + 1.0 / k, [[0, 102]])
    report = classify(ps)
    assert report.is_uniformly_discrete
    assert not report.is_flc
    assert "flc" in report.witnesses


def test_classify_empty():
    with pytest.raises(EmptySetError):
        classify(PointSet(np.zeros((0, 1)), as_box(1.0)))


def test_meyer_verdict_implies_flc():
    rng = np.random.default_rng(11)
    sets = [PointSet.from_points(rng.uniform(0, 100, 120), [[0, 100]]),
            PointSet.from_points(np.arange(101) + rng.normal(0, 0.01, 101), [[0, 100]]),
            PointSet.from_points(np.flatnonzero(rng.random(201) < 0.6) * 0.5, [[0, 100]])]
    for ps in sets:
        report = classify(ps)
        assert report.is_flc or not report.is_meyer


def test_rho_and_lower_density_of_integers():
    ps = integer_points(100)
    assert rho_density(ps) == 2.0
    ld = lower_density(ps)
    assert ld.value == pytest.approx(1.0, abs=0.01)
    assert len(ld.values) == 3


def test_lower_density_needs_symmetric_box():
    with pytest.raises(InvalidInputError):
        lower_density(PointSet.from_points([0.0, 1.0], [[0, 2]]))


def test_rho_is_one_dimensional():
    with pytest.raises(DimensionError):
        rho_density(PointSet.from_points([[0.0, 0.0], [1.0, 1.0]]))


def test_uniform_density_of_lattice():
    ud = uniform_density(integer_points(1000), ball_radius=100.0, num_centers=64)
    assert ud.mean == pytest.approx(1.0, rel=0.02)
    assert ud.converged


def test_uniform_density_of_scaled_lattice():
    ps = integer_points(1000).scaled(2.0)
    ud = uniform_density(ps, ball_radius=200.0, num_centers=32)
    assert ud.mean == pytest.approx(0.5, rel=0.02)


def test_bm_upper_density_of_integers():
    value = bm_upper_density(integer_points(1e4))
    assert 0.95 <= value <= 1.0


def test_bm_upper_density_of_cubes():
    cubes = np.arange(1, 22, dtype=float) ** 3
    assert bm_upper_density(PointSet.from_points(cubes, [[-1e4, 1e4]])) < 0.01


def test_bm_upper_density_of_half_integers():
    ps = PointSet.from_points(np.arange(0, 1000.25, 0.5), [[0, 1000]])
    value = bm_upper_density(ps)
    assert 1.9 <= value <= 2.0


def test_bm_upper_density_sees_dense_part_past_sparse_tail():
    dense = np.arange(0, 1000.25, 0.5)
    squares = np.arange(1, 95, dtype=float) ** 2
    points = np.concatenate([dense, 1000 + squares, -squares])
    value = bm_upper_density(PointSet.from_points(points, [[-1e4, 1e4]]))
    assert 1.9 <= value <= 2.0


def test_density_report_fields():
    report = density_report(integer_points(200))
    assert report.rho == 2.0
    assert report.lower_density == pytest.approx(1.0, abs=0.01)
    assert report.bm_is_lower_bound
    assert report.uniform_density == pytest.approx(1.0, rel=0.05)
