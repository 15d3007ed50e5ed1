import math

import numpy as np
import pytest

from fqc.cutproject import predicted_spectrum
from fqc.errors import EmptySetError, InvalidInputError
from fqc.geometry import Lattice, PointSet
from fqc.measures import DiscreteMeasure
from fqc.structure import (CombRepresentation, TrigPolynomial, coset_cover_check, dichotomy_report,
                           evaluate_representation, fit_lattice, lattice_candidates, recover_comb,
                           reduce_mod_dual, synthetic_comb, synthetic_spectrum)
from fqc.windows import fejer, squared

from .conftest import integer_points, unit_comb

EPS_LEVELS = [1e-1, 3e-2, 1e-2, 1e-3]


@pytest.fixture
def two_cosets():
    return CombRepresentation(
        lattice=Lattice([[1.5]]),
        translates=np.array([[0.0], [0.4]]),
        polys=[TrigPolynomial([0.0, 0.2], [1.0, 0.5]), TrigPolynomial([-0.1], [0.3])],
        residual=0.0,
    )


def test_trig_polynomial():
    p = TrigPolynomial([0.25], [2.0])
    assert p([1.0])[0] == pytest.approx(2j)
    back = TrigPolynomial.from_dict(p.to_dict())
    assert np.array_equal(back.freqs, p.freqs)
    assert np.array_equal(back.coeffs, p.coeffs)
    with pytest.raises(InvalidInputError):
        TrigPolynomial([[0.1], [0.2]], [1.0])


def test_fit_lattice_on_integers():
    fit = fit_lattice(integer_points(20))
    assert fit.success
    assert fit.lattice.basis[0, 0] == pytest.approx(1.0)
    assert len(fit.translates) == 1
    assert fit.coverage == 1.0


def test_fit_lattice_on_two_cosets(two_cosets):
    support = synthetic_comb(two_cosets, [[-30, 30]]).support()
    fit = fit_lattice(support)
    assert fit.success
    assert fit.lattice.basis[0, 0] == pytest.approx(1.5)
    offsets = sorted(((t[0] + 0.5) % 1.5) - 0.5 for t in fit.translates)
    assert offsets == pytest.approx([0.0, 0.4], abs=1e-6)


def test_fit_lattice_on_centred_square_lattice():
    coarse = np.stack(np.meshgrid(np.arange(-5, 6), np.arange(-5, 6), indexing="ij"), axis=-1).reshape(-1, 2)
    centred = np.stack(np.meshgrid(np.arange(-4.5, 5), np.arange(-4.5, 5), indexing="ij"), axis=-1).reshape(-1, 2)
    points = np.vstack([coarse, centred]).astype(float)
    ps = PointSet.from_points(points, [[-5, 5], [-5, 5]])
    fit = fit_lattice(ps)
    assert fit.success
    assert fit.lattice.det == pytest.approx(0.5)
    assert fit.coverage == 1.0


@pytest.mark.parametrize("c", [1.0, 2.5, 0.3])
def test_fit_lattice_is_scale_equivariant(two_cosets, c):
    fit = fit_lattice(integer_points(20).scaled(c))
    assert fit.success
    assert fit.lattice.det == pytest.approx(c)
    support = synthetic_comb(two_cosets, [[-30, 30]]).support()
    scaled = fit_lattice(support.scaled(c))
    assert scaled.success
    assert scaled.lattice.det == pytest.approx(1.5 * c)
    assert len(scaled.translates) == 2


def test_fit_lattice_fails_on_fibonacci(fib_chain):
    fit = fit_lattice(fib_chain)
    assert not fit.success
    assert fit.lattice is None
    assert fit.candidates


def test_fit_lattice_needs_points():
    with pytest.raises(EmptySetError):
        fit_lattice(PointSet.from_points([0.0, 1.0], [[-1, 2]]))


def test_lattice_candidates_are_one_dimensional():
    ps = PointSet.from_points(np.eye(2).tolist() * 3, [[-1, 2], [-1, 2]])
    with pytest.raises(InvalidInputError):
        lattice_candidates(ps)


def test_reduce_mod_dual():
    reduced = reduce_mod_dual(np.array([[0.9], [0.2], [-0.4]]), Lattice([[1.5]]))
    assert reduced[:, 0] == pytest.approx([0.9 - 2 / 3, 0.2, -0.4 + 2 / 3])


def test_recover_two_coset_comb(two_cosets):
    mu = synthetic_comb(two_cosets, [[-75, 75]])
    rep = recover_comb(mu, synthetic_spectrum(two_cosets))
    assert rep.representable
    assert rep.cosets == 2
    assert np.max(np.abs(evaluate_representation(rep, mu.points) - mu.weights)) < 1e-8
    assert coset_cover_check(mu.support(), rep) == 1.0


def test_representation_dict_round_trip(two_cosets):
    back = CombRepresentation.from_dict(two_cosets.to_dict())
    assert back.cosets == 2
    assert back.polys[0].terms == 2
    assert back.lattice.basis[0, 0] == 1.5


def test_synthetic_spectrum_size(two_cosets):
    spec = synthetic_spectrum(two_cosets, reach=2)
    assert spec.size == 15


def test_fibonacci_comb_is_not_representable(fib_chain):
    mu = unit_comb(fib_chain)
    rep = recover_comb(mu, DiscreteMeasure.empty([[-1, 1]]))
    assert not rep.representable
    assert math.isinf(rep.residual)


def test_recover_needs_atoms():
    with pytest.raises(EmptySetError):
        recover_comb(DiscreteMeasure.empty([[-1, 1]]), DiscreteMeasure.empty([[-1, 1]]))


def test_coset_cover_of_integers_by_coarse_lattice():
    rep = CombRepresentation(Lattice([[2.0]]), np.array([[0.0]]), [TrigPolynomial([0.0], [1.0])], 0.0)
    assert coset_cover_check(integer_points(10), rep) == pytest.approx(11 / 21)


def test_model_spectrum_accumulates(fib):
    spec = predicted_spectrum(fib, fejer(0.5), freq_box=3.0)
    report = dichotomy_report(spec, EPS_LEVELS)
    assert report.verdict == "accumulating"
    assert report.shrink_ratio >= 10
    assert [level[0] for level in report.gap_curve] == EPS_LEVELS


def test_dichotomy_ignores_weight_scale(fib):
    spec = predicted_spectrum(fib, fejer(0.5), freq_box=3.0)
    heavier = DiscreteMeasure(spec.points.copy(), 8.0 * spec.weights, spec.box.copy(), spec.dedup_tol)
    base, scaled = dichotomy_report(spec, EPS_LEVELS), dichotomy_report(heavier, EPS_LEVELS)
    assert scaled.verdict == base.verdict
    assert [level[1] for level in scaled.gap_curve] == [level[1] for level in base.gap_curve]
    assert scaled.shrink_ratio == pytest.approx(base.shrink_ratio)
    assert np.allclose(scaled.cluster_centers, base.cluster_centers)


def test_squared_window_cluster_cover_is_finite(fib):
    spec = predicted_spectrum(fib, squared(fejer(0.5)), freq_box=3.0)
    report = dichotomy_report(spec, EPS_LEVELS)
    assert len(report.cluster_centers) > 0
    assert math.isfinite(report.cluster_cover_radius)
    assert report.relatively_dense


def test_integer_spectrum_is_uniformly_discrete():
    ps = integer_points(20)
    report = dichotomy_report(unit_comb(ps), EPS_LEVELS)
    assert report.verdict == "uniformly_discrete"
    assert report.shrink_ratio == 1.0


def test_single_atom_is_inconclusive():
    spec = DiscreteMeasure.from_atoms([0.0], [1.0], [[-1, 1]])
    assert dichotomy_report(spec, EPS_LEVELS).verdict == "inconclusive"


def test_dichotomy_levels_must_decrease():
    spec = unit_comb(integer_points(5))
    with pytest.raises(InvalidInputError):
        dichotomy_report(spec, [1e-1, 1e-2])
    with pytest.raises(InvalidInputError):
        dichotomy_report(spec, [1e-2, 1e-1, 1e-3])
