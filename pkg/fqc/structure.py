"""
Periodic structure of measures

Recovers representations

    μ = Σ_j Σ_{λ ∈ L + τ_j} P_j(λ) δ_λ

of a discrete measure as finitely many lattice cosets carrying
trigonometric polynomials, and runs the diagnostics that decide whether
such a representation can exist at all: lattice coverage of the support
and the ε-level behaviour of the spectrum (uniformly discrete versus
accumulating).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import lstsq
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .config import RunConfig, DEFAULT_CONFIG
from .cutproject import enumerate_lattice
from .diffraction import gap_curve, epsilon_spectrum
from .errors import EmptySetError, InvalidInputError
from .geometry import Lattice, PointSet, as_box, as_points, covering_radius, difference_set, merge_close, shrink_box
from .measures import DiscreteMeasure, PURGE

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class TrigPolynomial:
    """P(λ) = Σ c_k exp(2πi⟨ω_k, λ⟩)"""
    freqs: np.ndarray
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        freqs = np.asarray(self.freqs, dtype=float)
        if freqs.size == 0:
            freqs = np.zeros((0, freqs.shape[-1] if freqs.ndim == 2 else 1))
        elif freqs.ndim < 2:
            freqs = freqs.reshape(len(self.coeffs), -1)
        if len(freqs) != len(self.coeffs):
            raise InvalidInputError(f"{len(freqs)} frequencies but {len(self.coeffs)} coefficients")
        self.freqs = freqs

    @property
    def terms(self) -> int:
        return len(self.coeffs)

    def __call__(self, points) -> np.ndarray:
        points = as_points(points, self.freqs.shape[1])
        if self.terms == 0:
            return np.zeros(len(points), dtype=complex)
        phase = 2 * np.pi * (points @ self.freqs.T)
        return (np.cos(phase) + 1j * np.sin(phase)) @ self.coeffs

    def to_dict(self) -> Dict[str, Any]:
        return {"freqs": self.freqs.tolist(), "coeffs_re_im": [[c.real, c.imag] for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TrigPolynomial":
        coeffs = [complex(re, im) for re, im in data["coeffs_re_im"]]
        return cls(np.asarray(data["freqs"], dtype=float), np.asarray(coeffs, dtype=complex))


@dataclass(eq=False)
class CombRepresentation:
    """Lattice, coset translates and one polynomial per coset; residual always reported"""
    lattice: Optional[Lattice]
    translates: np.ndarray
    polys: List[TrigPolynomial]
    residual: float
    representable: bool = True
    coverage: float = 1.0

    @property
    def cosets(self) -> int:
        return len(self.translates)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lattice_basis": None if self.lattice is None else self.lattice.basis.tolist(),
            "translates": np.asarray(self.translates).tolist(),
            "polys": [p.to_dict() for p in self.polys],
            "residual": self.residual if math.isfinite(self.residual) else str(self.residual),
            "representable": self.representable,
            "coverage": self.coverage,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CombRepresentation":
        basis = data.get("lattice_basis")
        return cls(lattice=None if basis is None else Lattice(np.asarray(basis, dtype=float)),
                   translates=np.atleast_2d(np.asarray(data["translates"], dtype=float)),
                   polys=[TrigPolynomial.from_dict(p) for p in data["polys"]],
                   residual=float(data["residual"]), representable=bool(data.get("representable", True)),
                   coverage=float(data.get("coverage", 1.0)))


@dataclass
class LatticeCandidate:
    basis: List[List[float]]
    period_fraction: float
    coverage: float
    cosets: int


@dataclass(eq=False)
class LatticeFit:
    """Best lattice for a point set; success means coverage >= coverage_floor"""
    lattice: Optional[Lattice]
    translates: np.ndarray
    labels: np.ndarray
    coverage: float
    success: bool
    tol: float
    candidates: List[LatticeCandidate] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "basis": None if self.lattice is None else self.lattice.basis.tolist(),
            "translates": self.translates.tolist(),
            "coverage": self.coverage,
            "success": self.success,
            "tol": self.tol,
            "candidates": [c.__dict__ for c in self.candidates],
        }


# ---------------------------------------------------------------------------
# lattice fitting
# ---------------------------------------------------------------------------

def _default_tol(ps: PointSet, config: RunConfig) -> float:
    nn, _ = cKDTree(ps.points).query(ps.points, k=2)
    return config.gcd_rel_tol * float(np.median(nn[:, 1]))


def _period_fraction(ps: PointSet, tree: cKDTree, v: np.ndarray, tol: float) -> float:
    """Share of the points λ with λ + v still in the box that have λ + v ∈ Λ"""
    shifted = ps.points + v
    inside = np.all((shifted >= ps.box[:, 0] - tol) & (shifted <= ps.box[:, 1] + tol), axis=1)
    if not np.any(inside):
        return 0.0
    dist, _ = tree.query(shifted[inside])
    return float(np.mean(dist <= tol))


def _residues(points: np.ndarray, basis: np.ndarray) -> np.ndarray:
    coeffs = points @ np.linalg.inv(basis)
    return coeffs - np.floor(coeffs)


def _cosets(points: np.ndarray, basis: np.ndarray, tol: float, max_cosets: int
            ) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    Greedy coset selection on the torus of fractional coefficients: take the
    residue with the most neighbours within tol, remove them, repeat.
    Returns translates (in the fundamental cell), per-point labels (−1 if
    uncovered) and the covered fraction.
    """
    residues = _residues(points, basis)
    scale = float(np.max(np.linalg.norm(np.linalg.inv(basis), axis=0)))
    radius = tol * scale
    # boxsize wraps the unit torus; keep residues strictly below 1
    wrapped = np.minimum(residues, np.nextafter(1.0, 0.0))
    tree = cKDTree(wrapped, boxsize=1.0)
    labels = np.full(len(points), -1, dtype=np.int64)
    translates = []
    neighbours = tree.query_ball_point(wrapped, radius)
    for j in range(max_cosets):
        free = labels < 0
        if not np.any(free):
            break
        counts = np.array([np.count_nonzero(labels[idx] < 0) if free[i] else -1
                           for i, idx in enumerate(neighbours)])
        seed = int(np.argmax(counts))
        if counts[seed] <= 0:
            break
        members = [k for k in neighbours[seed] if labels[k] < 0]
        labels[members] = j
        translates.append(residues[seed] @ basis)
    coverage = float(np.mean(labels >= 0)) if len(points) else 0.0
    return np.asarray(translates).reshape(-1, basis.shape[0]), labels, coverage


def _refine(points: np.ndarray, basis: np.ndarray, translates: np.ndarray, labels: np.ndarray
            ) -> Tuple[np.ndarray, np.ndarray]:
    """Least squares on λ = k·B + τ_j over the covered points, k = nearest integer coefficients"""
    used = labels >= 0
    if np.count_nonzero(used) <= basis.shape[0] + len(translates):
        return basis, translates
    pts, lab = points[used], labels[used]
    k = np.rint((pts - translates[lab]) @ np.linalg.inv(basis))
    design = np.hstack([k, np.eye(len(translates))[lab]])
    solution, _, _, _ = lstsq(design, pts)
    n = basis.shape[0]
    return solution[:n], solution[n:]


def _candidate_vectors(ps: PointSet, max_cosets: int, tol: float) -> np.ndarray:
    nn, _ = cKDTree(ps.points).query(ps.points, k=2)
    reach = (max_cosets + 1) * float(np.max(nn[:, 1]))
    reach = min(reach, float(np.min(ps.box[:, 1] - ps.box[:, 0])) / 2)
    diffs = difference_set(ps, reach).points.points
    diffs = diffs[np.linalg.norm(diffs, axis=1) > tol]
    diffs = diffs[diffs[:, 0] > tol] if ps.dim == 1 else diffs
    order = np.argsort(np.linalg.norm(diffs, axis=1), kind='stable')
    return diffs[order]


def _evaluate(ps: PointSet, basis: np.ndarray, tol: float, max_cosets: int):
    translates, labels, coverage = _cosets(ps.points, basis, tol, max_cosets)
    if coverage > 0:
        basis, translates = _refine(ps.points, basis, translates, labels)
        translates, labels, coverage = _cosets(ps.points, basis, tol, max_cosets)
    return basis, translates, labels, coverage


def lattice_candidates(ps: PointSet, tol: Optional[float] = None, max_cosets: Optional[int] = None,
                       config: RunConfig = DEFAULT_CONFIG) -> List[LatticeCandidate]:
    """Every 1D period candidate with its period fraction and coset coverage"""
    if ps.dim != 1:
        raise InvalidInputError("lattice_candidates scans one-dimensional sets; use fit_lattice")
    _require_points(ps)
    tol = _default_tol(ps, config) if tol is None else tol
    max_cosets = config.max_cosets if max_cosets is None else max_cosets
    tree = cKDTree(ps.points)
    out = []
    for v in _candidate_vectors(ps, max_cosets, tol):
        fraction = _period_fraction(ps, tree, v, tol)
        basis = v.reshape(1, 1)
        _, translates, _, coverage = _evaluate(ps, basis, tol, max_cosets)
        out.append(LatticeCandidate(basis=basis.tolist(), period_fraction=fraction, coverage=coverage,
                                    cosets=len(translates)))
    return out


def _require_points(ps: PointSet) -> None:
    if ps.size < 2 * (ps.dim + 1):
        raise EmptySetError(f"fit_lattice needs at least {2 * (ps.dim + 1)} points, got {ps.size}")


def _size_reduce(basis: np.ndarray) -> np.ndarray:
    basis = basis.copy()
    for i in range(1, len(basis)):
        for j in range(i - 1, -1, -1):
            mu = np.dot(basis[i], basis[j]) / np.dot(basis[j], basis[j])
            basis[i] -= np.rint(mu) * basis[j]
    return basis


def fit_lattice(ps: PointSet, tol: Optional[float] = None, max_cosets: Optional[int] = None,
                config: RunConfig = DEFAULT_CONFIG) -> LatticeFit:
    """
    Lattice L and at most max_cosets translates covering ps

    Periods are differences v with λ + v ∈ Λ for at least period_floor of
    the points. In 1D the shortest period wins; in higher dimension the
    shortest periods are taken greedily while they raise the rank, then
    size-reduced. Basis and translates are refined by least squares on the
    nearest-integer coefficients. A coverage below coverage_floor is a
    result (success False), not an error.
    """
    _require_points(ps)
    if ps.dim > 3:
        raise InvalidInputError("fit_lattice supports dimensions up to 3")
    tol = _default_tol(ps, config) if tol is None else tol
    max_cosets = config.max_cosets if max_cosets is None else max_cosets
    tree = cKDTree(ps.points)
    periods = []
    for v in _candidate_vectors(ps, max_cosets, tol):
        if _period_fraction(ps, tree, v, tol) < config.period_floor:
            continue
        trial = np.vstack(periods + [v])
        if np.linalg.matrix_rank(trial, tol=tol) > len(periods):
            periods.append(v)
        if len(periods) == ps.dim:
            break

    if len(periods) < ps.dim:
        candidates = lattice_candidates(ps, tol, max_cosets, config) if ps.dim == 1 else []
        best = max((c.coverage for c in candidates), default=0.0)
        logger.info("No lattice of periods found; best candidate coverage %.3g", best)
        return LatticeFit(lattice=None, translates=np.zeros((0, ps.dim)), labels=np.full(ps.size, -1),
                          coverage=best, success=False, tol=tol, candidates=candidates)

    basis = _size_reduce(np.vstack(periods))
    basis, translates, labels, coverage = _evaluate(ps, basis, tol, max_cosets)
    if ps.dim == 1 and basis[0, 0] < 0:
        basis = -basis
    return LatticeFit(lattice=Lattice(basis), translates=translates, labels=labels, coverage=coverage,
                      success=coverage >= config.coverage_floor, tol=tol)


# ---------------------------------------------------------------------------
# comb recovery
# ---------------------------------------------------------------------------

def assign_cosets(points: np.ndarray, lattice: Lattice, translates: np.ndarray, tol: float) -> np.ndarray:
    """Index of the coset L + τ_j within tol of each point (−1 if none)"""
    labels = np.full(len(points), -1, dtype=np.int64)
    best = np.full(len(points), np.inf)
    inv = np.linalg.inv(lattice.basis)
    for j, tau in enumerate(np.atleast_2d(translates)):
        c = (points - tau) @ inv
        dist = np.linalg.norm((c - np.rint(c)) @ lattice.basis, axis=1)
        closer = (dist <= tol) & (dist < best)
        labels[closer] = j
        best[closer] = dist[closer]
    return labels


def reduce_mod_dual(freqs: np.ndarray, lattice: Lattice) -> np.ndarray:
    """Frequencies reduced into the centred cell of L*"""
    dual = lattice.dual().basis
    c = freqs @ np.linalg.inv(dual)
    return (c - np.rint(c)) @ dual


def _omp(design: np.ndarray, target: np.ndarray, tol: float, max_terms: int) -> Tuple[List[int], np.ndarray, float]:
    """Greedy orthogonal matching pursuit; columns are unit modulus so correlations need no scaling"""
    selected: List[int] = []
    coeffs = np.zeros(0, dtype=complex)
    residual = target.copy()
    error = float(np.max(np.abs(residual))) if residual.size else 0.0
    while error > tol and len(selected) < min(max_terms, design.shape[1]):
        corr = np.abs(design.conj().T @ residual)
        corr[selected] = -1
        selected.append(int(np.argmax(corr)))
        coeffs, _, _, _ = lstsq(design[:, selected], target)
        residual = target - design[:, selected] @ coeffs
        error = float(np.max(np.abs(residual)))
    return selected, coeffs, error


def recover_comb(mu: DiscreteMeasure, spec: DiscreteMeasure, fit: Optional[LatticeFit] = None,
                 tol: Optional[float] = None, config: RunConfig = DEFAULT_CONFIG) -> CombRepresentation:
    """
    Fit μ as cosets of a lattice carrying trigonometric polynomials

    Candidate frequencies are the spectrum atoms reduced mod L*. Each coset
    is fitted by orthogonal matching pursuit until the max error is below
    tol (default fit_tol × max |weight|) or omp_max_terms is reached. A
    residual above tol, or atoms outside every coset, flag the result as
    non-representable at this scale.
    """
    if mu.size == 0:
        raise EmptySetError("recover_comb needs a non-empty measure")
    support = mu.support()
    fit = fit_lattice(support, config=config) if fit is None else fit
    scale = float(np.max(np.abs(mu.weights)))
    tol = config.fit_tol * max(scale, 1.0) if tol is None else tol
    if not fit.success or fit.lattice is None:
        logger.info("Support is not covered by %d cosets of one lattice (coverage %.3g)",
                    config.max_cosets, fit.coverage)
        return CombRepresentation(lattice=fit.lattice, translates=fit.translates, polys=[],
                                  residual=math.inf, representable=False, coverage=fit.coverage)

    lattice = fit.lattice
    labels = assign_cosets(mu.points, lattice, fit.translates, fit.tol)
    if spec.size:
        reduced, _ = merge_close(reduce_mod_dual(spec.points, lattice), np.ones(spec.size), config.match_tol)
    else:
        reduced = np.zeros((1, mu.dim))
    if not np.any(np.all(np.abs(reduced) <= config.match_tol, axis=1)):
        reduced = np.vstack([np.zeros((1, mu.dim)), reduced])

    polys, residual = [], 0.0
    for j in range(len(fit.translates)):
        members = labels == j
        pts, target = mu.points[members], mu.weights[members]
        phase = 2 * np.pi * (pts @ reduced.T)
        design = np.cos(phase) + 1j * np.sin(phase)
        selected, coeffs, error = _omp(design, target, tol, config.omp_max_terms)
        alive = np.abs(coeffs) >= PURGE
        polys.append(TrigPolynomial(reduced[selected][alive], coeffs[alive]))
        residual = max(residual, error)
    orphans = labels < 0
    if np.any(orphans):
        residual = max(residual, float(np.max(np.abs(mu.weights[orphans]))))
    representable = bool(residual <= tol and not np.any(orphans))
    if not representable:
        logger.info("Comb fit residual %.3g above tolerance %.3g (%d atoms off-coset)",
                    residual, tol, int(np.count_nonzero(orphans)))
    return CombRepresentation(lattice=lattice, translates=fit.translates, polys=polys, residual=residual,
                              representable=representable, coverage=float(np.mean(~orphans)))


def evaluate_representation(rep: CombRepresentation, points, tol: float = 1e-6) -> np.ndarray:
    """Weights the representation assigns to points (0 off every coset)"""
    points = as_points(points, None if rep.lattice is None else rep.lattice.dim)
    if rep.lattice is None or not rep.polys:
        return np.zeros(len(points), dtype=complex)
    labels = assign_cosets(points, rep.lattice, rep.translates, tol)
    out = np.zeros(len(points), dtype=complex)
    for j, poly in enumerate(rep.polys):
        members = labels == j
        if np.any(members):
            out[members] = poly(points[members])
    return out


def synthetic_comb(rep: CombRepresentation, box, config: RunConfig = DEFAULT_CONFIG) -> DiscreteMeasure:
    """Measure Σ_j Σ_{λ ∈ (L + τ_j) ∩ box} P_j(λ) δ_λ"""
    if rep.lattice is None:
        raise InvalidInputError("synthetic_comb needs a lattice")
    box = as_box(box, rep.lattice.dim)
    points, weights = [], []
    for tau, poly in zip(np.atleast_2d(rep.translates), rep.polys):
        _, pts = enumerate_lattice(rep.lattice, box - tau.reshape(-1, 1), config.enumeration_cap)
        pts = pts + tau
        points.append(pts)
        weights.append(poly(pts))
    return DiscreteMeasure.from_atoms(np.vstack(points), np.concatenate(weights), box, config.dedup_tol,
                                      purge=config.purge_threshold)


def synthetic_spectrum(rep: CombRepresentation, reach: int = 2) -> DiscreteMeasure:
    """Atoms at ω + k for every polynomial frequency ω and dual vectors k with coefficients |k_i| <= reach"""
    dual = rep.lattice.dual()
    n = dual.dim
    axes = [np.arange(-reach, reach + 1)] * n
    shifts = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, n) @ dual.basis
    points, weights = [], []
    for poly in rep.polys:
        for omega, c in zip(poly.freqs, poly.coeffs):
            points.append(omega + shifts)
            weights.append(np.full(len(shifts), c))
    if not points:
        raise EmptySetError("Representation has no polynomial terms")
    pts = np.vstack(points)
    box = np.column_stack([pts.min(axis=0) - 1, pts.max(axis=0) + 1])
    return DiscreteMeasure.from_atoms(pts, np.concatenate(weights), box)


def coset_cover_check(ps: PointSet, rep: CombRepresentation, tol: float = 1e-6) -> float:
    """Fraction of ps within tol of ∪_j (L + τ_j)"""
    if ps.size == 0 or rep.lattice is None or len(rep.translates) == 0:
        return 0.0
    return float(np.mean(assign_cosets(ps.points, rep.lattice, rep.translates, tol) >= 0))


# ---------------------------------------------------------------------------
# dichotomy
# ---------------------------------------------------------------------------

@dataclass
class DichotomyReport:
    verdict: str
    gap_curve: List[Tuple[float, int, float]]
    cluster_centers: np.ndarray
    cluster_cover_radius: float
    shrink_ratio: float
    relatively_dense: bool

    def to_dict(self) -> Dict[str, Any]:
        def num(x):
            return x if math.isfinite(x) else str(x)
        return {
            "verdict": self.verdict,
            "gap_curve": [[eps, count, num(gap)] for eps, count, gap in self.gap_curve],
            "cluster_centers": self.cluster_centers.tolist(),
            "cluster_cover_radius": num(self.cluster_cover_radius),
            "shrink_ratio": num(self.shrink_ratio),
            "relatively_dense": self.relatively_dense,
        }


def _cluster_centers(points: np.ndarray, scale: float) -> np.ndarray:
    if len(points) < 2 or not math.isfinite(scale):
        return np.zeros((0, points.shape[1]))
    pairs = cKDTree(points).query_pairs(scale, output_type='ndarray')
    n = len(points)
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n)) if len(pairs) \
        else coo_matrix((n, n))
    count, labels = connected_components(graph, directed=False)
    sizes = np.bincount(labels, minlength=count)
    centers = [points[labels == c].mean(axis=0) for c in range(count) if sizes[c] >= 2]
    return np.asarray(centers).reshape(-1, points.shape[1])


def dichotomy_report(spec: DiscreteMeasure, eps_levels: Sequence[float],
                     config: RunConfig = DEFAULT_CONFIG) -> DichotomyReport:
    """
    Uniformly discrete or accumulating spectrum, judged on ε-level spectra

    The minimum gap of {|weight| >= ε·max} is tracked as ε shrinks: a drop
    by dichotomy_ratio or more means accumulation, at most flat_ratio means
    uniformly discrete. Clusters are single-linkage groups at
    cluster_scale × (smallest gap) in the finest level; the covering radius
    of their centers says whether accumulation points are relatively dense.
    """
    eps = [float(e) for e in eps_levels]
    if len(eps) < 3 or any(a <= b for a, b in zip(eps, eps[1:])) or eps[-1] <= 0:
        raise InvalidInputError("eps_levels must be >= 3 positive, strictly decreasing levels")
    curve = gap_curve(spec, eps)
    empty = np.zeros((0, spec.dim))
    if curve[0][1] < 2:
        return DichotomyReport("inconclusive", curve, empty, math.inf, math.nan, False)
    first, last = curve[0][2], curve[-1][2]
    ratio = first / last if last > 0 else math.inf
    if ratio >= config.dichotomy_ratio:
        verdict = "accumulating"
    elif ratio <= config.flat_ratio:
        verdict = "uniformly_discrete"
    else:
        verdict = "inconclusive"

    finest = epsilon_spectrum(spec, eps[-1])
    centers = _cluster_centers(finest.points, config.cluster_scale * last)
    cover = math.inf
    if len(centers):
        region = shrink_box(spec.box, float(np.min(spec.box[:, 1] - spec.box[:, 0])) / 4)
        inside = PointSet(centers, spec.box.copy(), spec.dedup_tol)
        try:
            cover = covering_radius(inside, region, pitch=float(np.min(region[:, 1] - region[:, 0])) / 512,
                                    grid_cap=config.grid_cap)
        except InvalidInputError:
            cover = math.inf
    return DichotomyReport(verdict=verdict, gap_curve=curve, cluster_centers=centers,
                           cluster_cover_radius=cover, shrink_ratio=ratio,
                           relatively_dense=bool(cover <= config.cover_radius_limit))
