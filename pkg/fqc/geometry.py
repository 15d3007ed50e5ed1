"""
Geometry of discrete point sets

This module provides the point-set layer of the toolkit:
- PointSet and Lattice value types
- separation, covering radius and difference sets
- discreteness classification (uniformly discrete, Delone, FLC, Meyer)
- density functionals (rho, lower density, uniform density, BM upper density)

Every predicate about an infinite set is evaluated on a finite truncation
and the reports say so (``at_truncation_scale``).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Any

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree
from scipy.special import gamma as gamma_fn

from .config import RunConfig, DEFAULT_CONFIG
from .errors import DimensionError, EmptySetError, InvalidInputError, CapExceededError

logger = logging.getLogger(__name__)

MAX_DIM = 4


# ---------------------------------------------------------------------------
# boxes and atom merging
# ---------------------------------------------------------------------------

def as_box(box, dim: Optional[int] = None) -> np.ndarray:
    """Normalize a box spec to an (n, 2) float array of [lo, hi] rows"""
    arr = np.asarray(box, dtype=float)
    if arr.ndim == 0:
        half = float(arr)
        arr = np.array([[-half, half]] * (dim or 1))
    elif arr.ndim == 1:
        if arr.shape[0] != 2:
            raise InvalidInputError(f"Box must be [lo, hi] rows, got {box}")
        arr = np.tile(arr, (dim or 1, 1))
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidInputError(f"Box must have shape (n, 2), got {arr.shape}")
    if np.any(arr[:, 0] > arr[:, 1]):
        raise InvalidInputError(f"Box has lo > hi: {arr.tolist()}")
    return arr


def shrink_box(box: np.ndarray, margin: float) -> np.ndarray:
    """Box shrunk by margin on every side (may become empty)"""
    return np.column_stack([box[:, 0] + margin, box[:, 1] - margin])


def box_is_empty(box: np.ndarray) -> bool:
    return bool(np.any(box[:, 0] > box[:, 1]))


def inside_box(points: np.ndarray, box: np.ndarray, tol: float = 0.0) -> np.ndarray:
    """Boolean mask of points lying in the closed box (tolerance tol)"""
    if points.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    return np.all((points >= box[:, 0] - tol) & (points <= box[:, 1] + tol), axis=1)


def as_points(points, dim: Optional[int] = None) -> np.ndarray:
    """Normalize a point list to an (N, n) float array"""
    arr = np.asarray(points, dtype=float)
    if arr.size == 0:
        return np.zeros((0, dim or 1))
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1) if (dim in (None, 1)) else arr.reshape(1, -1)
    if arr.ndim != 2:
        raise InvalidInputError(f"Points must be an (N, n) array, got shape {arr.shape}")
    if arr.shape[1] > MAX_DIM:
        raise DimensionError(f"Dimension {arr.shape[1]} exceeds the supported maximum {MAX_DIM}")
    return arr


def merge_close(points: np.ndarray, weights: np.ndarray, tol: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Merge points closer than tol, summing their weights

    Points are first snapped to a tol grid (exact duplicates collapse in one
    pass), then representatives within tol are joined by connected
    components. Output is in lexicographic order of the snapped keys and the
    representative of a group is its first member, so the result does not
    depend on anything but the input order.
    """
    if points.shape[0] == 0:
        return points.copy(), weights.copy()
    keys = np.round(points / tol).astype(np.int64)
    _, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
    inverse = inverse.reshape(-1)
    reps = points[first]
    summed = _group_sum(weights, inverse, len(first))

    if reps.shape[0] > 1:
        pairs = cKDTree(reps).query_pairs(tol, output_type='ndarray')
        if len(pairs):
            n = reps.shape[0]
            graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
            count, labels = connected_components(graph, directed=False)
            _, leader = np.unique(labels, return_index=True)
            order = np.argsort(leader, kind='stable')
            relabel = np.empty(count, dtype=np.int64)
            relabel[order] = np.arange(count)
            labels = relabel[labels]
            reps = reps[np.sort(leader)]
            summed = _group_sum(summed, labels, count)
    return reps, summed


def _group_sum(weights: np.ndarray, labels: np.ndarray, count: int) -> np.ndarray:
    if np.iscomplexobj(weights):
        return (np.bincount(labels, weights.real, count)
                + 1j * np.bincount(labels, weights.imag, count))
    total = np.bincount(labels, weights.astype(float), count)
    if np.issubdtype(weights.dtype, np.integer):
        return np.rint(total).astype(np.int64)
    return total


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class PointSet:
    """Finite point set in R^n with its truncation box and dedup tolerance"""
    points: np.ndarray
    box: np.ndarray
    dedup_tol: float = 1e-9

    @classmethod
    def from_points(cls, points, box=None, dedup_tol: float = DEFAULT_CONFIG.dedup_tol) -> "PointSet":
        """Build a PointSet: drop points outside box, merge points within dedup_tol"""
        dim = None if box is None else np.atleast_2d(np.asarray(box, dtype=float)).shape[0]
        pts = as_points(points, dim)
        if box is None:
            if pts.shape[0] == 0:
                raise EmptySetError("Cannot infer a box from an empty point list")
            box = np.column_stack([pts.min(axis=0), pts.max(axis=0)])
        box = as_box(box, pts.shape[1])
        if pts.shape[0] and pts.shape[1] != box.shape[0]:
            raise DimensionError(f"Points have dimension {pts.shape[1]}, box has {box.shape[0]}")
        pts = pts[inside_box(pts, box, dedup_tol)]
        if pts.shape[0] == 0:
            pts = np.zeros((0, box.shape[0]))
        pts, _ = merge_close(pts, np.ones(pts.shape[0], dtype=np.int64), dedup_tol)
        return cls(points=pts, box=box, dedup_tol=dedup_tol)

    @property
    def dim(self) -> int:
        return self.box.shape[0]

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def __len__(self) -> int:
        return self.size

    def restrict(self, box) -> "PointSet":
        box = as_box(box, self.dim)
        keep = inside_box(self.points, box, self.dedup_tol)
        return PointSet(self.points[keep], box, self.dedup_tol)

    def scaled(self, c: float) -> "PointSet":
        return PointSet(self.points * c, np.sort(self.box * c, axis=1), self.dedup_tol * abs(c))

    def translated(self, v) -> "PointSet":
        v = np.asarray(v, dtype=float).reshape(1, -1)
        return PointSet(self.points + v, self.box + v.reshape(-1, 1), self.dedup_tol)

    def to_dict(self) -> Dict[str, Any]:
        return {"dim": self.dim, "box": self.box.tolist(), "points": self.points.tolist()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any], dedup_tol: float = DEFAULT_CONFIG.dedup_tol) -> "PointSet":
        dim = int(data["dim"])
        pts = np.asarray(data.get("points", []), dtype=float).reshape(-1, dim)
        return cls.from_points(pts, data["box"], dedup_tol)


@dataclass(eq=False)
class Lattice:
    """Lattice spanned by the rows of an invertible n x n basis"""
    basis: np.ndarray

    def __post_init__(self):
        self.basis = np.atleast_2d(np.asarray(self.basis, dtype=float))
        n, m = self.basis.shape
        if n != m:
            raise InvalidInputError(f"Lattice basis must be square, got {self.basis.shape}")
        if abs(np.linalg.det(self.basis)) < 1e-300:
            raise InvalidInputError("Lattice basis is singular")

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def det(self) -> float:
        return float(abs(np.linalg.det(self.basis)))

    def dual(self) -> "Lattice":
        """Dual lattice {y : <x, y> in Z for all x}; rows of inv(B)^T"""
        return Lattice(np.linalg.inv(self.basis).T)

    def coefficients(self, x) -> np.ndarray:
        """Real coefficients c with x = c @ basis"""
        return np.asarray(x, dtype=float) @ np.linalg.inv(self.basis)

    def points(self, coeffs) -> np.ndarray:
        return np.asarray(coeffs, dtype=float) @ self.basis

    def scaled(self, c: float) -> "Lattice":
        return Lattice(self.basis * c)

    def to_dict(self) -> Dict[str, Any]:
        return {"basis": self.basis.tolist(), "det": self.det}


@dataclass
class DiscretenessReport:
    """Verdicts of classify(); every verdict holds at truncation scale only"""
    min_sep: float
    covering_radius: float
    covering_error: float
    is_uniformly_discrete: bool
    is_relatively_dense: bool
    is_delone: bool
    is_flc: bool
    is_meyer: bool
    difference_gap: float
    meyer_gap: float
    witnesses: Dict[str, List[List[float]]] = field(default_factory=dict)
    at_truncation_scale: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "min_sep": _finite_or_str(self.min_sep),
            "covering_radius": _finite_or_str(self.covering_radius),
            "covering_error": self.covering_error,
            "is_uniformly_discrete": self.is_uniformly_discrete,
            "is_relatively_dense": self.is_relatively_dense,
            "is_delone": self.is_delone,
            "is_flc": self.is_flc,
            "is_meyer": self.is_meyer,
            "difference_gap": _finite_or_str(self.difference_gap),
            "meyer_gap": _finite_or_str(self.meyer_gap),
            "witnesses": self.witnesses,
            "at_truncation_scale": self.at_truncation_scale,
        }


@dataclass
class LowerDensity:
    value: float
    radii: List[float]
    values: List[float]


@dataclass
class UniformDensity:
    mean: float
    max_deviation: float
    converged: bool
    centers_used: int


@dataclass
class DensityReport:
    """Density functionals of a point set (1D entries are None in higher dimension)"""
    rho: Optional[float]
    lower_density: Optional[float]
    lower_density_sequence: Optional[List[float]]
    uniform_density: float
    uniform_density_deviation: float
    uniform_density_converged: bool
    bm_upper_density: Optional[float]
    bm_is_lower_bound: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass
class DifferenceSet:
    """Truncated Λ−Λ with multiplicities (symmetric, always contains 0)"""
    points: PointSet
    multiplicities: np.ndarray


def _finite_or_str(value: float):
    return value if math.isfinite(value) else str(value)


# ---------------------------------------------------------------------------
# separation, covering, differences
# ---------------------------------------------------------------------------

def nearest_pair(ps: PointSet) -> Tuple[float, Optional[Tuple[int, int]]]:
    """Smallest distance between distinct points and the pair realising it"""
    if ps.size < 2:
        return math.inf, None
    dist, idx = cKDTree(ps.points).query(ps.points, k=2)
    i = int(np.argmin(dist[:, 1]))
    return float(dist[i, 1]), (i, int(idx[i, 1]))


def min_separation(ps: PointSet) -> float:
    """d(Λ): infimum of distances between distinct points; inf (flagged) below two points"""
    sep, _ = nearest_pair(ps)
    if not math.isfinite(sep):
        logger.debug("min_separation on %d point(s): defined as infinite", ps.size)
    return sep


def _covering_scan(ps: PointSet, region, pitch: Optional[float] = None,
                   grid_cap: int = DEFAULT_CONFIG.grid_cap) -> Tuple[float, np.ndarray, float]:
    if ps.size == 0:
        raise EmptySetError("covering_radius needs a non-empty point set")
    region = as_box(region, ps.dim)
    if box_is_empty(region):
        raise InvalidInputError("covering_radius region is empty")
    if np.any(region[:, 0] < ps.box[:, 0] - ps.dedup_tol) or np.any(region[:, 1] > ps.box[:, 1] + ps.dedup_tol):
        raise InvalidInputError("covering_radius region must lie inside the point-set box")
    if pitch is None:
        sep = min_separation(ps)
        pitch = sep / 4 if math.isfinite(sep) else float(np.max(region[:, 1] - region[:, 0])) / 64 or 1.0
    widths = region[:, 1] - region[:, 0]
    counts = np.maximum(np.ceil(widths / pitch).astype(np.int64) + 1, 2)
    total = int(np.prod(counts))
    if total > grid_cap:
        scale = (total / grid_cap) ** (1.0 / ps.dim)
        counts = np.maximum((counts / scale).astype(np.int64), 2)
        logger.debug("covering grid coarsened by %.2f to respect grid cap %d", scale, grid_cap)
    axes = [np.linspace(lo, hi, int(c)) for (lo, hi), c in zip(region, counts)]
    actual_pitch = max(float(a[1] - a[0]) for a in axes)
    grid = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, ps.dim)
    dist, _ = cKDTree(ps.points).query(grid)
    worst = int(np.argmax(dist))
    radius = float(dist[worst])
    error = actual_pitch * math.sqrt(ps.dim)
    margin = float(np.min(np.minimum(region[:, 0] - ps.box[:, 0], ps.box[:, 1] - region[:, 1])))
    if margin < radius:
        logger.warning("covering region margin %.4g is below the radius %.4g: edge effects possible",
                       margin, radius)
    return radius, grid[worst], error


def covering_radius(ps: PointSet, region, pitch: Optional[float] = None,
                    grid_cap: int = DEFAULT_CONFIG.grid_cap) -> float:
    """Sup over a grid in region (pitch <= min_sep/4) of the distance to the nearest point"""
    radius, _, _ = _covering_scan(ps, region, pitch, grid_cap)
    return radius


def orient_positive(diffs: np.ndarray, tol: float) -> np.ndarray:
    """Flip each vector so its first coordinate above tol in magnitude is positive"""
    out = diffs.copy()
    decided = np.zeros(len(out), dtype=bool)
    for axis in range(out.shape[1]):
        col = out[:, axis]
        flip = ~decided & (col < -tol)
        keep = ~decided & (col > tol)
        out[flip] *= -1
        decided |= flip | keep
    return out


def difference_set(ps: PointSet, cap_radius: float) -> DifferenceSet:
    """All λ'−λ with |λ'−λ| <= cap_radius, merged at dedup_tol, with multiplicities"""
    if cap_radius <= 0:
        raise InvalidInputError(f"cap_radius must be > 0, got {cap_radius}")
    n = ps.dim
    box = np.array([[-cap_radius, cap_radius]] * n)
    if ps.size == 0:
        return DifferenceSet(PointSet(np.zeros((0, n)), box, ps.dedup_tol), np.zeros(0, dtype=np.int64))
    half = np.zeros((0, n))
    mult = np.zeros(0, dtype=np.int64)
    if ps.size > 1:
        pairs = cKDTree(ps.points).query_pairs(cap_radius * (1 + 1e-12), output_type='ndarray')
        if len(pairs):
            diffs = ps.points[pairs[:, 1]] - ps.points[pairs[:, 0]]
            diffs = diffs[np.linalg.norm(diffs, axis=1) <= cap_radius + ps.dedup_tol]
            diffs = orient_positive(diffs, ps.dedup_tol)
            half, mult = merge_close(diffs, np.ones(len(diffs), dtype=np.int64), ps.dedup_tol)
    points = np.vstack([np.zeros((1, n)), half, -half])
    counts = np.concatenate([[ps.size], mult, mult]).astype(np.int64)
    return DifferenceSet(PointSet(points, box, ps.dedup_tol), counts)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def classify(ps: PointSet, config: RunConfig = DEFAULT_CONFIG) -> DiscretenessReport:
    """
    Delone / FLC / Meyer verdicts at truncation scale

    FLC: the difference set inside radius flc_radius_factor * (median
    nearest-neighbour spacing) has its minimum gap above gap_floor * d(Λ).
    Meyer: the same test on the difference set out to half the box, plus
    Delone and FLC.
    """
    if ps.size == 0:
        raise EmptySetError("classify needs a non-empty point set")
    witnesses: Dict[str, List[List[float]]] = {}
    sep, pair = nearest_pair(ps)
    if ps.size >= 2:
        nn, _ = cKDTree(ps.points).query(ps.points, k=2)
        spacing = float(np.median(nn[:, 1]))
    else:
        spacing = math.inf
    uniformly_discrete = sep > max(ps.dedup_tol, config.gap_floor * spacing) if pair else True
    if pair and not uniformly_discrete:
        witnesses["uniformly_discrete"] = [ps.points[pair[0]].tolist(), ps.points[pair[1]].tolist()]

    half_widths = (ps.box[:, 1] - ps.box[:, 0]) / 2
    margin = float(np.min(half_widths)) / 2
    region = shrink_box(ps.box, margin)
    cover, far_point, cover_error = math.inf, None, 0.0
    if ps.size >= 2 and not box_is_empty(region):
        pitch = sep / 4 if math.isfinite(sep) else None
        cover, far_point, cover_error = _covering_scan(ps, region, pitch, config.grid_cap)
    relatively_dense = bool(math.isfinite(cover) and cover <= margin)
    if not relatively_dense:
        witnesses["relatively_dense"] = [far_point.tolist()] if far_point is not None else []

    diff_gap, meyer_gap = math.inf, math.inf
    flc = meyer = False
    if ps.size >= 2:
        flc_radius = min(config.flc_radius_factor * spacing, float(np.min(half_widths)))
        diff_gap, diff_pair = _difference_gap(ps, flc_radius)
        flc = diff_gap >= config.gap_floor * sep
        if not flc and diff_pair is not None:
            witnesses["flc"] = diff_pair
        meyer_radius = max(float(np.min(half_widths)), flc_radius)
        meyer_gap, meyer_pair = _difference_gap(ps, meyer_radius)
        meyer_ud = meyer_gap >= config.gap_floor * sep
        if not meyer_ud and meyer_pair is not None:
            witnesses["meyer"] = meyer_pair
        delone = uniformly_discrete and relatively_dense
        meyer = bool(meyer_ud and delone and flc)
    delone = bool(uniformly_discrete and relatively_dense)
    return DiscretenessReport(
        min_sep=sep, covering_radius=cover, covering_error=cover_error,
        is_uniformly_discrete=bool(uniformly_discrete), is_relatively_dense=relatively_dense,
        is_delone=delone, is_flc=bool(flc), is_meyer=meyer,
        difference_gap=diff_gap, meyer_gap=meyer_gap, witnesses=witnesses,
    )


def _difference_gap(ps: PointSet, radius: float) -> Tuple[float, Optional[List[List[float]]]]:
    diffs = difference_set(ps, radius).points
    gap, pair = nearest_pair(diffs)
    if pair is None:
        return math.inf, None
    return gap, [diffs.points[pair[0]].tolist(), diffs.points[pair[1]].tolist()]


# ---------------------------------------------------------------------------
# densities
# ---------------------------------------------------------------------------

def _require_1d(ps: PointSet, name: str) -> np.ndarray:
    if ps.dim != 1:
        raise DimensionError(f"{name} is defined for dimension 1 only, got {ps.dim}")
    return np.sort(ps.points[:, 0])


def rho_density(ps: PointSet) -> float:
    """sup_x #(Λ ∩ [x, x+1]) via a window anchored at each point"""
    x = _require_1d(ps, "rho_density")
    if x.size == 0:
        return 0.0
    ends = np.searchsorted(x, x + 1 + ps.dedup_tol, side='right')
    return float(np.max(ends - np.arange(x.size)))


def lower_density(ps: PointSet) -> LowerDensity:
    """#(Λ ∩ (−R, R)) / 2R at R = box half-width, with R/2 and R/4 for convergence"""
    x = _require_1d(ps, "lower_density")
    lo, hi = ps.box[0]
    if abs(lo + hi) > max(ps.dedup_tol, 1e-12 * (hi - lo)):
        raise InvalidInputError(f"lower_density needs a box symmetric about 0, got [{lo}, {hi}]")
    R = float(hi)
    radii = [R, R / 2, R / 4]
    values = [float(np.count_nonzero(np.abs(x) < r - ps.dedup_tol)) / (2 * r) if r > 0 else 0.0
              for r in radii]
    return LowerDensity(value=values[0], radii=radii, values=values)


def ball_volume(radius: float, dim: int) -> float:
    return math.pi ** (dim / 2) * radius ** dim / float(gamma_fn(dim / 2 + 1))


def uniform_density(ps: PointSet, ball_radius: float, num_centers: int, seed: int = 0,
                    margin: Optional[float] = None, tolerance: float = DEFAULT_CONFIG.density_convergence
                    ) -> UniformDensity:
    """
    Mean of #(Λ ∩ B(x, r)) / vol(B) over random interior centers

    Centers avoid the box edge by ball_radius plus a margin (default: the
    largest nearest-neighbour gap, a stand-in for the covering radius).
    """
    if ball_radius <= 0:
        raise InvalidInputError("ball_radius must be > 0")
    if ps.size == 0:
        raise EmptySetError("uniform_density needs a non-empty point set")
    if margin is None:
        if ps.size >= 2:
            nn, _ = cKDTree(ps.points).query(ps.points, k=2)
            margin = float(np.max(nn[:, 1]))
        else:
            margin = 0.0
    region = shrink_box(ps.box, ball_radius + margin)
    if box_is_empty(region) or num_centers < 2:
        raise EmptySetError(
            f"Too few interior centers: box {ps.box.tolist()} cannot hold balls of radius {ball_radius}")
    rng = np.random.default_rng(seed)
    centers = rng.uniform(region[:, 0], region[:, 1], size=(num_centers, ps.dim))
    counts = cKDTree(ps.points).query_ball_point(centers, ball_radius, return_length=True)
    densities = np.asarray(counts, dtype=float) / ball_volume(ball_radius, ps.dim)
    mean = float(np.mean(densities))
    deviation = float(np.max(np.abs(densities - mean)))
    return UniformDensity(mean=mean, max_deviation=deviation,
                          converged=bool(mean > 0 and deviation < tolerance * mean),
                          centers_used=num_centers)


def bm_upper_density(ps: PointSet, ratios: Sequence[float] = (1.0, 0.5, 0.25, 0.125),
                     start: float = 1.0, substantial_mass: float = 1.0) -> float:
    """
    Heuristic lower bound on the Beurling-Malliavin upper density D*

    For each ratio θ the disjoint intervals I = (a, a(1+θ)), a = start,
    start(1+θ), ... on each side of the origin (up to the box edge) have
    terms (|I|/(1 + dist(0, I)))^2 bounded below, so any infinite subfamily
    is substantial. At box scale a subfamily counts as substantial once its
    terms add up to substantial_mass. Each interval reports
    (#(Λ ∩ I) − 1)/|I|, which never exceeds the density of a set with at
    most one extra point per interval; the estimate is the largest d whose
    intervals with ratio >= d reach substantial_mass.
    """
    x = _require_1d(ps, "bm_upper_density")
    if substantial_mass <= 0:
        raise InvalidInputError("substantial_mass must be > 0")
    lo, hi = ps.box[0]
    tol = ps.dedup_tol
    best = 0.0
    for theta in ratios:
        ratio_values, masses = [], []
        for sign, edge in ((1.0, hi), (-1.0, -lo)):
            a = start
            while a * (1 + theta) <= edge:
                b = a * (1 + theta)
                left, right = (a, b) if sign > 0 else (-b, -a)
                count = np.searchsorted(x, right - tol, side='left') - np.searchsorted(x, left + tol, side='right')
                ratio_values.append(max(count - 1, 0) / (b - a))
                masses.append(((b - a) / (1 + a)) ** 2)
                a = b
        if not ratio_values:
            continue
        order = np.argsort(ratio_values, kind='stable')[::-1]
        cumulative = np.cumsum(np.asarray(masses)[order])
        if cumulative[-1] < substantial_mass:
            continue
        k = int(np.searchsorted(cumulative, substantial_mass))
        best = max(best, float(np.asarray(ratio_values)[order][k]))
    return best


def density_report(ps: PointSet, ball_radius: Optional[float] = None, num_centers: int = 64,
                   config: RunConfig = DEFAULT_CONFIG) -> DensityReport:
    """All density functionals in one report (1D-only entries are None otherwise)"""
    if ball_radius is None:
        ball_radius = float(np.min(ps.box[:, 1] - ps.box[:, 0])) / 8
    uniform = uniform_density(ps, ball_radius, num_centers, seed=config.seed,
                              tolerance=config.density_convergence)
    rho = lower = bm = sequence = None
    if ps.dim == 1:
        rho = rho_density(ps)
        if abs(ps.box[0, 0] + ps.box[0, 1]) <= 1e-12 * (ps.box[0, 1] - ps.box[0, 0]):
            ld = lower_density(ps)
            lower, sequence = ld.value, ld.values
        bm = bm_upper_density(ps)
    return DensityReport(rho=rho, lower_density=lower, lower_density_sequence=sequence,
                         uniform_density=uniform.mean, uniform_density_deviation=uniform.max_deviation,
                         uniform_density_converged=uniform.converged, bm_upper_density=bm)
