"""
Cut-and-project schemes

A scheme is a lattice Γ in R^(n+m) with the coordinate projections p1
(first n coordinates) and p2 (last m). Model sets, model measures and
their predicted spectra are all built by enumerating lattice points in a
box of R^(n+m); `enumerate_lattice` does this exactly, one slab per prefix
of basis coefficients.

The nowhere-dense construction at the end of the module produces a
positive window whose predicted spectrum avoids a prescribed family of
balls.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from .config import RunConfig, DEFAULT_CONFIG
from .errors import BudgetError, CapExceededError, DimensionError, InvalidInputError, WindowError
from .geometry import Lattice, PointSet, as_box, ball_volume
from .measures import DiscreteMeasure
from .windows import WindowFunction, surrogate

logger = logging.getLogger(__name__)

PHI = (1 + math.sqrt(5)) / 2
SLACK = 0.1


# ---------------------------------------------------------------------------
# lattice enumeration
# ---------------------------------------------------------------------------

def enumerate_lattice(lattice: Lattice, box, cap: int = DEFAULT_CONFIG.enumeration_cap
                      ) -> Tuple[np.ndarray, np.ndarray]:
    """
    All lattice points inside a box of R^d, with their integer coefficients

    Coefficients of the box corners bound the search (10% slack). Every
    prefix of all-but-the-last coefficient is a slab; in each slab the box
    constraints are linear in the last coefficient, so its integer range is
    solved exactly. Output order is lexicographic in the coefficients.
    """
    B = lattice.basis
    d = lattice.dim
    box = as_box(box, d)
    corners = np.array(list(itertools.product(*box)))
    coeffs = corners @ np.linalg.inv(B)
    span = coeffs.max(axis=0) - coeffs.min(axis=0)
    c_lo = np.floor(coeffs.min(axis=0) - SLACK * span - 1).astype(np.int64)
    c_hi = np.ceil(coeffs.max(axis=0) + SLACK * span + 1).astype(np.int64)

    prefix_sizes = c_hi[:-1] - c_lo[:-1] + 1
    prefix_count = int(np.prod(prefix_sizes)) if d > 1 else 1
    if prefix_count > cap:
        raise CapExceededError(f"Lattice enumeration needs {prefix_count} coefficient slabs (cap {cap})",
                               "use a smaller box")
    if d > 1:
        axes = [np.arange(lo, hi + 1) for lo, hi in zip(c_lo[:-1], c_hi[:-1])]
        prefixes = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, d - 1)
        partial = prefixes @ B[:-1]
    else:
        prefixes = np.zeros((1, 0), dtype=np.int64)
        partial = np.zeros((1, d))

    last = B[-1]
    lower = np.full(len(partial), float(c_lo[-1]))
    upper = np.full(len(partial), float(c_hi[-1]))
    feasible = np.ones(len(partial), dtype=bool)
    for j in range(d):
        lo_j = box[j, 0] - partial[:, j]
        hi_j = box[j, 1] - partial[:, j]
        if abs(last[j]) < 1e-300:
            feasible &= (lo_j <= 0) & (hi_j >= 0)
        elif last[j] > 0:
            lower = np.maximum(lower, lo_j / last[j])
            upper = np.minimum(upper, hi_j / last[j])
        else:
            lower = np.maximum(lower, hi_j / last[j])
            upper = np.minimum(upper, lo_j / last[j])
    start = np.ceil(lower - 1e-9).astype(np.int64)
    stop = np.floor(upper + 1e-9).astype(np.int64)
    counts = np.where(feasible, np.maximum(stop - start + 1, 0), 0)
    total = int(counts.sum())
    if total > cap:
        raise CapExceededError(f"Lattice enumeration would produce {total} points (cap {cap})",
                               "use a smaller box")
    rows = np.repeat(np.arange(len(partial)), counts)
    offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    last_coeff = np.repeat(start, counts) + offsets
    out_coeffs = np.column_stack([prefixes[rows], last_coeff]).astype(np.int64)
    points = out_coeffs @ B
    keep = np.all((points >= box[:, 0]) & (points <= box[:, 1]), axis=1)
    return out_coeffs[keep], points[keep]


# ---------------------------------------------------------------------------
# schemes
# ---------------------------------------------------------------------------

@dataclass
class InjectivityCertificate:
    radius: int
    p1_injective: bool
    p2_injective: bool
    p1_min_gap: float
    p2_min_gap: float


@dataclass
class DensityCertificate:
    """p2(Γ) is dense when its smallest non-zero element keeps shrinking with the radius"""
    radius: int
    dense: bool
    min_nonzero: float
    min_nonzero_quarter: float


@dataclass(eq=False)
class CutProjectScheme:
    """Lattice Γ ⊂ R^(n+m), projections onto the first n / last m coordinates, window boxes"""
    lattice: Lattice
    n: int
    m: int
    window: List[np.ndarray] = field(default_factory=list)
    certify_radius: int = 40
    injectivity: Optional[InjectivityCertificate] = None
    density: Optional[DensityCertificate] = None

    def __post_init__(self):
        if self.lattice.dim != self.n + self.m:
            raise DimensionError(f"Lattice dimension {self.lattice.dim} != n + m = {self.n + self.m}")
        if self.n < 1 or self.m < 1:
            raise DimensionError("Both physical and internal dimensions must be >= 1")
        self.window = [as_box(w, self.m) for w in self.window]
        if self.certify_radius > 0:
            self.injectivity = check_injectivity(self, self.certify_radius)
            self.density = check_density(self, self.certify_radius)
            if not (self.injectivity.p1_injective and self.injectivity.p2_injective):
                logger.warning("Projections are not injective on the certificate ball (radius %d)",
                               self.certify_radius)
            if not self.density.dense:
                logger.warning("p2(Γ) does not look dense: smallest non-zero |p2| stays at %.4g",
                               self.density.min_nonzero)

    @property
    def det(self) -> float:
        return self.lattice.det

    def dual(self) -> Lattice:
        return self.lattice.dual()

    def p1(self, x: np.ndarray) -> np.ndarray:
        return x[:, :self.n]

    def p2(self, x: np.ndarray) -> np.ndarray:
        return x[:, self.n:]

    def window_volume(self) -> float:
        """Sum of the box volumes (boxes assumed disjoint)"""
        return float(sum(np.prod(w[:, 1] - w[:, 0]) for w in self.window))

    def with_window(self, window) -> "CutProjectScheme":
        scheme = CutProjectScheme(self.lattice, self.n, self.m, window, certify_radius=0)
        scheme.injectivity, scheme.density = self.injectivity, self.density
        return scheme

    def to_dict(self) -> Dict[str, Any]:
        return {
            "basis": self.lattice.basis.tolist(),
            "n": self.n,
            "m": self.m,
            "window": [w.tolist() for w in self.window],
            "det": self.det,
            "certificate_radius": self.certify_radius,
            "injective": None if self.injectivity is None else
            bool(self.injectivity.p1_injective and self.injectivity.p2_injective),
            "dense": None if self.density is None else self.density.dense,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CutProjectScheme":
        return cls(Lattice(np.asarray(data["basis"], dtype=float)), int(data["n"]), int(data["m"]),
                   [np.asarray(w, dtype=float) for w in data.get("window", [])])


def _coefficient_cube(scheme: CutProjectScheme, radius: int) -> np.ndarray:
    d = scheme.lattice.dim
    axes = [np.arange(-radius, radius + 1)] * d
    coeffs = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, d)
    return coeffs @ scheme.lattice.basis


def _min_gap(values: np.ndarray) -> float:
    if len(values) < 2:
        return math.inf
    dist, _ = cKDTree(values).query(values, k=2)
    return float(dist[:, 1].min())


def check_injectivity(scheme: CutProjectScheme, radius: int = 40,
                      tol: float = DEFAULT_CONFIG.dedup_tol) -> InjectivityCertificate:
    """Pairwise scan of p1 and p2 on the coefficient cube |c_i| <= radius"""
    points = _coefficient_cube(scheme, radius)
    g1, g2 = _min_gap(scheme.p1(points)), _min_gap(scheme.p2(points))
    return InjectivityCertificate(radius=radius, p1_injective=g1 > tol, p2_injective=g2 > tol,
                                  p1_min_gap=g1, p2_min_gap=g2)


def check_density(scheme: CutProjectScheme, radius: int = 40,
                  tol: float = DEFAULT_CONFIG.dedup_tol) -> DensityCertificate:
    """Compare the smallest non-zero |p2| on the cubes of radius r and r/4"""
    def smallest(r):
        norms = np.linalg.norm(scheme.p2(_coefficient_cube(scheme, r)), axis=1)
        norms = norms[norms > tol]
        return float(norms.min()) if norms.size else math.inf

    full, quarter = smallest(radius), smallest(max(radius // 4, 1))
    dense = bool(math.isfinite(full) and full < 0.5 * quarter)
    return DensityCertificate(radius=radius, dense=dense, min_nonzero=full, min_nonzero_quarter=quarter)


def fibonacci_scheme(window: Sequence[float] = (-1 / PHI, 1.0), certify_radius: int = 40) -> CutProjectScheme:
    """Γ = {(a + bφ, a − b/φ)}; det Γ = φ + 1/φ = √5"""
    basis = np.array([[1.0, 1.0], [PHI, -1.0 / PHI]])
    return CutProjectScheme(Lattice(basis), 1, 1, [np.array([window], dtype=float)],
                            certify_radius=certify_radius)


# ---------------------------------------------------------------------------
# model sets and measures
# ---------------------------------------------------------------------------

def _normalize_window(scheme: CutProjectScheme, window) -> List[np.ndarray]:
    if window is None:
        return scheme.window
    arr = np.asarray(window, dtype=float)
    if arr.size == 0:
        return []
    if arr.ndim == 1:
        return [as_box(arr, scheme.m)]
    if arr.ndim == 2 and scheme.m == 1 and arr.shape[1] == 2:
        return [as_box(row, 1) for row in arr]
    return [as_box(w, scheme.m) for w in arr]


def _lift_box(box: np.ndarray, internal: np.ndarray) -> np.ndarray:
    return np.vstack([box, internal])


def _in_window(values: np.ndarray, window: List[np.ndarray]) -> np.ndarray:
    """Half-open boxes [lo, hi)"""
    mask = np.zeros(len(values), dtype=bool)
    for w in window:
        mask |= np.all((values >= w[:, 0]) & (values < w[:, 1]), axis=1)
    return mask


def model_set(scheme: CutProjectScheme, window=None, box=10.0,
              config: RunConfig = DEFAULT_CONFIG) -> PointSet:
    """Λ(Γ, Ω) ∩ box = {p1(γ) : p2(γ) ∈ Ω}, windows read as half-open boxes"""
    box = as_box(box, scheme.n)
    boxes = [w for w in _normalize_window(scheme, window) if np.all(w[:, 1] > w[:, 0])]
    if not boxes:
        return PointSet(np.zeros((0, scheme.n)), box, config.dedup_tol)
    internal = np.column_stack([np.min([w[:, 0] for w in boxes], axis=0),
                                np.max([w[:, 1] for w in boxes], axis=0)])
    _, points = enumerate_lattice(scheme.lattice, _lift_box(box, internal), config.enumeration_cap)
    keep = _in_window(scheme.p2(points), boxes)
    return PointSet.from_points(scheme.p1(points)[keep], box, config.dedup_tol)


def _require_line(scheme: CutProjectScheme) -> None:
    if scheme.m != 1:
        raise DimensionError("Window functions are defined on a one-dimensional internal space")


def model_measure(scheme: CutProjectScheme, wf: WindowFunction, box=10.0,
                  config: RunConfig = DEFAULT_CONFIG) -> DiscreteMeasure:
    """μ = Σ φ̂(p2(γ)) δ_{p1(γ)} over lattice points with p1(γ) in box"""
    _require_line(scheme)
    lo, hi = wf.support
    if wf.transform is None:
        raise WindowError(f"Window '{wf.kind}' has no closed-form transform for model measure weights")
    if scheme.window and not any(w[0, 0] <= lo and hi <= w[0, 1] for w in scheme.window):
        raise WindowError(f"Transform support [{lo}, {hi}] is not inside the scheme window "
                          f"{[w.tolist() for w in scheme.window]}")
    box = as_box(box, scheme.n)
    _, points = enumerate_lattice(scheme.lattice, _lift_box(box, np.array([[lo, hi]])), config.enumeration_cap)
    weights = wf.transform(scheme.p2(points)[:, 0])
    return DiscreteMeasure.from_atoms(scheme.p1(points), weights, box, config.dedup_tol,
                                      purge=config.purge_threshold)


def predicted_spectrum(scheme: CutProjectScheme, wf: WindowFunction, freq_box=5.0,
                       config: RunConfig = DEFAULT_CONFIG) -> DiscreteMeasure:
    """
    μ̂ = (1/det Γ) Σ φ(p2(γ*)) δ_{p1(γ*)} over the dual lattice

    Dual points are enumerated out to the internal radius where |φ| drops
    below purge_threshold·det Γ, capped at truncation_radius.
    """
    _require_line(scheme)
    det = scheme.det
    radius = wf.decay_radius(config.purge_threshold * det)
    if not math.isfinite(radius):
        raise WindowError(f"Window '{wf.kind}' does not decay: its spectrum cannot be truncated")
    if radius > config.truncation_radius:
        logger.info("Dual enumeration truncated at internal radius %.4g (decay radius %.4g)",
                    config.truncation_radius, radius)
        radius = config.truncation_radius
    freq_box = as_box(freq_box, scheme.n)
    _, points = enumerate_lattice(scheme.dual(), _lift_box(freq_box, np.array([[-radius, radius]])),
                                  config.enumeration_cap)
    weights = wf(scheme.p2(points)[:, 0]) / det
    return DiscreteMeasure.from_atoms(scheme.p1(points), weights, freq_box, config.dedup_tol,
                                      purge=config.purge_threshold)


# ---------------------------------------------------------------------------
# nowhere-dense spectrum construction
# ---------------------------------------------------------------------------

def t_threshold(M: float) -> float:
    """T = M^3 + M"""
    return M ** 3 + M


@dataclass
class NowhereDenseConfig:
    """Balls B_j = B(x_j, r_j) in frequency space to clear, window budget ε, internal truncation"""
    dense_seq: np.ndarray
    ball_radii: np.ndarray
    epsilon: float
    truncation: float = 2000.0

    def __post_init__(self):
        seq = np.asarray(self.dense_seq, dtype=float)
        self.dense_seq = seq.reshape(-1, 1) if seq.ndim <= 1 else seq
        self.ball_radii = np.atleast_1d(np.asarray(self.ball_radii, dtype=float))
        if len(self.dense_seq) == 0:
            raise InvalidInputError("At least one ball is required")
        if len(self.ball_radii) != len(self.dense_seq):
            raise InvalidInputError(f"{len(self.dense_seq)} centers but {len(self.ball_radii)} radii")
        if np.any(self.ball_radii <= 0) or self.epsilon <= 0 or self.truncation <= 0:
            raise InvalidInputError("Ball radii, ε and truncation must all be > 0")

    def budget(self) -> float:
        dim = self.dense_seq.shape[1]
        return float(sum(ball_volume(r, dim) for r in self.ball_radii))

    def check_budget(self, det: float) -> None:
        used, allowed = self.budget(), self.epsilon / det
        if not used < allowed:
            raise BudgetError(f"Σ mes(B_j) = {used:.6g} is not below ε/det Γ = {allowed:.6g}",
                              "use smaller balls or a larger ε")

    def to_dict(self) -> Dict[str, Any]:
        return {"dense_seq": self.dense_seq.tolist(), "ball_radii": self.ball_radii.tolist(),
                "epsilon": self.epsilon, "truncation": self.truncation}


@dataclass
class BallReport:
    center: List[float]
    radius: float
    count: int
    density_theory: float
    density_empirical: float
    gamma: float
    M: float
    T: float
    searched: float
    gap: Optional[List[float]]


@dataclass
class NowhereDenseReport:
    balls: List[BallReport]
    zeros: np.ndarray
    window: WindowFunction
    budget_used: float
    budget_allowed: float
    tail_bound: float
    log_tail_bound: float
    zero_violations: int

    @property
    def gaps(self) -> List[Optional[List[float]]]:
        return [b.gap for b in self.balls]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "balls": [dict(b.__dict__) for b in self.balls],
            "zeros": len(self.zeros),
            "window": self.window.to_dict(),
            "budget_used": self.budget_used,
            "budget_allowed": self.budget_allowed,
            "tail_bound": self.tail_bound,
            "log_tail_bound": self.log_tail_bound,
            "zero_violations": self.zero_violations,
        }


def _max_count(sorted_q: np.ndarray, length: float) -> int:
    if sorted_q.size == 0:
        return 0
    ends = np.searchsorted(sorted_q, sorted_q + length, side='right')
    return int(np.max(ends - np.arange(sorted_q.size)))


def _doubling_length(sorted_q: np.ndarray, gamma: float, start: float, limit: float) -> float:
    """Smallest L in start·2^k such that every length L·2^i up to limit obeys #(Q∩I) <= γ|I|"""
    lengths = []
    L = start
    while L <= limit:
        lengths.append(L)
        L *= 2
    if not lengths:
        raise BudgetError(f"No interval length between {start:.4g} and {limit:.4g}",
                          "raise the truncation")
    ok = [_max_count(sorted_q, L) <= gamma * L for L in lengths]
    for i in range(len(lengths)):
        if all(ok[i:]):
            return lengths[i]
    raise BudgetError(f"Counting bound γ = {gamma:.4g} fails for every length up to {limit:.4g}",
                      "raise the truncation or gamma_factor")


def _largest_gap(values: np.ndarray, lo: float, hi: float) -> Optional[List[float]]:
    edges = np.concatenate([[lo], np.sort(values[(values > lo) & (values < hi)]), [hi]])
    widths = np.diff(edges)
    k = int(np.argmax(widths))
    return [float(edges[k]), float(edges[k + 1])] if widths[k] > 0 else None


def nowhere_dense_construction(scheme: CutProjectScheme, cfg: NowhereDenseConfig,
                               config: RunConfig = DEFAULT_CONFIG) -> NowhereDenseReport:
    """
    Positive window φ ≥ 0 with supp φ̂ ⊂ (−ε, ε) whose spectrum avoids the balls

    For each ball B_j: Q_j = p2 of dual points with p1 ∈ B_j, a model set of
    density det Γ·mes(B_j) in internal space. With γ_j = gamma_factor·D(Q_j),
    M_j is found by doubling and T_j = M_j^3 + M_j. φ vanishes on the union
    of Q_j outside (−T_j, T_j); the dual points with |p2| < T_j are avoided by
    shrinking B_j to its largest free sub-interval Ω_j. That search stops at
    enumeration_cap / 8 in internal space; the tail bound is taken at the
    radius actually searched.
    """
    _require_line(scheme)
    if scheme.n != 1:
        raise DimensionError("nowhere_dense_construction supports a one-dimensional physical space")
    det = scheme.det
    cfg.check_budget(det)
    dual = scheme.dual()
    trunc = cfg.truncation

    balls: List[BallReport] = []
    zeros = []
    for center, r in zip(cfg.dense_seq[:, 0], cfg.ball_radii):
        ball = np.array([[center - r, center + r]])
        _, pts = enumerate_lattice(dual, _lift_box(ball, np.array([[-trunc, trunc]])), config.enumeration_cap)
        q = np.sort(scheme.p2(pts)[:, 0])
        d_theory = det * 2 * r
        d_emp = q.size / (2 * trunc)
        gamma = config.gamma_factor * d_theory
        M = _doubling_length(q, gamma, 1.0 / d_theory, trunc / 4)
        T = t_threshold(M)
        zeros.append(q[np.abs(q) >= T])
        logger.info("Ball %.4g±%.4g: %d points of Q, D=%.4g (empirical %.4g), M=%.4g, T=%.4g",
                    center, r, q.size, d_theory, d_emp, M, T)

        searched = min(T, config.enumeration_cap / 8)
        _, inner = enumerate_lattice(dual, _lift_box(ball, np.array([[-searched, searched]])),
                                     config.enumeration_cap)
        inner_p1 = scheme.p1(inner)[np.abs(scheme.p2(inner)[:, 0]) < searched][:, 0]
        gap = _largest_gap(inner_p1, center - r, center + r)
        balls.append(BallReport(center=[float(center)], radius=float(r), count=int(q.size),
                                density_theory=d_theory, density_empirical=d_emp, gamma=gamma,
                                M=float(M), T=float(T), searched=float(searched), gap=gap))

    Q = np.unique(np.concatenate(zeros)) if zeros else np.zeros(0)
    wf = surrogate(Q, cfg.epsilon, normalize_range=trunc)
    violations = int(np.count_nonzero(wf(Q) > 1e-12)) if Q.size else 0
    # atoms in Ω_j have |p2| >= searched; between T_j and the truncation they are zeros of φ
    reach = min(max(trunc, ball.T) if ball.searched >= ball.T else ball.searched for ball in balls)
    # φ <= e^{-log_scale}·sinc^4(b·x); e^{-log_scale} overflows once many zeros are placed
    log_tail_bound = float(-wf.params["log_scale"] - 4 * math.log(math.pi * wf.params["b"] * reach))
    tail_bound = math.exp(log_tail_bound) if log_tail_bound < 700.0 else math.inf
    return NowhereDenseReport(balls=balls, zeros=Q, window=wf, budget_used=cfg.budget(),
                              budget_allowed=cfg.epsilon / det, tail_bound=tail_bound,
                              log_tail_bound=log_tail_bound, zero_violations=violations)
