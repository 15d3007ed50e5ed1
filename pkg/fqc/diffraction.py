"""
Autocorrelation and diffraction of finite truncations

For a measure μ truncated to [−R, R]^n the autocorrelation is

    γ_R = (2R)^{-n} μ_R * μ̃_R,   μ̃_R(E) = conj μ_R(−E)

and its transform (the diffraction trace) is |μ̂_R|^2 / (2R)^n ≥ 0. A Bragg
peak of mass I shows up in the trace as I·2R·sinc^2(2R·u) per axis (the
Fejér kernel of the triangle (2R − |v|)/2R), so peaks are extracted by
CLEAN-style subtraction of that kernel and intensities are normalized by
its height. When long differences are dropped (cap_radius < 2R) the
autocorrelation is tapered by (1 − |v|/cap) to keep it positive-definite
and the kernel height shrinks to cap − cap^2/(6R) per axis.

Wiener's averages, the squared-modulus prediction for combs and the
annihilating-frequency search live at the end of the module.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import minimize_scalar
from scipy.spatial import cKDTree

from .config import RunConfig, DEFAULT_CONFIG
from .errors import AliasingError, CapExceededError, InvalidInputError
from .geometry import PointSet, as_box, as_points, merge_close, orient_positive, min_separation
from .measures import (DiscreteMeasure, FrequencyGrid, TransformTrace, exp_sum, ft_at, restrict,
                       PURGE)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# autocorrelation
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class Autocorrelation:
    """(2R)^{-n} μ_R * μ̃_R; exactly Hermitian: weight(−v) = conj weight(v)"""
    measure: DiscreteMeasure
    R: float
    source: DiscreteMeasure
    cap_radius: float
    dropped_pairs: int = 0

    @property
    def dim(self) -> int:
        return self.measure.dim

    @property
    def tapered(self) -> bool:
        return self.dropped_pairs > 0

    @property
    def kernel_height(self) -> float:
        """Height of the per-axis peak kernel (2R untapered)"""
        if self.tapered:
            return self.cap_radius - self.cap_radius ** 2 / (6 * self.R)
        return 2 * self.R

    def to_dict(self) -> Dict[str, Any]:
        return {"R": self.R, "cap_radius": self.cap_radius, "dropped_pairs": self.dropped_pairs,
                "tapered": self.tapered, "measure": self.measure.to_dict()}


def autocorrelation_measure(mu: DiscreteMeasure, R: float, cap_radius: Optional[float] = None,
                            config: RunConfig = DEFAULT_CONFIG) -> Autocorrelation:
    """
    Atoms at λ' − λ with weights μ(λ')·conj μ(λ), scaled by (2R)^{-n}

    Only pairs with sup-norm distance <= cap_radius are kept (default: all,
    i.e. 2R). The positive half is merged and then mirrored, so Hermitian
    symmetry holds bit for bit.
    """
    if R <= 0:
        raise InvalidInputError(f"R must be > 0, got {R}")
    n = mu.dim
    full = 2 * R
    cap = full if cap_radius is None else min(float(cap_radius), full)
    if cap <= 0:
        raise InvalidInputError("cap_radius must be > 0")
    src = restrict(mu, np.array([[-R, R]] * n))
    scale = 1.0 / full ** n
    box = np.array([[-cap, cap]] * n)
    if src.size == 0:
        return Autocorrelation(DiscreteMeasure.empty(box, mu.dedup_tol), R, src, cap)

    tree = cKDTree(src.points)
    ordered = int(tree.count_neighbors(tree, cap * (1 + 1e-12), p=np.inf))
    kept = (ordered - src.size) // 2
    if kept > config.enumeration_cap:
        raise CapExceededError(f"Autocorrelation needs {kept} pairs (cap {config.enumeration_cap})",
                               "pass a smaller cap_radius or R")
    total_pairs = src.size * (src.size - 1) // 2
    dropped = total_pairs - kept

    w = src.weights
    half = np.zeros((0, n))
    half_w = np.zeros(0, dtype=complex)
    if src.size > 1:
        pairs = tree.query_pairs(cap * (1 + 1e-12), p=np.inf, output_type='ndarray')
        if len(pairs):
            i, j = pairs[:, 0], pairs[:, 1]
            diffs = src.points[j] - src.points[i]
            weights = w[j] * np.conj(w[i])
            oriented = orient_positive(diffs, mu.dedup_tol)
            flipped = np.any(oriented != diffs, axis=1)
            weights[flipped] = np.conj(weights[flipped])
            half, half_w = merge_close(oriented, weights, mu.dedup_tol)

    zero_w = complex(math.fsum(np.abs(w) ** 2), 0.0)
    points = np.vstack([np.zeros((1, n)), half, -half])
    weights = np.concatenate([[zero_w], half_w, np.conj(half_w)]) * scale
    if dropped > 0:
        taper = np.prod(np.clip(1 - np.abs(points) / cap, 0, None), axis=1)
        weights = weights * taper
        logger.info("Autocorrelation dropped %d pairs beyond cap %.4g; Fejér taper applied", dropped, cap)
    alive = np.abs(weights) >= PURGE
    alive[0] = True
    measure = DiscreteMeasure(points[alive], weights[alive], box, mu.dedup_tol)
    return Autocorrelation(measure=measure, R=float(R), source=src, cap_radius=cap, dropped_pairs=dropped)


def autocorrelation_points(ps: PointSet, R: float, cap_radius: Optional[float] = None,
                           config: RunConfig = DEFAULT_CONFIG) -> Autocorrelation:
    """Unit-weight comb on ps; weight at v is #{pairs with difference v} / (2R)^n"""
    comb = DiscreteMeasure(ps.points.copy(), np.ones(ps.size, dtype=complex), ps.box.copy(), ps.dedup_tol)
    return autocorrelation_measure(comb, R, cap_radius, config)


# ---------------------------------------------------------------------------
# diffraction estimate and peak extraction
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class DiffractionEstimate:
    """Bragg peaks (intensity ≥ 0) plus the residual continuous trace"""
    peaks: DiscreteMeasure
    continuous_trace: TransformTrace
    threshold: float
    trace: TransformTrace
    R: float
    kernel_height: float
    imag_leak: float = 0.0
    min_value: float = 0.0

    @property
    def discrete_mass(self) -> float:
        return float(math.fsum(self.peaks.weights.real))

    @property
    def continuous_mass(self) -> float:
        return float(math.fsum(self.continuous_trace.values.real)) * self.trace.grid.cell_volume()

    def peak_list(self) -> List[Tuple[List[float], float]]:
        order = np.argsort(-self.peaks.weights.real, kind='stable')
        return [(self.peaks.points[k].tolist(), float(self.peaks.weights[k].real)) for k in order]


def _kernel(u: np.ndarray, height: float) -> np.ndarray:
    """Normalized peak shape Π sinc^2(h·u_i), 1 at u = 0"""
    return np.prod(np.sinc(height * u) ** 2, axis=-1)


def _is_local_max(values: np.ndarray, index: Tuple[int, ...], rtol: float = 1e-9) -> bool:
    """>= every axis neighbour and clearly above at least one (flat stretches hold no peak)"""
    centre = values[index]
    margin = rtol * abs(centre)
    strict = False
    for axis in range(values.ndim):
        for step in (-1, 1):
            j = index[axis] + step
            if 0 <= j < values.shape[axis]:
                neighbour = list(index)
                neighbour[axis] = j
                other = values[tuple(neighbour)]
                if other > centre:
                    return False
                strict |= bool(other < centre - margin)
    return strict


def _check_grid(grid: FrequencyGrid, R: float, config: RunConfig) -> None:
    limit = 1.0 / (4 * R)
    if np.any(grid.pitch > limit * (1 + 1e-12)):
        raise AliasingError(f"Grid pitch {grid.pitch.max():.4g} exceeds 1/(4R) = {limit:.4g}",
                            "raise the grid resolution or lower R")
    grid.check_cap(config.grid_cap)


def _trace_function(ac: Autocorrelation, config: RunConfig) -> Callable[[np.ndarray], np.ndarray]:
    scale = 1.0 / (2 * ac.R) ** ac.dim
    if not ac.tapered:
        def exact(freqs):
            values = ft_at(ac.source, freqs, config)
            return (values.real ** 2 + values.imag ** 2) * scale
    else:
        def exact(freqs):
            return ft_at(ac.measure, freqs, config).real
    return exact


def _refine(objective: Callable[[np.ndarray], float], start: np.ndarray, pitch: np.ndarray,
            sweeps: int = 2) -> np.ndarray:
    """Bounded Brent (golden-section with parabolic steps) per coordinate within one pitch"""
    t = start.astype(float).copy()
    for _ in range(sweeps if len(t) > 1 else 1):
        for axis in range(len(t)):
            def line(s, axis=axis):
                trial = t.copy()
                trial[axis] = s
                return -objective(trial)
            res = minimize_scalar(line, bounds=(t[axis] - pitch[axis], t[axis] + pitch[axis]),
                                  method='bounded', options={'xatol': 1e-12 + 1e-9 * pitch[axis]})
            if -res.fun >= objective(t):
                t[axis] = res.x
    return t


def diffraction_estimate(ac: Autocorrelation, grid: FrequencyGrid, peak_threshold: Optional[float] = None,
                         config: RunConfig = DEFAULT_CONFIG) -> DiffractionEstimate:
    """
    Transform the autocorrelation on the grid and pull out Bragg peaks

    Peaks are taken greedily at the residual maximum, refined on the exact
    trace, then their kernel is subtracted from the residual. Extraction
    stops below peak_threshold × (largest intensity) or at max_peaks.
    """
    threshold = config.peak_threshold if peak_threshold is None else float(peak_threshold)
    if threshold < 0:
        raise InvalidInputError("peak threshold must be >= 0")
    if grid.dim != ac.dim:
        raise InvalidInputError(f"Grid dimension {grid.dim} does not match autocorrelation dimension {ac.dim}")
    _check_grid(grid, ac.R, config)
    exact = _trace_function(ac, config)
    freqs = grid.points()
    values = exact(freqs)

    imag_leak = 0.0
    if ac.tapered:
        imag = ft_at(ac.measure, freqs[: min(len(freqs), 64)], config).imag
        imag_leak = float(np.max(np.abs(imag))) if imag.size else 0.0
    top = float(np.max(np.abs(values))) if values.size else 0.0
    if imag_leak > 1e-10 * max(top, 1e-300):
        raise InvalidInputError(f"Autocorrelation transform has imaginary leak {imag_leak:.3g}: not Hermitian")
    min_value = float(values.min()) if values.size else 0.0
    if min_value < -1e-10 * max(top, 1e-300):
        logger.warning("Diffraction trace dips to %.3g (max %.3g): positivity violated", min_value, top)

    h = ac.kernel_height
    height = h ** ac.dim
    residual = values.copy()
    locations: List[np.ndarray] = []
    intensities: List[float] = []
    largest = 0.0
    pitch = grid.pitch

    def contribution(t: np.ndarray) -> float:
        if not locations:
            return 0.0
        shifts = t[None, :] - np.asarray(locations)
        return float(np.dot(intensities, _kernel(shifts, h))) * height

    blocked = np.zeros(len(residual), dtype=bool)
    shape = tuple(grid.resolution)
    attempts = 0
    while len(locations) < config.max_peaks and attempts < 4 * config.max_peaks:
        attempts += 1
        candidates = np.where(blocked, -np.inf, residual)
        k = int(np.argmax(candidates))
        if candidates[k] <= 0 or candidates[k] / height < threshold * largest:
            break
        if not _is_local_max(residual.reshape(shape), np.unravel_index(k, shape)):
            blocked[k] = True
            continue
        t_star = _refine(lambda t: exact(t.reshape(1, -1))[0] - contribution(t), freqs[k], pitch)
        intensity = (exact(t_star.reshape(1, -1))[0] - contribution(t_star)) / height
        if intensity <= 0 or intensity < threshold * largest:
            blocked[k] = True
            continue
        largest = max(largest, intensity)
        locations.append(t_star)
        intensities.append(intensity)
        residual = residual - intensity * height * _kernel(freqs - t_star, h)

    box = np.column_stack([grid.center - grid.half_widths, grid.center + grid.half_widths])
    if locations:
        peaks = DiscreteMeasure.from_atoms(np.asarray(locations), np.asarray(intensities, dtype=complex),
                                           box, ac.measure.dedup_tol)
    else:
        peaks = DiscreteMeasure.empty(box, ac.measure.dedup_tol)
    logger.debug("Extracted %d peaks (largest intensity %.6g)", peaks.size, largest)
    continuous = TransformTrace(grid, np.clip(residual, 0, None).astype(complex))
    return DiffractionEstimate(peaks=peaks, continuous_trace=continuous, threshold=threshold,
                               trace=TransformTrace(grid, values.astype(complex)), R=ac.R,
                               kernel_height=h, imag_leak=imag_leak, min_value=min_value)


@dataclass(eq=False)
class PurePointSplit:
    discrete: DiscreteMeasure
    continuous: TransformTrace
    discrete_mass: float
    continuous_mass: float
    threshold: float


def split_pure_point(est: DiffractionEstimate, threshold: Optional[float] = None) -> PurePointSplit:
    """
    Peaks with intensity >= threshold × (largest intensity) form the discrete
    part; the others are folded back into the continuous trace. Raising the
    threshold only moves mass from discrete to continuous.
    """
    threshold = est.threshold if threshold is None else float(threshold)
    grid = est.continuous_trace.grid
    w = est.peaks.weights.real
    largest = float(w.max()) if w.size else 0.0
    keep = w >= threshold * largest if math.isfinite(threshold) else np.zeros(w.size, dtype=bool)
    continuous = est.continuous_trace.values.real.copy()
    if np.any(~keep):
        freqs = grid.points()
        height = est.kernel_height ** est.peaks.dim
        for loc, intensity in zip(est.peaks.points[~keep], w[~keep]):
            continuous += intensity * height * _kernel(freqs - loc, est.kernel_height)
    discrete = DiscreteMeasure(est.peaks.points[keep], est.peaks.weights[keep], est.peaks.box.copy(),
                               est.peaks.dedup_tol)
    return PurePointSplit(discrete=discrete, continuous=TransformTrace(grid, continuous.astype(complex)),
                          discrete_mass=float(math.fsum(w[keep])),
                          continuous_mass=float(math.fsum(continuous)) * grid.cell_volume(),
                          threshold=threshold)


# ---------------------------------------------------------------------------
# convergence and reports
# ---------------------------------------------------------------------------

@dataclass
class ConvergenceReport:
    R: float
    R_half: float
    matched: int
    max_relative_change: float
    changes: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def convergence_report(mu: DiscreteMeasure, R: float, grid: FrequencyGrid, top: int = 10,
                       peak_threshold: Optional[float] = None, cap_radius: Optional[float] = None,
                       config: RunConfig = DEFAULT_CONFIG) -> ConvergenceReport:
    """Peak intensities at R against R/2 on the top peaks, matched within one pitch"""
    runs = []
    for radius in (R, R / 2):
        cap = None if cap_radius is None else min(cap_radius, 2 * radius)
        ac = autocorrelation_measure(mu, radius, cap, config)
        runs.append(diffraction_estimate(ac, grid, peak_threshold, config))
    full, half = runs
    changes = []
    if full.peaks.size and half.peaks.size:
        tree = cKDTree(half.peaks.points)
        for loc, intensity in full.peak_list()[:top]:
            dist, idx = tree.query(np.asarray(loc))
            if dist <= float(np.max(grid.pitch)) and intensity > 0:
                changes.append(abs(half.peaks.weights[idx].real - intensity) / intensity)
    return ConvergenceReport(R=R, R_half=R / 2, matched=len(changes),
                             max_relative_change=max(changes) if changes else math.nan, changes=changes)


def diffraction_report(est: DiffractionEstimate, convergence: Optional[ConvergenceReport] = None) -> Dict[str, Any]:
    return {
        "R": est.R,
        "threshold": est.threshold,
        "peaks": [[loc, intensity] for loc, intensity in est.peak_list()],
        "discrete_mass": est.discrete_mass,
        "continuous_mass": est.continuous_mass,
        "min_trace_value": est.min_value,
        "imag_leak": est.imag_leak,
        "convergence": None if convergence is None else convergence.to_dict(),
    }


# ---------------------------------------------------------------------------
# Wiener averages
# ---------------------------------------------------------------------------

def _with_density(nu: DiscreteMeasure, density) -> Tuple[np.ndarray, np.ndarray]:
    points, weights = nu.points, nu.weights
    if density is not None:
        d_points, d_masses = density
        d_points = as_points(d_points, nu.dim)
        points = np.vstack([points, d_points])
        weights = np.concatenate([weights, np.asarray(d_masses, dtype=complex).reshape(-1)])
    return points, weights


def wiener_atom(nu: DiscreteMeasure, a, R_list: Sequence[float], density=None) -> List[complex]:
    """
    (2R)^{-n} ∫_{[−R,R]^n} ν̂(t) e^{2πi⟨a,t⟩} dt = Σ_x ν(x) Π sinc(2R(a − x))

    `density` is an optional (points, masses) sampling of an absolutely
    continuous part, added as quadrature atoms.
    """
    points, weights = _with_density(nu, density)
    a = np.asarray(a, dtype=float).reshape(1, -1)
    out = []
    for R in R_list:
        kernel = np.prod(np.sinc(2 * R * (a - points)), axis=1)
        terms = weights * kernel
        out.append(complex(math.fsum(terms.real), math.fsum(terms.imag)))
    return out


def wiener_energy(nu: DiscreteMeasure, R_list: Sequence[float], density=None, mode: str = "closed",
                  pitch: Optional[float] = None, config: RunConfig = DEFAULT_CONFIG) -> List[float]:
    """
    (2R)^{-n} ∫_{[−R,R]^n} |ν̂(t)|^2 dt, which tends to Σ |ν({a})|^2

    mode 'closed' sums w_j conj(w_k) Π sinc(2R(x_j − x_k)) exactly;
    mode 'quadrature' samples |ν̂|^2 on a grid whose pitch must stay below
    1/(8·diameter of the support).
    """
    points, weights = _with_density(nu, density)
    if len(points) == 0:
        return [0.0 for _ in R_list]
    out = []
    if mode == "closed":
        step = config.chunk_size
        for R in R_list:
            parts = []
            for start in range(0, len(points), step):
                block = points[start:start + step]
                kernel = np.prod(np.sinc(2 * R * (block[:, None, :] - points[None, :, :])), axis=2)
                terms = (weights[start:start + step, None] * np.conj(weights)[None, :] * kernel).real
                parts.extend(math.fsum(row) for row in terms)
            out.append(math.fsum(parts))
        return out
    if mode != "quadrature":
        raise InvalidInputError(f"Unknown wiener_energy mode {mode!r}")
    diameter = float(np.max(np.max(points, axis=0) - np.min(points, axis=0)))
    limit = 1.0 / (8 * diameter) if diameter > 0 else math.inf
    for R in R_list:
        step = limit if pitch is None else pitch
        if step > limit * (1 + 1e-12):
            raise AliasingError(f"Quadrature pitch {step:.4g} exceeds 1/(8·diameter) = {limit:.4g}",
                                "use a finer pitch")
        if not math.isfinite(step):
            step = R / 64
        resolution = int(math.ceil(2 * R / step)) + 1
        grid = FrequencyGrid(np.zeros(nu.dim), R, resolution)
        grid.check_cap(config.grid_cap)
        values = exp_sum(points, weights, grid.points(), -1.0, config)
        sq = (values.real ** 2 + values.imag ** 2).reshape(tuple(grid.resolution))
        for axis in range(nu.dim):
            sq = trapezoid(sq, dx=float(grid.pitch[axis]), axis=0)
        out.append(float(sq) / (2 * R) ** nu.dim)
    return out


def fl4_predicted_diffraction(nu: DiscreteMeasure) -> DiscreteMeasure:
    """Diffraction of a comb whose transform is the pure point measure ν: |ν({a})|^2 at a"""
    weights = (np.abs(nu.weights) ** 2).astype(complex)
    return DiscreteMeasure(nu.points.copy(), weights, nu.box.copy(), nu.dedup_tol)


# ---------------------------------------------------------------------------
# annihilating frequencies
# ---------------------------------------------------------------------------

@dataclass
class AnnihilationResult:
    omega: List[float]
    score: float
    refined_score: float
    decreasing: bool
    floor: float
    annihilable: bool

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def gaussian_tests(k: int, center, scale: float) -> List[Callable[[np.ndarray], np.ndarray]]:
    """k Gaussian bumps at scales scale·2^{−j}, j = 0..k−1"""
    center = np.asarray(center, dtype=float).reshape(1, -1)
    return [lambda x, s=scale * 2.0 ** -j: np.exp(-np.pi * np.sum(((x - center) / s) ** 2, axis=1))
            for j in range(k)]


def _as_masses(nu: Union[DiscreteMeasure, TransformTrace]) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(nu, TransformTrace):
        return nu.grid.points(), nu.values * nu.grid.cell_volume()
    return nu.points, nu.weights


def find_annihilating_frequency(nu: Union[DiscreteMeasure, TransformTrace], search_grid: FrequencyGrid,
                                test_functions: Optional[Sequence[Callable]] = None, k: int = 3,
                                config: RunConfig = DEFAULT_CONFIG) -> AnnihilationResult:
    """
    argmin over the grid of Φ(t) = Σ_j |∫ φ_j(x) e^{−2πi⟨t,x⟩} dν(x)|^2

    The search is repeated on a twice finer grid; the score there is also
    reported. For the heaviest atom a of ν with mass c, any t has
    Φ(t) >= Σ_j max(0, |c||φ_j(a)| − ∫|φ_j| d|ν − cδ_a|)^2; a positive floor
    means no frequency annihilates ν.
    """
    points, masses = _as_masses(nu)
    dim = search_grid.dim
    if len(points) == 0 or not np.any(masses):
        center = search_grid.center.tolist()
        return AnnihilationResult(omega=center, score=0.0, refined_score=0.0, decreasing=True,
                                  floor=0.0, annihilable=True)
    if test_functions is None:
        spread = np.max(points, axis=0) - np.min(points, axis=0)
        centre = (np.max(points, axis=0) + np.min(points, axis=0)) / 2
        test_functions = gaussian_tests(k, centre, max(float(np.max(spread)), 1.0))
    weighted = [masses * phi(points) for phi in test_functions]

    def scores(grid: FrequencyGrid) -> Tuple[np.ndarray, np.ndarray]:
        grid.check_cap(config.grid_cap)
        freqs = grid.points()
        total = np.zeros(len(freqs))
        for w in weighted:
            values = exp_sum(points, w, freqs, -1.0, config)
            total += values.real ** 2 + values.imag ** 2
        return freqs, total

    freqs, phi_vals = scores(search_grid)
    best = int(np.argmin(phi_vals))
    finer = FrequencyGrid(search_grid.center, search_grid.half_widths, 2 * search_grid.resolution - 1)
    fine_freqs, fine_vals = scores(finer)
    fine_best = int(np.argmin(fine_vals))

    heaviest = int(np.argmax(np.abs(masses)))
    floor = 0.0
    others = np.arange(len(masses)) != heaviest
    for phi in test_functions:
        vals = np.abs(phi(points))
        gap = abs(masses[heaviest]) * vals[heaviest] - math.fsum(vals[others] * np.abs(masses[others]))
        floor += max(0.0, gap) ** 2
    return AnnihilationResult(omega=fine_freqs[fine_best].tolist(), score=float(phi_vals[best]),
                              refined_score=float(fine_vals[fine_best]),
                              decreasing=bool(fine_vals[fine_best] <= phi_vals[best]),
                              floor=floor, annihilable=floor <= 0)


# ---------------------------------------------------------------------------
# generators and ε-level spectra
# ---------------------------------------------------------------------------

def random_point_set(density: float, box, seed: int = 0, dedup_tol: float = DEFAULT_CONFIG.dedup_tol) -> PointSet:
    """Poisson process of the given intensity in the box"""
    if density <= 0:
        raise InvalidInputError("density must be > 0")
    box = as_box(box)
    rng = np.random.default_rng(seed)
    count = rng.poisson(density * float(np.prod(box[:, 1] - box[:, 0])))
    points = rng.uniform(box[:, 0], box[:, 1], size=(count, box.shape[0]))
    return PointSet.from_points(points, box, dedup_tol)


def epsilon_spectrum(spec: DiscreteMeasure, eps: float) -> PointSet:
    """Atoms with |weight| >= eps × max |weight|"""
    if spec.size == 0:
        return PointSet(np.zeros((0, spec.dim)), spec.box.copy(), spec.dedup_tol)
    mags = np.abs(spec.weights)
    keep = mags >= eps * mags.max()
    return PointSet(spec.points[keep], spec.box.copy(), spec.dedup_tol)


def gap_curve(spec: DiscreteMeasure, eps_levels: Sequence[float]) -> List[Tuple[float, int, float]]:
    """(ε, atom count, minimum gap) per level"""
    out = []
    for eps in eps_levels:
        level = epsilon_spectrum(spec, eps)
        out.append((float(eps), level.size, min_separation(level)))
    return out
