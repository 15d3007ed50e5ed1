"""
Discrete complex measures and their Fourier transforms

A DiscreteMeasure is a finite list of atoms (point, complex weight). Its
transform is the exponential sum

    μ̂(t) = Σ_λ μ(λ) exp(−2πi⟨λ, t⟩)

evaluated directly, row by row, with exactly rounded summation
(math.fsum). Frequency chunks may run on a thread pool; since every
frequency is summed on its own, results do not depend on the chunking or
on the number of workers.

Also here: modulation/translation, the sets S_h and measures ν_h built
from a spectrum, the support-leak check for ν̂_h, and the
translation-boundedness norm.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Any, List, Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .config import RunConfig, DEFAULT_CONFIG
from .errors import CapExceededError, EmptySetError, InvalidInputError
from .geometry import PointSet, as_box, as_points, inside_box, merge_close

logger = logging.getLogger(__name__)

PURGE = 1e-14


@dataclass(eq=False)
class DiscreteMeasure:
    """Finite atomic measure: no zero weights, no two atoms within dedup_tol"""
    points: np.ndarray
    weights: np.ndarray
    box: np.ndarray
    dedup_tol: float = 1e-9

    @classmethod
    def from_atoms(cls, points, weights, box=None, dedup_tol: float = DEFAULT_CONFIG.dedup_tol,
                   purge: float = PURGE) -> "DiscreteMeasure":
        """Merge atoms within dedup_tol (weights summed), then drop |weight| < purge"""
        dim = None
        if box is not None and np.ndim(box) == 2:
            dim = np.shape(box)[0]
        pts = as_points(points, dim)
        w = np.asarray(weights, dtype=complex).reshape(-1)
        if w.size != pts.shape[0]:
            raise InvalidInputError(f"{pts.shape[0]} points but {w.size} weights")
        if box is None:
            if pts.shape[0] == 0:
                raise EmptySetError("Cannot infer a box from an empty atom list")
            box = np.column_stack([pts.min(axis=0), pts.max(axis=0)])
        box = as_box(box, pts.shape[1] if pts.shape[0] else None)
        if pts.shape[0] == 0:
            pts = np.zeros((0, box.shape[0]))
        keep = inside_box(pts, box, dedup_tol)
        pts, w = merge_close(pts[keep], w[keep], dedup_tol)
        alive = np.abs(w) >= purge
        return cls(points=pts[alive], weights=w[alive], box=box, dedup_tol=dedup_tol)

    @classmethod
    def empty(cls, box, dedup_tol: float = DEFAULT_CONFIG.dedup_tol) -> "DiscreteMeasure":
        box = as_box(box)
        return cls(np.zeros((0, box.shape[0])), np.zeros(0, dtype=complex), box, dedup_tol)

    @property
    def dim(self) -> int:
        return self.box.shape[0]

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def __len__(self) -> int:
        return self.size

    def support(self) -> PointSet:
        return PointSet(self.points.copy(), self.box.copy(), self.dedup_tol)

    def weight_at(self, point, tol: Optional[float] = None) -> complex:
        """Weight of the atom within tol of point (0 if none)"""
        if self.size == 0:
            return 0j
        tol = self.dedup_tol if tol is None else tol
        dist, idx = cKDTree(self.points).query(np.asarray(point, dtype=float).reshape(1, -1))
        return complex(self.weights[idx[0]]) if dist[0] <= tol else 0j

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "box": self.box.tolist(),
            "atoms": [[p.tolist(), float(w.real), float(w.imag)] for p, w in zip(self.points, self.weights)],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], dedup_tol: float = DEFAULT_CONFIG.dedup_tol) -> "DiscreteMeasure":
        dim = int(data["dim"])
        atoms = data.get("atoms", [])
        pts = np.asarray([a[0] for a in atoms], dtype=float).reshape(-1, dim)
        w = np.asarray([complex(a[1], a[2]) for a in atoms], dtype=complex)
        return cls.from_atoms(pts, w, data["box"], dedup_tol)


@dataclass
class FrequencyGrid:
    """Rectangular frequency grid: center ± half_widths, resolution points per axis"""
    center: np.ndarray
    half_widths: np.ndarray
    resolution: np.ndarray

    def __post_init__(self):
        self.center = np.atleast_1d(np.asarray(self.center, dtype=float))
        n = self.center.size
        self.half_widths = np.broadcast_to(np.asarray(self.half_widths, dtype=float), (n,)).copy()
        self.resolution = np.broadcast_to(np.asarray(self.resolution, dtype=np.int64), (n,)).copy()
        if np.any(self.resolution < 2):
            raise InvalidInputError("FrequencyGrid resolution must be >= 2 per axis")
        if np.any(self.half_widths <= 0):
            raise InvalidInputError("FrequencyGrid half widths must be > 0")

    @property
    def dim(self) -> int:
        return self.center.size

    @property
    def size(self) -> int:
        return int(np.prod(self.resolution))

    @property
    def pitch(self) -> np.ndarray:
        return 2 * self.half_widths / (self.resolution - 1)

    def axes(self) -> List[np.ndarray]:
        return [np.linspace(c - h, c + h, int(r))
                for c, h, r in zip(self.center, self.half_widths, self.resolution)]

    def points(self) -> np.ndarray:
        mesh = np.meshgrid(*self.axes(), indexing='ij')
        return np.stack(mesh, axis=-1).reshape(-1, self.dim)

    def cell_volume(self) -> float:
        return float(np.prod(self.pitch))

    def check_cap(self, cap: int) -> None:
        if self.size > cap:
            raise CapExceededError(f"Frequency grid of {self.size} points exceeds the cap {cap}",
                                   "lower the resolution or narrow the grid")


@dataclass
class TransformTrace:
    """Transform values on a FrequencyGrid (normalization: 'none' or 'per-volume')"""
    grid: FrequencyGrid
    values: np.ndarray
    normalization: str = "none"

    def __post_init__(self):
        if self.values.size != self.grid.size:
            raise InvalidInputError(f"Trace has {self.values.size} values for a grid of {self.grid.size}")

    def rows(self) -> List[List[float]]:
        """CSV rows: frequency components, re, im, abs"""
        freqs = self.grid.points()
        return [list(map(float, f)) + [float(v.real), float(v.imag), float(abs(v))]
                for f, v in zip(freqs, self.values)]


# ---------------------------------------------------------------------------
# exponential sums
# ---------------------------------------------------------------------------

def _row_sums(points: np.ndarray, weights: np.ndarray, freqs: np.ndarray, sign: float) -> np.ndarray:
    # fixed-order accumulation over coordinates: no BLAS, so no dependence on chunk shape
    theta = freqs[:, :1] * points[:, 0]
    for axis in range(1, points.shape[1]):
        theta = theta + freqs[:, axis:axis + 1] * points[:, axis]
    theta = 2 * np.pi * theta
    c, s = np.cos(theta), sign * np.sin(theta)
    wr, wi = weights.real, weights.imag
    re = wr * c - wi * s
    im = wi * c + wr * s
    out = np.empty(freqs.shape[0], dtype=complex)
    for k in range(freqs.shape[0]):
        out[k] = complex(math.fsum(re[k]), math.fsum(im[k]))
    return out


def exp_sum(points: np.ndarray, weights: np.ndarray, freqs, sign: float = -1.0,
            config: RunConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Σ_k w_k exp(sign·2πi⟨x_k, t⟩) at every t, chunked over frequencies"""
    freqs = as_points(freqs, points.shape[1] if points.ndim == 2 else None)
    if freqs.shape[0] == 0:
        return np.zeros(0, dtype=complex)
    if points.shape[0] == 0:
        return np.zeros(freqs.shape[0], dtype=complex)
    step = config.chunk_size
    chunks = [freqs[i:i + step] for i in range(0, freqs.shape[0], step)]
    if config.threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            parts = list(pool.map(lambda ch: _row_sums(points, weights, ch, sign), chunks))
    else:
        parts = [_row_sums(points, weights, ch, sign) for ch in chunks]
    return np.concatenate(parts)


def ft_at(mu: DiscreteMeasure, freqs, config: RunConfig = DEFAULT_CONFIG) -> np.ndarray:
    """μ̂(t) = Σ μ(λ) exp(−2πi⟨λ, t⟩) at each frequency"""
    return exp_sum(mu.points, mu.weights, as_points(freqs, mu.dim), -1.0, config)


def ft_grid(mu: DiscreteMeasure, grid: FrequencyGrid, normalization: str = "none",
            R: Optional[float] = None, config: RunConfig = DEFAULT_CONFIG) -> TransformTrace:
    """ft_at on every grid point; 'per-volume' divides by (2R)^n"""
    grid.check_cap(config.grid_cap)
    values = ft_at(mu, grid.points(), config)
    if normalization == "per-volume":
        if R is None or R <= 0:
            raise InvalidInputError("per-volume normalization needs R > 0")
        values = values / (2 * R) ** mu.dim
    elif normalization != "none":
        raise InvalidInputError(f"Unknown normalization {normalization!r}")
    return TransformTrace(grid=grid, values=values, normalization=normalization)


# ---------------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------------

def translate(mu: DiscreteMeasure, v) -> DiscreteMeasure:
    v = np.asarray(v, dtype=float).reshape(1, -1)
    return DiscreteMeasure(mu.points + v, mu.weights.copy(), mu.box + v.reshape(-1, 1), mu.dedup_tol)


def modulate(mu: DiscreteMeasure, omega) -> DiscreteMeasure:
    """Multiply the weight at λ by exp(−2πi⟨ω, λ⟩), so ft(result)(t) = ft(μ)(t + ω)"""
    omega = np.asarray(omega, dtype=float).reshape(-1)
    theta = 2 * np.pi * (mu.points @ omega)
    factor = np.cos(theta) - 1j * np.sin(theta)
    return DiscreteMeasure(mu.points.copy(), mu.weights * factor, mu.box.copy(), mu.dedup_tol)


def scale_weights(mu: DiscreteMeasure, c: complex) -> DiscreteMeasure:
    if c == 0:
        logger.warning("scale_weights by 0 gives the empty measure")
        return DiscreteMeasure.empty(mu.box, mu.dedup_tol)
    return DiscreteMeasure(mu.points.copy(), mu.weights * c, mu.box.copy(), mu.dedup_tol)


def add(mu: DiscreteMeasure, nu: DiscreteMeasure, alpha: complex = 1, beta: complex = 1) -> DiscreteMeasure:
    """αμ + βν on the union of the boxes"""
    box = np.column_stack([np.minimum(mu.box[:, 0], nu.box[:, 0]), np.maximum(mu.box[:, 1], nu.box[:, 1])])
    return DiscreteMeasure.from_atoms(np.vstack([mu.points, nu.points]),
                                      np.concatenate([alpha * mu.weights, beta * nu.weights]),
                                      box, min(mu.dedup_tol, nu.dedup_tol))


def restrict(mu: DiscreteMeasure, box) -> DiscreteMeasure:
    box = as_box(box, mu.dim)
    keep = inside_box(mu.points, box, mu.dedup_tol)
    return DiscreteMeasure(mu.points[keep], mu.weights[keep], box, mu.dedup_tol)


def total_mass(mu: DiscreteMeasure) -> complex:
    return complex(math.fsum(mu.weights.real), math.fsum(mu.weights.imag))


def reflect_conjugate(mu: DiscreteMeasure) -> DiscreteMeasure:
    """μ̃(E) = conj μ(−E)"""
    return DiscreteMeasure(-mu.points, np.conj(mu.weights), -mu.box[:, ::-1], mu.dedup_tol)


def hermitian_gram(mu: DiscreteMeasure, freqs, config: RunConfig = DEFAULT_CONFIG) -> np.ndarray:
    """
    G_jk = ft(ν)(t_j − t_k) with ν = (μ + conj μ)/2, the real part of μ

    A real measure has ft(ν)(−u) = conj ft(ν)(u), so G is Hermitian; the
    cos/sin split plus exactly rounded sums make that hold bit for bit.
    """
    t = as_points(freqs, mu.dim)
    real_part = DiscreteMeasure(mu.points, mu.weights.real.astype(complex), mu.box, mu.dedup_tol)
    diffs = (t[:, None, :] - t[None, :, :]).reshape(-1, mu.dim)
    return ft_at(real_part, diffs, config).reshape(len(t), len(t))


# ---------------------------------------------------------------------------
# S_h and ν_h
# ---------------------------------------------------------------------------

def _match_shift(spec: DiscreteMeasure, h, tol: float):
    h = np.asarray(h, dtype=float).reshape(1, -1)
    if spec.size == 0:
        return np.zeros(0, dtype=bool), np.zeros(0, dtype=np.int64)
    dist, idx = cKDTree(spec.points).query(spec.points + h)
    return dist <= tol, idx


def s_h(spec: DiscreteMeasure, h, tol: float = DEFAULT_CONFIG.match_tol) -> PointSet:
    """S_h = S ∩ (S − h): atoms s with some atom within tol of s + h"""
    hit, _ = _match_shift(spec, h, tol)
    return PointSet(spec.points[hit], spec.box.copy(), spec.dedup_tol)


def nu_h(spec: DiscreteMeasure, h, tol: float = DEFAULT_CONFIG.match_tol) -> DiscreteMeasure:
    """ν_h = Σ_{s ∈ S_h} μ̂(s)·conj(μ̂(s + h)) δ_s (empty when h ∉ S − S)"""
    hit, idx = _match_shift(spec, h, tol)
    weights = spec.weights[hit] * np.conj(spec.weights[idx[hit]])
    alive = np.abs(weights) >= PURGE
    return DiscreteMeasure(spec.points[hit][alive], weights[alive], spec.box.copy(), spec.dedup_tol)


@dataclass
class LeakReport:
    """Share of |ν̂_h| lying outside a neighbourhood of the truncated Λ−Λ"""
    leak: float
    outside_mass: float
    total_mass: float
    neighbourhood: float
    atoms: int
    localizable: bool

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def nu_h_support_check(spec: DiscreteMeasure, h, support_set: PointSet, grid: FrequencyGrid,
                       tol: Optional[float] = None, match_tol: float = DEFAULT_CONFIG.match_tol,
                       config: RunConfig = DEFAULT_CONFIG) -> LeakReport:
    """
    Evaluate ν̂_h on a grid in physical space and measure the mass leaking
    away from support_set (normally the truncated Λ−Λ)

    Spectral atoms are tapered by exp(−taper·π(|s|/F)^2), F = the largest
    |s|, so the truncated transform is a sum of narrow Gaussian bumps. The
    default neighbourhood is four bump widths.
    """
    nu = nu_h(spec, h, match_tol)
    if nu.size == 0:
        raise EmptySetError("ν_h is empty: h is not in S − S at this tolerance")
    F = float(np.max(np.linalg.norm(nu.points, axis=1)))
    if F > 0:
        taper = np.exp(-config.taper * np.pi * (np.linalg.norm(nu.points, axis=1) / F) ** 2)
    else:
        taper = np.ones(nu.size)
    if tol is None:
        tol = 4 * math.sqrt(config.taper / math.pi) / F if F > 0 else float(np.max(grid.half_widths))
    grid.check_cap(config.grid_cap)
    xs = grid.points()
    values = np.abs(exp_sum(nu.points, nu.weights * taper, xs, -1.0, config))
    total = math.fsum(values)
    if total == 0:
        raise EmptySetError("ν̂_h vanishes on the grid: zero total mass")
    if support_set.size:
        dist, _ = cKDTree(support_set.points).query(xs)
        outside = dist > tol
    else:
        outside = np.ones(len(xs), dtype=bool)
    outside_mass = math.fsum(values[outside])
    localizable = nu.size >= 2
    if not localizable:
        logger.info("ν_h has a single atom: its transform is a pure exponential, leak is not meaningful")
    return LeakReport(leak=outside_mass / total, outside_mass=outside_mass * grid.cell_volume(),
                      total_mass=total * grid.cell_volume(), neighbourhood=tol, atoms=nu.size,
                      localizable=localizable)


def translation_bounded_norm(mu: DiscreteMeasure) -> float:
    """max over atom-anchored closed unit balls of Σ |weights|"""
    if mu.size == 0:
        return 0.0
    tree = cKDTree(mu.points)
    mags = np.abs(mu.weights)
    neighbours = tree.query_ball_point(mu.points, 1.0 + mu.dedup_tol)
    return max(math.fsum(mags[idx]) for idx in neighbours)
