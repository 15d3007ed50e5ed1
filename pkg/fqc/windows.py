"""
Window functions for model measures

A window function φ lives on the internal space (m = 1). Model measures
carry the weights φ̂(p2(γ)) and their spectra the values φ(p2(γ*)), so the
one thing every family must know exactly is the support of φ̂. The
families here are:

- bspline(k, a): φ̂ is the k-fold convolution of normalized indicators of
  [−a/k, a/k], so supp φ̂ = [−a, a] and φ(x) = sinc(2ax/k)^k
- fejer(a): bspline of order 2
- squared(ψ): φ = |ψ|^2 ≥ 0, support doubles
- lemma_al1: real φ with ∫φ = 0, supp φ̂ ⊂ [−2/3, 2/3] and φ > 0 far out
- surrogate: band-limited φ = |ψ|^2 vanishing on a prescribed finite set
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import BSpline

from .errors import BudgetError, InvalidInputError, WindowError

logger = logging.getLogger(__name__)

_LOG_FLOAT_MAX = 700.0


@dataclass(eq=False)
class WindowFunction:
    """φ on the internal line with the closed interval containing supp φ̂"""
    kind: str
    support: Tuple[float, float]
    function: Callable[[np.ndarray], np.ndarray]
    transform: Optional[Callable[[np.ndarray], np.ndarray]] = None
    params: Dict[str, Any] = field(default_factory=dict)
    nonnegative: bool = False
    decay: Optional[Callable[[float], float]] = None

    def __call__(self, x) -> np.ndarray:
        return self.function(np.asarray(x, dtype=float))

    def fourier(self, t) -> np.ndarray:
        if self.transform is None:
            raise WindowError(f"Window '{self.kind}' has no closed-form transform")
        return self.transform(np.asarray(t, dtype=float))

    @property
    def integral(self) -> float:
        """∫φ = φ̂(0)"""
        return float(np.real(self.fourier(np.zeros(1))[0]))

    def decay_radius(self, threshold: float) -> float:
        """Internal radius beyond which |φ| < threshold (inf if φ does not decay)"""
        if threshold <= 0:
            raise InvalidInputError("decay threshold must be > 0")
        if self.decay is None:
            return math.inf
        return self.decay(threshold)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "support": list(self.support),
            "nonnegative": self.nonnegative,
            "params": {k: v for k, v in self.params.items() if isinstance(v, (int, float, str, bool))},
        }


def _bspline_pair(order: int, half_width: float):
    h = half_width / order
    knots = np.linspace(-half_width, half_width, order + 1)
    element = BSpline.basis_element(knots, extrapolate=False)

    def function(x):
        return np.sinc(2 * h * x) ** order

    def transform(t):
        t = np.asarray(t, dtype=float)
        values = np.nan_to_num(element(t.reshape(-1)), nan=0.0).reshape(t.shape)
        # right end of the last knot span is open in scipy
        values[np.abs(t) >= half_width] = 0.0
        return values / (2 * h)

    def decay(threshold):
        return (1.0 / threshold) ** (1.0 / order) / (2 * np.pi * h)

    return function, transform, decay


def bspline(order: int, half_width: float) -> WindowFunction:
    """φ(x) = sinc(2hx)^k with h = a/k; φ̂ is the normalized B-spline on [−a, a]"""
    if order < 1:
        raise InvalidInputError(f"B-spline order must be >= 1, got {order}")
    if half_width <= 0:
        raise InvalidInputError(f"B-spline half width must be > 0, got {half_width}")
    function, transform, decay = _bspline_pair(int(order), float(half_width))
    return WindowFunction(kind="bspline", support=(-half_width, half_width), function=function,
                          transform=transform, params={"order": int(order), "half_width": float(half_width)},
                          nonnegative=(order % 2 == 0), decay=decay)


def fejer(half_width: float) -> WindowFunction:
    wf = bspline(2, half_width)
    wf.kind = "fejer"
    return wf


def squared(base: WindowFunction) -> WindowFunction:
    """φ = |ψ|^2; B-spline bases stay closed form (order doubles, same h)"""
    lo, hi = base.support
    if base.kind in ("bspline", "fejer", "squared") and "order" in base.params:
        order = 2 * base.params["order"]
        wf = bspline(order, 2 * base.params["half_width"])
        wf.kind = "squared"
        wf.params["base_order"] = base.params["order"]
        wf.nonnegative = True
        return wf

    def function(x):
        return np.abs(base.function(x)) ** 2

    decay = None
    if base.decay is not None:
        decay = lambda threshold: base.decay(math.sqrt(threshold))
    return WindowFunction(kind="squared", support=(2 * lo, 2 * hi), function=function, transform=None,
                          params={"base": base.kind}, nonnegative=True, decay=decay)


def constant(value: float = 1.0) -> WindowFunction:
    """φ ≡ value (φ̂ = value·δ_0); does not decay, so spectra cannot be truncated"""
    return WindowFunction(kind="constant", support=(0.0, 0.0),
                          function=lambda x: np.full(np.shape(x), float(value)),
                          transform=None, params={"value": float(value)}, nonnegative=value >= 0)


# ---------------------------------------------------------------------------
# zero-integral window that is positive far out
# ---------------------------------------------------------------------------

def _triangle(t, a):
    return np.clip(1 - np.abs(t) / a, 0, None) / a


def lemma_al1_function(R_target: float = 50.0, a: float = 1.0 / 3.0, scan_points: int = 20001) -> WindowFunction:
    """
    φ = αψ − βψ^2 with ψ(x) = sinc^2(ax) + sinc^2(a(x − s)), s = 1/(2a)

    The two Fejér kernels have disjoint zero sets so ψ > 0 everywhere, and
    supp ψ̂ = [−a, a]. α = 1/∫ψ and β = 1/∫ψ^2 force ∫φ = 0; supp φ̂ lies in
    [−2a, 2a]. R_reported is the last point of a symmetric scan of
    [−R_target, R_target] where φ ≤ 0; positivity is then verified on
    [R_reported, 10 R_reported] on both sides.
    """
    if not 0 < a < 0.5:
        raise InvalidInputError("ψ bandwidth a must lie in (0, 1/2) so that supp φ̂ ⊂ (−1, 1)")
    s = 1.0 / (2 * a)

    def psi(x):
        return np.sinc(a * x) ** 2 + np.sinc(a * (x - s)) ** 2

    def psi_hat(t):
        return _triangle(t, a) * (1 + np.exp(-2j * np.pi * t * s))

    quartic = bspline(4, 2 * a)

    def cross_hat(t):
        # transform of sinc^2(ax)·sinc^2(a(x − s)) as ∫ T(u) T(t − u) e^{−2πi(t−u)s} du
        lo, hi = max(-a, t - a), min(a, t + a)
        if lo >= hi:
            return 0j
        re = quad(lambda u: _triangle(u, a) * _triangle(t - u, a) * math.cos(2 * math.pi * (t - u) * s),
                  lo, hi, points=[0.0, t], limit=200)[0]
        im = quad(lambda u: -_triangle(u, a) * _triangle(t - u, a) * math.sin(2 * math.pi * (t - u) * s),
                  lo, hi, points=[0.0, t], limit=200)[0]
        return complex(re, im)

    def psi_sq_hat(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        single = quartic.transform(t) * (1 + np.exp(-2j * np.pi * t * s))
        cross = np.array([cross_hat(float(v)) for v in t.reshape(-1)]).reshape(t.shape)
        return single + 2 * cross

    alpha = 1.0 / (2.0 / a)
    beta = 1.0 / float(np.real(psi_sq_hat(np.zeros(1))[0]))

    def function(x):
        p = psi(x)
        return alpha * p - beta * p ** 2

    def transform(t):
        return alpha * psi_hat(t) - beta * psi_sq_hat(t)

    xs = np.linspace(-R_target, R_target, scan_points)
    nonpositive = np.abs(xs[function(xs) <= 0])
    step = xs[1] - xs[0]
    R_reported = float(nonpositive.max() + step) if nonpositive.size else 0.0
    if R_reported >= R_target:
        raise WindowError(f"φ is not positive inside the scan range {R_target}; raise R_target")
    if R_reported > 0:
        tail = np.linspace(R_reported, 10 * R_reported, scan_points)
        if np.any(function(tail) <= 0) or np.any(function(-tail) <= 0):
            raise WindowError(f"positivity check failed beyond R = {R_reported}")
    logger.debug("lemma_al1 window: alpha=%.6g beta=%.6g R=%.4g", alpha, beta, R_reported)

    def decay(threshold):
        return s + math.sqrt(2 * (alpha + beta) / threshold) / (math.pi * a)

    return WindowFunction(kind="lemma_al1", support=(-2 * a, 2 * a), function=function, transform=transform,
                          params={"a": a, "alpha": alpha, "beta": beta, "R_reported": R_reported,
                                  "R_target": float(R_target)},
                          nonnegative=False, decay=decay)


# ---------------------------------------------------------------------------
# band-limited surrogate vanishing on a finite set
# ---------------------------------------------------------------------------

def surrogate(zeros: Sequence[float], epsilon: float, delta_floor: float = 1e-9,
              slack: float = 0.9, normalize_range: Optional[float] = None) -> WindowFunction:
    """
    φ = |ψ|^2 with ψ(x) = e^{2πicx}·sinc^2(bx)·Π_q sin(πδ(x − q))

    c = ε/2 and b = ε/8 place supp ψ̂ inside (0, ε) as long as b + Kδ/2 < ε/2
    for K zeros; δ is taken at `slack` of that bound. φ then vanishes on
    every q, is ≥ 0 and has supp φ̂ ⊂ (−ε, ε). The product is accumulated in
    log space and scaled so that max φ = 1 on [−normalize_range, normalize_range].
    """
    if epsilon <= 0:
        raise InvalidInputError("surrogate bandwidth ε must be > 0")
    q = np.unique(np.asarray(zeros, dtype=float).reshape(-1))
    K = q.size
    b = epsilon / 8
    delta = slack * (epsilon / 2 - b) * 2 / K if K else 0.0
    if K and delta < delta_floor:
        raise BudgetError(f"{K} zeros need sine factors of width {delta:.3g} < floor {delta_floor:.3g}",
                          "shrink the truncation or the balls so that Q has fewer points")

    def log_abs(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        flat = x.reshape(-1)
        with np.errstate(divide='ignore'):
            out = 4 * np.log(np.abs(np.sinc(b * flat)))
            for start in range(0, K, 512):
                chunk = q[start:start + 512]
                out = out + 2 * np.log(np.abs(np.sin(np.pi * delta * (flat[:, None] - chunk[None, :])))).sum(axis=1)
        return out.reshape(x.shape)

    extent = normalize_range if normalize_range is not None else (float(np.max(np.abs(q))) if K else 1.0)
    sample = np.linspace(-extent, extent, 4001)
    finite = log_abs(sample)
    finite = finite[np.isfinite(finite)]
    shift = float(finite.max()) if finite.size else 0.0

    def function(x):
        return np.exp(log_abs(x) - shift)

    def decay(threshold):
        # shift is very negative once many zeros are placed; stay in log space
        log_radius = -0.25 * math.log(threshold) - shift / 4 - math.log(math.pi * b)
        return math.exp(min(log_radius, _LOG_FLOAT_MAX))

    return WindowFunction(kind="surrogate", support=(-epsilon, epsilon), function=function, transform=None,
                          params={"epsilon": epsilon, "b": b, "c": epsilon / 2, "delta": delta, "zeros": K,
                                  "log_scale": shift},
                          nonnegative=True, decay=decay)


def make_window(spec: Dict[str, Any]) -> WindowFunction:
    """Build a window from {"kind": ..., params} as used in configs and the CLI"""
    kind = spec.get("kind", "bspline")
    if kind == "bspline":
        return bspline(int(spec.get("order", 2)), float(spec.get("half_width", 0.5)))
    if kind == "fejer":
        return fejer(float(spec.get("half_width", 0.5)))
    if kind == "squared":
        return squared(bspline(int(spec.get("order", 2)), float(spec.get("half_width", 0.25))))
    if kind == "lemma_al1":
        return lemma_al1_function(float(spec.get("R_target", 50.0)))
    raise WindowError(f"Unknown window kind '{kind}'")
