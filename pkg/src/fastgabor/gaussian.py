"""1-D Gaussian smoothing engines.

Three interchangeable kinds back every decomposition stage:

* :class:`RecursiveIIR` -- third-order forward/backward all-pole recursion
  with cost independent of sigma (the fast path),
* :class:`ExactFIR` -- direct convolution with a truncated unit-sum
  sampled Gaussian (the verification path),
* :class:`Box` -- unnormalized moving sum with zero padding (the windowed
  DFT cross-check path).

The recursion coefficients come from a precomputed minimax pole table
rather than the classic q-polynomial: for each tabulated sigma the three
poles of the forward pass were optimized to minimize the worst-case
impulse-response deviation from the sampled Gaussian, and intermediate
sigmas interpolate the pole parameters linearly in log2(sigma).  The
table spans sigma in [0.5, 32]; larger sigmas rescale the top knot's
poles so the composed impulse-response variance matches sigma^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np
from scipy.ndimage import correlate1d
from scipy.optimize import brentq
from scipy.signal import lfilter, lfilter_zi

from .metrics import OpCounters


@dataclass(frozen=True)
class RecursiveIIR:
    """Recursive Gaussian smoother marker (coefficients derived from sigma)."""


@dataclass(frozen=True)
class ExactFIR:
    """Truncated exact FIR smoother; kernel support is radius*sigma."""

    radius: float = 6.0

    def __post_init__(self) -> None:
        if self.radius < 3:
            raise ValueError("truncation radius must be at least 3 sigma")


@dataclass(frozen=True)
class Box:
    """Moving-sum smoother over [-half_width, half_width], zero padded."""

    half_width: int

    def __post_init__(self) -> None:
        if self.half_width < 0:
            raise ValueError("box half-width must be non-negative")


@dataclass(frozen=True)
class _AsymBox:
    # Internal: moving sum over offsets [lo, hi]; the sliding-DFT window
    # [-M//2, M-1-M//2] is asymmetric for even M.
    lo: int
    hi: int


SmootherKind = Union[RecursiveIIR, ExactFIR, Box, _AsymBox]


# Minimax pole table for the third-order recursion.  Rows correspond to
# log2(sigma) = -1.0, -0.75, ..., 5.0; columns parameterize the forward
# poles as (log(r-1), phi, log(d-1)) for the z-plane pole pair of
# magnitude 1/r at angle +-phi plus the real pole 1/d.
_TABLE_LOG2S = np.linspace(-1.0, 5.0, 25)
_TABLE_PARAMS = np.array([
    [1.4935547894, 1.7389422874, 1.4116802788],
    [1.0124325346, 1.6028888671, 0.9948121036],
    [0.7060188604, 1.4246405642, 0.7655646807],
    [0.3711981889, 1.3035671168, 0.4599139117],
    [0.0723219048, 1.1741421430, 0.1988303275],
    [-0.0657826821, 1.0609426640, 0.0641342325],
    [-0.1084526360, 0.8746229033, 0.0520603916],
    [-0.3079872798, 0.7888980715, -0.2103392209],
    [-0.4435572915, 0.6681318749, -0.3543999555],
    [-0.5826541508, 0.5511044975, -0.4681767292],
    [-0.6341889379, 0.4375707759, -0.4950920113],
    [-0.9438814088, 0.3960503190, -0.8422106914],
    [-1.1264093957, 0.3331316708, -1.0232036316],
    [-1.3323529220, 0.2853777435, -1.2419374903],
    [-1.5043108087, 0.2384505949, -1.4119365035],
    [-1.6909017377, 0.2010996380, -1.6007291308],
    [-1.8639872273, 0.1677245302, -1.7693707791],
    [-2.0526626380, 0.1419695700, -1.9627706878],
    [-2.2480922032, 0.1206592327, -2.1643322734],
    [-2.4183618584, 0.1007997229, -2.3318115898],
    [-2.6108636240, 0.0856583363, -2.5302995718],
    [-2.7812366868, 0.0716083982, -2.6981612487],
    [-2.9595594412, 0.0602521009, -2.8771310090],
    [-3.1353804585, 0.0506201753, -3.0527659020],
    [-3.3165061207, 0.0427250483, -3.2360423517],
])


@dataclass(frozen=True)
class GaussianCoeffs:
    """Third-order recursion y[n] = B*x[n] + (b1*y[n-1]+b2*y[n-2]+b3*y[n-3])/b0.

    Applied forward then backward for zero phase; B normalizes each pass
    to unit DC gain.
    """

    sigma: float
    b0: float
    b1: float
    b2: float
    b3: float
    B: float

    def denominator(self) -> np.ndarray:
        return np.array([self.b0, -self.b1, -self.b2, -self.b3])


def _interp_params(sigma: float) -> np.ndarray:
    l2 = math.log2(sigma)
    l2 = min(max(l2, _TABLE_LOG2S[0]), _TABLE_LOG2S[-1])
    out = np.empty(3)
    for j in range(3):
        out[j] = np.interp(l2, _TABLE_LOG2S, _TABLE_PARAMS[:, j])
    return out


def _poles_from_params(params: np.ndarray) -> np.ndarray:
    # Poles expressed with magnitude > 1 (reciprocals of the z-plane poles).
    lr, phi, ld = params
    r = 1.0 + math.exp(lr)
    d = 1.0 + math.exp(ld)
    return np.array([r * np.exp(1j * phi), r * np.exp(-1j * phi), d + 0j])


def _cascade_variance(poles: np.ndarray) -> float:
    # Variance of the composed forward+backward impulse response.
    return float(np.sum(2.0 * poles / (poles - 1.0) ** 2).real)


def _poles_for(sigma: float) -> np.ndarray:
    if sigma <= 32.0:
        return _poles_from_params(_interp_params(sigma))
    top = _poles_from_params(_TABLE_PARAMS[-1])

    def mismatch(q: float) -> float:
        return _cascade_variance(top ** (1.0 / q)) - sigma * sigma

    hi = 2.0
    while mismatch(hi) < 0.0:
        hi *= 2.0
    q = brentq(mismatch, 0.5, hi)
    return top ** (1.0 / q)


@lru_cache(maxsize=256)
def make_coeffs(sigma: float) -> GaussianCoeffs:
    """Recursion coefficients for a given sigma, unit DC gain per pass."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if sigma < 0.5:
        raise ValueError(
            "sigma below 0.5 is outside the recursive filter's validity range; "
            "use the ExactFIR smoother instead"
        )
    poles = _poles_for(sigma)
    a = np.poly(1.0 / poles).real  # [1, a1, a2, a3]
    gain = float(a.sum())
    coeffs = GaussianCoeffs(
        sigma=float(sigma), b0=1.0, b1=-float(a[1]), b2=-float(a[2]), b3=-float(a[3]), B=gain
    )
    # DC-gain sanity check on a constant signal, per the type invariant.
    const = np.full(16, 7.0)
    out = _iir_lines(const[None, :], coeffs, pad=8)
    if not np.all(np.abs(out - 7.0) <= 7.0 * 1e-6):
        raise ValueError(f"recursion for sigma={sigma} failed the DC-gain check")
    return coeffs


def sampled_gaussian(sigma: float, radius: float = 6.0) -> tuple[np.ndarray, int]:
    """Unit-sum sampled Gaussian kernel and its half-support in samples."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    half = max(1, math.ceil(radius * sigma))
    x = np.arange(-half, half + 1, dtype=np.float64)
    kernel = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return kernel / kernel.sum(), half


def pad_radius(kind: SmootherKind, sigma: float) -> int:
    """Stage-level replicate padding applied before modulation.

    Decomposition stages must pad the raw image and extend their trig
    tables to negative coordinates BEFORE modulating: padding the
    modulated signal instead would replicate a single phase sample and
    inject a spurious constant at the borders.  FIR needs the exact
    kernel half-support; the recursion needs enough samples for its
    tails to die out.
    """
    if isinstance(kind, ExactFIR):
        return max(1, math.ceil(kind.radius * sigma))
    if isinstance(kind, RecursiveIIR):
        return math.ceil(5.0 * sigma) + 2
    return 0


def _iir_lines(lines: np.ndarray, coeffs: GaussianCoeffs, pad: int | None = None) -> np.ndarray:
    if pad is None:
        pad = math.ceil(5.0 * coeffs.sigma) + 2
    # lfilter's inner loop is much faster on C-contiguous rows; transposed
    # views arriving from the vertical stage are copied once up front.
    x = np.pad(lines, ((0, 0), (pad, pad)), mode="edge") if pad else np.ascontiguousarray(lines)
    b = [coeffs.B]
    a = coeffs.denominator()
    zi = lfilter_zi(b, a)
    y, _ = lfilter(b, a, x, axis=1, zi=zi[None, :] * x[:, :1])
    y = y[:, ::-1]
    y, _ = lfilter(b, a, y, axis=1, zi=zi[None, :] * y[:, :1])
    y = y[:, ::-1]
    return np.ascontiguousarray(y[:, pad : pad + lines.shape[1]])


def _fir_lines(lines: np.ndarray, sigma: float, radius: float) -> np.ndarray:
    kernel, _ = sampled_gaussian(sigma, radius)
    return correlate1d(lines, kernel, axis=1, mode="nearest")


def _box_lines(lines: np.ndarray, lo: int, hi: int) -> np.ndarray:
    n = lines.shape[1]
    csum = np.zeros((lines.shape[0], n + 1))
    np.cumsum(lines, axis=1, out=csum[:, 1:])
    upper = np.clip(np.arange(n) + hi + 1, 0, n)
    lower = np.clip(np.arange(n) + lo, 0, n)
    return csum[:, upper] - csum[:, lower]


def smooth_lines(
    lines: np.ndarray,
    kind: SmootherKind,
    sigma: float,
    counters: OpCounters,
    nominal_len: int | None = None,
    direction: str = "h",
    assume_padded: bool = False,
) -> np.ndarray:
    """Smooth each row of a 2-D array independently.

    ``nominal_len`` is the per-line sample count charged to the counters;
    it defaults to the array width and is overridden when the caller has
    already padded the lines for boundary handling.  ``assume_padded``
    skips the recursion's own boundary padding; only valid when the
    caller padded by at least pad_radius and crops that margin away, so
    the initialization error cannot reach the retained samples.
    """
    count = lines.shape[0] * (nominal_len if nominal_len is not None else lines.shape[1])
    if isinstance(kind, RecursiveIIR):
        out = _iir_lines(lines, make_coeffs(sigma), pad=0 if assume_padded else None)
        counters.multiplications += 6 * count
        counters.additions += 6 * count
    elif isinstance(kind, ExactFIR):
        out = _fir_lines(lines, sigma, kind.radius)
        taps = 2 * max(1, math.ceil(kind.radius * sigma)) + 1
        counters.multiplications += taps * count
        counters.additions += (taps - 1) * count
    elif isinstance(kind, Box):
        out = _box_lines(lines, -kind.half_width, kind.half_width)
        counters.additions += 2 * kind.half_width * count
    elif isinstance(kind, _AsymBox):
        out = _box_lines(lines, kind.lo, kind.hi)
        counters.additions += (kind.hi - kind.lo) * count
    else:
        raise TypeError(f"unknown smoother kind {kind!r}")
    if direction == "h":
        counters.smoothings_h += lines.shape[0]
    else:
        counters.smoothings_v += lines.shape[0]
    return out


def smooth_1d(
    signal: np.ndarray, kind: SmootherKind, sigma: float, counters: OpCounters
) -> np.ndarray:
    """Smooth a single 1-D signal; forward then backward pass for the IIR kind."""
    signal = np.asarray(signal, dtype=np.float64)
    if signal.ndim != 1 or signal.size < 1:
        raise ValueError("signal must be a non-empty 1-D array")
    return smooth_lines(signal[None, :], kind, sigma, counters)[0]


def smooth_pair_1d(
    a: np.ndarray, b: np.ndarray, kind: SmootherKind, sigma: float, counters: OpCounters
) -> tuple[np.ndarray, np.ndarray]:
    """Smooth two signals; exists so per-stage cost is visibly two smoothings."""
    return smooth_1d(a, kind, sigma, counters), smooth_1d(b, kind, sigma, counters)
