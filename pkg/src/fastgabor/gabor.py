"""Single-filter 2-D complex Gabor filtering via trigonometric decomposition.

The 2-D complex kernel G(x,y) e^{i omega (x cos t + y sin t)} separates
into a horizontal stage followed by a vertical stage; each stage reduces
to exactly two 1-D Gaussian smoothings of modulated signals plus a
recombination against precomputed cos/sin tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .gaussian import SmootherKind, pad_radius, smooth_lines
from .image_io import ComplexImage, RealImage
from .metrics import OpCounters

_TWO_PI = 2.0 * math.pi


@njit(cache=True)
def _modulate_pair(jr, ji, cos_t, sin_t, conjugate):
    """Fused pa = jr*c +- ji*s, pb = jr*s -+ ji*c in one pass over the
    operands; the sign flip selects the mirrored orientation pi - theta."""
    h, w = jr.shape
    pa = np.empty((h, w))
    pb = np.empty((h, w))
    for i in range(h):
        for k in range(w):
            a = jr[i, k]
            b = ji[i, k]
            c = cos_t[k]
            s = sin_t[k]
            if conjugate:
                pa[i, k] = a * c - b * s
                pb[i, k] = a * s + b * c
            else:
                pa[i, k] = a * c + b * s
                pb[i, k] = a * s - b * c
    return pa, pb


@njit(cache=True)
def _recombine_transposed(sa, sb, cos_t, sin_t, pad, n):
    """Blocked fused recombination re = c*sa + s*sb, im = s*sa - c*sb that
    also transposes (lines, samples) -> (samples, lines); one cache-friendly
    pass instead of four broadcasts plus two strided transpose copies."""
    lines = sa.shape[0]
    re = np.empty((n, lines))
    im = np.empty((n, lines))
    block = 128
    for i0 in range(0, lines, block):
        i1 = min(i0 + block, lines)
        for k in range(n):
            c = cos_t[pad + k]
            s = sin_t[pad + k]
            for i in range(i0, i1):
                a = sa[i, pad + k]
                b = sb[i, pad + k]
                re[k, i] = c * a + s * b
                im[k, i] = s * a - c * b
    return re, im


@dataclass(frozen=True)
class GaborParams:
    """(omega, theta, sigma) of one filter; theta is normalized into [0, pi)."""

    omega: float
    theta: float
    sigma: float

    def __post_init__(self) -> None:
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        theta = self.theta % math.pi
        object.__setattr__(self, "theta", theta)

    @property
    def omega_c(self) -> float:
        return self.omega * math.cos(self.theta)

    @property
    def omega_s(self) -> float:
        return self.omega * math.sin(self.theta)


@dataclass
class HorizontalStage:
    """Horizontal-stage intermediate J plus the parameters that produced it."""

    j: ComplexImage
    params: GaborParams
    smoother: SmootherKind


def _mod_tables(freq: float, lo: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    x = np.arange(lo, lo + n, dtype=np.float64)
    return np.cos(freq * x), np.sin(freq * x)


def horizontal_stage(
    f: RealImage, p: GaborParams, kind: SmootherKind, counters: OpCounters
) -> HorizontalStage:
    """Row-wise 1-D Gabor filtering: two smoothings of modulated rows."""
    height, width = f.data.shape
    pad = pad_radius(kind, p.sigma)
    data = np.pad(f.data, ((0, 0), (pad, pad)), mode="edge") if pad else f.data
    cos_t, sin_t = _mod_tables(p.omega_c, -pad, width + 2 * pad)

    fc = data * cos_t
    fs = data * sin_t
    counters.multiplications += 2 * height * width

    sc = smooth_lines(fc, kind, p.sigma, counters, nominal_len=width, direction="h", assume_padded=bool(pad))
    ss = smooth_lines(fs, kind, p.sigma, counters, nominal_len=width, direction="h", assume_padded=bool(pad))
    if pad:
        sc = sc[:, pad : pad + width]
        ss = ss[:, pad : pad + width]
        cos_t = cos_t[pad : pad + width]
        sin_t = sin_t[pad : pad + width]

    re = cos_t * sc + sin_t * ss
    im = sin_t * sc - cos_t * ss
    counters.multiplications += 4 * height * width
    counters.additions += 2 * height * width
    return HorizontalStage(ComplexImage(width, height, re, im), p, kind)


def _vertical(h: HorizontalStage, counters: OpCounters, conjugate: bool) -> ComplexImage:
    """Column-wise stage; conjugate=True evaluates the mirrored orientation pi-theta.

    All arithmetic runs on the transposed planes so that the smoothings and
    modulations walk contiguous memory; the result is transposed back once.
    """
    p = h.params
    kind = h.smoother
    height, width = h.j.re.shape
    pad = pad_radius(kind, p.sigma)
    jr = np.pad(h.j.re.T, ((0, 0), (pad, pad)), mode="edge") if pad else h.j.re.T
    ji = np.pad(h.j.im.T, ((0, 0), (pad, pad)), mode="edge") if pad else h.j.im.T
    cos_t, sin_t = _mod_tables(p.omega_s, -pad, height + 2 * pad)

    # (f_cr +- f_si, f_sr -+ f_ci)
    pa, pb = _modulate_pair(
        np.ascontiguousarray(jr), np.ascontiguousarray(ji), cos_t, sin_t, conjugate
    )
    counters.multiplications += 4 * height * width
    counters.additions += 2 * height * width

    sa = smooth_lines(pa, kind, p.sigma, counters, nominal_len=height, direction="v", assume_padded=bool(pad))
    sb = smooth_lines(pb, kind, p.sigma, counters, nominal_len=height, direction="v", assume_padded=bool(pad))

    re, im = _recombine_transposed(
        np.ascontiguousarray(sa), np.ascontiguousarray(sb), cos_t, sin_t, pad, height
    )
    counters.multiplications += 4 * height * width
    counters.additions += 2 * height * width
    return ComplexImage(width, height, re, im)


def vertical_stage(h: HorizontalStage, counters: OpCounters) -> ComplexImage:
    """Column-wise 1-D Gabor filtering of the horizontal intermediate."""
    return _vertical(h, counters, conjugate=False)


def gabor_filter(
    f: RealImage, p: GaborParams, kind: SmootherKind, counters: OpCounters
) -> ComplexImage:
    """Full 2-D complex Gabor filter: horizontal stage then vertical stage."""
    return vertical_stage(horizontal_stage(f, p, kind, counters), counters)
