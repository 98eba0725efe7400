"""Gaussian-windowed 2-D localized sliding DFT with conjugate reuse.

Every pixel carries an Mx x My grid of DFT bins computed with a Gaussian
(or box) window.  Bin (u, v) factors into a horizontal stage shared by
all v, horizontal intermediates for u > Mx//2 are conjugates of their
mirror bins, and for real input the full grid is recovered from the
v <= My//2 half through DFT conjugate symmetry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bank import conjugate_image
from .gaussian import Box, SmootherKind, _AsymBox, pad_radius, smooth_lines
from .image_io import ComplexImage, RealImage
from .metrics import OpCounters

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SdftSpec:
    """Window extents, Gaussian sigma and smoothing engine of one transform.

    ``sigma=None`` selects the cut-off rule floor(min(Mx,My)/2) = 3*sigma.
    The box window spans the M samples at offsets [-M//2, M-1-M//2] per
    axis, matching the phase centers x_hat = x - Mx//2, y_hat = y - My//2.
    """

    mx: int
    my: int
    smoother: SmootherKind
    sigma: float | None = None

    def __post_init__(self) -> None:
        if self.mx < 1 or self.my < 1:
            raise ValueError("window extents must be at least 1")
        if self.sigma is not None and self.sigma <= 0:
            raise ValueError("sigma must be positive")

    @property
    def sigma_value(self) -> float:
        if self.sigma is not None:
            return self.sigma
        return (min(self.mx, self.my) // 2) / 3.0

    @property
    def omega0x(self) -> float:
        return _TWO_PI / self.mx

    @property
    def omega0y(self) -> float:
        return _TWO_PI / self.my


@dataclass
class SdftOutput:
    """bins[u][v] ComplexImages for u = 0..Mx-1, v = 0..My-1, plus counters."""

    bins: list[list[ComplexImage]]
    counters: OpCounters


def _axis_kind(spec: SdftSpec, m: int) -> SmootherKind:
    # Box windows are asymmetric for even M; Gaussian kinds pass through.
    if isinstance(spec.smoother, (Box, _AsymBox)):
        return _AsymBox(lo=-(m // 2), hi=m - 1 - m // 2)
    return spec.smoother


def _stage(
    jr: np.ndarray,
    ji: np.ndarray | None,
    freq: float,
    center: int,
    kind: SmootherKind,
    sigma: float,
    counters: OpCounters,
    axis: int,
) -> tuple[np.ndarray, np.ndarray]:
    """One localized-DFT stage along ``axis`` for a single bin frequency.

    Evaluates sum_m J(m) S(x-m) e^{-i freq (x_hat - m)} with
    x_hat = x - center; ji=None marks a purely real input (two mults per
    sample instead of four).
    """
    if axis == 0:
        jr = jr.T
        ji = None if ji is None else ji.T
    height_like, width = jr.shape
    pad = pad_radius(kind, sigma)
    if pad:
        jr = np.pad(jr, ((0, 0), (pad, pad)), mode="edge")
        if ji is not None:
            ji = np.pad(ji, ((0, 0), (pad, pad)), mode="edge")
    m = np.arange(-pad, width + pad, dtype=np.float64)
    cm = np.cos(freq * m)
    sm = np.sin(freq * m)

    if ji is None:
        pa = jr * cm
        pb = jr * sm
        counters.multiplications += 2 * height_like * width
    else:
        pa = jr * cm - ji * sm  # f_cr - f_si
        pb = jr * sm + ji * cm  # f_sr + f_ci
        counters.multiplications += 4 * height_like * width
        counters.additions += 2 * height_like * width

    direction = "v" if axis == 0 else "h"
    sa = smooth_lines(pa, kind, sigma, counters, nominal_len=width, direction=direction, assume_padded=bool(pad))
    sb = smooth_lines(pb, kind, sigma, counters, nominal_len=width, direction=direction, assume_padded=bool(pad))
    if pad:
        sa = sa[:, pad : pad + width]
        sb = sb[:, pad : pad + width]

    xhat = np.arange(width, dtype=np.float64) - center
    ca = np.cos(freq * xhat)
    sb_t = np.sin(freq * xhat)
    re = ca * sa + sb_t * sb
    im = ca * sb - sb_t * sa
    counters.multiplications += 4 * height_like * width
    counters.additions += 2 * height_like * width
    if axis == 0:
        re = re.T
        im = im.T
    return np.ascontiguousarray(re), np.ascontiguousarray(im)


def sdft_horizontal(
    f: RealImage, u: int, spec: SdftSpec, counters: OpCounters
) -> ComplexImage:
    """Horizontal intermediate J_u: two row-smoothings of modulated rows."""
    if not 0 <= u < spec.mx:
        raise ValueError(f"bin index u={u} outside [0, {spec.mx})")
    re, im = _stage(
        f.data,
        None,
        spec.omega0x * u,
        spec.mx // 2,
        _axis_kind(spec, spec.mx),
        spec.sigma_value,
        counters,
        axis=1,
    )
    return ComplexImage(f.width, f.height, re, im)


def _vertical_bin(
    j: ComplexImage, v: int, spec: SdftSpec, counters: OpCounters
) -> ComplexImage:
    re, im = _stage(
        j.re,
        j.im,
        spec.omega0y * v,
        spec.my // 2,
        _axis_kind(spec, spec.my),
        spec.sigma_value,
        counters,
        axis=0,
    )
    return ComplexImage(j.width, j.height, re, im)


def sdft_bin(
    f: RealImage, u: int, v: int, spec: SdftSpec, counters: OpCounters
) -> ComplexImage:
    """Single bin (u, v), computed directly without any reuse."""
    if not 0 <= v < spec.my:
        raise ValueError(f"bin index v={v} outside [0, {spec.my})")
    return _vertical_bin(sdft_horizontal(f, u, spec, counters), v, spec, counters)


def sdft_full(f: RealImage, spec: SdftSpec, counters: OpCounters) -> SdftOutput:
    """All Mx*My bins with horizontal and conjugate-symmetry reuse.

    When My < Mx the longer axis must run in the inner (vertical) stage,
    so the input is transposed, the window extents swapped, and the
    resulting bin grid transposed back.
    """
    if spec.my < spec.mx:
        spec_t = SdftSpec(mx=spec.my, my=spec.mx, smoother=spec.smoother, sigma=spec.sigma)
        out_t = sdft_full(RealImage.from_array(f.data.T), spec_t, counters)
        bins = [
            [
                ComplexImage(f.width, f.height, out_t.bins[v][u].re.T, out_t.bins[v][u].im.T)
                for v in range(spec.my)
            ]
            for u in range(spec.mx)
        ]
        return SdftOutput(bins, counters)

    mxh = spec.mx // 2
    myh = spec.my // 2
    stages: dict[int, ComplexImage] = {
        u: sdft_horizontal(f, u, spec, counters) for u in range(mxh + 1)
    }
    for u in range(mxh + 1, spec.mx):
        stages[u] = conjugate_image(stages[spec.mx - u])

    bins: list[list[ComplexImage | None]] = [[None] * spec.my for _ in range(spec.mx)]
    for u in range(spec.mx):
        for v in range(myh + 1):
            bins[u][v] = _vertical_bin(stages[u], v, spec, counters)
    for u in range(spec.mx):
        for v in range(myh + 1, spec.my):
            src = bins[(spec.mx - u) % spec.mx][(spec.my - v) % spec.my]
            bins[u][v] = conjugate_image(src)
    return SdftOutput(bins, counters)
