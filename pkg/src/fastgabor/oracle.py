"""Brute-force reference implementations used as ground truth.

Deliberately naive O(support^2)-per-pixel double sums sharing the
Gaussian sampling and boundary conventions of the fast path, so that
ExactFIR comparisons isolate the decomposition algebra and IIR
comparisons isolate only the recursion's approximation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gabor import GaborParams
from .gaussian import sampled_gaussian
from .image_io import ComplexImage, RealImage
from .sdft import SdftSpec


@dataclass(frozen=True)
class OracleConfig:
    """Gaussian support truncation (multiples of sigma); boundary is replicate."""

    radius: float = 6.0

    def __post_init__(self) -> None:
        if self.radius < 3:
            raise ValueError("truncation radius must be at least 3 sigma")


def _tap_sum(
    padded: np.ndarray,
    kernel_re: np.ndarray,
    kernel_im: np.ndarray,
    height: int,
    width: int,
) -> ComplexImage:
    # kernel index [iy, ix] corresponds to offsets the kernel grids define;
    # padded has kernel-half margins on each side.
    ky, kx = kernel_re.shape
    acc_re = np.zeros((height, width))
    acc_im = np.zeros((height, width))
    for iy in range(ky):
        for ix in range(kx):
            patch = padded[iy : iy + height, ix : ix + width]
            acc_re += kernel_re[iy, ix] * patch
            acc_im += kernel_im[iy, ix] * patch
    return ComplexImage(width, height, acc_re, acc_im)


def fir_gabor(f: RealImage, p: GaborParams, cfg: OracleConfig = OracleConfig()) -> ComplexImage:
    """Direct evaluation of the 2-D complex Gabor filter, replicate boundary."""
    g, half = sampled_gaussian(p.sigma, cfg.radius)
    d = np.arange(-half, half + 1, dtype=np.float64)
    # Output offset (dx, dy) contributes f(x-dx, y-dy) * G * e^{i w (dx cos + dy sin)}.
    phase = p.omega * (math.cos(p.theta) * d[None, :] + math.sin(p.theta) * d[:, None])
    env = np.outer(g, g)
    kernel_re = env * np.cos(phase)
    kernel_im = env * np.sin(phase)
    # Kernel row iy holds dy = half - iy so padded slicing walks the taps.
    kernel_re = kernel_re[::-1, ::-1]
    kernel_im = kernel_im[::-1, ::-1]
    padded = np.pad(f.data, half, mode="edge")
    return _tap_sum(padded, kernel_re, kernel_im, f.height, f.width)


def localized_dft(
    f: RealImage, u: int, v: int, spec: SdftSpec, cfg: OracleConfig = OracleConfig()
) -> ComplexImage:
    """Direct evaluation of one localized-DFT bin.

    Gaussian mode weights taps with the sampled separable Gaussian
    (replicate boundary); box mode weights the Mx x My window samples by
    one with zero padding.  The tap at source offset (dm, dn) carries the
    position-independent phase
    e^{+i (w0x u (Mx//2 + dm) + w0y v (My//2 + dn))}.
    """
    from .gaussian import Box, _AsymBox

    if not (0 <= u < spec.mx and 0 <= v < spec.my):
        raise ValueError("bin indices outside the window grid")
    if isinstance(spec.smoother, (Box, _AsymBox)):
        lo_x, hi_x = -(spec.mx // 2), spec.mx - 1 - spec.mx // 2
        lo_y, hi_y = -(spec.my // 2), spec.my - 1 - spec.my // 2
        dm = np.arange(lo_x, hi_x + 1, dtype=np.float64)
        dn = np.arange(lo_y, hi_y + 1, dtype=np.float64)
        env = np.ones((dn.size, dm.size))
        pad_y, pad_x = -lo_y, -lo_x
        padded = np.pad(
            f.data,
            ((pad_y, hi_y), (pad_x, hi_x)),
            mode="constant",
        )
    else:
        sigma = spec.sigma_value
        gx, half_x = sampled_gaussian(sigma, cfg.radius)
        gy, half_y = sampled_gaussian(sigma, cfg.radius)
        dm = np.arange(-half_x, half_x + 1, dtype=np.float64)
        dn = np.arange(-half_y, half_y + 1, dtype=np.float64)
        env = np.outer(gy, gx)
        padded = np.pad(f.data, ((half_y, half_y), (half_x, half_x)), mode="edge")
    phase = spec.omega0x * u * (spec.mx // 2 + dm)[None, :] + spec.omega0y * v * (
        spec.my // 2 + dn
    )[:, None]
    kernel_re = env * np.cos(phase)
    kernel_im = env * np.sin(phase)
    return _tap_sum(padded, kernel_re, kernel_im, f.height, f.width)
