"""Separable 2-D complex Gabor filtering and Gaussian-windowed localized sliding DFT.

The library decomposes the complex Gabor kernel into trigonometric
modulations around 1-D Gaussian smoothings, reuses horizontal
intermediates across mirrored orientations of a filter bank, and applies
the same machinery to per-pixel windowed DFT bins with conjugate-symmetry
reuse.  Brute-force oracles, SER metrics and arithmetic-operation
counters support validation and benchmarking.
"""

from .image_io import (
    RealImage,
    ComplexImage,
    load_grayscale,
    write_magnitude,
    write_bank_container,
    read_bank_container,
)
from .gaussian import (
    RecursiveIIR,
    ExactFIR,
    Box,
    GaussianCoeffs,
    make_coeffs,
    sampled_gaussian,
    smooth_1d,
    smooth_pair_1d,
)
from .gabor import GaborParams, HorizontalStage, horizontal_stage, vertical_stage, gabor_filter
from .bank import (
    BankSpec,
    BankOutput,
    conjugate_image,
    vertical_stage_conjugate,
    compute_bank,
    compute_bank_noreuse,
)
from .sdft import SdftSpec, SdftOutput, sdft_horizontal, sdft_bin, sdft_full
from .oracle import OracleConfig, fir_gabor, localized_dft
from .metrics import OpCounters, SerReport, ser, per_pixel_counts

__all__ = [
    "RealImage",
    "ComplexImage",
    "load_grayscale",
    "write_magnitude",
    "write_bank_container",
    "read_bank_container",
    "RecursiveIIR",
    "ExactFIR",
    "Box",
    "GaussianCoeffs",
    "make_coeffs",
    "sampled_gaussian",
    "smooth_1d",
    "smooth_pair_1d",
    "GaborParams",
    "HorizontalStage",
    "horizontal_stage",
    "vertical_stage",
    "gabor_filter",
    "BankSpec",
    "BankOutput",
    "conjugate_image",
    "vertical_stage_conjugate",
    "compute_bank",
    "compute_bank_noreuse",
    "SdftSpec",
    "SdftOutput",
    "sdft_horizontal",
    "sdft_bin",
    "sdft_full",
    "OracleConfig",
    "fir_gabor",
    "localized_dft",
    "OpCounters",
    "SerReport",
    "ser",
    "per_pixel_counts",
]
