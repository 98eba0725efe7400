"""Signal-to-error-ratio metrics and arithmetic-operation accounting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .image_io import ComplexImage


@dataclass
class OpCounters:
    """Mutable accumulator of arithmetic work.

    One fused multiply-add counts as 1 multiplication + 1 addition.
    Trigonometric-table construction and conjugate fills are excluded;
    smoothing costs are charged per nominal sample (boundary padding not
    counted).  Counters are thread-confined: parallel workers each own
    one and merge at the join.
    """

    multiplications: int = 0
    additions: int = 0
    smoothings_h: int = 0
    smoothings_v: int = 0

    def merge(self, other: "OpCounters") -> "OpCounters":
        self.multiplications += other.multiplications
        self.additions += other.additions
        self.smoothings_h += other.smoothings_h
        self.smoothings_v += other.smoothings_v
        return self

    def copy(self) -> "OpCounters":
        return OpCounters(
            self.multiplications, self.additions, self.smoothings_h, self.smoothings_v
        )

    def __add__(self, other: "OpCounters") -> "OpCounters":
        return self.copy().merge(other)


@dataclass
class SerReport:
    """Per-part SER of one comparison; params is (omega, theta, sigma) or (u, v)."""

    ser_real: float
    ser_imag: float
    params: tuple
    image_id: str = ""

    def lines(self) -> list[str]:
        return [
            f"image_id={self.image_id}",
            f"params={','.join(repr(p) for p in self.params)}",
            f"ser_real={self.ser_real!r}",
            f"ser_imag={self.ser_imag!r}",
        ]


def ser(approx: ComplexImage, truth: ComplexImage, part: str) -> float:
    """SER in dB of one plane: 10*log10(sum truth^2 / sum (approx-truth)^2).

    Zero error energy yields +inf; zero truth energy with nonzero error
    yields -inf.  Both are sentinels, not errors.
    """
    if (approx.width, approx.height) != (truth.width, truth.height):
        raise ValueError("SER operands must share dimensions")
    if part == "real":
        a, t = approx.re, truth.re
    elif part == "imag":
        a, t = approx.im, truth.im
    else:
        raise ValueError(f"part must be 'real' or 'imag', got {part!r}")
    signal = float(np.sum(t * t))
    error = float(np.sum((a - t) ** 2))
    if error == 0.0:
        return math.inf
    if signal == 0.0:
        return -math.inf
    return 10.0 * math.log10(signal / error)


def ser_report(approx: ComplexImage, truth: ComplexImage, params, image_id: str = "") -> SerReport:
    return SerReport(
        ser_real=ser(approx, truth, "real"),
        ser_imag=ser(approx, truth, "imag"),
        params=tuple(params),
        image_id=image_id,
    )


def per_pixel_counts(counters: OpCounters, width: int, height: int) -> tuple[float, float]:
    """(R_M, R_A): counter totals divided by the pixel count."""
    pixels = width * height
    if pixels <= 0:
        raise ValueError("zero-size image")
    return counters.multiplications / pixels, counters.additions / pixels


def fit_affine(xs, ys) -> tuple[float, float, float]:
    """Least-squares fit y = slope*x + intercept; returns (slope, intercept, R^2)."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    slope, intercept = np.polyfit(xs, ys, 1)
    return float(slope), float(intercept), _r_squared(ys, slope * xs + intercept)


def fit_features(features, ys) -> tuple[np.ndarray, float]:
    """Least-squares fit y = features @ coeffs; returns (coeffs, R^2)."""
    features = np.asarray(features, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    coeffs, *_ = np.linalg.lstsq(features, ys, rcond=None)
    return coeffs, _r_squared(ys, features @ coeffs)


def _r_squared(ys: np.ndarray, fit: np.ndarray) -> float:
    resid = float(np.sum((ys - fit) ** 2))
    total = float(np.sum((ys - ys.mean()) ** 2))
    if total == 0.0:
        return 1.0 if resid == 0.0 else 0.0
    return 1.0 - resid / total


def counter_lines(counters: OpCounters, width: int, height: int) -> list[str]:
    """Key=value summary used by the CLI."""
    rm, ra = per_pixel_counts(counters, width, height)
    return [
        f"multiplications={counters.multiplications}",
        f"additions={counters.additions}",
        f"smoothings_h={counters.smoothings_h}",
        f"smoothings_v={counters.smoothings_v}",
        f"rm_per_pixel={rm:.6f}",
        f"ra_per_pixel={ra:.6f}",
    ]


def write_csv(path_or_file, header: list[str], rows: list[list]) -> None:
    import csv

    def _dump(fh):
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)

    if hasattr(path_or_file, "write"):
        _dump(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as fh:
            _dump(fh)
