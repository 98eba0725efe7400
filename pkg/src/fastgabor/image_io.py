"""Grayscale PGM I/O and the GBNK complex filter-output container."""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

_GBNK_MAGIC = b"GBNK"
_GBNK_VERSION = 1
_SDFT_FLAG = 1 << 24


class ImageFormatError(ValueError):
    """Raised for unreadable or malformed image files."""


class ContainerFormatError(ValueError):
    """Raised for malformed GBNK containers."""


@dataclass
class RealImage:
    """2-D grid of real samples, stored row-major as a (H, W) float64 array."""

    width: int
    height: int
    data: np.ndarray

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be at least 1x1")
        self.data = np.ascontiguousarray(self.data, dtype=np.float64)
        if self.data.shape != (self.height, self.width):
            raise ValueError("data shape does not match declared dimensions")
        if not np.all(np.isfinite(self.data)):
            raise ValueError("image samples must be finite")

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "RealImage":
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
        return cls(width=arr.shape[1], height=arr.shape[0], data=arr)


@dataclass
class ComplexImage:
    """2-D grid of complex samples held as planar real/imaginary (H, W) arrays."""

    width: int
    height: int
    re: np.ndarray
    im: np.ndarray

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be at least 1x1")
        self.re = np.ascontiguousarray(self.re, dtype=np.float64)
        self.im = np.ascontiguousarray(self.im, dtype=np.float64)
        shape = (self.height, self.width)
        if self.re.shape != shape or self.im.shape != shape:
            raise ValueError("plane shapes do not match declared dimensions")
        if not (np.all(np.isfinite(self.re)) and np.all(np.isfinite(self.im))):
            raise ValueError("image samples must be finite")

    @classmethod
    def from_planes(cls, re: np.ndarray, im: np.ndarray) -> "ComplexImage":
        re = np.asarray(re, dtype=np.float64)
        im = np.asarray(im, dtype=np.float64)
        if re.shape != im.shape or re.ndim != 2:
            raise ValueError("planes must be 2-D arrays of identical shape")
        return cls(width=re.shape[1], height=re.shape[0], re=re, im=im)

    def to_complex(self) -> np.ndarray:
        return self.re + 1j * self.im


def _read_pgm_tokens(raw: bytes, count: int) -> tuple[list[int], int]:
    # Header tokens are whitespace-separated; '#' starts a comment to end of line.
    tokens: list[int] = []
    i = 0
    while len(tokens) < count:
        if i >= len(raw):
            raise ImageFormatError("unexpected end of data")
        c = raw[i : i + 1]
        if c in b" \t\r\n":
            i += 1
        elif c == b"#":
            j = raw.find(b"\n", i)
            if j < 0:
                raise ImageFormatError("unexpected end of data")
            i = j + 1
        else:
            j = i
            while j < len(raw) and raw[j : j + 1] not in b" \t\r\n":
                j += 1
            tok = raw[i:j]
            if not tok.isdigit():
                raise ImageFormatError(f"malformed header token {tok!r}")
            tokens.append(int(tok))
            i = j
    return tokens, i


def load_grayscale(path) -> RealImage:
    """Load a binary PGM (P5) image, 8-bit or 16-bit, without rescaling."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ImageFormatError(f"unreadable file {path}: {exc}") from exc
    if len(raw) < 2:
        raise ImageFormatError("unexpected end of data")
    magic = raw[:2]
    if magic != b"P5":
        raise ImageFormatError(f"unsupported format {magic!r} (binary PGM P5 required)")
    (width, height, maxval), pos = _read_pgm_tokens(raw[2:], 3)
    pos += 2
    if width < 1 or height < 1:
        raise ImageFormatError("malformed header: non-positive dimensions")
    if not 0 < maxval < 65536:
        raise ImageFormatError(f"malformed header: maxval {maxval} out of range")
    # Exactly one whitespace byte separates the header from the payload.
    pos += 1
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    need = width * height * dtype.itemsize
    payload = raw[pos : pos + need]
    if len(payload) < need:
        raise ImageFormatError("unexpected end of data")
    samples = np.frombuffer(payload, dtype=dtype).astype(np.float64)
    return RealImage(width=width, height=height, data=samples.reshape(height, width))


def write_magnitude(img: ComplexImage, path) -> None:
    """Write |img| normalized to its own max as an 8-bit binary PGM."""
    mag = np.hypot(img.re, img.im)
    peak = mag.max()
    if peak == 0.0:
        out = np.zeros_like(mag, dtype=np.uint8)
    else:
        # round-half-up, so 127.5 maps to 128
        out = np.floor(255.0 * mag / peak + 0.5).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (img.width, img.height))
        fh.write(out.tobytes())


def _params_triple(params) -> tuple[float, float, float]:
    if hasattr(params, "omega"):
        return float(params.omega), float(params.theta), float(params.sigma)
    a, b, c = params
    return float(a), float(b), float(c)


def write_bank_container(entries, path, sdft: bool = False) -> None:
    """Write (params, ComplexImage) entries to a GBNK container.

    ``params`` may be any object with omega/theta/sigma attributes or a
    3-tuple; for SDFT outputs the slots hold (u, v, sigma) and the SDFT
    flag bit is set in the version word.
    """
    entries = list(entries)
    if not entries:
        raise ValueError("container must hold at least one entry")
    width = entries[0][1].width
    height = entries[0][1].height
    for _, img in entries:
        if img.width != width or img.height != height:
            raise ValueError("all container images must share dimensions")
    version = _GBNK_VERSION | (_SDFT_FLAG if sdft else 0)
    with open(path, "wb") as fh:
        fh.write(_GBNK_MAGIC)
        fh.write(struct.pack("<IIII", version, width, height, len(entries)))
        for params, img in entries:
            fh.write(struct.pack("<ddd", *_params_triple(params)))
            fh.write(np.ascontiguousarray(img.re, dtype="<f8").tobytes())
            fh.write(np.ascontiguousarray(img.im, dtype="<f8").tobytes())


def read_bank_container(path):
    """Read a GBNK container; returns (entries, sdft_flag).

    Entries are ((omega, theta, sigma), ComplexImage) tuples, or
    ((u, v, sigma), ComplexImage) when the SDFT flag is set.
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw[:4] != _GBNK_MAGIC:
        raise ContainerFormatError("not a GBNK container")
    if len(raw) < 20:
        raise ContainerFormatError("truncated container")
    version, width, height, count = struct.unpack("<IIII", raw[4:20])
    sdft = bool(version & _SDFT_FLAG)
    if version & 0xFFFFFF != _GBNK_VERSION:
        raise ContainerFormatError(f"unsupported container version {version & 0xFFFFFF}")
    plane = width * height
    entry_bytes = 24 + 16 * plane
    if len(raw) < 20 + count * entry_bytes:
        raise ContainerFormatError("truncated container")
    entries = []
    pos = 20
    for _ in range(count):
        triple = struct.unpack("<ddd", raw[pos : pos + 24])
        pos += 24
        re = np.frombuffer(raw[pos : pos + 8 * plane], dtype="<f8").reshape(height, width)
        pos += 8 * plane
        im = np.frombuffer(raw[pos : pos + 8 * plane], dtype="<f8").reshape(height, width)
        pos += 8 * plane
        entries.append((triple, ComplexImage(width, height, re.copy(), im.copy())))
    return entries, sdft
