"""Gaussian-windowed localized sliding DFT: decomposition, reuse, symmetry."""

import math

import numpy as np
import pytest

from fastgabor import (
    Box,
    ExactFIR,
    OpCounters,
    RealImage,
    RecursiveIIR,
    SdftSpec,
    conjugate_image,
    localized_dft,
    sdft_bin,
    sdft_full,
    sdft_horizontal,
    smooth_1d,
)
from fastgabor.metrics import fit_features
from .conftest import random_image


def box_spec(mx, my=None):
    my = mx if my is None else my
    return SdftSpec(mx=mx, my=my, smoother=Box(half_width=1))


def gauss_spec(mx, my=None, sigma=None):
    my = mx if my is None else my
    return SdftSpec(mx=mx, my=my, smoother=ExactFIR(), sigma=sigma)


def rel_err(a, b):
    scale = max(np.abs(b.re).max(), np.abs(b.im).max(), 1e-300)
    return max(np.abs(a.re - b.re).max(), np.abs(a.im - b.im).max()) / scale


def interior_rel_err(a, b, margin):
    scale = max(np.abs(b.re).max(), np.abs(b.im).max(), 1e-300)
    sl = (slice(margin, -margin), slice(margin, -margin))
    return (
        max(np.abs((a.re - b.re)[sl]).max(), np.abs((a.im - b.im)[sl]).max()) / scale
    )


def test_spec_validation_and_defaults():
    with pytest.raises(ValueError):
        SdftSpec(mx=0, my=4, smoother=ExactFIR())
    with pytest.raises(ValueError):
        SdftSpec(mx=4, my=4, smoother=ExactFIR(), sigma=-1.0)
    spec = gauss_spec(8)
    assert spec.sigma_value == pytest.approx(4 / 3)
    assert spec.omega0x == pytest.approx(math.pi / 4)
    assert gauss_spec(4, 8).omega0y == pytest.approx(math.pi / 4)


def test_horizontal_u0_is_row_smoothing(img16):
    spec = gauss_spec(4)
    j = sdft_horizontal(img16, 0, spec, OpCounters())
    expected = np.stack(
        [
            smooth_1d(row, ExactFIR(), spec.sigma_value, OpCounters())
            for row in img16.data
        ]
    )
    assert np.max(np.abs(j.re - expected)) <= 1e-12
    assert np.max(np.abs(j.im)) <= 1e-12


def test_horizontal_impulse_box_phases():
    # A delta at x0 contributes e^{-i w0 u (x_hat - x0)} at the window
    # positions covering x0.
    data = np.zeros((1, 16))
    x0 = 8
    data[0, x0] = 1.0
    f = RealImage.from_array(data)
    spec = box_spec(4)
    j = sdft_horizontal(f, 1, spec, OpCounters())
    w0 = spec.omega0x
    for x in range(16):
        offset = x0 - x
        if -(4 // 2) <= offset <= 4 - 1 - 4 // 2:
            expected = np.exp(-1j * w0 * ((x - 4 // 2) - x0))
        else:
            expected = 0.0
        assert abs(complex(j.re[0, x], j.im[0, x]) - expected) <= 1e-12, x


def test_horizontal_conjugate_symmetry(img16):
    spec = gauss_spec(8)
    for u in range(1, 8):
        ju = sdft_horizontal(img16, u, spec, OpCounters())
        mirror = conjugate_image(sdft_horizontal(img16, 8 - u, spec, OpCounters()))
        assert rel_err(ju, mirror) <= 1e-12


def test_constant_image_box_dc_only():
    c = 3.0
    f = RealImage.from_array(np.full((16, 16), c))
    out = sdft_full(f, box_spec(4), OpCounters())
    sl = (slice(2, -2), slice(2, -2))
    assert np.max(np.abs(out.bins[0][0].re[sl] - 16.0 * c)) <= 1e-10
    assert np.max(np.abs(out.bins[0][0].im[sl])) <= 1e-10
    for u in range(4):
        for v in range(4):
            if (u, v) == (0, 0):
                continue
            assert np.max(np.abs(out.bins[u][v].re[sl])) <= 1e-10
            assert np.max(np.abs(out.bins[u][v].im[sl])) <= 1e-10


@pytest.mark.parametrize("m", [4, 8])
def test_box_mode_vs_oracle_interior(img16, m):
    spec = box_spec(m)
    out = sdft_full(img16, spec, OpCounters())
    for u in range(m):
        for v in range(m):
            truth = localized_dft(img16, u, v, spec)
            assert interior_rel_err(out.bins[u][v], truth, m // 2 + 2) <= 1e-10


@pytest.mark.parametrize("m", [4, 8])
def test_gaussian_mode_vs_oracle(img16, m):
    spec = gauss_spec(m)
    out = sdft_full(img16, spec, OpCounters())
    for u in range(m):
        for v in range(m):
            truth = localized_dft(img16, u, v, spec)
            assert rel_err(out.bins[u][v], truth) <= 1e-10


def test_conjugate_fill_matches_direct(img16):
    m = 4
    spec = gauss_spec(m)
    out = sdft_full(img16, spec, OpCounters())
    for u in range(m):
        for v in range(m // 2 + 1, m):
            direct = sdft_bin(img16, u, v, spec, OpCounters())
            assert rel_err(out.bins[u][v], direct) <= 1e-12


def test_bin_00_gaussian_is_separable_blur(img16):
    spec = gauss_spec(4)
    out = sdft_bin(img16, 0, 0, spec, OpCounters())
    rows = np.stack(
        [
            smooth_1d(r, ExactFIR(), spec.sigma_value, OpCounters())
            for r in img16.data
        ]
    )
    both = np.stack(
        [smooth_1d(c, ExactFIR(), spec.sigma_value, OpCounters()) for c in rows.T]
    ).T
    assert np.max(np.abs(out.re - both)) <= 1e-12
    assert np.max(np.abs(out.im)) <= 1e-12


def test_bin_matches_full_plane(img16):
    spec = gauss_spec(4)
    out = sdft_full(img16, spec, OpCounters())
    for u, v in ((0, 0), (1, 2), (2, 1), (3, 3)):
        single = sdft_bin(img16, u, v, spec, OpCounters())
        assert rel_err(out.bins[u][v], single) <= 1e-12


def test_u0_vertical_conjugate_pairs(img16):
    my = 6
    spec = gauss_spec(4, my)
    for v in range(1, my):
        a = sdft_bin(img16, 0, v, spec, OpCounters())
        b = conjugate_image(sdft_bin(img16, 0, my - v, spec, OpCounters()))
        assert rel_err(a, b) <= 1e-12


def test_tall_window_transpose_route(img16):
    # My < Mx runs the stages in flipped order; results must still match
    # the orientation-free oracle.
    spec = gauss_spec(6, 4)
    out = sdft_full(img16, spec, OpCounters())
    for u in range(6):
        for v in range(4):
            truth = localized_dft(img16, u, v, spec)
            assert rel_err(out.bins[u][v], truth) <= 1e-10


def test_smoothing_count_law(img16):
    h = w = 16
    for mx, my in ((4, 4), (4, 8)):
        spec = gauss_spec(mx, my)
        c = OpCounters()
        sdft_full(img16, spec, c)
        assert c.smoothings_h == 2 * h * (mx // 2 + 1)
        assert c.smoothings_v == 2 * w * mx * (my // 2 + 1)


def test_per_pixel_count_structure(img16):
    # R_M follows a*Mx*My + b*Mx + c across square windows.
    features, ys = [], []
    for m in (4, 8, 16):
        c = OpCounters()
        sdft_full(img16, SdftSpec(mx=m, my=m, smoother=RecursiveIIR()), c)
        features.append([m * m, m, 1.0])
        ys.append(c.multiplications / (16 * 16))
    coeffs, r2 = fit_features(features, ys)
    assert r2 >= 0.999
    assert coeffs[0] == pytest.approx(10.0, abs=1e-9)


def test_phase_center_consistency():
    # Multiplying by e^{i w0x u Mx//2} e^{i w0y v My//2} converts the
    # centered phases back to unshifted ones; on a delta the result must
    # match the plain kernel e^{+i(w0x u dm + w0y v dn)} at the source.
    data = np.zeros((9, 9))
    data[4, 4] = 1.0
    f = RealImage.from_array(data)
    m = 4
    spec = box_spec(m)
    out = sdft_full(f, spec, OpCounters())
    for u in range(m):
        for v in range(m):
            plane = out.bins[u][v].to_complex()
            shift = np.exp(
                -1j * (spec.omega0x * u * (m // 2) + spec.omega0y * v * (m // 2))
            )
            # At the delta's own pixel the window offset is (0, 0).
            assert abs(plane[4, 4] * shift - 1.0) <= 1e-12


def test_bin_index_validation(img16):
    spec = gauss_spec(4)
    with pytest.raises(ValueError):
        sdft_horizontal(img16, 4, spec, OpCounters())
    with pytest.raises(ValueError):
        sdft_bin(img16, 0, -1, spec, OpCounters())
