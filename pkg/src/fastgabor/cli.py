"""Command-line surface: bank, sdft, compare and bench subcommands.

Exit codes: 0 success, 1 usage or I/O error, 2 numeric guard violation.
"""

from __future__ import annotations

import argparse
import math
import statistics
import sys
import time

import numpy as np

from .bank import BankSpec, compute_bank, compute_bank_noreuse
from .gabor import GaborParams, gabor_filter
from .gaussian import Box, ExactFIR, RecursiveIIR
from .image_io import load_grayscale, write_bank_container, write_magnitude, RealImage
from .metrics import OpCounters, counter_lines, per_pixel_counts, ser, write_csv
from .oracle import OracleConfig, fir_gabor
from .sdft import SdftSpec, sdft_bin, sdft_full

FIG1_FREQUENCIES = tuple(2.0 ** (-(i + 2) / 2.0) for i in range(5))
SWEEP_OMEGAS = (3.5, 3.9, 4.4, 4.9, 5.5, 6.2, 7.0, 7.9, 8.8, 9.8, 13.0)
SWEEP_THETA_DEGREES = tuple(range(18, 180, 18))
ORACLE_PIXEL_GUARD = 2 ** 18
IIR_SIGMA_FLOOR = 0.5


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the CLI contract wants 1.
    def error(self, message):
        raise _UsageError(message)


def _parse_frequencies(text: str) -> tuple[float, ...]:
    if text == "fig1":
        return FIG1_FREQUENCIES
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok)
    except ValueError as exc:
        raise _UsageError(f"bad --frequencies value {text!r}") from exc
    if not values:
        raise _UsageError("empty --frequencies list")
    return values


def _parse_sigma(text: str):
    if text == "rule":
        return None
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok)
    except ValueError as exc:
        raise _UsageError(f"bad --sigma value {text!r}") from exc
    return values


def _smoother(name: str, window: int | None = None):
    if name == "iir":
        return RecursiveIIR()
    if name == "fir":
        return ExactFIR()
    if name == "box":
        # The sdft path substitutes its own asymmetric window per axis.
        return Box(half_width=window // 2 if window else 1)
    raise _UsageError(f"unknown smoother {name!r}")


def _load_input(path) -> RealImage:
    if path is None:
        raise _UsageError("--input is required")
    return load_grayscale(path)


def cmd_bank(args) -> int:
    f = _load_input(args.input)
    frequencies = _parse_frequencies(args.frequencies)
    sigmas = _parse_sigma(args.sigma)
    if sigmas is not None and len(sigmas) == 1:
        sigmas = sigmas * len(frequencies)
    spec = BankSpec(frequencies=frequencies, orientations_n=args.orientations, sigmas=sigmas)
    if args.smoother == "box":
        raise _UsageError("the box smoother is only supported by the sdft command")
    kind = _smoother(args.smoother)
    counters = OpCounters()
    out = compute_bank(f, spec, kind, counters, threads=args.threads)
    if args.output:
        write_bank_container(out.entries, args.output)
    if args.magnitude_dir:
        import os

        os.makedirs(args.magnitude_dir, exist_ok=True)
        for idx, (p, img) in enumerate(out.entries):
            write_magnitude(img, os.path.join(args.magnitude_dir, f"bank_{idx:03d}.pgm"))
    for line in counter_lines(counters, f.width, f.height):
        print(line)
    return 0


def cmd_sdft(args) -> int:
    f = _load_input(args.input)
    try:
        my_s, mx_s = args.window.lower().split("x")
        my, mx = int(my_s), int(mx_s)
    except ValueError as exc:
        raise _UsageError(f"bad --window value {args.window!r} (expected MyxMx)") from exc
    sigma = None
    if args.sigma != "rule":
        values = _parse_sigma(args.sigma)
        sigma = values[0]
    kind = _smoother(args.smoother, window=min(mx, my))
    spec = SdftSpec(mx=mx, my=my, smoother=kind, sigma=sigma)
    counters = OpCounters()
    out = sdft_full(f, spec, counters)
    if args.output:
        entries = [
            ((float(u), float(v), spec.sigma_value), out.bins[u][v])
            for u in range(mx)
            for v in range(my)
        ]
        write_bank_container(entries, args.output, sdft=True)
    for line in counter_lines(counters, f.width, f.height):
        print(line)
    return 0


def cmd_compare(args) -> int:
    f = _load_input(args.input)
    if f.width * f.height > ORACLE_PIXEL_GUARD and not args.force:
        print(
            f"image has {f.width * f.height} pixels, over the oracle guard "
            f"{ORACLE_PIXEL_GUARD}; pass --force to override",
            file=sys.stderr,
        )
        return 2
    omegas = SWEEP_OMEGAS if args.frequencies == "sweep" else _parse_frequencies(args.frequencies)
    thetas = [math.radians(d) for d in SWEEP_THETA_DEGREES]
    rows = []
    cfg = OracleConfig()
    for omega in omegas:
        sigma = 2.0 * math.pi / omega
        for theta_deg, theta in zip(SWEEP_THETA_DEGREES, thetas):
            p = GaborParams(omega, theta, sigma)
            truth = fir_gabor(f, p, cfg)
            fast_fir = gabor_filter(f, p, ExactFIR(), OpCounters())
            if sigma < IIR_SIGMA_FLOOR:
                ser_real_iir = ser_imag_iir = ""
                status = "skipped_sigma_below_iir_floor"
            else:
                fast_iir = gabor_filter(f, p, RecursiveIIR(), OpCounters())
                ser_real_iir = ser(fast_iir, truth, "real")
                ser_imag_iir = ser(fast_iir, truth, "imag")
                status = "ok"
            rows.append(
                [
                    omega,
                    theta_deg,
                    sigma,
                    ser_real_iir,
                    ser_imag_iir,
                    ser(fast_fir, truth, "real"),
                    ser(fast_fir, truth, "imag"),
                    status,
                ]
            )
    header = [
        "omega",
        "theta_deg",
        "sigma",
        "ser_real_iir",
        "ser_imag_iir",
        "ser_real_fir",
        "ser_imag_fir",
        "status",
    ]
    if args.output:
        write_csv(args.output, header, rows)
    else:
        write_csv(sys.stdout, header, rows)
    return 0


def bench_image(size: int = 1024, seed: int = 12345) -> RealImage:
    """Deterministic pseudo-random benchmark image."""
    rng = np.random.default_rng(seed)
    return RealImage.from_array(rng.uniform(0.0, 255.0, size=(size, size)))


def _timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def _bank_runner(f, spec, kind, threads, baseline):
    def run():
        c = OpCounters()
        if baseline:
            compute_bank_noreuse(f, spec, kind, c, threads=threads)
        else:
            compute_bank(f, spec, kind, c, threads=threads)
        return c

    return run


def _sdft_runner(f, spec, baseline):
    def run():
        c = OpCounters()
        if baseline:
            for u in range(spec.mx):
                for v in range(spec.my):
                    sdft_bin(f, u, v, spec, c)
        else:
            sdft_full(f, spec, c)
        return c

    return run


def cmd_bench(args) -> int:
    f = bench_image(args.size)
    tasks = []
    for n in args.orientation_list:
        spec = BankSpec(frequencies=(args.omega,), orientations_n=n)
        tasks.append(
            (
                "bank",
                n,
                _bank_runner(f, spec, RecursiveIIR(), args.threads, False),
                _bank_runner(f, spec, RecursiveIIR(), args.threads, True),
            )
        )
    for m in args.sdft_windows:
        spec = SdftSpec(mx=m, my=m, smoother=RecursiveIIR())
        tasks.append(
            ("sdft", m, _sdft_runner(f, spec, False), _sdft_runner(f, spec, True))
        )
    rows = []
    for kind, param, fn_fast, fn_base in tasks:
        # The warmup pass doubles as the counting run.
        c_fast, c_base = fn_fast(), fn_base()
        # The fast and baseline variants run back to back so background
        # load is spread over both sides alike.  Load only ever adds
        # time, so each side discards its slowest repeats (at most two)
        # and reports the median of the five fastest.
        fast, base = [], []
        for _ in range(args.repeats):
            fast.append(_timed(fn_fast))
            base.append(_timed(fn_base))
        keep = min(5, args.repeats)
        t_fast = statistics.median(sorted(fast)[:keep])
        t_base = statistics.median(sorted(base)[:keep])
        rm_f, ra_f = per_pixel_counts(c_fast, f.width, f.height)
        rm_b, ra_b = per_pixel_counts(c_base, f.width, f.height)
        rows.append(
            [
                kind,
                param,
                t_fast * 1e3,
                t_base * 1e3,
                t_base / t_fast,
                rm_f,
                ra_f,
                rm_b,
                ra_b,
            ]
        )
    header = [
        "kind",
        "param",
        "t_fast_ms",
        "t_base_ms",
        "speedup",
        "rm_fast",
        "ra_fast",
        "rm_base",
        "ra_base",
    ]
    if args.output:
        write_csv(args.output, header, rows)
    else:
        write_csv(sys.stdout, header, rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fastgabor", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    bank = sub.add_parser("bank", help="compute a Gabor filter bank")
    bank.add_argument("--input", required=False)
    bank.add_argument("--output")
    bank.add_argument("--frequencies", default="fig1", help='"fig1" or comma list')
    bank.add_argument("--orientations", type=int, default=8)
    bank.add_argument("--sigma", default="rule", help='"rule" (2*pi/omega) or comma list')
    bank.add_argument("--smoother", choices=["iir", "fir", "box"], default="iir")
    bank.add_argument("--magnitude-dir")
    bank.add_argument("--threads", type=int, default=1)
    bank.set_defaults(func=cmd_bank)

    sdft = sub.add_parser("sdft", help="compute the localized sliding DFT")
    sdft.add_argument("--input", required=False)
    sdft.add_argument("--output")
    sdft.add_argument("--window", default="8x8", help="MyxMx window extents")
    sdft.add_argument("--sigma", default="rule", help='"rule" or a value')
    sdft.add_argument("--smoother", choices=["iir", "fir", "box"], default="iir")
    sdft.set_defaults(func=cmd_sdft)

    compare = sub.add_parser("compare", help="SER sweep of the fast path vs the oracle")
    compare.add_argument("--input", required=False)
    compare.add_argument("--output")
    compare.add_argument("--frequencies", default="sweep", help='"sweep" or comma list')
    compare.add_argument("--force", action="store_true")
    compare.set_defaults(func=cmd_compare)

    bench = sub.add_parser("bench", help="reuse-vs-baseline wall-clock benchmark")
    bench.add_argument("--output")
    bench.add_argument("--size", type=int, default=1024)
    bench.add_argument("--omega", type=float, default=3.9)
    bench.add_argument(
        "--orientation-list",
        type=lambda s: [int(t) for t in s.split(",") if t],
        default=[8, 14, 20, 26, 32],
    )
    bench.add_argument(
        "--sdft-windows",
        type=lambda s: [int(t) for t in s.split(",") if t],
        default=[4],
    )
    bench.add_argument("--repeats", type=int, default=7)
    bench.add_argument("--threads", type=int, default=1)
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
