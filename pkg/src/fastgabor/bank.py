"""Gabor filter bank with conjugate reuse across mirrored orientations.

For orientations theta and pi - theta the horizontal intermediates are
complex conjugates, so only orientations k = 0..floor(N/2) run the
horizontal stage; the rest reuse their partner's intermediate through a
sign-flipped vertical stage.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .gabor import GaborParams, HorizontalStage, _vertical, horizontal_stage, vertical_stage
from .gaussian import SmootherKind
from .image_io import ComplexImage, RealImage
from .metrics import OpCounters

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BankSpec:
    """Frequencies, orientation count N (theta_k = k*pi/N) and sigma rule.

    ``sigmas=None`` selects the rule sigma = 2*pi/omega per frequency.
    """

    frequencies: tuple[float, ...]
    orientations_n: int
    sigmas: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "frequencies", tuple(float(w) for w in self.frequencies))
        if self.sigmas is not None:
            object.__setattr__(self, "sigmas", tuple(float(s) for s in self.sigmas))
        if self.orientations_n < 1:
            raise ValueError("orientation count must be at least 1")
        if not self.frequencies or any(w <= 0 for w in self.frequencies):
            raise ValueError("frequencies must be a non-empty list of positive values")
        if self.sigmas is not None and len(self.sigmas) != len(self.frequencies):
            raise ValueError("explicit sigma list must match frequencies in length")

    def sigma_for(self, i: int) -> float:
        if self.sigmas is not None:
            return self.sigmas[i]
        return _TWO_PI / self.frequencies[i]

    def thetas(self) -> list[float]:
        n = self.orientations_n
        return [k * math.pi / n for k in range(n)]


@dataclass
class BankOutput:
    """Outputs ordered frequency-major then orientation, plus the run's counters."""

    entries: list[tuple[GaborParams, ComplexImage]]
    counters: OpCounters


def conjugate_image(j: ComplexImage) -> ComplexImage:
    """Complex conjugate: real plane copied, imaginary plane negated."""
    return ComplexImage(j.width, j.height, j.re.copy(), -j.im)


def vertical_stage_conjugate(h: HorizontalStage, counters: OpCounters) -> ComplexImage:
    """Vertical stage evaluating the mirrored orientation pi - theta from J_theta.

    Smooths the sign-flipped pairs (f_cr - f_si) and (f_sr + f_ci); no
    horizontal smoothing is performed.
    """
    return _vertical(h, counters, conjugate=True)


def _run_phase(tasks, threads: int, counters: OpCounters):
    # Each worker owns a private counter, merged after the join so results
    # are independent of the schedule.
    if threads <= 1 or len(tasks) <= 1:
        return [task(counters) for task in tasks]
    workers: list[OpCounters] = [OpCounters() for _ in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda tc: tc[0](tc[1]), zip(tasks, workers)))
    for w in workers:
        counters.merge(w)
    return results


def compute_bank(
    f: RealImage,
    spec: BankSpec,
    kind: SmootherKind,
    counters: OpCounters,
    threads: int = 1,
) -> BankOutput:
    """Bank with conjugate reuse: direct for k <= floor(N/2), reuse for the rest."""
    n = spec.orientations_n
    nh = n // 2
    thetas = spec.thetas()
    entries: list[tuple[GaborParams, ComplexImage]] = []
    for i in range(len(spec.frequencies)):
        omega = spec.frequencies[i]
        sigma = spec.sigma_for(i)

        def direct(k):
            # The partner orientation pi - theta_k consumes J_theta_k right
            # away, so at most one intermediate per worker stays alive.
            def task(c):
                h = horizontal_stage(f, GaborParams(omega, thetas[k], sigma), kind, c)
                out = vertical_stage(h, c)
                partner = n - k
                mirrored = (
                    vertical_stage_conjugate(h, c) if nh < partner < n else None
                )
                return k, out, mirrored

            return task

        results = _run_phase([direct(k) for k in range(nh + 1)], threads, counters)
        outputs: dict[int, ComplexImage] = {}
        for k, out, mirrored in results:
            outputs[k] = out
            if mirrored is not None:
                outputs[n - k] = mirrored

        for k in range(n):
            entries.append((GaborParams(omega, thetas[k], sigma), outputs[k]))
    return BankOutput(entries, counters)


def compute_bank_noreuse(
    f: RealImage,
    spec: BankSpec,
    kind: SmootherKind,
    counters: OpCounters,
    threads: int = 1,
) -> BankOutput:
    """Baseline scheduler: full two-stage pipeline for every orientation."""
    entries: list[tuple[GaborParams, ComplexImage]] = []
    thetas = spec.thetas()
    for i in range(len(spec.frequencies)):
        omega = spec.frequencies[i]
        sigma = spec.sigma_for(i)

        def full(k):
            def task(c):
                p = GaborParams(omega, thetas[k], sigma)
                return p, vertical_stage(horizontal_stage(f, p, kind, c), c)

            return task

        results = _run_phase(
            [full(k) for k in range(spec.orientations_n)], threads, counters
        )
        entries.extend(results)
    return BankOutput(entries, counters)
