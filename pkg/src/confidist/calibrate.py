"""Monte Carlo checks that confidence statements earn their numbers.

run_ci_coverage repeats the whole procedure many times on synthetic
Gaussian data: draw a sample, build the t interval, and see how often it
covers the true mean. It also records u = cdf(true mean) under each
sample's confidence distribution; if confidence levels deserve to be read
as probabilities, those u values must be uniform on (0, 1). Gaussian
sampling is used because the t interval is exact there, so any detected
miscalibration is an implementation bug, not model error.

Determinism contract: replication i draws from its own counter-based
stream keyed by (seed, i), so the result is bit-identical for a fixed seed
no matter how the replications are scheduled or how many workers run them.

run_flat_prior_equivalence checks, in the known-variance Gaussian model,
that the flat-prior credible interval coincides with the z confidence
interval. The posterior is integrated numerically on a grid, so the check
does not assume the identity it is probing.
"""

from __future__ import annotations

import json
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import special
from .errors import DomainError

__all__ = [
    "CalibrationConfig",
    "CalibrationReport",
    "GENERATOR_NAME",
    "flat_prior_intervals",
    "run_ci_coverage",
    "run_flat_prior_equivalence",
]

GENERATOR_NAME = f"numpy-{np.__version__}/Philox4x64"


@dataclass(frozen=True)
class CalibrationConfig:
    """One coverage experiment: the Gaussian truth, the per-replication
    sample size, the interval level, and how many replications to run."""

    true_mean: float
    true_sd: float
    n: int
    level: float
    trials: int
    seed: int

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError(f"trials must be at least 1, got {self.trials}")
        if self.n < 2:
            raise DomainError(f"per-replication sample size must be at least 2, got {self.n}")
        if not self.true_sd > 0.0:
            raise DomainError(f"true_sd must be positive, got {self.true_sd}")
        if not 0.0 < self.level < 1.0:
            raise DomainError(f"level must lie in (0, 1), got {self.level}")


@dataclass(frozen=True)
class CalibrationReport:
    """Coverage fraction, uniformity of the cdf-at-truth values (KS
    statistic), and enough metadata to reproduce the run."""

    coverage: float
    ks_statistic: float
    trials: int
    seed: int
    generator: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "coverage": self.coverage,
                "ks_statistic": self.ks_statistic,
                "trials": self.trials,
                "seed": self.seed,
                "generator": self.generator,
            }
        )


def _replication_stream(seed: int, index: int) -> np.random.Generator:
    # Philox is counter-based: keying by (seed, index) gives independent
    # streams without any sequential jumping.
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _run_range(config: CalibrationConfig, start: int, stop: int):
    """Replications [start, stop): returns (covered count, u values)."""
    df = config.n - 1
    q = special.t_quantile(0.5 * (1.0 + config.level), df)
    inv_sqrt_n = 1.0 / math.sqrt(config.n)
    covered = 0
    u_values = np.empty(stop - start)
    for i in range(start, stop):
        rng = _replication_stream(config.seed, i)
        xs = (config.true_mean + config.true_sd * rng.standard_normal(config.n)).tolist()
        mean = math.fsum(xs) / config.n
        ss = math.fsum((v - mean) ** 2 for v in xs)
        se = math.sqrt(ss / df) * inv_sqrt_n
        if se == 0.0:  # measure-zero event, but keep it well defined
            u = 0.5 if config.true_mean == mean else (0.0 if config.true_mean < mean else 1.0)
            covered += config.true_mean == mean
        else:
            u = special.t_cdf((config.true_mean - mean) / se, df)
            half = q * se
            covered += mean - half <= config.true_mean <= mean + half
        u_values[i - start] = u
    return covered, u_values


def run_ci_coverage(config: CalibrationConfig, workers: int = 1) -> CalibrationReport:
    """Run the coverage experiment.

    Bit-identical output for a fixed seed regardless of worker count: the
    per-replication streams depend only on (seed, index), the coverage
    count is an integer sum, and the u values are sorted before the KS
    statistic is taken.
    """
    if workers <= 1:
        covered, u_values = _run_range(config, 0, config.trials)
    else:
        bounds = [round(w * config.trials / workers) for w in range(workers + 1)]
        chunks = [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_range, [config] * len(chunks),
                                  [lo for lo, _ in chunks], [hi for _, hi in chunks]))
        covered = sum(c for c, _ in parts)
        u_values = np.concatenate([u for _, u in parts])
    u_sorted = np.sort(u_values)
    m = len(u_sorted)
    steps = np.arange(1, m + 1) / m
    ks = float(max(np.max(steps - u_sorted), np.max(u_sorted - steps + 1.0 / m)))
    return CalibrationReport(
        coverage=covered / config.trials,
        ks_statistic=ks,
        trials=config.trials,
        seed=config.seed,
        generator=GENERATOR_NAME,
    )


def _norm_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def _norm_quantile(p: float) -> float:
    if not 0.0 < p < 1.0:
        raise DomainError(f"normal quantile needs 0 < p < 1, got {p}")
    x = 0.0
    for _ in range(80):
        err = _norm_cdf(x) - p
        density = math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)
        x_new = x - err / density
        if abs(x_new - x) <= 1e-15 * max(1.0, abs(x_new)):
            return x_new
        x = x_new
    return x


def flat_prior_intervals(
    center: float,
    scale: float,
    level: float = 0.95,
    grid_step: float | None = None,
):
    """The two intervals behind the equivalence check: the flat-prior
    credible interval from numerical integration and the z confidence
    interval. Returns ((credible_lo, credible_hi), (conf_lo, conf_hi)).

    The posterior (flat prior times Gaussian likelihood) is normalized and
    accumulated by trapezoid on a grid spanning center +/- 8 scale; its
    central interval endpoints come from interpolating the grid CDF.
    """
    if not scale > 0.0:
        raise DomainError(f"scale must be positive, got {scale}")
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must lie in (0, 1), got {level}")
    if grid_step is None:
        grid_step = scale / 1000.0
    if grid_step > scale / 50.0:
        warnings.warn(
            f"grid step {grid_step} is coarser than scale/50; "
            f"the credible endpoints may be imprecise",
            stacklevel=2,
        )
    span = 8.0 * scale
    points = int(round(2.0 * span / grid_step)) + 1
    xs = np.linspace(center - span, center + span, points)
    density = np.exp(-0.5 * ((xs - center) / scale) ** 2)
    panels = 0.5 * (density[1:] + density[:-1]) * np.diff(xs)
    cdf = np.concatenate([[0.0], np.cumsum(panels)])
    cdf /= cdf[-1]
    alpha = 0.5 * (1.0 - level)
    credible = (float(np.interp(alpha, cdf, xs)), float(np.interp(1.0 - alpha, cdf, xs)))
    z = _norm_quantile(1.0 - alpha)
    confidence = (center - z * scale, center + z * scale)
    return credible, confidence


def run_flat_prior_equivalence(
    center: float,
    scale: float,
    level: float = 0.95,
    grid_step: float | None = None,
) -> float:
    """Max |endpoint difference| between the flat-prior credible interval
    and the z confidence interval in the known-variance Gaussian model."""
    credible, confidence = flat_prior_intervals(center, scale, level, grid_step)
    return max(abs(credible[0] - confidence[0]), abs(credible[1] - confidence[1]))
