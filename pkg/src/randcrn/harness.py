"""Monte Carlo estimation of P(deficiency = 0) over a grid of species counts."""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, TextIO

from .deficiency import has_deficiency_zero
from .model import EDGE_CLASSES
from .sbm import Alpha, BlockModelParams, sample_network, trial_seed


CSV_HEADER = (
    "n", "p", "trials", "successes", "estimate", "ci_low", "ci_high",
    "m01_mean", "m02_mean", "m11_mean", "m12_mean", "m22_mean", "ms_per_trial",
)

Z95 = 1.959963984540054


@dataclass(frozen=True)
class ExperimentConfig:
    alpha: Alpha = field(default_factory=Alpha)
    gamma: Fraction = Fraction(-3)
    c: float = 1.0
    n_grid: tuple[int, ...] = ()
    trials: int = 100
    master_seed: int = 0
    permissive: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alpha", Alpha(*(Fraction(a) for a in self.alpha)))
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if not self.c > 0:
            raise ValueError(f"multiplier c must be positive, got {self.c}")
        if any(n < 1 for n in self.n_grid):
            raise ValueError(f"species counts must be positive: {self.n_grid}")
        if list(self.n_grid) != sorted(self.n_grid):
            raise ValueError(f"n_grid must be ascending: {self.n_grid}")

    def p_n(self, n: int) -> float:
        return self.c * float(n) ** float(self.gamma)

    def params(self, n: int) -> BlockModelParams:
        return BlockModelParams(n, min(self.p_n(n), 1.0) if self.permissive else self.p_n(n),
                                self.alpha, self.permissive)


@dataclass(frozen=True)
class CellRow:
    n: int
    p: float
    trials: int
    successes: int
    estimate: float
    ci_low: float
    ci_high: float
    m_mean: tuple[float, ...]
    ms_per_trial: float


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    rows: tuple[CellRow, ...]


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    # clip round-off so the interval always contains the estimate
    return max(0.0, min(centre - half, phat)), min(1.0, max(centre + half, phat))


@dataclass
class _Tally:
    successes: int = 0
    m_sums: list[int] = field(default_factory=lambda: [0] * len(EDGE_CLASSES))
    seconds: float = 0.0


def _run_trials(params: BlockModelParams, master_seed: int, trials: range) -> _Tally:
    tally = _Tally()
    start = time.perf_counter()
    for t in trials:
        g, counts = sample_network(params, trial_seed(master_seed, params.n, t))
        if has_deficiency_zero(g):
            tally.successes += 1
        for i, cls in enumerate(EDGE_CLASSES):
            tally.m_sums[i] += counts.m[cls]
    tally.seconds = time.perf_counter() - start
    return tally


def _chunks(trials: int, parts: int) -> list[range]:
    step = max(1, math.ceil(trials / parts))
    return [range(a, min(a + step, trials)) for a in range(0, trials, step)]


def _merge(n: int, config: ExperimentConfig, tallies: Sequence[_Tally]) -> CellRow:
    successes = sum(t.successes for t in tallies)
    m_sums = [sum(t.m_sums[i] for t in tallies) for i in range(len(EDGE_CLASSES))]
    seconds = sum(t.seconds for t in tallies)
    lo, hi = wilson_interval(successes, config.trials)
    return CellRow(
        n=n,
        p=config.params(n).p_base,
        trials=config.trials,
        successes=successes,
        estimate=successes / config.trials,
        ci_low=lo,
        ci_high=hi,
        m_mean=tuple(s / config.trials for s in m_sums),
        ms_per_trial=1000.0 * seconds / config.trials,
    )


def run_cell(n: int, config: ExperimentConfig, master_seed: int | None = None) -> CellRow:
    """Estimate P(deficiency = 0) at one species count, single-threaded."""
    seed = config.master_seed if master_seed is None else master_seed
    params = config.params(n)
    return _merge(n, config, [_run_trials(params, seed, range(config.trials))])


def run_sweep(config: ExperimentConfig, threads: int = 1,
              progress: Callable[[CellRow], None] | None = None) -> ExperimentResult:
    """One row per grid point, in grid order.

    Trials are split into contiguous chunks that may run concurrently; each
    trial draws its own counter-derived seed, so the rows do not depend on
    ``threads``.
    """
    for n in config.n_grid:
        config.params(n)  # validate every cell before running any
    if threads <= 1:
        rows = []
        for n in config.n_grid:
            rows.append(run_cell(n, config))
            if progress:
                progress(rows[-1])
        return ExperimentResult(config, tuple(rows))

    with ThreadPoolExecutor(max_workers=threads) as pool:
        jobs = [
            (n, [pool.submit(_run_trials, config.params(n), config.master_seed, chunk)
                 for chunk in _chunks(config.trials, threads)])
            for n in config.n_grid
        ]
        rows = []
        for n, futures in jobs:
            rows.append(_merge(n, config, [f.result() for f in futures]))
            if progress:
                progress(rows[-1])
    return ExperimentResult(config, tuple(rows))


def _fmt(x: float) -> str:
    return repr(float(x))


def write_csv(result: ExperimentResult, out: TextIO, timing: bool = False) -> None:
    """Write the result table.

    ``ms_per_trial`` is left blank unless ``timing`` is set, keeping the
    default output a pure function of the configuration.
    """
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in result.rows:
        writer.writerow([
            row.n, _fmt(row.p), row.trials, row.successes,
            _fmt(row.estimate), _fmt(row.ci_low), _fmt(row.ci_high),
            *(_fmt(m) for m in row.m_mean),
            f"{row.ms_per_trial:.3f}" if timing else "",
        ])


def to_csv(result: ExperimentResult, timing: bool = False) -> str:
    buf = io.StringIO()
    write_csv(result, buf, timing)
    return buf.getvalue()
