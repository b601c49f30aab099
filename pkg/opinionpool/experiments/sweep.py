import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

from opinionpool.classes import MetricReport

from .._utils import split_evenly
from ..algorithms._helpers import check_count, mc_count
from ..algorithms._random import seed_label, substream
from ..algorithms.metrics import evaluate
from ..config import config
from ..exceptions import InvalidParameter
from ..interface import pooled_density
from .scenarios import ScenarioConfig, build_expert_set

__all__ = ["SweepRow", "Provenance", "SweepResult", "cell_seed", "run_scenario", "run_sweep"]

logger = logging.getLogger(__name__)


class SweepRow(NamedTuple):
    n_good: int
    n_bad: int
    method: str
    report: MetricReport


@dataclass(frozen=True)
class Provenance:
    seed: int
    n_samples: int
    version: str


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    provenance: Provenance

    def __len__(self):
        return len(self.rows)


def cell_seed(seed, n_good, n_bad, method):
    """Seed of one (cell, method); independent of the order cells are run in"""
    return substream(seed, n_good, n_bad, method)


def run_scenario(cfg: ScenarioConfig):
    """``[(method, MetricReport), ...]`` in the order of ``cfg.methods``"""
    experts = build_expert_set(cfg)
    n = mc_count(cfg.n_samples)
    rv = []
    for method in cfg.methods:
        seed = cell_seed(cfg.seed, cfg.n_good, cfg.n_bad, method)
        pooled = pooled_density(method, experts)
        if not pooled.is_normalized:
            pooled = pooled.normalize(n, substream(seed, "normalize"), exact=False)
            logger.debug(
                "n_good=%d n_bad=%d %s: log normalizer %.6g +- %.2g",
                cfg.n_good,
                cfg.n_bad,
                method,
                *pooled.log_norm,
            )
        rv.append((method, evaluate(pooled, cfg.truth, n, seed)))
    logger.info("Finished cell n_good=%d n_bad=%d (%d methods)", cfg.n_good, cfg.n_bad, len(rv))
    return rv


def _run_batch(cells):
    return [run_scenario(cfg) for cfg in cells]


def run_sweep(grid, jobs=None) -> SweepResult:
    """Evaluate every cell of ``grid``; rows sorted by (n_good, n_bad, method).

    Cells run on up to ``jobs`` threads (``sweep.jobs`` config, else the CPU
    count).  The rows do not depend on ``jobs``.
    """
    from .. import __version__

    grid = list(grid)
    if not grid:
        raise InvalidParameter("run_sweep needs at least one scenario")
    if jobs is None:
        jobs = config.get("sweep.jobs") or os.cpu_count() or 1
    jobs = min(check_count(jobs, name="jobs"), len(grid))
    logger.info("Running %d cells on %d worker(s)", len(grid), jobs)
    if jobs == 1:
        results = _run_batch(grid)
    else:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            batches = executor.map(_run_batch, split_evenly(jobs, grid))
            results = [result for batch in batches for result in batch]
    rows = sorted(
        (
            SweepRow(cfg.n_good, cfg.n_bad, method, report)
            for cfg, result in zip(grid, results)
            for method, report in result
        ),
        key=lambda row: (row.n_good, row.n_bad, row.method),
    )
    first = grid[0]
    provenance = Provenance(seed_label(first.seed), mc_count(first.n_samples), __version__)
    logger.info("Sweep finished: %d rows", len(rows))
    return SweepResult(tuple(rows), provenance)
