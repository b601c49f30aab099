"""Synthetic good/bad expert scenarios and the preset grids built from them.

Good experts agree with the truth N(0, I); bad experts are sharp and far away.
All good experts share one template, as do all bad experts, unless ``jitter``
perturbs the template means.
"""
from dataclasses import dataclass, field

import numpy as np

from opinionpool.classes import DiagonalGaussian, ExpertSet

from ..algorithms._helpers import check_count
from ..algorithms._random import make_rng, substream
from ..exceptions import DimensionMismatch, InvalidParameter
from ..interface import SWEEP_METHODS, get_aggregator

__all__ = [
    "ScenarioConfig",
    "build_expert_set",
    "build_figure1_scenario",
    "preset",
    "PRESETS",
    "GOOD",
    "BAD",
    "TRUTH",
]

GOOD = DiagonalGaussian([0.0, 0.0], [0.5, 0.5])
BAD = DiagonalGaussian([4.0, 4.0], [0.2, 0.2])
TRUTH = DiagonalGaussian.standard(2)

FIGURE2_METHODS = ("poe", "moe", "holder05", "hellinger")


@dataclass(frozen=True)
class ScenarioConfig:
    """One grid cell: ``n_good`` good experts followed by ``n_bad`` bad ones.

    ``experts`` replaces the good/bad construction with an explicit set (the
    counts then only label the cell).  ``n_samples`` and ``seed`` fall back to
    the library configuration when None.
    """

    n_good: int
    n_bad: int
    methods: tuple = FIGURE2_METHODS
    good: DiagonalGaussian = GOOD
    bad: DiagonalGaussian = BAD
    truth: DiagonalGaussian = TRUTH
    n_samples: int = None
    seed: int = None
    jitter: float = 0.0
    experts: ExpertSet = field(default=None, compare=False)

    def __post_init__(self):
        check_count(self.n_good, minimum=0, name="n_good")
        check_count(self.n_bad, minimum=0, name="n_bad")
        if self.experts is None and self.n_good + self.n_bad < 1:
            raise InvalidParameter("a scenario needs at least one expert")
        object.__setattr__(self, "methods", tuple(self.methods))
        if not self.methods:
            raise InvalidParameter("a scenario needs at least one method")
        for method in self.methods:
            get_aggregator(method)
        dims = {self.good.dim, self.bad.dim, self.truth.dim}
        if self.experts is not None:
            if self.experts.dim != self.truth.dim:
                raise DimensionMismatch(
                    f"experts have dimension {self.experts.dim}; truth has {self.truth.dim}"
                )
        elif len(dims) != 1:
            raise DimensionMismatch(f"templates and truth differ in dimension: {sorted(dims)}")
        if not (np.isfinite(self.jitter) and self.jitter >= 0):
            raise InvalidParameter(f"jitter must be non-negative; got {self.jitter}")


def build_expert_set(cfg: ScenarioConfig) -> ExpertSet:
    """Good experts first, then bad, with uniform weights"""
    if cfg.experts is not None:
        return cfg.experts
    templates = [cfg.good] * cfg.n_good + [cfg.bad] * cfg.n_bad
    if cfg.jitter > 0:
        rng = make_rng(substream(cfg.seed, "jitter", cfg.n_good, cfg.n_bad))
        templates = [
            DiagonalGaussian(g.mean + cfg.jitter * rng.standard_normal(g.dim), g.variance)
            for g in templates
        ]
    return ExpertSet(templates)


def build_figure1_scenario() -> ExpertSet:
    """Three 2-D experts: two overlapping, one sharp outlier at (4, 0)"""
    return ExpertSet(
        [
            DiagonalGaussian([0.0, 0.0], [0.5, 0.5]),
            DiagonalGaussian([1.0, 0.2], [0.6, 0.6]),
            DiagonalGaussian([4.0, 0.0], [0.2, 0.2]),
        ]
    )


def _figure1(**kwargs):
    return [ScenarioConfig(3, 0, SWEEP_METHODS, experts=build_figure1_scenario(), **kwargs)]


def _figure2(**kwargs):
    return [ScenarioConfig(n_good, 2, FIGURE2_METHODS, **kwargs) for n_good in range(1, 9)]


def _figure7(**kwargs):
    return [
        ScenarioConfig(n_good, n_bad, SWEEP_METHODS, **kwargs)
        for n_bad in range(4)
        for n_good in range(1, 9)
    ]


PRESETS = {
    "figure1": _figure1,
    "figure2": _figure2,
    "figure7": _figure7,
}


def preset(name, *, n_samples=None, seed=None):
    """The grid of a named preset"""
    if name not in PRESETS:
        raise InvalidParameter(f"Unknown preset {name!r}; expected one of {', '.join(PRESETS)}")
    return PRESETS[name](n_samples=n_samples, seed=seed)
