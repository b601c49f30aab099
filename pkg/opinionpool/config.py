"""Library-wide configuration.

Values are looked up at call time, so they may be changed temporarily::

    >>> with opinionpool.config.set({"mohel.max_experts": 10}):
    ...     ...

Environment variables prefixed with ``OPINIONPOOL_`` override the defaults
(for example ``OPINIONPOOL_SEED=42``).
"""
from donfig import Config

__all__ = ["config"]

defaults = {
    "seed": 0,
    "variance_floor": 1e-12,
    "weights_atol": 1e-9,
    "mohel": {
        "max_experts": 20,
    },
    "metrics": {
        "n_samples": 100_000,
        "min_samples": 100,
    },
    "holder": {
        "ess_warning_fraction": 0.1,
    },
    "sweep": {
        "jobs": None,
    },
}

config = Config("opinionpool", defaults=[defaults])
