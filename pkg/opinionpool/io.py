"""Reading expert-set and sweep configurations; writing aggregates, sweeps and manifests.

Expert sets are JSON ``{"experts": [{"mean": [...], "variance": [...]}, ...],
"weights": [...]}`` (weights optional).  A bare ``{"mean": ..., "variance": ...}``
object is read as a single expert, so a written Gaussian aggregate is itself a
valid expert-set file.

JSON floats are written in shortest round-trip form; CSV floats with 9
significant digits.
"""
import csv
import hashlib
import json
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

from .classes import DiagonalGaussian, ExpertSet, NormalizationEstimate
from .exceptions import ConfigError
from .experiments import ScenarioConfig, SweepResult

__all__ = [
    "load_json",
    "parse_gaussian",
    "parse_expert_set",
    "read_expert_set",
    "parse_sweep_config",
    "aggregate_to_json",
    "write_aggregate",
    "write_sweep",
    "RunManifest",
    "config_digest",
    "manifest_path",
    "write_manifest",
    "SWEEP_HEADER",
    "AGGREGATE_HEADER",
]

SWEEP_HEADER = (
    "n_good",
    "n_bad",
    "method",
    "nll",
    "nll_se",
    "bc",
    "bc_se",
    "sharpness",
    "sharpness_se",
    "n_samples",
    "seed",
)
AGGREGATE_HEADER = ("component", "weight", "dimension", "mean", "variance")
SWEEP_KEYS = {"n_good", "n_bad", "methods", "good", "bad", "truth", "samples", "seed", "jitter"}


def load_json(path):
    """Parse a UTF-8 JSON file, reporting syntax and encoding errors with line and column"""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read file: {exc.strerror or exc}", source=str(path)) from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        head = raw[: exc.start]
        raise ConfigError(
            f"not valid UTF-8: byte 0x{raw[exc.start]:02x} at offset {exc.start}",
            source=str(path),
            lineno=head.count(b"\n") + 1,
            colno=exc.start - head.rfind(b"\n"),
        ) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, source=str(path), lineno=exc.lineno, colno=exc.colno) from exc


def _require(data, key, source, kind=dict):
    if not isinstance(data, dict) or key not in data:
        raise ConfigError(f"missing required field {key!r}", source=source)
    value = data[key]
    if kind is not None and not isinstance(value, kind):
        raise ConfigError(f"field {key!r} must be a {kind.__name__}", source=source)
    return value


def _vector(value, name, source):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return [float(value)]
    if not isinstance(value, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
    ):
        raise ConfigError(f"{name} must be a list of numbers", source=source)
    return [float(x) for x in value]


def parse_gaussian(data, source=None) -> DiagonalGaussian:
    mean = _vector(_require(data, "mean", source, None), "mean", source)
    variance = _vector(_require(data, "variance", source, None), "variance", source)
    return DiagonalGaussian(mean, variance)


def parse_expert_set(data, *, weights=None, source=None) -> ExpertSet:
    """ExpertSet from decoded JSON; ``weights`` overrides weights given in the file"""
    if isinstance(data, dict) and "experts" not in data and "mean" in data:
        experts = [parse_gaussian(data, source)]
    else:
        entries = _require(data, "experts", source, list)
        experts = [parse_gaussian(entry, source) for entry in entries]
    if weights is None and isinstance(data, dict) and "weights" in data and "experts" in data:
        weights = _vector(data["weights"], "weights", source)
    return ExpertSet(experts, weights)


def read_expert_set(path, *, weights=None) -> ExpertSet:
    return parse_expert_set(load_json(path), weights=weights, source=str(path))


def _counts(value, name, source):
    if isinstance(value, int) and not isinstance(value, bool):
        return [value]
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    ):
        raise ConfigError(f"{name} must be an integer or a list of integers", source=source)
    return value


def parse_sweep_config(data, *, n_samples=None, seed=None, source=None):
    """Grid of ScenarioConfig from a sweep file; ``n_samples`` and ``seed`` override the file"""
    if not isinstance(data, dict):
        raise ConfigError("a sweep config must be a JSON object", source=source)
    unknown = set(data) - SWEEP_KEYS
    if unknown:
        raise ConfigError(f"unknown fields: {', '.join(sorted(unknown))}", source=source)
    kwargs = {}
    for key in ["good", "bad", "truth"]:
        if key in data:
            kwargs[key] = parse_gaussian(data[key], source)
    if "methods" in data:
        kwargs["methods"] = _require(data, "methods", source, list)
    if "jitter" in data:
        jitter = data["jitter"]
        if not isinstance(jitter, (int, float)) or isinstance(jitter, bool):
            raise ConfigError("jitter must be a number", source=source)
        kwargs["jitter"] = float(jitter)
    kwargs["n_samples"] = n_samples if n_samples is not None else data.get("samples")
    kwargs["seed"] = seed if seed is not None else data.get("seed")
    n_goods = _counts(_require(data, "n_good", source, None), "n_good", source)
    n_bads = _counts(data.get("n_bad", 0), "n_bad", source)
    return [
        ScenarioConfig(n_good, n_bad, **kwargs) for n_bad in n_bads for n_good in n_goods
    ]


def _gaussian_to_json(g):
    return {"mean": g.mean.tolist(), "variance": g.variance.tolist()}


def aggregate_to_json(method, aggregate, normalization: NormalizationEstimate = None):
    """JSON-ready description of an aggregate.

    ``aggregate`` is a DiagonalGaussian, an ExpertSet (mixtures), or the
    ExpertSet of a Hölder pool together with its ``normalization``.
    """
    if isinstance(aggregate, DiagonalGaussian):
        return {"method": method, "kind": "gaussian", **_gaussian_to_json(aggregate)}
    rv = {
        "method": method,
        "kind": "mixture" if normalization is None else "holder",
        "experts": [_gaussian_to_json(g) for g in aggregate],
        "weights": aggregate.weights.tolist(),
    }
    if normalization is not None:
        rv["alpha"] = 0.5
        rv["log_norm"] = normalization.log_norm
        rv["log_norm_se"] = normalization.std_err
        rv["ess"] = normalization.ess
        rv["low_ess"] = normalization.low_ess
    return rv


def _fmt(x):
    return f"{x:.9g}"


def _aggregate_rows(aggregate):
    if isinstance(aggregate, DiagonalGaussian):
        components = [(1.0, aggregate)]
    else:
        components = list(zip(aggregate.weights, aggregate))
    for j, (weight, g) in enumerate(components):
        for d in range(g.dim):
            yield [j, _fmt(weight), d, _fmt(g.mean[d]), _fmt(g.variance[d])]


def write_aggregate(path, method, aggregate, fmt="json", normalization=None):
    path = Path(path)
    if fmt == "json":
        payload = aggregate_to_json(method, aggregate, normalization)
        path.write_text(json.dumps(payload, indent=2) + "\n")
        return
    if normalization is not None:
        raise ConfigError(f"{method} output is not a Gaussian or mixture; use JSON")
    with path.open("w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(AGGREGATE_HEADER)
        writer.writerows(_aggregate_rows(aggregate))


def _sweep_records(result: SweepResult):
    for row in result.rows:
        r = row.report
        yield {
            "n_good": row.n_good,
            "n_bad": row.n_bad,
            "method": row.method,
            "nll": r.nll.value,
            "nll_se": r.nll.std_err,
            "bc": r.bc.value,
            "bc_se": r.bc.std_err,
            "bc_raw": r.bc.raw,
            "sharpness": r.sharpness.value,
            "sharpness_se": r.sharpness.std_err,
            "n_samples": r.n_samples,
            "seed": r.seed,
        }


def write_sweep(path, result: SweepResult, fmt="csv"):
    path = Path(path)
    if fmt == "json":
        payload = {
            "provenance": asdict(result.provenance),
            "rows": list(_sweep_records(result)),
        }
        path.write_text(json.dumps(payload, indent=2) + "\n")
        return
    with path.open("w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for record in _sweep_records(result):
            writer.writerow(
                [_fmt(v) if isinstance(v, float) else v for k, v in record.items() if k != "bc_raw"]
            )


def config_digest(data):
    """sha256 of the canonical JSON form of ``data``"""
    canonical = json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    command: str
    config_digest: str
    root_seed: int
    started_at: str
    version: str

    @classmethod
    def create(cls, command, config, root_seed):
        from . import __version__

        return cls(
            command=command,
            config_digest=config_digest(config),
            root_seed=int(root_seed),
            started_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
            version=__version__,
        )


def manifest_path(output_path):
    output_path = Path(output_path)
    return output_path.with_name(f"{output_path.name}.manifest.json")


def write_manifest(output_path, manifest: RunManifest):
    path = manifest_path(output_path)
    path.write_text(json.dumps(asdict(manifest), indent=2, sort_keys=True) + "\n")
    return path
