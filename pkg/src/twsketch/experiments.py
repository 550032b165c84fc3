"""Reproducible experiment driver.

Each run takes an ExperimentConfig (defaults < config file < CLI overrides),
executes one experiment kind and writes a self-describing JSON record plus
CSV sidecars with the bulk samples. Records embed the fully resolved config,
so re-running from a record reproduces bit-identical samples.

Config files are flat ``key = value`` text: one pair per line, ``#`` starts
a comment, list values are comma-separated.
"""

from __future__ import annotations

import csv
import json
import os
import time
from dataclasses import asdict, dataclass, fields

import numpy as np

from ._version import __version__
from .datasets import GENERATORS, load_dataset, synth_dataset, synth_problem
from .embedding import (
    empirical_embedding_cdf,
    simulate_wishart_trials,
    sketch_embedding_trials,
    thin_svd_factor,
)
from .errors import ConfigError
from .rmt import constants_max, embedding_prob_approx
from .rng import child_seed
from .sketch import SketchKind, SketchSpec, apply_sketch, build_sketch
from .solver import convergence_experiment
from .tracywidom import tw_quantile, write_table_csv

ENV_OUTDIR = "TWSKETCH_OUTDIR"
EXPERIMENT_KINDS = ("embed", "conv", "timing", "tw-table")

_DEFAULT_B = {"embed": 10_000, "conv": 100}
_DEFAULT_CONV_RATIOS = (2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0)
_KIND_CODE = {kind: i for i, kind in enumerate(SketchKind)}

_INT_FIELDS = {"n", "d", "B", "seed", "max_steps", "reps"}
_FLOAT_FIELDS = {"grad_tol"}
_BOOL_FIELDS = {"header", "intercept"}
_LIST_FIELDS = {"sketches", "k", "k_ratio"}


@dataclass
class ExperimentConfig:
    """Fully resolved description of one experiment run."""

    kind: str
    mode: str = "wishart"              # embed only: wishart | sketch
    sketches: tuple = ("gaussian",)
    n: int = 100_000
    d: int = 20
    k: tuple | None = None             # explicit sketch sizes
    k_ratio: tuple | None = None       # or k = ratio * d
    B: int | None = None               # trials; per-kind default when None
    seed: int = 0
    generator: str = "gaussian"
    data: str | None = None            # CSV path; overrides the generator
    response: str | None = None
    header: bool = True
    intercept: bool = False
    out: str | None = None
    label: str | None = None
    max_steps: int = 2000
    grad_tol: float = 1e-6
    reps: int = 10                     # timing repetitions

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise ConfigError(
                f"unknown experiment kind {self.kind!r}; expected one of {EXPERIMENT_KINDS}"
            )
        if self.mode not in ("wishart", "sketch"):
            raise ConfigError(f"unknown embed mode {self.mode!r}")
        if self.B is not None and self.B < 1:
            raise ConfigError(f"B must be >= 1, got {self.B}")
        if self.reps < 1:
            raise ConfigError(f"reps must be >= 1, got {self.reps}")
        if self.data is None and self.generator not in GENERATORS:
            raise ConfigError(f"unknown generator {self.generator!r}")
        if self.kind == "embed" and self.mode == "wishart":
            self.sketches = tuple(self.sketches)  # unused in this mode
        else:
            try:
                self.sketches = tuple(SketchKind.parse(s).value for s in self.sketches)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None

    def resolve_k(self, d: int) -> tuple[int, ...]:
        if self.k is not None:
            ks = tuple(int(v) for v in self.k)
        elif self.k_ratio is not None:
            ks = tuple(int(round(float(r) * d)) for r in self.k_ratio)
        elif self.kind == "conv":
            ks = tuple(int(round(r * d)) for r in _DEFAULT_CONV_RATIOS)
        else:
            ks = (20 * d,)
        if any(k < 1 for k in ks):
            raise ConfigError(f"resolved sketch sizes must be >= 1, got {ks}")
        return ks

    def resolved_B(self) -> int:
        return self.B if self.B is not None else _DEFAULT_B.get(self.kind, 100)

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("sketches", "k", "k_ratio"):
            if out[key] is not None:
                out[key] = list(out[key])
        return out

    @classmethod
    def from_mapping(cls, mapping: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        aliases = {"kinds": "sketches"}
        values = {}
        for key, raw in mapping.items():
            name = key.replace("-", "_")
            name = aliases.get(name, name)
            if name not in known:
                raise ConfigError(f"unknown config key {key!r}")
            values[name] = _coerce(name, raw)
        if "kind" not in values:
            raise ConfigError("config must declare an experiment kind")
        return cls(**values)


def _coerce(name, raw):
    if raw is None:
        return None
    if name in _LIST_FIELDS:
        if isinstance(raw, str):
            raw = [part.strip() for part in raw.split(",") if part.strip()]
        seq = list(raw)
        if name == "k":
            return tuple(int(v) for v in seq)
        if name == "k_ratio":
            return tuple(float(v) for v in seq)
        return tuple(str(v) for v in seq)
    if name in _INT_FIELDS:
        return int(raw)
    if name in _FLOAT_FIELDS:
        return float(raw)
    if name in _BOOL_FIELDS:
        if isinstance(raw, bool):
            return raw
        text = str(raw).strip().lower()
        if text in ("1", "true", "yes", "on"):
            return True
        if text in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"cannot parse boolean {raw!r} for {name}")
    return str(raw)


def read_config_file(path) -> dict:
    """Parse a flat ``key = value`` config file into a string mapping."""
    mapping = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            mapping[key.strip()] = value.strip()
    return mapping


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path, header, rows) -> None:
    """Write rows with canonical shortest-round-trip float formatting."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def read_csv(path) -> tuple[list, list]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ConfigError(f"{path}: empty CSV")
    return rows[0], rows[1:]


@dataclass
class ResultRecord:
    """Self-describing output of one experiment run."""

    config: dict
    results: dict
    files: list
    version: str
    created: str

    def write_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(asdict(self), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def read_json(cls, path) -> "ResultRecord":
        with open(path) as fh:
            payload = json.load(fh)
        return cls(**{f.name: payload[f.name] for f in fields(cls)})

    def replay_config(self) -> ExperimentConfig:
        return ExperimentConfig.from_mapping(self.config)


def run_experiment(config: ExperimentConfig, out_dir=None) -> ResultRecord:
    """Execute the configured experiment and persist its record.

    Output goes to ``out_dir`` if given, else ``config.out``, else the
    TWSKETCH_OUTDIR environment variable, else the working directory. On
    failure a structured error record is written next to any partial output
    and the exception is re-raised.
    """
    out_dir = out_dir or config.out or os.environ.get(ENV_OUTDIR) or "."
    os.makedirs(out_dir, exist_ok=True)
    label = config.label or config.kind.replace("-", "_")
    try:
        if config.kind == "embed":
            results, files = _run_embed(config, out_dir, label)
        elif config.kind == "conv":
            results, files = _run_conv(config, out_dir, label)
        elif config.kind == "timing":
            results, files = _run_timing(config, out_dir, label)
        else:
            results, files = _run_tw_table(config, out_dir, label)
    except Exception as exc:
        error_record = {
            "error": type(exc).__name__,
            "message": str(exc),
            "config": config.to_dict(),
        }
        with open(os.path.join(out_dir, f"{label}_error.json"), "w") as fh:
            json.dump(error_record, fh, indent=2, sort_keys=True)
        raise
    record = ResultRecord(
        config=config.to_dict(),
        results=results,
        files=files,
        version=__version__,
        created=time.strftime("%Y-%m-%dT%H:%M:%S"),
    )
    record.write_json(os.path.join(out_dir, f"{label}.json"))
    return record


def _eps_grid(trials, k, d, points=401):
    mu, sigma = constants_max(k, d)
    lo = min(float(trials.eps_samples.min()), mu - 1.0 + sigma * tw_quantile(1e-6))
    hi = max(float(trials.eps_samples.max()), mu - 1.0 + sigma * tw_quantile(1.0 - 1e-6))
    lo = max(lo * 0.999, 1e-12)
    return np.linspace(lo, hi, points)


def _run_embed(config, out_dir, label):
    B = config.resolved_B()
    if config.mode == "wishart":
        kinds = ("wishart",)
        d = config.d
        U = None
    else:
        if config.data is not None:
            A = load_dataset(config.data, response=None, has_header=config.header)
        else:
            A = synth_dataset(config.generator, config.n, config.d,
                              seed=child_seed(config.seed, 0))
        U = thin_svd_factor(A)
        d = U.n_cols
        kinds = config.sketches
    k = config.resolve_k(d)[0]
    results = {}
    files = []
    for kind in kinds:
        if kind == "wishart":
            trials = simulate_wishart_trials(k, d, B, seed=child_seed(config.seed, 1))
        else:
            code = _KIND_CODE[SketchKind.parse(kind)]
            trials = sketch_embedding_trials(U, kind, k, B,
                                             seed=child_seed(config.seed, 1, code))
        grid = _eps_grid(trials, k, d)
        empirical = empirical_embedding_cdf(trials, grid)
        psi_hat = embedding_prob_approx(k, d, grid)
        sup_gap = float(np.max(np.abs(empirical - psi_hat)))
        tag = kind.replace("-", "_")
        trials_file = os.path.join(out_dir, f"{label}_trials_{tag}.csv")
        cdf_file = os.path.join(out_dir, f"{label}_cdf_{tag}.csv")
        trials.write_csv(trials_file)
        write_csv(cdf_file, ["eps", "empirical", "psi_hat"],
                  zip(grid, empirical, psi_hat))
        files += [trials_file, cdf_file]
        results[kind] = {
            "k": k, "d": d, "B": B, "sup_gap": sup_gap,
            "eps_min": float(trials.eps_samples.min()),
            "eps_max": float(trials.eps_samples.max()),
        }
    return results, files


def _run_conv(config, out_dir, label):
    if config.data is not None:
        prob = load_dataset(config.data, response=config.response,
                            has_header=config.header, intercept=config.intercept)
    else:
        prob = synth_problem(config.generator, config.n, config.d,
                             seed=child_seed(config.seed, 0))
    ks = config.resolve_k(prob.d)
    rows = convergence_experiment(prob, config.sketches, ks, config.resolved_B(),
                                  seed=child_seed(config.seed, 1),
                                  max_steps=config.max_steps,
                                  grad_tol=config.grad_tol)
    rates_file = os.path.join(out_dir, f"{label}_rates.csv")
    write_csv(rates_file, ["kind", "k", "rate", "lo", "hi", "gamma_hat"],
              [(r.kind, r.k, r.rate, r.lo, r.hi, r.gamma_hat) for r in rows])
    results = {
        "n": prob.n, "d": prob.d, "B": config.resolved_B(),
        "rates": [asdict(r) for r in rows],
    }
    return results, [rates_file]


def _run_timing(config, out_dir, label):
    X = synth_dataset("gaussian", config.n, config.d, seed=child_seed(config.seed, 0))
    k = config.resolve_k(config.d)[0]
    rows = []
    results = {}
    for kind in config.sketches:
        code = _KIND_CODE[SketchKind.parse(kind)]
        secs = []
        for rep in range(config.reps):
            spec = SketchSpec(kind=kind, k=k, seed=child_seed(config.seed, 1, code, rep))
            t0 = time.perf_counter()
            apply_sketch(build_sketch(spec, config.n), X)
            secs.append(time.perf_counter() - t0)
            rows.append((kind, rep, secs[-1]))
        results[kind] = {
            "k": k, "n": config.n, "d": config.d, "reps": config.reps,
            "mean_seconds": float(np.mean(secs)),
            "median_seconds": float(np.median(secs)),
        }
    timing_file = os.path.join(out_dir, f"{label}_times.csv")
    write_csv(timing_file, ["kind", "rep", "seconds"], rows)
    return results, [timing_file]


def _run_tw_table(config, out_dir, label):
    table_file = os.path.join(out_dir, f"{label}.csv")
    n_rows = write_table_csv(table_file)
    return {"rows": n_rows, "z_lo": -10.0, "z_hi": 6.0}, [table_file]
