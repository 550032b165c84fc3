"""Command-line interface.

Subcommands cover point evaluations (tw-cdf, tw-quantile, embed-prob,
conv-prob), the experiment drivers (embed-experiment, conv-experiment,
timing, tw-table), the preconditioned solver (solve), and dataset utilities
(sketch, leverage).

Exit codes: 0 success, 2 configuration error, 3 data error. The default
output directory can be set with the TWSKETCH_OUTDIR environment variable.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from ._version import __version__
from .datasets import load_dataset, synth_dataset
from .embedding import leverage_summary, thin_svd_factor
from .errors import ConfigError, DataFileError, DomainError, RankError, ShapeError
from .experiments import (
    ExperimentConfig,
    read_config_file,
    run_experiment,
    write_csv,
)
from .rmt import constants_max, convergence_prob_approx, embedding_prob_approx
from .sketch import SketchSpec, apply_sketch, build_sketch
from .solver import sketched_solve
from .tracywidom import tw_cdf, tw_quantile


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twsketch",
        description="Random-projection sketching with Tracy-Widom success-rate predictions.",
    )
    parser.add_argument("--version", action="version", version=f"twsketch {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tw-cdf", help="evaluate the Tracy-Widom F1 CDF")
    p.add_argument("z", type=float)
    p.add_argument("--ode", action="store_true",
                   help="debug mode: evaluate the ODE solution directly")
    p.set_defaults(func=_cmd_tw_cdf)

    p = sub.add_parser("tw-quantile", help="invert the Tracy-Widom F1 CDF")
    p.add_argument("p", type=float)
    p.set_defaults(func=_cmd_tw_quantile)

    p = sub.add_parser("embed-prob", help="Tracy-Widom embedding probability")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", type=float)
    p.add_argument("--table", action="store_true",
                   help="emit a CSV sweep over eps to stdout")
    p.set_defaults(func=_cmd_embed_prob)

    p = sub.add_parser("conv-prob", help="Tracy-Widom solver convergence probability")
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--table", action="store_true",
                   help="emit a CSV sweep over k to stdout")
    p.set_defaults(func=_cmd_conv_prob)

    for kind, help_text in (
        ("embed-experiment", "Monte-Carlo embedding probability experiment"),
        ("conv-experiment", "solver convergence-rate experiment"),
        ("timing", "wall-clock sketching benchmark"),
        ("tw-table", "dump the Tracy-Widom CDF table as CSV"),
    ):
        p = sub.add_parser(kind, help=help_text)
        _add_experiment_args(p, kind)
        p.set_defaults(func=_cmd_experiment, kind=kind.replace("-experiment", ""))

    p = sub.add_parser("solve", help="sketched-preconditioner least-squares solve")
    p.add_argument("--data", required=True)
    p.add_argument("--response", required=True,
                   help="response column: header name or 1-based position")
    p.add_argument("--kind", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int, default=2000)
    p.add_argument("--grad-tol", type=float, default=1e-6)
    p.add_argument("--intercept", action="store_true")
    p.add_argument("--no-header", dest="header", action="store_false")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("sketch", help="apply a sketch to a CSV and write the sketched CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--kind", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--no-header", dest="header", action="store_false")
    p.set_defaults(func=_cmd_sketch)

    p = sub.add_parser("leverage", help="leverage-score summary of a design matrix")
    p.add_argument("--data")
    p.add_argument("--generator", default="gaussian")
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--d", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-header", dest="header", action="store_false")
    p.set_defaults(func=_cmd_leverage)

    return parser


def _add_experiment_args(p, kind):
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--label")
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    if kind == "tw-table":
        return
    p.add_argument("--kinds", help="comma-separated sketch kinds")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--k", help="comma-separated sketch sizes")
    p.add_argument("--k-ratio", help="comma-separated k/d ratios")
    p.add_argument("--B", type=int)
    p.add_argument("--generator")
    p.add_argument("--data")
    if kind == "embed-experiment":
        p.add_argument("--mode", choices=("wishart", "sketch"))
    if kind == "conv-experiment":
        p.add_argument("--response")
        p.add_argument("--intercept", action="store_const", const=True, default=None)
        p.add_argument("--max-steps", type=int)
        p.add_argument("--grad-tol", type=float)
    if kind == "timing":
        p.add_argument("--reps", type=int)


def _cmd_tw_cdf(args) -> int:
    value = tw_cdf(args.z, method="ode" if args.ode else "table")
    print(f"{value:.8f}")
    return 0


def _cmd_tw_quantile(args) -> int:
    print(f"{tw_quantile(args.p):.8f}")
    return 0


def _cmd_embed_prob(args) -> int:
    if args.table:
        mu, sigma = constants_max(args.k, args.d)
        lo = max(mu - 1.0 + sigma * tw_quantile(0.001), 1e-12)
        hi = mu - 1.0 + sigma * tw_quantile(0.999)
        grid = np.linspace(lo, hi, 101)
        _stdout_csv(["eps", "psi_hat"],
                    zip(grid, embedding_prob_approx(args.k, args.d, grid)))
        return 0
    if args.eps is None:
        raise ConfigError("embed-prob needs --eps (or --table)")
    print(f"{float(embedding_prob_approx(args.k, args.d, args.eps)):.8f}")
    return 0


def _cmd_conv_prob(args) -> int:
    if args.table:
        ratios = np.geomspace(1.2, 40.0, 60)
        ks = sorted({int(np.ceil(r * args.d)) for r in ratios})
        _stdout_csv(["k", "gamma_hat"],
                    [(k, convergence_prob_approx(k, args.d)) for k in ks])
        return 0
    if args.k is None:
        raise ConfigError("conv-prob needs --k (or --table)")
    print(f"{convergence_prob_approx(args.k, args.d):.8f}")
    return 0


def _stdout_csv(header, rows) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else str(v)
                         for v in row])


_CLI_TO_CONFIG = {"kinds": "sketches"}


def _cmd_experiment(args) -> int:
    mapping = {}
    if args.config:
        mapping.update(read_config_file(args.config))
    for name in ("label", "out", "seed", "kinds", "n", "d", "k", "k_ratio", "B",
                 "generator", "data", "mode", "response", "intercept",
                 "max_steps", "grad_tol", "reps"):
        value = getattr(args, name, None)
        if value is not None:
            mapping[_CLI_TO_CONFIG.get(name, name)] = value
    mapping["kind"] = args.kind
    config = ExperimentConfig.from_mapping(mapping)
    record = run_experiment(config)
    label = config.label or config.kind.replace("-", "_")
    out_dir = config.out or os.environ.get("TWSKETCH_OUTDIR") or "."
    summary = {"record": os.path.join(out_dir, f"{label}.json"),
               "results": record.results}
    print(json.dumps(summary, indent=2, sort_keys=True, default=str))
    return 0


def _cmd_solve(args) -> int:
    prob = load_dataset(args.data, response=args.response,
                        has_header=args.header, intercept=args.intercept)
    spec = SketchSpec(kind=args.kind, k=args.k, seed=args.seed)
    report = sketched_solve(prob, spec, max_steps=args.max_steps,
                            grad_tol=args.grad_tol)
    payload = {
        "converged": bool(report.converged),
        "steps": int(report.steps),
        "grad_norms": [float(g) for g in report.grad_norms],
        "beta": [float(b) for b in report.beta],
        "sketch": {"kind": spec.kind.value, "k": spec.k, "seed": spec.seed},
        "diagnostic": report.diagnostic,
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def _cmd_sketch(args) -> int:
    A = load_dataset(args.data, response=None, has_header=args.header)
    spec = SketchSpec(kind=args.kind, k=args.k, seed=args.seed)
    sketched = apply_sketch(build_sketch(spec, A.n_rows), A)
    if args.header:
        with open(args.data) as fh:
            names = fh.readline().rstrip("\n").rstrip("\r").split(",")
        write_csv(args.out, names, np.asarray(sketched.array))
    else:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            for row in np.asarray(sketched.array):
                writer.writerow([repr(float(v)) for v in row])
    print(f"wrote {sketched.n_rows}x{sketched.n_cols} sketch to {args.out}")
    return 0


def _cmd_leverage(args) -> int:
    if args.data:
        A = load_dataset(args.data, response=None, has_header=args.header)
    else:
        A = synth_dataset(args.generator, args.n, args.d, seed=args.seed)
    summary = leverage_summary(thin_svd_factor(A))
    payload = {
        "n": A.n_rows,
        "d": A.n_cols,
        "max_leverage": summary.max_leverage,
        "mean_leverage": summary.mean_leverage,
        "histogram": {
            "counts": summary.histogram_counts.tolist(),
            "edges": summary.histogram_edges.tolist(),
        },
    }
    print(json.dumps(payload, indent=2))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DataFileError, RankError, ShapeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
