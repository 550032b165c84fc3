"""Figure specifications and the result-file contract."""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field

KINDS = ("cdf-panel", "cdf-compare", "conv-rate")

# header each figure kind expects in its input CSVs
EXPECTED_HEADERS = {
    "cdf-panel": ["eps", "empirical", "psi_hat"],
    "cdf-compare": ["eps", "empirical", "psi_hat"],
    "conv-rate": ["kind", "k", "rate", "lo", "hi", "gamma_hat"],
}


class SpecError(ValueError):
    """The figure spec is malformed or references unusable inputs."""


@dataclass
class FigureSpec:
    """What to draw: input result files, figure kind, layout, output path."""

    kind: str
    inputs: list
    out: str
    titles: list = field(default_factory=list)
    layout: tuple | None = None  # (rows, cols)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"unknown figure kind {self.kind!r}; expected one of {KINDS}")
        self.inputs = [str(p) for p in self.inputs]
        if not self.inputs:
            raise SpecError("at least one input file is required")
        if self.kind == "cdf-compare" and len(self.inputs) != 2:
            raise SpecError("cdf-compare takes exactly two input files")
        if self.kind == "conv-rate" and len(self.inputs) != 1:
            raise SpecError("conv-rate takes exactly one rate-table input")
        if self.titles and len(self.titles) != len(self.inputs):
            raise SpecError("titles must match inputs one-to-one")
        if self.layout is not None:
            rows, cols = self.layout
            self.layout = (int(rows), int(cols))
            if rows * cols < len(self.inputs):
                raise SpecError(
                    f"layout {self.layout} cannot hold {len(self.inputs)} panels"
                )

    @classmethod
    def from_json(cls, path) -> "FigureSpec":
        try:
            with open(path) as fh:
                payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError(f"{path}: not valid JSON ({exc})") from None
        known = {"kind", "inputs", "out", "titles", "layout"}
        unknown = set(payload) - known
        if unknown:
            raise SpecError(f"{path}: unknown spec keys {sorted(unknown)}")
        missing = {"kind", "inputs", "out"} - set(payload)
        if missing:
            raise SpecError(f"{path}: missing spec keys {sorted(missing)}")
        layout = payload.get("layout")
        return cls(kind=payload["kind"], inputs=payload["inputs"],
                   out=payload["out"], titles=payload.get("titles", []),
                   layout=tuple(layout) if layout else None)


def read_table(path, kind):
    """Read one input CSV, checking it matches the figure kind's schema."""
    if not os.path.exists(path):
        raise SpecError(f"input file not found: {path}")
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SpecError(f"{path}: empty file")
    header = rows[0]
    expected = EXPECTED_HEADERS[kind]
    if header != expected:
        raise SpecError(
            f"{path}: header {header} does not match the {kind} contract {expected}"
        )
    try:
        if kind == "conv-rate":
            parsed = [
                {"kind": r[0], "k": int(r[1]), "rate": float(r[2]),
                 "lo": float(r[3]), "hi": float(r[4]), "gamma_hat": float(r[5])}
                for r in rows[1:]
            ]
        else:
            parsed = [
                {"eps": float(r[0]), "empirical": float(r[1]), "psi_hat": float(r[2])}
                for r in rows[1:]
            ]
    except (ValueError, IndexError) as exc:
        raise SpecError(f"{path}: malformed row ({exc})") from None
    if not parsed:
        raise SpecError(f"{path}: no data rows")
    return parsed
