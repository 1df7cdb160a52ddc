"""Parameter sweeps and cross-metric consensus.

A sweep scores the covers a detection algorithm produced for each value of
one of its parameters. Every metric nominates the parameter value(s) with
its best averaged score; the consensus winner is the value nominated by the
most metrics.
"""
from __future__ import annotations

import json
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from fuzzyov.cover import BelongingConfig, read_cover
from fuzzyov.errors import FuzzyovError, ParseError
from fuzzyov.graph import Graph
from fuzzyov.local_metrics import DIRECTIONS, METRICS, compute_report

__all__ = [
    "ParamPoint",
    "SweepTable",
    "ConsensusResult",
    "DEFAULT_TIE_TOLERANCE",
    "evaluate_sweep",
    "best_params",
    "consensus",
    "consensus_from_bests",
    "format_cell",
    "render_report",
    "load_manifest",
]

DEFAULT_TIE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ParamPoint:
    param: str
    covers: tuple

    def __post_init__(self):
        object.__setattr__(self, "covers", tuple(self.covers))
        if not self.covers:
            raise ValueError(f"param {self.param!r}: no covers")


@dataclass(frozen=True)
class SweepTable:
    """Averaged metric values: ``values[metric][k]`` belongs to ``params[k]``."""

    params: tuple
    values: dict
    directions: dict = field(default_factory=lambda: dict(DIRECTIONS))

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        if len(set(self.params)) != len(self.params):
            raise ValueError("sweep params must be unique")
        for metric, column in self.values.items():
            if len(column) != len(self.params):
                raise ValueError(f"column {metric} has {len(column)} values for {len(self.params)} params")
            if metric not in self.directions:
                raise ValueError(f"no better-direction for metric {metric}")

    @property
    def metrics(self) -> tuple:
        return tuple(self.values)


@dataclass(frozen=True)
class ConsensusResult:
    per_metric_best: dict
    winners: tuple
    count: int

    @property
    def cell(self) -> str:
        return format_cell(self.winners, self.count)


def _mean(values):
    if all(v == values[0] for v in values):
        return values[0]
    return math.fsum(values) / len(values)


def evaluate_sweep(g: Graph, points: Sequence[ParamPoint], cfg: BelongingConfig, **options) -> SweepTable:
    """Average each metric over every point's covers.

    ``options`` go to :func:`fuzzyov.local_metrics.compute_report`.
    """
    if not points:
        raise ValueError("empty sweep")
    columns = {name: [] for name in METRICS}
    for point in points:
        reports = []
        for run, cover in enumerate(point.covers):
            try:
                reports.append(compute_report(g, cover, cfg, **options))
            except FuzzyovError as exc:
                raise type(exc)(f"param {point.param} (run {run}): {exc}") from exc
        for name in METRICS:
            columns[name].append(_mean([r[name] for r in reports]))
    return SweepTable(tuple(p.param for p in points), {k: tuple(v) for k, v in columns.items()})


def best_params(table: SweepTable, metric: str, tolerance: float = DEFAULT_TIE_TOLERANCE) -> tuple:
    """Params whose value is within ``tolerance`` of the metric's best, in sweep order."""
    sign = table.directions[metric]
    scored = [sign * v for v in table.values[metric]]
    top = max(scored)
    return tuple(p for p, s in zip(table.params, scored) if top - s <= tolerance)


def _numeric_key(label: str):
    try:
        return (0, float(label), label)
    except ValueError:
        return (1, 0.0, label)


def consensus_from_bests(per_metric_best, order: Sequence[str] | None = None) -> ConsensusResult:
    """Consensus from per-metric best sets.

    ``per_metric_best`` maps metric -> params, or is a sequence of cells
    (one per metric, in :data:`METRICS` order when it has twelve entries).
    A cell may be a single label, a comma-separated string like ``"0.45,0.5"``
    or an iterable of labels; each label in a cell gets one vote. Winners are
    listed in ``order`` (default: numeric order of the labels).
    """
    if not isinstance(per_metric_best, Mapping):
        cells = list(per_metric_best)
        names = METRICS if len(cells) == len(METRICS) else tuple(f"m{k}" for k in range(len(cells)))
        per_metric_best = dict(zip(names, cells))
    bests = {}
    for metric, cell in per_metric_best.items():
        if isinstance(cell, str):
            labels = [s.strip() for s in cell.split(",") if s.strip()]
        else:
            labels = [str(s) for s in cell]
        bests[metric] = tuple(dict.fromkeys(labels))
    votes: dict = {}
    for labels in bests.values():
        for label in labels:
            votes[label] = votes.get(label, 0) + 1
    if not votes:
        raise ValueError("no per-metric best params to vote on")
    count = max(votes.values())
    rank = {p: k for k, p in enumerate(order)} if order is not None else None
    key = (lambda p: rank[p]) if rank is not None else _numeric_key
    winners = tuple(sorted((p for p, v in votes.items() if v == count), key=key))
    return ConsensusResult(bests, winners, count)


def consensus(table: SweepTable, tolerance: float = DEFAULT_TIE_TOLERANCE) -> ConsensusResult:
    bests = {metric: best_params(table, metric, tolerance) for metric in table.metrics}
    return consensus_from_bests(bests, order=table.params)


def format_cell(winners: Sequence[str], count: int) -> str:
    """``"3 (11)"`` for one winner, ``"{0.5,1} (3)"`` for ties."""
    if len(winners) == 1:
        return f"{winners[0]} ({count})"
    return "{" + ",".join(winners) + f"}} ({count})"


def _fmt6(x: float) -> str:
    return f"{x:.6g}"


def render_report(result: ConsensusResult, table: SweepTable | None = None, fmt: str = "tsv") -> str:
    """TSV (one row per param, then the per-metric best row ending in the
    consensus cell) or JSON with the same content."""
    metrics = table.metrics if table is not None else tuple(result.per_metric_best)
    if fmt == "json":
        doc = {}
        if table is not None:
            doc["params"] = list(table.params)
            doc["metrics"] = list(metrics)
            doc["directions"] = {m: ("max" if table.directions[m] > 0 else "min") for m in metrics}
            doc["values"] = {m: list(table.values[m]) for m in metrics}
        doc["per_metric_best"] = {m: list(result.per_metric_best[m]) for m in metrics}
        doc["winners"] = list(result.winners)
        doc["count"] = result.count
        doc["consensus"] = result.cell
        return json.dumps(doc, indent=2) + "\n"
    if fmt != "tsv":
        raise ValueError(f"unknown format {fmt!r}")
    lines = ["\t".join(("param",) + metrics + ("consensus",))]
    if table is not None:
        for k, p in enumerate(table.params):
            lines.append("\t".join([p] + [_fmt6(table.values[m][k]) for m in metrics] + [""]))
    best_row = [",".join(result.per_metric_best[m]) for m in metrics]
    lines.append("\t".join(["best"] + best_row + [result.cell]))
    return "\n".join(lines) + "\n"


def load_manifest(path, mode: str = "crisp") -> list:
    """Read ``param<TAB>cover_path`` lines into :class:`ParamPoint` objects.

    Repeated params are repeated runs; points keep first-appearance order.
    Relative cover paths resolve against the manifest's directory.
    """
    path = Path(path)
    runs: dict = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t") if "\t" in line else line.split(None, 1)
            if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
                raise ParseError(f"{path}:{lineno}: expected 'param<TAB>cover_path'")
            param, cover_path = parts[0].strip(), Path(parts[1].strip())
            if not cover_path.is_absolute():
                cover_path = path.parent / cover_path
            runs.setdefault(param, []).append(read_cover(cover_path, mode))
    return [ParamPoint(p, covers) for p, covers in runs.items()]
