"""Per-community quality metrics and the twelve-value network report."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from fuzzyov.cover import BelongingConfig, Cover, add_singletons
from fuzzyov.errors import MetricError
from fuzzyov.global_metrics import CommunityAggregates, Evaluation
from fuzzyov.graph import Graph

__all__ = [
    "METRICS",
    "DIRECTIONS",
    "LocalMetricRow",
    "MetricReport",
    "local_row",
    "local_rows",
    "aggregate",
    "compute_report",
]

# Display names, in table column order.
METRICS = ("Q_ov", "NQ_ov", "Q_ov^L", "Q_ds^ov", "IE", "ID", "CNT", "BE", "EXP", "CND", "F", "D")

# +1: larger is better, -1: smaller is better.
DIRECTIONS = {name: 1 for name in METRICS}
DIRECTIONS.update({"BE": -1, "EXP": -1, "CND": -1})

_FIELDS = ("q_ov", "nq_ov", "q_ov_link", "q_ds_ov", "ie", "id", "cnt", "be", "exp", "cnd", "f", "d")
_FIELD_OF = dict(zip(METRICS, _FIELDS))


def _ratio(num, den):
    return num / den if den > 0 else 0.0


@dataclass(frozen=True)
class LocalMetricRow:
    community_id: int
    ie: float
    id: float
    cnt: float
    be: float
    exp: float
    cnd: float
    fitness: float
    d_term: float


def local_row(agg: CommunityAggregates, size: float | None = None) -> LocalMetricRow:
    """Eight local metrics of one community; any 0/0 ratio is 0."""
    size = agg.size if size is None else size
    e_in, e_out = agg.e_in, agg.e_out
    return LocalMetricRow(
        community_id=agg.id,
        ie=e_in,
        id=agg.d_in,
        cnt=_ratio(2.0 * e_in, size),
        be=e_out,
        exp=_ratio(e_out, size),
        cnd=_ratio(e_out, 2.0 * e_in + e_out),
        fitness=_ratio(e_in, e_in + e_out),
        d_term=_ratio(2.0 * e_in - e_out, size),
    )


def local_rows(g: Graph, cover: Cover, cfg: BelongingConfig) -> list:
    ev = Evaluation(g, cover, cfg)
    return [local_row(a) for a in ev.community_aggregates()]


def aggregate(rows) -> dict:
    """Network-level local metrics: IE, BE and D are sums, the rest means."""
    rows = list(rows)
    if not rows:
        raise MetricError("cannot aggregate local metrics of an empty cover")
    n = len(rows)

    def total(attr):
        return math.fsum(getattr(r, attr) for r in rows)

    return {
        "IE": total("ie"),
        "ID": total("id") / n,
        "CNT": total("cnt") / n,
        "BE": total("be"),
        "EXP": total("exp") / n,
        "CND": total("cnd") / n,
        "F": total("fitness") / n,
        "D": total("d_term"),
    }


@dataclass(frozen=True)
class MetricReport:
    q_ov: float
    nq_ov: float
    q_ov_link: float
    q_ds_ov: float
    ie: float
    id: float
    cnt: float
    be: float
    exp: float
    cnd: float
    f: float
    d: float

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not math.isfinite(value):
                raise MetricError(f"metric {name} is not finite ({value!r})")

    def __getitem__(self, metric: str) -> float:
        """Value by display name, e.g. ``report["Q_ds^ov"]``."""
        return getattr(self, _FIELD_OF[metric])

    def as_dict(self) -> dict:
        return {name: self[name] for name in METRICS}

    @classmethod
    def from_dict(cls, values: dict) -> MetricReport:
        return cls(**{_FIELD_OF[name]: float(values[name]) for name in METRICS})


def compute_report(g: Graph, cover: Cover, cfg: BelongingConfig, *, singletons: bool = False,
                   normalize: bool = False, v2_fallback: bool = False) -> MetricReport:
    """All twelve metrics for one cover. ``singletons`` first gives every
    uncovered node its own community."""
    if singletons:
        cover = add_singletons(g, cover)
    ev = Evaluation(g, cover, cfg, normalize=normalize, v2_fallback=v2_fallback)
    local = aggregate(local_row(a) for a in ev.community_aggregates())
    return MetricReport(
        q_ov=ev.q_ov(),
        nq_ov=ev.nq_ov(),
        q_ov_link=ev.q_ov_link(),
        q_ds_ov=ev.q_ds_ov(),
        **{_FIELD_OF[name]: value for name, value in local.items()},
    )
