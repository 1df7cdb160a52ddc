"""Community covers, belonging coefficients and belonging functions."""
from __future__ import annotations

import io
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from fuzzyov.errors import CoverError, ParseError
from fuzzyov.graph import Graph

__all__ = [
    "Community",
    "Cover",
    "BelongingConfig",
    "CoverWarning",
    "load_cover",
    "read_cover",
    "write_cover",
    "assign_v1",
    "assign_v2",
    "apply_scheme",
    "belonging_value",
    "logistic",
    "fuzzy_to_crisp",
    "add_singletons",
    "fuzzy_size",
]

SCHEMES = ("given", "v1", "v2")
FUNCTIONS = ("average", "product", "logistic")
_FUNCTION_ALIASES = {"avg": "average", "prod": "product", "average": "average",
                     "product": "product", "logistic": "logistic"}
ROW_SUM_TOL = 1e-9


class CoverWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Community:
    """A community: node label -> belonging coefficient in (0, 1]."""

    id: int
    members: dict = field(default_factory=dict)

    def __post_init__(self):
        members = {}
        for label, a in self.members.items():
            a = float(a)
            if not 0.0 <= a <= 1.0 or math.isnan(a):
                raise CoverError(f"community {self.id}: coefficient {a!r} of node {label!r} outside [0, 1]")
            if a > 0.0:
                members[label] = a
        object.__setattr__(self, "members", members)

    def __len__(self):
        return len(self.members)

    @property
    def size(self) -> float:
        return fuzzy_size(self)


@dataclass(frozen=True)
class Cover:
    communities: tuple = ()
    kind: str = "crisp"

    def __post_init__(self):
        object.__setattr__(self, "communities", tuple(self.communities))
        if self.kind not in ("crisp", "fuzzy"):
            raise CoverError(f"cover kind must be 'crisp' or 'fuzzy', got {self.kind!r}")
        if self.kind == "crisp":
            for c in self.communities:
                if any(a != 1.0 for a in c.members.values()):
                    raise CoverError(f"crisp cover: community {c.id} has a coefficient other than 1")

    @classmethod
    def crisp(cls, groups) -> Cover:
        """Crisp cover from an iterable of node-label iterables."""
        return cls(tuple(Community(i, dict.fromkeys(g, 1.0)) for i, g in enumerate(groups)), "crisp")

    @classmethod
    def fuzzy(cls, groups) -> Cover:
        """Fuzzy cover from an iterable of ``{label: coefficient}`` mappings."""
        return cls(tuple(Community(i, dict(g)) for i, g in enumerate(groups)), "fuzzy")

    def __len__(self):
        return len(self.communities)

    def nodes(self) -> list:
        """Covered node labels in first-seen order."""
        seen = {}
        for c in self.communities:
            for label in c.members:
                seen.setdefault(label, None)
        return list(seen)

    def membership_index(self) -> dict:
        """label -> list of ``(position, coefficient)`` in community order."""
        index: dict = {}
        for pos, c in enumerate(self.communities):
            for label, a in c.members.items():
                index.setdefault(label, []).append((pos, a))
        return index

    def overlap_counts(self) -> dict:
        """label -> O_i, the number of communities containing the node."""
        return {label: len(ms) for label, ms in self.membership_index().items()}

    def row_sums(self) -> dict:
        return {label: math.fsum(a for _, a in ms) for label, ms in self.membership_index().items()}

    def is_disjoint(self) -> bool:
        return all(n == 1 for n in self.overlap_counts().values())

    def validate(self, normalize: bool = False) -> Cover:
        """Check that every covered node's coefficients sum to one.

        With ``normalize`` offending rows are rescaled instead of rejected.
        Returns the validated cover as kind ``fuzzy``.
        """
        sums = self.row_sums()
        bad = {label: s for label, s in sums.items() if abs(s - 1.0) > ROW_SUM_TOL}
        if bad and not normalize:
            label, s = next(iter(bad.items()))
            raise CoverError(
                f"{len(bad)} node(s) have coefficients not summing to 1 (e.g. node {label!r}: {s!r}); "
                "use normalize to rescale"
            )
        comms = []
        for c in self.communities:
            comms.append(Community(c.id, {
                label: (a / bad[label] if label in bad else a) for label, a in c.members.items()
            }))
        return Cover(tuple(comms), "fuzzy")


@dataclass(frozen=True)
class BelongingConfig:
    """Coefficient scheme x belonging function (``p`` only matters for logistic)."""

    scheme: str = "v1"
    function: str = "product"
    p: float = 30.0

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        fn = _FUNCTION_ALIASES.get(self.function)
        if fn is None:
            raise ValueError(f"function must be one of {FUNCTIONS}, got {self.function!r}")
        object.__setattr__(self, "function", fn)
        if not self.p > 0 or not math.isfinite(self.p):
            raise ValueError(f"p must be positive, got {self.p!r}")


def logistic(x, p: float = 30.0):
    """``1 / (1 + exp(-(2px - p)))``; works on scalars and arrays."""
    return 1.0 / (1.0 + np.exp(-(2.0 * p * np.asarray(x, dtype=np.float64) - p)))


def belonging_value(cfg: BelongingConfig, a: float, b: float) -> float:
    if cfg.function == "average":
        return (a + b) / 2.0
    if cfg.function == "product":
        return a * b
    return float(logistic(a, cfg.p) * logistic(b, cfg.p))


# -- I/O ---------------------------------------------------------------------

def load_cover(source, mode: str = "crisp", name: str = "<cover>") -> Cover:
    """Parse one community per line.

    crisp: whitespace-separated labels. fuzzy: ``label:coefficient`` tokens.
    Empty lines are skipped; communities are numbered by line order from 0.
    """
    if mode not in ("crisp", "fuzzy"):
        raise ValueError(f"mode must be 'crisp' or 'fuzzy', got {mode!r}")
    lines = io.StringIO(source) if isinstance(source, str) else source
    comms = []
    for lineno, raw in enumerate(lines, start=1):
        tokens = raw.split()
        if not tokens:
            continue
        members: dict = {}
        for tok in tokens:
            if mode == "crisp":
                label, a = tok, 1.0
            else:
                label, sep, coef = tok.rpartition(":")
                if not sep or not label:
                    raise ParseError(f"{name}:{lineno}: expected 'label:coefficient', got {tok!r}")
                try:
                    a = float(coef)
                except ValueError:
                    raise ParseError(f"{name}:{lineno}: bad coefficient in {tok!r}") from None
                if not 0.0 <= a <= 1.0:
                    raise ParseError(f"{name}:{lineno}: coefficient {coef} outside [0, 1]")
            if label in members:
                raise ParseError(f"{name}:{lineno}: node {label!r} listed twice")
            members[label] = a
        comms.append(Community(len(comms), members))
    return Cover(tuple(comms), mode)


def read_cover(path, mode: str = "crisp") -> Cover:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return load_cover(fh, mode, name=str(path))


def write_cover(cover: Cover) -> str:
    """Inverse of :func:`load_cover`; fuzzy coefficients use 17 significant digits."""
    out = []
    for c in cover.communities:
        if cover.kind == "crisp":
            out.append(" ".join(c.members))
        else:
            out.append(" ".join(f"{label}:{a:.17g}" for label, a in c.members.items()))
    return "".join(line + "\n" for line in out)


# -- coefficient schemes -----------------------------------------------------

def _require_crisp(cover: Cover, what: str):
    if cover.kind != "crisp":
        raise CoverError(f"{what} needs a crisp cover")


def assign_v1(cover: Cover) -> Cover:
    """Each membership of node i gets ``1 / O_i``."""
    _require_crisp(cover, "assign_v1")
    counts = cover.overlap_counts()
    return Cover(tuple(
        Community(c.id, {label: 1.0 / counts[label] for label in c.members}) for c in cover.communities
    ), "fuzzy")


def assign_v2(g: Graph, cover: Cover, fallback: bool = False) -> Cover:
    """Node-strength coefficients: the share of node i's edge weight into its
    communities that lands in community c.

    Nodes in a single community get 1. A node in several communities with no
    edges into any of them raises :class:`CoverError` unless ``fallback``
    assigns ``1 / O_i``.
    """
    _require_crisp(cover, "assign_v2")
    index = cover.membership_index()
    member_sets = [c.members for c in cover.communities]
    coef: dict = {}
    for label, ms in index.items():
        if len(ms) == 1:
            coef[label] = {ms[0][0]: 1.0}
            continue
        i = g.index.get(label)
        if i is None:
            raise CoverError(f"assign_v2: node {label!r} is not in the graph")
        nbrs, wts = g.neighbors(i)
        nbr_labels = [g.labels[k] for k in nbrs.tolist()]
        wts = wts.tolist()
        strength = {}
        for pos, _ in ms:
            mem = member_sets[pos]
            strength[pos] = math.fsum(w for lab, w in zip(nbr_labels, wts) if lab in mem)
        total = math.fsum(strength.values())
        if total == 0.0:
            if not fallback:
                raise CoverError(f"assign_v2: node {label!r} has no edges into any of its communities")
            coef[label] = {pos: 1.0 / len(ms) for pos, _ in ms}
        else:
            coef[label] = {pos: s / total for pos, s in strength.items()}
    comms = []
    for pos, c in enumerate(cover.communities):
        # zero shares are legal here and drop out of the community
        comms.append(Community(c.id, {label: coef[label][pos] for label in c.members}))
    return Cover(tuple(comms), "fuzzy")


def apply_scheme(g: Graph, cover: Cover, cfg: BelongingConfig, *, normalize: bool = False,
                 v2_fallback: bool = False) -> Cover:
    """Turn ``cover`` into a validated fuzzy cover under ``cfg.scheme``."""
    if cfg.scheme == "given":
        return cover.validate(normalize=normalize)
    if cfg.scheme == "v1":
        return assign_v1(cover)
    return assign_v2(g, cover, fallback=v2_fallback)


# -- conversions -------------------------------------------------------------

def fuzzy_to_crisp(cover: Cover, threshold: float) -> Cover:
    """Keep node i in community c iff ``a_ic > threshold``; emptied communities vanish."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must lie in [0, 1], got {threshold!r}")
    comms = []
    for c in cover.communities:
        kept = [label for label, a in c.members.items() if a > threshold]
        if kept:
            comms.append(Community(c.id, dict.fromkeys(kept, 1.0)))
    result = Cover(tuple(comms), "crisp")
    lost = set(cover.nodes()) - set(result.nodes())
    if lost:
        sample = ", ".join(sorted(map(str, lost))[:5])
        warnings.warn(f"threshold {threshold}: {len(lost)} node(s) lost all memberships ({sample})",
                      CoverWarning, stacklevel=2)
    if not comms and cover.communities:
        warnings.warn(f"threshold {threshold}: cover is empty", CoverWarning, stacklevel=2)
    return result


def add_singletons(g: Graph, cover: Cover) -> Cover:
    """Append a one-node community for every graph node not in any community."""
    covered = set(cover.nodes())
    missing = [label for label in g.labels if label not in covered]
    if not missing:
        return cover
    next_id = max((c.id for c in cover.communities), default=-1) + 1
    extra = tuple(Community(next_id + k, {label: 1.0}) for k, label in enumerate(missing))
    return Cover(cover.communities + extra, cover.kind)


def fuzzy_size(c: Community) -> float:
    return math.fsum(c.members.values())
