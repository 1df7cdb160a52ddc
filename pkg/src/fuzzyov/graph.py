"""Immutable weighted undirected graphs and the edge-list format."""
from __future__ import annotations

import io
import math
import warnings
from collections.abc import Iterable
from pathlib import Path

import numpy as np

from fuzzyov.errors import GraphError, ParseError

__all__ = [
    "Graph",
    "GraphWarning",
    "load_edge_list",
    "read_edge_list",
    "write_edge_list",
    "total_edge_weight",
    "degree",
]

DIRECTED_POLICIES = ("symmetrize", "reject")


class GraphWarning(UserWarning):
    """Non-fatal ingestion event (dropped self-loops)."""


class Graph:
    """Weighted undirected graph over dense node indices.

    Node ``i`` carries the external label ``labels[i]``. Edges are stored once
    with ``u < v`` and sorted by ``(u, v)``; the symmetric adjacency is kept
    in CSR form (``indptr``, ``indices``, ``weights``).
    """

    __slots__ = (
        "labels", "index", "eu", "ev", "ew", "indptr", "indices", "weights",
        "degrees", "m", "dropped_self_loops",
    )

    def __init__(self, labels, eu, ev, ew, dropped_self_loops=0):
        self.labels = tuple(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise GraphError("node labels must be unique")
        n = len(self.labels)
        eu = np.asarray(eu, dtype=np.int64)
        ev = np.asarray(ev, dtype=np.int64)
        ew = np.asarray(ew, dtype=np.float64)
        if not (eu.shape == ev.shape == ew.shape):
            raise GraphError("edge arrays must have equal length")
        if eu.size and (np.any(eu >= ev) or eu.min() < 0 or ev.max() >= n):
            raise GraphError("edges must satisfy 0 <= u < v < node_count")
        if np.any(~np.isfinite(ew)) or np.any(ew <= 0):
            raise GraphError("edge weights must be finite and positive")
        order = np.lexsort((ev, eu))
        eu, ev, ew = eu[order], ev[order], ew[order]
        if eu.size > 1:
            same = (eu[1:] == eu[:-1]) & (ev[1:] == ev[:-1])
            if same.any():
                raise GraphError("duplicate edges")
        self.eu, self.ev, self.ew = eu, ev, ew
        for arr in (eu, ev, ew):
            arr.setflags(write=False)

        src = np.concatenate([eu, ev])
        dst = np.concatenate([ev, eu])
        wts = np.concatenate([ew, ew])
        order = np.lexsort((dst, src))
        counts = np.bincount(src, minlength=n)
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=self.indptr[1:])
        self.indices = dst[order]
        self.weights = wts[order]
        self.degrees = np.bincount(src, weights=wts, minlength=n).astype(np.float64)
        self.m = math.fsum(ew.tolist())
        self.dropped_self_loops = dropped_self_loops
        for arr in (self.indptr, self.indices, self.weights, self.degrees):
            arr.setflags(write=False)

    @classmethod
    def from_edges(cls, labels, u, v, w=None, directed_policy="symmetrize"):
        """Build a graph from index arrays, canonicalizing edge orientation.

        Self-loops are dropped. Duplicate and antiparallel edges are summed
        under ``symmetrize`` and rejected under ``reject``.
        """
        _check_policy(directed_policy)
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        w = np.ones(u.shape, dtype=np.float64) if w is None else np.asarray(w, dtype=np.float64)
        loops = u == v
        n_loops = int(loops.sum())
        if n_loops:
            warnings.warn(f"dropped {n_loops} self-loop(s)", GraphWarning, stacklevel=2)
        keep = ~loops
        u, v, w = u[keep], v[keep], w[keep]
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        n = len(labels)
        key = lo * max(n, 1) + hi
        uniq, inverse = np.unique(key, return_inverse=True)
        if uniq.size != key.size and directed_policy == "reject":
            raise GraphError("duplicate edge under reject policy")
        merged = np.bincount(inverse, weights=w, minlength=uniq.size)
        return cls(labels, uniq // max(n, 1), uniq % max(n, 1), merged, n_loops)

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return int(self.eu.size)

    @property
    def is_weighted(self) -> bool:
        return bool(np.any(self.ew != 1.0))

    def neighbors(self, i: int):
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def edges(self):
        """Yield ``(label_u, label_v, weight)`` in canonical order."""
        labels = self.labels
        for u, v, w in zip(self.eu.tolist(), self.ev.tolist(), self.ew.tolist()):
            yield labels[u], labels[v], w

    def labeled_edges(self) -> dict:
        return {frozenset((a, b)): w for a, b, w in self.edges()}

    def __eq__(self, other):
        # Labeled-graph equality: internal index order is an ingestion detail.
        if not isinstance(other, Graph):
            return NotImplemented
        return set(self.labels) == set(other.labels) and self.labeled_edges() == other.labeled_edges()

    __hash__ = None

    def __repr__(self):
        return f"Graph(nodes={self.node_count}, edges={self.edge_count}, total_weight={self.m:g})"


def _check_policy(policy):
    if policy not in DIRECTED_POLICIES:
        raise ValueError(f"directed_policy must be one of {DIRECTED_POLICIES}, got {policy!r}")


def _lines(source) -> Iterable[str]:
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def load_edge_list(source, directed_policy: str = "symmetrize", name: str = "<edge list>") -> Graph:
    """Parse ``u v [w]`` lines into a :class:`Graph`.

    ``source`` is a string or any iterable of lines. Lines starting with
    ``#`` are comments. Labels are interned in first-seen order.
    """
    _check_policy(directed_policy)
    index: dict[str, int] = {}
    weights: dict[tuple[int, int], float] = {}
    loops = 0
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"{name}:{lineno}: expected 'u v [w]', got {line!r}")
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise ParseError(f"{name}:{lineno}: bad weight {parts[2]!r}") from None
            if not math.isfinite(w) or w <= 0:
                raise ParseError(f"{name}:{lineno}: weight must be positive and finite, got {parts[2]}")
        else:
            w = 1.0
        a = index.setdefault(parts[0], len(index))
        b = index.setdefault(parts[1], len(index))
        if a == b:
            loops += 1
            continue
        key = (a, b) if a < b else (b, a)
        if key in weights:
            if directed_policy == "reject":
                raise ParseError(f"{name}:{lineno}: duplicate edge {parts[0]} {parts[1]}")
            weights[key] += w
        else:
            weights[key] = w
    if loops:
        warnings.warn(f"{name}: dropped {loops} self-loop(s)", GraphWarning, stacklevel=2)
    if weights:
        keys = np.array(list(weights.keys()), dtype=np.int64)
        eu, ev = keys[:, 0], keys[:, 1]
        ew = np.fromiter(weights.values(), dtype=np.float64, count=len(weights))
    else:
        eu = ev = np.empty(0, dtype=np.int64)
        ew = np.empty(0, dtype=np.float64)
    return Graph(list(index), eu, ev, ew, dropped_self_loops=loops)


def read_edge_list(path, directed_policy: str = "symmetrize") -> Graph:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return load_edge_list(fh, directed_policy, name=str(path))


def write_edge_list(g: Graph) -> str:
    """Canonical edge list: edges sorted by internal index, weights only if any differ from 1.

    Isolated nodes have no representation in this format.
    """
    weighted = g.is_weighted
    out = []
    for a, b, w in g.edges():
        out.append(f"{a} {b} {w!r}\n" if weighted else f"{a} {b}\n")
    return "".join(out)


def total_edge_weight(g: Graph) -> float:
    return g.m


def degree(g: Graph, node) -> float:
    """Weighted degree of the node with external label ``node``."""
    try:
        i = g.index[node]
    except KeyError:
        raise GraphError(f"unknown node {node!r}") from None
    return float(g.degrees[i])
