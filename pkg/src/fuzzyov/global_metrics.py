"""Network-level modularity variants for fuzzy overlapping covers.

All metrics share one pass over the edges (:func:`fuzzyov.kernels.edge_aggregates`)
that accumulates, per community, the belonging-weighted internal edge mass
``e_in``, boundary mass ``e_out`` and the sparse community-pair matrix
``e_between``. Everything else is O(|V| + |C| + nnz(e_between)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from fuzzyov import kernels
from fuzzyov.cover import BelongingConfig, Cover, apply_scheme, logistic
from fuzzyov.errors import CoverError, MetricError
from fuzzyov.graph import Graph

__all__ = [
    "CommunityAggregates",
    "Evaluation",
    "community_aggregates",
    "q_disjoint",
    "nq_disjoint",
    "q_ds_disjoint",
    "q_ov",
    "q_ov_prime",
    "q_ov_link",
    "q_ov_link_naive",
    "nq_ov",
    "q_ds_ov",
]


@dataclass(frozen=True)
class CommunityAggregates:
    """Per-community edge masses and densities, keyed by community id."""

    id: int
    e_in: float
    e_out: float
    e_between: dict
    d_in: float
    pair_density: dict
    size: float


class _Binding:
    """A fuzzy cover resolved against a graph's dense node indices.

    Memberships are stored node-major: node ``i`` owns slots
    ``mem_ptr[i]:mem_ptr[i+1]`` of ``mem_com`` / ``mem_coef``.
    """

    def __init__(self, g: Graph, cover: Cover):
        nodes, coms, coefs = [], [], []
        index = g.index
        for pos, c in enumerate(cover.communities):
            for label, a in c.members.items():
                i = index.get(label)
                if i is None:
                    raise CoverError(f"community {c.id}: node {label!r} is not in the graph")
                nodes.append(i)
                coms.append(pos)
                coefs.append(a)
        node = np.array(nodes, dtype=np.int64)
        com = np.array(coms, dtype=np.int64)
        coef = np.array(coefs, dtype=np.float64)
        order = np.lexsort((com, node))
        self.n_nodes = g.node_count
        self.n_com = len(cover.communities)
        self.ids = [c.id for c in cover.communities]
        self.mem_node = node[order]
        self.mem_com = com[order]
        self.mem_coef = coef[order]
        self.mem_ptr = np.zeros(g.node_count + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.mem_node, minlength=g.node_count), out=self.mem_ptr[1:])
        self.count = np.bincount(self.mem_com, minlength=self.n_com).astype(np.float64)
        self.size = np.bincount(self.mem_com, weights=self.mem_coef, minlength=self.n_com)

    def sums(self, values):
        return np.bincount(self.mem_com, weights=values, minlength=self.n_com)


def _pair_mass(b: _Binding, h: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Sum over ordered member pairs i != j of h_i * h_j, per community."""
    mass = s * s - b.sums(h * h)
    # S^2 - sum h^2 cancels badly when one member dominates; redo those with positive sums only
    shaky = np.flatnonzero(mass < 1e-6 * s * s)
    if shaky.size:
        order = np.argsort(b.mem_com, kind="stable")
        starts = np.searchsorted(b.mem_com[order], np.arange(b.n_com + 1))
        for c in shaky:
            hc = np.sort(h[order[starts[c]:starts[c + 1]]])
            mass[c] = 2.0 * float(np.dot(hc[1:], np.cumsum(hc)[:-1])) if hc.size > 1 else 0.0
    return mass


class _Aggregates:
    """Array form of :class:`CommunityAggregates` for one belonging function."""

    def __init__(self, g: Graph, b: _Binding, function: str, p: float):
        average = function == "average"
        h = logistic(b.mem_coef, p) if function == "logistic" else b.mem_coef
        self.h = h
        e_in, e_out, rows, cols, vals = kernels.edge_aggregates(
            g.eu, g.ev, g.ew, b.mem_ptr, b.mem_com, h, average, b.n_com, True)
        self.e_in = e_in
        self.e_out = e_out
        n = b.n_com
        half = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
        between = (half + half.T).tocsr()
        between.sum_duplicates()
        between.sort_indices()
        self.between = between

        s = b.sums(h)
        count = b.count
        if average:
            pair_mass = (count - 1.0) * s
        else:
            pair_mass = _pair_mass(b, h, s)
        self.d_in = np.divide(2.0 * e_in, pair_mass, out=np.zeros(n), where=pair_mass > 0)

        r = np.repeat(np.arange(n), np.diff(between.indptr))
        c = between.indices
        if average:
            cross_mass = 0.5 * (count[c] * s[r] + count[r] * s[c])
        else:
            cross_mass = s[r] * s[c]
        dens = np.divide(between.data, cross_mass, out=np.zeros_like(between.data), where=cross_mass > 0)
        self.pair_density = sp.csr_matrix((dens, between.indices, between.indptr), shape=(n, n))


class Evaluation:
    """All metrics of one ``(graph, cover, config)`` triple, sharing the edge pass.

    ``cover`` is the raw cover; ``cfg.scheme`` turns it into coefficients
    (``given`` validates the coefficients already present).
    """

    def __init__(self, g: Graph, cover: Cover, cfg: BelongingConfig, *, normalize: bool = False,
                 v2_fallback: bool = False):
        self.graph = g
        self.cfg = cfg
        self.cover = apply_scheme(g, cover, cfg, normalize=normalize, v2_fallback=v2_fallback)
        self.binding = _Binding(g, self.cover)
        self._agg = None
        self._link_in = None

    @property
    def aggregates(self) -> _Aggregates:
        if self._agg is None:
            self._agg = _Aggregates(self.graph, self.binding, self.cfg.function, self.cfg.p)
        return self._agg

    def _m(self):
        m = self.graph.m
        if m <= 0:
            raise MetricError("metric undefined on a graph without edges (total weight 0)")
        return m

    def community_aggregates(self) -> list:
        agg = self.aggregates
        ids = self.binding.ids
        out = []
        for c in range(self.binding.n_com):
            lo, hi = agg.between.indptr[c], agg.between.indptr[c + 1]
            cols = agg.between.indices[lo:hi].tolist()
            out.append(CommunityAggregates(
                id=ids[c],
                e_in=float(agg.e_in[c]),
                e_out=float(agg.e_out[c]),
                e_between={ids[k]: v for k, v in zip(cols, agg.between.data[lo:hi].tolist())},
                d_in=float(agg.d_in[c]),
                pair_density={ids[k]: v for k, v in zip(cols, agg.pair_density.data[lo:hi].tolist())},
                size=float(self.binding.size[c]),
            ))
        return out

    def q_ov(self) -> float:
        m = self._m()
        agg = self.aggregates
        return math.fsum((agg.e_in / m - ((2.0 * agg.e_in + agg.e_out) / (2.0 * m)) ** 2).tolist())

    def q_ov_prime(self) -> float:
        m = self._m()
        agg = self.aggregates
        b = self.binding
        k = self.graph.degrees[b.mem_node]
        if self.cfg.function == "average":
            # sum_{i,j in c} k_i k_j (a_i + a_j)/2 = (sum k_i a_i)(sum k_j)
            null = b.sums(k * b.mem_coef) * b.sums(k)
        else:
            null = b.sums(k * agg.h) ** 2
        return math.fsum((agg.e_in / m - null / (4.0 * m * m)).tolist())

    def q_ov_link(self) -> float:
        m = self._m()
        b = self.binding
        p = self.cfg.p
        gv = logistic(b.mem_coef, p)
        if self._link_in is None:
            if self.cfg.function == "logistic":
                self._link_in = self.aggregates.e_in
            else:
                self._link_in = kernels.edge_aggregates(
                    self.graph.eu, self.graph.ev, self.graph.ew, b.mem_ptr, b.mem_com, gv,
                    False, b.n_com, False)[0]
        e_in = self._link_in
        n = b.n_nodes
        # expected edge coefficient sums run over every node; non-members have a = 0
        g_tot = b.sums(gv) + (n - b.count) * float(logistic(0.0, p))
        k = self.graph.degrees[b.mem_node]
        null = (g_tot / n) ** 2 * b.sums(k * gv) ** 2
        return math.fsum((e_in / m - null / (4.0 * m * m)).tolist())

    def neighborhood_weight(self) -> np.ndarray:
        """Edge mass of each community's neighborhood subnetwork."""
        agg = self.aggregates
        w = agg.between
        n = self.binding.n_com
        adj = w.copy()
        adj.data = np.ones_like(adj.data)
        tri = kernels.community_triangles(w.indptr.astype(np.int64), w.indices.astype(np.int64),
                                          np.ascontiguousarray(w.data, dtype=np.float64), n)
        row_between = np.asarray(w.sum(axis=1)).ravel()
        return agg.e_in + adj @ agg.e_in + row_between + tri

    def nq_ov(self) -> float:
        self._m()
        agg = self.aggregates
        nb = self.neighborhood_weight()
        pos = nb > 0
        e_in, e_out, nb = agg.e_in[pos], agg.e_out[pos], nb[pos]
        return math.fsum((e_in / nb - ((2.0 * e_in + e_out) / (2.0 * nb)) ** 2).tolist())

    def q_ds_ov(self) -> float:
        m = self._m()
        agg = self.aggregates
        d = agg.d_in
        terms = agg.e_in / m * d - ((2.0 * agg.e_in + agg.e_out) / (2.0 * m) * d) ** 2
        split = agg.between.multiply(agg.pair_density)
        split_rows = np.asarray(split.sum(axis=1)).ravel() / (2.0 * m)
        return math.fsum((terms - split_rows).tolist())


def community_aggregates(g: Graph, cover: Cover, cfg: BelongingConfig) -> list:
    return Evaluation(g, cover, cfg).community_aggregates()


def q_ov(g: Graph, cover: Cover, cfg: BelongingConfig) -> float:
    """Node-based overlapping modularity in its edge-count form."""
    return Evaluation(g, cover, cfg).q_ov()


def q_ov_prime(g: Graph, cover: Cover, cfg: BelongingConfig) -> float:
    """Node-based overlapping modularity in its null-model form.

    Equal to :func:`q_ov` under the product function; not under the average.
    """
    return Evaluation(g, cover, cfg).q_ov_prime()


def _link_config(cfg) -> BelongingConfig:
    if isinstance(cfg, BelongingConfig):
        return cfg
    return BelongingConfig("given", "logistic", float(cfg))


def q_ov_link(g: Graph, cover: Cover, cfg=30.0) -> float:
    """Edge-based overlapping modularity with the logistic edge coefficient.

    ``cfg`` is a :class:`BelongingConfig` (its scheme and ``p`` are used, the
    function is ignored) or a bare ``p`` for covers whose coefficients are given.
    """
    return Evaluation(g, cover, _link_config(cfg)).q_ov_link()


def q_ov_link_naive(g: Graph, cover: Cover, cfg=30.0) -> float:
    """Reference double loop over member pairs for :func:`q_ov_link`.

    The expected coefficient sums are formed directly over all nodes, one
    community at a time. O(sum |c|^2 + |C| |V|); for testing only.
    """
    cfg = _link_config(cfg)
    m = g.m
    if m <= 0:
        raise MetricError("metric undefined on a graph without edges (total weight 0)")
    fuzzy = apply_scheme(g, cover, cfg)
    n = g.node_count
    adj = [dict(zip(*(arr.tolist() for arr in g.neighbors(i)))) for i in range(n)]
    total = 0.0
    for c in fuzzy.communities:
        idx = [g.index[label] for label in c.members]
        gm = [float(logistic(a, cfg.p)) for a in c.members.values()]
        full = np.full(n, float(logistic(0.0, cfg.p)))
        full[idx] = gm
        # sum_k F(a_ic, a_kc) for each member i
        expected = [float(np.sum(gi * full)) for gi in gm]
        for x, i in enumerate(idx):
            for y, j in enumerate(idx):
                a_ij = adj[i].get(j, 0.0)
                r = gm[x] * gm[y]
                s = expected[x] * expected[y] / (n * n)
                total += r * a_ij - s * g.degrees[i] * g.degrees[j] / (2.0 * m)
    return total / (2.0 * m)


def nq_ov(g: Graph, cover: Cover, cfg: BelongingConfig) -> float:
    """Localized overlapping modularity: each community is scored against the
    edge mass of its neighborhood instead of the whole graph."""
    return Evaluation(g, cover, cfg).nq_ov()


def q_ds_ov(g: Graph, cover: Cover, cfg: BelongingConfig) -> float:
    """Overlapping modularity density."""
    return Evaluation(g, cover, cfg).q_ds_ov()


# -- disjoint baselines --------------------------------------------------------

def _partition_labels(g: Graph, partition: Cover) -> np.ndarray:
    lab = np.full(g.node_count, -1, dtype=np.int64)
    for pos, c in enumerate(partition.communities):
        for label, a in c.members.items():
            i = g.index.get(label)
            if i is None:
                raise CoverError(f"node {label!r} is not in the graph")
            if a != 1.0:
                raise CoverError("a partition must be crisp")
            if lab[i] >= 0:
                raise CoverError(f"node {label!r} is in more than one community; not a partition")
            lab[i] = pos
    if np.any(lab < 0):
        missing = g.labels[int(np.argmin(lab))]
        raise CoverError(f"partition does not cover node {missing!r}")
    return lab


def _disjoint_counts(g: Graph, partition: Cover):
    if g.m <= 0:
        raise MetricError("metric undefined on a graph without edges (total weight 0)")
    lab = _partition_labels(g, partition)
    n = len(partition.communities)
    lu, lv = lab[g.eu], lab[g.ev]
    same = lu == lv
    e_in = np.bincount(lu[same], weights=g.ew[same], minlength=n)
    between = sp.coo_matrix((g.ew[~same], (lu[~same], lv[~same])), shape=(n, n)).tocsr()
    between = (between + between.T).tocsr()
    return lab, e_in, between


def q_disjoint(g: Graph, partition: Cover) -> float:
    """Newman modularity of a crisp partition."""
    lab, e_in, _ = _disjoint_counts(g, partition)
    m = g.m
    strength = np.bincount(lab, weights=g.degrees, minlength=e_in.size)
    return math.fsum((e_in / m - (strength / (2.0 * m)) ** 2).tolist())


def nq_disjoint(g: Graph, partition: Cover) -> float:
    """Localized modularity of a crisp partition, counting neighborhood edges
    directly (O(|C| |E|))."""
    lab, e_in, between = _disjoint_counts(g, partition)
    strength = np.bincount(lab, weights=g.degrees, minlength=e_in.size)
    lu, lv = lab[g.eu], lab[g.ev]
    total = []
    for c in range(e_in.size):
        hood = np.zeros(e_in.size, dtype=bool)
        hood[c] = True
        hood[between.indices[between.indptr[c]:between.indptr[c + 1]]] = True
        nb = float(g.ew[hood[lu] & hood[lv]].sum())
        if nb > 0:
            total.append(e_in[c] / nb - (strength[c] / (2.0 * nb)) ** 2)
    return math.fsum(total)


def q_ds_disjoint(g: Graph, partition: Cover) -> float:
    """Modularity density of a crisp partition."""
    lab, e_in, between = _disjoint_counts(g, partition)
    m = g.m
    size = np.bincount(lab, minlength=e_in.size).astype(np.float64)
    strength = np.bincount(lab, weights=g.degrees, minlength=e_in.size)
    pairs = size * (size - 1.0)
    d = np.divide(2.0 * e_in, pairs, out=np.zeros_like(e_in), where=pairs > 0)
    total = []
    for c in range(e_in.size):
        split = 0.0
        for k in range(between.indptr[c], between.indptr[c + 1]):
            c2 = between.indices[k]
            e = between.data[k]
            split += e / (2.0 * m) * (e / (size[c] * size[c2]))
        total.append(e_in[c] / m * d[c] - (strength[c] / (2.0 * m) * d[c]) ** 2 - split)
    return math.fsum(total)
