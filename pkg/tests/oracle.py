"""Literal loop transcriptions of every metric over a dense adjacency matrix.

Deliberately slow and independent of the library's aggregation path: no
factorizations, no sparse matrices, every sum written out over node indices.
Only for graphs with a handful of nodes.
"""
import math

import numpy as np


def dense_adjacency(g):
    n = g.node_count
    A = np.zeros((n, n))
    for u, v, w in zip(g.eu.tolist(), g.ev.tolist(), g.ew.tolist()):
        A[u, v] = A[v, u] = w
    return A


def membership_matrix(g, cover):
    """a[i, c] from the cover's stored coefficients."""
    a = np.zeros((g.node_count, len(cover.communities)))
    for c, comm in enumerate(cover.communities):
        for label, coef in comm.members.items():
            a[g.index[label], c] = coef
    return a


def coefficients(A, crisp, scheme):
    """Apply a coefficient scheme to a 0/1 membership matrix."""
    n, C = crisp.shape
    a = np.zeros((n, C))
    for i in range(n):
        comms = [c for c in range(C) if crisp[i, c] > 0]
        if not comms:
            continue
        if scheme == "v1":
            for c in comms:
                a[i, c] = 1.0 / len(comms)
            continue
        # v2: share of i's edge weight into each of its communities
        into = {c: sum(A[i, k] for k in range(n) if crisp[k, c] > 0) for c in comms}
        total = sum(into.values())
        for c in comms:
            if len(comms) == 1:
                a[i, c] = 1.0
            elif total == 0:
                a[i, c] = 1.0 / len(comms)
            else:
                a[i, c] = into[c] / total
    return a


def g_logistic(x, p):
    return 1.0 / (1.0 + math.exp(-(2 * p * x - p)))


def bf(function, x, y, p=30.0):
    if function == "average":
        return (x + y) / 2
    if function == "product":
        return x * y
    return g_logistic(x, p) * g_logistic(y, p)


def members(a, c):
    return [i for i in range(a.shape[0]) if a[i, c] > 0]


def aggregates(A, a, function, p=30.0):
    n, C = a.shape
    e_in = [0.0] * C
    e_out = [0.0] * C
    e_b = [[0.0] * C for _ in range(C)]
    d_in = [0.0] * C
    d_pair = [[0.0] * C for _ in range(C)]
    for c in range(C):
        mc = members(a, c)
        e_in[c] = 0.5 * sum(bf(function, a[i, c], a[j, c], p) * A[i, j] for i in mc for j in mc)
        e_out[c] = sum(
            bf(function, a[i, c], a[j, c2], p) * A[i, j]
            for i in mc for c2 in range(C) if c2 != c for j in members(a, c2)
        )
        pairs = sum(bf(function, a[i, c], a[j, c], p) for i in mc for j in mc if i != j)
        d_in[c] = 2 * e_in[c] / pairs if pairs > 0 else 0.0
        for c2 in range(C):
            if c2 == c:
                continue
            m2 = members(a, c2)
            e_b[c][c2] = sum(bf(function, a[i, c], a[j, c2], p) * A[i, j] for i in mc for j in m2)
            cross = sum(bf(function, a[i, c], a[j, c2], p) for i in mc for j in m2)
            d_pair[c][c2] = e_b[c][c2] / cross if cross > 0 else 0.0
    return e_in, e_out, e_b, d_in, d_pair


def q_ov(A, a, function, p=30.0):
    m = A.sum() / 2
    e_in, e_out, *_ = aggregates(A, a, function, p)
    return sum(e_in[c] / m - ((2 * e_in[c] + e_out[c]) / (2 * m)) ** 2 for c in range(a.shape[1]))


def q_ov_prime(A, a, function, p=30.0):
    m = A.sum() / 2
    k = A.sum(axis=1)
    total = 0.0
    for c in range(a.shape[1]):
        mc = members(a, c)
        for i in mc:
            for j in mc:
                total += (A[i, j] - k[i] * k[j] / (2 * m)) * bf(function, a[i, c], a[j, c], p)
    return total / (2 * m)


def q_ov_link(A, a, p=30.0):
    n = A.shape[0]
    m = A.sum() / 2
    k = A.sum(axis=1)
    total = 0.0
    for c in range(a.shape[1]):
        mc = members(a, c)
        for i in mc:
            for j in mc:
                r = bf("logistic", a[i, c], a[j, c], p)
                s = (sum(bf("logistic", a[i, c], a[q, c], p) for q in range(n))
                     * sum(bf("logistic", a[q, c], a[j, c], p) for q in range(n))) / n ** 2
                total += r * A[i, j] - s * k[i] * k[j] / (2 * m)
    return total / (2 * m)


def nq_ov(A, a, function, p=30.0):
    C = a.shape[1]
    e_in, e_out, e_b, *_ = aggregates(A, a, function, p)
    total = 0.0
    for c in range(C):
        hood = [c] + [d for d in range(C) if d != c and e_b[c][d] > 0]
        n_c = sum(e_in[d] for d in hood) + 0.5 * sum(e_b[d][d2] for d in hood for d2 in hood if d != d2)
        if n_c > 0:
            total += e_in[c] / n_c - ((2 * e_in[c] + e_out[c]) / (2 * n_c)) ** 2
    return total


def q_ds_ov(A, a, function, p=30.0):
    m = A.sum() / 2
    C = a.shape[1]
    e_in, e_out, e_b, d_in, d_pair = aggregates(A, a, function, p)
    total = 0.0
    for c in range(C):
        total += e_in[c] / m * d_in[c] - ((2 * e_in[c] + e_out[c]) / (2 * m) * d_in[c]) ** 2
        total -= sum(e_b[c][c2] / (2 * m) * d_pair[c][c2] for c2 in range(C) if c2 != c)
    return total


def local_metrics(A, a, function, p=30.0):
    C = a.shape[1]
    e_in, e_out, _, d_in, _ = aggregates(A, a, function, p)

    def ratio(x, y):
        return x / y if y > 0 else 0.0

    rows = []
    for c in range(C):
        size = sum(a[i, c] for i in members(a, c))
        rows.append(dict(
            IE=e_in[c], ID=d_in[c], CNT=ratio(2 * e_in[c], size), BE=e_out[c],
            EXP=ratio(e_out[c], size), CND=ratio(e_out[c], 2 * e_in[c] + e_out[c]),
            F=ratio(e_in[c], e_in[c] + e_out[c]), D=ratio(2 * e_in[c] - e_out[c], size),
        ))
    out = {}
    for key in ("IE", "BE", "D"):
        out[key] = sum(r[key] for r in rows)
    for key in ("ID", "CNT", "EXP", "CND", "F"):
        out[key] = sum(r[key] for r in rows) / C
    return out


def all_metrics(A, a, function, p=30.0):
    out = {
        "Q_ov": q_ov(A, a, function, p),
        "NQ_ov": nq_ov(A, a, function, p),
        "Q_ov^L": q_ov_link(A, a, p),
        "Q_ds^ov": q_ds_ov(A, a, function, p),
    }
    out.update(local_metrics(A, a, function, p))
    return out
