"""Vectorized numpy/scipy versions of the hot kernels.

Same signatures and results as the compiled ``_ckernels`` module, up to
floating-point summation order.
"""
import numpy as np
import scipy.sparse as sp


def edge_aggregates(eu, ev, ew, mem_ptr, mem_com, mem_val, average, n_com, with_between=True):
    """Accumulate belonging-weighted edge mass over community pairs.

    For every edge ``(u, v, w)`` and every pair of memberships
    ``(X, a)`` of ``u`` and ``(Y, b)`` of ``v`` the contribution is
    ``f(a, b) * w`` with ``f`` the average or the product. Same-community
    pairs add to ``e_in[X]``; cross pairs add to ``e_out`` of both sides and
    are emitted as COO triplets ``(X, Y, value)``, one per unordered pair
    occurrence.
    """
    cu = mem_ptr[eu + 1] - mem_ptr[eu]
    cv = mem_ptr[ev + 1] - mem_ptr[ev]
    npairs = cu * cv
    total = int(npairs.sum())
    e_in = np.zeros(n_com)
    e_out = np.zeros(n_com)
    empty = (np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0))
    if total == 0:
        return (e_in, e_out) + empty
    edge = np.repeat(np.arange(eu.size), npairs)
    start = np.cumsum(npairs) - npairs
    local = np.arange(total) - start[edge]
    width = cv[edge]
    mu = mem_ptr[eu[edge]] + local // width
    mv = mem_ptr[ev[edge]] + local % width
    x = mem_com[mu]
    y = mem_com[mv]
    if average:
        val = 0.5 * (mem_val[mu] + mem_val[mv]) * ew[edge]
    else:
        val = mem_val[mu] * mem_val[mv] * ew[edge]
    same = x == y
    e_in += np.bincount(x[same], weights=val[same], minlength=n_com)
    if not with_between:
        return (e_in, e_out) + empty
    cross = ~same
    x, y, val = x[cross], y[cross], val[cross]
    e_out += np.bincount(x, weights=val, minlength=n_com)
    e_out += np.bincount(y, weights=val, minlength=n_com)
    return e_in, e_out, x, y, val


def community_triangles(indptr, indices, data, n_com):
    """For each node ``c`` of a symmetric weighted graph (no diagonal), the
    total weight of edges ``{d, d'}`` with both ``d`` and ``d'`` adjacent to ``c``."""
    w = sp.csr_matrix((data, indices, indptr), shape=(n_com, n_com))
    b = w.copy()
    b.data = np.ones_like(b.data)
    paths = (b @ w).multiply(b)
    return np.asarray(paths.sum(axis=1)).ravel() / 2.0
