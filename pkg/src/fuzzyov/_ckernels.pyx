# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot kernels; see ``_pykernels`` for the contract."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t idx_t


def edge_aggregates(const idx_t[::1] eu, const idx_t[::1] ev, const double[::1] ew,
                    const idx_t[::1] mem_ptr, const idx_t[::1] mem_com, const double[::1] mem_val,
                    bint average, Py_ssize_t n_com, bint with_between=True):
    cdef Py_ssize_t n_edges = eu.shape[0]
    cdef Py_ssize_t e, p, q, k = 0, bound = 0
    cdef idx_t u, v, x, y
    cdef double w, val
    e_in_arr = np.zeros(n_com)
    e_out_arr = np.zeros(n_com)
    cdef double[::1] e_in = e_in_arr
    cdef double[::1] e_out = e_out_arr

    if with_between:
        for e in range(n_edges):
            u = eu[e]
            v = ev[e]
            bound += (mem_ptr[u + 1] - mem_ptr[u]) * (mem_ptr[v + 1] - mem_ptr[v])
    rows_arr = np.empty(bound, dtype=np.int64)
    cols_arr = np.empty(bound, dtype=np.int64)
    vals_arr = np.empty(bound)
    cdef idx_t[::1] rows = rows_arr
    cdef idx_t[::1] cols = cols_arr
    cdef double[::1] vals = vals_arr

    for e in range(n_edges):
        u = eu[e]
        v = ev[e]
        w = ew[e]
        for p in range(mem_ptr[u], mem_ptr[u + 1]):
            x = mem_com[p]
            for q in range(mem_ptr[v], mem_ptr[v + 1]):
                y = mem_com[q]
                if average:
                    val = 0.5 * (mem_val[p] + mem_val[q]) * w
                else:
                    val = mem_val[p] * mem_val[q] * w
                if x == y:
                    e_in[x] += val
                elif with_between:
                    e_out[x] += val
                    e_out[y] += val
                    rows[k] = x
                    cols[k] = y
                    vals[k] = val
                    k += 1
    return e_in_arr, e_out_arr, rows_arr[:k], cols_arr[:k], vals_arr[:k]


def community_triangles(const idx_t[::1] indptr, const idx_t[::1] indices, const double[::1] data,
                        Py_ssize_t n_com):
    cdef Py_ssize_t c, p, q
    cdef idx_t d, d2
    cdef double acc
    out_arr = np.zeros(n_com)
    cdef double[::1] out = out_arr
    mark_arr = np.full(n_com, -1, dtype=np.int64)
    cdef idx_t[::1] mark = mark_arr
    for c in range(n_com):
        for p in range(indptr[c], indptr[c + 1]):
            mark[indices[p]] = c
        acc = 0.0
        for p in range(indptr[c], indptr[c + 1]):
            d = indices[p]
            for q in range(indptr[d], indptr[d + 1]):
                d2 = indices[q]
                if d2 > d and mark[d2] == c:
                    acc += data[q]
        out[c] = acc
    return out_arr
