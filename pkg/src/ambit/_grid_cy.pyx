# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled product-grid enumeration kernels.

Same contracts as the numpy twin in ``_grid_py``; see that module. The
four-deep specializations exist because the brute-force verification sweeps
spend essentially all their time here.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline double _dmax(double a, double b) nogil:
    return a if a > b else b


cdef void _mr2(double[:, ::1] grids, double[::1] rmax, Py_ssize_t g) nogil:
    cdef Py_ssize_t i0, i1
    cdef double m0, m1, best, r
    for i0 in range(g):
        m0 = grids[0, i0]
        for i1 in range(g):
            m1 = grids[1, i1]
            best = _dmax(m0, m1)
            r = best - m0
            if r > rmax[0]:
                rmax[0] = r
            r = best - m1
            if r > rmax[1]:
                rmax[1] = r


cdef void _mr3(double[:, ::1] grids, double[::1] rmax, Py_ssize_t g) nogil:
    cdef Py_ssize_t i0, i1, i2
    cdef double m0, m1, m2, b01, best, r
    for i0 in range(g):
        m0 = grids[0, i0]
        for i1 in range(g):
            m1 = grids[1, i1]
            b01 = _dmax(m0, m1)
            for i2 in range(g):
                m2 = grids[2, i2]
                best = _dmax(b01, m2)
                r = best - m0
                if r > rmax[0]:
                    rmax[0] = r
                r = best - m1
                if r > rmax[1]:
                    rmax[1] = r
                r = best - m2
                if r > rmax[2]:
                    rmax[2] = r


cdef void _mr4(double[:, ::1] grids, double[::1] rmax, Py_ssize_t g) nogil:
    cdef Py_ssize_t i0, i1, i2, i3
    cdef double m0, m1, m2, m3, b01, b012, best, r
    for i0 in range(g):
        m0 = grids[0, i0]
        for i1 in range(g):
            m1 = grids[1, i1]
            b01 = _dmax(m0, m1)
            for i2 in range(g):
                m2 = grids[2, i2]
                b012 = _dmax(b01, m2)
                for i3 in range(g):
                    m3 = grids[3, i3]
                    best = _dmax(b012, m3)
                    r = best - m0
                    if r > rmax[0]:
                        rmax[0] = r
                    r = best - m1
                    if r > rmax[1]:
                        rmax[1] = r
                    r = best - m2
                    if r > rmax[2]:
                        rmax[2] = r
                    r = best - m3
                    if r > rmax[3]:
                        rmax[3] = r


cdef void _mr_generic(double[:, ::1] grids, double[::1] rmax,
                      Py_ssize_t k, Py_ssize_t g) nogil:
    # Odometer over the k-dim grid; handles any k at some loop overhead.
    cdef Py_ssize_t[64] idx
    cdef double[64] coord
    cdef Py_ssize_t a, pos
    cdef double best, r
    for a in range(k):
        idx[a] = 0
        coord[a] = grids[a, 0]
    while True:
        best = coord[0]
        for a in range(1, k):
            if coord[a] > best:
                best = coord[a]
        for a in range(k):
            r = best - coord[a]
            if r > rmax[a]:
                rmax[a] = r
        pos = k - 1
        while pos >= 0:
            idx[pos] += 1
            if idx[pos] < g:
                coord[pos] = grids[pos, idx[pos]]
                break
            idx[pos] = 0
            coord[pos] = grids[pos, 0]
            pos -= 1
        if pos < 0:
            break


def max_regret_by_enumeration(grids):
    """Per-action maximum regret over the full grid of joint states."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] garr = np.ascontiguousarray(
        grids, dtype=np.float64)
    cdef Py_ssize_t k = garr.shape[0], g = garr.shape[1]
    if k > 64:
        raise ValueError("at most 64 actions supported")
    out = np.zeros(k) if k == 1 else np.full(k, -np.inf)
    cdef double[::1] rmax = out
    cdef double[:, ::1] gv = garr
    if k == 1:
        return out
    with nogil:
        if k == 2:
            _mr2(gv, rmax, g)
        elif k == 3:
            _mr3(gv, rmax, g)
        elif k == 4:
            _mr4(gv, rmax, g)
        else:
            _mr_generic(gv, rmax, k, g)
    return out


def dominance_envelope_by_enumeration(grids):
    """Min and max of w(a,s) - w(b,s) over all joint states, per ordered pair."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] garr = np.ascontiguousarray(
        grids, dtype=np.float64)
    cdef Py_ssize_t k = garr.shape[0], g = garr.shape[1]
    if k > 64:
        raise ValueError("at most 64 actions supported")
    env = np.zeros((k, k, 2))
    if k == 1:
        return env
    env[..., 0] = np.inf
    env[..., 1] = -np.inf
    cdef double[:, :, ::1] ev = env
    cdef double[:, ::1] gv = garr
    cdef Py_ssize_t[64] idx
    cdef double[64] coord
    cdef Py_ssize_t a, b, pos
    cdef double d
    with nogil:
        for a in range(k):
            idx[a] = 0
            coord[a] = gv[a, 0]
            ev[a, a, 0] = 0.0
            ev[a, a, 1] = 0.0
        while True:
            for a in range(k):
                for b in range(k):
                    if a == b:
                        continue
                    d = coord[a] - coord[b]
                    if d < ev[a, b, 0]:
                        ev[a, b, 0] = d
                    if d > ev[a, b, 1]:
                        ev[a, b, 1] = d
            pos = k - 1
            while pos >= 0:
                idx[pos] += 1
                if idx[pos] < g:
                    coord[pos] = gv[pos, idx[pos]]
                    break
                idx[pos] = 0
                coord[pos] = gv[pos, 0]
                pos -= 1
            if pos < 0:
                break
    return env
