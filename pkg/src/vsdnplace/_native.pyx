# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Same contracts and operation order as ``_purepy``."""
from libc.math cimport INFINITY
from libc.stdlib cimport malloc, free

ctypedef long long i64

cdef enum:
    NO_PRED = -1


cdef inline bint _less(double da, i64 na, double db, i64 nb) noexcept nogil:
    return da < db or (da == db and na < nb)


cdef void _push(double* hd, i64* hn, i64* size, double d, i64 n) noexcept nogil:
    cdef i64 i = size[0]
    cdef i64 parent
    size[0] += 1
    while i > 0:
        parent = (i - 1) >> 1
        if _less(d, n, hd[parent], hn[parent]):
            hd[i] = hd[parent]
            hn[i] = hn[parent]
            i = parent
        else:
            break
    hd[i] = d
    hn[i] = n


cdef void _pop(double* hd, i64* hn, i64* size, double* d, i64* n) noexcept nogil:
    cdef i64 last, i, child
    cdef double ld
    cdef i64 ln
    d[0] = hd[0]
    n[0] = hn[0]
    size[0] -= 1
    last = size[0]
    if last == 0:
        return
    ld = hd[last]
    ln = hn[last]
    i = 0
    while True:
        child = 2 * i + 1
        if child >= last:
            break
        if child + 1 < last and _less(hd[child + 1], hn[child + 1], hd[child], hn[child]):
            child += 1
        if _less(hd[child], hn[child], ld, ln):
            hd[i] = hd[child]
            hn[i] = hn[child]
            i = child
        else:
            break
    hd[i] = ld
    hn[i] = ln


def sssp_rows(const i64[::1] indptr, const i64[::1] neighbors, const double[::1] weights,
              double[:, ::1] dist_out, i64[:, ::1] pred_out, i64 start, i64 stop):
    cdef i64 n = indptr.shape[0] - 1
    cdef i64 m = neighbors.shape[0]
    cdef i64 s, u, v, k, size
    cdef double d, nd
    cdef double* hd = <double*> malloc((m + 1) * sizeof(double))
    cdef i64* hn = <i64*> malloc((m + 1) * sizeof(i64))
    cdef char* done = <char*> malloc(n * sizeof(char))
    if hd == NULL or hn == NULL or done == NULL:
        free(hd); free(hn); free(done)
        raise MemoryError()
    try:
        with nogil:
            for s in range(start, stop):
                for u in range(n):
                    dist_out[s, u] = INFINITY
                    pred_out[s, u] = NO_PRED
                    done[u] = 0
                dist_out[s, s] = 0.0
                size = 0
                _push(hd, hn, &size, 0.0, s)
                while size > 0:
                    _pop(hd, hn, &size, &d, &u)
                    if done[u]:
                        continue
                    done[u] = 1
                    for k in range(indptr[u], indptr[u + 1]):
                        v = neighbors[k]
                        if done[v]:
                            continue
                        nd = d + weights[k]
                        if nd < dist_out[s, v]:
                            dist_out[s, v] = nd
                            pred_out[s, v] = u
                            _push(hd, hn, &size, nd, v)
                        elif nd == dist_out[s, v] and u < pred_out[s, v]:
                            pred_out[s, v] = u
    finally:
        free(hd); free(hn); free(done)


def evaluate_rows(const double[:, :, ::1] psi, const i64[::1] vsdn_ptr,
                  const i64[:, ::1] open_c, const i64[:, ::1] open_h,
                  double[:, ::1] out, i64 start, i64 stop):
    cdef i64 num_vsdns = vsdn_ptr.shape[0] - 1
    cdef i64 total = vsdn_ptr[num_vsdns]
    cdef i64 wc = open_c.shape[1]
    cdef i64 wh = open_h.shape[1]
    cdef i64 p, v, k, a, b, h, c
    cdef double worst, grand, sum_of_max, max_avg, vmax, vsum, best, x, vavg
    with nogil:
        for p in range(start, stop):
            worst = 0.0
            grand = 0.0
            sum_of_max = 0.0
            max_avg = 0.0
            for v in range(num_vsdns):
                vmax = 0.0
                vsum = 0.0
                for k in range(vsdn_ptr[v], vsdn_ptr[v + 1]):
                    best = INFINITY
                    for a in range(wh):
                        h = open_h[p, a]
                        if h < 0:
                            break
                        for b in range(wc):
                            c = open_c[p, b]
                            if c < 0:
                                break
                            x = psi[k, h, c]
                            if x < best:
                                best = x
                    vsum += best
                    if best > vmax:
                        vmax = best
                grand += vsum
                sum_of_max += vmax
                if vmax > worst:
                    worst = vmax
                vavg = vsum / <double> (vsdn_ptr[v + 1] - vsdn_ptr[v])
                if vavg > max_avg:
                    max_avg = vavg
            out[p, 0] = worst
            out[p, 1] = grand / <double> total
            out[p, 2] = sum_of_max / <double> num_vsdns
            out[p, 3] = max_avg
