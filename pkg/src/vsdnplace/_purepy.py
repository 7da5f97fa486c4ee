"""Pure-Python kernels. Reference semantics for the compiled ``_native`` module.

Both backends perform the same IEEE double operations in the same order, so
their outputs are bit-identical.  Array arguments are numpy arrays; rows are
written into caller-provided output buffers so callers can split work across
threads by row range.
"""
import heapq
import math

NO_PRED = -1


def sssp_rows(indptr, neighbors, weights, dist_out, pred_out, start, stop):
    """Dijkstra from every source in ``range(start, stop)``.

    Heap entries are ordered by (distance, node).  When relaxing edge u->v, a
    strictly shorter path always wins and an equal-cost path wins only if
    ``u < pred[v]``; finalized nodes are never touched.
    """
    n = len(indptr) - 1
    indptr = indptr.tolist()
    neighbors = neighbors.tolist()
    weights = weights.tolist()
    for s in range(start, stop):
        dist = [math.inf] * n
        pred = [NO_PRED] * n
        done = [False] * n
        dist[s] = 0.0
        heap = [(0.0, s)]
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for k in range(indptr[u], indptr[u + 1]):
                v = neighbors[k]
                if done[v]:
                    continue
                nd = d + weights[k]
                if nd < dist[v]:
                    dist[v] = nd
                    pred[v] = u
                    heapq.heappush(heap, (nd, v))
                elif nd == dist[v] and u < pred[v]:
                    pred[v] = u
        dist_out[s, :] = dist
        pred_out[s, :] = pred


def evaluate_rows(psi, vsdn_ptr, open_c, open_h, out, start, stop):
    """Metrics of placements ``start..stop-1`` under the per-demand argmin assignment.

    ``psi`` has shape (demands, |H_node|, |C_node|), demands grouped by vSDN via
    ``vsdn_ptr``.  ``open_c`` / ``open_h`` hold candidate positions per
    placement, ascending, padded with -1.  ``out[p]`` receives
    (worst, avg, avg_max, max_avg).
    """
    psi_l = psi.tolist()
    ptr = vsdn_ptr.tolist()
    num_vsdns = len(ptr) - 1
    total = ptr[-1]
    for p in range(start, stop):
        cs = [c for c in open_c[p].tolist() if c >= 0]
        hs = [h for h in open_h[p].tolist() if h >= 0]
        worst = 0.0
        grand = 0.0
        sum_of_max = 0.0
        max_avg = 0.0
        for v in range(num_vsdns):
            vmax = 0.0
            vsum = 0.0
            for k in range(ptr[v], ptr[v + 1]):
                row = psi_l[k]
                best = math.inf
                for h in hs:
                    rh = row[h]
                    for c in cs:
                        if rh[c] < best:
                            best = rh[c]
                vsum += best
                if best > vmax:
                    vmax = best
            grand += vsum
            sum_of_max += vmax
            if vmax > worst:
                worst = vmax
            vavg = vsum / (ptr[v + 1] - ptr[v])
            if vavg > max_avg:
                max_avg = vavg
        out[p, 0] = worst
        out[p, 1] = grand / total
        out[p, 2] = sum_of_max / num_vsdns
        out[p, 3] = max_avg
