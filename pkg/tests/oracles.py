"""Independent reference computations used only by the tests."""
import itertools
import math

import numpy as np


def floyd_warshall(n, links):
    """Dense N^3 relaxation over ``(a, b, w)`` undirected links."""
    d = [[math.inf] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = 0.0
    for a, b, w in links:
        if w < d[a][b]:
            d[a][b] = d[b][a] = w
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == math.inf:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return np.array(d)


def simple_paths(n, links, s, t):
    """Every simple s->t path with its cost, by DFS."""
    adj = {i: [] for i in range(n)}
    for a, b, w in links:
        adj[a].append((b, w))
        adj[b].append((a, w))
    out = []

    def walk(u, path, cost):
        if u == t:
            out.append((cost, list(path)))
            return
        for v, w in adj[u]:
            if v not in path:
                path.append(v)
                walk(v, path, cost + w)
                path.pop()

    walk(s, [s], 0.0)
    return out


def brute_force_optimum(dist, vsdns, c_cands, h_cands, c_max, h_max):
    """Minimum of each objective over every placement AND every per-demand assignment.

    Returns {"worst", "avg", "avg_max", "max_avg"} -> optimal value.
    """
    demands = [(v.id, d) for v in vsdns for d in v.demand_nodes]
    groups = []
    start = 0
    for v in vsdns:
        groups.append(slice(start, start + len(v.demand_nodes)))
        start += len(v.demand_nodes)
    best = dict.fromkeys(("worst", "avg", "avg_max", "max_avg"), math.inf)
    for kc in range(1, min(c_max, len(c_cands)) + 1):
        for cs in itertools.combinations(c_cands, kc):
            for kh in range(1, min(h_max, len(h_cands)) + 1):
                for hs in itertools.combinations(h_cands, kh):
                    pairs = [(h, c) for h in hs for c in cs]
                    lat = np.array([[dist[d][h] + dist[h][c] for h, c in pairs] for _, d in demands])
                    choices = np.array(list(itertools.product(range(len(pairs)), repeat=len(demands))))
                    L = lat[np.arange(len(demands)), choices]
                    vmax = np.stack([L[:, g].max(axis=1) for g in groups], axis=1)
                    vavg = np.stack([L[:, g].mean(axis=1) for g in groups], axis=1)
                    cand = {
                        "worst": L.max(axis=1),
                        "avg": L.mean(axis=1),
                        "avg_max": vmax.mean(axis=1),
                        "max_avg": vavg.max(axis=1),
                    }
                    for k, vals in cand.items():
                        best[k] = min(best[k], float(vals.min()))
    return best
