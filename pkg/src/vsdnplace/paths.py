"""All-pairs shortest paths with a deterministic shortest-path tree per source."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConnectivityError
from .topology import PhysicalTopology

NO_PRED = -1


@dataclass(frozen=True, eq=False)
class ShortestPathTable:
    """``dist[s, t]`` in ms and ``pred[s, t]``, the node before ``t`` on the s->t path."""

    dist: np.ndarray
    pred: np.ndarray

    @property
    def num_nodes(self) -> int:
        return self.dist.shape[0]


def all_pairs_shortest(topology: PhysicalTopology, *, threads: int = 1,
                       backend: str | None = None) -> ShortestPathTable:
    """Per-source Dijkstra.

    Equal-cost alternatives resolve to the smaller predecessor index, so each
    source has a unique shortest-path tree.  The distance matrix is made
    exactly symmetric by taking ``min(dist[i, j], dist[j, i])``; the two can
    differ in the last ulp because summation order follows the source.
    """
    topology.require_connected()
    n = topology.num_nodes
    indptr, neighbors, weights = topology.csr()
    if weights.size and weights.min() < 0:
        raise ValueError("negative link latency")
    dist = np.empty((n, n), dtype=np.float64)
    pred = np.empty((n, n), dtype=np.int64)
    kernels.run_rows(kernels.get(backend).sssp_rows, n, threads, indptr, neighbors, weights, dist, pred)
    dist = np.minimum(dist, dist.T)
    dist.flags.writeable = False
    pred.flags.writeable = False
    return ShortestPathTable(dist, pred)


def path_nodes(table: ShortestPathTable, s: int, t: int) -> list[int]:
    n = table.num_nodes
    if not (0 <= s < n and 0 <= t < n):
        raise IndexError(f"node index out of range: ({s}, {t})")
    path = [t]
    while path[-1] != s:
        p = int(table.pred[s, path[-1]])
        if p == NO_PRED or len(path) > n:
            raise ConnectivityError(f"node {t} is unreachable from {s}")
        path.append(p)
    path.reverse()
    return path


def passes_through(table: ShortestPathTable, s: int, t: int, x: int) -> bool:
    return x in path_nodes(table, s, t)


def dist_csv(table: ShortestPathTable) -> str:
    """Distance matrix as CSV: header of node indices, then one row per source."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    n = table.num_nodes
    w.writerow(["source", *range(n)])
    for i in range(n):
        w.writerow([i, *(repr(float(x)) for x in table.dist[i])])
    return buf.getvalue()
