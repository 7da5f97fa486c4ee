"""Joint controller/hypervisor placement under four latency objectives.

Every demand ``d`` of vSDN ``v`` reaches its controller through a hypervisor,
at cost ``psi(v, d, h, c) = dist(d, h) + dist(h, c)``.  For a fixed placement
the best assignment gives each demand its cheapest open ``(h, c)`` pair; all
four objectives are nondecreasing in every demand's latency, so that
assignment is optimal for each of them.  The solver therefore enumerates
placements exactly and evaluates each under the argmin assignment, which
solves the mixed-integer model without an external solver.
"""
from __future__ import annotations

import enum
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import CapacityError, ConfigError
from .paths import ShortestPathTable, all_pairs_shortest
from .topology import PhysicalTopology
from .vsdn import ScenarioConfig, VsdnInstance, generate_vsdns

DEFAULT_PLACEMENT_CAP = 10**6
# Objective values this close are ties; summation order alone moves them by ulps.
TIE_RTOL = 1e-9
TIE_ATOL = 1e-12


def first_minimum(values: Sequence[float]) -> int:
    """Index of the first value within tie tolerance of the minimum."""
    best = min(values)
    limit = best + TIE_RTOL * abs(best) + TIE_ATOL
    return next(i for i, x in enumerate(values) if x <= limit)


class ObjectiveKind(enum.Enum):
    WORST_CASE = "worst"
    MIN_AVERAGE = "avg"
    AVG_MAX = "avgmax"
    MAX_AVG = "maxavg"

    @property
    def metric(self) -> str:
        """Name of the matching :class:`MetricSet` field."""
        return _METRIC_FIELD[self]

    @property
    def column(self) -> int:
        return _METRIC_COLUMN[self]


_METRIC_FIELD = {
    ObjectiveKind.WORST_CASE: "worst",
    ObjectiveKind.MIN_AVERAGE: "avg",
    ObjectiveKind.AVG_MAX: "avg_max",
    ObjectiveKind.MAX_AVG: "max_avg",
}
# Column order of the kernels' output rows.
_METRIC_COLUMN = {k: i for i, k in enumerate(ObjectiveKind)}

ALL_OBJECTIVES = tuple(ObjectiveKind)


@dataclass(frozen=True, eq=False)
class CostTensor:
    """psi values for every (vSDN demand, hypervisor candidate, controller candidate).

    ``values[k, i, j]`` is the cost of demand row ``k`` (see ``rows``) through
    ``h_candidates[i]`` to ``c_candidates[j]``.  Candidates are sorted.
    """

    rows: tuple[tuple[int, int], ...]
    vsdn_ptr: np.ndarray
    h_candidates: tuple[int, ...]
    c_candidates: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "_row_of", {key: k for k, key in enumerate(self.rows)})
        object.__setattr__(self, "_h_pos", {h: i for i, h in enumerate(self.h_candidates)})
        object.__setattr__(self, "_c_pos", {c: j for j, c in enumerate(self.c_candidates)})

    def row(self, vsdn_id: int, demand: int) -> int:
        try:
            return self._row_of[(vsdn_id, demand)]
        except KeyError:
            raise KeyError(f"node {demand} is not a demand of vSDN {vsdn_id}") from None

    def h_pos(self, h: int) -> int:
        try:
            return self._h_pos[h]
        except KeyError:
            raise KeyError(f"{h} is not a hypervisor candidate") from None

    def c_pos(self, c: int) -> int:
        try:
            return self._c_pos[c]
        except KeyError:
            raise KeyError(f"{c} is not a controller candidate") from None

    def psi(self, vsdn_id: int, demand: int, h: int, c: int) -> float:
        return float(self.values[self.row(vsdn_id, demand), self.h_pos(h), self.c_pos(c)])


@dataclass(frozen=True, order=True)
class Placement:
    controllers: tuple[int, ...]
    hypervisors: tuple[int, ...]

    def __post_init__(self):
        if not self.controllers or not self.hypervisors:
            raise ValueError("placement needs at least one controller and one hypervisor")
        if list(self.controllers) != sorted(set(self.controllers)):
            raise ValueError("controllers must be sorted and distinct")
        if list(self.hypervisors) != sorted(set(self.hypervisors)):
            raise ValueError("hypervisors must be sorted and distinct")

    def label(self) -> str:
        return f"C{list(self.controllers)}/H{list(self.hypervisors)}"


@dataclass(frozen=True)
class Assignment:
    """``choice[(vsdn id, demand node)] = (hypervisor, controller)``."""

    choice: dict[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class MetricSet:
    worst: float
    per_vsdn_worst: dict[int, float]
    avg: float
    avg_max: float
    max_avg: float

    def value(self, objective: ObjectiveKind) -> float:
        return getattr(self, objective.metric)

    def as_dict(self) -> dict:
        return {
            "worst": self.worst,
            "avg": self.avg,
            "avg_max": self.avg_max,
            "max_avg": self.max_avg,
            "per_vsdn_worst": [self.per_vsdn_worst[k] for k in sorted(self.per_vsdn_worst)],
        }


@dataclass(frozen=True)
class PlacementResult:
    placement: Placement
    assignment: Assignment
    objective: ObjectiveKind
    objective_value: float
    metrics: MetricSet

    def as_record(self) -> dict:
        return {
            "objective": self.objective.value,
            "controllers": list(self.placement.controllers),
            "hypervisors": list(self.placement.hypervisors),
            "objective_value": self.objective_value,
            "metrics": self.metrics.as_dict(),
            "assignment": [
                [v, d, h, c] for (v, d), (h, c) in sorted(self.assignment.choice.items())
            ],
        }


def compute_cost_tensor(table: ShortestPathTable, vsdns: Sequence[VsdnInstance],
                        h_candidates: Iterable[int], c_candidates: Iterable[int]) -> CostTensor:
    hs = tuple(sorted(set(h_candidates)))
    cs = tuple(sorted(set(c_candidates)))
    n = table.num_nodes
    for i in (*hs, *cs, *(d for v in vsdns for d in v.demand_nodes)):
        if not 0 <= i < n:
            raise ConfigError(f"node index {i} outside topology of {n} nodes")
    if not hs or not cs:
        raise ConfigError("candidate sets must be non-empty")
    rows = tuple((v.id, d) for v in vsdns for d in v.demand_nodes)
    ptr = np.zeros(len(vsdns) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(v.demand_nodes) for v in vsdns])
    demand_idx = np.array([d for _, d in rows], dtype=np.int64)
    to_h = table.dist[np.ix_(demand_idx, hs)] if rows else np.empty((0, len(hs)))
    h_to_c = table.dist[np.ix_(hs, cs)]
    values = np.ascontiguousarray(to_h[:, :, None] + h_to_c[None, :, :], dtype=np.float64)
    values.flags.writeable = False
    return CostTensor(rows, ptr, hs, cs, values)


def optimal_assignment(placement: Placement, costs: CostTensor,
                       vsdns: Sequence[VsdnInstance]) -> Assignment:
    """Cheapest open pair per demand; ties go to the smaller (h, c)."""
    pairs = [(h, c, costs.h_pos(h), costs.c_pos(c))
             for h in placement.hypervisors for c in placement.controllers]
    choice = {}
    for v in vsdns:
        for d in v.demand_nodes:
            row = costs.values[costs.row(v.id, d)]
            best, pick = math.inf, None
            for h, c, i, j in pairs:
                if row[i, j] < best:
                    best, pick = row[i, j], (h, c)
            choice[(v.id, d)] = pick
    return Assignment(choice)


def evaluate_metrics(assignment: Assignment, costs: CostTensor,
                     vsdns: Sequence[VsdnInstance]) -> MetricSet:
    if not vsdns:
        raise ValueError("no vSDNs to evaluate")
    per_vsdn_worst = {}
    grand = sum_of_max = worst = max_avg = 0.0
    for v in vsdns:
        vmax = vsum = 0.0
        for d in v.demand_nodes:
            h, c = assignment.choice[(v.id, d)]
            lat = costs.psi(v.id, d, h, c)
            vsum += lat
            if lat > vmax:
                vmax = lat
        per_vsdn_worst[v.id] = vmax
        grand += vsum
        sum_of_max += vmax
        worst = max(worst, vmax)
        max_avg = max(max_avg, vsum / len(v.demand_nodes))
    total = sum(len(v.demand_nodes) for v in vsdns)
    return MetricSet(worst, per_vsdn_worst, grand / total, sum_of_max / len(vsdns), max_avg)


def _subsets(candidates: Sequence[int], limit: int) -> list[tuple[int, ...]]:
    items = sorted(candidates)
    return sorted(s for k in range(1, min(limit, len(items)) + 1)
                  for s in itertools.combinations(items, k))


def placement_count(config: ScenarioConfig) -> int:
    nc, nh = len(config.controller_candidates), len(config.hypervisor_candidates)
    return (sum(math.comb(nc, k) for k in range(1, min(config.max_controllers, nc) + 1))
            * sum(math.comb(nh, k) for k in range(1, min(config.max_hypervisors, nh) + 1)))


def enumerate_placements(config: ScenarioConfig, cap: int = DEFAULT_PLACEMENT_CAP) -> list[Placement]:
    """All placements, controller subsets major and hypervisor subsets minor.

    Subsets are ordered as sorted tuples, so ``(3,)`` precedes ``(3, 7)``.
    """
    count = placement_count(config)
    if count > cap:
        raise CapacityError(
            f"{count} placements exceed the cap of {cap}; shrink the candidate sets "
            "or max_controllers/max_hypervisors"
        )
    return [Placement(c, h)
            for c in _subsets(config.controller_candidates, config.max_controllers)
            for h in _subsets(config.hypervisor_candidates, config.max_hypervisors)]


def _open_matrix(sets: Sequence[tuple[int, ...]], pos) -> np.ndarray:
    width = max(len(s) for s in sets)
    out = np.full((len(sets), width), -1, dtype=np.int64)
    for i, s in enumerate(sets):
        out[i, :len(s)] = [pos(x) for x in s]
    return out


def evaluate_placements(placements: Sequence[Placement], costs: CostTensor, *,
                        threads: int = 1, backend: str | None = None) -> np.ndarray:
    """Metric rows (worst, avg, avg_max, max_avg) per placement, via the kernels."""
    if not placements:
        return np.empty((0, 4))
    if len(costs.vsdn_ptr) < 2:
        raise ValueError("no vSDNs to evaluate")
    open_c = _open_matrix([p.controllers for p in placements], costs.c_pos)
    open_h = _open_matrix([p.hypervisors for p in placements], costs.h_pos)
    out = np.empty((len(placements), 4), dtype=np.float64)
    kernels.run_rows(kernels.get(backend).evaluate_rows, len(placements), threads,
                     costs.values, costs.vsdn_ptr, open_c, open_h, out)
    return out


def solve_many(objectives: Iterable[ObjectiveKind], config: ScenarioConfig, costs: CostTensor,
               vsdns: Sequence[VsdnInstance], *, threads: int = 1, backend: str | None = None,
               cap: int = DEFAULT_PLACEMENT_CAP) -> dict[ObjectiveKind, PlacementResult]:
    """Solve several objectives over one shared evaluation of the search space."""
    placements = enumerate_placements(config, cap)
    table = evaluate_placements(placements, costs, threads=threads, backend=backend)
    results = {}
    for objective in objectives:
        # Enumeration order breaks ties.
        best = placements[first_minimum(table[:, objective.column].tolist())]
        assignment = optimal_assignment(best, costs, vsdns)
        metrics = evaluate_metrics(assignment, costs, vsdns)
        results[objective] = PlacementResult(best, assignment, objective, metrics.value(objective), metrics)
    return results


def solve(objective: ObjectiveKind, config: ScenarioConfig, costs: CostTensor,
          vsdns: Sequence[VsdnInstance], **kwargs) -> PlacementResult:
    return solve_many([objective], config, costs, vsdns, **kwargs)[objective]


def converge_candidates(base_config: ScenarioConfig, topology: PhysicalTopology, iterations: int, *,
                        threads: int = 1, backend: str | None = None,
                        table: ShortestPathTable | None = None,
                        ) -> dict[ObjectiveKind, list[tuple[Placement, int]]]:
    """Win counts per placement and objective over regenerated scenarios.

    Iteration ``i`` uses seed ``base_config.seed + i`` (mod 2**64).  Each table
    is sorted by descending count, ties in enumeration order.
    """
    if iterations < 1:
        raise ConfigError("iterations: must be >= 1")
    if table is None:
        table = all_pairs_shortest(topology, threads=threads, backend=backend)
    order = {p: i for i, p in enumerate(enumerate_placements(base_config))}
    wins = {obj: Counter() for obj in ALL_OBJECTIVES}
    for i in range(iterations):
        config = base_config.with_seed(base_config.seed + i)
        vsdns = generate_vsdns(config, topology)
        costs = compute_cost_tensor(table, vsdns, config.hypervisor_candidates, config.controller_candidates)
        for obj, res in solve_many(ALL_OBJECTIVES, config, costs, vsdns,
                                   threads=threads, backend=backend).items():
            wins[obj][res.placement] += 1
    return {obj: sorted(counter.items(), key=lambda kv: (-kv[1], order[kv[0]]))
            for obj, counter in wins.items()}
