"""Reverse path-flow classification of PACKET-IN requests and hypervisor load reduction.

A request travels from its demand node toward the hypervisor along the
deterministic shortest path.  If the controller sits on that route, it
intercepts the request and keeps it when its own processing is no slower
than the round trip to the hypervisor plus hypervisor processing::

    c_proc_ms <= 2 * dist(controller, hypervisor) + h_proc_ms

Otherwise the request is forwarded on.  Requests whose route misses the
controller reach the hypervisor directly.  The hypervisor load reduction of a
(controller, hypervisor) pair is ``cs / (cs + cp + dptc)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateInputError
from .paths import ShortestPathTable, passes_through
from .placement import (
    ALL_OBJECTIVES,
    CostTensor,
    MetricSet,
    ObjectiveKind,
    Placement,
    evaluate_metrics,
    first_minimum,
    optimal_assignment,
)
from .vsdn import VsdnInstance


class RequestOutcome(enum.Enum):
    BLOCKED_AT_CONTROLLER = "cs"
    FORWARDED_CONTROLLER_TO_HYPERVISOR = "cp"
    DIRECT_TO_HYPERVISOR = "dptc"


@dataclass(frozen=True)
class Request:
    vsdn_id: int
    source: int


@dataclass(frozen=True)
class LoadReport:
    controller: int
    hypervisor: int
    cs: int
    cp: int
    dptc: int
    per_vsdn: dict[int, tuple[int, int, int]]

    @property
    def total(self) -> int:
        return self.cs + self.cp + self.dptc

    @property
    def reduction(self) -> float:
        return self.cs / self.total

    def as_dict(self) -> dict:
        return {
            "controller": self.controller,
            "hypervisor": self.hypervisor,
            "cs": self.cs,
            "cp": self.cp,
            "dptc": self.dptc,
            "reduction": self.reduction,
            "per_vsdn": [[v, *self.per_vsdn[v]] for v in sorted(self.per_vsdn)],
        }


def _check_proc(c_proc_ms: float, h_proc_ms: float) -> None:
    if c_proc_ms < 0 or h_proc_ms < 0:
        raise ValueError("processing times must be non-negative")


def classify_request(table: ShortestPathTable, request: Request, controller: int, hypervisor: int,
                     c_proc_ms: float, h_proc_ms: float) -> RequestOutcome:
    _check_proc(c_proc_ms, h_proc_ms)
    if not passes_through(table, request.source, hypervisor, controller):
        return RequestOutcome.DIRECT_TO_HYPERVISOR
    if c_proc_ms <= 2.0 * float(table.dist[controller, hypervisor]) + h_proc_ms:
        return RequestOutcome.BLOCKED_AT_CONTROLLER
    return RequestOutcome.FORWARDED_CONTROLLER_TO_HYPERVISOR


def rpf_simulate(table: ShortestPathTable, vsdns: Sequence[VsdnInstance], controller: int,
                 hypervisor: int, c_proc_ms: float, h_proc_ms: float) -> LoadReport:
    """One unit request per (vSDN, demand node), classified and counted."""
    per_vsdn = {}
    totals = {o: 0 for o in RequestOutcome}
    for v in vsdns:
        counts = {o: 0 for o in RequestOutcome}
        for d in v.demand_nodes:
            outcome = classify_request(table, Request(v.id, d), controller, hypervisor, c_proc_ms, h_proc_ms)
            counts[outcome] += 1
        per_vsdn[v.id] = (counts[RequestOutcome.BLOCKED_AT_CONTROLLER],
                          counts[RequestOutcome.FORWARDED_CONTROLLER_TO_HYPERVISOR],
                          counts[RequestOutcome.DIRECT_TO_HYPERVISOR])
        for o, k in counts.items():
            totals[o] += k
    if sum(totals.values()) == 0:
        raise DegenerateInputError("no requests to classify; reduction is undefined")
    return LoadReport(controller, hypervisor,
                      totals[RequestOutcome.BLOCKED_AT_CONTROLLER],
                      totals[RequestOutcome.FORWARDED_CONTROLLER_TO_HYPERVISOR],
                      totals[RequestOutcome.DIRECT_TO_HYPERVISOR],
                      per_vsdn)


@dataclass(frozen=True)
class ScanRow:
    controller: int
    hypervisor: int
    metrics: MetricSet
    load: LoadReport
    latency_optimal: frozenset[ObjectiveKind]
    reduction_max: bool


def tradeoff_scan(table: ShortestPathTable, vsdns: Sequence[VsdnInstance], c_candidates, h_candidates,
                  costs: CostTensor, c_proc_ms: float, h_proc_ms: float) -> list[ScanRow]:
    """Latency metrics and load report for every single (controller, hypervisor) pair.

    Rows come in (controller, hypervisor) lexicographic order.  The first row
    attaining each objective's minimum (within the solver's tie tolerance) is
    flagged latency-optimal; the first row with the largest reduction is
    flagged reduction-maximal.
    """
    pairs = [(c, h) for c in sorted(set(c_candidates)) for h in sorted(set(h_candidates))]
    if not pairs:
        raise ValueError("empty candidate sets")
    raw = []
    for c, h in pairs:
        placement = Placement((c,), (h,))
        metrics = evaluate_metrics(optimal_assignment(placement, costs, vsdns), costs, vsdns)
        raw.append((c, h, metrics, rpf_simulate(table, vsdns, c, h, c_proc_ms, h_proc_ms)))

    best = {obj: first_minimum([m.value(obj) for _, _, m, _ in raw]) for obj in ALL_OBJECTIVES}
    # Every row classifies the same requests, so comparing cs compares reductions exactly.
    blocked = [load.cs for *_, load in raw]
    top = blocked.index(max(blocked))
    return [
        ScanRow(c, h, m, load,
                frozenset(obj for obj in ALL_OBJECTIVES if best[obj] == i),
                i == top)
        for i, (c, h, m, load) in enumerate(raw)
    ]


def tradeoff_observed(scan: Sequence[ScanRow]) -> bool:
    """True iff the reduction-maximal pair is not latency-optimal for some objective."""
    if not scan:
        raise ValueError("empty scan")
    top = next(r for r in scan if r.reduction_max)
    return any(obj not in top.latency_optimal for obj in ALL_OBJECTIVES)
