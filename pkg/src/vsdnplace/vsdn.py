"""Virtual SDN tenants and seeded scenario generation."""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from typing import Optional, Sequence

from .errors import ConfigError
from .rng import MASK64, SplitMix64
from .topology import DEFAULT_SPEED_KM_PER_MS, PhysicalTopology


@dataclass(frozen=True)
class VsdnInstance:
    id: int
    demand_nodes: tuple[int, ...]

    def __post_init__(self):
        if not self.demand_nodes:
            raise ValueError(f"vSDN {self.id} has no demand nodes")
        if len(set(self.demand_nodes)) != len(self.demand_nodes):
            raise ValueError(f"vSDN {self.id} has duplicate demand nodes")
        if min(self.demand_nodes) < 0:
            raise ValueError(f"vSDN {self.id} has a negative node index")


@dataclass(frozen=True)
class ScenarioConfig:
    num_vsdns: int
    demand_size_min: int
    demand_size_max: int
    seed: int
    hypervisor_candidates: tuple[int, ...]
    controller_candidates: tuple[int, ...]
    max_hypervisors: int
    max_controllers: int
    c_proc_ms: float
    h_proc_ms: float
    propagation_speed_km_per_ms: float = DEFAULT_SPEED_KM_PER_MS
    default_link_latency_ms: Optional[float] = None

    def __post_init__(self):
        checks = [
            ("num_vsdns", self.num_vsdns >= 1, "must be >= 1"),
            ("demand_size_min", self.demand_size_min >= 1, "must be >= 1"),
            ("demand_size_max", self.demand_size_max >= self.demand_size_min,
             "must be >= demand_size_min"),
            ("seed", 0 <= self.seed <= MASK64, "must fit in 64 unsigned bits"),
            ("hypervisor_candidates", len(self.hypervisor_candidates) > 0, "must be non-empty"),
            ("controller_candidates", len(self.controller_candidates) > 0, "must be non-empty"),
            ("hypervisor_candidates", len(set(self.hypervisor_candidates)) == len(self.hypervisor_candidates),
             "contains duplicates"),
            ("controller_candidates", len(set(self.controller_candidates)) == len(self.controller_candidates),
             "contains duplicates"),
            ("hypervisor_candidates", min(self.hypervisor_candidates, default=0) >= 0, "negative index"),
            ("controller_candidates", min(self.controller_candidates, default=0) >= 0, "negative index"),
            ("max_hypervisors", self.max_hypervisors >= 1, "must be >= 1"),
            ("max_controllers", self.max_controllers >= 1, "must be >= 1"),
            ("c_proc_ms", self.c_proc_ms >= 0, "must be >= 0"),
            ("h_proc_ms", self.h_proc_ms >= 0, "must be >= 0"),
            ("propagation_speed_km_per_ms", self.propagation_speed_km_per_ms > 0, "must be > 0"),
            ("default_link_latency_ms",
             self.default_link_latency_ms is None or self.default_link_latency_ms >= 0, "must be >= 0"),
        ]
        for key, ok, why in checks:
            if not ok:
                raise ConfigError(f"{key}: {why}")

    def check_topology(self, num_nodes: int) -> None:
        """Range checks that need the node count."""
        if self.demand_size_max > num_nodes:
            raise ConfigError(f"demand_size_max: {self.demand_size_max} exceeds node count {num_nodes}")
        for key in ("hypervisor_candidates", "controller_candidates"):
            bad = [i for i in getattr(self, key) if i >= num_nodes]
            if bad:
                raise ConfigError(f"{key}: indices {bad} not in topology of {num_nodes} nodes")

    def with_seed(self, seed: int) -> ScenarioConfig:
        return replace(self, seed=seed & MASK64)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["hypervisor_candidates"] = list(self.hypervisor_candidates)
        d["controller_candidates"] = list(self.controller_candidates)
        return d


def _int(v: str) -> int:
    return int(v, 0)


def _int_list(v: str) -> tuple[int, ...]:
    items = [p.strip() for p in v.split(",")]
    if any(not p for p in items):
        raise ValueError("empty list item")
    return tuple(int(p, 0) for p in items)


def _float(v: str) -> float:
    x = float(v)
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError("not finite")
    return x


_REQUIRED = {
    "num_vsdns": _int,
    "demand_size_min": _int,
    "demand_size_max": _int,
    "seed": _int,
    "hypervisor_candidates": _int_list,
    "controller_candidates": _int_list,
    "max_hypervisors": _int,
    "max_controllers": _int,
    "c_proc_ms": _float,
    "h_proc_ms": _float,
}
_OPTIONAL = {
    "propagation_speed_km_per_ms": _float,
    "default_link_latency_ms": _float,
}


def load_scenario(file_text: str, num_nodes: Optional[int] = None) -> ScenarioConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment, lists are comma-separated.

    Pass ``num_nodes`` to also check index ranges against a topology.
    """
    values = {}
    for lineno, raw in enumerate(file_text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        parser = _REQUIRED.get(key) or _OPTIONAL.get(key)
        if parser is None:
            raise ConfigError(f"{key}: unknown key (line {lineno})")
        if key in values:
            raise ConfigError(f"{key}: given twice (line {lineno})")
        try:
            values[key] = parser(value)
        except ValueError as exc:
            raise ConfigError(f"{key}: invalid value {value!r} ({exc})") from None
    missing = [k for k in _REQUIRED if k not in values]
    if missing:
        raise ConfigError(f"{missing[0]}: missing required key")
    config = ScenarioConfig(**values)
    if num_nodes is not None:
        config.check_topology(num_nodes)
    return config


def generate_vsdns(config: ScenarioConfig, topology: PhysicalTopology) -> list[VsdnInstance]:
    """Draw ``num_vsdns`` demand sets from one SplitMix64 stream seeded with ``config.seed``.

    For each vSDN id in order: size = between(min, max), then a partial
    Fisher-Yates sample of that many node indices.  Demand sets are stored
    sorted ascending.
    """
    n = topology.num_nodes
    config.check_topology(n)
    rng = SplitMix64(config.seed)
    out = []
    for vid in range(config.num_vsdns):
        size = rng.between(config.demand_size_min, config.demand_size_max)
        out.append(VsdnInstance(vid, tuple(sorted(rng.sample(n, size)))))
    return out


def total_demands(vsdns: Sequence[VsdnInstance]) -> int:
    return sum(len(v.demand_nodes) for v in vsdns)
