"""Physical topology: Topology Zoo GraphML ingestion and geo-derived link latency."""
from __future__ import annotations

import logging
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import ConnectivityError, GeoError, GraphMLParseError

log = logging.getLogger(__name__)

EARTH_RADIUS_KM = 6371.0
# Propagation speed in fiber, about 2/3 of c.
DEFAULT_SPEED_KM_PER_MS = 200.0


@dataclass(frozen=True)
class PhysicalNode:
    index: int
    source_id: str
    label: str = ""
    latitude: Optional[float] = None
    longitude: Optional[float] = None

    def __post_init__(self):
        if self.latitude is not None and not -90.0 <= self.latitude <= 90.0:
            raise GeoError(f"node {self.source_id!r}: latitude {self.latitude} out of range")
        if self.longitude is not None and not -180.0 <= self.longitude <= 180.0:
            raise GeoError(f"node {self.source_id!r}: longitude {self.longitude} out of range")

    @property
    def has_coordinates(self) -> bool:
        return self.latitude is not None and self.longitude is not None


@dataclass(frozen=True)
class PhysicalLink:
    endpoint_a: int
    endpoint_b: int
    latency_ms: float

    def __post_init__(self):
        if self.endpoint_a == self.endpoint_b:
            raise ValueError(f"self-loop on node {self.endpoint_a}")
        if not self.latency_ms >= 0.0:
            raise ValueError(f"negative or NaN latency {self.latency_ms}")


@dataclass(frozen=True)
class PhysicalTopology:
    nodes: tuple[PhysicalNode, ...]
    links: tuple[PhysicalLink, ...]
    adjacency: tuple[tuple[tuple[int, float], ...], ...] = field(repr=False)

    @classmethod
    def from_links(cls, nodes: Sequence[PhysicalNode], links: Sequence[PhysicalLink]) -> PhysicalTopology:
        """Build a topology, collapsing parallel links to the cheapest one."""
        nodes = tuple(nodes)
        for i, node in enumerate(nodes):
            if node.index != i:
                raise ValueError(f"node indices must be 0..N-1 in order; got {node.index} at {i}")
        best: dict[tuple[int, int], float] = {}
        for link in links:
            a, b = sorted((link.endpoint_a, link.endpoint_b))
            if not (0 <= a and b < len(nodes)):
                raise ValueError(f"link ({a}, {b}) references unknown node")
            if (a, b) not in best or link.latency_ms < best[(a, b)]:
                best[(a, b)] = link.latency_ms
        merged = tuple(PhysicalLink(a, b, w) for (a, b), w in sorted(best.items()))
        adj: list[list[tuple[int, float]]] = [[] for _ in nodes]
        for link in merged:
            adj[link.endpoint_a].append((link.endpoint_b, link.latency_ms))
            adj[link.endpoint_b].append((link.endpoint_a, link.latency_ms))
        adjacency = tuple(tuple(sorted(row)) for row in adj)
        return cls(nodes, merged, adjacency)

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    def components(self) -> list[list[int]]:
        seen = [False] * self.num_nodes
        comps = []
        for start in range(self.num_nodes):
            if seen[start]:
                continue
            seen[start] = True
            stack, comp = [start], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for v, _ in self.adjacency[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
            comps.append(sorted(comp))
        return comps

    def require_connected(self) -> None:
        comps = self.components()
        if len(comps) > 1:
            listing = "; ".join("{" + ",".join(map(str, c)) + "}" for c in comps)
            raise ConnectivityError(f"topology is disconnected into {len(comps)} components: {listing}")

    def scaled(self, factor: float) -> PhysicalTopology:
        """Same graph with every link latency multiplied by ``factor``."""
        return PhysicalTopology.from_links(
            self.nodes,
            [PhysicalLink(l.endpoint_a, l.endpoint_b, l.latency_ms * factor) for l in self.links],
        )

    def csr(self):
        """Adjacency as CSR arrays ``(indptr, neighbors, weights)`` for the kernels."""
        import numpy as np

        indptr = np.zeros(self.num_nodes + 1, dtype=np.int64)
        for i, row in enumerate(self.adjacency):
            indptr[i + 1] = indptr[i] + len(row)
        neighbors = np.array([v for row in self.adjacency for v, _ in row], dtype=np.int64)
        weights = np.array([w for row in self.adjacency for _, w in row], dtype=np.float64)
        return indptr, neighbors, weights


def haversine_km(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dphi = phi2 - phi1
    dlam = math.radians(lon2 - lon1)
    a = math.sin(dphi / 2) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2) ** 2
    # Clamp: rounding can push ``a`` a hair above 1 for antipodal points.
    return 2.0 * EARTH_RADIUS_KM * math.asin(math.sqrt(min(1.0, a)))


def link_latency(node_a: PhysicalNode, node_b: PhysicalNode,
                 speed_km_per_ms: float = DEFAULT_SPEED_KM_PER_MS) -> float:
    """Propagation delay in ms along the great circle between two nodes."""
    for node in (node_a, node_b):
        if not node.has_coordinates:
            raise GeoError(f"node {node.source_id!r} ({node.label or 'unlabelled'}) has no coordinates")
    km = haversine_km(node_a.latitude, node_a.longitude, node_b.latitude, node_b.longitude)
    return km / speed_km_per_ms


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def parse_graphml(document_text: str | bytes, *,
                  speed_km_per_ms: float = DEFAULT_SPEED_KM_PER_MS,
                  default_link_latency_ms: Optional[float] = None,
                  require_connected: bool = True) -> PhysicalTopology:
    """Parse a Topology Zoo style GraphML document.

    Nodes get dense indices in document order.  Links are weighted by
    :func:`link_latency`; when ``default_link_latency_ms`` is given, links
    touching a node without coordinates get that latency instead of failing.
    Self-loops are dropped and parallel edges keep the cheapest instance.
    """
    try:
        root = ET.fromstring(document_text)
    except ET.ParseError as exc:
        raise GraphMLParseError(f"malformed GraphML: {exc}") from None
    if _local(root.tag) != "graphml":
        raise GraphMLParseError(f"root element is <{_local(root.tag)}>, expected <graphml>")

    keys = {}
    for el in root:
        if _local(el.tag) == "key" and el.get("for", "all") in ("node", "all"):
            keys[el.get("id")] = el.get("attr.name")

    graph = next((el for el in root if _local(el.tag) == "graph"), None)
    if graph is None:
        raise GraphMLParseError("no <graph> element")

    nodes: list[PhysicalNode] = []
    index_of: dict[str, int] = {}
    raw_edges = []
    for el in graph:
        tag = _local(el.tag)
        if tag == "node":
            source_id = el.get("id")
            if source_id is None:
                raise GraphMLParseError("node without id")
            if source_id in index_of:
                raise GraphMLParseError(f"duplicate node id {source_id!r}")
            attrs = {keys.get(d.get("key")): (d.text or "").strip()
                     for d in el if _local(d.tag) == "data"}
            try:
                lat = float(attrs["Latitude"]) if attrs.get("Latitude") else None
                lon = float(attrs["Longitude"]) if attrs.get("Longitude") else None
            except ValueError as exc:
                raise GeoError(f"node {source_id!r}: bad coordinate ({exc})") from None
            index_of[source_id] = len(nodes)
            nodes.append(PhysicalNode(len(nodes), source_id, attrs.get("label", ""), lat, lon))
        elif tag == "edge":
            raw_edges.append((el.get("source"), el.get("target")))

    links = []
    for src, dst in raw_edges:
        if src not in index_of or dst not in index_of:
            raise GraphMLParseError(f"edge ({src!r}, {dst!r}) references unknown node")
        a, b = nodes[index_of[src]], nodes[index_of[dst]]
        if a.index == b.index:
            log.warning("dropping self-loop on node %r", src)
            continue
        if default_link_latency_ms is not None and not (a.has_coordinates and b.has_coordinates):
            latency = float(default_link_latency_ms)
        else:
            latency = link_latency(a, b, speed_km_per_ms)
        links.append(PhysicalLink(a.index, b.index, latency))

    if not nodes:
        raise GraphMLParseError("graph has no nodes")
    topo = PhysicalTopology.from_links(nodes, links)
    if require_connected:
        topo.require_connected()
    return topo
