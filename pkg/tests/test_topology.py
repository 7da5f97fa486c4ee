import math

import pytest
from hypothesis import given, strategies as st

from conftest import ATT_GRAPHML
from vsdnplace import (
    ConnectivityError,
    GeoError,
    GraphMLParseError,
    PhysicalLink,
    PhysicalNode,
    haversine_km,
    link_latency,
    parse_graphml,
)

HEADER = """<?xml version="1.0" encoding="utf-8"?>
<graphml xmlns="http://graphml.graphdrawing.org/xmlns">
  <key attr.name="Latitude" attr.type="double" for="node" id="d29" />
  <key attr.name="Longitude" attr.type="double" for="node" id="d32" />
  <key attr.name="label" attr.type="string" for="node" id="d33" />
  <graph edgedefault="undirected">
"""
FOOTER = "  </graph>\n</graphml>\n"


def node(nid, lat=None, lon=None, label=None):
    parts = [f'<node id="{nid}">']
    if lat is not None:
        parts.append(f'<data key="d29">{lat}</data>')
    if lon is not None:
        parts.append(f'<data key="d32">{lon}</data>')
    if label:
        parts.append(f'<data key="d33">{label}</data>')
    return "".join(parts) + "</node>\n"


def edge(a, b):
    return f'<edge source="{a}" target="{b}" />\n'


def doc(*body):
    return HEADER + "".join(body) + FOOTER


lat = st.floats(-90, 90, allow_nan=False)
lon = st.floats(-180, 180, allow_nan=False)


class TestHaversine:
    def test_identical_points(self):
        assert haversine_km(40, -75, 40, -75) == 0.0

    def test_quarter_great_circle(self):
        # (pi / 2) * 6371
        assert haversine_km(0, 0, 0, 90) == pytest.approx(10007.54, abs=0.01)
        assert haversine_km(0, 0, 0, 90) == pytest.approx(math.pi / 2 * 6371.0, abs=1e-9)

    def test_one_degree_of_equator(self):
        assert haversine_km(0, 0, 0, 1) == pytest.approx(2 * math.pi * 6371 / 360, abs=1e-9)
        assert haversine_km(0, 0, 0, 1) == pytest.approx(111.19, abs=0.01)

    @given(lat, lon, lat, lon)
    def test_symmetric(self, a, b, c, d):
        assert haversine_km(a, b, c, d) == pytest.approx(haversine_km(c, d, a, b), abs=1e-9)

    @given(lat, lon)
    def test_self_distance_zero(self, a, b):
        assert haversine_km(a, b, a, b) == 0.0

    @given(lat, lon, lat, lon)
    def test_bounded_by_half_circumference(self, a, b, c, d):
        assert 0.0 <= haversine_km(a, b, c, d) <= math.pi * 6371.0 + 1e-9


class TestLinkLatency:
    def test_identical_coordinates(self):
        a = PhysicalNode(0, "a", latitude=10, longitude=20)
        b = PhysicalNode(1, "b", latitude=10, longitude=20)
        assert link_latency(a, b) == 0.0

    def test_quarter_circle_latency(self):
        a = PhysicalNode(0, "a", latitude=0, longitude=0)
        b = PhysicalNode(1, "b", latitude=0, longitude=90)
        assert link_latency(a, b) == pytest.approx(50.04, abs=0.01)

    def test_200_km_is_one_ms(self):
        # Longitude span on the equator whose arc is exactly 200 km.
        deg = math.degrees(200.0 / 6371.0)
        a = PhysicalNode(0, "a", latitude=0, longitude=0)
        b = PhysicalNode(1, "b", latitude=0, longitude=deg)
        assert link_latency(a, b) == pytest.approx(1.0, abs=1e-12)

    def test_speed_override(self):
        a = PhysicalNode(0, "a", latitude=0, longitude=0)
        b = PhysicalNode(1, "b", latitude=0, longitude=90)
        assert link_latency(a, b, 100.0) == pytest.approx(2 * link_latency(a, b))

    def test_missing_coordinates(self):
        a = PhysicalNode(0, "a", label="Lonely")
        b = PhysicalNode(1, "b", latitude=0, longitude=0)
        with pytest.raises(GeoError, match="Lonely"):
            link_latency(a, b)


class TestParse:
    def test_att_north_america(self):
        topo = parse_graphml(ATT_GRAPHML.read_bytes())
        assert topo.num_nodes == 25
        assert [n.index for n in topo.nodes] == list(range(25))
        assert topo.nodes[0].label == "NY54"
        assert all(l.latency_ms > 0 for l in topo.links)

    def test_two_colocated_nodes(self):
        topo = parse_graphml(doc(node("a", 1, 2), node("b", 1, 2), edge("a", "b")))
        assert len(topo.links) == 1
        assert topo.links[0].latency_ms == 0.0

    def test_duplicate_reverse_edge_collapses(self):
        topo = parse_graphml(doc(node("a", 0, 0), node("b", 0, 1), edge("a", "b"), edge("b", "a")))
        assert len(topo.links) == 1
        assert topo.adjacency[0] == ((1, topo.links[0].latency_ms),)

    def test_document_order_indices(self):
        topo = parse_graphml(doc(node("z", 0, 0, "Z"), node("a", 0, 1, "A"), edge("z", "a")))
        assert [(n.index, n.source_id, n.label) for n in topo.nodes] == [(0, "z", "Z"), (1, "a", "A")]

    def test_malformed_xml(self):
        with pytest.raises(GraphMLParseError):
            parse_graphml("<graphml><graph>")

    def test_missing_coordinates_names_node(self):
        with pytest.raises(GeoError, match="'b'"):
            parse_graphml(doc(node("a", 0, 0), node("b"), edge("a", "b")))

    def test_default_latency_fallback(self):
        topo = parse_graphml(doc(node("a", 0, 0), node("b"), edge("a", "b")), default_link_latency_ms=2.5)
        assert topo.links[0].latency_ms == 2.5

    def test_disconnected_lists_components(self):
        with pytest.raises(ConnectivityError, match=r"\{0,1\}; \{2\}"):
            parse_graphml(doc(node("a", 0, 0), node("b", 0, 1), node("c", 1, 1), edge("a", "b")))

    def test_self_loop_dropped(self):
        topo = parse_graphml(doc(node("a", 0, 0), node("b", 0, 1), edge("a", "a"), edge("a", "b")))
        assert [(l.endpoint_a, l.endpoint_b) for l in topo.links] == [(0, 1)]

    def test_unknown_edge_endpoint(self):
        with pytest.raises(GraphMLParseError):
            parse_graphml(doc(node("a", 0, 0), edge("a", "x")))

    def test_deterministic(self):
        data = ATT_GRAPHML.read_bytes()
        assert parse_graphml(data) == parse_graphml(data)

    def test_adjacency_symmetric(self):
        topo = parse_graphml(ATT_GRAPHML.read_bytes())
        for a, row in enumerate(topo.adjacency):
            for b, w in row:
                assert (a, w) in topo.adjacency[b]
        assert sum(len(r) for r in topo.adjacency) == 2 * len(topo.links)

    def test_out_of_range_latitude(self):
        with pytest.raises(GeoError):
            PhysicalNode(0, "x", latitude=91.0, longitude=0.0)

    def test_link_rejects_self_loop(self):
        with pytest.raises(ValueError):
            PhysicalLink(1, 1, 0.0)
