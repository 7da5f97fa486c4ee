"""Rebuild data/att_north_america.graphml from the Topology Zoo copy in topohub.

One-off provenance script; the generated file is committed. Requires the
``topohub`` wheel (``pip download --no-deps topohub``)::

    python tools/make_att_graphml.py path/to/topohub-*.whl > src/vsdnplace/data/att_north_america.graphml
"""
import json
import sys
import zipfile
from xml.sax.saxutils import escape

MEMBER = "topohub/data/topozoo/AttMpls.json"


def main(wheel):
    with zipfile.ZipFile(wheel) as zf:
        graph = json.loads(zf.read(MEMBER))
    out = [
        '<?xml version="1.0" encoding="utf-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns" '
        'xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance" '
        'xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns '
        'http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">',
        '  <key attr.name="Network" attr.type="string" for="graph" id="d0" />',
        '  <key attr.name="Latitude" attr.type="double" for="node" id="d1" />',
        '  <key attr.name="Internal" attr.type="int" for="node" id="d2" />',
        '  <key attr.name="Longitude" attr.type="double" for="node" id="d3" />',
        '  <key attr.name="label" attr.type="string" for="node" id="d4" />',
        '  <graph edgedefault="undirected">',
        '    <data key="d0">AT&amp;T North America</data>',
    ]
    for node in graph["nodes"]:
        lon, lat = node["pos"]
        out += [
            f'    <node id="{escape(node["id"])}">',
            f'      <data key="d1">{lat}</data>',
            '      <data key="d2">1</data>',
            f'      <data key="d3">{lon}</data>',
            f'      <data key="d4">{escape(node["name"])}</data>',
            "    </node>",
        ]
    for edge in graph["edges"]:
        out.append(f'    <edge source="{edge["source"]}" target="{edge["target"]}" />')
    out += ["  </graph>", "</graphml>"]
    sys.stdout.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main(sys.argv[1])
