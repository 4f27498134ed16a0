"""GraphML persistence with a fixed, canonical layout.

Declared keys: node {name, type, aliases}, edge {relation, weight,
evidence_count, docs}. List-valued attributes are semicolon-joined.
Serialization orders nodes and edges canonically and formats floats with
repr, so serialize(parse(serialize(g))) is byte-identical to
serialize(g). Evidence span texts live only in memory; after a round trip
an edge keeps its evidence_count and docs but not the spans.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from xml.sax.saxutils import escape

from sage.kg.types import Edge, KnowledgeGraph, Node, NodeKey

GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"

NODE_KEYS = (("d0", "name"), ("d1", "type"), ("d2", "aliases"))
EDGE_KEYS = (("d3", "relation"), ("d4", "weight"), ("d5", "evidence_count"), ("d6", "docs"))
KEY_TYPES = {"d0": "string", "d1": "string", "d2": "string",
             "d3": "string", "d4": "double", "d5": "int", "d6": "string"}

_KNOWN_ATTR_NAMES = {name for _, name in NODE_KEYS} | {name for _, name in EDGE_KEYS}


class GraphMLError(Exception):
    """Structural or referential failure while parsing."""


def serialize_graphml(graph: KnowledgeGraph) -> bytes:
    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    lines.append(f'<graphml xmlns="{GRAPHML_NS}">')
    for key_id, name in NODE_KEYS:
        lines.append(f'  <key id="{key_id}" for="node" attr.name="{name}" attr.type="{KEY_TYPES[key_id]}"/>')
    for key_id, name in EDGE_KEYS:
        lines.append(f'  <key id="{key_id}" for="edge" attr.name="{name}" attr.type="{KEY_TYPES[key_id]}"/>')
    lines.append('  <graph id="G" edgedefault="directed">')

    ordered_nodes = sorted(graph.nodes.values(), key=lambda n: n.key)
    node_ids = {node.key: f"n{i}" for i, node in enumerate(ordered_nodes)}
    for node in ordered_nodes:
        nid = node_ids[node.key]
        lines.append(f'    <node id="{nid}">')
        lines.append(f'      <data key="d0">{escape(node.name)}</data>')
        lines.append(f'      <data key="d1">{escape(node.type)}</data>')
        lines.append(f'      <data key="d2">{escape(";".join(node.aliases))}</data>')
        lines.append('    </node>')

    for i, edge in enumerate(sorted(graph.edges, key=lambda e: e.key)):
        source = node_ids[edge.head]
        target = node_ids[edge.tail]
        lines.append(f'    <edge id="e{i}" source="{source}" target="{target}">')
        lines.append(f'      <data key="d3">{escape(edge.relation)}</data>')
        lines.append(f'      <data key="d4">{edge.weight!r}</data>')
        lines.append(f'      <data key="d5">{edge.evidence_count}</data>')
        lines.append(f'      <data key="d6">{escape(";".join(edge.docs))}</data>')
        lines.append('    </edge>')

    lines.append('  </graph>')
    lines.append('</graphml>')
    lines.append('')
    return "\n".join(lines).encode("utf-8")


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def parse_graphml(data: bytes | str) -> tuple[KnowledgeGraph, list[str]]:
    """Returns (graph, warnings). Unknown attribute keys produce warnings;
    malformed XML or dangling edge references raise GraphMLError."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, col = exc.position
        raise GraphMLError(f"XML parse failure at line {line}, column {col}: {exc.msg}") from exc
    if _local(root.tag) != "graphml":
        raise GraphMLError(f"root element is {_local(root.tag)!r}, expected 'graphml'")

    warnings: list[str] = []
    key_names: dict[str, str] = {}
    for element in root:
        if _local(element.tag) != "key":
            continue
        key_id = element.get("id", "")
        attr_name = element.get("attr.name", key_id)
        key_names[key_id] = attr_name
        if attr_name not in _KNOWN_ATTR_NAMES:
            warnings.append(f"unknown attribute key {attr_name!r} (id={key_id})")

    graph_el = next((el for el in root if _local(el.tag) == "graph"), None)
    if graph_el is None:
        raise GraphMLError("no <graph> element found")

    def read_data(element: ET.Element, owner: str) -> dict[str, str]:
        values: dict[str, str] = {}
        for child in element:
            if _local(child.tag) != "data":
                continue
            key_id = child.get("key", "")
            name = key_names.get(key_id, key_id)
            if name not in _KNOWN_ATTR_NAMES:
                warnings.append(f"unknown attribute key {name!r} on {owner}")
                continue
            values[name] = child.text or ""
        return values

    nodes: dict[NodeKey, Node] = {}
    node_key_by_id: dict[str, NodeKey] = {}
    for element in graph_el:
        if _local(element.tag) != "node":
            continue
        nid = element.get("id", "")
        values = read_data(element, f"node {nid!r}")
        if "name" not in values or "type" not in values:
            raise GraphMLError(f"node {nid!r} is missing required name/type attributes")
        key: NodeKey = (values["name"], values["type"])
        aliases = tuple(a for a in values.get("aliases", "").split(";") if a)
        if nid in node_key_by_id:
            raise GraphMLError(f"duplicate node id {nid!r}")
        node_key_by_id[nid] = key
        nodes[key] = Node(name=key[0], type=key[1], aliases=aliases)

    edges: list[Edge] = []
    for element in graph_el:
        if _local(element.tag) != "edge":
            continue
        eid = element.get("id", "")
        source = element.get("source", "")
        target = element.get("target", "")
        if source not in node_key_by_id:
            raise GraphMLError(f"edge {eid!r} references missing node {source!r}")
        if target not in node_key_by_id:
            raise GraphMLError(f"edge {eid!r} references missing node {target!r}")
        values = read_data(element, f"edge {eid!r}")
        if "relation" not in values or "weight" not in values:
            raise GraphMLError(f"edge {eid!r} is missing required relation/weight attributes")
        try:
            weight = float(values["weight"])
        except ValueError as exc:
            raise GraphMLError(f"edge {eid!r} has non-numeric weight {values['weight']!r}") from exc
        try:
            count = int(values.get("evidence_count", "0"))
        except ValueError as exc:
            raise GraphMLError(f"edge {eid!r} has non-integer evidence_count") from exc
        docs = tuple(d for d in values.get("docs", "").split(";") if d)
        edges.append(
            Edge(
                head=node_key_by_id[source],
                tail=node_key_by_id[target],
                relation=values["relation"],
                weight=weight,
                evidence=(),
                docs=docs,
                evidence_count=count,
            )
        )

    return KnowledgeGraph(nodes=nodes, edges=edges, metadata={}), warnings
