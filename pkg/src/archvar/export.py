"""JSON and Graphviz renderings of flat architectures."""

from __future__ import annotations

import json
from typing import Any

from .model import PortDecl, PortRef
from .resolution import FlatArchitecture, FlatComponent, FlatEdge, FlatSelection

FORMATS = ("json", "dot")


def _component_dict(c: FlatComponent) -> dict[str, Any]:
    edges = sorted((str(e.source), str(e.target)) for e in c.edges)
    return {
        "name": c.name,
        "type": c.type,
        "ports": [{"name": p.name, "dir": p.direction, "type": p.type} for p in c.ports],
        "children": [_component_dict(k) for k in sorted(c.children, key=lambda k: k.name)],
        "edges": [{"from": s, "to": t} for s, t in edges],
        "appliedVariants": [
            {"variationPoint": s.vp, "variant": s.variant, "actuals": list(s.actuals)} for s in c.applied
        ],
    }


def to_dict(flat: FlatArchitecture) -> dict[str, Any]:
    return _component_dict(flat.root)


def to_json(flat: FlatArchitecture) -> str:
    """Canonical JSON: children and edges sorted by name, ports in declaration order."""
    return json.dumps(to_dict(flat), indent=2, ensure_ascii=False) + "\n"


def _component_from(d: dict[str, Any]) -> FlatComponent:
    return FlatComponent(
        name=d["name"],
        type=d["type"],
        ports=tuple(PortDecl(p["dir"], p["type"], p["name"]) for p in d["ports"]),
        children=tuple(_component_from(k) for k in d["children"]),
        edges=tuple(FlatEdge(PortRef.parse(e["from"]), PortRef.parse(e["to"])) for e in d["edges"]),
        applied=tuple(FlatSelection(a["variationPoint"], a["variant"], tuple(a["actuals"]))
                      for a in d["appliedVariants"]),
    )


def from_json(text: str) -> FlatArchitecture:
    return FlatArchitecture(_component_from(json.loads(text)))


# -- graphviz ---------------------------------------------------------------------------

def _node_id(*parts: str) -> str:
    # '~' is not safe in every graph tool, so it is percent-escaped
    return ".".join(p.replace("~", "%7E") for p in parts)


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _cluster(c: FlatComponent, path: tuple[str, ...], depth: int, lines: list[str], edges: list[str]) -> None:
    pad = "  " * depth
    here = path + (c.name,)
    lines.append(f"{pad}subgraph {_q('cluster_' + _node_id(*here))} {{")
    lines.append(f"{pad}  label={_q(f'{c.name} : {c.type}')};")
    for p in c.ports:
        shape = "invtriangle" if p.direction == "in" else "triangle"
        lines.append(f"{pad}  {_q(_node_id(*here, p.name))} [label={_q(f'{p.name} : {p.type}')}, shape={shape}];")
    for k in sorted(c.children, key=lambda k: k.name):
        _cluster(k, here, depth + 1, lines, edges)
    lines.append(f"{pad}}}")

    def end(ref: PortRef) -> str:
        return _q(_node_id(*here, ref.port) if ref.component is None else _node_id(*here, ref.component, ref.port))

    for e in sorted(c.edges, key=lambda e: (str(e.source), str(e.target))):
        edges.append(f"  {end(e.source)} -> {end(e.target)};")


def to_dot(flat: FlatArchitecture) -> str:
    """Graphviz digraph: one cluster per component, one node per port."""
    lines = ["digraph architecture {", "  compound=true;", "  node [fontsize=10];"]
    edges: list[str] = []
    _cluster(flat.root, (), 1, lines, edges)
    return "\n".join(lines + edges + ["}"]) + "\n"


def render(flat: FlatArchitecture, fmt: str) -> str:
    if fmt == "json":
        return to_json(flat)
    if fmt == "dot":
        return to_dot(flat)
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
