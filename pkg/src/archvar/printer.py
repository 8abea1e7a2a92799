"""Render model definitions back to source text."""

from __future__ import annotations

from .model import (
    ComponentDef, ConnectorDecl, Definition, PortDecl, SubcomponentDecl, VariantConfig,
    VariantDef, VariantSelection, split_parametric,
)

INDENT = "  "


def _port(p: PortDecl) -> str:
    if p.implicit:
        prefix, _ = split_parametric(p.name)
        return f"{p.direction} {p.type}" + (f" {prefix}~" if prefix else "")
    return f"{p.direction} {p.type} {p.name}"


def _sub(s: SubcomponentDecl) -> str:
    if s.implicit:
        return f"component {s.type};"
    return f"component {s.type} {', '.join(s.names)};"


def _connector(c: ConnectorDecl) -> str:
    return f"connect {c.source} -> {', '.join(str(t) for t in c.targets)};"


def _selection(s: VariantSelection) -> str:
    return s.render() + ";"


def _body(elems, depth: int, autoconnect: str = "none", variation_points=(), selections=()) -> list[str]:
    pad = INDENT * depth
    lines: list[str] = []
    if autoconnect != "none":
        lines.append(f"{pad}autoconnect {autoconnect};")
    if elems.ports:
        lines.append(f"{pad}port")
        for i, p in enumerate(elems.ports):
            end = ";" if i == len(elems.ports) - 1 else ","
            lines.append(f"{pad}{INDENT}{_port(p)}{end}")
    lines.extend(pad + _sub(s) for s in elems.subcomponents)
    for inner in elems.inner:
        lines.extend(_component(inner, depth))
    lines.extend(pad + _connector(c) for c in elems.connectors)
    for vp in variation_points:
        lines.append(f"{pad}variationPoint: {vp.name} {vp.cardinality};")
    lines.extend(pad + _selection(s) for s in selections)
    return lines


def _component(c: ComponentDef, depth: int) -> list[str]:
    pad = INDENT * depth
    return ([f"{pad}component {c.name} {{"]
            + _body(c, depth + 1, c.autoconnect, c.variation_points)
            + [f"{pad}}}"])


def render(defn: Definition) -> str:
    """Source text that parses back to a structurally equal definition."""
    lines: list[str] = []
    if defn.package:
        lines += [f"package {'.'.join(defn.package)};", ""]
    if isinstance(defn, ComponentDef):
        lines += _component(defn, 0)
    elif isinstance(defn, VariantDef):
        head = f"variant {defn.name}"
        if defn.params:
            head += f"({', '.join(defn.params)})"
        head += f" realizes {defn.realizes}"
        for c in defn.constraints:
            head += f" {c.kind} {c.target}"
        lines.append(head + " {")
        lines += _body(defn, 1, variation_points=defn.stray_variation_points, selections=defn.selections)
        lines.append("}")
    elif isinstance(defn, VariantConfig):
        head = ("abstract " if defn.abstract else "") + f"variantConfig {defn.name} for {defn.target}"
        if defn.extends is not None:
            head += f" extends {defn.extends}"
        lines.append(head + " {")
        lines += [INDENT + _selection(s) for s in defn.selections]
        lines.append("}")
    else:
        raise TypeError(f"cannot render {type(defn).__name__}")
    return "\n".join(lines) + "\n"


def file_name(defn: Definition) -> str:
    ext = ".arc" if isinstance(defn, ComponentDef) else ".archv"
    return defn.qualified_name + ext
