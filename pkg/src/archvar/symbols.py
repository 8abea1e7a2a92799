"""Symbol table over a model set, with duplicate-name detection."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .diagnostics import Diagnostic, error
from .model import (
    ComponentDef, Instance, ModelSet, PortDecl, QualifiedName, VariantConfig, VariantDef,
    VariationPointDecl,
)

KIND_NAMES = {ComponentDef: "component", VariantDef: "variant", VariantConfig: "configuration"}


@dataclass
class Scope:
    qname: str
    ports: dict[str, PortDecl] = field(default_factory=dict)
    subcomponents: dict[str, Instance] = field(default_factory=dict)
    variation_points: dict[str, VariationPointDecl] = field(default_factory=dict)
    inner: dict[str, ComponentDef] = field(default_factory=dict)


@dataclass
class SymbolTable:
    model_set: ModelSet
    scopes: dict[str, Scope] = field(default_factory=dict)
    variant_scopes: dict[str, Scope] = field(default_factory=dict)
    variants_by_vp: dict[tuple[str, str], dict[str, VariantDef]] = field(default_factory=dict)
    configs_by_component: dict[str, list[VariantConfig]] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def resolve_type(self, scope: Optional[str], type_name: QualifiedName) -> Optional[str]:
        return self.model_set.resolve_type(scope, type_name, self.model_set.package_of(scope or ""))

    def variants_for(self, owner: str, vp: str) -> dict[str, VariantDef]:
        return self.variants_by_vp.get((owner, vp), {})


def _fill(scope: Scope, ports, instances, vps, inner, diags: list[Diagnostic]) -> None:
    for p in ports:
        if p.name in scope.ports:
            diags.append(error("MA01", f"duplicate port name '{p.name}' in {scope.qname}", p.location))
        else:
            scope.ports[p.name] = p
    for i in instances:
        if i.name in scope.subcomponents:
            diags.append(error("MA02", f"duplicate subcomponent name '{i.name}' in {scope.qname}", i.location))
        else:
            scope.subcomponents[i.name] = i
    for vp in vps:
        if vp.name in scope.variation_points:
            diags.append(error("MA03", f"duplicate variation point '{vp.name}' in {scope.qname}", vp.location))
        else:
            scope.variation_points[vp.name] = vp
    for c in inner:
        if c.name in scope.inner:
            diags.append(error("MA04", f"duplicate inner component definition '{c.name}' in {scope.qname}",
                               c.location))
        else:
            scope.inner[c.name] = c


def build_symbol_table(model_set: ModelSet) -> tuple[SymbolTable, list[Diagnostic]]:
    """Index every scope of the model set; duplicates become MA01-MA04 errors."""
    from .resolution import config_target

    table = SymbolTable(model_set)
    diags: list[Diagnostic] = []

    for d in model_set.shadowed:
        kind = KIND_NAMES[type(d)]
        diags.append(error("MA04", f"duplicate {kind} definition '{d.qualified_name}'", d.location))

    for qname, comp in model_set.components.items():
        scope = Scope(qname)
        # a repeated inner definition is one MA04, not an extra MA02 for its instance
        instances = [i for i in comp.instances() if i.inner is None]
        seen_inner: set[str] = set()
        for i in comp.instances():
            if i.inner is not None and i.name not in seen_inner:
                seen_inner.add(i.name)
                instances.append(i)
        _fill(scope, comp.ports, instances, comp.variation_points, comp.inner, diags)
        table.scopes[qname] = scope

    for qname, v in model_set.variants.items():
        scope = Scope(qname)
        _fill(scope, v.ports, v.instances(), (), v.inner, diags)
        table.variant_scopes[qname] = scope

    for qname, key in model_set.realized_by.items():
        v = model_set.variants[qname]
        bucket = table.variants_by_vp.setdefault(key, {})
        if v.name in bucket:
            diags.append(error("MA04", f"duplicate variant '{v.name}' for variation point {key[0]}.{key[1]}",
                               v.location))
        else:
            bucket[v.name] = v

    for qname, cfg in model_set.configs.items():
        target = config_target(model_set, cfg)
        if target is not None:
            table.configs_by_component.setdefault(target, []).append(cfg)

    table.diagnostics = diags
    return table, list(diags)
