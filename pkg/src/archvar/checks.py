"""Context conditions over a model set.

Codes:
  CC0  a variant body declares a variation point
  CC1  a complete configuration leaves a required variation point open
  CC2  a configuration's component or selected variation point does not exist
  CC3  a super-configuration does not exist
  CC4  the variation point a variant realizes does not exist
  CC5  a selection names a missing variation point or unregistered variant
  CC6  actual and formal parameter counts differ
  MA01-MA04  duplicate port / subcomponent / variation point / definition
  MA05 unknown subcomponent type
  MA06 connector endpoint does not resolve
  MA07 connector direction is illegal
  MA08 connector joins different port types
  MA09 a variant selects beyond its direct subcomponents
  MA10 selection count outside the variation point's cardinality
  MA11 requires/excludes target is unknown or not on the same level
  MA12 '~' prefix is not a parameter of the variant
  MA13 a component contains itself
  MA14 cyclic configuration extension
  MA15 a configuration replaces a variant selected by its super-configuration
  MA16 implicit name used while the type is not unique
  MA17 name collision between variant-added elements
  MA18 requires/excludes violated by a configuration
  MA20 (warning) ambiguous autoconnect match

Static checks run first. Configurations are additionally derived, but only
on a model set without static errors, so one defect yields one finding.
"""

from __future__ import annotations

from typing import Optional

from .diagnostics import Diagnostic, Location, error, has_errors, sort_diagnostics
from .model import ModelSet, PortDecl, VariantConfig, VariantDef, join, split_parametric
from .resolution import (
    ConfigCycleError, MissingConfigError, ReselectionError, ResolutionError, _variant_type,
    check_edge, config_chain, config_derivation, config_selection_path, config_target,
    merge_configs, relative_selection_path, substitute_parameters,
)
from .symbols import SymbolTable, build_symbol_table


class _Checker:
    def __init__(self, model_set: ModelSet, table: SymbolTable):
        self.ms = model_set
        self.table = table
        self.out: list[Diagnostic] = []

    def err(self, code: str, message: str, location: Location) -> None:
        self.out.append(error(code, message, location))

    def run(self) -> list[Diagnostic]:
        for q, comp in self.ms.components.items():
            self.component(q, comp)
        for q, v in self.ms.variants.items():
            self.variant(q, v)
        self.cycles()
        for cfg in self.ms.configs.values():
            self.config_static(cfg)
        if not has_errors(self.out) and not has_errors(self.table.diagnostics):
            for cfg in self.ms.configs.values():
                merged = merge_configs(cfg, self.ms)
                _, d = config_derivation(merged, self.ms)
                self.out.extend(d.issues)
                self.out.extend(d.warnings)
        return sort_diagnostics(self.out)

    # -- helpers ------------------------------------------------------------------

    def ports_of(self, qname: Optional[str]) -> Optional[dict[str, PortDecl]]:
        if qname is None:
            return None
        return {p.name: p for p in self.ms.components[qname].ports}

    def potential_instances(self, qname: str) -> dict[str, Optional[str]]:
        """Instances of a component, including those any of its variants could add."""
        comp = self.ms.components[qname]
        out = {i.name: self.ms.instance_type(qname, i) for i in comp.instances()}
        for vp in comp.variation_points:
            for v in self.ms.variants_for(qname, vp.name).values():
                for s in v.subcomponents:
                    for n in s.names:
                        out.setdefault(n, _variant_type(self.ms, v, qname, s.type))
                for c in v.inner:
                    out.setdefault(c.name, join(v.qualified_name, c.name))
        return out

    def edges(self, connectors, own, children) -> None:
        for c in connectors:
            for s, t in c.edges():
                if any(r.component is not None and children.get(r.component, 0) is None for r in (s, t)):
                    continue  # endpoint type unknown, already reported as MA05
                known = {k: v for k, v in children.items() if v is not None}
                problem = check_edge(s, t, own, known)
                if problem:
                    self.err(problem[0], problem[1], c.location)

    def implicit_names(self, ports, subs, scope: str) -> None:
        for p in ports:
            if p.implicit and "~" not in p.name and any(
                    o is not p and o.type == p.type and o.name != p.name for o in ports):
                self.err("MA16", f"port of type {p.type} in {scope} needs an explicit name: "
                                 f"the type is not unique", p.location)
        for s in subs:
            if s.implicit and any(
                    o is not s and o.type == s.type and s.names[0] not in o.names for o in subs):
                self.err("MA16", f"subcomponent of type {s.type} in {scope} needs an explicit name: "
                                 f"the type is not unique", s.location)

    # -- components ------------------------------------------------------------------

    def component(self, qname: str, comp) -> None:
        children: dict[str, Optional[dict]] = {}
        for s in comp.subcomponents:
            t = self.ms.resolve_type(qname, s.type, self.ms.package_of(qname))
            if t is None:
                self.err("MA05", f"unknown component type {s.type} in {qname}", s.location)
            for n in s.names:
                children.setdefault(n, self.ports_of(t))
        for c in comp.inner:
            children.setdefault(c.name, self.ports_of(join(qname, c.name)))
        self.implicit_names(comp.ports, comp.subcomponents, qname)
        self.edges(comp.connectors, {p.name: p for p in comp.ports}, children)

    # -- variants ----------------------------------------------------------------------

    def variant(self, qname: str, v: VariantDef) -> None:
        for vp in v.stray_variation_points:
            self.err("CC0", f"variant {v.name} declares variation point {vp.name}; variants may not "
                            f"contain variation points", vp.location)
        self.implicit_names(v.ports, v.subcomponents, qname)
        self.parameters(v)

        key = self.ms.realized_by.get(qname)
        owner = key[0] if key else None
        types: dict[str, Optional[str]] = {}
        for s in v.subcomponents:
            t = _variant_type(self.ms, v, owner, s.type)
            if t is None:
                self.err("MA05", f"unknown component type {s.type} in variant {v.name}", s.location)
            for n in s.names:
                types.setdefault(n, t)
        for c in v.inner:
            types.setdefault(c.name, join(qname, c.name))

        if key is None:
            self.err("CC4", f"variant {v.name} realizes {v.realizes}, which is not a variation point",
                     v.location)
            return
        owner_def = self.ms.components[owner]

        common_ports = {p.name: p for p in owner_def.ports}
        for p in v.ports:
            if p.name in common_ports:
                self.err("MA01", f"variant {v.name} adds port '{p.name}' already declared in {owner}", p.location)
        common = {i.name: self.ms.instance_type(owner, i) for i in owner_def.instances()}
        for s in v.subcomponents:
            for n in s.names:
                if n in common:
                    self.err("MA02", f"variant {v.name} adds subcomponent '{n}' already declared in {owner}",
                             s.location)
        types = {**common, **{k: t for k, t in types.items() if k not in common}}
        children = {n: self.ports_of(t) for n, t in types.items()}

        counts: dict[tuple, set] = {}
        for es in v.selections:
            rel = relative_selection_path(types, owner, v, es.vp.parts)
            if rel is None:
                self.err("CC5", f"selection target {es.vp} does not exist", es.location)
                continue
            if len(rel) != 2:
                if self.static_vp(owner, rel):
                    self.err("MA09", f"variant {v.name} may only configure variation points of direct "
                                     f"subcomponents, not {es.vp}", es.location)
                else:
                    self.err("CC5", f"selection target {es.vp} does not exist", es.location)
                continue
            inst, vp_name = rel
            if inst not in types:
                self.err("CC5", f"selection target {es.vp} does not exist", es.location)
                continue
            t = types[inst]
            if t is None:
                continue
            vp = self.ms.components[t].variation_point(vp_name)
            if vp is None:
                self.err("CC5", f"{t} has no variation point {vp_name}", es.location)
                continue
            chosen = self.ms.variants_for(t, vp_name).get(es.variant)
            if chosen is None:
                self.err("CC5", f"{es.variant} is not a variant of {t}.{vp_name}", es.location)
                continue
            if len(es.actuals) != len(chosen.params):
                self.err("CC6", f"variant {chosen.name} expects {len(chosen.params)} parameter(s), "
                                f"got {len(es.actuals)}", es.location)
                continue
            picked = counts.setdefault(rel, set())
            picked.add((es.variant, es.actuals))
            if len(picked) == vp.cardinality.max + 1:
                self.err("MA10", f"variant {v.name} selects more than {vp.cardinality.max} variant(s) "
                                 f"for {es.vp}", es.location)
            try:
                bound = substitute_parameters(chosen, es.actuals)
            except ResolutionError:
                continue
            if children.get(inst) is not None:
                for p in bound.ports:
                    children[inst].setdefault(p.name, p)

        own = {**common_ports, **{p.name: p for p in v.ports}}
        self.edges(v.connectors, own, children)

        for clause in v.constraints:
            parts = clause.target.parts
            rel = config_selection_path(owner, parts) or parts
            ok = (len(rel) == 2 and owner_def.variation_point(rel[0]) is not None
                  and rel[1] in self.ms.variants_for(owner, rel[0]))
            if not ok:
                self.err("MA11", f"{clause.kind} target {clause.target} is not a variant of a variation point "
                                 f"of {owner}", clause.location)

    def parameters(self, v: VariantDef) -> None:
        params = set(v.params)

        def bad(names) -> Optional[str]:
            for n in names:
                prefix, _ = split_parametric(n)
                if prefix is not None and prefix not in params:
                    return n
            return None

        groups = [((p.name,), p.location) for p in v.ports]
        groups += [(s.names, s.location) for s in v.subcomponents]
        groups += [(tuple(x for r in (c.source,) + c.targets for x in (r.component, r.port) if x), c.location)
                   for c in v.connectors]
        groups += [(s.vp.parts, s.location) for s in v.selections]
        for names, loc in groups:
            n = bad(names)
            if n is not None:
                self.err("MA12", f"'{split_parametric(n)[0]}' in '{n}' is not a parameter of variant {v.name}", loc)

    def static_vp(self, qname: str, rel: tuple[str, ...]) -> bool:
        cur = qname
        for seg in rel[:-1]:
            cur = self.potential_instances(cur).get(seg)
            if cur is None:
                return False
        return self.ms.components[cur].variation_point(rel[-1]) is not None

    # -- containment cycles ------------------------------------------------------------

    def cycles(self) -> None:
        graph: dict[str, list[tuple[str, Location]]] = {}
        for q, comp in self.ms.components.items():
            out = []
            for i in comp.instances():
                t = self.ms.instance_type(q, i)
                if t is not None:
                    out.append((t, i.location))
            for vp in comp.variation_points:
                for v in self.ms.variants_for(q, vp.name).values():
                    for s in v.subcomponents:
                        t = _variant_type(self.ms, v, q, s.type)
                        if t is not None:
                            out.append((t, s.location))
                    for c in v.inner:
                        out.append((join(v.qualified_name, c.name), c.location))
            graph[q] = out
        state: dict[str, int] = {}

        def visit(node: str) -> None:
            state[node] = 1
            for nxt, loc in graph.get(node, ()):
                if state.get(nxt) == 1:
                    self.err("MA13", f"component {nxt} contains itself (via {node})", loc)
                elif nxt not in state:
                    visit(nxt)
            state[node] = 2

        for node in sorted(graph):
            if node not in state:
                visit(node)

    # -- configurations ----------------------------------------------------------------

    def config_static(self, cfg: VariantConfig) -> None:
        target = config_target(self.ms, cfg)
        if target is None:
            self.err("CC2", f"configured component {cfg.target} does not exist", cfg.location)
            return
        try:
            config_chain(cfg, self.ms)
            merge_configs(cfg, self.ms)
        except (MissingConfigError, ConfigCycleError, ReselectionError) as exc:
            self.out.append(exc.diagnostic())

        counts: dict[tuple, set] = {}
        for s in cfg.selections:
            rel = config_selection_path(target, s.vp.parts)
            if rel is None:
                self.err("CC2", f"{s.vp} is not a variation point of {cfg.target}", s.location)
                continue
            cur: Optional[str] = target
            for seg in rel[:-1]:
                cur = self.potential_instances(cur).get(seg)
                if cur is None:
                    break
            vp = self.ms.components[cur].variation_point(rel[-1]) if cur else None
            if vp is None:
                self.err("CC2", f"{s.vp} is not a variation point of {cfg.target}", s.location)
                continue
            chosen = self.ms.variants_for(cur, vp.name).get(s.variant)
            if chosen is None:
                self.err("CC5", f"{s.variant} is not a variant of {s.vp}", s.location)
                continue
            if len(s.actuals) != len(chosen.params):
                self.err("CC6", f"variant {chosen.name} expects {len(chosen.params)} parameter(s), "
                                f"got {len(s.actuals)}", s.location)
                continue
            picked = counts.setdefault(rel, set())
            picked.add((s.variant, s.actuals))
            if len(picked) == vp.cardinality.max + 1:
                self.err("MA10", f"more than {vp.cardinality.max} variant(s) selected for {s.vp}", s.location)


def check(model_set: ModelSet, table: SymbolTable) -> list[Diagnostic]:
    """All context-condition diagnostics, sorted by location then code."""
    return _Checker(model_set, table).run()


def check_model_set(model_set: ModelSet) -> list[Diagnostic]:
    """Symbol-table and context-condition diagnostics together."""
    table, diags = build_symbol_table(model_set)
    return sort_diagnostics(diags + check(model_set, table))
