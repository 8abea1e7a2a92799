"""Product derivation: turn a configured variable component into a flat architecture.

Variants are purely additive. Selecting a variant copies its ports,
subcomponents and connectors (after parameter substitution) into the
component that owns the variation point and queues the variant's embedded
selections for the subcomponents below. ``flatten`` walks the instance tree
top-down doing exactly that, then expands autoconnect and multi-target
connectors into point-to-point edges.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .diagnostics import NOWHERE, Diagnostic, Location, error, warning
from .model import (
    IN, OUT, AppliedVariant, ComponentDef, ConnectorDecl, ModelSet, PortDecl, PortRef,
    QualifiedName, SubcomponentDecl, VariantConfig, VariantDef, VariantSelection,
    VariationPointDecl, join, split_parametric,
)


class ResolutionError(Exception):
    code = "MA00"

    def __init__(self, message: str, location: Location = NOWHERE, code: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.location = location
        if code is not None:
            self.code = code

    def diagnostic(self) -> Diagnostic:
        return error(self.code, self.message, self.location)


class NameCollisionError(ResolutionError):
    code = "MA17"


class UnknownParameterError(ResolutionError):
    code = "MA12"


class ReselectionError(ResolutionError):
    code = "MA15"


class ConfigCycleError(ResolutionError):
    code = "MA14"


class MissingConfigError(ResolutionError):
    code = "CC3"


class DerivationError(ResolutionError):
    """Flattening failed; ``issues`` holds every problem found."""

    def __init__(self, issues: Sequence[Diagnostic]):
        first = issues[0]
        super().__init__(first.message, first.location, first.code)
        self.issues = list(issues)

    def __str__(self) -> str:
        return "; ".join(f"{d.code}: {d.message}" for d in self.issues)


# -- flat architecture ---------------------------------------------------------

@dataclass(frozen=True)
class FlatEdge:
    source: PortRef
    target: PortRef
    implicit: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class FlatSelection:
    vp: str  # dotted instance path ending in the variation point name
    variant: str
    actuals: tuple[str, ...] = ()


@dataclass(frozen=True)
class FlatComponent:
    name: str
    type: str
    ports: tuple[PortDecl, ...] = ()
    children: tuple["FlatComponent", ...] = ()
    edges: tuple[FlatEdge, ...] = ()
    applied: tuple[FlatSelection, ...] = ()

    def child(self, name: str) -> Optional["FlatComponent"]:
        return next((c for c in self.children if c.name == name), None)

    def walk(self, path: tuple[str, ...] = ()):
        """Yield ``(path, component)`` for this component and all descendants."""
        here = path + (self.name,)
        yield here, self
        for c in self.children:
            yield from c.walk(here)


@dataclass(frozen=True)
class FlatArchitecture:
    root: FlatComponent


# -- parameters and variant application ------------------------------------------

def substitute_parameters(variant: VariantDef, actuals: Sequence[str]) -> VariantDef:
    """Bind the variant's formal parameters.

    Every name ``p~base`` whose prefix is the i-th formal becomes
    ``a_i~base``. Actual parameters of embedded selections that are bare
    formal names are forwarded as well. The result has no formals left.
    """
    if not variant.params:
        return variant
    actuals = tuple(actuals)
    if len(actuals) != len(variant.params):
        raise ResolutionError(
            f"variant {variant.name} expects {len(variant.params)} parameter(s), got {len(actuals)}",
            variant.location, "CC6")
    binding = dict(zip(variant.params, actuals))

    def sub(name: str) -> str:
        prefix, base = split_parametric(name)
        if prefix is None:
            return name
        if prefix not in binding:
            raise UnknownParameterError(f"'{prefix}' in '{name}' is not a parameter of variant {variant.name}",
                                        variant.location)
        return f"{binding[prefix]}~{base}"

    def ref(r: PortRef) -> PortRef:
        return PortRef(sub(r.component) if r.component else None, sub(r.port))

    return dataclasses.replace(
        variant,
        params=(),
        ports=tuple(dataclasses.replace(p, name=sub(p.name)) for p in variant.ports),
        subcomponents=tuple(dataclasses.replace(s, names=tuple(sub(n) for n in s.names))
                            for s in variant.subcomponents),
        connectors=tuple(dataclasses.replace(c, source=ref(c.source), targets=tuple(ref(t) for t in c.targets))
                         for c in variant.connectors),
        selections=tuple(dataclasses.replace(
            s, vp=QualifiedName(tuple(sub(p) for p in s.vp.parts)),
            actuals=tuple(binding.get(a, a) for a in s.actuals)) for s in variant.selections),
    )


def _variant_type(model_set: ModelSet, variant: VariantDef, owner: Optional[str],
                  type_name: QualifiedName) -> Optional[str]:
    local = join(variant.qualified_name, type_name)
    if local in model_set.components and local in model_set.variant_scope:
        return local
    found = model_set.resolve_type(owner, type_name, variant.package)
    if found is None and owner is not None:
        found = model_set.resolve_type(owner, type_name, model_set.package_of(owner))
    return found


def apply_variant(component: ComponentDef, vp: Union[VariationPointDecl, str], variant: VariantDef,
                  actuals: Sequence[str] = (), *, model_set: Optional[ModelSet] = None,
                  owner: Optional[str] = None) -> ComponentDef:
    """Return a copy of ``component`` with the variant's elements added.

    Existing elements are never touched. The variant's embedded selections
    are appended to ``pending`` for the caller to route to subcomponents.
    When ``model_set`` is given, subcomponent types added by the variant are
    rewritten to canonical qualified names so they resolve from the new
    context. Raises ``NameCollisionError`` if an added port or instance name
    already exists.
    """
    vp_name = vp.name if isinstance(vp, VariationPointDecl) else vp
    if component.variation_point(vp_name) is None:
        raise ResolutionError(f"component {component.name} has no variation point {vp_name}",
                              component.location, "CC5")
    bound = substitute_parameters(variant, actuals)

    inst_names = {i.name for i in component.instances()}
    added_subs: list[SubcomponentDecl] = []
    for s in bound.subcomponents:
        t = s.type
        if model_set is not None:
            canon = _variant_type(model_set, variant, owner, s.type)
            if canon is not None:
                t = QualifiedName.parse(canon)
        added_subs.append(dataclasses.replace(s, type=t))
    for c in bound.inner:
        added_subs.append(SubcomponentDecl(QualifiedName.parse(join(variant.qualified_name, c.name)),
                                           (c.name,), True, c.location))
    for s in added_subs:
        for n in s.names:
            if n in inst_names:
                raise NameCollisionError(
                    f"variant {variant.name} adds subcomponent '{n}' which already exists in {component.name}",
                    s.location)
            inst_names.add(n)

    port_names = {p.name for p in component.ports}
    for p in bound.ports:
        if p.name in port_names:
            raise NameCollisionError(
                f"variant {variant.name} adds port '{p.name}' which already exists in {component.name}",
                p.location)
        port_names.add(p.name)

    return dataclasses.replace(
        component,
        ports=component.ports + bound.ports,
        subcomponents=component.subcomponents + tuple(added_subs),
        connectors=component.connectors + bound.connectors,
        applied=component.applied + (AppliedVariant(vp_name, variant.name, tuple(actuals)),),
        pending=component.pending + bound.selections,
    )


def relative_selection_path(instance_names: Iterable[str], owner: str, variant: VariantDef,
                            parts: tuple[str, ...]) -> Optional[tuple[str, ...]]:
    """Path of an embedded selection relative to the component the variant extends.

    A path may start with an instance name of that component, or with the
    component's own name (as written in the variant's realizes clause).
    """
    if parts[0] in set(instance_names):
        return parts
    prefixes = [variant.realizes.parts[:-1], tuple(owner.split(".")), (owner.split(".")[-1],)]
    for pre in prefixes:
        if pre and len(parts) > len(pre) and parts[:len(pre)] == pre:
            return parts[len(pre):]
    return None


# -- connectors ---------------------------------------------------------------------

def check_edge(source: PortRef, target: PortRef, own: dict[str, PortDecl],
               children: dict[str, dict[str, PortDecl]]) -> Optional[tuple[str, str]]:
    """Validate one point-to-point edge; returns ``(code, message)`` or ``None``."""
    ends = []
    for ref in (source, target):
        if ref.component is None:
            port = own.get(ref.port)
        else:
            if ref.component not in children:
                return "MA06", f"unknown subcomponent '{ref.component}' in connector endpoint '{ref}'"
            port = children[ref.component].get(ref.port)
        if port is None:
            return "MA06", f"connector endpoint '{ref}' does not name a port"
        ends.append(port)
    src, tgt = ends
    src_ok = (src.direction == IN) if source.component is None else (src.direction == OUT)
    tgt_ok = (tgt.direction == OUT) if target.component is None else (tgt.direction == IN)
    if not src_ok:
        return "MA07", f"'{source}' cannot be a connector source"
    if not tgt_ok:
        return "MA07", f"'{target}' cannot be a connector target"
    if src.type != tgt.type:
        return "MA08", f"connector '{source} -> {target}' joins type {src.type} with {tgt.type}"
    return None


def expand_autoconnect(component: ComponentDef, table, *, owner: Optional[str] = None,
                       child_ports: Optional[dict[str, Sequence[PortDecl]]] = None,
                       warnings: Optional[list] = None) -> list[ConnectorDecl]:
    """Implicit connectors for ``autoconnect port`` / ``autoconnect type``.

    A target port that no explicit connector feeds gets an edge from the one
    legal source that matches it (by name and type, or by type alone). Targets
    with several candidates are skipped with a warning.
    """
    if component.autoconnect == "none":
        return []
    model_set: ModelSet = getattr(table, "model_set", table)
    by_type = component.autoconnect == "type"
    if child_ports is None:
        child_ports = {}
        for inst in component.instances():
            t = model_set.instance_type(owner, inst) if owner else model_set.resolve_type(None, inst.type)
            child_ports[inst.name] = model_set.components[t].ports if t else ()

    explicit = {(t.component, t.port) for c in component.connectors for t in c.targets}
    sources = [(None, p) for p in component.ports if p.direction == IN]
    sources += [(n, p) for n, ps in child_ports.items() for p in ps if p.direction == OUT]
    targets = [(n, p) for n, ps in child_ports.items() for p in ps if p.direction == IN]
    targets += [(None, p) for p in component.ports if p.direction == OUT]

    out: list[ConnectorDecl] = []
    for t_owner, t_port in targets:
        if (t_owner, t_port.name) in explicit:
            continue
        matches = [
            (s_owner, s_port) for s_owner, s_port in sources
            if not (s_owner is None and t_owner is None)
            and (s_owner is None or s_owner != t_owner)
            and s_port.type == t_port.type
            and (by_type or s_port.name == t_port.name)
        ]
        target = PortRef(t_owner, t_port.name)
        if len(matches) == 1:
            s_owner, s_port = matches[0]
            out.append(ConnectorDecl(PortRef(s_owner, s_port.name), (target,), "implicit", component.location))
        elif matches and warnings is not None:
            names = ", ".join(str(PortRef(o, p.name)) for o, p in matches)
            warnings.append(warning("MA20", f"autoconnect skipped ambiguous target '{target}' (candidates: {names})",
                                    component.location))
    return out


# -- configurations -------------------------------------------------------------------

def find_config(model_set: ModelSet, name: Union[str, QualifiedName],
                package: tuple[str, ...] = ()) -> Optional[str]:
    name = QualifiedName.of(name)
    for q in (join(package, name), str(name)):
        if q in model_set.configs:
            return q
    return None


def config_target(model_set: ModelSet, config: VariantConfig) -> Optional[str]:
    hit = model_set.find_component(config.target.parts, config.package, top_level_only=False)
    if hit is None or hit[1] != len(config.target):
        return None
    return hit[0]


def config_selection_path(target: str, parts: tuple[str, ...]) -> Optional[tuple[str, ...]]:
    """Strip the configured component's name from a selection path."""
    for pre in (tuple(target.split(".")), (target.split(".")[-1],)):
        if len(parts) > len(pre) and parts[:len(pre)] == pre:
            return parts[len(pre):]
    return None


def config_chain(config: VariantConfig, model_set: ModelSet) -> list[VariantConfig]:
    """``config`` followed by its ancestors, nearest first."""
    chain = [config]
    seen = {config.qualified_name}
    target = config_target(model_set, config)
    cur = config
    while cur.extends is not None:
        q = find_config(model_set, cur.extends, cur.package)
        if q is None:
            raise MissingConfigError(f"super-configuration {cur.extends} of {cur.name} does not exist",
                                     cur.location)
        if q in seen:
            raise ConfigCycleError(f"configuration {config.name} extends itself through {q}", config.location)
        parent = model_set.configs[q]
        if config_target(model_set, parent) != target:
            raise MissingConfigError(
                f"super-configuration {q} of {cur.name} configures {parent.target}, not {cur.target}", cur.location)
        chain.append(parent)
        seen.add(q)
        cur = parent
    return chain


def merge_configs(child: VariantConfig, model_set: ModelSet) -> VariantConfig:
    """Fold the ``extends`` chain into one configuration.

    Selections are united, ancestors first, with duplicates dropped. Once an
    ancestor has configured a variation point, a descendant may only repeat
    those selections; anything else is a ``ReselectionError``.
    """
    if child.extends is None:
        return child
    chain = config_chain(child, model_set)
    target = config_target(model_set, child) or str(child.target)
    configured: dict[tuple, set] = {}
    merged: list[VariantSelection] = []
    seen: set = set()
    for cfg in reversed(chain):
        local: dict[tuple, set] = {}
        for s in cfg.selections:
            key = config_selection_path(target, s.vp.parts) or s.vp.parts
            choice = (s.variant, s.actuals)
            if key in configured and choice not in configured[key]:
                raise ReselectionError(
                    f"configuration {cfg.name} reselects {s.vp} with {s.variant}, already configured by a "
                    f"super-configuration", s.location)
            local.setdefault(key, set()).add(choice)
            if (key, choice) not in seen:
                seen.add((key, choice))
                merged.append(s)
        for key, choices in local.items():
            configured.setdefault(key, set()).update(choices)
    return dataclasses.replace(child, extends=None, selections=tuple(merged))


# -- derivation -------------------------------------------------------------------------

@dataclass
class _Pending:
    variant: str
    actuals: tuple[str, ...]
    location: Location
    from_config: bool


class Derivation:
    """One top-down pass over the instance tree of a component.

    Problems are collected as diagnostics instead of raised, so the checker
    can report all of them. ``complete`` enables the undecided-variation-point
    check; ``constraints`` enables requires/excludes evaluation.
    """

    def __init__(self, model_set: ModelSet, *, complete: bool = True, constraints: bool = True,
                 location: Location = NOWHERE):
        self.ms = model_set
        self.complete = complete
        self.check_constraints = constraints
        self.location = location
        self.issues: list[Diagnostic] = []
        self.warnings: list[Diagnostic] = []
        self.missing: list[str] = []
        self.pending: dict[tuple[tuple[str, ...], str], dict[tuple, _Pending]] = {}
        self.visited: set[tuple[tuple[str, ...], str]] = set()
        self.root_name = ""

    def issue(self, code: str, message: str, location: Location) -> None:
        self.issues.append(error(code, message, location))

    def select(self, path: tuple[str, ...], vp: str, variant: str, actuals: tuple[str, ...],
               location: Location = NOWHERE, from_config: bool = True) -> None:
        bucket = self.pending.setdefault((path, vp), {})
        bucket.setdefault((variant, tuple(actuals)), _Pending(variant, tuple(actuals), location, from_config))

    def vp_path(self, path: tuple[str, ...], vp: str) -> str:
        return join(self.root_name, path, vp)

    def run(self, root: str) -> FlatComponent:
        self.root_name = root.split(".")[-1]
        flat = self.instantiate(root, (), self.root_name, ())
        for key, bucket in sorted(self.pending.items()):
            if key in self.visited:
                continue
            for p in bucket.values():
                self.issue("CC2" if p.from_config else "CC5",
                           f"variation point {self.vp_path(*key)} does not exist in the derived architecture",
                           p.location)
        return flat

    def instantiate(self, qname: str, path: tuple[str, ...], name: str, stack: tuple[str, ...]) -> FlatComponent:
        if qname in stack:
            self.issue("MA13", f"component {qname} contains itself", self.location)
            return FlatComponent(name, qname)
        comp = self.ms.components[qname]
        work = comp
        applied: list[tuple[str, VariantDef, _Pending]] = []
        done: set = set()
        progress = True
        while progress:
            progress = False
            for vp in comp.variation_points:
                self.visited.add((path, vp.name))
                for key, sel in list(self.pending.get((path, vp.name), {}).items()):
                    if (vp.name, key) in done:
                        continue
                    done.add((vp.name, key))
                    progress = True
                    work = self._apply(work, qname, path, vp, sel, applied)

        for vp in comp.variation_points:
            count = work.selection_count(vp.name)
            card = vp.cardinality
            where = self.location
            picks = [p for v, _, p in applied if v == vp.name]
            if picks:
                where = picks[-1].location
            if count > card.max:
                self.issue("MA10", f"{count} variants selected for {self.vp_path(path, vp.name)}, "
                                   f"at most {card.max} allowed", where)
            elif self.complete and count == 0 and card.min >= 1:
                self.missing.append(self.vp_path(path, vp.name))
                self.issue("CC1", f"variation point {self.vp_path(path, vp.name)} is not configured", self.location)
            elif self.complete and 0 < count < card.min:
                self.issue("MA10", f"{count} variants selected for {self.vp_path(path, vp.name)}, "
                                   f"at least {card.min} required", where)

        children: list[FlatComponent] = []
        for inst in work.instances():
            t = self.ms.instance_type(qname, inst)
            if t is None:
                self.issue("MA05", f"unknown component type {inst.type}", inst.location)
                continue
            children.append(self.instantiate(t, path + (inst.name,), inst.name, stack + (qname,)))

        if self.check_constraints:
            self._constraints(work, path, applied)

        child_ports = {c.name: c.ports for c in children}
        connectors = list(work.connectors) + expand_autoconnect(
            work, self.ms, owner=qname, child_ports=child_ports, warnings=self.warnings)
        own = {p.name: p for p in work.ports}
        by_child = {c.name: {p.name: p for p in c.ports} for c in children}
        edges: list[FlatEdge] = []
        for c in connectors:
            for s, t in c.edges():
                problem = check_edge(s, t, own, by_child)
                if problem:
                    self.issue(problem[0], problem[1], c.location)
                edges.append(FlatEdge(s, t, c.origin == "implicit"))

        selections = tuple(FlatSelection(self.vp_path(path, vp), v.name, p.actuals) for vp, v, p in applied)
        return FlatComponent(name, qname, work.ports, tuple(children), tuple(edges), selections)

    def _apply(self, work: ComponentDef, qname: str, path: tuple[str, ...], vp: VariationPointDecl,
               sel: _Pending, applied: list) -> ComponentDef:
        variant = self.ms.variants_for(qname, vp.name).get(sel.variant)
        if variant is None:
            self.issue("CC5", f"{sel.variant} is not a variant of {self.vp_path(path, vp.name)}", sel.location)
            return work
        if len(sel.actuals) != len(variant.params):
            self.issue("CC6", f"variant {variant.name} expects {len(variant.params)} parameter(s), "
                              f"got {len(sel.actuals)}", sel.location)
            return work
        before = len(work.pending)
        try:
            work = apply_variant(work, vp, variant, sel.actuals, model_set=self.ms, owner=qname)
        except ResolutionError as exc:
            self.issue(exc.code, exc.message, sel.location)
            return work
        applied.append((vp.name, variant, sel))
        names = [i.name for i in work.instances()]
        for es in work.pending[before:]:
            rel = relative_selection_path(names, qname, variant, es.vp.parts)
            if rel is None:
                self.issue("CC5", f"selection target {es.vp} does not exist", es.location)
                continue
            self.select(path + rel[:-1], rel[-1], es.variant, es.actuals, es.location, False)
        return work

    def _constraints(self, work: ComponentDef, path: tuple[str, ...], applied: list) -> None:
        chosen: dict[str, set[str]] = {}
        for a in work.applied:
            chosen.setdefault(a.vp, set()).add(a.variant)
        for vp_name, variant, sel in applied:
            for clause in variant.constraints:
                parts = clause.target.parts
                if len(parts) < 2 or work.variation_point(parts[-2]) is None:
                    continue  # reported statically as MA11
                hit = parts[-1] in chosen.get(parts[-2], set())
                if clause.kind == "requires" and not hit:
                    self.issue("MA18", f"{variant.name} at {self.vp_path(path, vp_name)} requires "
                                       f"{parts[-1]} at {self.vp_path(path, parts[-2])}", sel.location)
                elif clause.kind == "excludes" and hit:
                    self.issue("MA18", f"{variant.name} at {self.vp_path(path, vp_name)} excludes "
                                       f"{parts[-1]} at {self.vp_path(path, parts[-2])}", sel.location)


def derive(model_set: ModelSet, root: str, selections: Iterable[tuple[tuple[str, ...], str, str, tuple]] = (),
           *, complete: bool = True, constraints: bool = True,
           location: Location = NOWHERE) -> tuple[FlatComponent, Derivation]:
    """Run a derivation from ``(instance path, vp, variant, actuals)`` selections."""
    d = Derivation(model_set, complete=complete, constraints=constraints, location=location)
    for path, vp, variant, actuals in selections:
        d.select(tuple(path), vp, variant, tuple(actuals), location)
    return d.run(root), d


def config_derivation(config: VariantConfig, model_set: ModelSet) -> tuple[Optional[FlatComponent], Derivation]:
    """Derive a (merged) configuration without raising."""
    d = Derivation(model_set, complete=not config.abstract, constraints=not config.abstract,
                   location=config.location)
    target = config_target(model_set, config)
    if target is None:
        d.issue("CC2", f"configured component {config.target} does not exist", config.location)
        return None, d
    for s in config.selections:
        rel = config_selection_path(target, s.vp.parts)
        if rel is None:
            d.issue("CC2", f"{s.vp} is not a variation point of {config.target}", s.location)
            continue
        d.select(rel[:-1], rel[-1], s.variant, s.actuals, s.location, True)
    return d.run(target), d


def flatten(config: VariantConfig, model_set: ModelSet,
            warnings: Optional[list] = None) -> FlatArchitecture:
    """Derive the variability-free architecture of a complete configuration."""
    merged = merge_configs(config, model_set)
    if merged.abstract:
        raise ResolutionError(f"configuration {config.name} is abstract and cannot be flattened",
                              config.location, "CC1")
    flat, d = config_derivation(merged, model_set)
    if warnings is not None:
        warnings.extend(d.warnings)
    if d.issues:
        raise DerivationError(d.issues)
    return FlatArchitecture(flat)


def flatten_component(qname: str, model_set: ModelSet, warnings: Optional[list] = None) -> FlatArchitecture:
    """Flatten a component with no selections at all."""
    if qname not in model_set.components:
        raise ResolutionError(f"unknown component {qname}", code="CC2")
    flat, d = derive(model_set, qname)
    if warnings is not None:
        warnings.extend(d.warnings)
    if d.issues:
        raise DerivationError(d.issues)
    return FlatArchitecture(flat)
