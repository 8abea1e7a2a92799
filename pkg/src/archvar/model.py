"""In-memory model of components, variation points, variants and configurations.

All model values are frozen dataclasses built from tuples, so a parsed
``ModelSet`` can be shared freely. Source locations never take part in
equality: two models that differ only in layout compare equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Union

from .diagnostics import NOWHERE, Location

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")

IN = "in"
OUT = "out"

AUTOCONNECT_MODES = ("none", "port", "type")


def is_identifier(text: str) -> bool:
    return bool(IDENT_RE.match(text))


def split_parametric(name: str) -> tuple[Optional[str], str]:
    """Split ``prefix~base`` into ``(prefix, base)``; plain names get ``None``."""
    prefix, sep, base = name.partition("~")
    if not sep:
        return None, name
    return prefix, base


def is_valid_name(name: str) -> bool:
    prefix, base = split_parametric(name)
    return is_identifier(base) and (prefix is None or is_identifier(prefix))


def _loc():
    return field(default=NOWHERE, compare=False, repr=False)


@dataclass(frozen=True)
class QualifiedName:
    parts: tuple[str, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("a qualified name needs at least one segment")

    @classmethod
    def parse(cls, text: str) -> "QualifiedName":
        return cls(tuple(text.split(".")))

    @classmethod
    def of(cls, value: Union[str, "QualifiedName", tuple]) -> "QualifiedName":
        if isinstance(value, QualifiedName):
            return value
        if isinstance(value, tuple):
            return cls(value)
        return cls.parse(value)

    @property
    def last(self) -> str:
        return self.parts[-1]

    def __str__(self) -> str:
        return ".".join(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


def join(*parts: Union[str, tuple, QualifiedName, None]) -> str:
    """Join name fragments into a dotted string, skipping empty ones."""
    out: list[str] = []
    for part in parts:
        if not part:
            continue
        if isinstance(part, QualifiedName):
            out.extend(part.parts)
        elif isinstance(part, tuple):
            out.extend(part)
        else:
            out.append(part)
    return ".".join(out)


@dataclass(frozen=True)
class PortDecl:
    direction: str
    type: str
    name: str
    implicit: bool = False
    location: Location = _loc()

    def __post_init__(self):
        if self.direction not in (IN, OUT):
            raise ValueError(f"bad port direction {self.direction!r}")


@dataclass(frozen=True)
class SubcomponentDecl:
    type: QualifiedName
    names: tuple[str, ...]
    implicit: bool = False
    location: Location = _loc()

    def __post_init__(self):
        if not self.names:
            raise ValueError("a subcomponent declaration needs an instance name")


@dataclass(frozen=True)
class PortRef:
    component: Optional[str]
    port: str

    @classmethod
    def parse(cls, text: str) -> "PortRef":
        comp, sep, port = text.rpartition(".")
        return cls(comp if sep else None, port)

    def __str__(self) -> str:
        return f"{self.component}.{self.port}" if self.component else self.port


@dataclass(frozen=True)
class ConnectorDecl:
    source: PortRef
    targets: tuple[PortRef, ...]
    origin: str = "explicit"
    location: Location = _loc()

    def __post_init__(self):
        if not self.targets:
            raise ValueError("a connector needs at least one target")

    def edges(self) -> list[tuple[PortRef, PortRef]]:
        return [(self.source, t) for t in self.targets]


@dataclass(frozen=True)
class Cardinality:
    min: int = 1
    max: int = 1

    def __post_init__(self):
        if self.min < 0 or self.max < 1 or self.min > self.max:
            raise ValueError(f"invalid cardinality [{self.min}..{self.max}]")

    def __str__(self) -> str:
        return f"[{self.min}..{self.max}]"


@dataclass(frozen=True)
class VariationPointDecl:
    name: str
    cardinality: Cardinality = Cardinality()
    location: Location = _loc()


@dataclass(frozen=True)
class AppliedVariant:
    """Bookkeeping left on a derived component by ``apply_variant``."""

    vp: str
    variant: str
    actuals: tuple[str, ...] = ()


@dataclass(frozen=True)
class Instance:
    """A subcomponent instance, either declared or implied by an inner definition."""

    name: str
    type: QualifiedName
    inner: Optional["ComponentDef"] = None
    location: Location = _loc()


@dataclass(frozen=True)
class ComponentDef:
    name: str
    package: tuple[str, ...] = ()
    autoconnect: str = "none"
    ports: tuple[PortDecl, ...] = ()
    subcomponents: tuple[SubcomponentDecl, ...] = ()
    inner: tuple["ComponentDef", ...] = ()
    connectors: tuple[ConnectorDecl, ...] = ()
    variation_points: tuple[VariationPointDecl, ...] = ()
    location: Location = _loc()
    # filled in only on derived copies, see resolution.apply_variant
    applied: tuple[AppliedVariant, ...] = ()
    pending: tuple["VariantSelection", ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.autoconnect not in AUTOCONNECT_MODES:
            raise ValueError(f"bad autoconnect mode {self.autoconnect!r}")

    @property
    def qualified_name(self) -> str:
        return join(self.package, self.name)

    def instances(self) -> list[Instance]:
        out = [
            Instance(n, d.type, None, d.location)
            for d in self.subcomponents
            for n in d.names
        ]
        out.extend(Instance(c.name, QualifiedName((c.name,)), c, c.location) for c in self.inner)
        return out

    def port(self, name: str) -> Optional[PortDecl]:
        for p in self.ports:
            if p.name == name:
                return p
        return None

    def variation_point(self, name: str) -> Optional[VariationPointDecl]:
        for vp in self.variation_points:
            if vp.name == name:
                return vp
        return None

    def inner_def(self, name: str) -> Optional["ComponentDef"]:
        for c in self.inner:
            if c.name == name:
                return c
        return None

    def selection_count(self, vp: str) -> int:
        return sum(1 for a in self.applied if a.vp == vp)


@dataclass(frozen=True)
class ConstraintClause:
    kind: str  # "requires" | "excludes"
    target: QualifiedName
    location: Location = _loc()

    def __post_init__(self):
        if self.kind not in ("requires", "excludes"):
            raise ValueError(f"bad constraint kind {self.kind!r}")


@dataclass(frozen=True)
class VariantSelection:
    vp: QualifiedName
    variant: str
    actuals: tuple[str, ...] = ()
    location: Location = _loc()

    def render(self) -> str:
        args = f"({', '.join(self.actuals)})" if self.actuals else ""
        return f"{self.vp} realizedBy {self.variant}{args}"


@dataclass(frozen=True)
class VariantDef:
    """A variant realizing one variation point.

    The body holds the same architectural elements as a component, except
    variation points. A ``variationPoint`` statement written inside a variant
    body is kept apart in ``stray_variation_points`` so the checker can point
    at it; it is never part of the body.
    """

    name: str
    realizes: QualifiedName
    package: tuple[str, ...] = ()
    params: tuple[str, ...] = ()
    constraints: tuple[ConstraintClause, ...] = ()
    ports: tuple[PortDecl, ...] = ()
    subcomponents: tuple[SubcomponentDecl, ...] = ()
    inner: tuple[ComponentDef, ...] = ()
    connectors: tuple[ConnectorDecl, ...] = ()
    selections: tuple[VariantSelection, ...] = ()
    location: Location = _loc()
    stray_variation_points: tuple[VariationPointDecl, ...] = field(default=(), compare=False)

    @property
    def qualified_name(self) -> str:
        return join(self.package, self.name)

    def instances(self) -> list[Instance]:
        return ComponentDef.instances(self)  # type: ignore[arg-type]


@dataclass(frozen=True)
class VariantConfig:
    name: str
    target: QualifiedName
    package: tuple[str, ...] = ()
    abstract: bool = False
    extends: Optional[QualifiedName] = None
    selections: tuple[VariantSelection, ...] = ()
    location: Location = _loc()

    @property
    def qualified_name(self) -> str:
        return join(self.package, self.name)


Definition = Union[ComponentDef, VariantDef, VariantConfig]


@dataclass(frozen=True)
class Resolved:
    kind: str  # component | subcomponent | variation_point | variant
    entity: object
    owner: str  # qualified name of the component the entity lives in (or itself)


class ModelSet:
    """All definitions of one model directory, indexed by qualified name.

    Definitions are ordered by source file and position so that the index,
    and every diagnostic derived from it, is independent of load order. When
    two definitions share a qualified name the first one wins; the loser is
    kept in ``shadowed`` for the symbol table to report.
    """

    def __init__(self, definitions=()):
        defs = sorted(definitions, key=lambda d: (d.location.file, d.location.line, d.location.column))
        self.definitions: tuple[Definition, ...] = tuple(defs)
        self.components: dict[str, ComponentDef] = {}
        self.variants: dict[str, VariantDef] = {}
        self.configs: dict[str, VariantConfig] = {}
        self.top_level: set[str] = set()
        # inner component qname -> enclosing component (or variant) qname
        self.parent: dict[str, str] = {}
        # variant-local inner definitions: qname -> owning variant qname
        self.variant_scope: dict[str, str] = {}
        self.shadowed: list[Definition] = []
        for d in self.definitions:
            if isinstance(d, ComponentDef):
                if d.qualified_name in self.components:
                    self.shadowed.append(d)
                    continue
                self.top_level.add(d.qualified_name)
                self._add_component(d.qualified_name, d, None)
            elif isinstance(d, VariantDef):
                if d.qualified_name in self.variants:
                    self.shadowed.append(d)
                    continue
                self.variants[d.qualified_name] = d
                for c in d.inner:
                    q = join(d.qualified_name, c.name)
                    self.variant_scope[q] = d.qualified_name
                    self._add_component(q, c, d.qualified_name)
            else:
                if d.qualified_name in self.configs:
                    self.shadowed.append(d)
                    continue
                self.configs[d.qualified_name] = d

    def _add_component(self, qname: str, comp: ComponentDef, parent: Optional[str]) -> None:
        if qname in self.components:
            # duplicate inner definition names are reported by the symbol table
            return
        self.components[qname] = comp
        if parent is not None:
            self.parent[qname] = parent
        for c in comp.inner:
            self._add_component(join(qname, c.name), c, qname)

    def __repr__(self) -> str:
        return (f"ModelSet({len(self.components)} components, {len(self.variants)} variants, "
                f"{len(self.configs)} configs)")

    # -- lookup -------------------------------------------------------------

    def find_component(self, parts: tuple[str, ...], package: tuple[str, ...] = (),
                       top_level_only: bool = True) -> Optional[tuple[str, int]]:
        """Longest prefix of ``parts`` naming a component, tried relative to
        ``package`` first. Returns ``(qname, segments consumed)``."""
        pool = self.top_level if top_level_only else self.components
        for base in ((package, ()) if package else ((),)):
            for n in range(len(parts), 0, -1):
                q = join(base, parts[:n])
                if q in pool:
                    return q, n
        return None

    def resolve_type(self, scope: Optional[str], type_name: QualifiedName,
                     package: tuple[str, ...] = ()) -> Optional[str]:
        """Qualified name of the component a subcomponent type refers to.

        Inner definitions of the enclosing scopes shadow top-level components,
        then the file's package is tried, then the name as written.
        """
        s = scope
        while s is not None:
            q = join(s, type_name)
            if q in self.components:
                return q
            s = self.parent.get(s) or self.variant_scope.get(s)
        for base in (package, ()):
            q = join(base, type_name)
            if q in self.components:
                return q
        return None

    def instance_type(self, owner: str, inst: Instance, package: tuple[str, ...] = ()) -> Optional[str]:
        if inst.inner is not None:
            return join(owner, inst.name)
        return self.resolve_type(owner, inst.type, package or self.package_of(owner))

    def package_of(self, qname: str) -> tuple[str, ...]:
        root = qname
        while root in self.parent:
            root = self.parent[root]
        if root in self.components:
            return self.components[root].package
        if root in self.variants:
            return self.variants[root].package
        return ()

    @cached_property
    def realized_by(self) -> dict[str, tuple[str, str]]:
        """variant qname -> (owner component qname, variation point name)."""
        out: dict[str, tuple[str, str]] = {}
        for q, v in self.variants.items():
            r = resolve(self, v.realizes, package=v.package)
            if r is not None and r.kind == "variation_point":
                out[q] = (r.owner, r.entity.name)
        return out

    @cached_property
    def variant_registry(self) -> dict[tuple[str, str], dict[str, VariantDef]]:
        """(owner, vp) -> {variant name: definition}; first definition wins."""
        reg: dict[tuple[str, str], dict[str, VariantDef]] = {}
        for q, key in self.realized_by.items():
            v = self.variants[q]
            reg.setdefault(key, {}).setdefault(v.name, v)
        return reg

    def variants_for(self, owner: str, vp: str) -> dict[str, VariantDef]:
        return self.variant_registry.get((owner, vp), {})

    def iter_components(self) -> Iterator[tuple[str, ComponentDef]]:
        return iter(self.components.items())


def resolve(model_set: ModelSet, path: Union[str, QualifiedName],
            package: tuple[str, ...] = ()) -> Optional[Resolved]:
    """Resolve a dotted path against the static component structure.

    The first segments name a top-level component; the following ones walk
    inner definitions and subcomponent instances (through the instance's
    type); the last segment may name a variation point, or a variation point
    followed by one of its variants. Returns ``None`` when nothing matches.
    """
    parts = QualifiedName.of(path).parts
    hit = model_set.find_component(parts, package)
    if hit is None:
        return None
    owner, used = hit
    comp = model_set.components[owner]
    result = Resolved("component", comp, owner)
    rest = parts[used:]
    i = 0
    while i < len(rest):
        seg = rest[i]
        last = i == len(rest) - 1
        inst = next((x for x in comp.instances() if x.name == seg), None)
        vp = comp.variation_point(seg)
        if inst is not None:
            t = model_set.instance_type(owner, inst)
            if t is None:
                return None
            if last:
                return Resolved("subcomponent", inst, owner)
            owner, comp = t, model_set.components[t]
            i += 1
            continue
        if vp is not None:
            if last:
                return Resolved("variation_point", vp, owner)
            if i == len(rest) - 2:
                v = model_set.variants_for(owner, vp.name).get(rest[-1])
                return Resolved("variant", v, owner) if v is not None else None
            return None
        return None
    return result
