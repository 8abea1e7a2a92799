"""Brute-force reference enumeration, used to cross-check ``enumerate_configs``.

It lists every variation point path that any combination of variants could
ever reveal, tries every subset of options at every one of them, and keeps
the assignments that pass each validity rule. Nothing here goes through the
derivation code; the rules are restated directly over the model.
"""

from __future__ import annotations

import itertools
from typing import Optional

from .model import ModelSet, VariantDef, join, split_parametric
from .varspace import SelectionSet, variant_options

Choice = tuple[str, tuple[str, ...]]


def _rename(name: str, binding: dict[str, str]) -> str:
    prefix, base = split_parametric(name)
    if prefix in binding:
        return f"{binding[prefix]}~{base}"
    return name


def _added(ms: ModelSet, owner: str, variant: VariantDef, actuals: tuple[str, ...]):
    """Ports, instances (name -> type) and embedded selections a variant contributes."""
    binding = dict(zip(variant.params, actuals))
    ports = [_rename(p.name, binding) for p in variant.ports]
    instances: list[tuple[str, Optional[str]]] = []
    for s in variant.subcomponents:
        local = join(variant.qualified_name, s.type)
        if local in ms.components:
            t = local
        else:
            t = (ms.resolve_type(owner, s.type, variant.package)
                 or ms.resolve_type(owner, s.type, ms.package_of(owner)))
        instances += [(_rename(n, binding), t) for n in s.names]
    instances += [(c.name, join(variant.qualified_name, c.name)) for c in variant.inner]
    selections = [
        (tuple(_rename(x, binding) for x in s.vp.parts), s.variant,
         tuple(binding.get(a, a) for a in s.actuals))
        for s in variant.selections
    ]
    return ports, instances, selections


def _strip(parts: tuple[str, ...], names: set[str], owner: str, variant: VariantDef) -> Optional[tuple[str, ...]]:
    if parts[0] in names:
        return parts
    for pre in (variant.realizes.parts[:-1], tuple(owner.split(".")), (owner.split(".")[-1],)):
        if pre and len(parts) > len(pre) and parts[:len(pre)] == pre:
            return parts[len(pre):]
    return None


class _Oracle:
    def __init__(self, ms: ModelSet, root: str):
        self.ms = ms
        self.root = root
        self.root_name = root.split(".")[-1]
        self.universe: dict[str, set[Choice]] = {}
        self._added: dict = {}
        self._base: dict = {}
        self.upper: dict[str, int] = {}  # largest max-cardinality seen per path

    def added(self, owner: str, variant: VariantDef, actuals: tuple[str, ...]):
        key = (owner, variant.qualified_name, actuals)
        if key not in self._added:
            self._added[key] = _added(self.ms, owner, variant, actuals)
        return self._added[key]

    def base(self, qname: str):
        """Common ports and (instance, type) pairs of a component."""
        if qname not in self._base:
            comp = self.ms.components[qname]
            self._base[qname] = ([p.name for p in comp.ports],
                                 [(i.name, self.ms.instance_type(qname, i)) for i in comp.instances()])
        return self._base[qname]

    def options(self, owner: str, vp: str) -> list[tuple[VariantDef, Choice]]:
        out = []
        for v in self.ms.variants_for(owner, vp).values():
            out += [(v, c) for c in variant_options(self.ms, v)]
        return out

    def grow(self, qname: str, path: tuple[str, ...], stack: tuple[str, ...]) -> None:
        if qname in stack:
            return
        comp = self.ms.components[qname]
        kids = [(i.name, self.ms.instance_type(qname, i)) for i in comp.instances()]
        for vp in comp.variation_points:
            key = ".".join((self.root_name,) + path + (vp.name,))
            for v, choice in self.options(qname, vp.name):
                self.universe.setdefault(key, set()).add(choice)
                kids += self.added(qname, v, choice[1])[1]
            self.universe.setdefault(key, set())
            self.upper[key] = max(self.upper.get(key, 0), vp.cardinality.max)
        for name, t in kids:
            if t is not None:
                self.grow(t, path + (name,), stack + (qname,))

    def valid(self, assignment: dict[str, frozenset]) -> bool:
        visited: set[str] = set()
        if not self.check(self.root, (), assignment, visited, ()):
            return False
        return all(not cs or key in visited for key, cs in assignment.items())

    def check(self, qname: str, path: tuple[str, ...], a: dict[str, frozenset],
              visited: set[str], stack: tuple[str, ...]) -> bool:
        if qname in stack:
            return False
        comp = self.ms.components[qname]
        ports, kids = (list(x) for x in self.base(qname))
        embedded = []
        chosen: dict[str, set[str]] = {}
        picked: list[tuple[VariantDef, str]] = []
        for vp in comp.variation_points:
            key = ".".join((self.root_name,) + path + (vp.name,))
            visited.add(key)
            choices = a.get(key, frozenset())
            if not vp.cardinality.min <= len(choices) <= vp.cardinality.max:
                return False
            registry = self.ms.variants_for(qname, vp.name)
            for name, actuals in choices:
                v = registry.get(name)
                if v is None or len(v.params) != len(actuals):
                    return False
                p, i, s = self.added(qname, v, actuals)
                ports += p
                kids += i
                embedded += [(v, sel) for sel in s]
                chosen.setdefault(vp.name, set()).add(name)
                picked.append((v, vp.name))
        names = [n for n, _ in kids]
        if len(set(ports)) != len(ports) or len(set(names)) != len(names):
            return False
        for v, (parts, variant, actuals) in embedded:
            rel = _strip(parts, set(names), qname, v)
            if rel is None:
                return False
            key = ".".join((self.root_name,) + path + rel)
            if (variant, actuals) not in a.get(key, frozenset()):
                return False
        for v, _ in picked:
            for clause in v.constraints:
                target = clause.target.parts
                hit = target[-1] in chosen.get(target[-2], set())
                if (clause.kind == "requires") != hit:
                    return False
        for name, t in kids:
            if t is None or not self.check(t, path + (name,), a, visited, stack + (qname,)):
                return False
        return True


def _subsets(options: list[Choice]):
    for k in range(len(options) + 1):
        for combo in itertools.combinations(options, k):
            yield frozenset(combo)


def oracle_enumerate(component: str, model_set: ModelSet) -> list[SelectionSet]:
    """Every valid complete selection set, found by exhaustive search."""
    o = _Oracle(model_set, component)
    o.grow(component, (), ())
    keys = sorted(o.universe)
    found = []
    for combo in itertools.product(*(list(_subsets(sorted(o.universe[k]))) for k in keys)):
        if any(len(c) > o.upper[k] for k, c in zip(keys, combo)):
            continue  # cheap rejection before the full rule check
        assignment = dict(zip(keys, combo))
        if o.valid(assignment):
            found.append(SelectionSet.of(component, assignment))
    return sorted(set(found), key=SelectionSet.render)
