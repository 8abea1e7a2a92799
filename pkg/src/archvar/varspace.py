"""Configuration space of a variable component.

A ``SelectionSet`` records every variant a product uses, including those
pulled in by embedded selections, keyed by the full path of the variation
point (``Root.instance.VP``). Enumeration walks the instance tree top-down,
deciding one variation point at a time and re-deriving after each decision
so variation points revealed by a variant are discovered as they appear.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .model import ModelSet, VariantDef
from .resolution import Derivation, FlatComponent, derive

DEFAULT_LIMIT = 100_000

Choice = tuple[str, tuple[str, ...]]  # (variant name, actual parameters)

# issues that stay once they appear, no matter what is selected later
_MONOTONE = {"MA05", "MA10", "MA13", "MA17", "CC5", "CC6"}


class EnumerationLimitExceeded(Exception):
    def __init__(self, limit: int):
        super().__init__(f"more than {limit} configurations; raise the limit to continue")
        self.limit = limit


def _render_choice(choice: Choice) -> str:
    variant, actuals = choice
    return f"{variant}({', '.join(actuals)})" if actuals else variant


@dataclass(frozen=True)
class SelectionSet:
    """Selected variants per variation point path of one component."""

    component: str
    entries: tuple[tuple[str, tuple[Choice, ...]], ...] = ()

    @classmethod
    def of(cls, component: str, mapping: Mapping[str, Iterable[Choice]]) -> "SelectionSet":
        entries = []
        for path, choices in mapping.items():
            norm = tuple(sorted({(v, tuple(a)) for v, a in choices}))
            if norm:
                entries.append((path, norm))
        return cls(component, tuple(sorted(entries)))

    @classmethod
    def parse_mapping(cls, component: str, mapping: Mapping[str, Iterable[str]]) -> "SelectionSet":
        """Build from plain variant names, e.g. ``{"Car.LockController": ["FourDoorsLock"]}``."""
        return cls.of(component, {p: [(v, ()) for v in vs] for p, vs in mapping.items()})

    def as_dict(self) -> dict[str, tuple[Choice, ...]]:
        return dict(self.entries)

    def __len__(self) -> int:
        return sum(len(c) for _, c in self.entries)

    def render(self) -> str:
        parts = [f"{path} := {_render_choice(c)}" for path, choices in self.entries for c in choices]
        return "{" + ", ".join(parts) + "}"

    def __str__(self) -> str:
        return self.render()

    def derivation_selections(self) -> list[tuple[tuple[str, ...], str, str, tuple]]:
        """``(instance path, vp, variant, actuals)`` tuples for ``derive``."""
        out = []
        for path, choices in self.entries:
            parts = tuple(path.split("."))[1:]  # drop the root name
            for variant, actuals in choices:
                out.append((parts[:-1], parts[-1], variant, actuals))
        return out

    def derive(self, model_set: ModelSet, *, complete: bool = True,
               constraints: bool = True) -> tuple[FlatComponent, Derivation]:
        return derive(model_set, self.component, self.derivation_selections(),
                      complete=complete, constraints=constraints)


def effective_selections(component: str, flat: FlatComponent) -> SelectionSet:
    """Everything actually applied in a derived architecture."""
    mapping: dict[str, list[Choice]] = {}
    for _, comp in flat.walk():
        for s in comp.applied:
            mapping.setdefault(s.vp, []).append((s.variant, s.actuals))
    return SelectionSet.of(component, mapping)


# -- constraints and completeness ---------------------------------------------------

@dataclass(frozen=True)
class ConstraintViolation:
    kind: str  # "requires" or "excludes"
    vp: str  # path of the constrained variation point
    variant: str
    target_vp: str
    target_variant: str

    def __str__(self) -> str:
        verb = "requires" if self.kind == "requires" else "excludes"
        return f"{self.variant} at {self.vp} {verb} {self.target_variant} at {self.target_vp}"


def check_constraints(selection: SelectionSet, model_set: ModelSet) -> list[ConstraintViolation]:
    """Requires/excludes violations among the selected variants.

    Embedded selections of the chosen variants count as selected too.
    Constraints match on variant names; actual parameters are ignored.
    """
    flat, _ = selection.derive(model_set, complete=False, constraints=False)
    out: list[ConstraintViolation] = []
    for _, comp in flat.walk():
        chosen: dict[str, set[str]] = {}
        for s in comp.applied:
            chosen.setdefault(s.vp.rsplit(".", 1)[-1], set()).add(s.variant)
        prefix = comp.applied[0].vp.rsplit(".", 1)[0] if comp.applied else ""
        for s in comp.applied:
            vp_name = s.vp.rsplit(".", 1)[-1]
            variant = model_set.variants_for(comp.type, vp_name).get(s.variant)
            if variant is None:
                continue
            for clause in variant.constraints:
                parts = clause.target.parts
                if len(parts) < 2:
                    continue
                hit = parts[-1] in chosen.get(parts[-2], set())
                if (clause.kind == "requires") != hit:
                    out.append(ConstraintViolation(clause.kind, s.vp, s.variant, f"{prefix}.{parts[-2]}", parts[-1]))
    return sorted(set(out), key=str)


def is_complete(selection: SelectionSet, component: str, model_set: ModelSet) -> tuple[bool, list[str]]:
    """Whether every reachable required variation point is decided within bounds.

    Returns the verdict and the paths of undecided variation points.
    """
    if selection.component != component:
        selection = SelectionSet(component, selection.entries)
    _, d = selection.derive(model_set, complete=True, constraints=False)
    missing = sorted(d.missing)
    bad_count = any(i.code == "MA10" for i in d.issues)
    return not missing and not bad_count, missing


# -- enumeration ------------------------------------------------------------------------

def _known_actuals(model_set: ModelSet) -> dict[tuple[str, int], set[tuple[str, ...]]]:
    """Actual-parameter tuples used anywhere in the model set, keyed by (variant, arity)."""
    found: dict[tuple[str, int], set[tuple[str, ...]]] = {}
    for cfg in model_set.configs.values():
        for s in cfg.selections:
            if s.actuals:
                found.setdefault((s.variant, len(s.actuals)), set()).add(s.actuals)
    for v in model_set.variants.values():
        for s in v.selections:
            if s.actuals and not set(s.actuals) & set(v.params):
                found.setdefault((s.variant, len(s.actuals)), set()).add(s.actuals)
    return found


def variant_options(model_set: ModelSet, variant: VariantDef,
                    known: Optional[dict] = None) -> list[Choice]:
    """Ways to select one variant: once, or once per known actuals tuple if parametrized."""
    if not variant.params:
        return [(variant.name, ())]
    known = _known_actuals(model_set) if known is None else known
    tuples = known.get((variant.name, len(variant.params)))
    if not tuples:
        return [(variant.name, tuple(variant.params))]
    return [(variant.name, t) for t in sorted(tuples)]


@dataclass
class _Search:
    model_set: ModelSet
    component: str
    limit: int
    known: dict = field(default_factory=dict)
    results: set = field(default_factory=set)

    def options(self, owner: str, vp: str) -> list[Choice]:
        out: list[Choice] = []
        for name in sorted(self.model_set.variants_for(owner, vp)):
            out += variant_options(self.model_set, self.model_set.variants_for(owner, vp)[name], self.known)
        return out

    def explore(self, explicit: dict[tuple[tuple[str, ...], str], frozenset]) -> None:
        selections = [(path, vp, v, a) for (path, vp), cs in explicit.items() for v, a in sorted(cs)]
        flat, d = derive(self.model_set, self.component, selections, complete=False, constraints=False)
        if any(i.code in _MONOTONE for i in d.issues):
            return
        open_vps = sorted((k for k in d.visited if k not in explicit), key=lambda k: (len(k[0]), k))
        if not open_vps:
            self.finish(selections)
            return
        path, vp_name = open_vps[0]
        node = flat
        for seg in path:
            node = node.child(seg)
        vp = self.model_set.components[node.type].variation_point(vp_name)
        forced = {(s.variant, s.actuals) for s in node.applied if s.vp.rsplit(".", 1)[-1] == vp_name}
        free = [c for c in self.options(node.type, vp_name) if c not in forced]
        lo = max(vp.cardinality.min - len(forced), 0)
        hi = vp.cardinality.max - len(forced)
        for k in range(lo, min(hi, len(free)) + 1):
            for extra in itertools.combinations(free, k):
                self.explore({**explicit, (path, vp_name): frozenset(extra)})

    def finish(self, selections) -> None:
        flat, d = derive(self.model_set, self.component, selections, complete=True, constraints=True)
        if d.issues:
            return
        self.results.add(effective_selections(self.component, flat))
        if len(self.results) > self.limit:
            raise EnumerationLimitExceeded(self.limit)


def enumerate_configs(component: str, model_set: ModelSet, limit: int = DEFAULT_LIMIT) -> list[SelectionSet]:
    """All valid complete selection sets of ``component``, sorted by rendered text.

    Raises ``EnumerationLimitExceeded`` once more than ``limit`` are found.
    """
    if component not in model_set.components:
        raise KeyError(component)
    search = _Search(model_set, component, limit, _known_actuals(model_set))
    search.explore({})
    return sorted(search.results, key=SelectionSet.render)
