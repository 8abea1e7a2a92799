"""Small random variable models for property tests and cross-checks.

Each fixture has a root component ``Root`` with one or two variation points,
optionally a common subcomponent with its own variation point, and variants
that may add a further subcomponent, embed selections for subcomponents,
carry requires/excludes clauses, take a parameter, or collide on a port name.
At most four variation point paths exist, with at most three variants each.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Optional

from .parser import load_texts
from .model import ModelSet


@dataclass(frozen=True)
class GenVariant:
    name: str
    owner: str
    vp: str
    params: tuple[str, ...] = ()
    ports: tuple[str, ...] = ()
    subcomponent: Optional[tuple[str, str]] = None  # (type, instance name)
    selections: tuple[tuple[str, str], ...] = ()  # (path relative to owner, variant)
    constraints: tuple[tuple[str, str], ...] = ()  # (kind, "VP.Variant")

    def render(self) -> str:
        head = f"variant {self.name}"
        if self.params:
            head += f"({', '.join(self.params)})"
        head += f" realizes {self.owner}.{self.vp}"
        for kind, target in self.constraints:
            head += f" {kind} {target}"
        lines = [head + " {"]
        if self.ports:
            lines.append("  port")
            lines += [f"    in Signal {p}{';' if i == len(self.ports) - 1 else ','}"
                      for i, p in enumerate(self.ports)]
        if self.subcomponent:
            lines.append(f"  component {self.subcomponent[0]} {self.subcomponent[1]};")
        lines += [f"  {path} realizedBy {v};" for path, v in self.selections]
        return "\n".join(lines + ["}"]) + "\n"


@dataclass(frozen=True)
class GenModel:
    components: dict[str, str]  # name -> source text
    variants: tuple[GenVariant, ...]
    configs: dict[str, str] = field(default_factory=dict)

    def texts(self) -> dict[str, str]:
        out = {f"gen/{n}.arc": t for n, t in self.components.items()}
        out.update({f"gen/{v.name}.archv": v.render() for v in self.variants})
        out.update({f"gen/{n}.archv": t for n, t in self.configs.items()})
        return out

    def load(self) -> ModelSet:
        ms, diags = load_texts(self.texts())
        assert not diags, diags
        return ms

    def constraint_candidates(self) -> list[tuple[int, str]]:
        """(variant index, "VP.Variant") pairs that make a same-level constraint."""
        out = []
        for i, v in enumerate(self.variants):
            for w in self.variants:
                if w.owner == v.owner and w.name != v.name and f"{w.vp}.{w.name}" not in dict(
                        (t, k) for k, t in v.constraints):
                    out.append((i, f"{w.vp}.{w.name}"))
        return out

    def with_constraint(self, index: int, kind: str, target: str) -> "GenModel":
        vs = list(self.variants)
        vs[index] = replace(vs[index], constraints=vs[index].constraints + ((kind, target),))
        return replace(self, variants=tuple(vs))


def _component(name: str, vps: list[tuple[str, int, int]], subs: list[tuple[str, str]]) -> str:
    lines = [f"component {name} {{"]
    lines += [f"  component {t} {n};" for t, n in subs]
    lines += [f"  variationPoint: {vp} [{lo}..{hi}];" for vp, lo, hi in vps]
    return "\n".join(lines + ["}"]) + "\n"


def _cardinality(rng: random.Random) -> tuple[int, int]:
    return rng.choice([(0, 1), (0, 1), (1, 1), (0, 2), (1, 2), (0, 3)])


def random_model(rng: random.Random) -> GenModel:
    counter = iter(range(1, 100))
    variants: list[GenVariant] = []
    leaf_vps: dict[str, str] = {}
    components: dict[str, str] = {}

    def leaf(type_name: str) -> None:
        vp = f"{type_name}Opt"
        leaf_vps[type_name] = vp
        lo, hi = _cardinality(rng)
        components[type_name] = _component(type_name, [(vp, lo, hi)], [])
        for _ in range(rng.randint(1, 3)):
            n = next(counter)
            variants.append(GenVariant(f"V{n}", type_name, vp, ports=(f"p{n}",)))

    root_vps = [f"RootVp{i}" for i in range(rng.randint(1, 2))]
    common = rng.random() < 0.5
    added = rng.random() < 0.6 and len(root_vps) + common < 4
    subs = []
    if common:
        leaf("LeafA")
        subs.append(("LeafA", "a"))
    if added:
        leaf("LeafB")
    components["Root"] = _component("Root", [(vp, *_cardinality(rng)) for vp in root_vps], subs)

    leaf_variants = {t: [v.name for v in variants if v.owner == t] for t in leaf_vps}
    for vp in root_vps:
        for _ in range(rng.randint(1, 3)):
            n = next(counter)
            port = "shared" if rng.random() < 0.15 else f"p{n}"
            v = GenVariant(f"V{n}", "Root", vp, ports=(port,))
            if rng.random() < 0.15:
                v = replace(v, params=("pos",), ports=(f"pos~{port}",))
            sels = []
            if added and rng.random() < 0.5:
                inst = f"b{n}" if rng.random() < 0.7 else "b"
                v = replace(v, subcomponent=("LeafB", inst))
                if rng.random() < 0.5:
                    sels.append((f"{inst}.{leaf_vps['LeafB']}", rng.choice(leaf_variants["LeafB"])))
            if common and rng.random() < 0.3:
                sels.append((f"a.{leaf_vps['LeafA']}", rng.choice(leaf_variants["LeafA"])))
            variants.append(replace(v, selections=tuple(sels)))

    configs = {}
    for v in variants:
        if v.params:
            for actual in rng.sample(["left", "right", "rear"], rng.randint(0, 2)):
                configs[f"Use{v.name}{actual}"] = (f"abstract variantConfig Use{v.name}{actual} for Root {{\n"
                                                   f"  Root.{v.vp} realizedBy {v.name}({actual});\n}}\n")
    model = GenModel(components, tuple(variants), configs)

    for _ in range(rng.randint(0, 2)):
        cands = model.constraint_candidates()
        if cands:
            i, target = rng.choice(cands)
            model = model.with_constraint(i, rng.choice(["requires", "excludes"]), target)
    return model
