import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from archvar.oracle import oracle_enumerate
from archvar.parser import load_texts
from archvar.randomgen import random_model
from archvar.varspace import (
    EnumerationLimitExceeded, SelectionSet, check_constraints, effective_selections, enumerate_configs,
    is_complete,
)
from fixtures import DOOR, with_corpus
from mutants import mutate


def rendered(sets):
    return [s.render() for s in sets]


def test_window_system_space(corpus):
    assert rendered(enumerate_configs("WindowSystem", corpus)) == [
        "{WindowSystem.MoreWindows := FourWindows, WindowSystem.WindowWatchDog.MoreWindowsDog := FourWindowsDog}",
        "{WindowSystem.WindowWatchDog.MoreWindowsDog := FourWindowsDog}",
        "{}",
    ]


def test_car_space_excludes_windows_without_locks(corpus):
    configs = enumerate_configs("Car", corpus)
    assert len(configs) == 3
    tops = [{p: c for p, c in s.entries if p.count(".") == 1} for s in configs]
    assert {"Car.WindowController": (("FourWindowVehicle", ()),)} not in tops


def test_vp_free_component_has_one_config(corpus):
    assert rendered(enumerate_configs("LockControlUnit", corpus)) == ["{}"]


@pytest.mark.parametrize("root", ["WindowSystem", "Car", "LockControlUnit", "WindowSystem.WindowWatchDog"])
def test_oracle_agrees_on_corpus(corpus, root):
    assert enumerate_configs(root, corpus) == oracle_enumerate(root, corpus)


def test_parametrized_variant_uses_known_actuals():
    ms, _ = load_texts(DOOR)
    got = rendered(enumerate_configs("Door", ms))
    assert got == rendered(oracle_enumerate("Door", ms))
    assert "{Door.Winders := Side(left), Door.Winders := Side(right)}" in got
    assert len(got) == 4


def test_parametrized_variant_without_uses_gets_a_placeholder():
    texts = {k: v for k, v in DOOR.items() if "BothSides" not in k}
    ms, _ = load_texts(texts)
    assert rendered(enumerate_configs("Door", ms)) == ["{Door.Winders := Side(pos)}", "{}"]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_oracle_agrees_on_random_models(seed):
    ms = random_model(random.Random(seed)).load()
    assert enumerate_configs("Root", ms) == oracle_enumerate("Root", ms)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.data())
def test_constraints_never_grow_the_space(seed, data):
    model = random_model(random.Random(seed))
    cands = model.constraint_candidates()
    if not cands:
        return
    index, target = data.draw(st.sampled_from(cands))
    kind = data.draw(st.sampled_from(["requires", "excludes"]))
    before = enumerate_configs("Root", model.load())
    after = enumerate_configs("Root", model.with_constraint(index, kind, target).load())
    assert set(after) <= set(before)


def test_enumerated_sets_are_complete_and_consistent(corpus):
    for root in ("WindowSystem", "Car"):
        for s in enumerate_configs(root, corpus):
            assert check_constraints(s, corpus) == []
            assert is_complete(s, root, corpus) == (True, [])
            _, d = s.derive(corpus)
            assert d.issues == []


def test_rejected_assignments_fail_derivation():
    rng = random.Random(11)
    for _ in range(30):
        ms = random_model(rng).load()
        valid = set(enumerate_configs("Root", ms))
        options = sorted({(p, c) for s in oracle_enumerate("Root", ms) for p, cs in s.entries for c in cs})
        for k in range(min(3, len(options)) + 1):
            for combo in itertools.combinations(options, k):
                mapping = {}
                for p, c in combo:
                    mapping.setdefault(p, []).append(c)
                cand = SelectionSet.of("Root", mapping)
                if cand in valid:
                    continue
                flat, d = cand.derive(ms)
                assert d.issues or effective_selections("Root", flat) != cand


def test_limit_guard(corpus):
    with pytest.raises(EnumerationLimitExceeded):
        enumerate_configs("WindowSystem", corpus, limit=2)
    assert len(enumerate_configs("WindowSystem", corpus, limit=3)) == 3


# -- constraints and completeness ------------------------------------------------------------

def test_windows_without_locks_violates_requires(corpus):
    s = SelectionSet.parse_mapping("Car", {"Car.WindowController": ["FourWindowVehicle"]})
    (v,) = check_constraints(s, corpus)
    assert (v.kind, v.variant, v.target_vp, v.target_variant) == (
        "requires", "FourWindowVehicle", "Car.LockController", "FourDoorsLock")


def test_empty_selection_has_no_violations(corpus):
    assert check_constraints(SelectionSet("Car"), corpus) == []


TWO_VPS = {
    "S.arc": "component S { variationPoint: A [0..1]; variationPoint: B [0..1]; }",
    "V1.archv": "variant V1 realizes S.A excludes B.V2 { }",
    "V2.archv": "variant V2 realizes S.B { }",
}


@pytest.mark.parametrize("a,b", list(itertools.product([False, True], repeat=2)))
def test_excludes_truth_table(a, b):
    ms, _ = load_texts(TWO_VPS)
    mapping = {}
    if a:
        mapping["S.A"] = ["V1"]
    if b:
        mapping["S.B"] = ["V2"]
    violations = check_constraints(SelectionSet.parse_mapping("S", mapping), ms)
    assert len(violations) == (1 if a and b else 0)
    if violations:
        assert violations[0].kind == "excludes"


def test_excludes_space_matches_truth_table():
    ms, _ = load_texts(TWO_VPS)
    assert len(enumerate_configs("S", ms)) == 3


def test_four_window_selection_is_complete(corpus):
    s = SelectionSet.parse_mapping("WindowSystem", {"WindowSystem.MoreWindows": ["FourWindows"]})
    assert is_complete(s, "WindowSystem", corpus) == (True, [])


def test_empty_selection_is_complete_when_everything_is_optional(corpus):
    assert is_complete(SelectionSet("WindowSystem"), "WindowSystem", corpus) == (True, [])


def test_required_point_left_open_is_reported():
    ms, _ = load_texts(mutate("CC1"))
    assert is_complete(SelectionSet("WindowSystem"), "WindowSystem", ms) == (False, ["WindowSystem.MoreWindows"])


def test_selection_set_rendering_and_order():
    s = SelectionSet.of("R", {"R.b": [("Y", ("q",)), ("X", ())], "R.a": [("Z", ())]})
    assert s.render() == "{R.a := Z, R.b := X, R.b := Y(q)}"
    assert len(s) == 3


def test_enumeration_is_deterministic():
    ms1, _ = load_texts(with_corpus({}))
    ms2, _ = load_texts(dict(reversed(list(with_corpus({}).items()))))
    assert rendered(enumerate_configs("Car", ms1)) == rendered(enumerate_configs("Car", ms2))
