import pytest
from hypothesis import given, strategies as st

from archvar.model import (
    Cardinality, PortDecl, PortRef, QualifiedName, is_valid_name, join, resolve, split_parametric,
)

idents = st.from_regex(r"[A-Za-z][A-Za-z0-9]{0,6}", fullmatch=True)


def test_qualified_name_round_trip():
    q = QualifiedName.parse("a.b.C")
    assert q.parts == ("a", "b", "C") and str(q) == "a.b.C" and q.last == "C" and len(q) == 3


def test_qualified_name_rejects_empty():
    with pytest.raises(ValueError):
        QualifiedName(())


def test_join_skips_empty_fragments():
    assert join("", ("a", "b"), None, QualifiedName.parse("c.d"), "e") == "a.b.c.d.e"


@given(idents, idents)
def test_split_parametric(prefix, base):
    assert split_parametric(f"{prefix}~{base}") == (prefix, base)
    assert split_parametric(base) == (None, base)
    assert is_valid_name(f"{prefix}~{base}")


def test_invalid_names():
    assert not is_valid_name("~x")
    assert not is_valid_name("1abc")


@pytest.mark.parametrize("lo,hi", [(-1, 1), (2, 1), (0, 0)])
def test_cardinality_bounds_validated(lo, hi):
    with pytest.raises(ValueError):
        Cardinality(lo, hi)


def test_default_cardinality_is_exactly_one():
    assert str(Cardinality()) == "[1..1]"


def test_port_direction_validated():
    with pytest.raises(ValueError):
        PortDecl("inout", "T", "x")


def test_port_ref_parse():
    assert PortRef.parse("a.b") == PortRef("a", "b")
    assert PortRef.parse("b") == PortRef(None, "b")
    assert str(PortRef("a", "b")) == "a.b"


def test_resolve_variation_points(corpus):
    r = resolve(corpus, "WindowSystem.MoreWindows")
    assert r.kind == "variation_point" and r.entity.name == "MoreWindows"
    assert (r.entity.location.line, r.entity.location.column) == (33, 3)
    r = resolve(corpus, "WindowSystem.WindowWatchDog.MoreWindowsDog")
    assert r.kind == "variation_point" and r.owner == "WindowSystem.WindowWatchDog"
    assert (r.entity.location.line, r.entity.location.column) == (17, 5)


def test_resolve_variant_and_instances(corpus):
    assert resolve(corpus, "Car.LockController.FourDoorsLock").kind == "variant"
    assert resolve(corpus, "WindowSystem.driverWinder").kind == "subcomponent"
    assert resolve(corpus, "WindowSystem").kind == "component"


def test_resolve_missing(corpus):
    assert resolve(corpus, "NoSuchThing") is None
    assert resolve(corpus, "WindowSystem.NoSuchVP") is None


def test_model_set_indexes_corpus(corpus):
    assert set(corpus.components) == {
        "Car", "LockActuator", "LockControlUnit", "LockController", "WindowSystem",
        "WindowSystem.WindowWatchDog", "WindowWinder",
    }
    assert set(corpus.variants) == {"FourDoorsLock", "FourWindowVehicle", "FourWindows", "FourWindowsDog"}
    assert set(corpus.configs) == {"FourWindowSystem"}
    assert corpus.realized_by["FourWindowsDog"] == ("WindowSystem.WindowWatchDog", "MoreWindowsDog")
