import json
from pathlib import Path

import jsonschema
import pydot
import pytest

from archvar.export import from_json, render, to_dot, to_json
from archvar.parser import load_texts
from archvar.resolution import FlatArchitecture, FlatComponent, flatten, flatten_component
from fixtures import DOOR

SCHEMA = json.loads((Path(__file__).resolve().parent.parent / "docs" / "flat_architecture.schema.json").read_text())


@pytest.fixture(scope="module")
def four_windows(corpus):
    return flatten(corpus.configs["FourWindowSystem"], corpus)


def test_json_structure(four_windows):
    data = json.loads(to_json(four_windows))
    assert list(data) == ["name", "type", "ports", "children", "edges", "appliedVariants"]
    assert len(data["ports"]) == 5 and len(data["children"]) == 5
    assert [c["name"] for c in data["children"]] == sorted(c["name"] for c in data["children"])
    assert data["edges"] == sorted(data["edges"], key=lambda e: (e["from"], e["to"]))
    assert data["appliedVariants"] == [
        {"variationPoint": "WindowSystem.MoreWindows", "variant": "FourWindows", "actuals": []}]


def test_json_format_details(four_windows):
    text = to_json(four_windows)
    assert text.endswith("}\n") and '\n  "name"' in text


def test_empty_component_json():
    text = to_json(FlatArchitecture(FlatComponent("Empty", "Empty")))
    assert json.loads(text) == {"name": "Empty", "type": "Empty", "ports": [], "children": [], "edges": [],
                                "appliedVariants": []}


def test_json_round_trip_is_byte_identical(four_windows):
    text = to_json(four_windows)
    assert to_json(from_json(text)) == text


def test_json_is_byte_stable(corpus):
    outs = {to_json(flatten(corpus.configs["FourWindowSystem"], corpus)) for _ in range(3)}
    assert len(outs) == 1


def test_json_matches_schema(four_windows, corpus):
    jsonschema.validate(json.loads(to_json(four_windows)), SCHEMA)
    jsonschema.validate(json.loads(to_json(flatten_component("LockControlUnit", corpus))), SCHEMA)


def test_parametric_names_are_verbatim_in_json():
    ms, _ = load_texts(DOOR)
    text = to_json(flatten(ms.configs["BothSides"], ms))
    assert '"left~req"' in text and '"right~winder"' in text


def parse_dot(text):
    (graph,) = pydot.graph_from_dot_data(text)
    return graph


def clusters(graph):
    return [g for g in graph.get_subgraphs() if g.get_name().strip('"').startswith("cluster_")]


def test_dot_four_window_clusters(four_windows):
    graph = parse_dot(to_dot(four_windows))
    (root,) = clusters(graph)
    assert len(clusters(root)) == 5
    assert len(graph.get_edges()) == 13


def test_dot_lock_control_unit(corpus):
    graph = parse_dot(to_dot(flatten_component("LockControlUnit", corpus)))
    (root,) = clusters(graph)
    assert len(clusters(root)) == 2
    assert len(graph.get_edges()) == 4  # one explicit, three implicit


def test_dot_empty_component():
    graph = parse_dot(to_dot(FlatArchitecture(FlatComponent("Empty", "Empty"))))
    (root,) = clusters(graph)
    assert clusters(root) == [] and root.get_nodes() == []


def test_dot_escapes_tilde():
    ms, _ = load_texts(DOOR)
    text = to_dot(flatten(ms.configs["BothSides"], ms))
    assert "Door.left%7Ereq" in text
    assert "~" not in "".join(line.split("label=")[0] for line in text.splitlines())
    parse_dot(text)


def test_dot_is_deterministic(four_windows):
    assert to_dot(four_windows) == to_dot(four_windows)


def test_render_rejects_unknown_format(four_windows):
    with pytest.raises(ValueError):
        render(four_windows, "svg")
