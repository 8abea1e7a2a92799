import json
import subprocess
import sys

import pytest

from archvar.cli import main
from mutants import CORPUS, MUTANTS, mutate


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write_tree(tmp_path, texts):
    for path, text in texts.items():
        target = tmp_path / path.replace(str(CORPUS) + "/", "")
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text)
    return str(tmp_path)


def test_check_valid_corpus(capsys):
    assert run(["check", str(CORPUS)], capsys) == (0, "", "")


@pytest.mark.parametrize("code", ["CC1", "CC5", "MA06", "MA17"])
def test_check_mutant_exits_one(tmp_path, capsys, code):
    status, out, _ = run(["check", write_tree(tmp_path, mutate(code))], capsys)
    assert status == 1
    assert f"error {code}:" in out
    line = out.splitlines()[0]
    path, lineno, col, rest = line.split(":", 3)
    assert lineno.isdigit() and col.isdigit() and rest.startswith(" error")


def test_syntax_errors_stop_before_semantic_checks(tmp_path, capsys):
    (tmp_path / "A.arc").write_text("component A { connect -> ; component Nope; }")
    status, out, _ = run(["check", str(tmp_path)], capsys)
    assert status == 1 and "SYN01" in out and "MA05" not in out


def test_flatten_json(capsys):
    status, out, err = run(["flatten", "--config", "FourWindowSystem", str(CORPUS)], capsys)
    assert status == 0 and err == ""
    data = json.loads(out)
    assert len(data["ports"]) == 5 and len(data["children"]) == 5


def test_flatten_dot_to_file(tmp_path, capsys):
    target = tmp_path / "out.dot"
    status, out, _ = run(["flatten", "--config", "FourWindowSystem", "--format", "dot", "-o", str(target),
                          str(CORPUS)], capsys)
    assert status == 0 and out == "" and target.read_text().startswith("digraph")


def test_export_needs_format(capsys):
    status, _, err = run(["export", "--config", "FourWindowSystem", str(CORPUS)], capsys)
    assert status == 2 and len(err.strip().splitlines()) == 1
    status, out, _ = run(["export", "--config", "FourWindowSystem", "--format", "json", str(CORPUS)], capsys)
    assert status == 0 and json.loads(out)["name"] == "WindowSystem"


def test_flatten_abstract_config_fails(tmp_path, capsys):
    texts = mutate("MA15")
    texts.pop(str(CORPUS / "OtherWindows.archv"))
    status, _, err = run(["flatten", "--config", "BaseWindows", write_tree(tmp_path, texts)], capsys)
    assert status == 1 and "abstract" in err


def test_enumerate(capsys):
    assert run(["enumerate", "--component", "WindowSystem", "--count-only", str(CORPUS)], capsys)[:2] == (0, "3\n")
    status, out, _ = run(["enumerate", "--component", "Car", str(CORPUS)], capsys)
    assert status == 0 and len(out.splitlines()) == 3 and out.splitlines()[-1] == "{}"


def test_enumerate_limit(capsys):
    status, _, err = run(["enumerate", "--component", "WindowSystem", "--limit", "1", str(CORPUS)], capsys)
    assert status == 1 and "more than 1" in err


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate", str(CORPUS)],
    ["check"],
    ["check", "/no/such/dir"],
    ["flatten", str(CORPUS)],
    ["flatten", "--config", "FourWindowSystem", "--format", "svg", str(CORPUS)],
    ["flatten", "--config", "NoSuchConfig", str(CORPUS)],
    ["enumerate", "--component", "NoSuchComponent", str(CORPUS)],
    ["enumerate", "--component", "WindowSystem", "--limit", "zero", str(CORPUS)],
])
def test_usage_errors(capsys, argv):
    status, out, err = run(argv, capsys)
    assert status == 2 and out == ""
    assert len(err.strip().splitlines()) == 1


def test_every_mutant_fails_check(tmp_path, capsys):
    for code in MUTANTS:
        root = tmp_path / code
        root.mkdir()
        assert run(["check", write_tree(root, mutate(code))], capsys)[0] == 1, code


def test_color_env(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("ARCHVAR_COLOR", "always")
    _, out, _ = run(["check", write_tree(tmp_path, mutate("CC5"))], capsys)
    assert "\x1b[31m" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "archvar", "enumerate", "--component", "WindowSystem",
                           "--count-only", str(CORPUS)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "3\n"
