import re
from pathlib import Path

import pytest

from aias.cli import main, print_report
from aias.corpus import artifact_files
from aias.graph import graph_isomorphic
from aias.shapes import ERROR, WARNING, ValidationReport, ValidationResult
from aias.terms import Iri
from aias.turtle import parse_turtle
from aias.vocab import SCHEMA_NAMES, schema_text


@pytest.fixture
def ex(tmp_path):
    assert main(["example", "stamping", "-o", str(tmp_path)]) == 0
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def drop_line(path: Path, needle: str) -> Path:
    text = path.read_text()
    lines = text.splitlines(keepends=True)
    target = next(i for i, l in enumerate(lines) if needle in l)
    mutated = path.with_name("mutated.ttl")
    # the dropped object may end a ';' group; re-terminate the block
    kept = lines[:target] + lines[target + 1 :]
    mutated.write_text("".join(kept))
    return mutated


def test_example_writes_artifact_set(ex):
    for name, content in artifact_files().items():
        assert (ex / name).read_text() == content


def test_validate(ex, capsys, tmp_path):
    code, out, _ = run(capsys, "validate", str(ex / "stamping.ttl"))
    assert code == 0 and "63 triples" in out
    bad = tmp_path / "garbage.ttl"
    bad.write_text("@prefix e: <http://e/> .\ne:a e:p\n")
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 1 and out == ""
    assert re.search(r"garbage\.ttl:\d+:\d+: ", err)


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/x.ttl")
    assert code == 1 and "no such file" in err


@pytest.mark.parametrize("argv", [["frob"], ["query", "x.ttl"], ["check", "x.ttl"], ["--prefix", "bad", "lint", "x"], ["example", "other", "-o", "d"], []])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3 and err


def test_query_closure_and_raw(ex, capsys):
    code, out, _ = run(capsys, "query", str(ex / "stamping.ttl"), "--query", str(ex / "q1_typed.rq"))
    assert code == 0
    assert "ex:Cloud1" in out and out.rstrip().endswith("(1 row)")
    code, out, _ = run(capsys, "query", str(ex / "stamping.ttl"), "--query", str(ex / "q1_typed.rq"), "--no-inference", "--format", "tsv")
    assert code == 0 and out == "assignment\tcomponent\n"


def test_query_parse_error_has_position(ex, capsys):
    (ex / "bad.rq").write_text("SELECT ?x WHERE { }")
    code, _, err = run(capsys, "query", str(ex / "stamping.ttl"), "--query", str(ex / "bad.rq"))
    assert code == 1 and re.search(r"bad\.rq:1:\d+: empty WHERE", err)


def test_check_and_report_ttl(ex, capsys, tmp_path):
    report = tmp_path / "report.ttl"
    code, out, _ = run(capsys, "check", str(ex / "stamping.ttl"), "--shapes", str(ex / "communication.shapes.ttl"), "--report-ttl", str(report))
    assert code == 0 and out == "conforms: true\n"
    assert "sh:conforms true" in report.read_text()
    mutated = drop_line(ex / "stamping.ttl", "AIAS:communicatesWith ex:Cloud1")
    code, out, _ = run(capsys, "check", str(mutated), "--shapes", str(ex / "communication.shapes.ttl"))
    assert code == 2
    lines = out.splitlines()
    assert lines[0] == "conforms: false" and len(lines) == 2
    assert lines[1].startswith("ERROR focus=ex:Comm_EC path=AIAS:communicatesWith")


def test_lint(ex, capsys):
    code, out, _ = run(capsys, "lint", str(ex / "stamping.ttl"))
    assert (code, out) == (0, "conforms: true\n")
    mutated = drop_line(ex / "stamping.ttl", "AIAS:communicatesWith ex:Controller1")
    code, out, _ = run(capsys, "lint", str(mutated))
    assert code == 2 and "check=L1" in out


def test_infer_idempotent_and_byte_stable(ex, capsys, tmp_path):
    code, first, err = run(capsys, "infer", str(ex / "stamping.ttl"), "--rules", str(ex / "stamping.rules"))
    assert code == 0 and re.match(r"inferred \d+ triples", err)
    code, second, _ = run(capsys, "infer", str(ex / "stamping.ttl"), "--rules", str(ex / "stamping.rules"))
    assert second == first
    closed = tmp_path / "closed.ttl"
    assert main(["infer", str(ex / "stamping.ttl"), "--rules", str(ex / "stamping.rules"), "-o", str(closed)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "infer", str(closed), "--rules", str(ex / "stamping.rules"), "-o", str(tmp_path / "again.ttl"))
    assert out.startswith("inferred 0 triples")
    assert graph_isomorphic(parse_turtle(closed.read_text()), parse_turtle(first))


def test_export_schema(capsys, tmp_path):
    assert main(["export-schema", "-o", str(tmp_path)]) == 0
    for name in SCHEMA_NAMES:
        assert (tmp_path / f"{name}.ttl").read_text() == schema_text(name)
    other = "http://other.example/aias#"
    assert main(["--prefix", f"AIAS={other}", "export-schema", "aias", "-o", str(tmp_path / "o")]) == 0
    g = parse_turtle((tmp_path / "o" / "aias.ttl").read_text())
    assert any(t.subject.value.startswith(other) for t in g)


def test_prefix_override_changes_lint_targets(ex, capsys):
    # with AIAS moved elsewhere the corpus's AIAS terms are foreign, so nothing is a communication partner
    code, out, _ = run(capsys, "--prefix", "AIAS=http://other.example/aias#", "lint", str(ex / "stamping.ttl"))
    assert code == 2 and out.count("check=L1") == 3


def test_print_report():
    assert print_report(ValidationReport()) == "conforms: true\n"
    p = Iri("http://e/p")
    results = [
        ValidationResult(Iri("http://e/a"), p, "minCount", 1, 0, "missing", WARNING, "L3"),
        ValidationResult(Iri("http://e/b"), p, "minCount", 2, 1, "too few", ERROR, "L1"),
    ]
    text = print_report(ValidationReport(results), {"e": "http://e/"})
    assert text == "conforms: false\nWARNING focus=e:a path=e:p check=L3: missing\nERROR focus=e:b path=e:p check=L1: too few\n"
