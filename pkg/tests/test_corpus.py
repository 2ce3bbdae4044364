from pathlib import Path

import pytest

from aias.corpus import (
    CORPUS_PREFIXES,
    EX,
    TRAINING_QUERY,
    RULES_DOCUMENT,
    SHAPES_DOCUMENT,
    artifact_files,
    build_stamping_graph,
    competency_suite,
)
from aias.query import evaluate_query, format_tsv, parse_query
from aias.reasoner import apply_rules, parse_rules, schema_closure
from aias.shapes import parse_shapes, validate
from aias.terms import RDF_TYPE, BlankNode, Iri, Triple
from aias.turtle import parse_turtle
from aias.vocab import builtin_prefixes, lint_aias, merged_schema, vocabulary_index

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def closure():
    return schema_closure(build_stamping_graph(), merged_schema()).closure


def test_graph_is_ground_and_uses_known_classes():
    g = build_stamping_graph()
    assert not g.blank_nodes()
    index = vocabulary_index()
    for t in g.triples(p=RDF_TYPE):
        assert t.object in index.classes, t
    for t in g:
        if t.predicate != RDF_TYPE:
            assert t.predicate in index.properties, t


def test_three_communications_two_links_each():
    g = build_stamping_graph()
    comms = g.subjects(RDF_TYPE, Iri("https://w3id.org/aias/iso7489#Communication"))
    assert len(comms) == 3
    for c in comms:
        assert len(g.objects(c, Iri("https://w3id.org/aias#communicatesWith"))) == 2


@pytest.mark.parametrize("case", competency_suite(), ids=lambda c: c.id)
def test_competency_golden(case, closure):
    prefixes = {**builtin_prefixes(), **CORPUS_PREFIXES}
    result = evaluate_query(closure, parse_query(case.query, prefixes))
    assert format_tsv(result, prefixes) == (GOLDEN / f"{case.id}.tsv").read_text(encoding="utf-8")
    assert result == case.expected


@pytest.mark.parametrize("case", [c for c in competency_suite() if not c.requires_inference], ids=lambda c: c.id)
def test_cases_answerable_without_inference(case):
    result = evaluate_query(build_stamping_graph(), parse_query(case.query))
    assert result == case.expected


def test_typed_cases_need_the_closure():
    raw = build_stamping_graph()
    for case in competency_suite():
        if case.requires_inference:
            assert evaluate_query(raw, parse_query(case.query)) != case.expected, case.id


def test_training_query_row_multiset(closure):
    rows = evaluate_query(closure, parse_query(TRAINING_QUERY)).rows
    assert sorted(rows, key=lambda r: r[1].value) == [
        (Iri(EX + "A_train"), Iri(EX + "Cloud1")),
        (Iri(EX + "A_train"), Iri(EX + "Training1")),
    ]


def test_rule_document_has_both_variants():
    rules = parse_rules(RULES_DOCUMENT)
    assert [r.id for r in rules] == ["cloud-design-training", "cloud-design-inference"]
    result = apply_rules(build_stamping_graph(), rules, merged_schema())
    design = Triple(Iri("https://w3id.org/aias#AISystem"), Iri("https://w3id.org/aias/iso22989#hasDesign"), Iri("https://w3id.org/aias#CloudDesign"))
    assert design in result.inferred


def test_shapes_and_lint_clean():
    g = build_stamping_graph()
    shapes = parse_shapes(parse_turtle(SHAPES_DOCUMENT))
    assert validate(g, shapes, merged_schema()).results == []
    assert lint_aias(g).results == []


def test_artifacts_are_byte_stable_and_parse():
    files = artifact_files()
    assert files == artifact_files()
    assert set(files) == {"stamping.ttl", "stamping.rules", "communication.shapes.ttl", "q1.rq", "q1_typed.rq", "q2.rq", "q3.rq", "q4.rq"}
    assert parse_turtle(files["stamping.ttl"]).triple_set() == build_stamping_graph().triple_set()
    assert not any(isinstance(x, BlankNode) for t in build_stamping_graph() for x in t)
