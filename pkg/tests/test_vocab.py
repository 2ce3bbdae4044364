import itertools

import pytest

from aias.errors import UnknownClass, UnknownSchema
from aias.graph import Graph
from aias.terms import OWL_EQUIVALENTCLASS, RDF_TYPE, RDFS_SUBCLASSOF, Iri, Triple
from aias.turtle import parse_turtle
from aias.vocab import (
    AXIOM_PREDICATES,
    DEFAULT_NAMESPACES,
    SCHEMA_NAMES,
    lint_aias,
    list_subclasses,
    load_builtin_schema,
    merged_schema,
    schema_text,
    vocabulary_index,
)

AIAS = DEFAULT_NAMESPACES["AIAS"]
VDI = DEFAULT_NAMESPACES["VDI3682"]
OSI = DEFAULT_NAMESPACES["ISO7489"]
ISO = DEFAULT_NAMESPACES["ISO22989"]


def test_resource_equated_with_technical_resource():
    g = load_builtin_schema("aias").graph
    assert Triple(Iri(AIAS + "Resource"), OWL_EQUIVALENTCLASS, Iri(VDI + "TechnicalResource")) in g
    assert Triple(Iri(AIAS + "Process"), OWL_EQUIVALENTCLASS, Iri(VDI + "ProcessOperator")) in g


def test_classification_is_a_task():
    g = load_builtin_schema("iso22989").graph
    assert Triple(Iri(ISO + "Classification"), RDFS_SUBCLASSOF, Iri(ISO + "Task")) in g


def test_unknown_schema():
    with pytest.raises(UnknownSchema):
        load_builtin_schema("foo")


@pytest.mark.parametrize(
    "schema,names",
    [
        ("vdi3682", [VDI + n for n in ("ProcessOperator", "TechnicalResource", "Product", "Assignment", "Flow")]),
        ("iso7489", [OSI + n for n in ("Communication", "Physical", "DataLink", "Network", "Transport", "Session", "Presentation", "Application")]),
        (
            "iso22989",
            [
                ISO + n
                for n in (
                    "AISystem", "CloudDesign", "EdgeDesign", "HybridDesign", "Clustering", "Regression", "Generation",
                    "DataProcessing", "Training", "Validation", "Evaluation", "Inference", "MLModel", "MLAlgorithm",
                    "LearningType", "ModelParameter", "Hyperparameter", "Sample", "Data", "TrainingData",
                    "EvaluationData", "ValidationData", "ProductionData", "TestData", "DataSource", "DataSink",
                    "DataAcquisition", "DataStorage",
                )
            ],
        ),
        ("aias", [AIAS + n for n in ("Function", "Component", "Relation", "Assignment", "Communication", "Flow")]),
    ],
)
def test_schema_declares_expected_classes(schema, names):
    index = vocabulary_index()
    g = load_builtin_schema(schema).graph
    for name in names:
        assert Iri(name) in index.classes
        assert any(t.subject == Iri(name) for t in g)


def test_only_axiom_predicates_and_acyclic_hierarchy():
    for name in SCHEMA_NAMES:
        g = load_builtin_schema(name).graph
        assert {t.predicate for t in g} <= set(AXIOM_PREDICATES)
        up = {}
        for t in g.triples(p=RDFS_SUBCLASSOF):
            up.setdefault(t.subject, set()).add(t.object)
        for start in up:
            seen, stack = set(), [start]
            while stack:
                for nxt in up.get(stack.pop(), ()):
                    assert nxt != start
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)


def test_subjects_stay_in_own_namespace_except_alignment():
    for name, ns in (("vdi3682", VDI), ("iso7489", OSI), ("iso22989", ISO)):
        assert all(t.subject.value.startswith(ns) for t in load_builtin_schema(name).graph)


def test_merged_is_exact_sum_and_order_free():
    sizes = [len(load_builtin_schema(n).graph) for n in SCHEMA_NAMES]
    merged = merged_schema()
    assert len(merged) == sum(sizes)
    assert {"VDI3682", "ISO22989", "ISO7489", "AIAS"} <= set(merged.prefixes)
    for order in itertools.permutations(SCHEMA_NAMES):
        assert merged_schema(order=order).triple_set() == merged.triple_set()


def test_core_terms_resolve():
    index = vocabulary_index()
    for cls in (ISO + "Training", VDI + "Assignment", AIAS + "CloudSystem", OSI + "Communication"):
        assert Iri(cls) in index.classes
    for prop in (AIAS + "isAssignedTo", AIAS + "communicatesWith", ISO + "hasDesign"):
        assert Iri(prop) in index.properties


def test_list_subclasses():
    index = vocabulary_index()
    resources = {Iri(AIAS + n) for n in ("Sensor", "Actuator", "Controller", "EdgeDevice", "PersonalComputer", "ComputerSystem", "CloudSystem")}
    assert list_subclasses(index, Iri(AIAS + "Resource")) == resources
    functions = list_subclasses(index, Iri(AIAS + "Function"))
    assert {Iri(ISO + "Training"), Iri(ISO + "Inference"), Iri(VDI + "ProcessOperator")} <= functions
    assert list_subclasses(index, Iri(AIAS + "Sensor")) == set()
    with pytest.raises(UnknownClass):
        list_subclasses(index, Iri(AIAS + "Nope"))


def test_equivalence_symmetric_in_index():
    index = vocabulary_index()
    assert all((b, a) in index.equivalence_pairs for a, b in index.equivalence_pairs)


def test_embedded_text_parses_to_loaded_graph():
    for name in SCHEMA_NAMES:
        assert parse_turtle(schema_text(name)).triple_set() == load_builtin_schema(name).graph.triple_set()


def test_namespace_override_rebases_everything():
    other = "http://other.example/aias#"
    g = load_builtin_schema("aias", {"AIAS": other}).graph
    assert Triple(Iri(other + "Resource"), OWL_EQUIVALENTCLASS, Iri(VDI + "TechnicalResource")) in g
    assert not any(term.value.startswith(AIAS) for t in g for term in t if isinstance(term, Iri))


def test_loaded_schema_is_a_private_copy():
    g = load_builtin_schema("vdi3682").graph
    g.add(Triple(Iri(VDI + "X"), RDF_TYPE, Iri(VDI + "Y")))
    assert Triple(Iri(VDI + "X"), RDF_TYPE, Iri(VDI + "Y")) not in load_builtin_schema("vdi3682").graph


def test_lint_empty_graph_conforms():
    report = lint_aias(Graph())
    assert report.conforms and report.results == []


def test_lint_ignores_graphs_without_targets():
    g = Graph([Triple(Iri("http://x/a"), RDF_TYPE, Iri(AIAS + "Sensor"))])
    assert lint_aias(g).results == []
