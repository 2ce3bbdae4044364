import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aias.errors import ParseError
from aias.graph import Graph, graph_isomorphic
from aias.terms import RDF_TYPE, SH, XSD_BOOLEAN, XSD_DECIMAL, XSD_INTEGER, BlankNode, Iri, Literal, Triple
from aias.turtle import parse_turtle, serialize_turtle

from oracles import random_turtle_graph

E = "http://e/"


def test_single_triple():
    g = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b .")
    assert g.triple_set() == {Triple(Iri(E + "a"), Iri(E + "p"), Iri(E + "b"))}
    assert g.prefixes == {"ex": E}


def test_sparql_style_prefix_and_lists():
    g = parse_turtle("PREFIX ex: <http://e/>\nex:a a ex:C ; ex:p ex:b , ex:c .")
    a = Iri(E + "a")
    assert g.triple_set() == {
        Triple(a, RDF_TYPE, Iri(E + "C")),
        Triple(a, Iri(E + "p"), Iri(E + "b")),
        Triple(a, Iri(E + "p"), Iri(E + "c")),
    }


def test_literal_forms():
    doc = """@prefix ex: <http://e/> . @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
    ex:a ex:p "s", "t"@en-GB, "5"^^xsd:integer, 02, -1.50, true, "q\\"uote\\n" ."""
    objs = set(parse_turtle(doc).objects(Iri(E + "a"), Iri(E + "p")))
    assert objs == {
        Literal("s"),
        Literal("t", language="en-GB"),
        Literal("5", XSD_INTEGER),
        Literal("02", XSD_INTEGER),
        Literal("-1.50", XSD_DECIMAL),
        Literal("true", XSD_BOOLEAN),
        Literal('q"uote\n'),
    }


def test_communication_shape_document():
    doc = """@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix AIAS: <https://w3id.org/aias#> .
@prefix ISO7489: <https://w3id.org/aias/iso7489#> .
AIAS:Communication
    a sh:NodeShape  ;
    sh:targetClass ISO7489:Communication ;
    sh:property
    [   sh:path AIAS:communicatesWith ;
        sh:minCount 2;  ].
"""
    g = parse_turtle(doc)
    shapes = g.subjects(RDF_TYPE, Iri(SH + "NodeShape"))
    assert shapes == [Iri("https://w3id.org/aias#Communication")]
    (prop,) = g.objects(shapes[0], Iri(SH + "property"))
    assert isinstance(prop, BlankNode)
    assert g.objects(prop, Iri(SH + "minCount")) == [Literal("2", XSD_INTEGER)]
    assert len(g.blank_nodes()) == 1


def test_each_bracket_is_one_fresh_node():
    g = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p [ ex:q [ ex:r 1 ] ] , [] . _:anon0 ex:p 1 .")
    assert len(g.blank_nodes()) == 4


@pytest.mark.parametrize(
    "doc,line,col",
    [
        ("@prefix ex: <http://e/> .\nex:a ex:p", 2, 10),
        ("ex:a ex:p ex:b .", 1, 1),
        ("@prefix ex: <http://e/> .\nex:a ex:p ( ex:b ) .", 2, 11),
        ("@base <http://e/> .", 1, 1),
        ("@prefix ex: <http://e/> .\nex:a ex:p <rel> .", 2, 11),
        ('@prefix ex: <http://e/> .\nex:a ex:p """x""" .', 2, 11),
        ("@prefix ex: <http://e/> .\nex:a ex:p \"open", 2, 11),
    ],
)
def test_parse_errors_carry_position(doc, line, col):
    with pytest.raises(ParseError) as info:
        parse_turtle(doc)
    err = info.value
    assert (err.line, err.column) == (line, col)
    assert str(err).startswith(f"{line}:{col}: ")


@settings(max_examples=80, deadline=None)
@given(st.text(alphabet="@prefix ex:<http://e/>.;,[]_:ab\"12 \n", max_size=60))
def test_errors_point_inside_document(doc):
    try:
        parse_turtle(doc)
    except ParseError as err:
        lines = doc.split("\n")
        assert 1 <= err.line <= len(lines)
        assert 1 <= err.column <= len(lines[err.line - 1]) + 1


def test_empty_graph_serializes_to_prefix_lines_only():
    assert serialize_turtle(Graph(prefixes={"ex": E})) == "@prefix ex: <http://e/> .\n"


def test_serializer_groups_by_subject_with_type_first():
    a = Iri(E + "a")
    g = Graph(
        [Triple(a, Iri(E + "z"), Literal("1", XSD_INTEGER)), Triple(a, RDF_TYPE, Iri(E + "C"))],
        prefixes={"ex": E},
    )
    assert serialize_turtle(g) == "@prefix ex: <http://e/> .\n\nex:a a ex:C ;\n    ex:z 1 .\n"


def test_serializer_never_writes_anonymous_brackets():
    g = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p [ ex:q 1 ] .")
    text = serialize_turtle(g)
    assert "[" not in text and "_:b0" in text


def test_parse_is_deterministic():
    doc = "@prefix ex: <http://e/> . ex:a ex:p [ ex:q 1 ], [ ex:q 2 ] ."
    assert parse_turtle(doc).triple_set() == parse_turtle(doc).triple_set()


def test_output_is_byte_stable_across_insertion_order():
    rng = random.Random(3)
    g = random_turtle_graph(rng)
    triples = list(g)
    rng.shuffle(triples)
    assert serialize_turtle(Graph(triples, g.prefixes)) == serialize_turtle(g)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip_random_graphs(seed):
    g = random_turtle_graph(random.Random(seed))
    back = parse_turtle(serialize_turtle(g))
    assert graph_isomorphic(back, g)
