"""Knowledge graphs for AI-enabled automation systems.

Terms and graphs, Turtle input and output, the AIAS vocabulary with its
aligned ontology design patterns, a forward-chaining reasoner, shape
validation and a SELECT query engine.
"""

__version__ = "0.1.0"

from .errors import AiasError, ParseError
from .graph import Graph, graph_isomorphic
from .query import evaluate_query, parse_query
from .reasoner import apply_rules, parse_rules, schema_closure
from .shapes import parse_shapes, validate
from .terms import BlankNode, Iri, Literal, Triple, TriplePattern, Variable
from .turtle import parse_turtle, serialize_turtle
from .vocab import lint_aias, load_builtin_schema, merged_schema

__all__ = [
    "AiasError",
    "BlankNode",
    "Graph",
    "Iri",
    "Literal",
    "ParseError",
    "Triple",
    "TriplePattern",
    "Variable",
    "apply_rules",
    "evaluate_query",
    "graph_isomorphic",
    "lint_aias",
    "load_builtin_schema",
    "merged_schema",
    "parse_query",
    "parse_rules",
    "parse_shapes",
    "parse_turtle",
    "schema_closure",
    "serialize_turtle",
    "validate",
]
