"""Built-in ontology design patterns and the AIAS alignment ontology.

Each schema ships as an embedded Turtle document. ``merged_schema`` stands in
for ``owl:imports``: the four graphs are unioned eagerly and keep their own
namespaces through the prefix map.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Mapping

from ..errors import MalformedSchema, UnknownClass, UnknownSchema
from ..graph import Graph
from ..terms import (
    OWL,
    OWL_EQUIVALENTCLASS,
    RDF,
    RDF_TYPE,
    RDFS,
    RDFS_DOMAIN,
    RDFS_RANGE,
    RDFS_SUBCLASSOF,
    SH,
    XSD,
    BlankNode,
    Iri,
    Literal,
    Triple,
)
from ..turtle import parse_turtle

SCHEMA_NAMES = ("vdi3682", "iso7489", "iso22989", "aias")

DEFAULT_NAMESPACES: dict[str, str] = {
    "AIAS": "https://w3id.org/aias#",
    "VDI3682": "https://w3id.org/aias/vdi3682#",
    "ISO7489": "https://w3id.org/aias/iso7489#",
    "ISO22989": "https://w3id.org/aias/iso22989#",
}
_SCHEMA_LABEL = {"vdi3682": "VDI3682", "iso7489": "ISO7489", "iso22989": "ISO22989", "aias": "AIAS"}

# Empty hook namespaces; equivalence statements to these vocabularies attach
# to the AIAS resource types (see aias.ttl).
EXTENSION_NAMESPACES: dict[str, str] = {
    "ECLASS": "https://w3id.org/aias/ext/eclass#",
    "UNSPSC": "https://w3id.org/aias/ext/unspsc#",
    "SSN": "https://w3id.org/aias/ext/ssn#",
}

STANDARD_PREFIXES: dict[str, str] = {"rdf": RDF, "rdfs": RDFS, "owl": OWL, "xsd": XSD, "sh": SH}

AXIOM_PREDICATES = frozenset({RDFS_SUBCLASSOF, OWL_EQUIVALENTCLASS, RDFS_DOMAIN, RDFS_RANGE, RDF_TYPE})
CLASS_TYPES = frozenset({Iri(OWL + "Class"), Iri(RDFS + "Class")})
PROPERTY_TYPES = frozenset(
    {Iri(OWL + "ObjectProperty"), Iri(OWL + "DatatypeProperty"), Iri(RDF + "Property")}
)


@dataclass(frozen=True)
class SchemaGraph:
    name: str
    graph: Graph
    namespace: Iri


def schema_text(name: str) -> str:
    """The embedded Turtle source of a built-in schema."""
    if name not in SCHEMA_NAMES:
        raise UnknownSchema(name)
    return resources.files(__package__).joinpath("schemas", f"{name}.ttl").read_text(encoding="utf-8")


def resolve_namespaces(overrides: Mapping[str, str] | None = None) -> dict[str, str]:
    namespaces = dict(DEFAULT_NAMESPACES)
    if overrides:
        namespaces.update({k: v for k, v in overrides.items() if k in namespaces})
    return namespaces


def load_builtin_schema(name: str, namespaces: Mapping[str, str] | None = None) -> SchemaGraph:
    if name not in SCHEMA_NAMES:
        raise UnknownSchema(name)
    schema = _load(name, _freeze(resolve_namespaces(namespaces)))
    return SchemaGraph(schema.name, schema.graph.copy(), schema.namespace)


def _freeze(namespaces: Mapping[str, str]) -> tuple[tuple[str, str], ...]:
    return tuple(sorted(namespaces.items()))


@lru_cache(maxsize=None)
def _load(name: str, namespaces: tuple[tuple[str, str], ...]) -> SchemaGraph:
    graph = parse_turtle(schema_text(name))
    ns_map = dict(namespaces)
    remap = {DEFAULT_NAMESPACES[k]: v for k, v in ns_map.items() if DEFAULT_NAMESPACES[k] != v}
    if remap:
        graph = rebase(graph, remap)
    namespace = ns_map[_SCHEMA_LABEL[name]]
    _check_schema(name, graph, namespace, set(ns_map.values()))
    return SchemaGraph(name, graph, Iri(namespace))


def rebase(graph: Graph, remap: Mapping[str, str]) -> Graph:
    """Copy of ``graph`` with IRIs moved from old to new namespaces."""

    def move(term):
        if isinstance(term, Iri):
            for old, new in remap.items():
                if term.value.startswith(old):
                    return Iri(new + term.value[len(old):])
        return term

    prefixes = {label: remap.get(ns, ns) for label, ns in graph.prefixes.items()}
    return Graph((Triple(move(t.subject), move(t.predicate), move(t.object)) for t in graph), prefixes)


def _check_schema(name: str, graph: Graph, namespace: str, builtin_namespaces: set[str]) -> None:
    for t in graph:
        if t.predicate not in AXIOM_PREDICATES:
            raise MalformedSchema(f"{name}: non-axiom predicate {t.predicate}")
        if not isinstance(t.subject, Iri) or isinstance(t.object, (BlankNode, Literal)):
            raise MalformedSchema(f"{name}: schema statements must be ground IRIs: {t}")
        if not t.subject.value.startswith(namespace):
            # only the alignment ontology may speak about other patterns' terms
            if name != "aias" or not any(t.subject.value.startswith(ns) for ns in builtin_namespaces):
                raise MalformedSchema(f"{name}: {t.subject} is outside namespace {namespace}")
    edges = defaultdict(set)
    for t in graph.triples(p=RDFS_SUBCLASSOF):
        edges[t.subject].add(t.object)
    if _has_cycle(edges):
        raise MalformedSchema(f"{name}: subclass hierarchy is cyclic")


def _has_cycle(edges: Mapping[Iri, set[Iri]]) -> bool:
    state: dict[Iri, int] = {}

    def visit(node) -> bool:
        state[node] = 1
        for nxt in edges.get(node, ()):
            if state.get(nxt) == 1 or (nxt not in state and visit(nxt)):
                return True
        state[node] = 2
        return False

    return any(node not in state and visit(node) for node in list(edges))


def merged_schema(namespaces: Mapping[str, str] | None = None, order=SCHEMA_NAMES) -> Graph:
    """Union of the built-in schemas with every prefix registered.

    A fresh graph is returned on each call so callers may mutate it.
    """
    frozen = _freeze(resolve_namespaces(namespaces))
    merged = Graph(prefixes=STANDARD_PREFIXES)
    for name in order:
        schema = _load(name, frozen)
        for label, ns in schema.graph.prefixes.items():
            merged.prefixes.setdefault(label, ns)
        merged.update(schema.graph.triple_set())
    return merged


def builtin_prefixes(namespaces: Mapping[str, str] | None = None) -> dict[str, str]:
    """Prefix map used to expand names in queries, rules and CLI output."""
    return dict(merged_schema(namespaces).prefixes)


@dataclass
class VocabularyIndex:
    classes: set[Iri] = field(default_factory=set)
    properties: set[Iri] = field(default_factory=set)
    subclass_edges: set[tuple[Iri, Iri]] = field(default_factory=set)
    equivalence_pairs: set[tuple[Iri, Iri]] = field(default_factory=set)

    @classmethod
    def from_graph(cls, graph: Graph) -> VocabularyIndex:
        index = cls()
        for t in graph.triples(p=RDF_TYPE):
            if t.object in CLASS_TYPES:
                index.classes.add(t.subject)
            elif t.object in PROPERTY_TYPES:
                index.properties.add(t.subject)
        for t in graph.triples(p=RDFS_SUBCLASSOF):
            index.subclass_edges.add((t.subject, t.object))
        for t in graph.triples(p=OWL_EQUIVALENTCLASS):
            index.equivalence_pairs.add((t.subject, t.object))
            index.equivalence_pairs.add((t.object, t.subject))
        return index


def vocabulary_index(namespaces: Mapping[str, str] | None = None) -> VocabularyIndex:
    return VocabularyIndex.from_graph(merged_schema(namespaces))


def list_subclasses(index: VocabularyIndex, cls: Iri) -> set[Iri]:
    """Transitive subclasses of ``cls`` (following subClassOf edges only)."""
    if cls not in index.classes:
        raise UnknownClass(cls)
    children = defaultdict(set)
    for sub, sup in index.subclass_edges:
        children[sup].add(sub)
    found: set[Iri] = set()
    stack = [cls]
    while stack:
        for child in children[stack.pop()]:
            if child not in found and child != cls:
                found.add(child)
                stack.append(child)
    return found


from .lint import LINT_CHECKS, lint_aias  # noqa: E402  (lint needs merged_schema)

__all__ = [
    "DEFAULT_NAMESPACES",
    "EXTENSION_NAMESPACES",
    "LINT_CHECKS",
    "SCHEMA_NAMES",
    "SchemaGraph",
    "VocabularyIndex",
    "builtin_prefixes",
    "lint_aias",
    "list_subclasses",
    "load_builtin_schema",
    "merged_schema",
    "rebase",
    "schema_text",
    "vocabulary_index",
]
