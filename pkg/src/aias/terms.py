"""RDF terms, triples and triple patterns.

Terms compare by exact text; there is no IRI normalization. The canonical
ordering used everywhere for deterministic output is: IRIs before blank
nodes before literals, then lexicographic over the text fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .errors import MalformedCurie, UnboundPrefix

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
XSD = "http://www.w3.org/2001/XMLSchema#"
SH = "http://www.w3.org/ns/shacl#"


@dataclass(frozen=True, slots=True)
class Iri:
    value: str

    def __post_init__(self) -> None:
        if not isinstance(self.value, str) or ":" not in self.value:
            raise ValueError(f"not an absolute IRI: {self.value!r}")

    def __str__(self) -> str:
        return f"<{self.value}>"


@dataclass(frozen=True, slots=True)
class BlankNode:
    label: str

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("blank node label must be non-empty")

    def __str__(self) -> str:
        return f"_:{self.label}"


XSD_STRING = Iri(XSD + "string")
XSD_INTEGER = Iri(XSD + "integer")
XSD_DECIMAL = Iri(XSD + "decimal")
XSD_DOUBLE = Iri(XSD + "double")
XSD_BOOLEAN = Iri(XSD + "boolean")
RDF_LANGSTRING = Iri(RDF + "langString")
RDF_TYPE = Iri(RDF + "type")
RDFS_SUBCLASSOF = Iri(RDFS + "subClassOf")
RDFS_DOMAIN = Iri(RDFS + "domain")
RDFS_RANGE = Iri(RDFS + "range")
OWL_EQUIVALENTCLASS = Iri(OWL + "equivalentClass")
OWL_CLASS = Iri(OWL + "Class")


@dataclass(frozen=True, slots=True)
class Literal:
    lexical: str
    datatype: Iri = XSD_STRING
    language: str | None = None

    def __post_init__(self) -> None:
        if self.language is not None:
            if not self.language:
                raise ValueError("empty language tag")
            # a language tag forces rdf:langString
            object.__setattr__(self, "datatype", RDF_LANGSTRING)
        elif self.datatype == RDF_LANGSTRING:
            raise ValueError("rdf:langString literal requires a language tag")

    def __str__(self) -> str:
        text = '"' + escape_string(self.lexical) + '"'
        if self.language is not None:
            return f"{text}@{self.language}"
        if self.datatype == XSD_STRING:
            return text
        return f"{text}^^{self.datatype}"


@dataclass(frozen=True, slots=True)
class Variable:
    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("variable name must be non-empty")

    def __str__(self) -> str:
        return f"?{self.name}"


Term = Union[Iri, BlankNode, Literal]
PatternTerm = Union[Iri, BlankNode, Literal, Variable]

_KIND_RANK = {Iri: 0, BlankNode: 1, Literal: 2, Variable: 3}


def term_key(term: PatternTerm) -> tuple:
    """Sort key implementing the canonical term ordering."""
    if isinstance(term, Iri):
        return (0, term.value)
    if isinstance(term, BlankNode):
        return (1, term.label)
    if isinstance(term, Literal):
        return (2, term.lexical, term.datatype.value, term.language or "")
    return (3, term.name)


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Iri | BlankNode
    predicate: Iri
    object: Term

    def __post_init__(self) -> None:
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise TypeError(f"triple subject must be an IRI or blank node, got {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise TypeError(f"triple predicate must be an IRI, got {self.predicate!r}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise TypeError(f"triple object must be a term, got {self.object!r}")

    def __iter__(self) -> Iterator[Term]:
        yield self.subject
        yield self.predicate
        yield self.object

    def __str__(self) -> str:
        return f"{self.subject} {self.predicate} {self.object} ."


def triple_key(triple: Triple) -> tuple:
    return (term_key(triple.subject), term_key(triple.predicate), term_key(triple.object))


@dataclass(frozen=True, slots=True)
class TriplePattern:
    subject: PatternTerm
    predicate: PatternTerm
    object: PatternTerm

    def __iter__(self) -> Iterator[PatternTerm]:
        yield self.subject
        yield self.predicate
        yield self.object

    def variables(self) -> list[Variable]:
        seen: list[Variable] = []
        for t in self:
            if isinstance(t, Variable) and t not in seen:
                seen.append(t)
        return seen

    def __str__(self) -> str:
        return f"{self.subject} {self.predicate} {self.object} ."


def expand_curie(prefixes: Mapping[str, str], curie: str) -> Iri:
    """Expand ``label:local`` against a prefix map."""
    if curie.count(":") != 1:
        raise MalformedCurie(f"expected exactly one ':' in {curie!r}")
    label, local = curie.split(":")
    try:
        namespace = prefixes[label]
    except KeyError:
        raise UnboundPrefix(label) from None
    return Iri(namespace + local)


def compact(term: PatternTerm, prefixes: Mapping[str, str] | None = None) -> str:
    """Render a term, abbreviating IRIs with the longest matching namespace."""
    if isinstance(term, Iri) and prefixes:
        best = None
        for label, ns in prefixes.items():
            if term.value.startswith(ns) and (best is None or len(ns) > len(best[1])):
                local = term.value[len(ns):]
                if is_safe_local(local):
                    best = (label, ns)
        if best is not None:
            return f"{best[0]}:{term.value[len(best[1]):]}"
    if isinstance(term, Literal) and term.language is None and term.datatype != XSD_STRING:
        return f'"{escape_string(term.lexical)}"^^{compact(term.datatype, prefixes)}'
    return str(term)


def is_safe_local(local: str) -> bool:
    """True if ``local`` can be written as the local part of a prefixed name."""
    if not local:
        return False
    if not (local[0].isascii() and (local[0].isalnum() or local[0] == "_")):
        return False
    return all(c.isascii() and (c.isalnum() or c in "_-") for c in local)


_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t", "\b": "\\b", "\f": "\\f"}


def escape_string(text: str) -> str:
    return "".join(_ESCAPES.get(c, c) for c in text)
