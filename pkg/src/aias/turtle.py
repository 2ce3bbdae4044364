"""Parser and serializer for the Turtle subset used as exchange format.

Supported: ``@prefix``/``PREFIX`` declarations, the ``a`` keyword, predicate
lists (``;``), object lists (``,``), labeled blank nodes, anonymous
``[ ... ]`` property lists, quoted strings with ``^^`` datatype or ``@lang``,
and integer/decimal/double/boolean shorthand literals.

Collections, ``@base`` / relative IRIs and long (triple-quoted) strings are
rejected with a :class:`ParseError`.
"""

from __future__ import annotations

import re
from typing import Mapping

from . import _lexer as lx
from .graph import Graph
from .terms import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    Term,
    Triple,
    escape_string,
    is_safe_local,
    term_key,
    triple_key,
)

_NUMERIC_TYPES = {lx.INTEGER: XSD_INTEGER, lx.DECIMAL: XSD_DECIMAL, lx.DOUBLE: XSD_DOUBLE}


class _TurtleParser:
    def __init__(self, text: str):
        self.ts = lx.TokenStream(text)
        self.graph = Graph()
        used = {t.value for t in self.ts.toks if t.kind == lx.BNODE}
        self._used_labels = used
        self._anon = 0

    def fresh_blank(self) -> BlankNode:
        while True:
            label = f"anon{self._anon}"
            self._anon += 1
            if label not in self._used_labels:
                return BlankNode(label)

    def parse(self) -> Graph:
        ts = self.ts
        while ts.peek.kind != lx.EOF:
            tok = ts.peek
            if tok.kind == lx.AT:
                self.at_directive()
            elif ts.at_name("PREFIX"):
                ts.next()
                self.prefix_body()
            elif ts.at_name("BASE"):
                raise tok.error("BASE is not supported (no relative IRI resolution)")
            else:
                self.triples()
                ts.expect_punct(".")
        return self.graph

    def at_directive(self) -> None:
        tok = self.ts.next()
        if tok.value == "prefix":
            self.prefix_body()
            self.ts.expect_punct(".")
        elif tok.value == "base":
            raise tok.error("@base is not supported (no relative IRI resolution)")
        else:
            raise tok.error(f"unexpected {tok.text!r}")

    def prefix_body(self) -> None:
        tok = self.ts.next()
        if tok.kind != lx.PNAME or tok.value[1]:
            raise tok.error(f"expected prefix label ending in ':', found {lx.describe(tok)}")
        iri = self.ts.next()
        if iri.kind != lx.IRIREF:
            raise iri.error(f"expected namespace IRI, found {lx.describe(iri)}")
        self.graph.bind(tok.value[0], iri.value)

    def iri(self, tok: lx.Token) -> Iri:
        if tok.kind == lx.IRIREF:
            return Iri(tok.value)
        if tok.kind == lx.PNAME:
            prefix, local = tok.value
            try:
                ns = self.graph.prefixes[prefix]
            except KeyError:
                raise tok.error(f"unbound prefix {prefix!r}") from None
            return Iri(ns + local)
        raise tok.error(f"expected IRI, found {lx.describe(tok)}")

    def triples(self) -> None:
        ts = self.ts
        tok = ts.peek
        if ts.at_punct("["):
            subject = self.blank_property_list()
            # "[ ... ] ." is a complete statement on its own
            if ts.at_punct("."):
                return
        elif ts.at_punct("("):
            raise tok.error("collections are not supported")
        elif tok.kind == lx.BNODE:
            ts.next()
            subject = BlankNode(tok.value)
        else:
            subject = self.iri(ts.next())
        self.predicate_object_list(subject)

    def predicate_object_list(self, subject) -> None:
        ts = self.ts
        self.predicate_objects(subject)
        while ts.at_punct(";"):
            while ts.at_punct(";"):
                ts.next()
            if ts.at_punct(".") or ts.at_punct("]") or ts.peek.kind == lx.EOF:
                return
            self.predicate_objects(subject)

    def predicate_objects(self, subject) -> None:
        ts = self.ts
        tok = ts.next()
        if tok.kind == lx.NAME and tok.text == "a":
            predicate = RDF_TYPE
        else:
            predicate = self.iri(tok)
        self.graph.add(Triple(subject, predicate, self.object()))
        while ts.at_punct(","):
            ts.next()
            self.graph.add(Triple(subject, predicate, self.object()))

    def blank_property_list(self) -> BlankNode:
        ts = self.ts
        ts.expect_punct("[")
        node = self.fresh_blank()
        if ts.at_punct("]"):
            ts.next()
            return node
        self.predicate_object_list(node)
        ts.expect_punct("]")
        return node

    def object(self) -> Term:
        ts = self.ts
        tok = ts.peek
        if tok.kind in (lx.IRIREF, lx.PNAME):
            return self.iri(ts.next())
        if tok.kind == lx.BNODE:
            ts.next()
            return BlankNode(tok.value)
        if ts.at_punct("["):
            return self.blank_property_list()
        if ts.at_punct("("):
            raise tok.error("collections are not supported")
        if tok.kind == lx.STRING:
            ts.next()
            if ts.peek.kind == lx.AT:
                lang = ts.next()
                return Literal(tok.value, language=lang.value)
            if ts.peek.kind == lx.DTYPE:
                ts.next()
                dt_tok = ts.peek
                try:
                    return Literal(tok.value, self.iri(ts.next()))
                except ValueError as exc:
                    raise dt_tok.error(str(exc)) from None
            return Literal(tok.value)
        if tok.kind in _NUMERIC_TYPES:
            ts.next()
            return Literal(tok.value, _NUMERIC_TYPES[tok.kind])
        if tok.kind == lx.NAME and tok.text in ("true", "false"):
            ts.next()
            return Literal(tok.text, XSD_BOOLEAN)
        raise tok.error(f"expected object, found {lx.describe(tok)}")


def parse_turtle(document: str) -> Graph:
    """Parse a Turtle document into a :class:`Graph` (prefixes included)."""
    return _TurtleParser(document).parse()


# -- serializer --------------------------------------------------------------

_INTEGER_RE = re.compile(r"[+-]?[0-9]+\Z")
_DECIMAL_RE = re.compile(r"[+-]?[0-9]*\.[0-9]+\Z")
_DOUBLE_RE = re.compile(r"[+-]?(?:[0-9]+\.[0-9]*|\.[0-9]+|[0-9]+)[eE][+-]?[0-9]+\Z")
_SHORTHAND = {XSD_INTEGER: _INTEGER_RE, XSD_DECIMAL: _DECIMAL_RE, XSD_DOUBLE: _DOUBLE_RE}
_PREFIX_LABEL_RE = re.compile(r"(?:[A-Za-z][A-Za-z0-9_\-.]*[A-Za-z0-9_\-]|[A-Za-z])?\Z")


class _Writer:
    def __init__(self, prefixes: Mapping[str, str]):
        self.prefixes = {k: v for k, v in prefixes.items() if _PREFIX_LABEL_RE.match(k)}
        self.blank_labels: dict[BlankNode, str] = {}

    def iri(self, iri: Iri) -> str:
        best = None
        for label, ns in self.prefixes.items():
            if iri.value.startswith(ns) and is_safe_local(iri.value[len(ns):]):
                if best is None or len(ns) > len(best[1]):
                    best = (label, ns)
        if best is not None:
            return f"{best[0]}:{iri.value[len(best[1]):]}"
        return f"<{iri.value}>"

    def term(self, term: Term) -> str:
        if isinstance(term, Iri):
            return self.iri(term)
        if isinstance(term, BlankNode):
            label = self.blank_labels.setdefault(term, f"b{len(self.blank_labels)}")
            return f"_:{label}"
        if term.language is not None:
            return f'"{escape_string(term.lexical)}"@{term.language}'
        if term.datatype == XSD_BOOLEAN and term.lexical in ("true", "false"):
            return term.lexical
        pattern = _SHORTHAND.get(term.datatype)
        if pattern is not None and pattern.match(term.lexical):
            return term.lexical
        text = f'"{escape_string(term.lexical)}"'
        if term.datatype == XSD_STRING:
            return text
        return f"{text}^^{self.iri(term.datatype)}"


def serialize_turtle(graph: Graph) -> str:
    """Deterministic Turtle text; blank nodes are written with fresh labels."""
    writer = _Writer(graph.prefixes)
    lines = [f"@prefix {label}: <{ns}> ." for label, ns in writer.prefixes.items()]
    # blank nodes get labels in order of first appearance in canonical order
    triples = sorted(graph, key=triple_key)
    by_subject: dict[Term, list[Triple]] = {}
    for t in triples:
        by_subject.setdefault(t.subject, []).append(t)
    blocks = []
    for subject in sorted(by_subject, key=term_key):
        group = by_subject[subject]
        # rdf:type first, like hand-written Turtle
        group.sort(key=lambda t: (t.predicate != RDF_TYPE, triple_key(t)))
        head = writer.term(subject)
        parts = []
        for t in group:
            verb = "a" if t.predicate == RDF_TYPE else writer.iri(t.predicate)
            parts.append(f"{verb} {writer.term(t.object)}")
        blocks.append(head + " " + " ;\n    ".join(parts) + " .")
    out = "\n".join(lines)
    if blocks:
        out = (out + "\n\n" if lines else "") + "\n\n".join(blocks)
    return out + "\n" if out else ""
