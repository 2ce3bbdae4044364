"""SELECT queries over basic graph patterns.

Grammar::

    PREFIX label: <iri>            (any number)
    SELECT [DISTINCT] ?v1 ?v2 ...  (or *)
    WHERE { s p o . s p o . ... }

Terms are ``?variables``, prefixed names, ``<iri>``, the ``a`` keyword and
literals. FILTER, OPTIONAL, UNION, property paths and ``;``/``,`` shorthand
are not part of the subset and fail to parse.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from . import _lexer as lx
from .errors import ParseError, UnboundPrefix, UnprojectableVariable
from .graph import Graph
from .reasoner import join
from .terms import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    Iri,
    Literal,
    PatternTerm,
    Term,
    TriplePattern,
    Variable,
    compact,
    term_key,
)

_NUMERIC = {lx.INTEGER: XSD_INTEGER, lx.DECIMAL: XSD_DECIMAL, lx.DOUBLE: XSD_DOUBLE}
_UNSUPPORTED = {"FILTER", "OPTIONAL", "UNION", "MINUS", "BIND", "VALUES", "GRAPH", "SERVICE", "ORDER", "GROUP", "LIMIT", "OFFSET", "CONSTRUCT", "ASK", "DESCRIBE", "INSERT", "DELETE"}


@dataclass(frozen=True)
class Query:
    prefixes: dict[str, str]
    projection: tuple[Variable, ...] | None  # None means SELECT *
    patterns: tuple[TriplePattern, ...]
    distinct: bool = False

    def __post_init__(self) -> None:
        if not self.patterns:
            raise ValueError("query needs at least one triple pattern")
        if self.projection is not None:
            present = self.variables_in_patterns()
            for v in self.projection:
                if v not in present:
                    raise UnprojectableVariable(f"?{v.name} is projected but occurs in no pattern")

    def variables_in_patterns(self) -> list[Variable]:
        seen: list[Variable] = []
        for p in self.patterns:
            for v in p.variables():
                if v not in seen:
                    seen.append(v)
        return seen

    @property
    def variables(self) -> tuple[Variable, ...]:
        if self.projection is None:
            return tuple(self.variables_in_patterns())
        return self.projection


@dataclass(frozen=True)
class SolutionSequence:
    variables: tuple[Variable, ...]
    rows: tuple[tuple[Term, ...], ...]

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def as_dicts(self) -> list[dict[str, Term]]:
        return [{v.name: t for v, t in zip(self.variables, row)} for row in self.rows]

    def multiset(self) -> Counter:
        return Counter(self.rows)


class _QueryParser:
    def __init__(self, text: str, prefixes: Mapping[str, str]):
        self.ts = lx.TokenStream(text)
        self.prefixes = dict(prefixes)

    def parse(self) -> Query:
        ts = self.ts
        while ts.at_name("PREFIX"):
            ts.next()
            label = ts.next()
            if label.kind != lx.PNAME or label.value[1]:
                raise label.error(f"expected prefix label ending in ':', found {lx.describe(label)}")
            iri = ts.next()
            if iri.kind != lx.IRIREF:
                raise iri.error(f"expected namespace IRI, found {lx.describe(iri)}")
            self.prefixes[label.value[0]] = iri.value
        self.keyword("SELECT")
        distinct = False
        if ts.at_name("DISTINCT"):
            ts.next()
            distinct = True
        projection: list[Variable] | None = []
        if ts.at_punct("*"):
            ts.next()
            projection = None
        else:
            while ts.peek.kind == lx.VAR:
                v = Variable(ts.next().value)
                if v not in projection:
                    projection.append(v)
            if not projection:
                raise ts.peek.error(f"expected variables or '*', found {lx.describe(ts.peek)}")
        self.keyword("WHERE")
        open_brace = ts.expect_punct("{")
        patterns = []
        while not ts.at_punct("}"):
            patterns.append(self.pattern())
            if ts.at_punct("."):
                ts.next()
            elif not ts.at_punct("}"):
                raise ts.peek.error(f"expected '.' or '}}', found {lx.describe(ts.peek)}")
        ts.next()
        if not patterns:
            raise open_brace.error("empty WHERE clause")
        if ts.peek.kind != lx.EOF:
            raise ts.peek.error(f"unexpected {lx.describe(ts.peek)} after query")
        return Query(self.prefixes, None if projection is None else tuple(projection), tuple(patterns), distinct)

    def keyword(self, word: str) -> None:
        tok = self.ts.peek
        if not self.ts.at_name(word):
            raise tok.error(f"expected {word}, found {lx.describe(tok)}")
        self.ts.next()

    def pattern(self) -> TriplePattern:
        tok = self.ts.peek
        if tok.kind == lx.NAME and tok.text.upper() in _UNSUPPORTED:
            raise tok.error(f"{tok.text.upper()} is not supported")
        s = self.term(subject=True)
        p = self.term(predicate=True)
        o = self.term()
        return TriplePattern(s, p, o)

    def term(self, subject: bool = False, predicate: bool = False) -> PatternTerm:
        ts = self.ts
        tok = ts.peek
        if tok.kind == lx.VAR:
            ts.next()
            return Variable(tok.value)
        if tok.kind == lx.IRIREF:
            ts.next()
            return Iri(tok.value)
        if tok.kind == lx.PNAME:
            ts.next()
            prefix, local = tok.value
            if prefix not in self.prefixes:
                raise UnboundPrefix(prefix)
            return Iri(self.prefixes[prefix] + local)
        if predicate and tok.kind == lx.NAME and tok.text == "a":
            ts.next()
            return RDF_TYPE
        if not subject and not predicate:
            if tok.kind == lx.STRING:
                ts.next()
                if ts.peek.kind == lx.AT:
                    return Literal(tok.value, language=ts.next().value)
                if ts.peek.kind == lx.DTYPE:
                    ts.next()
                    dt = self.term(predicate=True)
                    if not isinstance(dt, Iri):
                        raise tok.error("datatype must be an IRI")
                    return Literal(tok.value, dt)
                return Literal(tok.value)
            if tok.kind in _NUMERIC:
                ts.next()
                return Literal(tok.value, _NUMERIC[tok.kind])
            if tok.kind == lx.NAME and tok.text in ("true", "false"):
                ts.next()
                return Literal(tok.text, XSD_BOOLEAN)
        if tok.kind == lx.PUNCT and tok.text in (";", ","):
            raise tok.error(f"{tok.text!r} shorthand is not supported; repeat the subject")
        if tok.kind == lx.PUNCT and tok.text in ("(", "["):
            raise tok.error(f"{tok.text!r} is not supported")
        if tok.kind == lx.BNODE:
            raise tok.error("blank nodes are not allowed in queries; use a variable")
        raise tok.error(f"unexpected {lx.describe(tok)}")


def parse_query(text: str, prefixes: Mapping[str, str] | None = None) -> Query:
    """Parse a query; its PREFIX lines override ``prefixes`` (default: built-ins)."""
    if prefixes is None:
        from .vocab import builtin_prefixes

        prefixes = builtin_prefixes()
    return _QueryParser(text, prefixes).parse()


def evaluate_query(graph: Graph, q: Query) -> SolutionSequence:
    """All solutions of ``q`` over ``graph`` as given (no inference).

    Rows follow multiset semantics unless DISTINCT is set, and are sorted by
    their terms left to right.
    """
    variables = q.variables
    rows = [tuple(b[v] for v in variables) for b in join(graph, q.patterns)]
    if q.distinct:
        rows = list(set(rows))
    rows.sort(key=lambda row: tuple(term_key(t) for t in row))
    return SolutionSequence(variables, tuple(rows))


def format_table(solutions: SolutionSequence, prefixes: Mapping[str, str] | None = None) -> str:
    """Aligned text table with a header row and a rule line."""
    header = [f"?{v.name}" for v in solutions.variables]
    body = [[compact(t, prefixes) for t in row] for row in solutions.rows]
    widths = [max([len(h)] + [len(r[i]) for r in body]) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in body]
    lines.append(f"({len(body)} row{'s' if len(body) != 1 else ''})")
    return "\n".join(lines) + "\n"


def format_tsv(solutions: SolutionSequence, prefixes: Mapping[str, str] | None = None) -> str:
    """Tab-separated values; the header row holds the variable names."""
    lines = ["\t".join(v.name for v in solutions.variables)]
    lines += ["\t".join(compact(t, prefixes) for t in row) for row in solutions.rows]
    return "\n".join(lines) + "\n"


__all__ = [
    "ParseError",
    "Query",
    "SolutionSequence",
    "evaluate_query",
    "format_table",
    "format_tsv",
    "parse_query",
]
