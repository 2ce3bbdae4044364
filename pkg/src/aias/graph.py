"""In-memory triple store with set semantics and a prefix table."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator, Mapping

from .terms import (
    BlankNode,
    Iri,
    PatternTerm,
    Term,
    Triple,
    TriplePattern,
    Variable,
    triple_key,
)


class Graph:
    """A set of triples indexed by subject, predicate and object.

    Iteration yields triples in canonical order. ``prefixes`` is an ordered
    ``label -> namespace`` mapping; rebinding a label replaces it in place.
    """

    def __init__(self, triples: Iterable[Triple] = (), prefixes: Mapping[str, str] | None = None):
        self._triples: set[Triple] = set()
        self._by_s: dict[Term, set[Triple]] = defaultdict(set)
        self._by_p: dict[Term, set[Triple]] = defaultdict(set)
        self._by_o: dict[Term, set[Triple]] = defaultdict(set)
        self.prefixes: dict[str, str] = dict(prefixes or {})
        for t in triples:
            self.add(t)

    def bind(self, label: str, namespace: str) -> None:
        self.prefixes[label] = namespace

    def add(self, triple: Triple) -> bool:
        """Insert ``triple``; return True iff it was not already present."""
        if triple in self._triples:
            return False
        self._triples.add(triple)
        self._by_s[triple.subject].add(triple)
        self._by_p[triple.predicate].add(triple)
        self._by_o[triple.object].add(triple)
        return True

    def update(self, triples: Iterable[Triple]) -> int:
        return sum(self.add(t) for t in triples)

    def remove(self, triple: Triple) -> bool:
        if triple not in self._triples:
            return False
        self._triples.discard(triple)
        for index, key in ((self._by_s, triple.subject), (self._by_p, triple.predicate), (self._by_o, triple.object)):
            bucket = index[key]
            bucket.discard(triple)
            if not bucket:
                del index[key]
        return True

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple: object) -> bool:
        return triple in self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self._triples, key=triple_key))

    def triple_set(self) -> frozenset[Triple]:
        return frozenset(self._triples)

    def copy(self) -> Graph:
        return Graph(self._triples, self.prefixes)

    def __repr__(self) -> str:
        return f"<Graph {len(self)} triples, {len(self.prefixes)} prefixes>"

    def _candidates(self, s, p, o) -> Iterable[Triple]:
        buckets = []
        for index, key in ((self._by_s, s), (self._by_p, p), (self._by_o, o)):
            if key is not None:
                bucket = index.get(key)
                if not bucket:
                    return ()
                buckets.append(bucket)
        if not buckets:
            return self._triples
        return min(buckets, key=len)

    def triples(self, s: Term | None = None, p: Iri | None = None, o: Term | None = None) -> list[Triple]:
        """Unordered lookup with ``None`` as wildcard; the fast path for engines."""
        return [
            t
            for t in self._candidates(s, p, o)
            if (s is None or t.subject == s) and (p is None or t.predicate == p) and (o is None or t.object == o)
        ]

    def objects(self, s: Term, p: Iri) -> list[Term]:
        return [t.object for t in self.triples(s, p, None)]

    def subjects(self, p: Iri, o: Term) -> list[Term]:
        return [t.subject for t in self.triples(None, p, o)]

    def match(self, pattern: TriplePattern) -> list[Triple]:
        """All triples matching ``pattern`` in canonical order.

        Constant positions must equal the triple's term; a variable that occurs
        more than once must bind the same term at each occurrence.
        """
        s, p, o = (None if isinstance(x, Variable) else x for x in pattern)
        found = self.triples(s, p, o)
        repeated = _repeated_positions(pattern)
        if repeated:
            found = [t for t in found if all(len({tuple(t)[i] for i in group}) == 1 for group in repeated)]
        return sorted(found, key=triple_key)

    def blank_nodes(self) -> set[BlankNode]:
        out = set()
        for t in self._triples:
            if isinstance(t.subject, BlankNode):
                out.add(t.subject)
            if isinstance(t.object, BlankNode):
                out.add(t.object)
        return out

    def merge(self, other: Graph) -> Graph:
        """Union of two graphs; colliding blank labels in ``other`` are renamed."""
        result = self.copy()
        for label, ns in other.prefixes.items():
            result.prefixes.setdefault(label, ns)
        taken = {b.label for b in self.blank_nodes()} | {b.label for b in other.blank_nodes()}
        rename: dict[BlankNode, BlankNode] = {}
        mine = self.blank_nodes()
        for b in sorted(other.blank_nodes(), key=lambda b: b.label):
            if b in mine:
                n = 1
                while f"{b.label}_{n}" in taken:
                    n += 1
                taken.add(f"{b.label}_{n}")
                rename[b] = BlankNode(f"{b.label}_{n}")
        for t in other._triples:
            result.add(
                Triple(rename.get(t.subject, t.subject), t.predicate, rename.get(t.object, t.object))
            )
        return result


def _repeated_positions(pattern: TriplePattern) -> list[tuple[int, ...]]:
    groups: dict[Variable, list[int]] = defaultdict(list)
    for i, term in enumerate(pattern):
        if isinstance(term, Variable):
            groups[term].append(i)
    return [tuple(v) for v in groups.values() if len(v) > 1]


def graph_match(graph: Graph, pattern: TriplePattern) -> list[Triple]:
    return graph.match(pattern)


def pattern(s: PatternTerm, p: PatternTerm, o: PatternTerm) -> TriplePattern:
    return TriplePattern(s, p, o)


# -- isomorphism -------------------------------------------------------------


def graph_isomorphic(a: Graph, b: Graph) -> bool:
    """True iff some bijection of blank-node labels maps ``a`` onto ``b``."""
    if len(a) != len(b):
        return False
    ta, tb = a.triple_set(), b.triple_set()
    ground_a = {t for t in ta if not _has_blank(t)}
    ground_b = {t for t in tb if not _has_blank(t)}
    if ground_a != ground_b:
        return False
    rest_a = [t for t in ta if _has_blank(t)]
    rest_b = [t for t in tb if _has_blank(t)]
    if not rest_a:
        return not rest_b
    nodes_a = sorted({x for t in rest_a for x in (t.subject, t.object) if isinstance(x, BlankNode)}, key=lambda n: n.label)
    nodes_b = sorted({x for t in rest_b for x in (t.subject, t.object) if isinstance(x, BlankNode)}, key=lambda n: n.label)
    if len(nodes_a) != len(nodes_b):
        return False

    colors_a, colors_b = _refine_colors(rest_a, nodes_a, rest_b, nodes_b)
    if sorted(colors_a.values()) != sorted(colors_b.values()):
        return False

    by_color_b: dict[int, list[BlankNode]] = defaultdict(list)
    for n in nodes_b:
        by_color_b[colors_b[n]].append(n)
    # most constrained nodes first
    order = sorted(nodes_a, key=lambda n: (len(by_color_b[colors_a[n]]), n.label))
    incident: dict[BlankNode, list[Triple]] = defaultdict(list)
    for t in rest_a:
        for x in {t.subject, t.object}:
            if isinstance(x, BlankNode):
                incident[x].append(t)
    set_b = set(rest_b)
    mapping: dict[BlankNode, BlankNode] = {}
    used: set[BlankNode] = set()

    def consistent(node: BlankNode) -> bool:
        for t in incident[node]:
            s = mapping.get(t.subject, t.subject) if isinstance(t.subject, BlankNode) else t.subject
            o = mapping.get(t.object, t.object) if isinstance(t.object, BlankNode) else t.object
            if (isinstance(t.subject, BlankNode) and t.subject not in mapping) or (
                isinstance(t.object, BlankNode) and t.object not in mapping
            ):
                continue
            if Triple(s, t.predicate, o) not in set_b:
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        node = order[i]
        for cand in by_color_b[colors_a[node]]:
            if cand in used:
                continue
            mapping[node] = cand
            used.add(cand)
            if consistent(node) and search(i + 1):
                return True
            del mapping[node]
            used.discard(cand)
        return False

    # |rest_a| == |rest_b| and the mapping is injective, so preserving every
    # triple of a makes it onto b
    return len(rest_a) == len(rest_b) and search(0)


def _has_blank(t: Triple) -> bool:
    return isinstance(t.subject, BlankNode) or isinstance(t.object, BlankNode)


def _refine_colors(rest_a, nodes_a, rest_b, nodes_b):
    """Weisfeiler-Lehman style colour refinement run jointly on both graphs."""
    palette: dict[object, int] = {}
    colors_a = {n: 0 for n in nodes_a}
    colors_b = {n: 0 for n in nodes_b}

    def signature(node, triples, colors):
        parts = []
        for t in triples:
            if t.subject == node:
                other = t.object
                parts.append(("out", t.predicate.value, ("b", colors[other]) if isinstance(other, BlankNode) else ("g", other)))
            if t.object == node:
                other = t.subject
                parts.append(("in", t.predicate.value, ("b", colors[other]) if isinstance(other, BlankNode) else ("g", other)))
        return (colors[node], tuple(sorted(parts, key=repr)))

    inc_a = _incidence(rest_a)
    inc_b = _incidence(rest_b)
    classes = 1
    for _ in range(len(nodes_a) + 1):
        new_a = {n: palette.setdefault(signature(n, inc_a[n], colors_a), len(palette)) for n in nodes_a}
        new_b = {n: palette.setdefault(signature(n, inc_b[n], colors_b), len(palette)) for n in nodes_b}
        colors_a, colors_b = new_a, new_b
        count = len(set(new_a.values()) | set(new_b.values()))
        if count == classes:
            break
        classes = count
    return colors_a, colors_b


def _incidence(triples):
    inc = defaultdict(list)
    for t in triples:
        for x in {t.subject, t.object}:
            if isinstance(x, BlankNode):
                inc[x].append(t)
    return inc
