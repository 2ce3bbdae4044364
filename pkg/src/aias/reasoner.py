"""Schema closure and forward chaining of Horn rules over triples.

Both are evaluated by the same semi-naive fixpoint engine. The schema axioms
(subclass, equivalence, domain/range) are expressed as built-in rules, so a
rule set and the schema closure are saturated together: rule conclusions get
typed by the schema and schema conclusions may trigger rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

from . import _lexer as lx
from .errors import MalformedSchema, ParseError, UnboundPrefix, UnsafeRule
from .graph import Graph
from .terms import (
    OWL_EQUIVALENTCLASS,
    RDF_TYPE,
    RDFS_DOMAIN,
    RDFS_RANGE,
    RDFS_SUBCLASSOF,
    BlankNode,
    Iri,
    Literal,
    Term,
    Triple,
    TriplePattern,
    Variable,
)

SCHEMA_PREDICATES = frozenset({RDFS_SUBCLASSOF, OWL_EQUIVALENTCLASS, RDFS_DOMAIN, RDFS_RANGE, RDF_TYPE})
SWRL_BUILTINS = "http://www.w3.org/2003/11/swrlb#"

RuleTerm = Union[Iri, Variable]


@dataclass(frozen=True)
class ClassAtom:
    cls: Iri
    term: RuleTerm

    def pattern(self) -> TriplePattern:
        return TriplePattern(self.term, RDF_TYPE, self.cls)


@dataclass(frozen=True)
class PropertyAtom:
    prop: Iri
    subject: RuleTerm
    object: RuleTerm

    def pattern(self) -> TriplePattern:
        return TriplePattern(self.subject, self.prop, self.object)


Atom = Union[ClassAtom, PropertyAtom]


@dataclass(frozen=True)
class Rule:
    id: str
    body: tuple[Atom, ...]
    head: tuple[Atom, ...]

    def __post_init__(self) -> None:
        if not self.head:
            raise UnsafeRule(f"rule {self.id}: empty head")
        unbound = _variables(self.head) - _variables(self.body)
        if unbound:
            names = ", ".join(f"?{v.name}" for v in sorted(unbound, key=lambda v: v.name))
            raise UnsafeRule(f"rule {self.id}: head variable {names} does not occur in the body")


def _variables(atoms: Iterable[Atom]) -> set[Variable]:
    return {t for a in atoms for t in a.pattern() if isinstance(t, Variable)}


@dataclass
class RuleSet:
    rules: list[Rule] = field(default_factory=list)
    prefixes: dict[str, str] = field(default_factory=dict)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __getitem__(self, i: int) -> Rule:
        return self.rules[i]


@dataclass
class InferenceResult:
    closure: Graph
    inferred: Graph
    iterations: int
    provenance: dict[Triple, str]


# -- fixpoint engine ---------------------------------------------------------

# (rule id, body patterns, head patterns)
_Compiled = tuple[str, tuple[TriplePattern, ...], tuple[TriplePattern, ...]]

_c, _d, _e, _x, _y, _p = (Variable(n) for n in "cdexyp")
SCHEMA_AXIOMS: tuple[_Compiled, ...] = (
    (
        "subclass-transitivity",
        (TriplePattern(_c, RDFS_SUBCLASSOF, _d), TriplePattern(_d, RDFS_SUBCLASSOF, _e)),
        (TriplePattern(_c, RDFS_SUBCLASSOF, _e),),
    ),
    (
        "type-propagation",
        (TriplePattern(_x, RDF_TYPE, _c), TriplePattern(_c, RDFS_SUBCLASSOF, _d)),
        (TriplePattern(_x, RDF_TYPE, _d),),
    ),
    (
        "equivalence-symmetry",
        (TriplePattern(_c, OWL_EQUIVALENTCLASS, _d),),
        (TriplePattern(_d, OWL_EQUIVALENTCLASS, _c),),
    ),
    (
        "equivalence-transitivity",
        (TriplePattern(_c, OWL_EQUIVALENTCLASS, _d), TriplePattern(_d, OWL_EQUIVALENTCLASS, _e)),
        (TriplePattern(_c, OWL_EQUIVALENTCLASS, _e),),
    ),
    (
        "equivalence-subclass",
        (TriplePattern(_c, OWL_EQUIVALENTCLASS, _d),),
        (TriplePattern(_c, RDFS_SUBCLASSOF, _d), TriplePattern(_d, RDFS_SUBCLASSOF, _c)),
    ),
    (
        "domain",
        (TriplePattern(_p, RDFS_DOMAIN, _c), TriplePattern(_x, _p, _y)),
        (TriplePattern(_x, RDF_TYPE, _c),),
    ),
    (
        # literal objects produce no triple: the instantiated head is ill-formed
        "range",
        (TriplePattern(_p, RDFS_RANGE, _c), TriplePattern(_x, _p, _y)),
        (TriplePattern(_y, RDF_TYPE, _c),),
    ),
)


def _compile(rule: Rule) -> _Compiled:
    return (rule.id, tuple(a.pattern() for a in rule.body), tuple(a.pattern() for a in rule.head))


def _bind(term, binding: Mapping[Variable, Term]):
    if isinstance(term, Variable):
        return binding.get(term)
    return term


def _unify(pattern: TriplePattern, triple: Triple, binding: dict[Variable, Term]) -> dict[Variable, Term] | None:
    out = binding
    for pt, tt in zip(pattern, triple):
        if isinstance(pt, Variable):
            bound = out.get(pt)
            if bound is None:
                if out is binding:
                    out = dict(binding)
                out[pt] = tt
            elif bound != tt:
                return None
        elif pt != tt:
            return None
    return out


def _lookup(graph: Graph, pattern: TriplePattern, binding: Mapping[Variable, Term]) -> list[Triple]:
    s, p, o = (_bind(t, binding) for t in pattern)
    if isinstance(p, (Literal, BlankNode)) or isinstance(s, Literal):
        return []
    return graph.triples(s, p, o)


def join(graph: Graph, patterns: Sequence[TriplePattern], binding: dict[Variable, Term] | None = None) -> Iterator[dict[Variable, Term]]:
    """Yield every extension of ``binding`` that maps all ``patterns`` into ``graph``."""
    binding = binding or {}
    if not patterns:
        yield binding
        return
    # most-bound pattern first
    best = max(range(len(patterns)), key=lambda i: (_bound_count(patterns[i], binding), -i))
    rest = list(patterns[:best]) + list(patterns[best + 1 :])
    for triple in _lookup(graph, patterns[best], binding):
        extended = _unify(patterns[best], triple, binding)
        if extended is not None:
            yield from join(graph, rest, extended)


def _bound_count(pattern: TriplePattern, binding: Mapping[Variable, Term]) -> int:
    return sum(not isinstance(t, Variable) or t in binding for t in pattern)


def _instantiate(pattern: TriplePattern, binding: Mapping[Variable, Term]) -> Triple | None:
    s, p, o = (_bind(t, binding) for t in pattern)
    if not isinstance(s, (Iri, BlankNode)) or not isinstance(p, Iri) or o is None:
        return None
    return Triple(s, p, o)


def _saturate(graph: Graph, rules: Sequence[_Compiled]) -> tuple[int, dict[Triple, str]]:
    """Run ``rules`` over ``graph`` (in place) to the least fixpoint."""
    provenance: dict[Triple, str] = {}
    delta = graph.copy()
    iterations = 0
    first = True
    while True:
        iterations += 1
        new: dict[Triple, str] = {}
        for rule_id, body, head in rules:
            for binding in _delta_join(graph, delta, body, first):
                for h in head:
                    t = _instantiate(h, binding)
                    if t is None or t in graph:
                        continue
                    # smallest id wins so provenance ignores rule order
                    if t not in new or rule_id < new[t]:
                        new[t] = rule_id
        first = False
        if not new:
            return iterations, provenance
        delta = Graph(new)
        graph.update(new)
        provenance.update(new)


def _delta_join(graph: Graph, delta: Graph, body: Sequence[TriplePattern], first: bool) -> Iterator[dict]:
    # semi-naive: every new derivation uses at least one fact from the last round
    if not body:
        if first:
            yield {}
        return
    for i, atom in enumerate(body):
        rest = list(body[:i]) + list(body[i + 1 :])
        for triple in _lookup(delta, atom, {}):
            seed = _unify(atom, triple, {})
            if seed is not None:
                yield from join(graph, rest, seed)


def _check_schema(schema: Graph) -> None:
    for t in schema:
        if t.predicate not in SCHEMA_PREDICATES:
            raise MalformedSchema(f"non-axiom predicate in schema graph: {t}")


def _run(data: Graph, schema: Graph, rules: Sequence[_Compiled]) -> InferenceResult:
    _check_schema(schema)
    work = data.merge(schema)
    base = work.triple_set()
    iterations, provenance = _saturate(work, rules)
    inferred = Graph((t for t in work.triple_set() if t not in base), data.prefixes)
    closure = data.copy()
    for label, ns in schema.prefixes.items():
        closure.prefixes.setdefault(label, ns)
    closure.update(inferred.triple_set())
    inferred.prefixes = dict(closure.prefixes)
    return InferenceResult(closure, inferred, iterations, {t: provenance[t] for t in inferred.triple_set()})


def schema_closure(data: Graph, schema: Graph) -> InferenceResult:
    """Materialize subclass, equivalence and domain/range consequences."""
    return _run(data, schema, SCHEMA_AXIOMS)


def apply_rules(data: Graph, rules: Iterable[Rule], schema: Graph) -> InferenceResult:
    """Least fixpoint of the schema axioms together with ``rules``."""
    return _run(data, schema, SCHEMA_AXIOMS + tuple(_compile(r) for r in rules))


# -- rule documents ----------------------------------------------------------


class _RuleParser:
    def __init__(self, text: str, prefixes: Mapping[str, str]):
        self.ts = lx.TokenStream(text)
        self.prefixes = dict(prefixes)

    def parse(self) -> RuleSet:
        ts = self.ts
        rules: list[Rule] = []
        ids: set[str] = set()
        while ts.peek.kind != lx.EOF:
            if ts.at_name("PREFIX"):
                ts.next()
                self.prefix_decl()
                continue
            if ts.peek.kind == lx.AT and ts.peek.value == "prefix":
                ts.next()
                self.prefix_decl()
                ts.expect_punct(".")
                continue
            start = ts.peek
            rule_id = self.label() or f"rule-{len(rules) + 1}"
            if rule_id in ids:
                raise start.error(f"duplicate rule id {rule_id!r}")
            ids.add(rule_id)
            body = self.atoms()
            ts.expect_punct("->")
            head = self.atoms()
            if ts.at_punct("."):
                ts.next()
            # safety is checked before names resolve, so unsafe rules report as such
            head_vars = {a for atom in head for a in atom[1:] if isinstance(a, Variable)}
            body_vars = {a for atom in body for a in atom[1:] if isinstance(a, Variable)}
            unbound = head_vars - body_vars
            if unbound:
                names = ", ".join(f"?{v.name}" for v in sorted(unbound, key=lambda v: v.name))
                raise UnsafeRule(f"rule {rule_id}: head variable {names} does not occur in the body")
            rules.append(Rule(rule_id, tuple(self.resolve(a) for a in body), tuple(self.resolve(a) for a in head)))
        return RuleSet(rules, self.prefixes)

    def prefix_decl(self) -> None:
        tok = self.ts.next()
        if tok.kind != lx.PNAME or tok.value[1]:
            raise tok.error(f"expected prefix label ending in ':', found {lx.describe(tok)}")
        iri = self.ts.next()
        if iri.kind != lx.IRIREF:
            raise iri.error(f"expected namespace IRI, found {lx.describe(iri)}")
        self.prefixes[tok.value[0]] = iri.value

    def label(self) -> str | None:
        ts = self.ts
        if not ts.at_punct("["):
            return None
        ts.next()
        tok = ts.next()
        if tok.kind not in (lx.NAME, lx.PNAME, lx.INTEGER):
            raise tok.error(f"expected rule label, found {lx.describe(tok)}")
        ts.expect_punct("]")
        return tok.text

    def atoms(self) -> list[tuple]:
        out = [self.atom()]
        while self.ts.at_punct("^"):
            self.ts.next()
            out.append(self.atom())
        return out

    def name(self) -> tuple:
        """A constant: ('iri', value) or ('pname', prefix, local, token)."""
        tok = self.ts.next()
        if tok.kind == lx.IRIREF:
            return ("iri", tok.value, tok)
        if tok.kind == lx.PNAME:
            return ("pname", tok.value, tok)
        if tok.kind == lx.NAME:
            # bare names live in the default (empty) prefix
            return ("pname", ("", tok.text), tok)
        raise tok.error(f"expected a name, found {lx.describe(tok)}")

    def atom(self) -> tuple:
        ts = self.ts
        pred = self.name()
        if (pred[0] == "pname" and pred[1][0] == "swrlb") or (pred[0] == "iri" and pred[1].startswith(SWRL_BUILTINS)):
            raise pred[2].error("built-in atoms are not supported")
        ts.expect_punct("(")
        args = [self.arg()]
        while ts.at_punct(","):
            ts.next()
            args.append(self.arg())
        close = ts.peek
        ts.expect_punct(")")
        if len(args) > 2:
            raise close.error(f"atom takes one or two arguments, got {len(args)}")
        return (pred, *args)

    def arg(self):
        tok = self.ts.peek
        if tok.kind == lx.VAR:
            self.ts.next()
            return Variable(tok.value)
        if tok.kind in (lx.IRIREF, lx.PNAME):
            return self.name()
        raise tok.error(f"expected variable or named individual, found {lx.describe(tok)}")

    def iri(self, name: tuple) -> Iri:
        if name[0] == "iri":
            return Iri(name[1])
        prefix, local = name[1]
        if prefix not in self.prefixes:
            raise UnboundPrefix(prefix)
        return Iri(self.prefixes[prefix] + local)

    def resolve(self, raw: tuple) -> Atom:
        pred, *args = raw
        terms = [a if isinstance(a, Variable) else self.iri(a) for a in args]
        if len(terms) == 1:
            return ClassAtom(self.iri(pred), terms[0])
        return PropertyAtom(self.iri(pred), terms[0], terms[1])


def parse_rules(text: str, prefixes: Mapping[str, str] | None = None) -> RuleSet:
    """Parse a rule document.

    Grammar: ``C(?x)`` class atoms and ``P(?x, ?y)`` property atoms joined by
    ``^``, ``->`` between body and head, an optional ``[label]`` before a rule
    and an optional terminating ``.``. ``PREFIX`` lines extend ``prefixes``
    (default: the built-in schema prefixes).
    """
    if prefixes is None:
        from .vocab import builtin_prefixes

        prefixes = builtin_prefixes()
    return _RuleParser(text, prefixes).parse()


def format_rule(rule: Rule, prefixes: Mapping[str, str] | None = None) -> str:
    from .terms import compact

    def atom(a: Atom) -> str:
        if isinstance(a, ClassAtom):
            return f"{compact(a.cls, prefixes)}({compact(a.term, prefixes)})"
        return f"{compact(a.prop, prefixes)}({compact(a.subject, prefixes)}, {compact(a.object, prefixes)})"

    return " ^ ".join(map(atom, rule.body)) + " -> " + " ^ ".join(map(atom, rule.head))


__all__ = [
    "Atom",
    "ClassAtom",
    "InferenceResult",
    "ParseError",
    "PropertyAtom",
    "Rule",
    "RuleSet",
    "SCHEMA_AXIOMS",
    "apply_rules",
    "format_rule",
    "join",
    "parse_rules",
    "schema_closure",
]
