"""Shape-constraint validation for a small SHACL subset.

Node shapes select focus nodes by ``sh:targetClass``; each ``sh:property``
node constrains a single-predicate ``sh:path`` with ``sh:minCount``,
``sh:maxCount``, ``sh:class`` and/or ``sh:datatype``. Validation runs over
the schema closure of the data, so subclass instances are targeted too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import MalformedShape
from .graph import Graph
from .reasoner import schema_closure
from .terms import (
    RDF_TYPE,
    SH,
    XSD,
    XSD_BOOLEAN,
    XSD_INTEGER,
    BlankNode,
    Iri,
    Literal,
    Term,
    Triple,
    compact,
    term_key,
)

ERROR = "error"
WARNING = "warning"

SH_NODESHAPE = Iri(SH + "NodeShape")
SH_TARGETCLASS = Iri(SH + "targetClass")
SH_PROPERTY = Iri(SH + "property")
SH_PATH = Iri(SH + "path")
SH_MINCOUNT = Iri(SH + "minCount")
SH_MAXCOUNT = Iri(SH + "maxCount")
SH_CLASS = Iri(SH + "class")
SH_DATATYPE = Iri(SH + "datatype")
SH_SEVERITY = Iri(SH + "severity")
SH_VIOLATION = Iri(SH + "Violation")
SH_WARNING = Iri(SH + "Warning")

# sh: predicates tolerated on a property node without constraining anything
_ANNOTATIONS = {Iri(SH + n) for n in ("name", "description", "message", "order")}
_CONSTRAINTS = {SH_PATH, SH_MINCOUNT, SH_MAXCOUNT, SH_CLASS, SH_DATATYPE, SH_SEVERITY}


@dataclass(frozen=True)
class PropertyConstraint:
    path: Iri
    min_count: int | None = None
    max_count: int | None = None
    class_constraint: Iri | None = None
    datatype_constraint: Iri | None = None

    def __post_init__(self) -> None:
        if all(
            x is None for x in (self.min_count, self.max_count, self.class_constraint, self.datatype_constraint)
        ):
            raise MalformedShape(f"property constraint on {self.path} constrains nothing")
        for n in (self.min_count, self.max_count):
            if n is not None and n < 0:
                raise MalformedShape(f"negative count on {self.path}")
        if self.min_count is not None and self.max_count is not None and self.min_count > self.max_count:
            raise MalformedShape(f"minCount {self.min_count} exceeds maxCount {self.max_count} on {self.path}")


@dataclass(frozen=True)
class Shape:
    id: Iri | BlankNode
    target_class: Iri
    constraints: tuple[PropertyConstraint, ...]
    name: str = ""
    severity: str = ERROR


@dataclass(frozen=True)
class ValidationResult:
    focus: Term
    path: Iri
    kind: str
    expected: object
    actual: object
    message: str
    severity: str = ERROR
    check: str = ""


@dataclass
class ValidationReport:
    results: list[ValidationResult] = field(default_factory=list)

    @property
    def conforms(self) -> bool:
        return not any(r.severity == ERROR for r in self.results)

    def errors(self) -> list[ValidationResult]:
        return [r for r in self.results if r.severity == ERROR]

    def warnings(self) -> list[ValidationResult]:
        return [r for r in self.results if r.severity == WARNING]


def _single(graph: Graph, node, predicate: Iri, what: str):
    values = graph.objects(node, predicate)
    if len(values) > 1:
        raise MalformedShape(f"{node}: more than one {what}")
    return values[0] if values else None


def _count(graph: Graph, node, predicate: Iri) -> int | None:
    value = _single(graph, node, predicate, compact(predicate, {"sh": SH}))
    if value is None:
        return None
    if not (isinstance(value, Literal) and value.datatype == XSD_INTEGER and value.lexical.lstrip("+").isdigit()):
        raise MalformedShape(f"{node}: {compact(predicate, {'sh': SH})} must be a non-negative integer, got {value}")
    return int(value.lexical)


def _severity(graph: Graph, node) -> str | None:
    value = _single(graph, node, SH_SEVERITY, "sh:severity")
    if value is None:
        return None
    if value == SH_VIOLATION:
        return ERROR
    if value == SH_WARNING:
        return WARNING
    raise MalformedShape(f"{node}: unsupported severity {value}")


def parse_shapes(shape_graph: Graph) -> list[Shape]:
    """One :class:`Shape` per ``sh:NodeShape`` node, in canonical node order."""
    shapes = []
    nodes = sorted(set(shape_graph.subjects(RDF_TYPE, SH_NODESHAPE)), key=term_key)
    for node in nodes:
        target = _single(shape_graph, node, SH_TARGETCLASS, "sh:targetClass")
        if target is None:
            raise MalformedShape(f"{compact(node, shape_graph.prefixes)}: missing sh:targetClass")
        if not isinstance(target, Iri):
            raise MalformedShape(f"{compact(node, shape_graph.prefixes)}: sh:targetClass must be an IRI")
        constraints = []
        for prop in sorted(shape_graph.objects(node, SH_PROPERTY), key=term_key):
            constraints.append(_parse_property(shape_graph, prop))
        shapes.append(
            Shape(
                id=node,
                target_class=target,
                constraints=tuple(constraints),
                name=compact(node, shape_graph.prefixes),
                severity=_severity(shape_graph, node) or ERROR,
            )
        )
    return shapes


def _parse_property(graph: Graph, node) -> PropertyConstraint:
    label = compact(node, graph.prefixes)
    for t in graph.triples(node, None, None):
        if t.predicate.value.startswith(SH) and t.predicate not in _CONSTRAINTS | _ANNOTATIONS:
            raise MalformedShape(f"{label}: unknown constraint {compact(t.predicate, {'sh': SH})}")
    path = _single(graph, node, SH_PATH, "sh:path")
    if path is None:
        raise MalformedShape(f"{label}: missing sh:path")
    if not isinstance(path, Iri):
        raise MalformedShape(f"{label}: sh:path must be a single predicate IRI")
    cls = _single(graph, node, SH_CLASS, "sh:class")
    dt = _single(graph, node, SH_DATATYPE, "sh:datatype")
    for what, value in (("sh:class", cls), ("sh:datatype", dt)):
        if value is not None and not isinstance(value, Iri):
            raise MalformedShape(f"{label}: {what} must be an IRI")
    return PropertyConstraint(
        path=path,
        min_count=_count(graph, node, SH_MINCOUNT),
        max_count=_count(graph, node, SH_MAXCOUNT),
        class_constraint=cls,
        datatype_constraint=dt,
    )


def validate(data: Graph, shapes: Sequence[Shape], schema: Graph | None = None) -> ValidationReport:
    """Check ``shapes`` against the schema closure of ``data``."""
    closure = schema_closure(data, schema if schema is not None else Graph()).closure
    return validate_closure(closure, shapes)


def validate_closure(closure: Graph, shapes: Sequence[Shape]) -> ValidationReport:
    """Like :func:`validate` for a graph that is already closed."""
    keyed = []
    for si, shape in enumerate(shapes):
        focus_nodes = sorted(set(closure.subjects(RDF_TYPE, shape.target_class)), key=term_key)
        for focus in focus_nodes:
            for ci, constraint in enumerate(shape.constraints):
                for vi, result in enumerate(_check(closure, shape, focus, constraint)):
                    keyed.append(((term_key(focus), si, ci, vi), result))
    keyed.sort(key=lambda kr: kr[0])
    return ValidationReport([r for _, r in keyed])


def _check(closure: Graph, shape: Shape, focus, c: PropertyConstraint) -> list[ValidationResult]:
    values = sorted(closure.objects(focus, c.path), key=term_key)
    out = []

    def fail(kind, expected, actual, message):
        out.append(ValidationResult(focus, c.path, kind, expected, actual, message, shape.severity, shape.name))

    n = len(values)
    if c.min_count is not None and n < c.min_count:
        fail("minCount", c.min_count, n, f"expected at least {c.min_count} value(s), found {n}")
    if c.max_count is not None and n > c.max_count:
        fail("maxCount", c.max_count, n, f"expected at most {c.max_count} value(s), found {n}")
    if c.class_constraint is not None:
        for v in values:
            if isinstance(v, Literal) or Triple(v, RDF_TYPE, c.class_constraint) not in closure:
                fail("class", c.class_constraint, v, f"value {v} is not an instance of {c.class_constraint}")
    if c.datatype_constraint is not None:
        for v in values:
            if not (isinstance(v, Literal) and v.datatype == c.datatype_constraint):
                fail("datatype", c.datatype_constraint, v, f"value {v} does not have datatype {c.datatype_constraint}")
    return out


# -- machine-readable report -------------------------------------------------

_COMPONENT = {
    "minCount": "MinCountConstraintComponent",
    "maxCount": "MaxCountConstraintComponent",
    "class": "ClassConstraintComponent",
    "datatype": "DatatypeConstraintComponent",
}


def report_graph(report: ValidationReport, prefixes: Mapping[str, str] | None = None) -> Graph:
    """Turtle-exportable report graph using the shapes vocabulary."""
    g = Graph(prefixes={"sh": SH, "xsd": XSD, **(prefixes or {})})
    root = BlankNode("report")
    g.add(Triple(root, RDF_TYPE, Iri(SH + "ValidationReport")))
    g.add(Triple(root, Iri(SH + "conforms"), Literal("true" if report.conforms else "false", XSD_BOOLEAN)))
    for i, r in enumerate(report.results):
        node = BlankNode(f"result{i}")
        g.add(Triple(root, Iri(SH + "result"), node))
        g.add(Triple(node, RDF_TYPE, Iri(SH + "ValidationResult")))
        g.add(Triple(node, Iri(SH + "focusNode"), r.focus))
        g.add(Triple(node, Iri(SH + "resultPath"), r.path))
        g.add(Triple(node, Iri(SH + "resultMessage"), Literal(r.message)))
        g.add(Triple(node, Iri(SH + "resultSeverity"), SH_VIOLATION if r.severity == ERROR else SH_WARNING))
        component = _COMPONENT.get(r.kind)
        if component:
            g.add(Triple(node, Iri(SH + "sourceConstraintComponent"), Iri(SH + component)))
    return g
