"""Built-in well-formedness checks for AIAS knowledge graphs.

L1 (error)   every ISO7489:Communication links at least two components via
             AIAS:communicatesWith.
L2 (warning) every VDI3682:Assignment is referenced through AIAS:isAssignedTo
             by at least one function and at least one component.
L3 (warning) every ISO22989:AISystem names at least one task via
             ISO22989:hasTask.
"""

from __future__ import annotations

from typing import Mapping

from ..graph import Graph
from ..reasoner import schema_closure
from ..shapes import ERROR, WARNING, PropertyConstraint, Shape, ValidationReport, ValidationResult, validate_closure
from ..terms import RDF_TYPE, Iri, Triple, term_key
from . import merged_schema, resolve_namespaces

LINT_CHECKS = {
    "L1": (ERROR, "communication between fewer than two components"),
    "L2": (WARNING, "assignment not referenced by both a function and a component"),
    "L3": (WARNING, "AI system without a task"),
}


def lint_shapes(namespaces: Mapping[str, str] | None = None) -> list[Shape]:
    ns = resolve_namespaces(namespaces)
    aias, iso7489, iso22989 = ns["AIAS"], ns["ISO7489"], ns["ISO22989"]
    return [
        Shape(
            id=Iri(aias + "lint-L1"),
            target_class=Iri(iso7489 + "Communication"),
            constraints=(PropertyConstraint(Iri(aias + "communicatesWith"), min_count=2),),
            name="L1",
            severity=ERROR,
        ),
        Shape(
            id=Iri(aias + "lint-L3"),
            target_class=Iri(iso22989 + "AISystem"),
            constraints=(PropertyConstraint(Iri(iso22989 + "hasTask"), min_count=1),),
            name="L3",
            severity=WARNING,
        ),
    ]


def _check_assignments(closure: Graph, ns: Mapping[str, str]) -> list[ValidationResult]:
    assigned_to = Iri(ns["AIAS"] + "isAssignedTo")
    function = Iri(ns["AIAS"] + "Function")
    component = Iri(ns["AIAS"] + "Component")
    results = []
    for a in sorted(set(closure.subjects(RDF_TYPE, Iri(ns["VDI3682"] + "Assignment"))), key=term_key):
        referrers = closure.subjects(assigned_to, a)
        for kind, cls in (("function", function), ("component", component)):
            n = sum(Triple(r, RDF_TYPE, cls) in closure for r in referrers)
            if n == 0:
                results.append(
                    ValidationResult(
                        focus=a,
                        path=assigned_to,
                        kind="inverseMinCount",
                        expected=1,
                        actual=0,
                        message=f"no {kind} is assigned to this assignment",
                        severity=WARNING,
                        check="L2",
                    )
                )
    return results


def lint_aias(data: Graph, namespaces: Mapping[str, str] | None = None) -> ValidationReport:
    """Run the built-in checks on the schema closure of ``data``."""
    ns = resolve_namespaces(namespaces)
    closure = schema_closure(data, merged_schema(ns)).closure
    results = validate_closure(closure, lint_shapes(ns)).results + _check_assignments(closure, ns)
    results.sort(key=lambda r: (term_key(r.focus), r.check, r.message))
    return ValidationReport(results)
