"""The stamping-machine use case as a knowledge graph, plus its companions.

Besides the instance graph this module holds the rule file, the
communication shape, the four competency queries and their expected rows.
Everything is built from plain strings and named IRIs (no blank nodes), so
exported files are byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .query import SolutionSequence, Variable
from .terms import RDF_TYPE, XSD_DECIMAL, Iri, Literal, Triple
from .turtle import serialize_turtle
from .vocab import DEFAULT_NAMESPACES, STANDARD_PREFIXES

EX = "https://w3id.org/aias/examples/stamping#"
AIAS = DEFAULT_NAMESPACES["AIAS"]
VDI3682 = DEFAULT_NAMESPACES["VDI3682"]
ISO7489 = DEFAULT_NAMESPACES["ISO7489"]
ISO22989 = DEFAULT_NAMESPACES["ISO22989"]

CORPUS_PREFIXES = {
    "rdf": STANDARD_PREFIXES["rdf"],
    "xsd": STANDARD_PREFIXES["xsd"],
    "AIAS": AIAS,
    "VDI3682": VDI3682,
    "ISO7489": ISO7489,
    "ISO22989": ISO22989,
    "ex": EX,
}


def ex(name: str) -> Iri:
    return Iri(EX + name)


def aias(name: str) -> Iri:
    return Iri(AIAS + name)


def vdi(name: str) -> Iri:
    return Iri(VDI3682 + name)


def osi(name: str) -> Iri:
    return Iri(ISO7489 + name)


def iso(name: str) -> Iri:
    return Iri(ISO22989 + name)


def build_stamping_graph() -> Graph:
    g = Graph(prefixes=CORPUS_PREFIXES)

    def add(s: Iri, p: Iri, o) -> None:
        g.add(Triple(s, p, o))

    def typed(s: str, cls: Iri) -> Iri:
        node = ex(s)
        add(node, RDF_TYPE, cls)
        return node

    # resources
    sensor = typed("PositionSensor", aias("Sensor"))
    motor = typed("DriveMotor", aias("Actuator"))
    controller = typed("Controller1", aias("Controller"))
    edge = typed("Edge1", aias("EdgeDevice"))
    cloud = typed("Cloud1", aias("CloudSystem"))

    # technical process: blank sheets are stamped into parts
    stamping = typed("Stamping", vdi("ProcessOperator"))
    sheet = typed("BlankSheet", vdi("Product"))
    part = typed("StampedPart", vdi("Product"))
    flow_in = typed("Flow_BlankSheet", aias("Flow"))
    add(flow_in, aias("flowsFrom"), sheet)
    add(flow_in, aias("flowsTo"), stamping)
    flow_out = typed("Flow_StampedPart", aias("Flow"))
    add(flow_out, aias("flowsFrom"), stamping)
    add(flow_out, aias("flowsTo"), part)

    def assign(name: str, function: Iri, component: Iri) -> Iri:
        a = typed(name, vdi("Assignment"))
        add(function, aias("isAssignedTo"), a)
        add(component, aias("isAssignedTo"), a)
        return a

    assign("A_stamp", stamping, motor)

    # communication chain sensor -> controller -> edge -> cloud; technology
    # nodes are typed with the OSI layers they cover (illustrative)
    def communication(name: str, a: Iri, b: Iri, tech: str, layers: tuple[str, ...]) -> None:
        c = typed(name, osi("Communication"))
        add(c, aias("communicatesWith"), a)
        add(c, aias("communicatesWith"), b)
        t = ex(tech)
        for layer in layers:
            add(t, RDF_TYPE, osi(layer))
        add(c, osi("usesTechnologyAtLayer"), t)

    communication("Comm_SC", sensor, controller, "Tech_Bus", ("Physical", "DataLink"))
    communication("Comm_CE", controller, edge, "Tech_Ethernet", ("DataLink",))
    communication("Comm_EC", edge, cloud, "Tech_Internet", ("Network",))

    # AI system classifying the drive belt condition
    system = typed("AISystem1", iso("AISystem"))
    task = typed("Task_BeltCondition", iso("Classification"))
    add(system, iso("hasTask"), task)
    model = typed("Model_NN", iso("MLModel"))
    hyper = typed("Hyper_LearningRate", iso("Hyperparameter"))
    add(hyper, iso("hasValue"), Literal("0.001", XSD_DECIMAL))
    param = typed("Param_Weights", iso("ModelParameter"))
    add(param, iso("hasValue"), Literal("layer weights of the trained network"))
    add(model, iso("hasHyperparameter"), hyper)
    add(model, iso("hasModelParameter"), param)

    training_data = typed("Data_Training", iso("TrainingData"))
    production_data = typed("Data_Production", iso("ProductionData"))

    training = typed("Training1", iso("Training"))
    add(training, iso("produces"), model)
    add(training, iso("usesData"), training_data)
    inference = typed("Inference1", iso("Inference"))
    add(inference, iso("usesModel"), model)
    add(inference, iso("usesData"), production_data)
    acquisition = typed("Acquisition1", iso("DataAcquisition"))
    add(acquisition, iso("acquiresFrom"), sensor)
    add(acquisition, iso("usesData"), production_data)

    assign("A_train", training, cloud)
    assign("A_inf", inference, cloud)
    assign("A_acq", acquisition, sensor)
    return g


# -- companion documents -----------------------------------------------------

TRAINING_QUERY = """SELECT ?assignment ?component
WHERE
{
?training a ISO22989:Training .
?training AIAS:isAssignedTo ?assignment .
?component AIAS:isAssignedTo ?assignment .
}
"""

# The plain query also binds ?component to the training function itself; this
# variant keeps only components.
Q1_TYPED_QUERY = """SELECT ?assignment ?component
WHERE
{
?training a ISO22989:Training .
?training AIAS:isAssignedTo ?assignment .
?component AIAS:isAssignedTo ?assignment .
?component a AIAS:Component .
}
"""

Q2_QUERY = """# What communication path does the model use?
SELECT ?communication ?component
WHERE {
  ?inference a ISO22989:Inference .
  ?inference AIAS:isAssignedTo ?assignment .
  ?component AIAS:isAssignedTo ?assignment .
  ?component a AIAS:Component .
  ?communication AIAS:communicatesWith ?component .
}
"""

Q3_QUERY = """# Where is the production data recorded?
SELECT ?resource
WHERE {
  ?data a ISO22989:ProductionData .
  ?acquisition a ISO22989:DataAcquisition .
  ?acquisition ISO22989:usesData ?data .
  ?acquisition AIAS:isAssignedTo ?assignment .
  ?resource AIAS:isAssignedTo ?assignment .
  ?resource a AIAS:Resource .
}
"""

Q4_QUERY = """# Which kind of task does the model solve?
SELECT ?task
WHERE {
  ?system a ISO22989:AISystem .
  ?system ISO22989:hasTask ?task .
  ?task a ISO22989:Classification .
}
"""

CLOUD_DESIGN_RULE = """AIAS:CloudSystem(?c) ^ VDI3682:Assignment(?a) ^
AIAS:isAssignedTo(?c, ?a) ^ ISO22989:Training(?t) ^
AIAS:isAssignedTo(?t, ?a) ->  ISO22989:hasDesign(AIAS:AISystem, AIAS:CloudDesign)
"""

RULES_DOCUMENT = (
    """# Cloud system design for the stamping AI system.
# The first rule is the original rule as written: its body matches a
# Training function although the accompanying prose says "inference".
# The second rule states the inference reading. Both derive the same triple.
[cloud-design-training]
"""
    + CLOUD_DESIGN_RULE
    + """
[cloud-design-inference]
AIAS:CloudSystem(?c) ^ VDI3682:Assignment(?a) ^
AIAS:isAssignedTo(?c, ?a) ^ ISO22989:Inference(?i) ^
AIAS:isAssignedTo(?i, ?a) -> ISO22989:hasDesign(AIAS:AISystem, AIAS:CloudDesign)
"""
)

COMMUNICATION_SHAPE = """AIAS:Communication
    a sh:NodeShape  ;
    sh:targetClass ISO7489:Communication ;
    sh:property
    [   sh:path AIAS:communicatesWith ;
        sh:minCount 2;  ].
"""

SHAPES_DOCUMENT = (
    "@prefix sh: <http://www.w3.org/ns/shacl#> .\n"
    f"@prefix AIAS: <{AIAS}> .\n"
    f"@prefix ISO7489: <{ISO7489}> .\n"
    "\n"
    "# every communication must occur between at least two components\n" + COMMUNICATION_SHAPE
)


@dataclass(frozen=True)
class CompetencyCase:
    id: str
    question: str
    query: str
    expected: SolutionSequence
    requires_inference: bool = True


def _rows(names: tuple[str, ...], *rows: tuple[str, ...]) -> SolutionSequence:
    return SolutionSequence(tuple(Variable(n) for n in names), tuple(tuple(ex(x) for x in r) for r in rows))


def competency_suite() -> list[CompetencyCase]:
    return [
        CompetencyCase(
            "q1",
            "Where is the model trained?",
            TRAINING_QUERY,
            _rows(("assignment", "component"), ("A_train", "Cloud1"), ("A_train", "Training1")),
            requires_inference=False,
        ),
        CompetencyCase(
            "q1_typed",
            "Where is the model trained? (components only)",
            Q1_TYPED_QUERY,
            _rows(("assignment", "component"), ("A_train", "Cloud1")),
        ),
        CompetencyCase(
            "q2",
            "What communication path does the model use?",
            Q2_QUERY,
            _rows(("communication", "component"), ("Comm_EC", "Cloud1")),
        ),
        CompetencyCase(
            "q3",
            "Where is the production data recorded?",
            Q3_QUERY,
            _rows(("resource",), ("PositionSensor",)),
        ),
        CompetencyCase(
            "q4",
            "Which kind of task does the model solve?",
            Q4_QUERY,
            _rows(("task",), ("Task_BeltCondition",)),
            requires_inference=False,
        ),
    ]


def artifact_files() -> dict[str, str]:
    """File name -> content for the ``example stamping`` CLI command."""
    files = {
        "stamping.ttl": serialize_turtle(build_stamping_graph()),
        "stamping.rules": RULES_DOCUMENT,
        "communication.shapes.ttl": SHAPES_DOCUMENT,
    }
    for case in competency_suite():
        files[f"{case.id}.rq"] = case.query
    return files
