"""Knowledge capitalization toolkit built around seven typed knowledge
object kinds (Illustration, Constraint, Activity, Rule, Resource, Entity,
Function): capture objects from source documents, structure them with
schema-checked relations, evaluate completeness and feasibility, and track
implementation coverage.
"""

from .corpus import Document, Fragment, TraceabilityReport, traceability_report
from .errors import (
    BoundarySplit,
    CycleRejected,
    DuplicateRelation,
    EmptyName,
    HasRelations,
    IllegalEndpoints,
    IllegalTransition,
    InvalidKB,
    InvalidSpan,
    InvalidSubKind,
    InvalidTreeRelation,
    KnowledgeError,
    OutOfBounds,
    ParseError,
    SchemaViolation,
    UnknownDocument,
    UnknownObject,
    UnknownRelation,
    UnknownRule,
    ZeroDepth,
)
from .evaluation import (
    ActivityCoverage,
    CoverageReport,
    FeasibilityReport,
    Finding,
    Severity,
    StateSummary,
    compute_coverage,
    feasibility_report,
    run_completeness,
    state_summary,
)
from .model import (
    Feasibility,
    Kind,
    KnowledgeObject,
    ObjectKind,
    Relation,
    RelationKind,
    State,
    SubKind,
    all_object_kinds,
)
from .schema import KindPattern, RelationSchema, SchemaRow
from .serialization import export_kb, import_kb, load_kb_file, save_kb_file
from .store import KnowledgeBase, Violation
from .structuring import (
    Diagram,
    TaxonomyForest,
    build_diagram,
    build_forest,
    export_graph,
)

__version__ = "0.1.0"
