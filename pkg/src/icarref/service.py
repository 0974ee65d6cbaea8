"""Resource-oriented HTTP service over a knowledge base file.

The file is the single source of truth: the service keeps the KB in memory,
serializes mutations behind a lock, persists each one atomically before the
response goes out, and publishes the committed snapshot for readers. Domain
errors map to 400, unknown ids to 404, and conflicts (illegal transitions,
duplicate relations, rejected cycles) to 409; bodies carry the error name.
"""

from __future__ import annotations

import copy
import threading
from pathlib import Path
from typing import Callable

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import ProjectConfig
from .corpus import traceability_report
from .errors import (
    CycleRejected,
    DuplicateRelation,
    IllegalTransition,
    KnowledgeError,
    UnknownDocument,
    UnknownObject,
    UnknownRelation,
)
from .evaluation import (
    Severity,
    compute_coverage,
    run_completeness,
    state_summary,
)
from .model import Feasibility, Kind, ObjectKind, RelationKind, State, SubKind
from .serialization import (
    document_to_dict,
    fragment_to_dict,
    load_kb_file,
    object_to_dict,
    relation_to_dict,
    save_kb_file,
)
from .store import KnowledgeBase
from .structuring import Diagram, ForestNode, TaxonomyForest, build_diagram, build_forest

NOT_FOUND_ERRORS = (UnknownObject, UnknownRelation, UnknownDocument)
CONFLICT_ERRORS = (IllegalTransition, DuplicateRelation, CycleRejected)


class KBService:
    """Holds the committed snapshot and serializes mutations against it."""

    def __init__(self, kb_path: Path | str, config: ProjectConfig | None = None):
        self.kb_path = Path(kb_path)
        self.config = config
        self._lock = threading.Lock()
        kb = load_kb_file(self.kb_path)
        if config is not None:
            kb.schema = config.apply_schema(kb.schema)
        self.kb = kb

    def mutate(self, operation: Callable[[KnowledgeBase], object]) -> object:
        """Apply one mutation on a copy, persist it, then publish it."""
        with self._lock:
            candidate = copy.deepcopy(self.kb)
            result = operation(candidate)
            save_kb_file(candidate, self.kb_path)
            self.kb = candidate
            return result

    def snapshot(self) -> KnowledgeBase:
        return self.kb


# -- request bodies -----------------------------------------------------------


class ObjectCreate(BaseModel):
    kind: Kind
    sub_kind: SubKind | None = None
    name: str
    description: str = ""


class ObjectUpdate(BaseModel):
    name: str | None = None
    description: str | None = None
    feasibility: Feasibility | None = None


class StateChange(BaseModel):
    state: State


class RelationCreate(BaseModel):
    kind: RelationKind
    source_id: str
    target_id: str


class DocumentCreate(BaseModel):
    title: str
    text: str


class FragmentCreate(BaseModel):
    start: int
    end: int
    object_id: str


# -- response shaping -----------------------------------------------------------


def _forest_node_to_dict(node: ForestNode) -> dict:
    return {
        "object_id": node.object_id,
        "children": [_forest_node_to_dict(child) for child in node.children],
    }


def _forest_to_dict(forest: TaxonomyForest, kb: KnowledgeBase) -> dict:
    return {
        "kind": forest.kind.value,
        "relation": forest.relation.value,
        "roots": [_forest_node_to_dict(root) for root in forest.roots],
        "notices": [
            {
                "object_id": n.object_id,
                "chosen_parent_id": n.chosen_parent_id,
                "other_parent_ids": list(n.other_parent_ids),
            }
            for n in forest.notices
        ],
        "objects": {
            obj_id: object_to_dict(kb.objects[obj_id]) for obj_id in forest.object_ids()
        },
    }


def _diagram_to_dict(diagram: Diagram, kb: KnowledgeBase) -> dict:
    return {
        "root_id": diagram.root_id,
        "depth": diagram.depth,
        "node_ids": list(diagram.node_ids),
        "edge_ids": list(diagram.edge_relation_ids),
        "objects": {i: object_to_dict(kb.objects[i]) for i in diagram.node_ids},
        "relations": {
            i: relation_to_dict(kb.relations[i]) for i in diagram.edge_relation_ids
        },
    }


def _ratio_to_dict(ratio) -> dict:
    return {
        "numerator": ratio.numerator,
        "denominator": ratio.denominator,
        "percent": round(float(ratio) * 100, 1),
    }


def create_app(service: KBService) -> FastAPI:
    app = FastAPI(title="icarref knowledge service")

    @app.exception_handler(KnowledgeError)
    async def knowledge_error_handler(request, exc: KnowledgeError):
        if isinstance(exc, NOT_FOUND_ERRORS):
            status = 404
        elif isinstance(exc, CONFLICT_ERRORS):
            status = 409
        else:
            status = 400
        return JSONResponse(
            status_code=status, content={"error": exc.name, "message": str(exc)}
        )

    # -- objects ---------------------------------------------------------

    @app.get("/objects")
    def list_objects(
        kind: Kind | None = None,
        sub_kind: SubKind | None = None,
        state: State | None = None,
        name: str | None = None,
    ):
        kb = service.snapshot()
        objects = kb.query_objects(kind, sub_kind, state, name)
        return {"objects": [object_to_dict(o) for o in objects]}

    @app.post("/objects", status_code=201)
    def create_object(body: ObjectCreate):
        def op(kb: KnowledgeBase):
            obj = kb.add_object(
                ObjectKind(body.kind, body.sub_kind), body.name, body.description
            )
            return object_to_dict(obj)

        return service.mutate(op)

    @app.get("/objects/{object_id}")
    def read_object(object_id: str):
        return object_to_dict(service.snapshot().get_object(object_id))

    @app.patch("/objects/{object_id}")
    def update_object(object_id: str, body: ObjectUpdate):
        def op(kb: KnowledgeBase):
            obj = kb.update_object(
                object_id, body.name, body.description, body.feasibility
            )
            return object_to_dict(obj)

        return service.mutate(op)

    @app.post("/objects/{object_id}/state")
    def change_state(object_id: str, body: StateChange):
        def op(kb: KnowledgeBase):
            return object_to_dict(kb.set_state(object_id, body.state))

        return service.mutate(op)

    @app.get("/objects/{object_id}/neighbors")
    def object_neighbors(
        object_id: str, direction: str = "both", kind: RelationKind | None = None
    ):
        kb = service.snapshot()
        pairs = kb.neighbors(object_id, direction, kind)
        return {
            "neighbors": [
                {"relation": relation_to_dict(rel), "object": object_to_dict(obj)}
                for rel, obj in pairs
            ]
        }

    # -- relations ----------------------------------------------------------

    @app.get("/relations")
    def list_relations():
        kb = service.snapshot()
        return {
            "relations": [relation_to_dict(kb.relations[i]) for i in sorted(kb.relations)]
        }

    @app.post("/relations", status_code=201)
    def create_relation(body: RelationCreate):
        def op(kb: KnowledgeBase):
            return relation_to_dict(
                kb.add_relation(body.kind, body.source_id, body.target_id)
            )

        return service.mutate(op)

    @app.get("/relations/{relation_id}")
    def read_relation(relation_id: str):
        return relation_to_dict(service.snapshot().get_relation(relation_id))

    @app.delete("/relations/{relation_id}", status_code=204)
    def delete_relation(relation_id: str):
        service.mutate(lambda kb: kb.remove_relation(relation_id))

    # -- documents and fragments ----------------------------------------------

    @app.get("/documents")
    def list_documents():
        kb = service.snapshot()
        return {
            "documents": [
                document_to_dict(kb.documents[i], include_text=False)
                for i in sorted(kb.documents)
            ]
        }

    @app.post("/documents", status_code=201)
    def create_document(body: DocumentCreate):
        def op(kb: KnowledgeBase):
            return document_to_dict(kb.import_document(body.title, body.text))

        return service.mutate(op)

    @app.get("/documents/{document_id}")
    def read_document(document_id: str):
        return document_to_dict(service.snapshot().get_document(document_id))

    @app.get("/documents/{document_id}/fragments")
    def list_fragments(document_id: str):
        kb = service.snapshot()
        doc = kb.get_document(document_id)
        return {
            "fragments": [
                fragment_to_dict(kb.fragments[i], doc)
                for i in sorted(kb.fragments)
                if kb.fragments[i].document_id == document_id
            ]
        }

    @app.post("/documents/{document_id}/fragments", status_code=201)
    def create_fragment(document_id: str, body: FragmentCreate):
        def op(kb: KnowledgeBase):
            frag = kb.anchor_fragment(document_id, body.start, body.end, body.object_id)
            return fragment_to_dict(frag, kb.documents[document_id])

        return service.mutate(op)

    # -- reports -------------------------------------------------------------

    @app.get("/reports/lint")
    def lint_report(rules: str | None = None):
        kb = service.snapshot()
        rule_ids = (
            {part.strip() for part in rules.split(",") if part.strip()}
            if rules
            else None
        )
        overrides = service.config.lint_overrides if service.config else None
        findings = run_completeness(kb, rule_ids, overrides)
        return {
            "findings": [
                {
                    "rule_id": f.rule_id,
                    "severity": f.severity.value,
                    "subject_id": f.subject_id,
                    "message": f.message,
                }
                for f in findings
            ],
            "counts": {
                "Error": sum(1 for f in findings if f.severity == Severity.Error),
                "Warning": sum(1 for f in findings if f.severity == Severity.Warning),
            },
        }

    @app.get("/reports/coverage")
    def coverage_report():
        kb = service.snapshot()
        report = compute_coverage(kb)
        return {
            "per_activity": [
                {
                    "activity_id": row.activity_id,
                    "covered_total": row.covered_total,
                    "implemented": row.implemented,
                    "dismissed": row.dismissed,
                    "ratio": _ratio_to_dict(row.ratio),
                }
                for row in report.per_activity
            ],
            "project_ratio": _ratio_to_dict(report.project_ratio),
            "state_histogram": {
                state.value: count for state, count in report.state_histogram.items()
            },
        }

    @app.get("/reports/states")
    def states_report():
        summary = state_summary(service.snapshot())
        return {
            "total": summary.total,
            "histogram": {s.value: c for s, c in summary.histogram.items()},
            "by_kind": {
                kind.value: {s.value: c for s, c in counts.items()}
                for kind, counts in summary.by_kind.items()
            },
        }

    @app.get("/reports/traceability")
    def traceability():
        kb = service.snapshot()
        report = traceability_report(kb)
        return {
            "unanchored_object_ids": list(report.unanchored_object_ids),
            "per_document": [
                {"document_id": c.document_id, "object_count": c.object_count}
                for c in report.per_document
            ],
        }

    # -- views ------------------------------------------------------------------

    @app.get("/views/forest")
    def forest_view(kind: Kind, relation: RelationKind):
        kb = service.snapshot()
        return _forest_to_dict(build_forest(kb, kind, relation), kb)

    @app.get("/views/diagram")
    def diagram_view(root: str, depth: int, relations: str | None = None):
        kb = service.snapshot()
        relation_kinds = None
        if relations:
            relation_kinds = {
                RelationKind(part.strip())
                for part in relations.split(",")
                if part.strip()
            }
        return _diagram_to_dict(build_diagram(kb, root, depth, relation_kinds), kb)

    return app


def run_service(kb_path: Path | str, port: int, config: ProjectConfig | None = None) -> None:
    """Validate, then block serving HTTP until interrupted."""
    import uvicorn

    service = KBService(kb_path, config)
    app = create_app(service)
    uvicorn.run(app, host="127.0.0.1", port=port)
