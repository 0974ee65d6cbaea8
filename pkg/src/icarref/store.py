"""The knowledge base: an identifier-addressed store of objects, relations,
documents and fragments, with every mutation guarded by the invariants.

Object and document ids come from persisted monotonic counters and are never
reused after removal. Relation and fragment ids are derived from their
content key — (kind, source, target) and (document, start, end) respectively
— so re-adding what was removed restores the exact previous state.

One writer at a time, any number of concurrent readers; callers that share a
knowledge base across threads serialize mutations themselves.
"""

from __future__ import annotations

import hashlib
from collections import defaultdict
from dataclasses import dataclass
from datetime import datetime, timezone

from .corpus import Document, Fragment, checksum_text, fragment_id_for, slice_span
from .errors import (
    BoundarySplit,
    CycleRejected,
    DuplicateRelation,
    EmptyName,
    HasRelations,
    IllegalEndpoints,
    IllegalTransition,
    InvalidSpan,
    OutOfBounds,
    UnknownDocument,
    UnknownObject,
    UnknownRelation,
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
    TREE_RELATIONS,
    can_transition,
)
from .schema import RelationSchema


@dataclass(frozen=True)
class Violation:
    """One structural rule broken, with the id of the offending record."""

    rule: str
    subject_id: str
    message: str


def relation_id_for(kind: RelationKind, source_id: str, target_id: str) -> str:
    digest = hashlib.sha256(
        f"{kind.value}|{source_id}|{target_id}".encode("utf-8")
    ).hexdigest()
    return f"r-{digest[:16]}"


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


class KnowledgeBase:
    """Aggregate root over objects, relations, documents and fragments."""

    def __init__(self, schema: RelationSchema | None = None):
        self.objects: dict[str, KnowledgeObject] = {}
        self.relations: dict[str, Relation] = {}
        self.documents: dict[str, Document] = {}
        self.fragments: dict[str, Fragment] = {}
        self.schema = schema if schema is not None else RelationSchema.default()
        self.next_object_id = 1
        self.next_document_id = 1

    # -- id assignment ----------------------------------------------------

    def _fresh_object_id(self) -> str:
        while True:
            candidate = f"o-{self.next_object_id:08d}"
            self.next_object_id += 1
            if candidate not in self.objects:
                return candidate

    def _fresh_document_id(self) -> str:
        while True:
            candidate = f"d-{self.next_document_id:08d}"
            self.next_document_id += 1
            if candidate not in self.documents:
                return candidate

    # -- object operations -------------------------------------------------

    def add_object(
        self, kind: ObjectKind, name: str, description: str = ""
    ) -> KnowledgeObject:
        """Create an object in its initial state and return it."""
        trimmed = name.strip()
        if not trimmed:
            raise EmptyName("object name must be non-empty after trimming")
        now = _utcnow()
        obj = KnowledgeObject(
            id=self._fresh_object_id(),
            kind=kind,
            name=trimmed,
            description=description,
            created_at=now,
            updated_at=now,
        )
        self.objects[obj.id] = obj
        return obj

    def get_object(self, object_id: str) -> KnowledgeObject:
        try:
            return self.objects[object_id]
        except KeyError:
            raise UnknownObject(f"unknown object: {object_id}") from None

    def update_object(
        self,
        object_id: str,
        name: str | None = None,
        description: str | None = None,
        feasibility: Feasibility | None = None,
    ) -> KnowledgeObject:
        """Edit descriptive fields; state changes go through set_state."""
        obj = self.get_object(object_id)
        changed = False
        if name is not None:
            trimmed = name.strip()
            if not trimmed:
                raise EmptyName("object name must be non-empty after trimming")
            if trimmed != obj.name:
                obj.name = trimmed
                changed = True
        if description is not None and description != obj.description:
            obj.description = description
            changed = True
        if feasibility is not None and feasibility != obj.feasibility:
            obj.feasibility = feasibility
            changed = True
        if changed:
            obj.updated_at = _utcnow()
        return obj

    def set_state(self, object_id: str, new_state: State) -> KnowledgeObject:
        """Move an object along the lifecycle; identity moves are no-ops."""
        obj = self.get_object(object_id)
        if new_state == obj.state:
            return obj
        if not can_transition(obj.state, new_state):
            raise IllegalTransition(
                f"cannot move {object_id} from {obj.state.value} to {new_state.value}"
            )
        obj.state = new_state
        obj.updated_at = _utcnow()
        return obj

    def remove_object(self, object_id: str, cascade: bool = False) -> int:
        """Remove an object; with cascade, also its relations. Returns the
        number of relations removed."""
        self.get_object(object_id)
        incident = sorted(
            rel.id
            for rel in self.relations.values()
            if object_id in (rel.source_id, rel.target_id)
        )
        if incident and not cascade:
            raise HasRelations(
                f"object {object_id} participates in {len(incident)} relation(s): "
                + ", ".join(incident),
                incident,
            )
        for rel_id in incident:
            del self.relations[rel_id]
        del self.objects[object_id]
        return len(incident)

    def query_objects(
        self,
        kind: Kind | None = None,
        sub_kind: SubKind | None = None,
        state: State | None = None,
        name_contains: str | None = None,
    ) -> list[KnowledgeObject]:
        """All objects matching every supplied predicate, ordered by id."""
        needle = name_contains.casefold() if name_contains is not None else None
        results = []
        for obj_id in sorted(self.objects):
            obj = self.objects[obj_id]
            if kind is not None and obj.kind.kind != kind:
                continue
            if sub_kind is not None and obj.kind.sub_kind != sub_kind:
                continue
            if state is not None and obj.state != state:
                continue
            if needle is not None and needle not in obj.name.casefold():
                continue
            results.append(obj)
        return results

    # -- relation operations ------------------------------------------------

    def add_relation(
        self, kind: RelationKind, source_id: str, target_id: str
    ) -> Relation:
        """Insert an edge if the schema row admits it and, for tree
        relations, no directed cycle would be created."""
        source = self.get_object(source_id)
        target = self.get_object(target_id)
        rel_id = relation_id_for(kind, source_id, target_id)
        if rel_id in self.relations:
            raise DuplicateRelation(
                f"relation already exists: {source_id} -{kind.value}-> {target_id}"
            )
        row = self.schema.row_for(kind)
        if not row.admits(source.kind, target.kind):
            raise IllegalEndpoints(
                f"{source.kind} -> {target.kind} violates row "
                f"[{row.describe(kind)}]"
            )
        if kind in TREE_RELATIONS:
            path = self._find_path(kind, target_id, source_id)
            if path is not None:
                cycle = [source_id] + path
                raise CycleRejected(
                    f"{kind.value} edge would close cycle: " + " -> ".join(cycle),
                    cycle,
                )
        rel = Relation(rel_id, kind, source_id, target_id)
        self.relations[rel_id] = rel
        return rel

    def get_relation(self, relation_id: str) -> Relation:
        try:
            return self.relations[relation_id]
        except KeyError:
            raise UnknownRelation(f"unknown relation: {relation_id}") from None

    def remove_relation(self, relation_id: str) -> Relation:
        rel = self.get_relation(relation_id)
        del self.relations[relation_id]
        return rel

    def _find_path(
        self, kind: RelationKind, start: str, goal: str
    ) -> list[str] | None:
        """Directed path start -> goal over edges of one relation kind."""
        if start == goal:
            return [start]
        adjacency: dict[str, list[str]] = defaultdict(list)
        for rel in self.relations.values():
            if rel.kind == kind:
                adjacency[rel.source_id].append(rel.target_id)
        parents: dict[str, str] = {}
        queue = [start]
        seen = {start}
        while queue:
            node = queue.pop(0)
            for nxt in adjacency[node]:
                if nxt in seen:
                    continue
                parents[nxt] = node
                if nxt == goal:
                    path = [goal]
                    while path[-1] != start:
                        path.append(parents[path[-1]])
                    return list(reversed(path))
                seen.add(nxt)
                queue.append(nxt)
        return None

    def neighbors(
        self,
        object_id: str,
        direction: str = "both",
        kind: RelationKind | None = None,
    ) -> list[tuple[Relation, KnowledgeObject]]:
        """Adjacent (relation, object) pairs, ordered by relation id."""
        self.get_object(object_id)
        if direction not in ("outgoing", "incoming", "both"):
            raise ValueError(f"direction must be outgoing/incoming/both, got {direction!r}")
        pairs = []
        for rel_id in sorted(self.relations):
            rel = self.relations[rel_id]
            if kind is not None and rel.kind != kind:
                continue
            if direction in ("outgoing", "both") and rel.source_id == object_id:
                pairs.append((rel, self.objects[rel.target_id]))
            elif direction in ("incoming", "both") and rel.target_id == object_id:
                pairs.append((rel, self.objects[rel.source_id]))
        return pairs

    # -- corpus operations ---------------------------------------------------

    def import_document(self, title: str, text: str) -> Document:
        """Store an immutable document with its content checksum."""
        doc = Document(
            id=self._fresh_document_id(),
            title=title,
            text=text,
            checksum=checksum_text(text),
            imported_at=_utcnow(),
        )
        self.documents[doc.id] = doc
        return doc

    def get_document(self, document_id: str) -> Document:
        try:
            return self.documents[document_id]
        except KeyError:
            raise UnknownDocument(f"unknown document: {document_id}") from None

    def anchor_fragment(
        self, document_id: str, start: int, end: int, object_id: str
    ) -> Fragment:
        """Anchor an object to a byte span of a document. Identical spans
        dedup to one shared fragment."""
        doc = self.get_document(document_id)
        obj = self.get_object(object_id)
        excerpt = slice_span(doc.text.encode("utf-8"), start, end)
        frag_id = fragment_id_for(document_id, start, end)
        fragment = self.fragments.get(frag_id)
        if fragment is None:
            fragment = Fragment(frag_id, document_id, start, end, excerpt)
            self.fragments[frag_id] = fragment
        if frag_id not in obj.fragment_ids:
            obj.fragment_ids.add(frag_id)
            obj.updated_at = _utcnow()
        return fragment

    # -- validation -----------------------------------------------------------

    def validate(self) -> list[Violation]:
        """Scan the whole store against the structural invariants.

        Returns an empty list iff referential integrity, schema legality,
        edge uniqueness, tree acyclicity and fragment soundness all hold.
        Read-only; never raises.
        """
        violations: list[Violation] = []

        for collection in (self.objects, self.relations, self.documents, self.fragments):
            for record_id in sorted(collection):
                if not record_id or any(c.isspace() for c in record_id):
                    violations.append(
                        Violation(
                            "BadId",
                            record_id,
                            f"id {record_id!r} is empty or contains whitespace",
                        )
                    )

        for obj_id in sorted(self.objects):
            obj = self.objects[obj_id]
            if not obj.name.strip():
                violations.append(
                    Violation("EmptyName", obj_id, f"object {obj_id} has an empty name")
                )
            for frag_id in sorted(obj.fragment_ids):
                if frag_id not in self.fragments:
                    violations.append(
                        Violation(
                            "DanglingFragment",
                            obj_id,
                            f"object {obj_id} references missing fragment {frag_id}",
                        )
                    )

        seen_triples: dict[tuple[RelationKind, str, str], str] = {}
        for rel_id in sorted(self.relations):
            rel = self.relations[rel_id]
            dangling = False
            for endpoint in (rel.source_id, rel.target_id):
                if endpoint not in self.objects:
                    violations.append(
                        Violation(
                            "DanglingEndpoint",
                            rel_id,
                            f"relation {rel_id} references missing object {endpoint}",
                        )
                    )
                    dangling = True
            triple = (rel.kind, rel.source_id, rel.target_id)
            if triple in seen_triples:
                violations.append(
                    Violation(
                        "DuplicateRelation",
                        rel_id,
                        f"relation {rel_id} duplicates {seen_triples[triple]} "
                        f"({rel.source_id} -{rel.kind.value}-> {rel.target_id})",
                    )
                )
            else:
                seen_triples[triple] = rel_id
            if not dangling:
                row = self.schema.row_for(rel.kind)
                source = self.objects[rel.source_id]
                target = self.objects[rel.target_id]
                if not row.admits(source.kind, target.kind):
                    violations.append(
                        Violation(
                            "IllegalEndpoints",
                            rel_id,
                            f"relation {rel_id}: {source.kind} -> {target.kind} "
                            f"violates row [{row.describe(rel.kind)}]",
                        )
                    )

        for kind in sorted(TREE_RELATIONS, key=lambda k: k.value):
            cycle = self._find_cycle(kind)
            if cycle is not None:
                violations.append(
                    Violation(
                        "CycleDetected",
                        cycle[0],
                        f"{kind.value} contains cycle: " + " -> ".join(cycle),
                    )
                )

        for frag_id in sorted(self.fragments):
            frag = self.fragments[frag_id]
            doc = self.documents.get(frag.document_id)
            if doc is None:
                violations.append(
                    Violation(
                        "DanglingDocument",
                        frag_id,
                        f"fragment {frag_id} references missing document {frag.document_id}",
                    )
                )
                continue
            text_bytes = doc.text.encode("utf-8")
            try:
                excerpt = slice_span(text_bytes, frag.start, frag.end)
            except (InvalidSpan, OutOfBounds, BoundarySplit) as exc:
                violations.append(
                    Violation(
                        "BadSpan",
                        frag_id,
                        f"fragment {frag_id} span [{frag.start}, {frag.end}) invalid: {exc}",
                    )
                )
                continue
            if excerpt != frag.excerpt:
                violations.append(
                    Violation(
                        "ExcerptMismatch",
                        frag_id,
                        f"fragment {frag_id} excerpt differs from document slice",
                    )
                )

        for doc_id in sorted(self.documents):
            doc = self.documents[doc_id]
            if checksum_text(doc.text) != doc.checksum:
                violations.append(
                    Violation(
                        "ChecksumMismatch",
                        doc_id,
                        f"document {doc_id} checksum does not match its text",
                    )
                )

        violations.sort(key=lambda v: (v.rule, v.subject_id))
        return violations

    def _find_cycle(self, kind: RelationKind) -> list[str] | None:
        """One representative directed cycle over edges of this kind, if any."""
        adjacency: dict[str, list[str]] = defaultdict(list)
        for rel_id in sorted(self.relations):
            rel = self.relations[rel_id]
            if rel.kind == kind:
                adjacency[rel.source_id].append(rel.target_id)
        WHITE, GRAY, BLACK = 0, 1, 2
        color: dict[str, int] = defaultdict(int)
        for start in sorted(adjacency):
            if color[start] != WHITE:
                continue
            stack: list[tuple[str, int]] = [(start, 0)]
            trail = [start]
            color[start] = GRAY
            while stack:
                node, idx = stack[-1]
                if idx < len(adjacency[node]):
                    stack[-1] = (node, idx + 1)
                    nxt = adjacency[node][idx]
                    if color[nxt] == GRAY:
                        cycle = trail[trail.index(nxt):] + [nxt]
                        return cycle
                    if color[nxt] == WHITE:
                        color[nxt] = GRAY
                        stack.append((nxt, 0))
                        trail.append(nxt)
                else:
                    color[node] = BLACK
                    stack.pop()
                    trail.pop()
        return None
