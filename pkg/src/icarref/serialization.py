"""Knowledge base persistence: XML and CSV (lossless, round-trippable) plus
a plain-text report (human-readable, not re-importable).

Both storage formats are UTF-8 and byte-deterministic: records are emitted
sorted by id and equal knowledge bases always produce identical bytes.

Free-text fields (names, descriptions, document titles and text) may contain
characters that XML 1.0 cannot carry or that would be mangled in transit
(NUL, carriage returns XML parsers normalize away). Such values are stored
base64-encoded and tagged with ``encoding="base64"``; everything else stays
readable as ``plain``. Fragment excerpts are not stored; they are recomputed
from the document text on import and re-verified.
"""

from __future__ import annotations

import base64
import csv
import io
import os
import tempfile
import xml.etree.ElementTree as ET
from datetime import datetime
from pathlib import Path
from typing import Iterable

from .corpus import Document, Fragment, slice_span
from .errors import (
    BoundarySplit,
    InvalidKB,
    InvalidSpan,
    InvalidSubKind,
    OutOfBounds,
    ParseError,
    SchemaViolation,
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
)
from .schema import KindPattern, RelationSchema, SchemaRow
from .store import KnowledgeBase

FORMAT_XML = "xml"
FORMAT_CSV = "csv"
FORMAT_PLAIN = "plain_text"
EXPORT_FORMATS = (FORMAT_XML, FORMAT_CSV, FORMAT_PLAIN)
IMPORT_FORMATS = (FORMAT_XML, FORMAT_CSV)

FILE_VERSION = "1"


# -- free-text encoding -------------------------------------------------------


def _needs_base64(value: str) -> bool:
    return any(
        (ord(c) < 0x20 and c not in "\t\n") or c in "￾￿" for c in value
    )


def encode_text(value: str) -> tuple[str, str]:
    """Return (encoding, payload) with encoding ``plain`` or ``base64``."""
    if _needs_base64(value):
        return "base64", base64.b64encode(value.encode("utf-8")).decode("ascii")
    return "plain", value


def decode_text(encoding: str, payload: str) -> str:
    if encoding == "plain":
        return payload
    if encoding == "base64":
        try:
            return base64.b64decode(payload.encode("ascii"), validate=True).decode("utf-8")
        except Exception as exc:
            raise SchemaViolation(f"invalid base64 text payload: {exc}") from None
    raise SchemaViolation(f"unknown text encoding: {encoding!r}")


def _ts(moment: datetime) -> str:
    return moment.isoformat()


def _parse_ts(text: str, context: str) -> datetime:
    try:
        return datetime.fromisoformat(text)
    except ValueError:
        raise SchemaViolation(f"{context}: bad timestamp {text!r}") from None


# -- wire dictionaries (shared by the HTTP API) -------------------------------


def object_to_dict(obj: KnowledgeObject) -> dict:
    return {
        "id": obj.id,
        "kind": obj.kind.kind.value,
        "sub_kind": obj.kind.sub_kind.value if obj.kind.sub_kind else None,
        "name": obj.name,
        "description": obj.description,
        "state": obj.state.value,
        "feasibility": obj.feasibility.value,
        "fragment_ids": sorted(obj.fragment_ids),
        "created_at": _ts(obj.created_at),
        "updated_at": _ts(obj.updated_at),
    }


def relation_to_dict(rel: Relation) -> dict:
    return {
        "id": rel.id,
        "kind": rel.kind.value,
        "source_id": rel.source_id,
        "target_id": rel.target_id,
    }


def document_to_dict(doc: Document, include_text: bool = True) -> dict:
    data = {
        "id": doc.id,
        "title": doc.title,
        "checksum": doc.checksum,
        "imported_at": _ts(doc.imported_at),
    }
    if include_text:
        data["text"] = doc.text
    return data


def fragment_to_dict(frag: Fragment, doc: Document | None = None) -> dict:
    data = {
        "id": frag.id,
        "document_id": frag.document_id,
        "start": frag.start,
        "end": frag.end,
        "excerpt": frag.excerpt,
    }
    if doc is not None:
        text_bytes = doc.text.encode("utf-8")
        data["char_start"] = len(text_bytes[: frag.start].decode("utf-8"))
        data["char_end"] = len(text_bytes[: frag.end].decode("utf-8"))
    return data


# -- XML ----------------------------------------------------------------------


def _xml_text_child(parent: ET.Element, tag: str, value: str) -> None:
    encoding, payload = encode_text(value)
    element = ET.SubElement(parent, tag)
    if encoding != "plain":
        element.set("encoding", encoding)
    element.text = payload if payload else None


def _xml_read_text_child(parent: ET.Element, tag: str) -> str:
    element = parent.find(tag)
    if element is None:
        return ""
    return decode_text(element.get("encoding", "plain"), element.text or "")


def export_xml(kb: KnowledgeBase) -> bytes:
    root = ET.Element(
        "knowledge_base",
        version=FILE_VERSION,
        next_object_id=str(kb.next_object_id),
        next_document_id=str(kb.next_document_id),
    )

    schema_el = ET.SubElement(root, "schema")
    for rel_kind in RelationKind:
        row = kb.schema.rows[rel_kind]
        ET.SubElement(
            schema_el,
            "relation",
            kind=rel_kind.value,
            source=" ".join(str(p) for p in row.source),
            target=" ".join(str(p) for p in row.target),
            same_kind="true" if row.same_kind else "false",
        )

    objects_el = ET.SubElement(root, "objects")
    for obj_id in sorted(kb.objects):
        obj = kb.objects[obj_id]
        attrs = {"id": obj.id, "kind": obj.kind.kind.value}
        if obj.kind.sub_kind is not None:
            attrs["sub_kind"] = obj.kind.sub_kind.value
        attrs.update(
            state=obj.state.value,
            feasibility=obj.feasibility.value,
            created_at=_ts(obj.created_at),
            updated_at=_ts(obj.updated_at),
        )
        obj_el = ET.SubElement(objects_el, "object", attrs)
        _xml_text_child(obj_el, "name", obj.name)
        _xml_text_child(obj_el, "description", obj.description)
        if obj.fragment_ids:
            frags_el = ET.SubElement(obj_el, "fragments")
            for frag_id in sorted(obj.fragment_ids):
                ET.SubElement(frags_el, "ref", id=frag_id)

    relations_el = ET.SubElement(root, "relations")
    for rel_id in sorted(kb.relations):
        rel = kb.relations[rel_id]
        ET.SubElement(
            relations_el,
            "relation",
            id=rel.id,
            kind=rel.kind.value,
            source_id=rel.source_id,
            target_id=rel.target_id,
        )

    documents_el = ET.SubElement(root, "documents")
    for doc_id in sorted(kb.documents):
        doc = kb.documents[doc_id]
        doc_el = ET.SubElement(
            documents_el,
            "document",
            id=doc.id,
            checksum=doc.checksum,
            imported_at=_ts(doc.imported_at),
        )
        _xml_text_child(doc_el, "title", doc.title)
        _xml_text_child(doc_el, "text", doc.text)

    fragments_el = ET.SubElement(root, "fragments")
    for frag_id in sorted(kb.fragments):
        frag = kb.fragments[frag_id]
        ET.SubElement(
            fragments_el,
            "fragment",
            id=frag.id,
            document_id=frag.document_id,
            start=str(frag.start),
            end=str(frag.end),
        )

    ET.indent(root, space="  ")
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


def _require_attr(element: ET.Element, attr: str, context: str) -> str:
    value = element.get(attr)
    if value is None:
        raise SchemaViolation(f"{context}: missing attribute {attr!r}")
    return value


def _parse_enum(enum_cls, value: str, context: str):
    try:
        return enum_cls(value)
    except ValueError:
        raise SchemaViolation(
            f"{context}: {value!r} is not a valid {enum_cls.__name__}"
        ) from None


def _parse_int(value: str, context: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise SchemaViolation(f"{context}: {value!r} is not an integer") from None


def _parse_object_kind(kind_text: str, sub_text: str | None, context: str) -> ObjectKind:
    kind = _parse_enum(Kind, kind_text, context)
    sub = _parse_enum(SubKind, sub_text, context) if sub_text is not None else None
    try:
        return ObjectKind(kind, sub)
    except InvalidSubKind as exc:
        raise SchemaViolation(f"{context}: {exc}") from None


def _parse_schema_row(source: str, target: str, same_kind: str, context: str) -> SchemaRow:
    try:
        source_pats = tuple(KindPattern.parse(p) for p in source.split())
        target_pats = tuple(KindPattern.parse(p) for p in target.split())
    except ValueError as exc:
        raise SchemaViolation(f"{context}: {exc}") from None
    if not source_pats or not target_pats:
        raise SchemaViolation(f"{context}: empty endpoint pattern list")
    if same_kind not in ("true", "false"):
        raise SchemaViolation(f"{context}: same_kind must be true/false, got {same_kind!r}")
    return SchemaRow(source_pats, target_pats, same_kind == "true")


def _derive_counter(ids: Iterable[str], prefix: str) -> int:
    highest = 0
    for record_id in ids:
        if record_id.startswith(prefix) and record_id[len(prefix):].isdigit():
            highest = max(highest, int(record_id[len(prefix):]))
    return highest + 1


def _finish_import(kb: KnowledgeBase) -> KnowledgeBase:
    violations = kb.validate()
    if violations:
        listed = "; ".join(v.message for v in violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        raise SchemaViolation(f"imported knowledge base is invalid: {listed}{more}")
    return kb


def _rebuild_fragment(kb: KnowledgeBase, frag_id: str, document_id: str, start: int, end: int) -> Fragment:
    """Recompute the excerpt when possible; integrity problems are reported
    by the final validation pass."""
    excerpt = ""
    doc = kb.documents.get(document_id)
    if doc is not None:
        try:
            excerpt = slice_span(doc.text.encode("utf-8"), start, end)
        except (InvalidSpan, OutOfBounds, BoundarySplit):
            pass
    return Fragment(frag_id, document_id, start, end, excerpt)


def import_xml(data: bytes) -> KnowledgeBase:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise ParseError(f"not well-formed XML: {exc}") from None
    if root.tag != "knowledge_base":
        raise SchemaViolation(f"unexpected root element {root.tag!r}")

    kb = KnowledgeBase()

    schema_el = root.find("schema")
    if schema_el is not None:
        rows: dict[RelationKind, SchemaRow] = {}
        for element in schema_el:
            if element.tag != "relation":
                raise SchemaViolation(f"unexpected element {element.tag!r} in schema")
            kind = _parse_enum(RelationKind, _require_attr(element, "kind", "schema row"), "schema row")
            context = f"schema row {kind.value}"
            rows[kind] = _parse_schema_row(
                _require_attr(element, "source", context),
                _require_attr(element, "target", context),
                element.get("same_kind", "false"),
                context,
            )
        kb.schema = RelationSchema.default().with_overrides(rows)

    objects_el = root.find("objects")
    for element in objects_el if objects_el is not None else []:
        if element.tag != "object":
            raise SchemaViolation(f"unexpected element {element.tag!r} in objects")
        obj_id = _require_attr(element, "id", "object")
        context = f"object {obj_id}"
        if obj_id in kb.objects:
            raise SchemaViolation(f"{context}: duplicate id")
        kind = _parse_object_kind(
            _require_attr(element, "kind", context), element.get("sub_kind"), context
        )
        obj = KnowledgeObject(
            id=obj_id,
            kind=kind,
            name=_xml_read_text_child(element, "name"),
            description=_xml_read_text_child(element, "description"),
            state=_parse_enum(State, _require_attr(element, "state", context), context),
            feasibility=_parse_enum(
                Feasibility, _require_attr(element, "feasibility", context), context
            ),
            created_at=_parse_ts(_require_attr(element, "created_at", context), context),
            updated_at=_parse_ts(_require_attr(element, "updated_at", context), context),
        )
        frags_el = element.find("fragments")
        if frags_el is not None:
            for ref in frags_el:
                obj.fragment_ids.add(_require_attr(ref, "id", f"{context} fragment ref"))
        kb.objects[obj_id] = obj

    relations_el = root.find("relations")
    for element in relations_el if relations_el is not None else []:
        if element.tag != "relation":
            raise SchemaViolation(f"unexpected element {element.tag!r} in relations")
        rel_id = _require_attr(element, "id", "relation")
        context = f"relation {rel_id}"
        if rel_id in kb.relations:
            raise SchemaViolation(f"{context}: duplicate id")
        kb.relations[rel_id] = Relation(
            id=rel_id,
            kind=_parse_enum(RelationKind, _require_attr(element, "kind", context), context),
            source_id=_require_attr(element, "source_id", context),
            target_id=_require_attr(element, "target_id", context),
        )

    documents_el = root.find("documents")
    for element in documents_el if documents_el is not None else []:
        if element.tag != "document":
            raise SchemaViolation(f"unexpected element {element.tag!r} in documents")
        doc_id = _require_attr(element, "id", "document")
        context = f"document {doc_id}"
        if doc_id in kb.documents:
            raise SchemaViolation(f"{context}: duplicate id")
        kb.documents[doc_id] = Document(
            id=doc_id,
            title=_xml_read_text_child(element, "title"),
            text=_xml_read_text_child(element, "text"),
            checksum=_require_attr(element, "checksum", context),
            imported_at=_parse_ts(_require_attr(element, "imported_at", context), context),
        )

    fragments_el = root.find("fragments")
    for element in fragments_el if fragments_el is not None else []:
        if element.tag != "fragment":
            raise SchemaViolation(f"unexpected element {element.tag!r} in fragments")
        frag_id = _require_attr(element, "id", "fragment")
        context = f"fragment {frag_id}"
        if frag_id in kb.fragments:
            raise SchemaViolation(f"{context}: duplicate id")
        kb.fragments[frag_id] = _rebuild_fragment(
            kb,
            frag_id,
            _require_attr(element, "document_id", context),
            _parse_int(_require_attr(element, "start", context), context),
            _parse_int(_require_attr(element, "end", context), context),
        )

    kb.next_object_id = (
        _parse_int(root.get("next_object_id"), "next_object_id")
        if root.get("next_object_id") is not None
        else _derive_counter(kb.objects, "o-")
    )
    kb.next_document_id = (
        _parse_int(root.get("next_document_id"), "next_document_id")
        if root.get("next_document_id") is not None
        else _derive_counter(kb.documents, "d-")
    )
    return _finish_import(kb)


# -- CSV ----------------------------------------------------------------------

_CSV_HEADERS = {
    "knowledge_base": ["key", "value"],
    "schema": ["kind", "source", "target", "same_kind"],
    "objects": [
        "id",
        "kind",
        "sub_kind",
        "name",
        "name_encoding",
        "description",
        "description_encoding",
        "state",
        "feasibility",
        "fragment_ids",
        "created_at",
        "updated_at",
    ],
    "relations": ["id", "kind", "source_id", "target_id"],
    "documents": [
        "id",
        "title",
        "title_encoding",
        "text",
        "text_encoding",
        "checksum",
        "imported_at",
    ],
    "fragments": ["id", "document_id", "start", "end"],
}

_CSV_SECTION_ORDER = ["knowledge_base", "schema", "objects", "relations", "documents", "fragments"]


def export_csv(kb: KnowledgeBase) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")

    def section(name: str) -> None:
        if buffer.tell():
            writer.writerow([])
        writer.writerow([f"#%{name}"])
        writer.writerow(_CSV_HEADERS[name])

    section("knowledge_base")
    writer.writerow(["version", FILE_VERSION])
    writer.writerow(["next_object_id", str(kb.next_object_id)])
    writer.writerow(["next_document_id", str(kb.next_document_id)])

    section("schema")
    for rel_kind in RelationKind:
        row = kb.schema.rows[rel_kind]
        writer.writerow(
            [
                rel_kind.value,
                " ".join(str(p) for p in row.source),
                " ".join(str(p) for p in row.target),
                "true" if row.same_kind else "false",
            ]
        )

    section("objects")
    for obj_id in sorted(kb.objects):
        obj = kb.objects[obj_id]
        name_enc, name_payload = encode_text(obj.name)
        desc_enc, desc_payload = encode_text(obj.description)
        writer.writerow(
            [
                obj.id,
                obj.kind.kind.value,
                obj.kind.sub_kind.value if obj.kind.sub_kind else "",
                name_payload,
                name_enc,
                desc_payload,
                desc_enc,
                obj.state.value,
                obj.feasibility.value,
                " ".join(sorted(obj.fragment_ids)),
                _ts(obj.created_at),
                _ts(obj.updated_at),
            ]
        )

    section("relations")
    for rel_id in sorted(kb.relations):
        rel = kb.relations[rel_id]
        writer.writerow([rel.id, rel.kind.value, rel.source_id, rel.target_id])

    section("documents")
    for doc_id in sorted(kb.documents):
        doc = kb.documents[doc_id]
        title_enc, title_payload = encode_text(doc.title)
        text_enc, text_payload = encode_text(doc.text)
        writer.writerow(
            [
                doc.id,
                title_payload,
                title_enc,
                text_payload,
                text_enc,
                doc.checksum,
                _ts(doc.imported_at),
            ]
        )

    section("fragments")
    for frag_id in sorted(kb.fragments):
        frag = kb.fragments[frag_id]
        writer.writerow([frag.id, frag.document_id, str(frag.start), str(frag.end)])

    return buffer.getvalue().encode("utf-8")


def import_csv(data: bytes) -> KnowledgeBase:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not valid UTF-8: {exc}") from None

    kb = KnowledgeBase()
    meta: dict[str, str] = {}
    schema_rows: dict[RelationKind, SchemaRow] = {}
    saw_schema = False

    section: str | None = None
    expect_header = False
    for index, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row:
            continue
        if len(row) == 1 and row[0].startswith("#%"):
            section = row[0][2:]
            if section not in _CSV_HEADERS:
                raise ParseError(f"record {index}: unknown section {row[0]!r}")
            expect_header = True
            continue
        if section is None:
            raise ParseError(f"record {index}: data before any section marker")
        if expect_header:
            if row != _CSV_HEADERS[section]:
                raise ParseError(
                    f"record {index}: bad header for section {section}: {row!r}"
                )
            expect_header = False
            continue
        if len(row) != len(_CSV_HEADERS[section]):
            raise ParseError(
                f"record {index}: expected {len(_CSV_HEADERS[section])} fields "
                f"in section {section}, got {len(row)}"
            )

        if section == "knowledge_base":
            key, value = row
            if key not in ("version", "next_object_id", "next_document_id"):
                raise SchemaViolation(f"record {index}: unknown meta key {key!r}")
            meta[key] = value
        elif section == "schema":
            saw_schema = True
            kind = _parse_enum(RelationKind, row[0], f"record {index}")
            schema_rows[kind] = _parse_schema_row(
                row[1], row[2], row[3], f"record {index} (schema row {kind.value})"
            )
        elif section == "objects":
            obj_id = row[0]
            context = f"record {index} (object {obj_id})"
            if obj_id in kb.objects:
                raise SchemaViolation(f"{context}: duplicate id")
            obj = KnowledgeObject(
                id=obj_id,
                kind=_parse_object_kind(row[1], row[2] or None, context),
                name=decode_text(row[4], row[3]),
                description=decode_text(row[6], row[5]),
                state=_parse_enum(State, row[7], context),
                feasibility=_parse_enum(Feasibility, row[8], context),
                fragment_ids=set(row[9].split()) if row[9] else set(),
                created_at=_parse_ts(row[10], context),
                updated_at=_parse_ts(row[11], context),
            )
            kb.objects[obj_id] = obj
        elif section == "relations":
            rel_id = row[0]
            context = f"record {index} (relation {rel_id})"
            if rel_id in kb.relations:
                raise SchemaViolation(f"{context}: duplicate id")
            kb.relations[rel_id] = Relation(
                id=rel_id,
                kind=_parse_enum(RelationKind, row[1], context),
                source_id=row[2],
                target_id=row[3],
            )
        elif section == "documents":
            doc_id = row[0]
            context = f"record {index} (document {doc_id})"
            if doc_id in kb.documents:
                raise SchemaViolation(f"{context}: duplicate id")
            kb.documents[doc_id] = Document(
                id=doc_id,
                title=decode_text(row[2], row[1]),
                text=decode_text(row[4], row[3]),
                checksum=row[5],
                imported_at=_parse_ts(row[6], context),
            )
        elif section == "fragments":
            frag_id = row[0]
            context = f"record {index} (fragment {frag_id})"
            if frag_id in kb.fragments:
                raise SchemaViolation(f"{context}: duplicate id")
            kb.fragments[frag_id] = _rebuild_fragment(
                kb,
                frag_id,
                row[1],
                _parse_int(row[2], context),
                _parse_int(row[3], context),
            )

    if saw_schema:
        kb.schema = RelationSchema.default().with_overrides(schema_rows)
    kb.next_object_id = (
        _parse_int(meta["next_object_id"], "next_object_id")
        if "next_object_id" in meta
        else _derive_counter(kb.objects, "o-")
    )
    kb.next_document_id = (
        _parse_int(meta["next_document_id"], "next_document_id")
        if "next_document_id" in meta
        else _derive_counter(kb.documents, "d-")
    )
    return _finish_import(kb)


# -- plain text report ---------------------------------------------------------


def _shorten(text: str, limit: int = 60) -> str:
    flat = text.replace("\n", " ").replace("\r", " ")
    if len(flat) <= limit:
        return flat
    return flat[: limit - 3] + "..."


def export_plain_text(kb: KnowledgeBase) -> bytes:
    lines: list[str] = []
    lines.append("KNOWLEDGE BASE REPORT")
    lines.append("=====================")
    lines.append(
        f"objects: {len(kb.objects)} | relations: {len(kb.relations)} | "
        f"documents: {len(kb.documents)} | fragments: {len(kb.fragments)}"
    )
    lines.append("")

    lines.append("OBJECTS")
    lines.append("-------")
    for kind in Kind:
        members = [
            kb.objects[i] for i in sorted(kb.objects) if kb.objects[i].kind.kind == kind
        ]
        if not members:
            continue
        lines.append(f"{kind.value} ({len(members)})")
        for obj in members:
            lines.append(f"  {obj.id}  [{obj.kind}]  {_shorten(obj.name)}")
            lines.append(
                f"      state={obj.state.value}  feasibility={obj.feasibility.value}"
                f"  fragments={len(obj.fragment_ids)}"
            )
            if obj.description.strip():
                lines.append(f"      {_shorten(obj.description, 100)}")
    lines.append("")

    lines.append("RELATIONS")
    lines.append("---------")
    for rel_id in sorted(kb.relations):
        rel = kb.relations[rel_id]
        lines.append(
            f"  {rel.source_id} -[{rel.kind.value}]-> {rel.target_id}  ({rel.id})"
        )
    lines.append("")

    lines.append("DOCUMENTS")
    lines.append("---------")
    for doc_id in sorted(kb.documents):
        doc = kb.documents[doc_id]
        frag_count = sum(1 for f in kb.fragments.values() if f.document_id == doc_id)
        lines.append(
            f"  {doc.id}  {_shorten(doc.title, 40)!r}  chars={len(doc.text)}"
            f"  sha256={doc.checksum[:12]}  fragments={frag_count}"
        )
    lines.append("")

    lines.append("FRAGMENTS")
    lines.append("---------")
    for frag_id in sorted(kb.fragments):
        frag = kb.fragments[frag_id]
        lines.append(
            f"  {frag.id}  {frag.document_id}[{frag.start}:{frag.end}]  "
            f"{_shorten(frag.excerpt, 50)!r}"
        )
    lines.append("")
    return "\n".join(lines).encode("utf-8")


# -- facade ---------------------------------------------------------------------


def export_kb(kb: KnowledgeBase, format: str) -> bytes:
    """Serialize the knowledge base; refuses structurally invalid input."""
    if format not in EXPORT_FORMATS:
        raise ValueError(f"unknown export format {format!r}; expected one of {EXPORT_FORMATS}")
    violations = kb.validate()
    if violations:
        raise InvalidKB(
            f"knowledge base has {len(violations)} structural violation(s); "
            "fix them before exporting",
            violations,
        )
    if format == FORMAT_XML:
        return export_xml(kb)
    if format == FORMAT_CSV:
        return export_csv(kb)
    return export_plain_text(kb)


def import_kb(data: bytes, format: str) -> KnowledgeBase:
    """Parse a knowledge base; the result always passes validation."""
    if format not in IMPORT_FORMATS:
        raise ValueError(f"unknown import format {format!r}; expected one of {IMPORT_FORMATS}")
    if format == FORMAT_XML:
        return import_xml(data)
    return import_csv(data)


# -- files ------------------------------------------------------------------------


def format_for_path(path: Path | str) -> str:
    return FORMAT_CSV if str(path).endswith(".csv") else FORMAT_XML


def load_kb_file(path: Path | str) -> KnowledgeBase:
    data = Path(path).read_bytes()
    return import_kb(data, format_for_path(path))


def save_kb_file(kb: KnowledgeBase, path: Path | str) -> None:
    """Write-temp-then-rename so readers never observe a torn file."""
    path = Path(path)
    data = export_kb(kb, format_for_path(path))
    fd, tmp_name = tempfile.mkstemp(
        dir=str(path.parent) if str(path.parent) else ".",
        prefix=path.name + ".",
        suffix=".tmp",
    )
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    finally:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
