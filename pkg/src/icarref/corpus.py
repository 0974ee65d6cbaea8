"""Imported source documents and byte-span fragment anchors.

Documents are immutable after import; a fragment pins a knowledge object to
the exact slice of text it was extracted from. Offsets are byte offsets into
the UTF-8 encoding so anchors stay stable regardless of how the text is
rendered, with an explicit check that both ends land on character boundaries.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from datetime import datetime
from typing import TYPE_CHECKING

from .errors import BoundarySplit, InvalidSpan, OutOfBounds

if TYPE_CHECKING:
    from .store import KnowledgeBase


@dataclass(frozen=True)
class Document:
    id: str
    title: str
    text: str
    checksum: str
    imported_at: datetime


@dataclass(frozen=True)
class Fragment:
    id: str
    document_id: str
    start: int  # byte offset, inclusive
    end: int  # byte offset, exclusive
    excerpt: str


def checksum_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def fragment_id_for(document_id: str, start: int, end: int) -> str:
    """Content-derived id; the same span always maps to the same fragment."""
    digest = hashlib.sha256(f"{document_id}|{start}|{end}".encode("utf-8")).hexdigest()
    return f"f-{digest[:16]}"


def slice_span(text_bytes: bytes, start: int, end: int) -> str:
    """Decode ``text_bytes[start:end]``, validating the span first.

    Raises InvalidSpan for start >= end, OutOfBounds for offsets outside the
    text, and BoundarySplit when either offset falls inside a multi-byte
    UTF-8 sequence.
    """
    if start >= end:
        raise InvalidSpan(f"start ({start}) must be less than end ({end})")
    if start < 0 or end > len(text_bytes):
        raise OutOfBounds(
            f"span [{start}, {end}) outside document of {len(text_bytes)} bytes"
        )
    for offset in (start, end):
        if offset < len(text_bytes) and 0x80 <= text_bytes[offset] < 0xC0:
            raise BoundarySplit(
                f"offset {offset} splits a multi-byte character"
            )
    return text_bytes[start:end].decode("utf-8")


def span_is_valid(text_bytes: bytes, start: int, end: int) -> bool:
    try:
        slice_span(text_bytes, start, end)
    except (InvalidSpan, OutOfBounds, BoundarySplit):
        return False
    return True


@dataclass(frozen=True)
class DocumentAnchorCount:
    document_id: str
    object_count: int


@dataclass(frozen=True)
class TraceabilityReport:
    """Which objects still lack source evidence, and how anchored each document is."""

    unanchored_object_ids: tuple[str, ...]
    per_document: tuple[DocumentAnchorCount, ...]


def traceability_report(kb: "KnowledgeBase") -> TraceabilityReport:
    unanchored = tuple(
        obj_id for obj_id in sorted(kb.objects) if not kb.objects[obj_id].fragment_ids
    )
    counts = []
    for doc_id in sorted(kb.documents):
        anchored = {
            obj.id
            for obj in kb.objects.values()
            for frag_id in obj.fragment_ids
            if frag_id in kb.fragments and kb.fragments[frag_id].document_id == doc_id
        }
        counts.append(DocumentAnchorCount(doc_id, len(anchored)))
    return TraceabilityReport(unanchored, tuple(counts))
