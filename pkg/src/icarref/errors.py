"""Domain errors raised by the knowledge base and its front ends.

Every error carries a stable ``name`` (the class name) which is surfaced
verbatim by the CLI and as the ``error`` field of HTTP error bodies.
"""

from __future__ import annotations


class KnowledgeError(Exception):
    """Base class for all domain errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


class EmptyName(KnowledgeError):
    """Object name is empty after trimming whitespace."""


class InvalidSubKind(KnowledgeError):
    """Sub-kind missing, superfluous, or not allowed for the kind."""


class UnknownObject(KnowledgeError):
    """Referenced object id does not exist."""


class UnknownRelation(KnowledgeError):
    """Referenced relation id does not exist."""


class UnknownDocument(KnowledgeError):
    """Referenced document id does not exist."""


class IllegalEndpoints(KnowledgeError):
    """Relation endpoints violate the schema row for the relation kind."""


class DuplicateRelation(KnowledgeError):
    """A relation with the same (kind, source, target) already exists."""


class CycleRejected(KnowledgeError):
    """Inserting the edge would close a directed cycle in a tree relation."""

    def __init__(self, message: str, cycle: list[str]):
        super().__init__(message)
        self.cycle = cycle


class IllegalTransition(KnowledgeError):
    """State change not allowed by the lifecycle transition table."""


class HasRelations(KnowledgeError):
    """Object removal refused because relations still reference it."""

    def __init__(self, message: str, relation_ids: list[str]):
        super().__init__(message)
        self.relation_ids = relation_ids


class InvalidSpan(KnowledgeError):
    """Fragment span is inverted or empty (start >= end)."""


class OutOfBounds(KnowledgeError):
    """Fragment span falls outside the document text."""


class BoundarySplit(KnowledgeError):
    """Fragment offset lands inside a multi-byte character."""


class ZeroDepth(KnowledgeError):
    """Diagram traversal depth must be at least 1."""


class InvalidTreeRelation(KnowledgeError):
    """Taxonomy forests exist only for the two tree relations."""


class UnknownRule(KnowledgeError):
    """Lint rule selection names an unregistered rule id."""


class InvalidKB(KnowledgeError):
    """Export refused: the knowledge base has structural violations."""

    def __init__(self, message: str, violations: list):
        super().__init__(message)
        self.violations = violations


class ParseError(KnowledgeError):
    """Input bytes are not syntactically valid in the declared format."""


class SchemaViolation(KnowledgeError):
    """Input parses but its content is illegal (bad kinds, dangling ids...)."""
