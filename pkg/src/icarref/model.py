"""Core domain types: object kinds, lifecycle states, objects and relations.

The seven object kinds (Illustration, Constraint, Activity, Rule, Resource,
Entity, Function) classify every captured unit of knowledge; four of them are
refined by a mandatory sub-kind. Relations are typed directed edges whose
legality is decided by the schema table in :mod:`icarref.schema`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import datetime

from .errors import InvalidSubKind


class Kind(str, enum.Enum):
    Illustration = "Illustration"
    Constraint = "Constraint"
    Activity = "Activity"
    Rule = "Rule"
    Resource = "Resource"
    Entity = "Entity"
    Function = "Function"


class SubKind(str, enum.Enum):
    Product = "Product"
    Representation = "Representation"
    Domain = "Domain"
    Expert = "Expert"
    Reasoning = "Reasoning"
    Structural = "Structural"
    Functional = "Functional"


# Kinds that take a sub-kind, and the sub-kinds each one allows.
SUB_KINDS: dict[Kind, frozenset[SubKind]] = {
    Kind.Constraint: frozenset({SubKind.Product, SubKind.Representation}),
    Kind.Rule: frozenset({SubKind.Domain, SubKind.Expert}),
    Kind.Activity: frozenset({SubKind.Domain, SubKind.Reasoning}),
    Kind.Entity: frozenset({SubKind.Structural, SubKind.Functional}),
}


@dataclass(frozen=True)
class ObjectKind:
    """A validated (kind, sub-kind) pair.

    Construction fails with :class:`InvalidSubKind` unless the sub-kind is
    present exactly for the kinds that require one, with an allowed value.
    """

    kind: Kind
    sub_kind: SubKind | None = None

    def __post_init__(self) -> None:
        allowed = SUB_KINDS.get(self.kind)
        if allowed is None:
            if self.sub_kind is not None:
                raise InvalidSubKind(
                    f"{self.kind.value} does not take a sub-kind "
                    f"(got {self.sub_kind.value})"
                )
        elif self.sub_kind is None:
            raise InvalidSubKind(
                f"{self.kind.value} requires a sub-kind, one of: "
                + ", ".join(sorted(s.value for s in allowed))
            )
        elif self.sub_kind not in allowed:
            raise InvalidSubKind(
                f"{self.sub_kind.value} is not a valid sub-kind of {self.kind.value}"
            )

    def __str__(self) -> str:
        if self.sub_kind is None:
            return self.kind.value
        return f"{self.kind.value}/{self.sub_kind.value}"

    @classmethod
    def parse(cls, text: str) -> "ObjectKind":
        """Parse ``"Entity/Structural"`` or ``"Resource"`` style notation.

        Raises ValueError for an unknown kind or sub-kind token and
        InvalidSubKind for a valid-token combination the table forbids.
        """
        kind_part, sep, sub_part = text.partition("/")
        try:
            kind = Kind(kind_part)
        except ValueError:
            raise ValueError(
                f"unknown kind {kind_part!r}; expected one of: "
                + ", ".join(k.value for k in Kind)
            ) from None
        sub: SubKind | None = None
        if sep:
            try:
                sub = SubKind(sub_part)
            except ValueError:
                raise ValueError(
                    f"unknown sub-kind {sub_part!r}; expected one of: "
                    + ", ".join(s.value for s in SubKind)
                ) from None
        return cls(kind, sub)


def all_object_kinds() -> tuple[ObjectKind, ...]:
    """Every legal (kind, sub-kind) combination, in kind declaration order."""
    combos: list[ObjectKind] = []
    for kind in Kind:
        subs = SUB_KINDS.get(kind)
        if subs is None:
            combos.append(ObjectKind(kind))
        else:
            combos.extend(ObjectKind(kind, sub) for sub in sorted(subs, key=lambda s: s.value))
    return tuple(combos)


class State(str, enum.Enum):
    NotTreated = "NotTreated"
    InProgress = "InProgress"
    Implemented = "Implemented"
    Dismissed = "Dismissed"


# Non-identity transitions of the implementation lifecycle. Identity
# transitions always succeed as no-ops, so 10 of the 16 ordered pairs pass.
STATE_TRANSITIONS: dict[State, frozenset[State]] = {
    State.NotTreated: frozenset({State.InProgress, State.Dismissed}),
    State.InProgress: frozenset({State.Implemented, State.Dismissed}),
    State.Implemented: frozenset({State.InProgress}),
    State.Dismissed: frozenset({State.InProgress}),
}


def can_transition(current: State, new: State) -> bool:
    return new == current or new in STATE_TRANSITIONS[current]


class Feasibility(str, enum.Enum):
    Unassessed = "Unassessed"
    Codable = "Codable"
    NeedsAdditionalAlgorithm = "NeedsAdditionalAlgorithm"
    NotCodable = "NotCodable"


class RelationKind(str, enum.Enum):
    IsA = "IsA"
    IsComposedOf = "IsComposedOf"
    HasConstraint = "HasConstraint"
    HasRule = "HasRule"
    HasFunction = "HasFunction"
    UsesResource = "UsesResource"
    Realizes = "Realizes"
    Covers = "Covers"
    Illustrates = "Illustrates"


# Same-kind relations organized as trees; kept acyclic at all times.
TREE_RELATIONS: frozenset[RelationKind] = frozenset(
    {RelationKind.IsA, RelationKind.IsComposedOf}
)


@dataclass
class KnowledgeObject:
    """One captured unit of knowledge with its implementation tracking."""

    id: str
    kind: ObjectKind
    name: str
    description: str = ""
    state: State = State.NotTreated
    feasibility: Feasibility = Feasibility.Unassessed
    fragment_ids: set[str] = field(default_factory=set)
    created_at: datetime | None = None
    updated_at: datetime | None = None


@dataclass(frozen=True)
class Relation:
    """Typed directed edge between two knowledge objects."""

    id: str
    kind: RelationKind
    source_id: str
    target_id: str
