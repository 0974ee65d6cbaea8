"""The relation legality table.

Each relation kind has exactly one row saying which endpoint kinds it admits.
Rows are plain data: they serialize into the persistence formats and can be
overridden from a project config file, so the table is extensible without
code changes.

Pattern notation used by rows, config files and exports:

* ``*``                 any kind, any sub-kind
* ``Entity``            a specific kind, any sub-kind
* ``Activity/Reasoning``  a specific kind and sub-kind
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import Kind, ObjectKind, RelationKind, SubKind


@dataclass(frozen=True)
class KindPattern:
    """Matches an ObjectKind; ``None`` components act as wildcards."""

    kind: Kind | None = None
    sub_kind: SubKind | None = None

    def matches(self, candidate: ObjectKind) -> bool:
        if self.kind is not None and candidate.kind != self.kind:
            return False
        if self.sub_kind is not None and candidate.sub_kind != self.sub_kind:
            return False
        return True

    def __str__(self) -> str:
        if self.kind is None:
            return "*"
        if self.sub_kind is None:
            return self.kind.value
        return f"{self.kind.value}/{self.sub_kind.value}"

    @classmethod
    def parse(cls, text: str) -> "KindPattern":
        text = text.strip()
        if text == "*":
            return cls()
        kind_part, sep, sub_part = text.partition("/")
        try:
            kind = Kind(kind_part)
        except ValueError:
            raise ValueError(f"unknown kind in pattern {text!r}") from None
        if not sep:
            return cls(kind)
        try:
            return cls(kind, SubKind(sub_part))
        except ValueError:
            raise ValueError(f"unknown sub-kind in pattern {text!r}") from None


@dataclass(frozen=True)
class SchemaRow:
    """Endpoint legality for one relation kind."""

    source: tuple[KindPattern, ...]
    target: tuple[KindPattern, ...]
    same_kind: bool = False

    def admits(self, source: ObjectKind, target: ObjectKind) -> bool:
        if not any(p.matches(source) for p in self.source):
            return False
        if not any(p.matches(target) for p in self.target):
            return False
        if self.same_kind and source.kind != target.kind:
            return False
        return True

    def describe(self, kind: RelationKind) -> str:
        src = "|".join(str(p) for p in self.source)
        tgt = "|".join(str(p) for p in self.target)
        text = f"{kind.value}: {src} -> {tgt}"
        if self.same_kind:
            text += " (same kind required)"
        return text

    def to_dict(self) -> dict:
        return {
            "source": [str(p) for p in self.source],
            "target": [str(p) for p in self.target],
            "same_kind": self.same_kind,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SchemaRow":
        unknown = set(data) - {"source", "target", "same_kind"}
        if unknown:
            raise ValueError(f"unknown schema row keys: {sorted(unknown)}")
        return cls(
            source=tuple(KindPattern.parse(p) for p in data["source"]),
            target=tuple(KindPattern.parse(p) for p in data["target"]),
            same_kind=bool(data.get("same_kind", False)),
        )


def _any() -> tuple[KindPattern, ...]:
    return (KindPattern(),)


def _kinds(*kinds: Kind) -> tuple[KindPattern, ...]:
    return tuple(KindPattern(k) for k in kinds)


def _default_rows() -> dict[RelationKind, SchemaRow]:
    not_illustration = _kinds(*[k for k in Kind if k is not Kind.Illustration])
    return {
        RelationKind.IsA: SchemaRow(_any(), _any(), same_kind=True),
        RelationKind.IsComposedOf: SchemaRow(_any(), _any(), same_kind=True),
        RelationKind.HasConstraint: SchemaRow(
            _kinds(Kind.Entity, Kind.Activity), _kinds(Kind.Constraint)
        ),
        RelationKind.HasRule: SchemaRow(
            _kinds(Kind.Activity, Kind.Entity), _kinds(Kind.Rule)
        ),
        RelationKind.HasFunction: SchemaRow(
            _kinds(Kind.Activity), _kinds(Kind.Function)
        ),
        RelationKind.UsesResource: SchemaRow(
            _kinds(Kind.Activity), _kinds(Kind.Resource)
        ),
        RelationKind.Realizes: SchemaRow(
            _kinds(Kind.Activity, Kind.Resource), _kinds(Kind.Entity)
        ),
        RelationKind.Covers: SchemaRow(
            (KindPattern(Kind.Activity, SubKind.Reasoning),),
            (KindPattern(Kind.Activity, SubKind.Domain),),
        ),
        RelationKind.Illustrates: SchemaRow(
            _kinds(Kind.Illustration), not_illustration
        ),
    }


@dataclass
class RelationSchema:
    """The full legality table: one row per relation kind."""

    rows: dict[RelationKind, SchemaRow] = field(default_factory=_default_rows)

    @classmethod
    def default(cls) -> "RelationSchema":
        return cls()

    def row_for(self, kind: RelationKind) -> SchemaRow:
        return self.rows[kind]

    def admits(self, kind: RelationKind, source: ObjectKind, target: ObjectKind) -> bool:
        return self.rows[kind].admits(source, target)

    def with_overrides(self, overrides: dict[RelationKind, SchemaRow]) -> "RelationSchema":
        rows = dict(self.rows)
        rows.update(overrides)
        return RelationSchema(rows)

    def to_dict(self) -> dict:
        return {kind.value: self.rows[kind].to_dict() for kind in RelationKind}

    @classmethod
    def from_dict(cls, data: dict) -> "RelationSchema":
        """Build from a config mapping; kinds absent from it keep defaults."""
        overrides: dict[RelationKind, SchemaRow] = {}
        for key, row in data.items():
            try:
                kind = RelationKind(key)
            except ValueError:
                raise ValueError(f"unknown relation kind in schema config: {key!r}") from None
            overrides[kind] = SchemaRow.from_dict(row)
        return cls.default().with_overrides(overrides)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelationSchema):
            return NotImplemented
        return self.rows == other.rows
