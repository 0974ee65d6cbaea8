"""Knowledge evaluation: completeness lint rules, feasibility grouping, and
the implementation coverage / state indicators used to monitor a project.

The lint rules answer "is there enough here, and is it grounded?"; coverage
answers "how much of what the reasoning steps rely on is actually coded?".
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .errors import UnknownRule
from .model import Feasibility, Kind, RelationKind, State, SubKind
from .store import KnowledgeBase


class Severity(str, enum.Enum):
    Error = "Error"
    Warning = "Warning"


@dataclass(frozen=True)
class Finding:
    rule_id: str
    severity: Severity
    subject_id: str
    message: str


@dataclass(frozen=True)
class RuleOverride:
    enabled: bool = True
    severity: Severity | None = None


# -- rule checks: each returns (subject id, message) pairs --------------------


def _check_dangling(kb: KnowledgeBase) -> list[tuple[str, str]]:
    hits = []
    for rel_id in sorted(kb.relations):
        rel = kb.relations[rel_id]
        for endpoint in (rel.source_id, rel.target_id):
            if endpoint not in kb.objects:
                hits.append(
                    (rel_id, f"relation {rel_id} references missing object {endpoint}")
                )
    return hits


def _reasoning_activities(kb: KnowledgeBase) -> list[str]:
    return [
        obj_id
        for obj_id in sorted(kb.objects)
        if kb.objects[obj_id].kind.kind == Kind.Activity
        and kb.objects[obj_id].kind.sub_kind == SubKind.Reasoning
    ]


def _check_uncovering_reasoning(kb: KnowledgeBase) -> list[tuple[str, str]]:
    covering = {
        rel.source_id
        for rel in kb.relations.values()
        if rel.kind == RelationKind.Covers
    }
    return [
        (obj_id, f"reasoning activity {obj_id} covers no domain activity")
        for obj_id in _reasoning_activities(kb)
        if obj_id not in covering
    ]


def _check_unmoored_entities(kb: KnowledgeBase) -> list[tuple[str, str]]:
    realized = {
        rel.target_id
        for rel in kb.relations.values()
        if rel.kind == RelationKind.Realizes
    }
    constrained = {
        rel.source_id
        for rel in kb.relations.values()
        if rel.kind == RelationKind.HasConstraint
    }
    hits = []
    for obj_id in sorted(kb.objects):
        obj = kb.objects[obj_id]
        if obj.kind.kind != Kind.Entity:
            continue
        if obj_id not in realized and obj_id not in constrained:
            hits.append(
                (obj_id, f"entity {obj_id} is neither realized nor constrained")
            )
    return hits


def _check_unreferenced_targets(kb: KnowledgeBase) -> list[tuple[str, str]]:
    targeted = {rel.target_id for rel in kb.relations.values()}
    hits = []
    for obj_id in sorted(kb.objects):
        kind = kb.objects[obj_id].kind.kind
        if kind in (Kind.Rule, Kind.Constraint, Kind.Function) and obj_id not in targeted:
            hits.append(
                (obj_id, f"{kind.value.lower()} {obj_id} is the target of no relation")
            )
    return hits


def _check_empty_descriptions(kb: KnowledgeBase) -> list[tuple[str, str]]:
    return [
        (obj_id, f"object {obj_id} has an empty description")
        for obj_id in sorted(kb.objects)
        if not kb.objects[obj_id].description.strip()
    ]


def _check_unanchored(kb: KnowledgeBase) -> list[tuple[str, str]]:
    return [
        (obj_id, f"object {obj_id} has no fragment anchor")
        for obj_id in sorted(kb.objects)
        if not kb.objects[obj_id].fragment_ids
    ]


@dataclass(frozen=True)
class LintRule:
    id: str
    severity: Severity
    summary: str
    check: Callable[[KnowledgeBase], list[tuple[str, str]]]


RULES: dict[str, LintRule] = {
    rule.id: rule
    for rule in (
        LintRule("C1", Severity.Error, "no dangling relation endpoints", _check_dangling),
        LintRule(
            "C2",
            Severity.Error,
            "every reasoning activity covers at least one domain activity",
            _check_uncovering_reasoning,
        ),
        LintRule(
            "C3",
            Severity.Warning,
            "every entity is realized by something or carries a constraint "
            "(a heuristic for whether its context is described)",
            _check_unmoored_entities,
        ),
        LintRule(
            "C4",
            Severity.Warning,
            "every rule, constraint and function is the target of some relation",
            _check_unreferenced_targets,
        ),
        LintRule("C5", Severity.Warning, "every object has a description", _check_empty_descriptions),
        LintRule("C6", Severity.Warning, "every object has a fragment anchor", _check_unanchored),
    )
}


def run_completeness(
    kb: KnowledgeBase,
    rule_ids: set[str] | None = None,
    overrides: Mapping[str, RuleOverride] | None = None,
) -> list[Finding]:
    """Run the selected lint rules and return findings ordered by
    (rule id, subject id).

    With no explicit selection, all rules run except those disabled by the
    overrides; an explicit selection runs exactly those rules. Severity
    overrides apply either way.
    """
    overrides = overrides or {}
    for rule_id in sorted(overrides):
        if rule_id not in RULES:
            raise UnknownRule(f"unknown lint rule in overrides: {rule_id}")
    if rule_ids is None:
        selected = [
            rule_id
            for rule_id in RULES
            if overrides.get(rule_id, RuleOverride()).enabled
        ]
    else:
        for rule_id in sorted(rule_ids):
            if rule_id not in RULES:
                raise UnknownRule(f"unknown lint rule: {rule_id}")
        selected = [rule_id for rule_id in RULES if rule_id in rule_ids]

    findings: list[Finding] = []
    for rule_id in selected:
        rule = RULES[rule_id]
        override = overrides.get(rule_id)
        severity = override.severity if override and override.severity else rule.severity
        for subject_id, message in rule.check(kb):
            findings.append(Finding(rule_id, severity, subject_id, message))
    findings.sort(key=lambda f: (f.rule_id, f.subject_id))
    return findings


# -- feasibility ---------------------------------------------------------------


@dataclass(frozen=True)
class FeasibilityReport:
    """Object ids grouped by feasibility assessment."""

    groups: dict[Feasibility, tuple[str, ...]]

    def gap_ids(self) -> tuple[str, ...]:
        """Objects that cannot be coded as captured."""
        return tuple(
            sorted(
                self.groups[Feasibility.NeedsAdditionalAlgorithm]
                + self.groups[Feasibility.NotCodable]
            )
        )


def feasibility_report(kb: KnowledgeBase) -> FeasibilityReport:
    groups: dict[Feasibility, list[str]] = {f: [] for f in Feasibility}
    for obj_id in sorted(kb.objects):
        groups[kb.objects[obj_id].feasibility].append(obj_id)
    return FeasibilityReport({f: tuple(ids) for f, ids in groups.items()})


# -- coverage -------------------------------------------------------------------


@dataclass(frozen=True)
class ActivityCoverage:
    activity_id: str
    covered_total: int
    implemented: int
    dismissed: int
    ratio: Fraction


@dataclass(frozen=True)
class CoverageReport:
    per_activity: tuple[ActivityCoverage, ...]
    project_ratio: Fraction
    state_histogram: dict[State, int]


def _safe_ratio(implemented: int, denominator: int) -> Fraction:
    # Nothing automatable left counts as fully covered.
    if denominator == 0:
        return Fraction(1)
    return Fraction(implemented, denominator)


def compute_coverage(kb: KnowledgeBase) -> CoverageReport:
    """Per reasoning activity: how many of the domain activities it covers
    are implemented, with dismissed ones excluded from the denominator."""
    rows: list[ActivityCoverage] = []
    total_implemented = 0
    total_denominator = 0
    for activity_id in _reasoning_activities(kb):
        covered_ids = sorted(
            rel.target_id
            for rel in kb.relations.values()
            if rel.kind == RelationKind.Covers and rel.source_id == activity_id
        )
        implemented = sum(
            1 for i in covered_ids if kb.objects[i].state == State.Implemented
        )
        dismissed = sum(
            1 for i in covered_ids if kb.objects[i].state == State.Dismissed
        )
        denominator = len(covered_ids) - dismissed
        rows.append(
            ActivityCoverage(
                activity_id=activity_id,
                covered_total=len(covered_ids),
                implemented=implemented,
                dismissed=dismissed,
                ratio=_safe_ratio(implemented, denominator),
            )
        )
        total_implemented += implemented
        total_denominator += denominator

    histogram = {state: 0 for state in State}
    for obj in kb.objects.values():
        histogram[obj.state] += 1

    return CoverageReport(
        per_activity=tuple(rows),
        project_ratio=_safe_ratio(total_implemented, total_denominator),
        state_histogram=histogram,
    )


@dataclass(frozen=True)
class StateSummary:
    total: int
    histogram: dict[State, int]
    by_kind: dict[Kind, dict[State, int]]


def state_summary(kb: KnowledgeBase) -> StateSummary:
    histogram = {state: 0 for state in State}
    by_kind: dict[Kind, dict[State, int]] = {}
    for obj_id in sorted(kb.objects):
        obj = kb.objects[obj_id]
        histogram[obj.state] += 1
        per_kind = by_kind.setdefault(obj.kind.kind, {state: 0 for state in State})
        per_kind[obj.state] += 1
    return StateSummary(len(kb.objects), histogram, by_kind)


# -- report rendering -------------------------------------------------------------


def percent(ratio: Fraction) -> str:
    return f"{float(ratio) * 100:.1f}%"


def findings_to_text(findings: list[Finding]) -> str:
    lines = [
        f"{f.rule_id} {f.severity.value.lower()} {f.subject_id}: {f.message}"
        for f in findings
    ]
    suffix = "finding" if len(findings) == 1 else "findings"
    lines.append(f"{len(findings)} {suffix}")
    return "\n".join(lines)


def findings_to_csv(findings: list[Finding]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["#%findings"])
    writer.writerow(["rule_id", "severity", "subject_id", "message"])
    for f in findings:
        writer.writerow([f.rule_id, f.severity.value, f.subject_id, f.message])
    return buffer.getvalue()


def coverage_to_text(report: CoverageReport, kb: KnowledgeBase) -> str:
    lines = ["COVERAGE"]
    for row in report.per_activity:
        name = kb.objects[row.activity_id].name if row.activity_id in kb.objects else "?"
        lines.append(
            f"  {row.activity_id}  {name}: {row.implemented}/"
            f"{row.covered_total - row.dismissed} implemented "
            f"({row.dismissed} dismissed) -> {percent(row.ratio)}"
        )
    lines.append(f"project: {percent(report.project_ratio)}")
    lines.append("STATES")
    for state in State:
        lines.append(f"  {state.value}: {report.state_histogram[state]}")
    return "\n".join(lines)


def coverage_to_csv(report: CoverageReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["#%coverage"])
    writer.writerow(
        ["activity_id", "covered_total", "implemented", "dismissed", "ratio", "percent"]
    )
    for row in report.per_activity:
        writer.writerow(
            [
                row.activity_id,
                row.covered_total,
                row.implemented,
                row.dismissed,
                f"{row.ratio.numerator}/{row.ratio.denominator}",
                percent(row.ratio),
            ]
        )
    writer.writerow([])
    writer.writerow(["#%project"])
    writer.writerow(["ratio", "percent"])
    writer.writerow(
        [
            f"{report.project_ratio.numerator}/{report.project_ratio.denominator}",
            percent(report.project_ratio),
        ]
    )
    writer.writerow([])
    writer.writerow(["#%state_histogram"])
    writer.writerow(["state", "count"])
    for state in State:
        writer.writerow([state.value, report.state_histogram[state]])
    return buffer.getvalue()
