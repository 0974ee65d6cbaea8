"""Shared test helpers: deterministic random KB generation, structural
fingerprints for isomorphism checks, and a per-criterion summary for the
acceptance suite."""

from __future__ import annotations

import json
import random

from icarref import (
    KnowledgeBase,
    KnowledgeError,
    ObjectKind,
    RelationKind,
    all_object_kinds,
)
from icarref.model import Feasibility, Kind, STATE_TRANSITIONS, SubKind

WORDS = [
    "pocket", "rib", "flank", "bore", "web", "fillet", "chamfer", "slot",
    "milling", "drilling", "fixture", "spindle", "datum", "tolerance",
    "roughing", "finishing", "setup", "clamp", "überfräsen", "façade", "穴",
]

TEXT_SNIPPETS = [
    "The flank must be milled with a tapered tool. ",
    "Drill the bore before finishing the pocket floor.\n",
    "Les surfaces gauches exigent une machine 5 axes. ",
    "加工面は三軸で仕上げる。",
    "Tool reach is limited by the holder diameter; check collision. ",
    "tab\there and a line\nbreak ",
]

CONTROL_SNIPPETS = ["nul\x00byte ", "bell\x07 ", "cr\rhere ", "esc\x1b[0m "]


def make_random_kb(
    rng: random.Random,
    max_objects: int = 100,
    max_relations: int = 300,
    max_documents: int = 3,
    allow_control_chars: bool = True,
) -> KnowledgeBase:
    """A structurally valid KB built only through public operations."""
    kb = KnowledgeBase()
    kinds = all_object_kinds()

    for index in range(rng.randint(1, max_objects)):
        name = f"{rng.choice(WORDS)}-{index}"
        if allow_control_chars and rng.random() < 0.05:
            name += rng.choice(CONTROL_SNIPPETS).strip("\x00 ") or "x"
        description = rng.choice(["", rng.choice(TEXT_SNIPPETS)])
        kb.add_object(rng.choice(kinds), name, description)
    object_ids = sorted(kb.objects)

    for _ in range(rng.randint(0, max_documents)):
        pool = TEXT_SNIPPETS + (CONTROL_SNIPPETS if allow_control_chars else [])
        text = "".join(rng.choice(pool) for _ in range(rng.randint(0, 8)))
        doc = kb.import_document(f"doc {rng.choice(WORDS)}", text)
        boundaries = _char_boundaries(doc.text)
        if len(boundaries) < 2:
            continue
        for _ in range(rng.randint(0, 5)):
            start, end = sorted(rng.sample(boundaries, 2))
            kb.anchor_fragment(doc.id, start, end, rng.choice(object_ids))

    for _ in range(rng.randint(0, max_relations)):
        kind = rng.choice(list(RelationKind))
        source = rng.choice(object_ids)
        target = rng.choice(object_ids)
        try:
            kb.add_relation(kind, source, target)
        except KnowledgeError:
            pass

    for object_id in object_ids:
        if rng.random() < 0.5:
            for _ in range(rng.randint(1, 3)):
                current = kb.objects[object_id].state
                kb.set_state(object_id, rng.choice(sorted(STATE_TRANSITIONS[current])))
        if rng.random() < 0.3:
            kb.update_object(object_id, feasibility=rng.choice(list(Feasibility)))
    return kb


def _char_boundaries(text: str) -> list[int]:
    boundaries = [0]
    offset = 0
    for char in text:
        offset += len(char.encode("utf-8"))
        boundaries.append(offset)
    return boundaries


def kb_fingerprint(kb: KnowledgeBase, timestamps: bool = True):
    """Canonical structural dump; equal fingerprints mean isomorphic KBs."""

    def ts(value):
        return value.isoformat() if timestamps else None

    objects = tuple(
        sorted(
            (
                o.id,
                str(o.kind),
                o.name,
                o.description,
                o.state.value,
                o.feasibility.value,
                tuple(sorted(o.fragment_ids)),
                ts(o.created_at),
                ts(o.updated_at),
            )
            for o in kb.objects.values()
        )
    )
    relations = tuple(
        sorted((r.id, r.kind.value, r.source_id, r.target_id) for r in kb.relations.values())
    )
    documents = tuple(
        sorted(
            (d.id, d.title, d.text, d.checksum, ts(d.imported_at))
            for d in kb.documents.values()
        )
    )
    fragments = tuple(
        sorted(
            (f.id, f.document_id, f.start, f.end, f.excerpt)
            for f in kb.fragments.values()
        )
    )
    schema = json.dumps(kb.schema.to_dict(), sort_keys=True)
    counters = (kb.next_object_id, kb.next_document_id)
    return (objects, relations, documents, fragments, schema, counters)


def make_clean_kb() -> KnowledgeBase:
    """A small KB that passes every completeness rule with zero findings."""
    kb = KnowledgeBase()
    doc = kb.import_document("legacy spec", "Evidence text used to anchor every object.")

    def add(kind: ObjectKind, name: str) -> str:
        obj = kb.add_object(kind, name, f"description of {name}")
        kb.anchor_fragment(doc.id, 0, 8, obj.id)
        return obj.id

    entity = add(ObjectKind(Kind.Entity, SubKind.Structural), "pocket")
    constraint = add(ObjectKind(Kind.Constraint, SubKind.Product), "reach limit")
    rule = add(ObjectKind(Kind.Rule, SubKind.Domain), "tool choice rule")
    function = add(ObjectKind(Kind.Function, None), "list candidate tools")
    domain_act = add(ObjectKind(Kind.Activity, SubKind.Domain), "drill bore")
    reasoning_act = add(ObjectKind(Kind.Activity, SubKind.Reasoning), "select drilling mode")

    kb.add_relation(RelationKind.HasConstraint, entity, constraint)
    kb.add_relation(RelationKind.HasRule, entity, rule)
    kb.add_relation(RelationKind.HasFunction, reasoning_act, function)
    kb.add_relation(RelationKind.Covers, reasoning_act, domain_act)
    return kb


# -- acceptance criterion summary ------------------------------------------------

_acceptance_outcomes: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        _acceptance_outcomes[name] = "PASS" if report.outcome == "passed" else "FAIL"
    elif report.outcome not in ("passed",) and name not in _acceptance_outcomes:
        _acceptance_outcomes[name] = "FAIL"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_outcomes.items():
        terminalreporter.write_line(f"{outcome}  {name}")
