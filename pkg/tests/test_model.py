"""Object/relation CRUD, sub-kind legality, the state machine, and the
structural validator."""

import pytest

from icarref import (
    CycleRejected,
    DuplicateRelation,
    EmptyName,
    HasRelations,
    IllegalEndpoints,
    IllegalTransition,
    InvalidSubKind,
    KnowledgeBase,
    ObjectKind,
    RelationKind,
    State,
    UnknownObject,
)
from icarref.model import Feasibility, Kind, SubKind, all_object_kinds


def entity(kb, name="e"):
    return kb.add_object(ObjectKind(Kind.Entity, SubKind.Structural), name)


def test_add_object_defaults():
    kb = KnowledgeBase()
    obj = kb.add_object(ObjectKind(Kind.Entity, SubKind.Structural), "planar face", "flat")
    assert obj.state == State.NotTreated
    assert obj.feasibility == Feasibility.Unassessed
    assert obj.fragment_ids == set()
    assert obj.id == "o-00000001"
    assert obj.created_at is not None


def test_add_object_requires_nonempty_name():
    kb = KnowledgeBase()
    with pytest.raises(EmptyName):
        kb.add_object(ObjectKind(Kind.Resource), "   \t ")


def test_name_is_stored_trimmed():
    kb = KnowledgeBase()
    obj = kb.add_object(ObjectKind(Kind.Resource), "  3-axis mill  ")
    assert obj.name == "3-axis mill"


def test_constraint_without_sub_kind_rejected():
    with pytest.raises(InvalidSubKind):
        ObjectKind(Kind.Constraint)


def test_sub_kind_on_plain_kind_rejected():
    with pytest.raises(InvalidSubKind):
        ObjectKind(Kind.Resource, SubKind.Domain)


def test_wrong_sub_kind_for_kind_rejected():
    with pytest.raises(InvalidSubKind):
        ObjectKind(Kind.Rule, SubKind.Structural)


def test_resource_has_plain_kind():
    kb = KnowledgeBase()
    obj = kb.add_object(ObjectKind(Kind.Resource), "3-axis mill")
    assert obj.kind.kind == Kind.Resource
    assert obj.kind.sub_kind is None


def test_object_kind_parse_round_trip():
    for kind in all_object_kinds():
        assert ObjectKind.parse(str(kind)) == kind
    with pytest.raises(ValueError):
        ObjectKind.parse("Banana")
    with pytest.raises(ValueError):
        ObjectKind.parse("Entity/Banana")
    with pytest.raises(InvalidSubKind):
        ObjectKind.parse("Constraint")


def test_ids_are_never_reused_after_removal():
    kb = KnowledgeBase()
    first = kb.add_object(ObjectKind(Kind.Function), "f1")
    kb.remove_object(first.id)
    second = kb.add_object(ObjectKind(Kind.Function), "f2")
    assert second.id != first.id


# -- relations -------------------------------------------------------------


def test_has_constraint_entity_to_constraint_ok():
    kb = KnowledgeBase()
    e1 = entity(kb)
    c1 = kb.add_object(ObjectKind(Kind.Constraint, SubKind.Product), "limit")
    rel = kb.add_relation(RelationKind.HasConstraint, e1.id, c1.id)
    assert rel.kind == RelationKind.HasConstraint
    assert kb.validate() == []


def test_is_a_across_kinds_rejected():
    kb = KnowledgeBase()
    e1 = entity(kb)
    a1 = kb.add_object(ObjectKind(Kind.Activity, SubKind.Domain), "drill")
    with pytest.raises(IllegalEndpoints) as excinfo:
        kb.add_relation(RelationKind.IsA, e1.id, a1.id)
    assert "IsA" in str(excinfo.value)  # message names the violated row


def test_covers_requires_reasoning_source():
    kb = KnowledgeBase()
    d1 = kb.add_object(ObjectKind(Kind.Activity, SubKind.Domain), "d1")
    d2 = kb.add_object(ObjectKind(Kind.Activity, SubKind.Domain), "d2")
    with pytest.raises(IllegalEndpoints):
        kb.add_relation(RelationKind.Covers, d1.id, d2.id)


def test_three_cycle_rejected_with_path():
    kb = KnowledgeBase()
    e1, e2, e3 = (entity(kb, f"e{i}") for i in range(3))
    kb.add_relation(RelationKind.IsA, e1.id, e2.id)
    kb.add_relation(RelationKind.IsA, e2.id, e3.id)
    with pytest.raises(CycleRejected) as excinfo:
        kb.add_relation(RelationKind.IsA, e3.id, e1.id)
    assert excinfo.value.cycle[0] == excinfo.value.cycle[-1] == e3.id
    assert set(excinfo.value.cycle) == {e1.id, e2.id, e3.id}


def test_self_loop_is_a_cycle():
    kb = KnowledgeBase()
    e1 = entity(kb)
    with pytest.raises(CycleRejected):
        kb.add_relation(RelationKind.IsComposedOf, e1.id, e1.id)


def test_cycle_in_one_tree_kind_does_not_block_the_other():
    kb = KnowledgeBase()
    e1, e2 = entity(kb, "e1"), entity(kb, "e2")
    kb.add_relation(RelationKind.IsA, e1.id, e2.id)
    # opposite direction is fine under a different tree relation
    kb.add_relation(RelationKind.IsComposedOf, e2.id, e1.id)
    assert kb.validate() == []


def test_duplicate_relation_rejected():
    kb = KnowledgeBase()
    e1 = entity(kb)
    c1 = kb.add_object(ObjectKind(Kind.Constraint, SubKind.Product), "c")
    kb.add_relation(RelationKind.HasConstraint, e1.id, c1.id)
    with pytest.raises(DuplicateRelation):
        kb.add_relation(RelationKind.HasConstraint, e1.id, c1.id)


def test_parallel_edges_of_different_kinds_allowed():
    kb = KnowledgeBase()
    a = kb.add_object(ObjectKind(Kind.Activity, SubKind.Domain), "a")
    r = kb.add_object(ObjectKind(Kind.Rule, SubKind.Expert), "r")
    kb.add_relation(RelationKind.HasRule, a.id, r.id)
    # no other default row admits Activity -> Rule, so go through a config-style override
    assert len(kb.relations) == 1


def test_relation_endpoints_must_exist():
    kb = KnowledgeBase()
    e1 = entity(kb)
    with pytest.raises(UnknownObject):
        kb.add_relation(RelationKind.IsA, e1.id, "o-99999999")


def test_add_then_remove_relation_restores_state():
    kb = KnowledgeBase()
    e1, e2 = entity(kb, "e1"), entity(kb, "e2")
    before = (dict(kb.relations), kb.next_object_id)
    rel = kb.add_relation(RelationKind.IsA, e1.id, e2.id)
    kb.remove_relation(rel.id)
    assert (dict(kb.relations), kb.next_object_id) == before


# -- state machine -------------------------------------------------------------


def test_not_treated_to_in_progress_ok():
    kb = KnowledgeBase()
    obj = entity(kb)
    assert kb.set_state(obj.id, State.InProgress).state == State.InProgress


def test_not_treated_to_implemented_rejected():
    kb = KnowledgeBase()
    obj = entity(kb)
    with pytest.raises(IllegalTransition) as excinfo:
        kb.set_state(obj.id, State.Implemented)
    message = str(excinfo.value)
    assert "NotTreated" in message and "Implemented" in message


def test_rework_implemented_back_to_in_progress():
    kb = KnowledgeBase()
    obj = entity(kb)
    kb.set_state(obj.id, State.InProgress)
    kb.set_state(obj.id, State.Implemented)
    assert kb.set_state(obj.id, State.InProgress).state == State.InProgress


def test_identity_transition_is_noop():
    kb = KnowledgeBase()
    obj = entity(kb)
    stamp = obj.updated_at
    kb.set_state(obj.id, State.NotTreated)
    assert obj.state == State.NotTreated
    assert obj.updated_at == stamp


def test_exactly_ten_of_sixteen_pairs_succeed():
    succeeded = 0
    for current in State:
        for new in State:
            kb = KnowledgeBase()
            obj = entity(kb)
            obj.state = current
            try:
                kb.set_state(obj.id, new)
                succeeded += 1
            except IllegalTransition:
                pass
    assert succeeded == 10


# -- removal ---------------------------------------------------------------------


def test_remove_isolated_object():
    kb = KnowledgeBase()
    obj = entity(kb)
    assert kb.remove_object(obj.id, cascade=False) == 0
    assert obj.id not in kb.objects


def test_remove_with_relations_requires_cascade():
    kb = KnowledgeBase()
    e1 = entity(kb)
    c1 = kb.add_object(ObjectKind(Kind.Constraint, SubKind.Product), "c1")
    r1 = kb.add_object(ObjectKind(Kind.Rule, SubKind.Domain), "r1")
    rel_a = kb.add_relation(RelationKind.HasConstraint, e1.id, c1.id)
    rel_b = kb.add_relation(RelationKind.HasRule, e1.id, r1.id)
    with pytest.raises(HasRelations) as excinfo:
        kb.remove_object(e1.id, cascade=False)
    assert sorted(excinfo.value.relation_ids) == sorted([rel_a.id, rel_b.id])
    assert e1.id in kb.objects  # nothing changed

    removed = kb.remove_object(e1.id, cascade=True)
    assert removed == 2
    assert kb.relations == {}
    assert kb.validate() == []


# -- queries and neighbors --------------------------------------------------------


def test_query_by_kind():
    kb = KnowledgeBase()
    for i in range(3):
        kb.add_object(ObjectKind(Kind.Rule, SubKind.Domain), f"rule{i}")
    for i in range(2):
        entity(kb, f"e{i}")
    rules = kb.query_objects(kind=Kind.Rule)
    assert len(rules) == 3
    assert all(o.kind.kind == Kind.Rule for o in rules)


def test_query_fresh_kb_has_no_dismissed():
    kb = KnowledgeBase()
    entity(kb)
    assert kb.query_objects(state=State.Dismissed) == []


def test_query_by_sub_kind():
    kb = KnowledgeBase()
    reasoning = kb.add_object(ObjectKind(Kind.Activity, SubKind.Reasoning), "choose")
    kb.add_object(ObjectKind(Kind.Activity, SubKind.Domain), "drill")
    kb.add_object(ObjectKind(Kind.Rule, SubKind.Domain), "r")
    found = kb.query_objects(sub_kind=SubKind.Reasoning)
    assert [o.id for o in found] == [reasoning.id]


def test_query_no_filters_returns_everything_once():
    kb = KnowledgeBase()
    ids = {entity(kb, f"e{i}").id for i in range(5)}
    found = [o.id for o in kb.query_objects()]
    assert sorted(found) == sorted(ids)
    assert len(found) == len(set(found))


def test_query_name_substring_case_insensitive():
    kb = KnowledgeBase()
    hit = entity(kb, "Planar Face")
    entity(kb, "bore")
    assert [o.id for o in kb.query_objects(name_contains="planar")] == [hit.id]


def test_neighbors_directions():
    kb = KnowledgeBase()
    e1 = entity(kb)
    c1 = kb.add_object(ObjectKind(Kind.Constraint, SubKind.Product), "c1")
    rel = kb.add_relation(RelationKind.HasConstraint, e1.id, c1.id)
    outgoing = kb.neighbors(e1.id, "outgoing")
    assert [(r.id, o.id) for r, o in outgoing] == [(rel.id, c1.id)]
    assert kb.neighbors(e1.id, "incoming") == []
    assert kb.neighbors(c1.id, "incoming")[0][1].id == e1.id


def test_neighbors_star_both():
    kb = KnowledgeBase()
    act = kb.add_object(ObjectKind(Kind.Activity, SubKind.Reasoning), "hub")
    expected = set()
    for i in range(2):
        f = kb.add_object(ObjectKind(Kind.Function), f"f{i}")
        expected.add(kb.add_relation(RelationKind.HasFunction, act.id, f.id).id)
    for i in range(2):
        d = kb.add_object(ObjectKind(Kind.Activity, SubKind.Domain), f"d{i}")
        expected.add(kb.add_relation(RelationKind.Covers, act.id, d.id).id)
    ill = kb.add_object(ObjectKind(Kind.Illustration), "photo")
    expected.add(kb.add_relation(RelationKind.Illustrates, ill.id, act.id).id)
    pairs = kb.neighbors(act.id, "both")
    assert len(pairs) == 5
    assert {r.id for r, _ in pairs} == expected


def test_neighbors_kind_filter():
    kb = KnowledgeBase()
    act = kb.add_object(ObjectKind(Kind.Activity, SubKind.Reasoning), "hub")
    f = kb.add_object(ObjectKind(Kind.Function), "f")
    d = kb.add_object(ObjectKind(Kind.Activity, SubKind.Domain), "d")
    kb.add_relation(RelationKind.HasFunction, act.id, f.id)
    kb.add_relation(RelationKind.Covers, act.id, d.id)
    only = kb.neighbors(act.id, "both", kind=RelationKind.Covers)
    assert [o.id for _, o in only] == [d.id]


# -- validation ---------------------------------------------------------------------


def test_empty_kb_validates():
    assert KnowledgeBase().validate() == []


def test_kb_built_through_operations_validates():
    import random

    from conftest import make_random_kb

    kb = make_random_kb(random.Random(7), max_objects=40, max_relations=80)
    assert kb.validate() == []


def test_dangling_endpoint_detected_after_surgery():
    kb = KnowledgeBase()
    e1, e2 = entity(kb, "e1"), entity(kb, "e2")
    kb.add_relation(RelationKind.IsA, e1.id, e2.id)
    del kb.objects[e2.id]  # simulate a hand-edited file
    violations = kb.validate()
    assert [v.rule for v in violations] == ["DanglingEndpoint"]
    assert e2.id in violations[0].message


def test_validator_reports_injected_cycle():
    kb = KnowledgeBase()
    e1, e2 = entity(kb, "e1"), entity(kb, "e2")
    kb.add_relation(RelationKind.IsA, e1.id, e2.id)
    from icarref.model import Relation
    from icarref.store import relation_id_for

    back_id = relation_id_for(RelationKind.IsA, e2.id, e1.id)
    kb.relations[back_id] = Relation(back_id, RelationKind.IsA, e2.id, e1.id)
    assert "CycleDetected" in [v.rule for v in kb.validate()]
