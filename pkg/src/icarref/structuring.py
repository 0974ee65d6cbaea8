"""Same-kind taxonomy forests, cross-kind neighborhood diagrams, and a
deterministic DOT export for rendering either.

Forest orientation: an ``IsA`` edge points from the specialization to its
parent; an ``IsComposedOf`` edge points from the whole to its part. Both
yield trees whose roots are the most general object and the top assembly.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .errors import InvalidTreeRelation, ZeroDepth
from .model import Kind, RelationKind, TREE_RELATIONS
from .store import KnowledgeBase


@dataclass
class ForestNode:
    object_id: str
    children: list["ForestNode"] = field(default_factory=list)


@dataclass(frozen=True)
class MultiParentNotice:
    """An object with several parents was attached to the lowest-id one."""

    object_id: str
    chosen_parent_id: str
    other_parent_ids: tuple[str, ...]


@dataclass
class TaxonomyForest:
    kind: Kind
    relation: RelationKind
    roots: list[ForestNode]
    notices: list[MultiParentNotice]
    edge_relation_ids: tuple[str, ...]  # the relations realized as parent links

    def object_ids(self) -> list[str]:
        """Every object id in the forest, preorder, children by id."""
        collected: list[str] = []
        stack = list(reversed(self.roots))
        while stack:
            node = stack.pop()
            collected.append(node.object_id)
            stack.extend(reversed(node.children))
        return collected


def build_forest(kb: KnowledgeBase, kind: Kind, relation: RelationKind) -> TaxonomyForest:
    """Organize every object of a kind into trees under one tree relation.

    Objects without a parent become roots; an object with several parents is
    attached under the lowest-id one and reported in the notices.
    """
    if relation not in TREE_RELATIONS:
        raise InvalidTreeRelation(f"{relation.value} is not a tree relation")
    members = [i for i in sorted(kb.objects) if kb.objects[i].kind.kind == kind]
    member_set = set(members)

    # (child, parent, relation id) triples under the chosen orientation
    parent_links: dict[str, list[tuple[str, str]]] = defaultdict(list)
    for rel_id in sorted(kb.relations):
        rel = kb.relations[rel_id]
        if rel.kind != relation:
            continue
        if relation == RelationKind.IsA:
            child, parent = rel.source_id, rel.target_id
        else:
            parent, child = rel.source_id, rel.target_id
        if child in member_set and parent in member_set:
            parent_links[child].append((parent, rel_id))

    notices: list[MultiParentNotice] = []
    chosen_edges: list[str] = []
    children: dict[str, list[str]] = defaultdict(list)
    roots: list[str] = []
    for member in members:
        links = sorted(parent_links.get(member, []))
        if not links:
            roots.append(member)
            continue
        parent, rel_id = links[0]
        children[parent].append(member)
        chosen_edges.append(rel_id)
        if len(links) > 1:
            notices.append(
                MultiParentNotice(member, parent, tuple(p for p, _ in links[1:]))
            )

    nodes = {member: ForestNode(member) for member in members}
    for parent, kids in children.items():
        nodes[parent].children = [nodes[k] for k in sorted(kids)]
    return TaxonomyForest(
        kind=kind,
        relation=relation,
        roots=[nodes[r] for r in roots],
        notices=notices,
        edge_relation_ids=tuple(sorted(chosen_edges)),
    )


@dataclass
class Diagram:
    """The neighborhood of a root object, bounded by hop count."""

    root_id: str
    depth: int
    node_ids: tuple[str, ...]
    edge_relation_ids: tuple[str, ...]


def build_diagram(
    kb: KnowledgeBase,
    root_id: str,
    depth: int,
    relation_kinds: set[RelationKind] | None = None,
) -> Diagram:
    """Breadth-first closure around a root over the selected relation kinds.

    With no explicit filter, tree relations are excluded: diagrams connect
    objects of different kinds while trees organize objects within one.
    Traversal is undirected; included edges are all selected relations whose
    endpoints both made it into the node set.
    """
    kb.get_object(root_id)
    if depth < 1:
        raise ZeroDepth(f"diagram depth must be >= 1, got {depth}")
    if relation_kinds is None:
        allowed = set(RelationKind) - TREE_RELATIONS
    else:
        allowed = set(relation_kinds)

    adjacency: dict[str, set[str]] = defaultdict(set)
    for rel in kb.relations.values():
        if rel.kind in allowed:
            adjacency[rel.source_id].add(rel.target_id)
            adjacency[rel.target_id].add(rel.source_id)

    visited = {root_id}
    frontier = [root_id]
    for _ in range(depth):
        next_frontier: list[str] = []
        for node in frontier:
            for neighbor in sorted(adjacency[node]):
                if neighbor not in visited:
                    visited.add(neighbor)
                    next_frontier.append(neighbor)
        frontier = next_frontier

    edges = tuple(
        rel_id
        for rel_id in sorted(kb.relations)
        if kb.relations[rel_id].kind in allowed
        and kb.relations[rel_id].source_id in visited
        and kb.relations[rel_id].target_id in visited
    )
    return Diagram(root_id, depth, tuple(sorted(visited)), edges)


# -- DOT export ------------------------------------------------------------


def _dot_escape(value: str) -> str:
    return (
        value.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )


def export_graph(kb: KnowledgeBase, view: TaxonomyForest | Diagram) -> bytes:
    """Emit a DOT digraph for a forest or diagram.

    Node statements carry ``kind`` and ``state`` attributes plus a label
    with name, kind, and state; edge statements carry ``relation`` and a
    matching label. Output is sorted by id, so equal views give equal bytes.
    """
    if isinstance(view, TaxonomyForest):
        name = f"forest {view.kind.value} {view.relation.value}"
        node_ids = sorted(view.object_ids())
        edge_ids = view.edge_relation_ids
    else:
        name = f"diagram {view.root_id} depth {view.depth}"
        node_ids = list(view.node_ids)
        edge_ids = view.edge_relation_ids

    lines = [f'digraph "{_dot_escape(name)}" {{', "  rankdir=TB;"]
    for obj_id in node_ids:
        obj = kb.objects[obj_id]
        label = _dot_escape(obj.name) + f"\\n({obj.kind})\\n{obj.state.value}"
        lines.append(
            f'  "{_dot_escape(obj_id)}" [label="{label}", '
            f'kind="{obj.kind}", state="{obj.state.value}"];'
        )
    for rel_id in edge_ids:
        rel = kb.relations[rel_id]
        lines.append(
            f'  "{_dot_escape(rel.source_id)}" -> "{_dot_escape(rel.target_id)}" '
            f'[label="{rel.kind.value}", relation="{rel.kind.value}"];'
        )
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")
