"""Command-line front end for batch capture, lint and export workflows.

Exit codes: 0 success, 1 domain error (the error name is printed verbatim),
2 usage error. ``lint`` additionally exits 1 when any Error-severity finding
remains. Every mutating subcommand rewrites the KB file atomically.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ProjectConfig, load_config, resolve_kb_path
from .errors import KnowledgeError
from .evaluation import (
    Severity,
    compute_coverage,
    coverage_to_csv,
    coverage_to_text,
    findings_to_csv,
    findings_to_text,
    run_completeness,
)
from .model import Kind, ObjectKind, RelationKind, State
from .serialization import export_kb, load_kb_file, save_kb_file
from .store import KnowledgeBase
from .structuring import build_diagram, build_forest, export_graph


class UsageError(Exception):
    """Bad argument content (unknown kind token, malformed rule list...)."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icarref",
        description="Capture, structure, evaluate and serve a knowledge base.",
    )
    parser.add_argument("--config", help="project config file (JSON)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--kb", help="knowledge base file (.xml or .csv)")
        return p

    add("init", "create a new empty knowledge base file")

    p = add("import-doc", "import a UTF-8 text file as a source document")
    p.add_argument("file", help="path of the text file")
    p.add_argument("--title", help="document title (defaults to the file name)")

    p = add("add", "add a knowledge object")
    p.add_argument("kind", help="object kind, e.g. Entity/Structural or Resource")
    p.add_argument("name")
    p.add_argument("--description", default="")

    p = add("link", "add a typed relation between two objects")
    p.add_argument("relation", help="relation kind, e.g. HasConstraint")
    p.add_argument("source_id")
    p.add_argument("target_id")

    p = add("anchor", "anchor an object to a byte span of a document")
    p.add_argument("document_id")
    p.add_argument("start", type=int)
    p.add_argument("end", type=int)
    p.add_argument("object_id")

    p = add("set-state", "move an object along the implementation lifecycle")
    p.add_argument("object_id")
    p.add_argument("state", help="NotTreated, InProgress, Implemented or Dismissed")

    p = add("lint", "run the completeness rules")
    p.add_argument("--rules", help="comma-separated rule ids (default: all enabled)")
    p.add_argument("--format", choices=["plain_text", "csv"], default="plain_text")

    p = add("coverage", "report automation coverage per reasoning activity")
    p.add_argument("--format", choices=["plain_text", "csv"], default="plain_text")

    p = add("tree", "export a same-kind taxonomy forest as DOT")
    p.add_argument("kind", help="object kind, e.g. Entity")
    p.add_argument("relation", choices=["IsA", "IsComposedOf"])
    p.add_argument("-o", "--output", help="output file (default: stdout)")

    p = add("diagram", "export the neighborhood of an object as DOT")
    p.add_argument("root_id")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--relations", help="comma-separated relation kinds to follow")
    p.add_argument("-o", "--output", help="output file (default: stdout)")

    p = add("export", "serialize the knowledge base")
    p.add_argument(
        "--format", choices=["xml", "csv", "plain_text"], default="plain_text"
    )
    p.add_argument("-o", "--output", help="output file (default: stdout)")

    p = add("serve", "run the HTTP service")
    p.add_argument("--port", type=int)

    return parser


def _parse_object_kind(text: str) -> ObjectKind:
    try:
        return ObjectKind.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_token(enum_cls, text: str, what: str):
    try:
        return enum_cls(text)
    except ValueError:
        valid = ", ".join(member.value for member in enum_cls)
        raise UsageError(f"unknown {what} {text!r}; expected one of: {valid}") from None


def _parse_rule_ids(text: str | None) -> set[str] | None:
    if text is None:
        return None
    rule_ids = {part.strip() for part in text.split(",") if part.strip()}
    if not rule_ids:
        raise UsageError("--rules must name at least one rule id")
    return rule_ids


def _emit(data: bytes, output: str | None) -> None:
    if output:
        Path(output).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


def _load(path: Path, config: ProjectConfig | None) -> KnowledgeBase:
    kb = load_kb_file(path)
    if config is not None:
        kb.schema = config.apply_schema(kb.schema)
    return kb


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        config = load_config(args.config) if args.config else None
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    kb_path = resolve_kb_path(args.kb, config)
    try:
        return _dispatch(args, kb_path, config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except KnowledgeError as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args: argparse.Namespace, kb_path: Path, config: ProjectConfig | None) -> int:
    command = args.command

    if command == "init":
        if kb_path.exists():
            print(f"error: {kb_path} already exists", file=sys.stderr)
            return 1
        kb = KnowledgeBase()
        if config is not None:
            kb.schema = config.apply_schema(kb.schema)
        save_kb_file(kb, kb_path)
        print(str(kb_path))
        return 0

    if command == "serve":
        from .service import run_service

        port = args.port if args.port is not None else (
            config.service_port if config else ProjectConfig().service_port
        )
        if not 1 <= port <= 65535:
            raise UsageError(f"port must be in [1, 65535], got {port}")
        run_service(kb_path, port, config)
        return 0

    kb = _load(kb_path, config)

    if command == "import-doc":
        text = Path(args.file).read_text(encoding="utf-8")
        title = args.title if args.title is not None else Path(args.file).name
        doc = kb.import_document(title, text)
        save_kb_file(kb, kb_path)
        print(doc.id)
        return 0

    if command == "add":
        kind = _parse_object_kind(args.kind)
        obj = kb.add_object(kind, args.name, args.description)
        save_kb_file(kb, kb_path)
        print(obj.id)
        return 0

    if command == "link":
        rel_kind = _parse_token(RelationKind, args.relation, "relation kind")
        rel = kb.add_relation(rel_kind, args.source_id, args.target_id)
        save_kb_file(kb, kb_path)
        print(rel.id)
        return 0

    if command == "anchor":
        frag = kb.anchor_fragment(args.document_id, args.start, args.end, args.object_id)
        save_kb_file(kb, kb_path)
        print(frag.id)
        return 0

    if command == "set-state":
        state = _parse_token(State, args.state, "state")
        obj = kb.set_state(args.object_id, state)
        save_kb_file(kb, kb_path)
        print(f"{obj.id} {obj.state.value}")
        return 0

    if command == "lint":
        overrides = config.lint_overrides if config else None
        findings = run_completeness(kb, _parse_rule_ids(args.rules), overrides)
        if args.format == "csv":
            sys.stdout.write(findings_to_csv(findings))
        else:
            print(findings_to_text(findings))
        has_errors = any(f.severity == Severity.Error for f in findings)
        return 1 if has_errors else 0

    if command == "coverage":
        report = compute_coverage(kb)
        if args.format == "csv":
            sys.stdout.write(coverage_to_csv(report))
        else:
            print(coverage_to_text(report, kb))
        return 0

    if command == "tree":
        kind = _parse_token(Kind, args.kind, "kind")
        relation = RelationKind(args.relation)
        forest = build_forest(kb, kind, relation)
        _emit(export_graph(kb, forest), args.output)
        return 0

    if command == "diagram":
        relation_kinds = None
        if args.relations:
            relation_kinds = {
                _parse_token(RelationKind, part.strip(), "relation kind")
                for part in args.relations.split(",")
                if part.strip()
            }
        diagram = build_diagram(kb, args.root_id, args.depth, relation_kinds)
        _emit(export_graph(kb, diagram), args.output)
        return 0

    if command == "export":
        _emit(export_kb(kb, args.format), args.output)
        return 0

    raise AssertionError(f"unhandled command {command!r}")


if __name__ == "__main__":
    sys.exit(main())
