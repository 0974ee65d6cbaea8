"""Project configuration: KB file location, relation schema overrides, lint
rule tuning, and the service port.

Config files are JSON:

    {
      "kb_path": "kb.xml",
      "service_port": 8601,
      "schema": {
        "Covers": {"source": ["Activity/Reasoning"],
                   "target": ["Activity/Domain"], "same_kind": false}
      },
      "lint": {"C5": {"enabled": false}, "C3": {"severity": "Error"}}
    }
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .evaluation import RULES, RuleOverride, Severity
from .model import RelationKind
from .schema import RelationSchema

KB_PATH_ENV = "ICARREF_KB"
DEFAULT_KB_PATH = "kb.xml"
DEFAULT_PORT = 8601


@dataclass
class ProjectConfig:
    kb_path: Path = Path(DEFAULT_KB_PATH)
    schema_overrides: dict = field(default_factory=dict)  # RelationKind -> SchemaRow
    lint_overrides: dict[str, RuleOverride] = field(default_factory=dict)
    service_port: int = DEFAULT_PORT

    def apply_schema(self, schema: RelationSchema) -> RelationSchema:
        if not self.schema_overrides:
            return schema
        return schema.with_overrides(self.schema_overrides)


def load_config(path: Path | str) -> ProjectConfig:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"config {path}: not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ValueError(f"config {path}: top level must be an object")
    unknown = set(data) - {"kb_path", "schema", "lint", "service_port"}
    if unknown:
        raise ValueError(f"config {path}: unknown keys: {sorted(unknown)}")

    config = ProjectConfig()
    if "kb_path" in data:
        config.kb_path = Path(data["kb_path"])
    if "service_port" in data:
        port = data["service_port"]
        if not isinstance(port, int) or not 1 <= port <= 65535:
            raise ValueError(f"config {path}: service_port must be in [1, 65535]")
        config.service_port = port
    if "schema" in data:
        parsed = RelationSchema.from_dict(data["schema"])
        config.schema_overrides = {
            kind: parsed.rows[kind]
            for kind in (RelationKind(k) for k in data["schema"])
        }
    if "lint" in data:
        config.lint_overrides = _parse_lint_overrides(data["lint"], str(path))
    return config


def _parse_lint_overrides(data: dict, context: str) -> dict[str, RuleOverride]:
    overrides: dict[str, RuleOverride] = {}
    for rule_id, spec in data.items():
        if rule_id not in RULES:
            raise ValueError(f"config {context}: unknown lint rule {rule_id!r}")
        if not isinstance(spec, dict) or set(spec) - {"enabled", "severity"}:
            raise ValueError(f"config {context}: bad override for {rule_id}")
        severity = None
        if "severity" in spec:
            try:
                severity = Severity(spec["severity"])
            except ValueError:
                raise ValueError(
                    f"config {context}: bad severity for {rule_id}: {spec['severity']!r}"
                ) from None
        overrides[rule_id] = RuleOverride(
            enabled=bool(spec.get("enabled", True)), severity=severity
        )
    return overrides


def resolve_kb_path(flag_value: str | None, config: ProjectConfig | None) -> Path:
    """Precedence: --kb flag, then the environment, then the config file."""
    if flag_value:
        return Path(flag_value)
    env_value = os.environ.get(KB_PATH_ENV)
    if env_value:
        return Path(env_value)
    if config is not None:
        return config.kb_path
    return Path(DEFAULT_KB_PATH)
