"""Check reports and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

REPORT_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "required": ["n", "conventions", "checks", "tables"],
    "properties": {
        "n": {"type": "integer"},
        "conventions": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["name", "params", "pass", "witness"],
                "properties": {
                    "name": {"type": "string"},
                    "params": {"type": "object"},
                    "pass": {"type": "boolean"},
                    "witness": {"type": ["string", "null"]},
                },
            },
        },
        "tables": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["level", "members"],
                "properties": {
                    "level": {"type": "integer"},
                    "members": {"type": "array", "items": {"type": "integer"}},
                },
            },
        },
    },
}


@dataclass
class Check:
    name: str
    params: Dict[str, Any]
    passed: bool
    witness: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.passed and self.witness is None:
            raise ValueError(f"failed check {self.name} {self.params} carries no witness")

    def to_json(self) -> Dict[str, Any]:
        return {"name": self.name, "params": self.params, "pass": self.passed,
                "witness": self.witness}

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "Check":
        return cls(obj["name"], dict(obj["params"]), bool(obj["pass"]), obj["witness"])


@dataclass
class TableLevel:
    level: int
    members: List[int]


@dataclass
class Report:
    n: int
    conventions: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    tables: List[TableLevel] = field(default_factory=list)
    elapsed: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "conventions": self.conventions,
            "checks": [c.to_json() for c in self.checks],
            "tables": [{"level": t.level, "members": list(t.members)} for t in self.tables],
        }

    def dumps(self, **kwargs) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, **kwargs)

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "Report":
        return cls(
            n=int(obj["n"]),
            conventions=dict(obj["conventions"]),
            checks=[Check.from_json(c) for c in obj["checks"]],
            tables=[TableLevel(int(t["level"]), [int(m) for m in t["members"]])
                    for t in obj["tables"]],
        )

    @classmethod
    def loads(cls, text: str) -> "Report":
        return cls.from_json(json.loads(text))

    def summary_lines(self) -> List[str]:
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            params = ", ".join(f"{k}={v}" for k, v in c.params.items())
            line = f"[{status}] {c.name}({params})"
            if c.witness is not None:
                line += f"  witness: {c.witness}"
            lines.append(line)
        passed = sum(c.passed for c in self.checks)
        lines.append(f"{passed}/{len(self.checks)} checks passed in {self.elapsed:.2f}s")
        return lines
