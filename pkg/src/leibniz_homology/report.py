"""Machine-checkable verdicts for exact sequences and isomorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Node:
    """One interior node of a sequence: dim image(in) vs dim kernel(out)."""

    label: str
    dim: int
    image_in: int
    kernel_out: int
    exact: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "dim": self.dim,
            "image_in": self.image_in,
            "kernel_out": self.kernel_out,
            "exact": self.exact,
        }


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"label": self.label, "passed": self.passed}
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class SequenceReport:
    """Collected flags for one verified claim.

    ``verdict`` is the conjunction of every node, iso witness and check.
    ``values`` holds named integers (dimensions, ranks) for tables and
    regression comparison; they carry no pass/fail meaning on their own.
    """

    name: str
    nodes: list[Node] = field(default_factory=list)
    isos: list[Check] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    values: dict[str, int] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    error: str | None = None

    @property
    def verdict(self) -> bool:
        if self.error is not None:
            return False
        return (
            all(n.exact for n in self.nodes)
            and all(c.passed for c in self.isos)
            and all(c.passed for c in self.checks)
        )

    def check(self, label: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(label, bool(passed), detail))
        return bool(passed)

    def iso(self, label: str, bijective: bool) -> bool:
        self.isos.append(Check(label, bool(bijective)))
        return bool(bijective)

    def merge(self, other: SequenceReport, prefix: str = "") -> None:
        """Fold another report's flags into this one."""
        pre = f"{prefix}: " if prefix else ""
        for n in other.nodes:
            self.nodes.append(Node(pre + n.label, n.dim, n.image_in, n.kernel_out, n.exact))
        self.isos.extend(Check(pre + c.label, c.passed, c.detail) for c in other.isos)
        self.checks.extend(Check(pre + c.label, c.passed, c.detail) for c in other.checks)
        if other.error is not None:
            self.error = pre + other.error

    def failures(self) -> list[str]:
        out = [f"node {n.label}" for n in self.nodes if not n.exact]
        out += [f"iso {c.label}" for c in self.isos if not c.passed]
        out += [f"check {c.label}" for c in self.checks if not c.passed]
        if self.error is not None:
            out.append(f"error {self.error}")
        return out

    def to_dict(self, include_timings: bool = False) -> dict[str, Any]:
        d: dict[str, Any] = {
            "name": self.name,
            "verdict": "pass" if self.verdict else "fail",
            "nodes": [n.to_dict() for n in self.nodes],
            "isos": [c.to_dict() for c in self.isos],
            "checks": [c.to_dict() for c in self.checks],
            "values": dict(sorted(self.values.items())),
        }
        if self.error is not None:
            d["error"] = self.error
        if include_timings:
            d["timings"] = {k: round(v, 4) for k, v in sorted(self.timings.items())}
        return d
