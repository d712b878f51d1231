"""Batch runner over catalog entries and report emission.

Each entry is checked independently; an exception inside one verifier is
recorded as that verifier's error and the batch carries on.  Reports are
assembled in input order, so the machine format is byte-identical across
runs regardless of ``jobs``.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .algebra import abelianization, center, is_lie, is_perfect
from .catalog import CatalogEntry, EXPECTED_KEYS, field_string, parse_entry
from .exactla import field_from_string
from .gamma import check_gamma_injectivity, check_split_sequence, gamma
from .homology import DEFAULT_MAX_DEGREE, leibniz_homology
from .products import lie_exterior_square, square_products
from .report import SequenceReport
from .theorems import (
    central_extension_corollary,
    check_hl2_theorem,
    check_right_exactness,
    check_split_injectivity,
    check_uce_perfect,
    eight_term_audit,
    lie_comparison_check,
    perfect_lie_sequence,
    six_term_sequence,
)

REPORT_SCHEMA = "leibniz-homology-report/1"


@dataclass(frozen=True)
class CheckSpec:
    name: str
    applies: Callable[[CatalogEntry], bool]
    run: Callable[[CatalogEntry, int], SequenceReport]
    summary: str


def _always(e: CatalogEntry) -> bool:
    return True


def _has_ext(e: CatalogEntry) -> bool:
    return e.extension is not None


def _central(e: CatalogEntry) -> bool:
    return e.extension is not None and e.extension.ideal.space <= center(e.algebra).space


CHECKS: dict[str, CheckSpec] = {c.name: c for c in [
    CheckSpec("hl2", _always, lambda e, d: check_hl2_theorem(e.algebra),
              "HL2 against the kernel of θ, with the explicit δ bridge"),
    CheckSpec("split-sequence", _always, lambda e, d: check_split_sequence(e.algebra),
              "tensor square modulo Im ψ splits as exterior square plus Λ² of the abelianization"),
    CheckSpec("gamma-injectivity", _always, lambda e, d: check_gamma_injectivity(e.algebra),
              "Γ of the abelianization embeds in the tensor square"),
    CheckSpec("perfect", lambda e: is_perfect(e.algebra), lambda e, d: check_uce_perfect(e.algebra),
              "perfect algebras: tensor equals exterior square, θ is a universal central extension"),
    CheckSpec("lie-comparison", lambda e: is_lie(e.algebra), lambda e, d: lie_comparison_check(e.algebra),
              "Lie algebras: the map to the Lie exterior square, its kernel against Γ(g^ab)"),
    CheckSpec("perfect-lie", lambda e: is_lie(e.algebra) and is_perfect(e.algebra),
              lambda e, d: perfect_lie_sequence(e.algebra),
              "perfect Lie algebras: three-term sequence through the Lie tensor square"),
    CheckSpec("right-exactness", _has_ext, lambda e, d: check_right_exactness(e.extension),
              "exterior products are right exact along the extension"),
    CheckSpec("split-injectivity", lambda e: _has_ext(e) and e.extension.splitting is not None,
              lambda e, d: check_split_injectivity(e.extension),
              "split extensions: the left map of the exterior sequence is injective"),
    CheckSpec("six-term", _has_ext, lambda e, d: six_term_sequence(e.extension),
              "six-term exact sequence with the snake connecting map"),
    CheckSpec("eight-term", _has_ext, lambda e, d: eight_term_audit(e.extension, max_degree=d),
              "eight-term audit: exactness rightwards plus the HL3 dimension bound"),
    CheckSpec("central", _central, lambda e, d: central_extension_corollary(e.extension),
              "central extensions: exact tail and its surjectivity criterion"),
]}

ALL_CHECKS = tuple(CHECKS) + ("expected",)


def parse_check_list(text: str | None) -> tuple[str, ...]:
    """Comma-separated check names; ``None`` or ``all`` selects every check."""
    if text is None or text.strip() == "all":
        return ALL_CHECKS
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    bad = [n for n in names if n not in ALL_CHECKS]
    if bad:
        raise ValueError(f"unknown checks {', '.join(bad)}; choose from {', '.join(ALL_CHECKS)}")
    return names


# ---------------------------------------------------------------------------
# invariants


def invariants(entry: CatalogEntry, max_degree: int = DEFAULT_MAX_DEGREE) -> dict[str, int]:
    """Dimensions reported in tables; keys follow the expected-results block."""
    g = entry.algebra
    out: dict[str, int] = {}
    for n in range(1, max_degree + 1):
        out[f"HL{n}"] = leibniz_homology(g, n, max_degree=max_degree).dim
    pair = square_products(g)
    out["tensor_square"] = pair.tensor.dim
    out["exterior_square"] = pair.exterior.dim
    out["gamma_abelianization"] = gamma(g.field, abelianization(g)[0].dim).dim
    if is_lie(g):
        out["lie_exterior_square"] = lie_exterior_square(g).dim
    return out


def _expected_report(entry: CatalogEntry, inv: dict[str, int]) -> SequenceReport:
    rep = SequenceReport("expected")
    for key, val in entry.expected.items():
        if key not in inv:
            continue  # degree beyond the requested maximum
        rep.values[key] = inv[key]
        rep.check(f"{EXPECTED_KEYS[key]} = {val['value']} ({val['source']})", inv[key] == val["value"],
                  "" if inv[key] == val["value"] else f"computed {inv[key]}")
    return rep


# ---------------------------------------------------------------------------
# running


@dataclass
class EntryResult:
    name: str
    field: str
    dim: int
    lie: bool | None
    invariants: dict[str, int] = field(default_factory=dict)
    reports: list[SequenceReport] = field(default_factory=list)
    error: str | None = None

    @property
    def verdict(self) -> bool:
        return self.error is None and all(r.verdict for r in self.reports)

    def failures(self) -> list[str]:
        out = [f"{r.name}: {f}" for r in self.reports for f in r.failures()]
        if self.error is not None:
            out.append(f"error: {self.error}")
        return out

    def to_dict(self, include_timings: bool = False) -> dict:
        d = {
            "entry": self.name,
            "field": self.field,
            "dim": self.dim,
            "lie": self.lie,
            "verdict": "pass" if self.verdict else "fail",
            "invariants": dict(self.invariants),
            "reports": [r.to_dict(include_timings) for r in self.reports],
        }
        if self.error is not None:
            d["error"] = self.error
        return d


def _error_text(exc: BaseException) -> str:
    return f"{type(exc).__name__}: {exc}"


def run_entry(entry: CatalogEntry, checks=ALL_CHECKS, max_degree: int = DEFAULT_MAX_DEGREE) -> EntryResult:
    g = entry.algebra
    res = EntryResult(entry.name, field_string(g.field), g.dim, None)
    try:
        res.lie = is_lie(g)
        res.invariants = invariants(entry, max_degree)
    except Exception as exc:  # recorded, not fatal to the batch
        res.error = _error_text(exc)
    for name in checks:
        if name == "expected":
            if entry.expected and res.error is None:
                res.reports.append(_expected_report(entry, res.invariants))
            continue
        spec = CHECKS[name]
        try:
            if not spec.applies(entry):
                continue
            rep = spec.run(entry, max_degree)
        except Exception as exc:
            rep = SequenceReport(name, error=_error_text(exc))
        rep.name = name
        res.reports.append(rep)
    return res


def _run_from_source(args) -> EntryResult:
    source, field_text, checks, max_degree = args
    F = field_from_string(field_text) if field_text else None
    return run_entry(parse_entry(source, F), checks, max_degree)


def run_suite(entries: list[CatalogEntry], checks=ALL_CHECKS, max_degree: int = DEFAULT_MAX_DEGREE,
              jobs: int = 1) -> list[EntryResult]:
    """Run the selected checks on every entry; results keep input order.

    With ``jobs > 1`` entries are rebuilt from their source documents inside
    worker processes.
    """
    checks = tuple(checks)
    if jobs <= 1 or len(entries) <= 1:
        return [run_entry(e, checks, max_degree) for e in entries]
    work = [(e.source, field_string(e.field), checks, max_degree) for e in entries]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_from_source, work))


def suite_verdict(results: list[EntryResult]) -> bool:
    return all(r.verdict for r in results)


# ---------------------------------------------------------------------------
# reports


TABLE_COLUMNS = [
    ("HL1", "HL₁"),
    ("HL2", "HL₂"),
    ("HL3", "HL₃"),
    ("tensor_square", "dim ⋆"),
    ("exterior_square", "dim ∧"),
    ("gamma_abelianization", "dim Γ(g^ab)"),
]


def report_document(results: list[EntryResult], checks=ALL_CHECKS, max_degree: int = DEFAULT_MAX_DEGREE,
                    include_timings: bool = False) -> dict:
    passed = sum(r.verdict for r in results)
    return {
        "schema": REPORT_SCHEMA,
        "max_degree": max_degree,
        "checks": list(checks),
        "summary": {"entries": len(results), "passed": passed, "failed": len(results) - passed},
        "verdict": "pass" if suite_verdict(results) else "fail",
        "entries": [r.to_dict(include_timings) for r in results],
    }


def _markdown(doc: dict) -> str:
    head = ["entry", "field", "dim"] + [label for _, label in TABLE_COLUMNS] + ["checks", "verdict"]
    lines = [
        "# Leibniz homology report",
        "",
        f"{doc['summary']['passed']} of {doc['summary']['entries']} entries pass; "
        f"overall verdict: **{doc['verdict']}**.",
        "",
        "| " + " | ".join(head) + " |",
        "|" + "|".join("---" for _ in head) + "|",
    ]
    for e in doc["entries"]:
        inv = e["invariants"]
        cells = [e["entry"], e["field"], str(e["dim"])]
        cells += [str(inv[k]) if k in inv else "-" for k, _ in TABLE_COLUMNS]
        ok = sum(r["verdict"] == "pass" for r in e["reports"])
        cells += [f"{ok}/{len(e['reports'])}", e["verdict"]]
        lines.append("| " + " | ".join(cells) + " |")
    failing = [e for e in doc["entries"] if e["verdict"] != "pass"]
    if failing:
        lines += ["", "## Failures", ""]
        for e in failing:
            if "error" in e:
                lines.append(f"- {e['entry']}: {e['error']}")
            for r in e["reports"]:
                if r["verdict"] == "pass":
                    continue
                bad = [c["label"] + (f" [{c['detail']}]" if c.get("detail") else "")
                       for c in r["checks"] + r["isos"] if not c["passed"]]
                bad += [f"node {n['label']}" for n in r["nodes"] if not n["exact"]]
                if "error" in r:
                    bad.append(r["error"])
                lines.append(f"- {e['entry']} / {r['name']}: {'; '.join(bad)}")
    return "\n".join(lines) + "\n"


def emit_report(results: list[EntryResult], fmt: str = "json", checks=ALL_CHECKS,
                max_degree: int = DEFAULT_MAX_DEGREE) -> str:
    """``json`` (schema-versioned, no timings) or ``md`` (tables for people)."""
    doc = report_document(results, checks, max_degree)
    if fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if fmt == "md":
        return _markdown(doc)
    raise ValueError(f"unknown report format {fmt!r}")


__all__ = [
    "REPORT_SCHEMA",
    "CHECKS",
    "ALL_CHECKS",
    "CheckSpec",
    "EntryResult",
    "parse_check_list",
    "invariants",
    "run_entry",
    "run_suite",
    "suite_verdict",
    "report_document",
    "emit_report",
]
