"""Algebra definition files and the built-in catalog.

A definition is a JSON document::

    {
      "schema": "leibniz-algebra/1",
      "name": "h3",
      "field": "Q",
      "dim": 3,
      "basis": ["x", "y", "z"],
      "brackets": [{"i": 1, "j": 2, "coeffs": [[3, "1"]]},
                   {"i": 2, "j": 1, "coeffs": [[3, "-1"]]}],
      "ideals": {"center": [["0", "0", "1"]]},
      "extension": {"ideal": "center"},
      "expected": {"HL2": {"value": 5, "source": "..."}}
    }

Indices are 1-based and follow the order of ``basis``.  Scalars are strings
("3/4", "-2") so nothing passes through floats.  Only ``dim`` is required;
every bracket pair not listed is zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .algebra import (
    Extension,
    Ideal,
    LeibnizAlgebra,
    LeibnizIdentityError,
    extension_from,
    validate_leibniz,
)
from .exactla import Field, field_from_string

SCHEMA = "leibniz-algebra/1"

# keys of the expected-results block and what they measure
EXPECTED_KEYS = {
    "HL1": "dim HL_1",
    "HL2": "dim HL_2",
    "HL3": "dim HL_3",
    "tensor_square": "dim g⋆g",
    "exterior_square": "dim g∧g",
    "gamma_abelianization": "dim Γ(g^ab)",
    "lie_exterior_square": "dim g∧_Lie g",
}


class CatalogError(ValueError):
    """Malformed algebra file.

    ``line``/``column`` are set for JSON syntax errors, ``where`` names the
    offending key path for structural errors, and ``violations`` carries the
    failing Leibniz-identity instances when the brackets are inconsistent.
    """

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None,
                 where: str = "", violations=None, origin: str = ""):
        self.line = line
        self.column = column
        self.where = where
        self.violations = list(violations or [])
        self.origin = origin
        loc = origin
        if line is not None:
            loc += f"{':' if loc else ''}line {line}, column {column}"
        if where:
            loc += f"{' ' if loc else ''}at {where}"
        super().__init__(f"{loc}: {message}" if loc else message)


@dataclass
class CatalogEntry:
    name: str
    algebra: LeibnizAlgebra
    ideals: dict[str, Ideal] = field(default_factory=dict)
    extension: Extension | None = None
    expected: dict[str, dict] = field(default_factory=dict)
    description: str = ""
    source: dict = field(default_factory=dict, repr=False)  # the decoded document

    @property
    def field(self) -> Field:
        return self.algebra.field


# ---------------------------------------------------------------------------
# parsing


def _load(text, origin: str) -> dict:
    if isinstance(text, Mapping):
        return dict(text)
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(exc.msg, line=exc.lineno, column=exc.colno, origin=origin) from None
    if not isinstance(doc, dict):
        raise CatalogError("top level must be an object", origin=origin)
    return doc


def _scalar(F: Field, x, where: str, origin: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise CatalogError(f"scalar must be a string or integer, got {x!r}", where=where, origin=origin)
    try:
        return F(Fraction(x.strip()) if isinstance(x, str) else x)
    except (ValueError, ZeroDivisionError) as exc:
        raise CatalogError(f"bad scalar {x!r}: {exc}", where=where, origin=origin) from None


def _index(k, dim: int, where: str, origin: str) -> int:
    if isinstance(k, bool) or not isinstance(k, int) or not 1 <= k <= dim:
        raise CatalogError(f"index must be an integer in 1..{dim}, got {k!r}", where=where, origin=origin)
    return k - 1


def _coeff_pair(F: Field, pair, dim: int, where: str, origin: str) -> tuple[int, Any]:
    # [k, scalar]: the index comes first; either slot may be an int or a string
    if not isinstance(pair, list) or len(pair) != 2:
        raise CatalogError("coefficient must be a pair [index, scalar]", where=where, origin=origin)
    k, c = pair
    if isinstance(k, str) and k.strip().isdigit():
        k = int(k)
    return _index(k, dim, where + "[0]", origin), _scalar(F, c, where + "[1]", origin)


def _field_of(doc: dict, override: Field | None, origin: str) -> Field:
    if override is not None:
        return override
    try:
        return field_from_string(str(doc.get("field", "Q")))
    except ValueError as exc:
        raise CatalogError(str(exc), where="field", origin=origin) from None


def _algebra_from_doc(doc: dict, F: Field, origin: str) -> LeibnizAlgebra:
    if "schema" in doc and doc["schema"] != SCHEMA:
        raise CatalogError(f"unsupported schema {doc['schema']!r}", where="schema", origin=origin)
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise CatalogError("dim must be a non-negative integer", where="dim", origin=origin)
    labels = doc.get("basis")
    if labels is None:
        labels = [f"e{k + 1}" for k in range(dim)]
    if not isinstance(labels, list) or len(labels) != dim or not all(isinstance(s, str) for s in labels):
        raise CatalogError(f"basis must list {dim} label strings", where="basis", origin=origin)
    if len(set(labels)) != dim:
        raise CatalogError("basis labels must be distinct", where="basis", origin=origin)
    structure: dict[tuple[int, int], dict] = {}
    entries = doc.get("brackets", [])
    if not isinstance(entries, list):
        raise CatalogError("brackets must be a list", where="brackets", origin=origin)
    for n, entry in enumerate(entries):
        where = f"brackets[{n}]"
        if not isinstance(entry, dict) or not {"i", "j", "coeffs"} <= entry.keys():
            raise CatalogError("bracket entry needs keys i, j, coeffs", where=where, origin=origin)
        i = _index(entry["i"], dim, where + ".i", origin)
        j = _index(entry["j"], dim, where + ".j", origin)
        if (i, j) in structure:
            raise CatalogError(f"pair ({i + 1}, {j + 1}) given twice", where=where, origin=origin)
        if not isinstance(entry["coeffs"], list):
            raise CatalogError("coeffs must be a list", where=where + ".coeffs", origin=origin)
        vec: dict[int, Any] = {}
        for m, pair in enumerate(entry["coeffs"]):
            k, c = _coeff_pair(F, pair, dim, f"{where}.coeffs[{m}]", origin)
            vec[k] = vec.get(k, F.zero) + c
        structure[(i, j)] = {k: c for k, c in vec.items() if c}
    name = doc.get("name", "")
    try:
        return LeibnizAlgebra(F, dim, structure, labels, str(name))
    except LeibnizIdentityError as exc:
        raise CatalogError(_describe_violations(exc.violations, labels), where="brackets",
                           violations=exc.violations, origin=origin) from None


def _describe_violations(violations, labels) -> str:
    lines = [f"Leibniz identity fails for {len(violations)} basis triple(s)"]
    for i, j, k, lhs, rhs in violations[:5]:
        lines.append(f"  [{labels[i]},[{labels[j]},{labels[k]}]] = {_fmt_vec(lhs, labels)}"
                     f" but [[{labels[i]},{labels[j]}],{labels[k]}] - [[{labels[i]},{labels[k]}],{labels[j]}]"
                     f" = {_fmt_vec(rhs, labels)}")
    return "\n".join(lines)


def _fmt_vec(v, labels) -> str:
    items = sorted(v.items()) if isinstance(v, dict) else [(k, c) for k, c in enumerate(v) if c]
    if not items:
        return "0"
    return " + ".join(f"{c}*{labels[k]}" for k, c in items)


def parse_algebra(text, field: Field | None = None, origin: str = "") -> LeibnizAlgebra:
    """Parse a definition (JSON text, bytes or an already-decoded dict).

    ``field`` overrides the field named in the file.
    """
    doc = _load(text, origin)
    return _algebra_from_doc(doc, _field_of(doc, field, origin), origin)


def _vectors(F: Field, rows, dim: int, where: str, origin: str) -> list[list]:
    if not isinstance(rows, list):
        raise CatalogError("expected a list of vectors", where=where, origin=origin)
    out = []
    for n, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise CatalogError(f"vector must have {dim} entries", where=f"{where}[{n}]", origin=origin)
        out.append([_scalar(F, x, f"{where}[{n}][{m}]", origin) for m, x in enumerate(row)])
    return out


def parse_entry(text, field: Field | None = None, origin: str = "") -> CatalogEntry:
    """Parse a full catalog entry: algebra plus ideals, extension and expected block.

    When ``field`` overrides the file's own field the expected block is
    dropped, since its values are only recorded for the stated field.
    """
    doc = _load(text, origin)
    F = _field_of(doc, field, origin)
    g = _algebra_from_doc(doc, F, origin)
    ideals: dict[str, Ideal] = {}
    raw = doc.get("ideals", {})
    if not isinstance(raw, dict):
        raise CatalogError("ideals must be an object", where="ideals", origin=origin)
    for name in raw:
        where = f"ideals.{name}"
        vecs = _vectors(F, raw[name], g.dim, where, origin)
        try:
            ideals[name] = Ideal.spanned_by(g, vecs, name)
        except ValueError as exc:
            raise CatalogError(f"not an ideal: {exc}", where=where, origin=origin) from None
    ext = None
    if "extension" in doc:
        spec = doc["extension"]
        if not isinstance(spec, dict) or spec.get("ideal") not in ideals:
            raise CatalogError("extension must name one of the listed ideals", where="extension",
                               origin=origin)
        split = None
        if spec.get("splitting") is not None:
            split = _vectors(F, spec["splitting"], g.dim, "extension.splitting", origin)
        try:
            ext = extension_from(g, ideals[spec["ideal"]], split, name=f"{g.name}/{spec['ideal']}")
        except ValueError as exc:
            raise CatalogError(f"bad extension data: {exc}", where="extension", origin=origin) from None
    expected = doc.get("expected", {})
    if not isinstance(expected, dict):
        raise CatalogError("expected must be an object", where="expected", origin=origin)
    for key, val in expected.items():
        if key not in EXPECTED_KEYS:
            raise CatalogError(f"unknown expected key {key!r}", where="expected", origin=origin)
        if not isinstance(val, dict) or not isinstance(val.get("value"), int) or "source" not in val:
            raise CatalogError("expected values need integer 'value' and a 'source'",
                               where=f"expected.{key}", origin=origin)
    declared = _field_of(doc, None, origin)
    if field is not None and field != declared:
        expected = {}
    name = str(doc.get("name") or (Path(origin).stem if origin else "") or "unnamed")
    return CatalogEntry(name, g, ideals, ext, dict(expected),
                        str(doc.get("description", "")), doc)


# ---------------------------------------------------------------------------
# serialisation


def field_string(F: Field) -> str:
    return "Q" if F.characteristic == 0 else f"F{F.characteristic}"


def serialize_algebra(g: LeibnizAlgebra) -> dict:
    """Inverse of :func:`parse_algebra` (as a dict; see :func:`dumps`)."""
    brackets = []
    for (i, j), vec in sorted(g.nonzero_brackets().items()):
        brackets.append({"i": i + 1, "j": j + 1,
                         "coeffs": [[k + 1, str(c)] for k, c in sorted(vec.items())]})
    return {
        "schema": SCHEMA,
        "name": g.name,
        "field": field_string(g.field),
        "dim": g.dim,
        "basis": list(g.labels),
        "brackets": brackets,
    }


def dumps(doc: dict) -> str:
    """Diff-friendly layout: one line per bracket, ideal or expected value."""

    def compact(x):
        return json.dumps(x, ensure_ascii=False)

    lines = ["{"]
    keys = list(doc)
    for n, key in enumerate(keys):
        val = doc[key]
        end = "," if n + 1 < len(keys) else ""
        if isinstance(val, list) and val and key == "brackets":
            inner = ",\n".join(f"    {compact(v)}" for v in val)
            lines.append(f"  {compact(key)}: [\n{inner}\n  ]{end}")
        elif isinstance(val, dict) and val:
            inner = ",\n".join(f"    {compact(k)}: {compact(v)}" for k, v in val.items())
            lines.append(f"  {compact(key)}: {{\n{inner}\n  }}{end}")
        else:
            lines.append(f"  {compact(key)}: {compact(val)}{end}")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# built-in catalog


def _data_files():
    root = resources.files(__package__).joinpath("data")
    return sorted((p for p in root.iterdir() if p.name.endswith(".json")), key=lambda p: p.name)


def load_entry_file(path, field: Field | None = None) -> CatalogEntry:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise CatalogError(f"not UTF-8: {exc}", origin=str(p)) from None
    return parse_entry(text, field, origin=str(p))


def load_catalog(field: Field | None = None) -> list[CatalogEntry]:
    """Built-in entries in file-name order."""
    return [parse_entry(p.read_text(encoding="utf-8"), field, origin=p.name) for p in _data_files()]


def catalog_names() -> list[str]:
    return [e.name for e in load_catalog()]


def select(entries: list[CatalogEntry], names) -> list[CatalogEntry]:
    if not names:
        return list(entries)
    by_name = {e.name: e for e in entries}
    missing = [n for n in names if n not in by_name]
    if missing:
        raise CatalogError(f"unknown catalog entries: {', '.join(missing)}")
    return [by_name[n] for n in names]


__all__ = [
    "SCHEMA",
    "EXPECTED_KEYS",
    "CatalogError",
    "CatalogEntry",
    "parse_algebra",
    "parse_entry",
    "serialize_algebra",
    "dumps",
    "field_string",
    "load_entry_file",
    "load_catalog",
    "catalog_names",
    "select",
    "validate_leibniz",
]
