"""Command line interface: ``leibniz-homology <verb> ...``.

Exit status: 0 when every verdict passes, 1 on a verdict failure, 2 on
unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import abelianization, is_lie, is_perfect
from .catalog import (
    CatalogEntry,
    CatalogError,
    dumps,
    field_string,
    load_catalog,
    load_entry_file,
    select,
    serialize_algebra,
)
from .exactla import field_from_string, kernel
from .gamma import gamma
from .homology import DEFAULT_MAX_DEGREE, CapacityError, leibniz_homology, tensor_tuple
from .products import square_products, theta_square
from .suite import ALL_CHECKS, CHECKS, emit_report, invariants, parse_check_list, run_suite, suite_verdict

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _field(args):
    if not args.field:
        return None
    try:
        return field_from_string(args.field)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _resolve(source: str, args) -> CatalogEntry:
    """A path to an algebra file, or the name of a built-in entry."""
    F = _field(args)
    if Path(source).exists():
        return load_entry_file(source, F)
    try:
        return select(load_catalog(F), [source])[0]
    except CatalogError:
        raise InputError(f"{source!r} is neither a readable file nor a catalog entry") from None


def _entries(sources, args) -> list[CatalogEntry]:
    entries = [_resolve(s, args) for s in sources] if sources else load_catalog(_field(args))
    return select(entries, args.entry or [])


def _write(text: str, args) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fmt_vec(v: dict, labels) -> str:
    if not v:
        return "0"
    parts = []
    for k, c in sorted(v.items()):
        s = str(c)
        coef = "" if s == "1" else "-" if s == "-1" else f"{s}*"
        parts.append(f"{coef}{labels[k]}")
    return " + ".join(parts).replace("+ -", "- ")


def _tensor_labels(g, n: int) -> list[str]:
    return ["⊗".join(g.labels[a] for a in tensor_tuple(i, g.dim, n)) for i in range(g.dim ** n)]


# ---------------------------------------------------------------------------
# verbs


def cmd_validate(args) -> int:
    for src in args.sources:
        e = _resolve(src, args)
        g = e.algebra
        kind = "Lie" if is_lie(g) else "Leibniz (non-Lie)"
        extra = []
        if e.ideals:
            extra.append(f"ideals: {', '.join(e.ideals)}")
        if e.extension is not None:
            split = "split" if e.extension.splitting is not None else "no splitting given"
            extra.append(f"extension by {e.extension.ideal.name} ({split})")
        tail = f"; {'; '.join(extra)}" if extra else ""
        print(f"ok {e.name}: dim {g.dim} over {g.field}, {kind}{tail}")
    return EXIT_OK


def cmd_invariants(args) -> int:
    rows = []
    for e in _entries(args.sources, args):
        inv = invariants(e, args.max_degree)
        rows.append({"entry": e.name, "field": field_string(e.field), "dim": e.algebra.dim,
                     "lie": is_lie(e.algebra), "perfect": is_perfect(e.algebra), "invariants": inv})
    if args.format == "json":
        _write(json.dumps(rows, indent=2, ensure_ascii=False) + "\n", args)
        return EXIT_OK
    keys = sorted({k for r in rows for k in r["invariants"]}, key=_inv_order)
    head = ["entry", "field", "dim"] + keys
    lines = ["| " + " | ".join(head) + " |", "|" + "|".join("---" for _ in head) + "|"]
    for r in rows:
        cells = [r["entry"], r["field"], str(r["dim"])] + [str(r["invariants"].get(k, "-")) for k in keys]
        lines.append("| " + " | ".join(cells) + " |")
    _write("\n".join(lines) + "\n", args)
    return EXIT_OK


_PRODUCT_ORDER = ["tensor_square", "exterior_square", "gamma_abelianization", "lie_exterior_square"]


def _inv_order(key: str):
    if key.startswith("HL"):
        return (0, int(key[2:]))
    return (1, _PRODUCT_ORDER.index(key))


def cmd_homology(args) -> int:
    e = _resolve(args.source, args)
    g = e.algebra
    top = args.degree if args.degree is not None else args.max_degree
    out = []
    for n in range(0, top + 1):
        h = leibniz_homology(g, n, max_degree=max(top, args.max_degree))
        out.append(f"HL_{n}: dim {h.dim}")
        if args.cycles and n >= 1:
            labels = _tensor_labels(g, n)
            for r in h.representatives():
                out.append(f"  {_fmt_vec(r, labels)}")
    _write("\n".join(out) + "\n", args)
    return EXIT_OK


def _product_summary(P, g, label: str) -> str:
    alg = P.algebra
    lines = [f"{label} of {g.name or 'g'}: dim {P.dim}"]
    lines.append("basis: " + ", ".join(alg.labels))
    br = alg.nonzero_brackets()
    lines.append(f"nonzero brackets: {len(br)}")
    for (i, j), v in sorted(br.items()):
        lines.append(f"  [{alg.labels[i]}, {alg.labels[j]}] = {_fmt_vec(v, alg.labels)}")
    return "\n".join(lines) + "\n"


def cmd_tensor_square(args) -> int:
    e = _resolve(args.source, args)
    T = square_products(e.algebra).tensor
    if args.json:
        _write(dumps({**serialize_algebra(T.algebra), "name": f"{e.name}-tensor-square"}), args)
    else:
        _write(_product_summary(T, e.algebra, "non-abelian tensor square"), args)
    return EXIT_OK


def cmd_exterior_square(args) -> int:
    e = _resolve(args.source, args)
    E = square_products(e.algebra).exterior
    if args.json:
        _write(dumps({**serialize_algebra(E.algebra), "name": f"{e.name}-exterior-square"}), args)
        return EXIT_OK
    text = _product_summary(E, e.algebra, "non-abelian exterior square")
    text += f"kernel of the commutator map to g: dim {kernel(theta_square(e.algebra)).dim}\n"
    _write(text, args)
    return EXIT_OK


def cmd_gamma(args) -> int:
    if args.rank is not None:
        F = _field(args) or field_from_string("Q")
        n, what = args.rank, f"Γ({F}^{args.rank})"
    else:
        if not args.source:
            raise InputError("give an algebra (file or catalog name) or --rank")
        e = _resolve(args.source, args)
        F = e.field
        n, what = abelianization(e.algebra)[0].dim, f"Γ of the abelianization of {e.name}"
    G = gamma(F, n)
    ok = G.witness_ok()
    print(f"{what}: dim {G.dim} (expected n(n+1)/2 = {n * (n + 1) // 2} for n = {n})")
    print(f"presentation: {len(G.family)} generators, {len(G.relation_vectors)} relation instances")
    print(f"witness basis γ(e_i), γ(e_i+e_j) - γ(e_i) - γ(e_j) independent: {'yes' if ok else 'NO'}")
    return EXIT_OK if ok and G.dim == n * (n + 1) // 2 else EXIT_FAIL


def _run(args):
    try:
        checks = parse_check_list(args.suite)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    results = run_suite(_entries(args.files, args), checks, args.max_degree, args.jobs)
    return checks, results


def cmd_check(args) -> int:
    checks, results = _run(args)
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.verdict else 'FAIL'} {r.name} "
                     f"({', '.join(rep.name for rep in r.reports) or 'no applicable checks'})")
        for f in r.failures():
            lines.append(f"    {f}")
    passed = sum(r.verdict for r in results)
    lines.append(f"{passed}/{len(results)} entries pass")
    print("\n".join(lines))
    if args.out:
        Path(args.out).write_text(emit_report(results, "json", checks, args.max_degree), encoding="utf-8")
    return EXIT_OK if suite_verdict(results) else EXIT_FAIL


def cmd_report(args) -> int:
    checks, results = _run(args)
    _write(emit_report(results, args.format, checks, args.max_degree), args)
    return EXIT_OK if suite_verdict(results) else EXIT_FAIL


def cmd_list(args) -> int:
    for e in load_catalog(_field(args)):
        ext = " [extension]" if e.extension is not None else ""
        print(f"{e.name:28s} dim {e.algebra.dim} over {e.field}{ext}  {e.description}")
    print("\nchecks: " + ", ".join(ALL_CHECKS))
    for name, spec in CHECKS.items():
        print(f"  {name:18s} {spec.summary}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=argparse.SUPPRESS,
                        help="reinterpret coefficients over this field (Q, F2, GF(5), ...)")
    common.add_argument("--max-degree", type=int, default=argparse.SUPPRESS,
                        help=f"highest homological degree computed (default {DEFAULT_MAX_DEGREE})")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for batch runs")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output to this path instead of stdout")

    p = argparse.ArgumentParser(prog="leibniz-homology", parents=[common],
                                description="Leibniz homology and non-abelian exterior products in exact arithmetic.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("validate", parents=[common], help="parse algebra files and check the Leibniz identity")
    s.add_argument("sources", nargs="+", help="algebra files or catalog entry names")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("invariants", parents=[common], help="table of HL_n and product dimensions")
    s.add_argument("sources", nargs="*", help="algebra files or catalog names (default: whole catalog)")
    s.add_argument("--entry", action="append", help="restrict to catalog entries")
    s.add_argument("--format", choices=["md", "json"], default="md")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("homology", parents=[common], help="Leibniz homology HL_0 .. HL_n")
    s.add_argument("source")
    s.add_argument("--degree", type=int, help="top degree (default: --max-degree)")
    s.add_argument("--cycles", action="store_true", help="print representative cycles")
    s.set_defaults(func=cmd_homology)

    for verb, fn, what in (("tensor-square", cmd_tensor_square, "g⋆g"),
                           ("exterior-square", cmd_exterior_square, "g∧g")):
        s = sub.add_parser(verb, parents=[common], help=f"the non-abelian square {what}")
        s.add_argument("source")
        s.add_argument("--json", action="store_true", help="emit the product as an algebra file")
        s.set_defaults(func=fn)

    s = sub.add_parser("gamma", parents=[common], help="Whitehead's quadratic functor Γ")
    s.add_argument("source", nargs="?", help="algebra whose abelianization is used")
    s.add_argument("--rank", type=int, help="compute Γ(K^n) directly")
    s.set_defaults(func=cmd_gamma)

    for verb, fn in (("check", cmd_check), ("report", cmd_report)):
        s = sub.add_parser(verb, parents=[common],
                           help="run verifiers" if verb == "check" else "run verifiers and emit a report")
        s.add_argument("files", nargs="*", help="algebra files (default: built-in catalog)")
        s.add_argument("--suite", help=f"comma-separated checks or 'all' ({', '.join(ALL_CHECKS)})")
        s.add_argument("--entry", action="append", help="restrict to these entry names (repeatable)")
        if verb == "report":
            s.add_argument("--format", choices=["json", "md"], default="json")
        s.set_defaults(func=fn)

    s = sub.add_parser("list", parents=[common], help="list catalog entries and checks")
    s.set_defaults(func=cmd_list)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("field", None), ("max_degree", DEFAULT_MAX_DEGREE), ("jobs", 1), ("out", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.max_degree < 0 or args.jobs < 1:
        print("error: --max-degree must be >= 0 and --jobs >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, CatalogError, CapacityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
