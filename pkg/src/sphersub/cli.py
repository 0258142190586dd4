"""Command-line front end.

Verbs:
    check     flag-dimension bound for a candidate pair
    classify  classification lookup with citations
    table     dump the shipped tables (optionally gated by a characteristic)
    audit     re-derivation suites; exit 0 iff every claim reproduces
    filter    orbit-size filter for the fundamental weights of a simple type

All output is deterministic; ``--format jsonl`` emits one canonical JSON
record per line.
"""

from __future__ import annotations

import argparse
import sys

from . import catalog, classifier
from .groups import ParseError, parse_descriptor
from .report import AuditReport, canonical_json, render_jsonl, render_text
from .rootsys import SimpleType, dim_group, validate
from .weights import Characteristic

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2
EXIT_OUT_OF_SCOPE = 3

AUDIT_SUITES = ("eq4", "grid", "tensor", "sosp2", "spin7", "g2", "tables", "all")
TABLE_NAMES = ("classical", "exceptional", "maximal-gcr", "non-gcr")


def _char(value: int) -> Characteristic:
    try:
        return Characteristic(value)
    except ValueError as exc:
        raise SystemExit(_error(str(exc)))


def _error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def _parse(text: str):
    try:
        return parse_descriptor(text)
    except ParseError as exc:
        raise SystemExit(_error(str(exc)))


def cmd_check(args) -> int:
    g = _parse(args.G)
    h = _parse(args.H)
    _char(args.p)  # validated for interface symmetry; the bound is char-free
    res = classifier.check_eq2(g, h)
    status = "pass" if res.passes else "fail"
    if args.format == "jsonl":
        print(
            canonical_json(
                {
                    "v": 1,
                    "claim_id": "check.eq2",
                    "anchor": "flag-bound",
                    "values": {
                        "G": str(g),
                        "H": str(h),
                        "dim_h": res.dim_h,
                        "dim_flag_g": res.dim_flag_g,
                    },
                    "verdict": "ok" if res.passes else "fail",
                }
            )
        )
    else:
        print(f"G = {g}   dim G/B = {res.dim_flag_g}")
        print(f"H = {h}   dim H = {res.dim_h}")
        rel = ">=" if res.passes else "<"
        print(f"flag bound: {status.upper()} ({res.dim_h} {rel} {res.dim_flag_g})")
    return EXIT_OK if res.passes else EXIT_NEGATIVE


def cmd_classify(args) -> int:
    g = _parse(args.G)
    h = _parse(args.H)
    p = _char(args.p)
    verdict = catalog.query(h, g, p)
    if args.format == "jsonl":
        record = {
            "v": 1,
            "claim_id": "classify",
            "anchor": "classification-tables",
            "values": {
                "G": verdict.g_text,
                "H": verdict.h_text,
                "p": verdict.p,
                "status": verdict.status,
                "citations": list(verdict.citations),
                "isogeny_trace": list(verdict.isogeny_trace),
                "classes": [m.class_count for m in verdict.matches],
                "note": verdict.note,
            },
            "verdict": "ok",
        }
        print(canonical_json(record))
    else:
        print(f"query: H = {verdict.h_text} < G = {verdict.g_text} at p = {verdict.p}")
        print(f"status: {verdict.status}")
        for m in verdict.matches:
            line = f"cite: {m.citation}"
            if m.class_count != 1:
                line += f"  [{m.class_count} conjugacy classes]"
            if m.notes:
                line += f"  ({'; '.join(m.notes)})"
            print(line)
        if not verdict.matches and verdict.citations:
            for c in verdict.citations:
                print(f"cite: {c}")
        for t in verdict.isogeny_trace:
            print(f"isogeny: {t}")
        if verdict.note:
            print(f"note: {verdict.note}")
    if verdict.status == "Spherical":
        return EXIT_OK
    if verdict.status == "NotListed":
        return EXIT_NEGATIVE
    return EXIT_OUT_OF_SCOPE


def _gated(entries, p: Characteristic | None):
    if p is None:
        return list(entries)
    return [e for e in entries if e.char.matches(p)]


def cmd_table(args) -> int:
    p = None if args.p is None else _char(args.p)
    rows: list[tuple[str, dict]] = []
    if args.which in ("classical", "exceptional"):
        for e in _gated(catalog.entries_in(args.which), p):
            rows.append(
                (
                    f"{e.id} | {e.label}",
                    {
                        "id": e.id,
                        "H": str(e.h_pattern),
                        "G": str(e.g_pattern),
                        "constraints": [str(c) for c in e.constraints],
                        "char": str(e.char),
                        "notes": [f"{n.key}={n.value}" if n.value else n.key for n in e.notes],
                        "pair": e.pair,
                    },
                )
            )
    elif args.which == "maximal-gcr":
        for e in _gated(
            catalog.entries_in("maxgcr-cl") + catalog.entries_in("maxgcr-ex"), p
        ):
            rows.append(
                (
                    f"{e.id} | {e.label}",
                    {
                        "id": e.id,
                        "H": str(e.h_pattern),
                        "G": str(e.g_pattern),
                        "constraints": [str(c) for c in e.constraints],
                        "char": str(e.char),
                    },
                )
            )
    else:  # non-gcr
        for case in catalog.non_gcr_cases():
            e = case.entry
            if p is not None and not e.char.matches(p):
                continue
            prov = case.degeneration
            detail = "; ".join(f"{n.key}={n.value}" for n in prov.notes)
            rows.append(
                (
                    f"{e.id} | {e.label} [{case.variant}]  degenerates to {prov.label} ({detail})",
                    {
                        "id": e.id,
                        "H": str(e.h_pattern),
                        "G": str(e.g_pattern),
                        "variant": case.variant,
                        "char": str(e.char),
                        "degeneration": prov.id,
                        "degeneration_data": detail,
                    },
                )
            )
    rows.sort(key=lambda r: r[0])
    for text, record in rows:
        if args.format == "jsonl":
            print(
                canonical_json(
                    {"v": 1, "claim_id": f"table.{record['id']}", "anchor": "tables",
                     "values": record, "verdict": "ok"}
                )
            )
        else:
            print(text)
    return EXIT_OK


def _run_suite(name: str) -> list[AuditReport]:
    if name == "eq4":
        return [classifier.audit_eq4()]
    if name == "grid":
        return [classifier.audit_grid()]
    if name == "tensor":
        return [classifier.tensor_case_audit()]
    if name == "sosp2":
        return [classifier.sosp2_identity_check(200)]
    if name == "spin7":
        return [classifier.spin7_audit()]
    if name == "g2":
        return [classifier.g2_audit()]
    if name == "tables":
        return [
            catalog.consistency_audit(),
            catalog.roundtrip_audit(),
            catalog.negative_probe_audit(),
        ]
    reports = []
    for suite in AUDIT_SUITES[:-1]:
        reports.extend(_run_suite(suite))
    return reports


def cmd_audit(args) -> int:
    reports = _run_suite(args.suite)
    ok = True
    for rep in reports:
        if args.format == "jsonl":
            sys.stdout.write(render_jsonl(rep))
        else:
            sys.stdout.write(render_text(rep))
        ok = ok and rep.passed
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_filter(args) -> int:
    try:
        t = validate(SimpleType.parse(args.type))
    except ValueError as exc:
        return _error(str(exc))
    rows = classifier.lemma6_filter(t)
    cap = classifier.orbit_max(dim_group(t))
    if args.format == "jsonl":
        print(
            canonical_json(
                {
                    "v": 1,
                    "claim_id": f"filter.{t}",
                    "anchor": "orbit-filter",
                    "values": {
                        "type": str(t),
                        "dim": dim_group(t),
                        "orbit_cap": cap,
                        "weights": [{"index": i, "orbit": s} for i, s in rows],
                    },
                    "verdict": "ok",
                }
            )
        )
    else:
        listed = ", ".join(f"w{i} (orbit {s})" for i, s in rows) or "none"
        print(f"{t}: dim = {dim_group(t)}, orbit cap = {cap}")
        print(f"admissible fundamental weights: {listed}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphersub",
        description="spherical-subgroup classification tools (exact arithmetic)",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "jsonl"), default="text")

    p = sub.add_parser("check", help="flag-dimension bound dim H >= dim G/B")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("--p", type=int, default=0, help="characteristic (default 0)")
    add_format(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="look the pair up in the classification tables")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("--p", type=int, default=0, help="characteristic (default 0)")
    add_format(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("table", help="dump a shipped table")
    p.add_argument("--which", choices=TABLE_NAMES, required=True)
    p.add_argument("--p", type=int, default=None, help="gate rows by characteristic")
    add_format(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("audit", help="run a re-derivation suite")
    p.add_argument("--suite", choices=AUDIT_SUITES, required=True)
    add_format(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("filter", help="orbit-size filter for fundamental weights")
    p.add_argument("type", help="simple type label, e.g. B3")
    add_format(p)
    p.set_defaults(func=cmd_filter)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
