#!/usr/bin/env python3
"""Run every audit suite and write the claim records to a JSONL file.

Usage:  python scripts/run_audits.py [output.jsonl]
"""

import sys
import time
from pathlib import Path

from sphersub import catalog, classifier
from sphersub.report import render_jsonl


SUITES = (
    ("eq4", lambda: classifier.audit_eq4(max_rank=8, stable_rank=30)),
    ("grid", classifier.audit_grid),
    ("tensor", lambda: classifier.tensor_case_audit(sweep=40)),
    ("sosp2", lambda: classifier.sosp2_identity_check(200)),
    ("spin7", classifier.spin7_audit),
    ("g2", classifier.g2_audit),
    ("tables.consistency", catalog.consistency_audit),
    ("tables.roundtrip", catalog.roundtrip_audit),
    ("tables.negative", catalog.negative_probe_audit),
)


def main() -> int:
    out_path = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("audit_records.jsonl")
    chunks = []
    all_ok = True
    for name, runner in SUITES:
        started = time.monotonic()
        report = runner()
        elapsed = time.monotonic() - started
        status = "PASS" if report.passed else "FAIL"
        print(f"{name:<20} {status}  {len(report.claims):4d} claims  {elapsed:6.2f}s")
        chunks.append(render_jsonl(report))
        all_ok = all_ok and report.passed
    out_path.write_text("".join(chunks))
    print(f"wrote {out_path}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
