"""Structured audit records with canonical (byte-stable) serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1

OK = "ok"
FAIL = "fail"
INFO = "info"


@dataclass(frozen=True)
class Claim:
    claim_id: str
    anchor: str
    values: dict
    verdict: str  # ok | fail | info

    def record(self) -> dict:
        return {
            "v": SCHEMA_VERSION,
            "claim_id": self.claim_id,
            "anchor": self.anchor,
            "values": self.values,
            "verdict": self.verdict,
        }


@dataclass
class AuditReport:
    suite: str
    claims: list[Claim] = field(default_factory=list)

    def add(self, claim_id: str, anchor: str, values: dict, ok: bool | None = True):
        verdict = INFO if ok is None else (OK if ok else FAIL)
        self.claims.append(Claim(claim_id, anchor, values, verdict))

    @property
    def passed(self) -> bool:
        return all(c.verdict != FAIL for c in self.claims)

    def first_failure(self) -> Claim | None:
        for c in self.sorted_claims():
            if c.verdict == FAIL:
                return c
        return None

    def sorted_claims(self) -> list[Claim]:
        return sorted(self.claims, key=lambda c: c.claim_id)


def canonical_json(obj) -> str:
    """Deterministic single-line JSON; reserializing a parse is a fixed point."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def render_jsonl(report: AuditReport) -> str:
    lines = [canonical_json(c.record()) for c in report.sorted_claims()]
    summary = {
        "v": SCHEMA_VERSION,
        "suite": report.suite,
        "claims": len(report.claims),
        "failures": sum(1 for c in report.claims if c.verdict == FAIL),
        "passed": report.passed,
    }
    lines.append(canonical_json(summary))
    return "\n".join(lines) + "\n"


def render_text(report: AuditReport) -> str:
    lines = []
    for c in report.sorted_claims():
        detail = " ".join(f"{k}={c.values[k]}" for k in sorted(c.values))
        lines.append(f"[{c.verdict:>4}] {c.claim_id}  ({c.anchor})  {detail}")
    status = "PASS" if report.passed else "FAIL"
    lines.append(f"suite {report.suite}: {status} ({len(report.claims)} claims)")
    fail = report.first_failure()
    if fail is not None:
        lines.append(f"FIRST DIVERGENCE: {fail.claim_id} {fail.values}")
    return "\n".join(lines) + "\n"
