"""Canonical report serialization.

Every verification campaign reduces to the same shape: an ambient, a list
of named checks with pass flags and reproduction details, and optional
counts. Serialization is canonical (sorted keys, fixed separators, no
timestamps or timings), so rerunning a campaign with the same seed yields
byte-identical files; wall-clock measurements belong on stderr, never in
the report body.
"""

from __future__ import annotations

import hashlib
import json

SCHEMA_REPORT = "projlat-report/1"


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, minimal separators, one newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def sha256_of(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def report_status(rep) -> str:
    """pass | fail | experiment; experiments never count as failures."""
    if "experiment" in getattr(rep, "name", ""):
        return "experiment"
    return "pass" if rep.passed else "fail"


def report_to_jsonable(rep, name: str | None = None) -> dict:
    """Uniform encoding for every report dataclass in the package."""
    n, field_spec = rep.ambient
    out = {
        "schema": SCHEMA_REPORT,
        "name": name or getattr(rep, "name", "report"),
        "ambient": {"n": n, "field": field_spec},
        "status": report_status(rep),
        "checks": [
            {"name": cname, "ok": ok, "detail": detail}
            for cname, ok, detail in rep.checks
        ],
    }
    if hasattr(rep, "size"):
        out["size"] = rep.size
    counts = getattr(rep, "counts", None)
    if counts:
        out["counts"] = counts
    return out


def render_text(doc: dict) -> str:
    """Human-readable rendering of a report document."""
    lines = [
        f"{doc['name']}  (n={doc['ambient']['n']}, field={doc['ambient']['field']})"
        f"  -> {doc['status'].upper()}"
    ]
    for chk in doc.get("checks", []):
        mark = "ok " if chk["ok"] else "FAIL"
        detail = f"  {chk['detail']}" if chk["detail"] else ""
        lines.append(f"  [{mark}] {chk['name']}{detail}")
    counts = doc.get("counts")
    if counts:
        for k in sorted(counts):
            lines.append(f"  {k} = {counts[k]}")
    return "\n".join(lines) + "\n"
