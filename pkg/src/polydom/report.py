"""
Machine-readable and human-readable rendering of results.

``to_document`` turns any result object into a plain JSON-compatible dict
(exact rationals become strings, polynomials their canonical text), and
``emit_report`` serialises it deterministically with sorted keys.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from importlib import resources
from typing import Optional

from .domination import DominationReport, LscReport
from .hormander import Certificate, Outcome, ScalarVerdict, WitnessCurve
from .matpoly import MatrixPoly, PseudoinverseRep
from .poly import NEG_INF, ScalarPoly
from .probe import ProbeReport

SCHEMA_VERSION = "1.0"


def load_schema() -> dict:
    return json.loads(resources.files("polydom").joinpath("report_schema.json").read_text())


def _num(x):
    if x is NEG_INF:
        return "-inf"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def certificate_doc(cert: Optional[Certificate]):
    if cert is None:
        return None
    return {"kind": cert.kind, "heuristic": cert.heuristic,
            "params": {k: str(v) for k, v in sorted(cert.params.items())}}


def witness_doc(w: Optional[WitnessCurve]):
    if w is None:
        return None
    return {
        "weights": list(w.weights),
        "coeffs": [str(c) for c in w.coeffs],
        "t_degrees": [_num(d) for d in w.t_degrees],
        "direction": [float(x) for x in w.direction()],
        "curve": w.describe(),
    }


def verdict_doc(v: Optional[ScalarVerdict], entry: tuple):
    if v is None:
        return {"entry": list(entry), "outcome": "not_examined"}
    return {
        "entry": list(entry),
        "outcome": v.outcome.value,
        "certificate": certificate_doc(v.certificate),
        "witness": witness_doc(v.witness),
        "note": v.confidence_note,
        "ratio_estimate": _num(v.ratio_estimate),
    }


def _domination_doc(rep: DominationReport) -> dict:
    entries = [
        verdict_doc(v, (l + 1, j + 1))
        for l, row in enumerate(rep.entry_verdicts) for j, v in enumerate(row)
    ]
    certificate = None
    if rep.overall is Outcome.DOMINATES:
        certificate = {
            "kind": "entrywise",
            "heuristic": any(v.certificate.heuristic for row in rep.entry_verdicts for v in row),
            "entries": [
                dict(certificate_doc(v.certificate), entry=[l + 1, j + 1])
                for l, row in enumerate(rep.entry_verdicts) for j, v in enumerate(row)
            ],
        }
    doc = {
        "verdict": rep.overall.value,
        "mode": rep.mode.value,
        "kernel_inclusion": rep.kernel_inclusion,
        "failing_entry": list(rep.failing_entry) if rep.failing_entry else None,
        "witness": witness_doc(rep.witness),
        "certificate": certificate,
        "reason": rep.notes if rep.overall is Outcome.UNKNOWN else None,
        "notes": rep.notes,
        "entries": entries,
    }
    if rep.reduced is not None:
        doc["delta"] = str(rep.reduced.delta)
        doc["reduced_entries"] = str(rep.reduced.entries)
        doc["representation"] = rep.reduced.source_rep.method
    return doc


def _probe_doc(rep: ProbeReport) -> dict:
    return {
        "label": rep.label,
        "ratios": [_num(r) for r in rep.ratios],
        "max_ratio": _num(rep.max_ratio),
        "trend": None if rep.trend is None else [_num(r) for r in rep.trend],
        "degenerate_trials": rep.degenerate,
        "grid": rep.grid,
    }


def _lsc_doc(rep: LscReport) -> dict:
    verdict = {"satisfied": Outcome.DOMINATES, "fails": Outcome.NOT_DOMINATES,
               "unknown": Outcome.UNKNOWN}[rep.status].value
    alpha = rep.failing_alpha
    return {
        "verdict": verdict,
        "status": rep.status,
        "failing_alpha": list(alpha) if alpha is not None else None,
        "reason": "some derivative pair is undecided" if rep.status == "unknown" else None,
        "table": [{"alpha": list(a), **_domination_doc(r)} for a, r in rep.table],
    }


def _pinv_doc(rep: PseudoinverseRep) -> dict:
    return {"A": str(rep.A), "delta": str(rep.delta), "rank": rep.rank, "method": rep.method}


def to_document(result) -> dict:
    if isinstance(result, DominationReport):
        return _domination_doc(result)
    if isinstance(result, ProbeReport):
        return _probe_doc(result)
    if isinstance(result, LscReport):
        return _lsc_doc(result)
    if isinstance(result, PseudoinverseRep):
        return _pinv_doc(result)
    if isinstance(result, ScalarVerdict):
        return verdict_doc(result, (1, 1))
    if isinstance(result, (ScalarPoly, MatrixPoly)):
        return {"value": str(result)}
    raise TypeError(f"cannot serialise {type(result).__name__}")


def envelope(result, command: str, inputs: dict, seed: Optional[int] = None,
             timings_ms: Optional[dict] = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": dict(inputs),
        "seed": seed,
        "timings_ms": timings_ms or {},
        "result": to_document(result),
    }


def _text_lines(doc: dict, indent: str = "") -> list:
    res = doc["result"] if "result" in doc else doc
    lines = []
    if "verdict" in res:
        lines.append(f"{indent}verdict: {res['verdict']}")
    if "mode" in res:
        lines.append(f"{indent}mode: {res['mode']}")
    if "kernel_inclusion" in res:
        lines.append(f"{indent}kernel inclusion: {'yes' if res['kernel_inclusion'] else 'no'}")
    if res.get("failing_entry"):
        lines.append(f"{indent}failing entry: ({res['failing_entry'][0]},{res['failing_entry'][1]})")
    if res.get("failing_alpha"):
        lines.append(f"{indent}failing alpha: {tuple(res['failing_alpha'])}")
    if res.get("witness"):
        lines.append(f"{indent}witness curve: {res['witness']['curve']}")
    cert = res.get("certificate")
    if cert:
        names = sorted({e["kind"] for e in cert.get("entries", [cert])})
        lines.append(f"{indent}certificates: {', '.join(names)}"
                     + (" (heuristic)" if cert.get("heuristic") else ""))
    if res.get("reason"):
        lines.append(f"{indent}reason: {res['reason']}")
    if "delta" in res:
        lines.append(f"{indent}Delta = {res['delta']}")
    if "A" in res:
        lines.append(f"{indent}A = {res['A']}")
        lines.append(f"{indent}rank = {res['rank']}")
    if "value" in res:
        lines.append(f"{indent}{res['value']}")
    if "ratios" in res:
        lines.append(f"{indent}{res['label']} ratios: " + ", ".join(
            "degenerate" if r is None else f"{r:.6g}" for r in (res["trend"] or res["ratios"])))
        if res["max_ratio"] is not None:
            lines.append(f"{indent}max ratio: {res['max_ratio']:.6g}")
        lines.append(f"{indent}degenerate trials: {res['degenerate_trials']}")
    for row in res.get("table", []):
        lines.append(f"{indent}alpha = {tuple(row['alpha'])}: {row['verdict']}")
    return lines


def emit_report(result, fmt: str = "json", *, command: str = "", inputs: Optional[dict] = None,
                seed: Optional[int] = None, timings_ms: Optional[dict] = None) -> bytes:
    """Serialise a result as JSON (sorted keys) or plain text."""
    doc = envelope(result, command, inputs or {}, seed, timings_ms)
    if fmt == "json":
        return (json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n").encode()
    if fmt == "text":
        return ("\n".join(_text_lines(doc)) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")
