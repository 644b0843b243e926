"""JSON, CSV and plain-text encodings of reports and certificates.

JSON and CSV are stable formats: arrays are ordered by ``(n, cohdeg,
weight)`` and weight-keyed objects use decimal-string keys inserted in
increasing numeric order.  The text table is for people only.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from .conjugate import (
    ConjugateReport,
    InfiniteGenerationCertificate,
    License,
    SplittingLicense,
    W_COEFFICIENT_NOTE,
)
from .komplex import CohomologyTable


def table_to_dict(t: CohomologyTable) -> dict[str, Any]:
    return {
        "entries": [{"cohdeg": i, "weight": w, "dim": v} for (i, w), v in sorted(t.dims.items())],
        "w_range": [t.w_lo, t.w_hi],
        "complete": {str(i): c for i, c in sorted(t.complete.items())},
    }


def table_from_dict(d: dict[str, Any]) -> CohomologyTable:
    lo, hi = d["w_range"]
    return CohomologyTable(
        {(e["cohdeg"], e["weight"]): e["dim"] for e in d["entries"]},
        lo,
        hi,
        {int(i): c for i, c in d["complete"].items()},
    )


def report_to_dict(r: ConjugateReport) -> dict[str, Any]:
    return {
        "prime": r.prime,
        "vars": list(r.names),
        "poly": r.poly,
        "degree": r.degree,
        "embdim": r.embdim,
        "krull_dim": r.krull_dim,
        "license": r.license.kind.value,
        "pieces": [{"n": n, **table_to_dict(t)} for n, t in sorted(r.pieces.items())],
        "totals": [
            {
                "cohdeg": i,
                "weights": {str(w): v for w, v in sorted(r.totals[i].items())},
                "cumulative": list(r.cumulative[i]),
            }
            for i in sorted(r.totals)
        ],
        "flags": {
            "n_max": r.n_max,
            "w_max": r.w_max,
            "conditional": r.conditional,
            "totals_label": "conditional" if r.conditional else "unconditional",
            "complete": r.complete,
            "incomplete_pieces": r.incomplete_pieces(),
            "below_splitting_threshold": list(r.below_threshold),
            "license_witness": dict(r.license.witness),
            "note": W_COEFFICIENT_NOTE,
        },
    }


def report_from_dict(d: dict[str, Any]) -> ConjugateReport:
    flags = d["flags"]
    return ConjugateReport(
        prime=d["prime"],
        names=tuple(d["vars"]),
        poly=d["poly"],
        degree=d["degree"],
        embdim=d["embdim"],
        krull_dim=d["krull_dim"],
        n_max=flags["n_max"],
        w_max=flags["w_max"],
        license=SplittingLicense(License(d["license"]), flags["license_witness"]),
        pieces={p["n"]: table_from_dict(p) for p in d["pieces"]},
        totals={t["cohdeg"]: {int(w): v for w, v in t["weights"].items()} for t in d["totals"]},
        cumulative={t["cohdeg"]: tuple(t["cumulative"]) for t in d["totals"]},
        below_threshold=tuple(flags["below_splitting_threshold"]),
    )


def report_to_json(r: ConjugateReport) -> str:
    return json.dumps(report_to_dict(r), indent=2) + "\n"


def report_from_json(text: str) -> ConjugateReport:
    return report_from_dict(json.loads(text))


CSV_HEADER = ["section", "n", "cohdeg", "weight", "dim"]


def report_to_csv(r: ConjugateReport) -> str:
    """Rows: ``piece`` entries, ``total`` entries and ``cumulative`` running sums."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for n, t in sorted(r.pieces.items()):
        for (i, wt), v in sorted(t.dims.items()):
            w.writerow(["piece", n, i, wt, v])
    for i in sorted(r.totals):
        for wt, v in sorted(r.totals[i].items()):
            w.writerow(["total", "", i, wt, v])
    for i in sorted(r.cumulative):
        for n, v in enumerate(r.cumulative[i]):
            w.writerow(["cumulative", n, i, "", v])
    return buf.getvalue()


def report_to_table(r: ConjugateReport) -> str:
    lines = [
        f"f = {r.poly} over F_{r.prime} in {', '.join(r.names)}",
        f"degree {r.degree}, embedding dimension {r.embdim}, Krull dimension {r.krull_dim}",
        f"splitting license: {r.license.kind.value}"
        + (" (totals conditional)" if r.conditional else ""),
        f"pieces n <= {r.n_max}, weights <= {r.w_max}",
        "",
        "graded pieces  H^i(wedge^n L[-n]):",
    ]
    for n, t in sorted(r.pieces.items()):
        mark = "" if t.is_complete() else "  (truncated at w_max)"
        if n in r.below_threshold:
            mark += "  (below splitting threshold)"
        cells = ", ".join(
            f"H^{i}: " + " ".join(f"{w}:{v}" for w, v in sorted(t.in_degree(i).items()))
            for i in t.degrees()
        )
        lines.append(f"  n={n:<3} {cells or '0'}{mark}")
    lines.append("")
    lines.append("cumulative dim H^i_crys (weights <= w_max):")
    for i in sorted(r.cumulative):
        lines.append(f"  i={i}: " + " ".join(str(v) for v in r.cumulative[i]))
    return "\n".join(lines) + "\n"


def certificate_to_dict(c: InfiniteGenerationCertificate) -> dict[str, Any]:
    return {
        "prime": c.prime,
        "poly": c.poly,
        "license": c.license.kind.value,
        "license_witness": dict(c.license.witness),
        "degrees": list(c.degrees),
        "located_i": c.located_i,
        "pieces": {"start_n": c.start_n, "n_max": c.n_max},
        "increments": [
            {"cohdeg": deg, "per_n": list(c.increments[deg])} for deg in c.degrees
        ],
        "strictly_increasing": {str(deg): c.strictly_increasing[deg] for deg in c.degrees},
        "expected_increment": c.expected_increment,
        "increments_match_expected": c.increments_match_expected,
        "conditional": c.conditional,
        "thresholds": dict(c.thresholds),
        "note": c.note,
    }


def certificate_to_json(c: InfiniteGenerationCertificate) -> str:
    return json.dumps(certificate_to_dict(c), indent=2) + "\n"


def certificate_to_csv(c: InfiniteGenerationCertificate) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["cohdeg", "n", "increment"])
    for deg in c.degrees:
        for k, v in enumerate(c.increments[deg]):
            w.writerow([deg, c.start_n + k, v])
    return buf.getvalue()


def certificate_to_table(c: InfiniteGenerationCertificate) -> str:
    lines = [
        f"f = {c.poly} over F_{c.prime}; license {c.license.kind.value}"
        + (" (conditional)" if c.conditional else ""),
        f"growth degrees: {c.degrees[0]} and {c.degrees[1]} (i = {c.located_i})",
    ]
    for deg in c.degrees:
        inc = " ".join(str(v) for v in c.increments[deg])
        verdict = "strictly increasing" if c.strictly_increasing[deg] else "NOT strictly increasing"
        lines.append(f"  H^{deg}: increments for n = {c.start_n}..{c.n_max}: {inc}  [{verdict}]")
    if c.expected_increment is not None:
        lines.append(
            f"expected increment {c.expected_increment}: "
            + ("matches" if c.increments_match_expected else "DOES NOT match")
        )
    lines.append(c.note)
    return "\n".join(lines) + "\n"


__all__ = [
    "CSV_HEADER",
    "certificate_to_csv",
    "certificate_to_dict",
    "certificate_to_json",
    "certificate_to_table",
    "report_from_dict",
    "report_from_json",
    "report_to_csv",
    "report_to_dict",
    "report_to_json",
    "report_to_table",
    "table_from_dict",
    "table_to_dict",
]
