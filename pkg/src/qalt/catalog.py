"""Batch certification of knot tables."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .conway import ParseError, TableRow, designated_slot, parse_montesinos, read_table
from .determinant import DEFAULT_ORACLE_BUDGET
from .qacert import (DEFAULT_DEPTH, QACertificate, Unknown, certify, certify_designated,
                     certify_family, match_family, verify_certificate)

MODES = ("family", "designated", "generic")


@dataclass
class CatalogRow:
    knot: str
    notation: str
    outcome: str                        # "QA", "Unknown" or "Error"
    designated: Optional[int] = None
    family: Optional[str] = None
    det: Optional[int] = None
    reason: str = ""
    certificate: Optional[dict] = None
    certificate_path: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "knot": self.knot,
            "notation": self.notation,
            "outcome": self.outcome,
            "family": self.family,
            "det": self.det,
            "reason": self.reason,
            "certificate": self.certificate_path,
        }


@dataclass
class BatchReport:
    mode: str
    rows: list[CatalogRow]

    @property
    def summary(self) -> dict:
        counts = {"qa": 0, "unknown": 0, "error": 0}
        for row in self.rows:
            counts[row.outcome.lower()] += 1
        return counts

    @property
    def all_qa(self) -> bool:
        return all(row.outcome == "QA" for row in self.rows)

    @property
    def exit_code(self) -> int:
        return 0 if self.all_qa else 1

    def to_json(self) -> dict:
        return {"rows": [r.to_json() for r in self.rows], "summary": self.summary}

    def text(self) -> str:
        lines = []
        for r in self.rows:
            if r.outcome == "QA":
                detail = f"det={r.det}" + (f" family={r.family}" if r.family else "")
            else:
                detail = r.reason
            lines.append(f"{r.knot:<10} {r.notation:<22} {r.outcome:<8} {detail}")
        s = self.summary
        lines.append(f"{len(self.rows)} rows ({self.mode}): {s['qa']} QA, {s['unknown']} Unknown, {s['error']} Error")
        return "\n".join(lines)


def certify_row(row: TableRow, mode: str, depth: int = DEFAULT_DEPTH,
                budget: int = DEFAULT_ORACLE_BUDGET) -> CatalogRow:
    """One row's outcome; errors are recorded, never raised."""
    out = CatalogRow(row.knot, row.conway, "Error")
    try:
        if mode == "designated":
            p, slot = designated_slot(row.conway)
            out.designated = slot
            result = certify_designated(p, slot, link=row.knot, depth=depth, budget=budget)
        else:
            p = parse_montesinos(row.conway)
            if mode == "family":
                m = match_family(p)
                result = (certify_family(m, link=row.knot, depth=depth, budget=budget)
                          if m else Unknown("no theorem family matches"))
            elif mode == "generic":
                result = certify(p, link=row.knot, depth=depth, budget=budget)
            else:
                raise ValueError(f"unknown mode {mode!r}")
    except (ParseError, ValueError, IndexError, RuntimeError, ArithmeticError) as exc:
        out.reason = f"{type(exc).__name__}: {exc}"
        return out
    if isinstance(result, Unknown):
        out.outcome = "Unknown"
        out.reason = result.reason
        return out
    check = verify_certificate(result, budget=budget)
    if not check:
        out.reason = f"certificate failed verification at {check.path}: {check.reason}"
        return out
    out.outcome = "QA"
    out.det = result.det
    out.family = result.family["family"] if result.family else None
    out.certificate = result.to_json()
    return out


def _certify_args(args):
    return certify_row(*args)


def run_batch(csv_path: str | Path, mode: str = "family", *, out_dir: str | Path | None = None,
              jobs: int = 1, depth: int = DEFAULT_DEPTH, budget: int = DEFAULT_ORACLE_BUDGET) -> BatchReport:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, not {mode!r}")
    table = read_table(csv_path)
    work = [(row, mode, depth, budget) for row in table]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_certify_args, work))    # map keeps input order
    else:
        rows = [_certify_args(w) for w in work]
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for row in rows:
            if row.certificate is not None:
                path = out / f"{row.knot}.json"
                path.write_text(json.dumps(row.certificate, indent=1, sort_keys=True) + "\n")
                row.certificate_path = str(path)
    return BatchReport(mode, rows)


def load_certificate(path: str | Path) -> QACertificate:
    return QACertificate.from_json(json.loads(Path(path).read_text()))
