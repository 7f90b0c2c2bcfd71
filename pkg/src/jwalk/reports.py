"""Report records and their CSV/JSON serialization.

CSV uses LF newlines, '.' decimals, and floats printed with 17 significant
digits so a parse-back reproduces every double bit-exactly; absent values
are empty fields.  JSON documents carry a schema_version field.  Repeated
runs with identical flags produce byte-identical output.
"""

import json
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import Optional

from .johnson import GraphParams
from .spectral import Schedule
from .validation import CertificationReport

__all__ = [
    "SCHEMA_VERSION",
    "RunRow",
    "RunReport",
    "SweepRow",
    "SweepReport",
    "format_float",
    "run_report_to_csv",
    "run_report_to_json",
    "read_run_rows",
    "sweep_report_to_csv",
    "sweep_report_to_json",
    "spectrum_to_json",
    "spectrum_to_csv",
    "certification_to_json",
    "write_output",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunRow:
    t: int
    p_succ: float
    p_alt: Optional[float]   # only the full engine reports this
    norm: float


@dataclass(frozen=True)
class RunReport:
    params: GraphParams
    marked: tuple            # 1-based element list
    engine: str              # "full" | "reduced"
    t_run: int
    stride: int
    rows: list


@dataclass(frozen=True)
class SweepRow:
    n: int
    t_run: int
    p_succ: float            # at t_run
    deviation: float         # |p_succ - 1/2|
    t_opt: int
    p_max: float


@dataclass(frozen=True)
class SweepReport:
    k: int
    rows: list


def format_float(x: float) -> str:
    return format(x, ".17g")


def _params_dict(params: GraphParams) -> dict:
    return {"n": params.n, "k": params.k,
            "num_vertices": params.num_vertices, "degree": params.degree}


def run_report_to_csv(report: RunReport) -> str:
    lines = ["t,p_succ,p_alt,norm"]
    for row in report.rows:
        alt = "" if row.p_alt is None else format_float(row.p_alt)
        lines.append(f"{row.t},{format_float(row.p_succ)},{alt},{format_float(row.norm)}")
    return "\n".join(lines) + "\n"


def read_run_rows(text: str) -> list:
    """Parse rows back from the CSV emitted by :func:`run_report_to_csv`."""
    lines = text.strip().split("\n")
    if lines[0] != "t,p_succ,p_alt,norm":
        raise ValueError(f"unexpected CSV header: {lines[0]!r}")
    rows = []
    for line in lines[1:]:
        t, p, alt, norm = line.split(",")
        rows.append(RunRow(t=int(t), p_succ=float(p),
                           p_alt=None if alt == "" else float(alt),
                           norm=float(norm)))
    return rows


def run_report_to_json(report: RunReport) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "params": _params_dict(report.params),
        "marked": list(report.marked),
        "engine": report.engine,
        "t_run": report.t_run,
        "stride": report.stride,
        "rows": [{"t": r.t, "p_succ": r.p_succ, "p_alt": r.p_alt, "norm": r.norm}
                 for r in report.rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def sweep_report_to_csv(report: SweepReport) -> str:
    lines = ["n,t_run,p_succ_at_t_run,abs_dev_from_half,t_opt,p_max"]
    for r in report.rows:
        lines.append(",".join([
            str(r.n), str(r.t_run), format_float(r.p_succ),
            format_float(r.deviation), str(r.t_opt), format_float(r.p_max)]))
    return "\n".join(lines) + "\n"


def sweep_report_to_json(report: SweepReport) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "k": report.k,
        "rows": [{"n": r.n, "t_run": r.t_run, "p_succ_at_t_run": r.p_succ,
                  "abs_dev_from_half": r.deviation, "t_opt": r.t_opt,
                  "p_max": r.p_max} for r in report.rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def spectrum_to_json(params: GraphParams, table: list, schedule: Schedule) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "params": _params_dict(params),
        "levels": [{
            "level": r.level, "eigenvalue": r.eigenvalue,
            "multiplicity": r.multiplicity, "weight_sq": r.weight_sq,
            "phase": r.phase, "shell_size": r.shell,
            "a": r.a, "b": r.b, "c": r.c,
        } for r in table],
        "schedule": {"t_run": schedule.t_run, "epsilon": schedule.epsilon,
                     "target_phase": schedule.target_phase},
    }
    return json.dumps(doc, indent=2) + "\n"


def spectrum_to_csv(params: GraphParams, table: list, schedule: Schedule) -> str:
    # schedule columns are repeated per row so one flat file carries everything
    lines = ["level,eigenvalue,multiplicity,weight_sq,phase,shell_size,a,b,c,"
             "t_run,epsilon,target_phase"]
    for r in table:
        phase = "" if r.phase is None else format_float(r.phase)
        lines.append(",".join([
            str(r.level), str(r.eigenvalue), str(r.multiplicity),
            format_float(r.weight_sq), phase, str(r.shell),
            str(r.a), str(r.b), str(r.c),
            str(schedule.t_run), format_float(schedule.epsilon),
            format_float(schedule.target_phase)]))
    return "\n".join(lines) + "\n"


def certification_to_json(report: CertificationReport) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "params": _params_dict(report.params),
        "marked_rank": report.marked,
        "tol": report.tol,
        "checks": [{"name": c.name, "residual": c.residual, "passed": c.passed}
                   for c in report.checks],
        "passed": report.passed,
    }
    return json.dumps(doc, indent=2) + "\n"


def write_output(text: str, out: Optional[str]) -> None:
    """Write to stdout, or atomically to a file (temp file + rename)."""
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp_path, out)
    except BaseException:
        os.unlink(tmp_path)
        raise
