"""End-to-end parameter computation for one code family."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import distance, hilbert, incidence, length, toric
from .errors import BudgetExceeded, TheoremViolation
from .field import FieldSpec, field_build

CSV_COLUMNS = ("d", "H_X", "H_T", "Hbar", "delta_lower", "singleton",
               "delta_exact", "delta_exact_method")
KINDS = ("matrix", "graph", "clutter")


@dataclass
class RunConfig:
    q: int
    kind: str = "matrix"
    d_max: int | None = None  # default (m-1)(q-2) - 1
    exact_budget: int = 0  # 0 skips exact minimum distances
    delta_convention: str = "floor"
    output_format: str = "table"
    enum_budget: int = toric.DEFAULT_ENUM_BUDGET
    max_columns: int = hilbert.MAX_COLUMNS
    max_rows: int = hilbert.MAX_ROWS
    jobs: int = 1


@dataclass
class CodeInput:
    q: int
    kind: str
    matrix: toric.ExponentMatrix
    clutter: incidence.Clutter | None = None


def parse_input(data: dict, kind: str | None = None) -> CodeInput:
    """Validate a decoded input document (matrix, graph or clutter)."""
    if not isinstance(data, dict) or "q" not in data:
        raise ValueError("input must be an object with a 'q' field")
    q = data["q"]
    if not isinstance(q, int) or isinstance(q, bool):
        raise ValueError("'q' must be an integer")
    if kind is None:
        kind = "matrix" if "matrix" in data else "clutter"
    if kind not in KINDS:
        raise ValueError(f"unknown input kind {kind!r}")
    if kind == "matrix":
        rows = data.get("matrix")
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ValueError("'matrix' must be an array of rows")
        if not all(isinstance(x, int) and not isinstance(x, bool) for r in rows for x in r):
            raise ValueError("matrix entries must be integers")
        return CodeInput(q, kind, toric.ExponentMatrix(tuple(map(tuple, rows))))
    n = data.get("vertices")
    edges = data.get("edges")
    if not isinstance(n, int) or not isinstance(edges, list):
        raise ValueError("graph/clutter input needs 'vertices' and 'edges'")
    if not all(isinstance(e, list) and all(isinstance(v, int) for v in e) for e in edges):
        raise ValueError("'edges' must be arrays of vertex ids")
    for e in edges:
        if len(set(e)) != len(e):
            raise ValueError(f"edge {e} repeats a vertex")
    if kind == "graph":
        C = incidence.graph(n, [tuple(e) for e in edges])
    else:
        C = incidence.Clutter.from_one_indexed(n, edges)
    return CodeInput(q, kind, incidence.incidence_matrix(C), C)


def load_input(path, kind: str | None = None) -> CodeInput:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    return parse_input(data, kind)


@dataclass
class ParameterRow:
    d: int
    H_X: int | None
    H_T: int
    Hbar: int | None
    delta_lower: int | None
    singleton: int | None
    delta_exact: int | None = None
    delta_exact_method: str | None = None
    lower_rational: Fraction | None = field(default=None, compare=False)

    def csv_fields(self):
        vals = [self.d, self.H_X, self.H_T, self.Hbar, self.delta_lower, self.singleton,
                self.delta_exact, self.delta_exact_method]
        return ["" if v is None else str(v) for v in vals]


@dataclass
class RunResult:
    config: RunConfig
    code: CodeInput
    field: FieldSpec
    certificate: length.LengthCertificate
    enumerated_size: int | None
    corollaries: length.CorollaryReport
    profile: hilbert.HilbertProfile
    rows: list[ParameterRow]
    graph: incidence.GraphProvenance | None = None
    regularity_identity: hilbert.RegularityIdentity | None = None
    regularity_bounds: distance.RegularityBounds | None = None
    partial: bool = False

    @property
    def r_X(self) -> int | None:
        return self.profile.regularity


def run(config: RunConfig, code: CodeInput, backend=None,
        field: FieldSpec | None = None) -> RunResult:
    """Compute every parameter; ``field`` overrides the default model of GF(q)."""
    F = field or field_build(config.q)
    if F.q != config.q:
        raise ValueError(f"field has order {F.q}, config asks for {config.q}")
    A = code.matrix
    B = toric.reduce_matrix(A, F)
    prov = None
    if code.clutter is not None and code.clutter.is_graph:
        prov = incidence.classify_graph(code.clutter)

    try:
        X = toric.enumerate_X(A, F, config.enum_budget)
    except BudgetExceeded:
        X = None
    cert = length.length_theorem(B, F, config.enum_budget, enumerated=X, backend=backend)
    report = length.corollary_checks(A, B, F, cert, graph=prov)

    q, m, n = F.q, A.m, A.n
    d_max = config.d_max if config.d_max is not None else (m - 1) * (q - 2) - 1
    # with the default range, scan on to stabilization (free once H_X = |X|)
    limit = max(d_max, 0) if config.d_max is not None else max(d_max, (m - 1) * (q - 2))
    if X is not None:
        prof = hilbert.hilbert_profile(X, limit, cert.x_size, jobs=config.jobs,
                                       max_columns=config.max_columns,
                                       max_rows=config.max_rows, backend=backend)
    else:
        prof = hilbert.character_profile(A, F, limit, cert.x_size)
    partial = prof.regularity is None and len(prof.values) <= d_max

    reg_id = None
    if prof.regularity is not None:
        reg_id = hilbert.regularity_max_identity(prof, m, F)
    reg_bounds = None
    if A.alpha is not None:
        reg_bounds = distance.regularity_lower_bounds(cert.x_size, A.alpha, n, q,
                                                      prof.regularity, prov)

    rows = []
    torus_full = cert.x_size == (q - 1) ** (m - 1)
    for d in range(1, d_max + 1):
        hx = prof.values[d] if d < len(prof.values) else None
        ht = hilbert.hilbert_torus(m, d, q)
        lower = lower_int = None
        if A.alpha is not None:
            lower, lower_int = distance.lower_bound_delta(cert.x_size, A.alpha, n, d, q,
                                                          config.delta_convention)
            if prov is not None and prov.connected:
                g_exact, _ = distance.graph_lower_bound(prov, n, d, q, config.delta_convention)
                if g_exact != lower:
                    raise TheoremViolation(f"graph bound {g_exact} != general bound {lower} at d={d}")
        row = ParameterRow(d, hx, ht, None if hx is None else ht - hx, lower_int,
                           None if hx is None else distance.singleton_bound(cert.x_size, hx),
                           lower_rational=lower)
        if config.exact_budget > 0 and hx is not None and X is not None:
            res = _exact_distance(X, d, hx, cert.x_size, F, config.exact_budget, backend)
            row.delta_exact, row.delta_exact_method = res.value, res.method
            upper = None
            if d < (m - 1) * (q - 2):
                upper = distance.upper_bound_delta(m, d, q, y_size=0 if torus_full else None)
            distance.DistanceReport(d, lower, lower_int, row.singleton, upper, res).check()
        rows.append(row)
    return RunResult(config, code, F, cert, None if X is None else len(X), report, prof,
                     rows, prov, reg_id, reg_bounds, partial)


def _exact_distance(X, d, hx, x_size, F, budget, backend):
    if hx == x_size:
        G = np.eye(x_size, dtype=np.int64)  # the full space
    else:
        G = distance.generator_matrix(X, d, backend=backend)
    return distance.exact_min_distance(G, F, budget, backend=backend)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def to_csv(result: RunResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in result.rows:
        w.writerow(row.csv_fields())
    return buf.getvalue()


def parse_csv(text: str) -> list[ParameterRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {header}")
    out = []
    for rec in reader:
        ints = [None if v == "" else int(v) for v in rec[:7]]
        out.append(ParameterRow(*ints, rec[7] or None))
    return out


def to_dict(result: RunResult) -> dict:
    cert = result.certificate
    out = {
        "q": result.field.q,
        "kind": result.code.kind,
        "n": result.code.matrix.n,
        "m": result.code.matrix.m,
        "matrix": [list(r) for r in result.code.matrix.rows],
        "alpha": result.code.matrix.alpha,
        "length": {
            "y_sizes": list(cert.y_sizes),
            "kernel_size": cert.m_size,
            "kernel_indirect": cert.indirect,
            "x_size": cert.x_size,
            "enumerated_size": result.enumerated_size,
            "n_size": cert.n_size,
        },
        "r_X": result.r_X,
        "r_X_interval": list(result.profile.interval) if result.profile.interval else None,
        "numerator": result.profile.numerator if result.r_X is not None else None,
        "checks": [{"name": c.name, "status": c.status, "detail": c.detail}
                   for c in result.corollaries.checks],
        "partial": result.partial,
        "rows": [dict(zip(CSV_COLUMNS, (r.d, r.H_X, r.H_T, r.Hbar, r.delta_lower,
                                        r.singleton, r.delta_exact, r.delta_exact_method)))
                 | {"delta_lower_exact": None if r.lower_rational is None else str(r.lower_rational)}
                 for r in result.rows],
    }
    if result.graph is not None:
        out["graph"] = {"connected": result.graph.connected, "bipartite": result.graph.bipartite}
    if result.regularity_identity is not None:
        ri = result.regularity_identity
        out["regularity_identity"] = {"r_X": ri.r_X, "r_Hbar": ri.r_hbar, "r_T": ri.r_T,
                                      "holds": ri.holds}
    if result.regularity_bounds is not None:
        rb = result.regularity_bounds
        out["regularity_lower_bounds"] = {
            "general": str(rb.general),
            "graph": None if rb.graph is None else str(rb.graph),
            "attained": rb.attained,
        }
    return out


def to_json(result: RunResult) -> str:
    return json.dumps(to_dict(result), indent=2) + "\n"


def to_table(result: RunResult, width: int = 8) -> str:
    cert = result.certificate
    F = result.field
    lines = [
        f"q = {F.q}, n = {result.code.matrix.n}, m = {result.code.matrix.m}, "
        f"alpha = {result.code.matrix.alpha if result.code.matrix.alpha is not None else 'non-uniform'}",
        f"|Y_i| = {', '.join(map(str, cert.y_sizes))}",
        f"|M| = {cert.m_size}{' (indirect)' if cert.indirect else ''}",
        f"|X| = {cert.x_size} (enumerated: {result.enumerated_size})",
        f"r_X = {result.r_X if result.r_X is not None else result.profile.interval}",
    ]
    if result.regularity_bounds is not None:
        rb = result.regularity_bounds
        lines.append(f"r_X lower bound = {rb.best}{' (attained)' if rb.attained else ''}")
    for c in result.corollaries.checks:
        lines.append(f"check {c}")
    labels = [("d", "d"), ("H_X(d)", "H_X"), ("H_T(d)", "H_T"), ("Hbar(d)", "Hbar"),
              ("delta'_d", "delta_lower"), ("b_d", "singleton")]
    if any(r.delta_exact is not None for r in result.rows):
        labels.append(("delta_d", "delta_exact"))
    rows = result.rows
    for start in range(0, len(rows), width):
        chunk = rows[start:start + width]
        lines.append("")
        for label, attr in labels:
            cells = []
            for r in chunk:
                v = getattr(r, attr)
                if attr == "delta_exact" and v is not None and r.delta_exact_method != "brute":
                    v = f"<={v}"
                cells.append("" if v is None else str(v))
            lines.append(f"{label:>9} | " + " | ".join(f"{c:>6}" for c in cells))
    return "\n".join(lines) + "\n"


def render(result: RunResult, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(result)
    if fmt == "json":
        return to_json(result)
    if fmt == "table":
        return to_table(result)
    raise ValueError(f"unknown output format {fmt!r}")


__all__ = ["RunConfig", "CodeInput", "ParameterRow", "RunResult", "run", "load_input",
           "parse_input", "to_csv", "parse_csv", "to_json", "to_table", "render",
           "BudgetExceeded"]
