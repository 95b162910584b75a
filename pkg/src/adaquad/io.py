"""Rule and study file formats.

Rule CSV: first line ``dim,count``; then one ``x1,...,xn,w`` row per point,
17 significant digits. Rule JSON: keys ``comparator``, ``dim``,
``leaf_count``, ``points``, ``tol``, ``weights`` with exact binary64 values.
"""

import csv
import io
import json
import os
from dataclasses import asdict

import numpy as np

from .gauss_rules import RuleND
from .studies import ComparisonRecord, ConvergenceRecord

CONVERGENCE_COLUMNS = ("m", "total_points", "min_dist", "abs_error")
COMPARISON_COLUMNS = ("strategy", "total_points", "max_rel_error")


def fmt(x):
    """Shortest-safe decimal: 17 significant digits round-trip binary64."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.17g" % x


def _open_for_write(path):
    path = os.fspath(path)
    try:
        return open(path, "w", newline="", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def rule_to_csv(rule):
    lines = [f"{rule.dim},{rule.count}"]
    for p, w in zip(rule.points, rule.weights):
        lines.append(",".join(fmt(float(v)) for v in p) + "," + fmt(float(w)))
    return "\n".join(lines) + "\n"


def rule_to_json(rule, leaf_count=None, tol=None, comparator=None):
    doc = {
        "comparator": comparator,
        "dim": int(rule.dim),
        "leaf_count": leaf_count,
        "points": rule.points.tolist(),
        "tol": tol,
        "weights": rule.weights.tolist(),
    }
    return json.dumps(doc, sort_keys=True) + "\n"


def write_rule(result, path, format="csv"):
    """Write an :class:`AdaptiveResult` (or a bare :class:`RuleND`) to ``path``."""
    if isinstance(result, RuleND):
        rule, leaf_count, tol, comparator = result, None, None, None
    else:
        cfg = result.config
        rule, leaf_count = result.rule, result.leaf_count
        tol = cfg.tol if cfg else None
        comparator = cfg.comparator if cfg else None
    if format == "csv":
        text = rule_to_csv(rule)
    elif format == "json":
        text = rule_to_json(rule, leaf_count, tol, comparator)
    else:
        raise ValueError(f"unknown format {format!r}")
    with _open_for_write(path) as fh:
        fh.write(text)


def parse_rule(text, format):
    """Parse rule text; returns ``(RuleND, metadata dict)``."""
    if format == "json":
        doc = json.loads(text)
        dim = int(doc["dim"])
        points = np.array(doc["points"], dtype=float).reshape(-1, dim)
        weights = np.array(doc["weights"], dtype=float)
        meta = {k: doc.get(k) for k in ("leaf_count", "tol", "comparator")}
        return RuleND(dim, points, weights), meta
    lines = text.strip().splitlines()
    dim, count = (int(v) for v in lines[0].split(","))
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]], dtype=float)
    data = data.reshape(count, dim + 1)
    rule = RuleND(dim, np.ascontiguousarray(data[:, :dim]), np.ascontiguousarray(data[:, dim]))
    return rule, {}


def read_rule(path, format=None):
    path = os.fspath(path)
    if format is None:
        format = "json" if path.endswith(".json") else "csv"
    with open(path, encoding="utf-8") as fh:
        return parse_rule(fh.read(), format)


def _study_rows(records):
    for r in records:
        if isinstance(r, ConvergenceRecord):
            yield (r.points_per_direction, r.total_points, r.min_dist_to_cusp, r.abs_error)
        elif isinstance(r, ComparisonRecord):
            yield (r.strategy, r.total_points, r.max_rel_error)
        else:
            raise TypeError(f"not a study record: {r!r}")


def study_to_csv(records, kind=None):
    records = list(records)
    if kind is None:
        kind = "comparison" if records and isinstance(records[0], ComparisonRecord) else "convergence"
    columns = COMPARISON_COLUMNS if kind == "comparison" else CONVERGENCE_COLUMNS
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in _study_rows(records):
        writer.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


def study_to_json(records):
    out = []
    for r in records:
        d = asdict(r)
        for k, v in d.items():
            if isinstance(v, tuple):
                d[k] = list(v)
        out.append(d)
    return json.dumps(out, sort_keys=True) + "\n"


def write_study(records, path, format="csv", kind=None):
    """Write convergence or comparison records; ``kind`` fixes the header for empty lists."""
    text = study_to_csv(records, kind) if format == "csv" else study_to_json(records)
    with _open_for_write(path) as fh:
        fh.write(text)
