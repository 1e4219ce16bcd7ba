"""Reading input documents and serialising results."""

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .metric import METRICS, FiniteMetricSpace


class SchemaError(ValueError):
    pass


@dataclass
class InputDocument:
    """Either labeled points with a metric name, or an explicit matrix."""

    labels: list
    points: Optional[list] = None
    matrix: Optional[list] = None
    metric: Optional[str] = None

    def to_space(self, metric=None):
        labels = [str(s) for s in self.labels]
        if len(set(labels)) != len(labels):
            raise SchemaError("labels must be unique")
        try:
            if self.matrix is not None:
                m = np.asarray(self.matrix, dtype=float)
                if m.ndim != 2 or m.shape != (len(labels), len(labels)):
                    raise SchemaError(f"matrix must be {len(labels)}x{len(labels)}")
                if not np.all(np.isfinite(m)) or np.any(m < 0):
                    raise SchemaError("matrix entries must be finite and nonnegative")
                return FiniteMetricSpace.from_matrix(m, labels)
            metric = metric or self.metric or "euclidean"
            if metric not in METRICS:
                raise SchemaError(f"unknown metric {metric!r}; choose from {sorted(METRICS)}")
            pts = np.asarray(self.points, dtype=float)
            if pts.ndim != 2 or pts.shape[0] != len(labels):
                raise SchemaError("points must be a list of equal-length coordinate lists")
            return FiniteMetricSpace.from_points(pts, metric, labels)
        except SchemaError:
            raise
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc

    def to_json(self):
        if self.matrix is not None:
            return {"labels": list(self.labels), "matrix": self.matrix}
        return {
            "metric": self.metric,
            "points": [{"label": lab, "coords": list(p)} for lab, p in zip(self.labels, self.points)],
        }

    def to_csv(self):
        if self.points is None:
            raise SchemaError("only point documents can be written as CSV")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        dim = len(self.points[0]) if self.points else 1
        w.writerow(["label"] + [f"x{k + 1}" for k in range(dim)])
        for lab, p in zip(self.labels, self.points):
            w.writerow([lab] + [repr(float(v)) for v in p])
        return buf.getvalue()

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, dict):
            raise SchemaError("input document must be a JSON object")
        if "matrix" in doc:
            labels = doc.get("labels") or [str(i) for i in range(len(doc["matrix"]))]
            return cls(labels=labels, matrix=doc["matrix"])
        if "points" in doc:
            labels, points = [], []
            for k, rec in enumerate(doc["points"]):
                if isinstance(rec, dict):
                    if "coords" not in rec:
                        raise SchemaError(f"point record {k} has no 'coords'")
                    labels.append(str(rec.get("label", k)))
                    coords = rec["coords"]
                else:
                    labels.append(str(k))
                    coords = rec
                points.append([float(v) for v in np.atleast_1d(coords)])
            return cls(labels=labels, points=points, metric=doc.get("metric"))
        raise SchemaError("input document needs either 'points' or 'matrix'")

    @classmethod
    def from_csv(cls, text):
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or not rows[0] or rows[0][0].strip() != "label":
            raise SchemaError("CSV header must be 'label,x1,...,xm'")
        dim = len(rows[0]) - 1
        if dim < 1:
            raise SchemaError("CSV needs at least one coordinate column")
        labels, points = [], []
        for lineno, row in enumerate(rows[1:], start=2):
            if not row:
                continue
            if len(row) != dim + 1:
                raise SchemaError(f"line {lineno}: expected {dim + 1} fields, got {len(row)}")
            try:
                points.append([float(v) for v in row[1:]])
            except ValueError as exc:
                raise SchemaError(f"line {lineno}: {exc}") from exc
            labels.append(row[0])
        return cls(labels=labels, points=points)


def read_document(path, fmt=None):
    """Read an input document from ``path``; the format defaults to the suffix."""
    path = Path(path)
    fmt = fmt or ("csv" if path.suffix.lower() == ".csv" else "json")
    text = path.read_text()
    if fmt == "csv":
        return InputDocument.from_csv(text)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    return InputDocument.from_json(doc)


def dumps(doc):
    return json.dumps(doc, indent=2) + "\n"


def tree_to_json(tree, labels):
    nodes = []
    for v in tree.nodes:
        nodes.append({
            "id": v.id,
            "parent": v.parent,
            "r": v.r,
            "level": v.level,
            "children": list(v.children),
            "members": [labels[p] for p in tree.leaf_order[v.start:v.stop]],
        })
    return {"root": tree.root, "nodes": nodes}


def tree_to_dot(tree, labels):
    lines = ["digraph cluster_tree {"]
    for v in tree.nodes:
        attrs = f'label="r={v.r:.12g} |Q|={v.size}"'
        if not v.children:
            attrs += ", xlabel=" + json.dumps(labels[tree.leaf_order[v.start]])
        lines.append(f"  n{v.id} [{attrs}];")
    for v in tree.nodes:
        for c in v.children:
            lines.append(f"  n{v.id} -> n{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def development_to_json(dev, labels):
    return {
        "points": [{"label": lab, "coord": float(x)} for lab, x in zip(labels, dev.coords)],
        "width": dev.width,
        "gaps": [{"node": node, "len": length} for node, length in dev.gaps],
    }


def coords_from_json(doc, labels):
    """Coordinates from a development document, in the order of ``labels``."""
    try:
        by_label = {str(p["label"]): float(p["coord"]) for p in doc["points"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed development document: {exc}") from exc
    missing = [lab for lab in labels if lab not in by_label]
    if missing:
        raise SchemaError(f"development has no coordinate for {missing[:5]}")
    return np.array([by_label[lab] for lab in labels])
