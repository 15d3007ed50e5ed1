"""
File formats: JSON for every value type, CSV for point sets, measures and traces

JSON floats are written with repr (shortest round-tripping form) and CSV
floats with 17 significant digits, so parse(emit(x)) == x. Infinite or NaN
values are written as strings in JSON.
"""

import csv
import json
import math
import os
from typing import Any, Dict, Iterable, List, Sequence

import numpy as np

from .errors import InvalidInputError
from .geometry import PointSet
from .measures import DiscreteMeasure, TransformTrace


def to_jsonable(value: Any) -> Any:
    """Recursively turn numpy values, complex numbers and non-finite floats into JSON types"""
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [to_jsonable(float(value.real)), to_jsonable(float(value.imag))]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    return value


def dumps(value: Any) -> str:
    return json.dumps(to_jsonable(value), indent=2, sort_keys=True)


def write_json(path: str, value: Any) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(value))
        f.write("\n")
    return path


def read_json(path: str) -> Dict[str, Any]:
    if not os.path.exists(path):
        raise InvalidInputError(f"File not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"{path} is not valid JSON: {e}")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])
    return path


def read_csv(path: str) -> List[List[float]]:
    if not os.path.exists(path):
        raise InvalidInputError(f"File not found: {path}")
    with open(path, 'r', newline='', encoding='utf-8') as f:
        reader = csv.reader(f)
        next(reader, None)
        return [[float(x) for x in row] for row in reader if row]


def pointset_csv(path: str, ps: PointSet) -> str:
    header = [f"x{i}" for i in range(ps.dim)]
    return write_csv(path, header, ps.points)


def measure_csv(path: str, mu: DiscreteMeasure) -> str:
    header = [f"x{i}" for i in range(mu.dim)] + ["re", "im"]
    rows = (list(p) + [w.real, w.imag] for p, w in zip(mu.points, mu.weights))
    return write_csv(path, header, rows)


def trace_csv(path: str, trace: TransformTrace) -> str:
    header = [f"t{i}" for i in range(trace.grid.dim)] + ["re", "im", "abs"]
    return write_csv(path, header, trace.rows())


def load_pointset(path: str) -> PointSet:
    """PointSet from JSON ({"points", "box"}) or from a measure JSON (its support)"""
    data = read_json(path)
    if "atoms" in data:
        return DiscreteMeasure.from_dict(data).support()
    if "points" not in data or "box" not in data:
        raise InvalidInputError(f"{path} holds neither a point set nor a measure")
    return PointSet.from_dict(data)


def load_measure(path: str) -> DiscreteMeasure:
    """DiscreteMeasure from JSON; a point-set file becomes the unit-weight comb"""
    data = read_json(path)
    if "atoms" in data:
        return DiscreteMeasure.from_dict(data)
    ps = load_pointset(path)
    return DiscreteMeasure(ps.points, np.ones(ps.size, dtype=complex), ps.box, ps.dedup_tol)
