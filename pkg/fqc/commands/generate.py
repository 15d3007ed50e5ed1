"""
Generate Command - write point sets

Kinds:
- lattice: all points of the lattice with the given basis inside the box
- modelset: cut-and-project set of a 1+1 scheme (Fibonacci basis by default)
- fibonacci: model set of the Fibonacci scheme
- random: Poisson process of the given density
"""

import logging
import math
from typing import Any, Dict, List, Optional

import numpy as np

from ..cutproject import CutProjectScheme, enumerate_lattice, fibonacci_scheme, model_set
from ..diffraction import random_point_set
from ..errors import InvalidInputError
from ..geometry import Lattice, PointSet, as_box
from ..interchange import pointset_csv
from .base_command import BaseCommand

logger = logging.getLogger(__name__)

KINDS = ("lattice", "modelset", "fibonacci", "random")


class GenerateCommand(BaseCommand):
    """Write a PointSet as JSON or CSV"""

    def __init__(self, **kwargs):
        super().__init__("generate", **kwargs)

    def run(self, kind: str, box: float = 10.0, basis: Optional[List[float]] = None,
            window: Optional[List[float]] = None, density: float = 1.0, seed: Optional[int] = None,
            output: str = "pointset") -> Dict[str, Any]:
        if kind not in KINDS:
            raise InvalidInputError(f"Unknown kind '{kind}', expected one of {KINDS}")
        ps = self._build(kind, box, basis, window, density, self.config.seed if seed is None else seed)
        if ps.size == 0:
            logger.warning("Generated point set is empty")
        if self.fmt == "csv":
            path = pointset_csv(self.output_path(f"{output}.csv"), ps)
        else:
            path = self.save(f"{output}.json", ps)
        return {"result": {"kind": kind, "points": ps.size, "dim": ps.dim}, "files": [path]}

    def _build(self, kind, box, basis, window, density, seed) -> PointSet:
        if kind == "random":
            return random_point_set(density, as_box(box), seed, self.config.dedup_tol)
        if kind == "lattice":
            values = np.asarray(basis if basis is not None else [1.0], dtype=float)
            n = int(round(math.sqrt(values.size)))
            if n * n != values.size:
                raise InvalidInputError(f"Basis needs n*n entries, got {values.size}")
            lattice = Lattice(values.reshape(n, n))
            bbox = as_box(box, n)
            _, points = enumerate_lattice(lattice, bbox, self.config.enumeration_cap)
            return PointSet.from_points(points, bbox, self.config.dedup_tol)
        if window is not None and len(window) % 2:
            raise InvalidInputError("Window needs lo hi pairs")
        scheme = fibonacci_scheme()
        if kind == "modelset" and basis is not None:
            values = np.asarray(basis, dtype=float)
            if values.size != 4:
                raise InvalidInputError("modelset basis must be a 2x2 matrix (physical and internal line)")
            scheme = CutProjectScheme(Lattice(values.reshape(2, 2)), 1, 1, scheme.window)
        win = scheme.window if window is None else np.asarray(window, dtype=float).reshape(-1, 2)
        return model_set(scheme, win, box, self.config)

    def get_description(self) -> str:
        return "Generate a lattice, model set, Fibonacci chain or random point set"

    def get_schema(self) -> Dict[str, Any]:
        return self.make_schema({
            "kind": {"type": "string", "enum": list(KINDS), "positional": True,
                     "description": "Point set kind"},
            "box": {"type": "number", "description": "Half-width of the box (default 10)"},
            "basis": {"type": "array", "items": {"type": "number"},
                      "description": "Row-major lattice basis (lattice, modelset)"},
            "window": {"type": "array", "items": {"type": "number"},
                       "description": "Window as lo hi [lo hi ...] (modelset, fibonacci)"},
            "density": {"type": "number", "description": "Intensity of the random kind"},
            "seed": {"type": "integer", "description": "Seed for the random kind"},
            "output": {"type": "string", "description": "Output file stem (default 'pointset')"},
        }, ["kind"])
