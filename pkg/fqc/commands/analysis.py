"""
Analysis Commands - ν_h leak check, dichotomy diagnostic, density report
"""

import logging
from typing import Any, Dict, List, Optional

import numpy as np

from ..errors import EmptySetError, InvalidInputError
from ..geometry import density_report, difference_set
from ..interchange import load_measure, load_pointset
from ..measures import FrequencyGrid, nu_h_support_check
from ..structure import dichotomy_report
from .base_command import BaseCommand

logger = logging.getLogger(__name__)

DEFAULT_EPS = [1e-1, 3e-2, 1e-2, 1e-3]


class NuHCommand(BaseCommand):
    """Leak of ν̂_h away from the truncated difference set Λ−Λ"""

    def __init__(self, **kwargs):
        super().__init__("nu-h", **kwargs)

    def run(self, measure: str, spectrum: str, h: List[float], half_width: float = 5.0,
            resolution: Optional[int] = None, tol: Optional[float] = None,
            output: str = "nu_h") -> Dict[str, Any]:
        mu = load_measure(measure)
        spec = load_measure(spectrum)
        if mu.size == 0 or spec.size == 0:
            raise EmptySetError("nu-h needs a non-empty measure and spectrum")
        if len(h) != spec.dim:
            raise InvalidInputError(f"h has {len(h)} coordinates, spectrum is {spec.dim}-dimensional")
        resolution = self.config.grid_resolution if resolution is None else resolution
        grid = FrequencyGrid(np.zeros(spec.dim), half_width, resolution)
        diffs = difference_set(mu.support(), cap_radius=half_width * 1.01)
        report = nu_h_support_check(spec, h, diffs.points, grid, tol=tol,
                                    match_tol=self.config.match_tol, config=self.config)
        path = self.save(f"{output}.json", report)
        return {"result": report.to_dict(), "files": [path]}

    def get_description(self) -> str:
        return "Measure how much of the transform of ν_h lies away from Λ−Λ"

    def get_schema(self) -> Dict[str, Any]:
        return self.make_schema({
            "measure": {"type": "string", "positional": True, "description": "Measure JSON (defines Λ)"},
            "spectrum": {"type": "string", "positional": True, "description": "Spectrum measure JSON"},
            "h": {"type": "array", "items": {"type": "number"}, "description": "Shift h in S−S"},
            "half_width": {"type": "number", "description": "Physical grid half-width (default 5)"},
            "resolution": {"type": "integer", "description": "Grid points per axis"},
            "tol": {"type": "number", "description": "Neighbourhood radius around Λ−Λ"},
            "output": {"type": "string", "description": "Output file stem"},
        }, ["measure", "spectrum", "h"])


class DichotomyCommand(BaseCommand):
    """Uniformly discrete or accumulating spectrum; inconclusive exits 3"""

    def __init__(self, **kwargs):
        super().__init__("dichotomy", **kwargs)

    def run(self, spectrum: str, eps: Optional[List[float]] = None,
            output: str = "dichotomy") -> Dict[str, Any]:
        spec = load_measure(spectrum)
        if spec.size == 0:
            raise EmptySetError(f"{spectrum} holds no atoms")
        report = dichotomy_report(spec, DEFAULT_EPS if eps is None else eps, self.config)
        path = self.save(f"{output}.json", report)
        return {"result": report.to_dict(), "files": [path],
                "verdict_ok": report.verdict != "inconclusive"}

    def get_description(self) -> str:
        return "Classify a spectrum as uniformly discrete or accumulating"

    def get_schema(self) -> Dict[str, Any]:
        return self.make_schema({
            "spectrum": {"type": "string", "positional": True, "description": "Spectrum measure JSON"},
            "eps": {"type": "array", "items": {"type": "number"},
                    "description": "Strictly decreasing relative levels (default 0.1 0.03 0.01 0.001)"},
            "output": {"type": "string", "description": "Output file stem"},
        }, ["spectrum"])


class DensityCommand(BaseCommand):
    """Density functionals of a point set"""

    def __init__(self, **kwargs):
        super().__init__("density", **kwargs)

    def run(self, input: str, ball_radius: Optional[float] = None, centers: int = 64,
            output: str = "density") -> Dict[str, Any]:
        ps = load_pointset(input)
        if ps.size == 0:
            raise EmptySetError(f"{input} holds no points")
        report = density_report(ps, ball_radius, centers, self.config)
        path = self.save(f"{output}.json", report)
        return {"result": report.to_dict(), "files": [path]}

    def get_description(self) -> str:
        return "Report ρ, lower, uniform and Beurling-Malliavin densities"

    def get_schema(self) -> Dict[str, Any]:
        return self.make_schema({
            "input": {"type": "string", "positional": True, "description": "Point set JSON"},
            "ball_radius": {"type": "number", "description": "Ball radius for the uniform density"},
            "centers": {"type": "integer", "description": "Number of random ball centers"},
            "output": {"type": "string", "description": "Output file stem"},
        }, ["input"])
