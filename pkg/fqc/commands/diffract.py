"""
Diffract Command - autocorrelation, diffraction trace and Bragg peaks

Pipeline: load measure → autocorrelation_measure → diffraction_estimate →
split_pure_point, then write the report JSON, an SVG plot and the trace CSV.
"""

import logging
from typing import Any, Dict, List, Optional

import numpy as np

from ..diffraction import (autocorrelation_measure, convergence_report, diffraction_estimate,
                           diffraction_report, split_pure_point)
from ..errors import EmptySetError
from ..interchange import load_measure, trace_csv
from ..measures import FrequencyGrid
from ..plots import intensity_map, stem_plot, write_svg
from .base_command import BaseCommand

logger = logging.getLogger(__name__)


class DiffractCommand(BaseCommand):
    """Diffraction report for a point set or measure file"""

    def __init__(self, **kwargs):
        super().__init__("diffract", **kwargs)

    def run(self, input: str, R: float, half_width: float = 5.0, resolution: Optional[int] = None,
            center: Optional[List[float]] = None, threshold: Optional[float] = None,
            cap_radius: Optional[float] = None, convergence: bool = False, log_scale: bool = False,
            output: str = "diffraction") -> Dict[str, Any]:
        mu = load_measure(input)
        if mu.size == 0:
            raise EmptySetError(f"{input} holds no atoms")
        center = np.zeros(mu.dim) if center is None else np.asarray(center, dtype=float)
        resolution = self.config.grid_resolution if resolution is None else resolution
        grid = FrequencyGrid(center, half_width, resolution)

        ac = autocorrelation_measure(mu, R, cap_radius, self.config)
        est = diffraction_estimate(ac, grid, threshold, self.config)
        split = split_pure_point(est)
        conv = convergence_report(mu, R, grid, peak_threshold=threshold, cap_radius=cap_radius,
                                  config=self.config) if convergence else None

        report = diffraction_report(est, conv)
        report["continuous_mass"] = split.continuous_mass
        report["discrete_mass"] = split.discrete_mass
        files = [self.save(f"{output}.json", report)]
        files.append(trace_csv(self.output_path(f"{output}_trace.csv"), est.trace))
        if mu.dim == 1:
            peaks = est.peak_list()
            svg = stem_plot([p[0][0] for p in peaks], [p[1] for p in peaks],
                            title=f"Bragg peaks, R = {R:g}", log_scale=log_scale)
            files.append(write_svg(self.output_path(f"{output}.svg"), svg))
        elif mu.dim == 2:
            files.append(write_svg(self.output_path(f"{output}.svg"),
                                   intensity_map(est.trace, title=f"Diffraction, R = {R:g}", log_scale=log_scale)))
        return {"result": {"peaks": est.peaks.size, "discrete_mass": split.discrete_mass,
                           "continuous_mass": split.continuous_mass}, "files": files}

    def get_description(self) -> str:
        return "Estimate the diffraction of a point set or measure and extract Bragg peaks"

    def get_schema(self) -> Dict[str, Any]:
        return self.make_schema({
            "input": {"type": "string", "positional": True, "description": "Point set or measure JSON"},
            "R": {"type": "number", "description": "Truncation half-width"},
            "half_width": {"type": "number", "description": "Frequency grid half-width (default 5)"},
            "resolution": {"type": "integer", "description": "Grid points per axis"},
            "center": {"type": "array", "items": {"type": "number"}, "description": "Grid center"},
            "threshold": {"type": "number", "description": "Peak threshold relative to the largest peak"},
            "cap_radius": {"type": "number", "description": "Drop differences longer than this"},
            "convergence": {"type": "boolean", "description": "Also run at R/2 and compare"},
            "log_scale": {"type": "boolean", "description": "Log-scale SVG"},
            "output": {"type": "string", "description": "Output file stem"},
        }, ["input", "R"])
