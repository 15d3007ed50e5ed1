"""
Construct Command - positive window whose model-measure spectrum avoids given balls

Either a named preset or explicit centers/radii/epsilon. A budget
violation (Σ mes(B_j) >= ε/det Γ) exits with code 2.
"""

import logging
from typing import Any, Dict, List, Optional

from ..cutproject import NowhereDenseConfig, fibonacci_scheme, nowhere_dense_construction
from ..errors import InvalidInputError
from ..presets import get_preset, list_presets, preset_config
from .base_command import BaseCommand

logger = logging.getLogger(__name__)


class ConstructCommand(BaseCommand):
    """Nowhere-dense spectrum construction on the Fibonacci scheme"""

    def __init__(self, **kwargs):
        super().__init__("construct-nowhere-dense", **kwargs)

    def run(self, preset: Optional[str] = None, centers: Optional[List[float]] = None,
            radii: Optional[List[float]] = None, epsilon: Optional[float] = None,
            truncation: float = 2000.0, output: str = "construction") -> Dict[str, Any]:
        cfg = self._config(preset, centers, radii, epsilon, truncation)
        report = nowhere_dense_construction(fibonacci_scheme(), cfg, self.config)
        if report.zero_violations:
            logger.warning("%d zeros of the window exceed 1e-12", report.zero_violations)
        result = {"config": cfg.to_dict(), "report": report.to_dict()}
        path = self.save(f"{output}.json", result)
        return {"result": result, "files": [path]}

    @staticmethod
    def _config(preset, centers, radii, epsilon, truncation) -> NowhereDenseConfig:
        if preset is not None:
            if get_preset(preset) is None:
                raise InvalidInputError(f"Unknown preset '{preset}'", f"choose from {list_presets()}")
            return preset_config(preset)
        if centers is None or radii is None or epsilon is None:
            raise InvalidInputError("Give a preset or all of centers, radii and epsilon")
        return NowhereDenseConfig(dense_seq=centers, ball_radii=radii, epsilon=epsilon,
                                  truncation=truncation)

    def get_description(self) -> str:
        return "Build a positive window whose spectrum avoids the given balls"

    def get_schema(self) -> Dict[str, Any]:
        return self.make_schema({
            "preset": {"type": "string", "enum": list_presets(), "description": "Named configuration"},
            "centers": {"type": "array", "items": {"type": "number"}, "description": "Ball centers"},
            "radii": {"type": "array", "items": {"type": "number"}, "description": "Ball radii"},
            "epsilon": {"type": "number", "description": "Transform support budget ε"},
            "truncation": {"type": "number", "description": "Internal truncation (default 2000)"},
            "output": {"type": "string", "description": "Output file stem"},
        })
