"""
Classify Command - discreteness and density of a point set
"""

from typing import Any, Dict, Optional

from ..geometry import classify, density_report
from ..interchange import load_pointset
from ..errors import EmptySetError
from .base_command import BaseCommand


class ClassifyCommand(BaseCommand):
    """DiscretenessReport and DensityReport for a point-set file"""

    def __init__(self, **kwargs):
        super().__init__("classify", **kwargs)

    def run(self, input: str, ball_radius: Optional[float] = None, centers: int = 64,
            output: str = "classification") -> Dict[str, Any]:
        ps = load_pointset(input)
        if ps.size == 0:
            raise EmptySetError(f"{input} holds no points")
        report = {"discreteness": classify(ps, self.config),
                  "density": density_report(ps, ball_radius, centers, self.config)}
        path = self.save(f"{output}.json", report)
        return {"result": report, "files": [path]}

    def get_description(self) -> str:
        return "Classify a point set (uniformly discrete, Delone, FLC, Meyer) and report its densities"

    def get_schema(self) -> Dict[str, Any]:
        return self.make_schema({
            "input": {"type": "string", "positional": True, "description": "Point set JSON"},
            "ball_radius": {"type": "number", "description": "Ball radius for the uniform density"},
            "centers": {"type": "integer", "description": "Number of random ball centers"},
            "output": {"type": "string", "description": "Output file stem"},
        }, ["input"])
