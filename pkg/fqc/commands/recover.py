"""
Recover Command - lattice-comb representation of a measure

Exit 0 when the representation fits within tolerance, 3 when the measure
is not representable at this scale.
"""

from typing import Any, Dict, Optional

from ..errors import EmptySetError
from ..interchange import load_measure
from ..structure import recover_comb
from .base_command import BaseCommand


class RecoverCommand(BaseCommand):
    """CombRepresentation JSON from a measure and its spectrum"""

    def __init__(self, **kwargs):
        super().__init__("recover", **kwargs)

    def run(self, measure: str, spectrum: str, tol: Optional[float] = None,
            output: str = "representation") -> Dict[str, Any]:
        mu = load_measure(measure)
        if mu.size == 0:
            raise EmptySetError(f"{measure} holds no atoms")
        spec = load_measure(spectrum)
        rep = recover_comb(mu, spec, tol=tol, config=self.config)
        path = self.save(f"{output}.json", rep)
        return {"result": rep.to_dict(), "files": [path], "verdict_ok": rep.representable}

    def get_description(self) -> str:
        return "Recover a finite union of lattice cosets with trigonometric-polynomial weights"

    def get_schema(self) -> Dict[str, Any]:
        return self.make_schema({
            "measure": {"type": "string", "positional": True, "description": "Measure JSON"},
            "spectrum": {"type": "string", "positional": True, "description": "Spectrum measure JSON"},
            "tol": {"type": "number", "description": "Max weight error accepted"},
            "output": {"type": "string", "description": "Output file stem"},
        }, ["measure", "spectrum"])
