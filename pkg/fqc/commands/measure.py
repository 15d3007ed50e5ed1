"""
Measure Command - build model measures and synthetic combs

Writes the measure JSON and, when a frequency box is given, the predicted
spectrum next to it.
"""

from typing import Any, Dict, Optional

from ..cutproject import fibonacci_scheme, model_measure, predicted_spectrum
from ..errors import InvalidInputError
from ..interchange import measure_csv, read_json
from ..structure import CombRepresentation, synthetic_comb, synthetic_spectrum
from ..windows import make_window
from .base_command import BaseCommand


class MeasureCommand(BaseCommand):
    """Model measure of the Fibonacci scheme, or comb from a representation file"""

    def __init__(self, **kwargs):
        super().__init__("measure", **kwargs)

    def run(self, kind: str = "model", box: float = 50.0, window: str = "bspline", order: int = 2,
            half_width: Optional[float] = None, freq_box: Optional[float] = None,
            representation: Optional[str] = None, output: str = "measure") -> Dict[str, Any]:
        if kind == "model":
            spec = {"kind": window, "order": order}
            if half_width is not None:
                spec["half_width"] = half_width
            wf = make_window(spec)
            scheme = fibonacci_scheme()
            mu = model_measure(scheme, wf, box, self.config)
            spectrum = predicted_spectrum(scheme, wf, freq_box, self.config) if freq_box else None
        elif kind == "comb":
            if not representation:
                raise InvalidInputError("comb kind needs --representation FILE")
            rep = CombRepresentation.from_dict(read_json(representation))
            mu = synthetic_comb(rep, box, self.config)
            spectrum = synthetic_spectrum(rep) if freq_box else None
        else:
            raise InvalidInputError(f"Unknown measure kind '{kind}'")

        files = []
        if self.fmt == "csv":
            files.append(measure_csv(self.output_path(f"{output}.csv"), mu))
        else:
            files.append(self.save(f"{output}.json", mu))
        if spectrum is not None:
            files.append(self.save(f"{output}_spectrum.json", spectrum))
        result = {"kind": kind, "atoms": mu.size,
                  "spectrum_atoms": None if spectrum is None else spectrum.size}
        return {"result": result, "files": files}

    def get_description(self) -> str:
        return "Build a model measure (with predicted spectrum) or a synthetic comb"

    def get_schema(self) -> Dict[str, Any]:
        return self.make_schema({
            "kind": {"type": "string", "enum": ["model", "comb"], "description": "model or comb"},
            "box": {"type": "number", "description": "Half-width of the physical box"},
            "window": {"type": "string", "enum": ["bspline", "fejer", "squared", "lemma_al1"],
                       "description": "Window function family"},
            "order": {"type": "integer", "description": "B-spline order"},
            "half_width": {"type": "number", "description": "Half-width of the transform support (of the base for squared)"},
            "freq_box": {"type": "number", "description": "Also write the spectrum on this frequency box"},
            "representation": {"type": "string", "description": "CombRepresentation JSON (comb kind)"},
            "output": {"type": "string", "description": "Output file stem"},
        })
