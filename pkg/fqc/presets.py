"""
Named configurations for the nowhere-dense construction

Each preset names the balls B_j to clear from the spectrum, the window
budget ε and the internal truncation. They are used by the
construct-nowhere-dense command and by the tests.
"""

from typing import Any, Dict, List, Optional

from .cutproject import NowhereDenseConfig

PRESETS: Dict[str, Dict[str, Any]] = {
    "single_ball": {
        "title": "Single ball around 1/2",
        "description": "Clear B = (0.4, 0.6) from the spectrum of a Fibonacci model measure.",
        "dense_seq": [0.5],
        "ball_radii": [0.1],
        "epsilon": 0.5,
        "truncation": 2000.0,
        "expected": {"budget_ok": True, "density": 0.4472135954999579},
    },

    "fibonacci_default": {
        "title": "Two balls, Fibonacci scheme",
        "description": "Clear (0.4, 0.6) and (1.9, 2.1); the window budget ε = 1 covers both.",
        "dense_seq": [0.5, 2.0],
        "ball_radii": [0.1, 0.1],
        "epsilon": 1.0,
        "truncation": 2000.0,
        "expected": {"budget_ok": True},
    },

    "budget_violation": {
        "title": "Balls too large for the budget",
        "description": "mes(B) = 0.4 exceeds ε/det Γ = 0.5/√5; the construction must refuse.",
        "dense_seq": [0.5],
        "ball_radii": [0.2],
        "epsilon": 0.5,
        "truncation": 2000.0,
        "expected": {"budget_ok": False},
    },
}


def get_preset(name: str) -> Optional[Dict[str, Any]]:
    """Get a preset by name"""
    return PRESETS.get(name)


def list_presets() -> List[str]:
    """List all preset names"""
    return list(PRESETS.keys())


def preset_config(name: str) -> NowhereDenseConfig:
    """NowhereDenseConfig built from a preset (KeyError for unknown names)"""
    preset = PRESETS[name]
    return NowhereDenseConfig(dense_seq=preset["dense_seq"], ball_radii=preset["ball_radii"],
                              epsilon=preset["epsilon"], truncation=preset["truncation"])
