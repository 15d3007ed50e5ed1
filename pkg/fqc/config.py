"""
Run configuration for the fqc toolkit

RunConfig gathers every tolerance, cap and default radius used by the
library and the command line. Values come from (highest first):
- an explicit --config FILE
- the FQC_CONFIG environment variable (a .env file is honoured)
- the defaults below
"""

import json
import os
from dataclasses import dataclass, asdict, fields
from typing import Dict, Any, Optional

from dotenv import load_dotenv

from .errors import ConfigError

ENV_VAR = "FQC_CONFIG"


@dataclass
class RunConfig:
    """All tunables of a run; serializes losslessly to JSON"""
    # tolerances
    dedup_tol: float = 1e-9
    match_tol: float = 1e-6
    purge_threshold: float = 1e-14
    peak_threshold: float = 1e-3
    fit_tol: float = 1e-8
    gcd_rel_tol: float = 1e-6
    # caps
    grid_cap: int = 2_000_000
    enumeration_cap: int = 5_000_000
    max_peaks: int = 500
    max_cosets: int = 8
    omp_max_terms: int = 25
    # radii and resolutions
    truncation_radius: float = 100.0
    grid_resolution: int = 4001
    taper: float = 4.0
    # classification and density
    flc_radius_factor: float = 10.0
    gap_floor: float = 1e-3
    density_convergence: float = 0.05
    # structure recovery
    coverage_floor: float = 0.9
    period_floor: float = 0.99
    dichotomy_ratio: float = 10.0
    flat_ratio: float = 1.1
    cluster_scale: float = 10.0
    cover_radius_limit: float = 5.0
    # nowhere-dense construction
    gamma_factor: float = 1.1
    # execution
    chunk_size: int = 256
    threads: int = 1
    seed: int = 0

    def validate(self) -> "RunConfig":
        """Raise ConfigError if any value is unusable; return self"""
        positive = ["dedup_tol", "match_tol", "purge_threshold", "peak_threshold",
                    "fit_tol", "gcd_rel_tol", "truncation_radius", "taper",
                    "flc_radius_factor", "gap_floor", "density_convergence",
                    "dichotomy_ratio", "flat_ratio", "cluster_scale",
                    "cover_radius_limit", "gamma_factor"]
        for name in positive:
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be > 0, got {getattr(self, name)}")
        minimums = {"grid_cap": 16, "enumeration_cap": 16, "max_peaks": 1,
                    "max_cosets": 1, "omp_max_terms": 1, "grid_resolution": 2,
                    "chunk_size": 1, "threads": 1}
        for name, minimum in minimums.items():
            if getattr(self, name) < minimum:
                raise ConfigError(f"{name} must be >= {minimum}, got {getattr(self, name)}")
        if not 0 < self.coverage_floor <= 1 or not 0 < self.period_floor <= 1:
            raise ConfigError("coverage_floor and period_floor must lie in (0, 1]")
        if self.gamma_factor <= 1:
            raise ConfigError("gamma_factor must exceed 1")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        known = {f.name: f.type for f in fields(cls)}
        unknown = set(data) - set(known)
        if unknown:
            raise ConfigError(f"Unknown config keys: {sorted(unknown)}")
        values = {}
        for key, value in data.items():
            default = getattr(cls, key)
            values[key] = int(value) if isinstance(default, int) else float(value)
        return cls(**values).validate()

    def replace(self, **changes) -> "RunConfig":
        data = self.to_dict()
        data.update(changes)
        return RunConfig.from_dict(data)

    def save_to_file(self, filepath: str) -> None:
        """Save config as JSON (repr of floats keeps it lossless)"""
        with open(filepath, 'w') as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)

    @classmethod
    def load_from_file(cls, filepath: str) -> "RunConfig":
        if not os.path.exists(filepath):
            raise ConfigError(f"Config file not found: {filepath}")
        try:
            with open(filepath, 'r') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Config file {filepath} is not valid JSON: {e}")
        return cls.from_dict(data)


def load_config(path: Optional[str] = None, threads: Optional[int] = None) -> RunConfig:
    """Resolve the run configuration: explicit file, then FQC_CONFIG, then defaults"""
    load_dotenv()
    path = path or os.getenv(ENV_VAR)
    config = RunConfig.load_from_file(path) if path else RunConfig().validate()
    if threads is not None:
        config = config.replace(threads=threads)
    return config


DEFAULT_CONFIG = RunConfig()
