"""
fqc - Fourier quasicrystal toolkit

Discrete measures and their Fourier transforms, cut-and-project model
sets, diffraction estimates, discreteness and density diagnostics, and
recovery of periodic Dirac-comb structure, all at finite truncation scale.
"""

from .config import RunConfig, load_config, DEFAULT_CONFIG
from .errors import (FQCError, InvalidInputError, DimensionError, EmptySetError, CapExceededError,
                     AliasingError, BudgetError, WindowError, ConfigError)
from .geometry import PointSet, Lattice
from .measures import DiscreteMeasure, FrequencyGrid, TransformTrace

__version__ = "0.1.0"

__all__ = [
    'RunConfig', 'load_config', 'DEFAULT_CONFIG',
    'FQCError', 'InvalidInputError', 'DimensionError', 'EmptySetError', 'CapExceededError',
    'AliasingError', 'BudgetError', 'WindowError', 'ConfigError',
    'PointSet', 'Lattice', 'DiscreteMeasure', 'FrequencyGrid', 'TransformTrace',
]
