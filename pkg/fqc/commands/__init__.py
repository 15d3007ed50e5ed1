"""
fqc Commands

Each subcommand of the command line is a command object:
- generate: lattices, model sets, Fibonacci chains, random points
- measure: model measures and synthetic combs, with predicted spectra
- diffract: autocorrelation, diffraction trace and Bragg peaks
- classify / density: discreteness verdicts and density functionals
- recover: lattice-comb representation of a measure
- nu-h / dichotomy: spectral diagnostics
- construct-nowhere-dense: window whose spectrum avoids given balls

The argument parser is generated from each command's get_schema().
"""

from .base_command import BaseCommand, EXIT_OK, EXIT_INVALID, EXIT_REFUTED
from .generate import GenerateCommand
from .measure import MeasureCommand
from .diffract import DiffractCommand
from .classify import ClassifyCommand
from .recover import RecoverCommand
from .construct import ConstructCommand
from .analysis import NuHCommand, DichotomyCommand, DensityCommand

COMMANDS = {
    "generate": GenerateCommand,
    "measure": MeasureCommand,
    "diffract": DiffractCommand,
    "classify": ClassifyCommand,
    "recover": RecoverCommand,
    "nu-h": NuHCommand,
    "dichotomy": DichotomyCommand,
    "construct-nowhere-dense": ConstructCommand,
    "density": DensityCommand,
}

__all__ = [
    'BaseCommand',
    'GenerateCommand',
    'MeasureCommand',
    'DiffractCommand',
    'ClassifyCommand',
    'RecoverCommand',
    'ConstructCommand',
    'NuHCommand',
    'DichotomyCommand',
    'DensityCommand',
    'COMMANDS',
    'EXIT_OK',
    'EXIT_INVALID',
    'EXIT_REFUTED',
]
