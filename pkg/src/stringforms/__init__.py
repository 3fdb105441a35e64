"""Invariant geometry on Lie groups and canonical 3-forms of string classes on S^3."""
from .lie import *  # noqa: F401,F403
from .metric import *  # noqa: F401,F403
from .forms import *  # noqa: F401,F403
from .geometry import *  # noqa: F401,F403
from .torsion import *  # noqa: F401,F403
from .string_class import *  # noqa: F401,F403
from .chern_simons import *  # noqa: F401,F403
from . import batch, sweep as sweeps  # noqa: F401
from .sweep import (SweepSpec, SweepRecord, sweep, classify_region, find_H_zero,  # noqa: F401
                    emit_figures)

__version__ = "0.1.0"
