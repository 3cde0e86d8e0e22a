"""Exact computations for the enlarged periodic Temperley-Lieb algebra and its XXZ realization."""
from .eptl_rep import LoopParams, OmegaRep, RhoRep, verify_relations
from .intertwiner import build_I, check_intertwining, det_check
from .jordan_cell import CellInstance, certify_cell
from .linalg import CycMatrix
from .linkstates import LinkState, enumerate_states
from .operators import Anisotropy, f_central, hamiltonian
from .scalars import CycScalar, cyc, cyc_from_angle

__all__ = [
    "Anisotropy", "CellInstance", "CycMatrix", "CycScalar", "LinkState", "LoopParams", "OmegaRep",
    "RhoRep", "build_I", "certify_cell", "check_intertwining", "cyc", "cyc_from_angle", "det_check",
    "enumerate_states", "f_central", "hamiltonian", "verify_relations",
]
__version__ = "0.1.0"
