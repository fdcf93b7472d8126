"""Exact certificates for derived equivalences between quotient
endomorphism rings, built from split sequences and angle data."""

from .errors import (
    HypothesisError,
    InputError,
    InternalConsistencyError,
    NonFiniteDimensionalError,
)
from .exactla import FieldSpec, Mat, Subspace
from .algebra import ModuleRep, Quiver, path_algebra, projective, simple_module
from .catideal import SubcatSpec, end_ring, ideal_space, quotient_ring
from .complexes import Complex, HomComplex, check_thm1_conditions
from .derivedeq import nu_stable_sequence, verify_theorem1
from .angulate import KbProjCat, cone_triangle, verify_theorem2
from .orbit import AdmissibleSet, OrbitCategory, is_admissible

__all__ = [
    "FieldSpec",
    "Mat",
    "Subspace",
    "Quiver",
    "path_algebra",
    "ModuleRep",
    "projective",
    "simple_module",
    "SubcatSpec",
    "ideal_space",
    "end_ring",
    "quotient_ring",
    "Complex",
    "HomComplex",
    "check_thm1_conditions",
    "verify_theorem1",
    "nu_stable_sequence",
    "KbProjCat",
    "cone_triangle",
    "verify_theorem2",
    "is_admissible",
    "AdmissibleSet",
    "OrbitCategory",
    "InputError",
    "HypothesisError",
    "NonFiniteDimensionalError",
    "InternalConsistencyError",
]
