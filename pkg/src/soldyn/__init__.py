"""Ergodic and distal automorphism actions on finite-dimensional tori and
solenoids, decided in exact rational arithmetic."""

__version__ = "0.1.0"

from .autdyn import (
    analyze_auto,
    ergodic_distal_split,
    finite_orbit_subspace_auto,
    is_distal_auto,
    is_ergodic_auto,
    torus_validate,
)
from .cyclo import cyclotomic_poly, is_quasi_unipotent, order_set, root_of_unity_eigenvalue
from .ergfind import find_ergodic_nilpotent, find_nondistal_element
from .exactlin import Polynomial, RatMatrix, Subspace, charpoly, kernel, rref
from .groupdyn import (
    GenSet,
    Word,
    distal_series_group,
    element_enumerate,
    extend_nonergodic_witness,
    finite_orbit_subspace_group,
    group_image_finite_on,
    is_ergodic_group,
    probe_irreducible,
    vector_orbit,
    verify_nilpotent,
)

__all__ = [
    "GenSet",
    "Polynomial",
    "RatMatrix",
    "Subspace",
    "Word",
    "analyze_auto",
    "charpoly",
    "cyclotomic_poly",
    "distal_series_group",
    "element_enumerate",
    "ergodic_distal_split",
    "extend_nonergodic_witness",
    "find_ergodic_nilpotent",
    "find_nondistal_element",
    "finite_orbit_subspace_auto",
    "finite_orbit_subspace_group",
    "group_image_finite_on",
    "is_distal_auto",
    "is_ergodic_auto",
    "is_ergodic_group",
    "is_quasi_unipotent",
    "kernel",
    "order_set",
    "probe_irreducible",
    "root_of_unity_eigenvalue",
    "rref",
    "torus_validate",
    "vector_orbit",
    "verify_nilpotent",
]
