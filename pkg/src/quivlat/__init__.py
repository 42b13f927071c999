"""Exact computation with bound quiver algebras and their pretorsion lattices."""

from .algebra import (BoundQuiverAlgebra, ClassificationReport, Quiver,
                      classify, connected_components, distributivity_criterion,
                      find_band, is_string_algebra, lrd_criterion,
                      validate_admissible)
from .catalog import IndecCatalog, build_catalog
from .errors import (InputError, InternalInvariantError, QuivlatError,
                     RefusalError)
from .lattice import FiniteLattice, Poset, lattice_isomorphic, order_ideal_lattice
from .linalg import GF, Matrix, QQ, Subspace
from .modules import (Morphism, Representation, hom_space, is_isomorphic,
                      simple_at)
from .pretorsion import (build_pretorsion_lattice, build_pretorsionfree_lattice,
                         build_torsion_lattice, distributive_closure_identification,
                         enumerate_pretorsion_theories, epi_poset_realization,
                         is_pretorsion_theory, join_irreducible_report)
from .quiverfile import load_quiver_file, parse_quiver_file

__version__ = "0.1.0"

__all__ = [
    "BoundQuiverAlgebra", "ClassificationReport", "Quiver", "classify",
    "connected_components", "distributivity_criterion", "find_band",
    "is_string_algebra", "lrd_criterion", "validate_admissible",
    "IndecCatalog", "build_catalog",
    "InputError", "InternalInvariantError", "QuivlatError", "RefusalError",
    "FiniteLattice", "Poset", "lattice_isomorphic", "order_ideal_lattice",
    "GF", "Matrix", "QQ", "Subspace",
    "Morphism", "Representation", "hom_space", "is_isomorphic", "simple_at",
    "build_pretorsion_lattice", "build_pretorsionfree_lattice",
    "build_torsion_lattice", "distributive_closure_identification",
    "enumerate_pretorsion_theories", "epi_poset_realization",
    "is_pretorsion_theory", "join_irreducible_report",
    "load_quiver_file", "parse_quiver_file",
]
