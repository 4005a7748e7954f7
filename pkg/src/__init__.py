"""
Exact homological algebra over GF(p)

Modules:
- linalg: exact matrices, subspaces and subquotients over GF(p)
- algebra: finite-dimensional algebras, group algebras and modules
- hopf: Hopf algebras, normal Hopf subalgebras, quotients and the Hom_K adjunction
- complexes: cochain complexes, maps, homology, purity checks
- bicomplex: double and triple complexes, total complexes, CE-resolutions
- resolutions: injective providers, projective and bar resolutions
- functors: functor and bifunctor handles, named registry
- spectral: filtered complexes, E-entries, classical pages, proper spectral sequences
- grothendieck: derived functors, acyclicity hypotheses, the Grothendieck spectral sequence
- comparison: first and second comparison chains and their naturality
- groupcoh: the LHS double complex and its comparison with the Grothendieck side
- exporter: page tables, JSON and CSV, check reports
- cli: command-line interface
"""

from .algebra import FdAlgebra, FdModule, cyclic_group, group_algebra, trivial_module
from .comparison import first_comparison, haas_naturality, second_comparison
from .complexes import CochainComplex, homology_dims
from .grothendieck import derived_dims, grothendieck_ss
from .groupcoh import cohomology_oracle, lhs_vs_grothendieck
from .hopf import NormalHopfSubalgebra, group_hopf
from .linalg import FieldSpec, Subspace, rank
from .resolutions import InjResProvider, ext_dims, projective_resolution
from .spectral import FilteredComplex, classical_page, entry

__all__ = [
    "FdAlgebra",
    "FdModule",
    "cyclic_group",
    "group_algebra",
    "trivial_module",
    "first_comparison",
    "haas_naturality",
    "second_comparison",
    "CochainComplex",
    "homology_dims",
    "derived_dims",
    "grothendieck_ss",
    "cohomology_oracle",
    "lhs_vs_grothendieck",
    "NormalHopfSubalgebra",
    "group_hopf",
    "FieldSpec",
    "Subspace",
    "rank",
    "InjResProvider",
    "ext_dims",
    "projective_resolution",
    "FilteredComplex",
    "classical_page",
    "entry",
]
