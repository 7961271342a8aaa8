"""Exact weight-graded modules on affine-Grassmannian orbit data.

Builds, for a semisimple root datum, the graded modules carrying the
dual-side Chevalley operators (raising by simple coroots, diagonal h,
and the unique hard-Lefschetz lowering completion), together with
independent character and module oracles and an exact relation checker.
"""

from .rootdata import (Coweight, InvalidDescriptorError, RootDatum, Weight,
                       build_root_datum)
from .satake import (DEFAULT_CAP, DimensionCapExceeded, GradedModule,
                     LefschetzError, WeightedOperator, build_ic_module,
                     character_of, decompose_character, freudenthal_character,
                     generate_submodule, highest_vectors, levi_restrict,
                     shapovalov_construct, sl2_completion,
                     sl2_uniqueness_dimension, tensor_module, weyl_dimension)
from .atoms import (AtomDescriptor, AtomKind, atom_decomposition, build_atom,
                    build_minuscule_atom, build_quasiminuscule_atom,
                    classify_coweight, omega_set)
from .cells import (CellCase, CellReport, Feasibility, bruhat_orbit,
                    cell_case, isotropy_root_set, levi_component_degree,
                    minuscule_cell_case, mv_degree, quasiminuscule_cell_case,
                    support_feasible)
from .verify import (VerificationReport, compare_characters, verify_module,
                     verify_cross_commutators, verify_gradings, verify_serre,
                     verify_triples, verify_weight_shifts)

__all__ = [
    "AtomDescriptor", "AtomKind", "CellCase", "CellReport", "Coweight",
    "DEFAULT_CAP", "DimensionCapExceeded", "Feasibility", "GradedModule",
    "InvalidDescriptorError", "LefschetzError", "RootDatum",
    "VerificationReport", "Weight", "WeightedOperator",
    "atom_decomposition", "bruhat_orbit", "build_atom", "build_ic_module",
    "build_minuscule_atom", "build_quasiminuscule_atom", "build_root_datum",
    "cell_case", "character_of", "classify_coweight", "compare_characters",
    "decompose_character", "freudenthal_character", "generate_submodule",
    "highest_vectors", "isotropy_root_set", "levi_component_degree",
    "levi_restrict", "minuscule_cell_case", "mv_degree", "omega_set",
    "quasiminuscule_cell_case", "shapovalov_construct", "sl2_completion",
    "sl2_uniqueness_dimension", "support_feasible", "tensor_module",
    "verify_cross_commutators", "verify_gradings", "verify_module",
    "verify_serre", "verify_triples", "verify_weight_shifts",
    "weyl_dimension",
]
