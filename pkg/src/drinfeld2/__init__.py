"""Exact arithmetic for rank-2 Drinfeld F_q[T]-modules over finite fields:
Frobenius characteristic polynomials, induced A-module structures,
ordinary/supersingular classification, and exhaustive cyclicity censuses
with class-number cross-checks.
"""

from .fields import (FieldElement, FieldEmbedding, FieldTower, SizeBoundError,
                     build_tower)
from .polys import (MonicIdeal, UPoly, embed_residue_field,
                    enumerate_monic_irreducibles)
from .ore import OrePoly
from .drinfeld import DrinfeldModule, SplittingBoundError, TorsionStructure
from .charpoly import (FrobeniusCharPoly, annihilation_holds, discriminant,
                       euler_characteristic, frobenius_charpoly, is_imaginary,
                       is_isogenous, minimal_polynomial)
from .structure import (InvariantFactors, NotRealizable, action_matrix,
                        check_criteria, module_structure,
                        plane_torsion_rational, realize_structure,
                        smith_normal_form, suborder_contained)
from .hurwitz import StabilizationError, class_number, hurwitz_class_number
from .census import (CensusReport, attach_class_number_checks,
                     compute_statistics, counting_formulas, cyclicity_trend,
                     run_census)

__version__ = "0.1.0"

__all__ = [
    "FieldElement", "FieldEmbedding", "FieldTower", "SizeBoundError",
    "build_tower", "MonicIdeal", "UPoly", "embed_residue_field",
    "enumerate_monic_irreducibles", "OrePoly", "DrinfeldModule",
    "SplittingBoundError", "TorsionStructure", "FrobeniusCharPoly",
    "annihilation_holds", "discriminant", "euler_characteristic",
    "frobenius_charpoly", "is_imaginary", "is_isogenous",
    "minimal_polynomial", "InvariantFactors", "NotRealizable",
    "action_matrix", "check_criteria", "module_structure",
    "plane_torsion_rational", "realize_structure", "smith_normal_form",
    "suborder_contained", "StabilizationError", "class_number",
    "hurwitz_class_number", "CensusReport", "attach_class_number_checks",
    "compute_statistics", "counting_formulas", "cyclicity_trend", "run_census",
]
