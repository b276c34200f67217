"""F-filters, the spectrum δX and Gelfand duality on finite ground sets, in exact arithmetic."""

from .errors import DomainError, FSpectrumError, GroundMismatch, InputError, NotInvertible, TheoremViolation
from .extension import SpectrumFunc, approximate, dense_image_factorization, extend, gamma_check
from .filters import (
    FFilter,
    UltraPoint,
    enumerate_F_filters,
    extend_to_ultrafilter,
    is_F_family,
    is_F_filter,
    level_set,
    ultrafilter_characterizations,
    ultrafilters,
    zero_set,
)
from .ground import CQ, Algebra, Func, GroundSet, Partition, contains, in_F0, invert, join, kernel_partition, meet
from .ideals import (
    Character,
    Ideal,
    characters,
    enumerate_ideals,
    filter_from_ideal,
    ideal_from_filter,
    spectrum_homeo,
    three_cond_check,
)
from .instance import Instance, load_instance
from .morphisms import AlgebraPair, is_subalgebra, quotient_map, surjpts_check
from .spectrum import SpectrumSpace, build_spectrum, closure_eA, hat, verify_space

__version__ = "0.1.0"

__all__ = [
    "Algebra", "AlgebraPair", "CQ", "Character", "DomainError", "FFilter", "FSpectrumError", "Func",
    "GroundMismatch", "GroundSet", "Ideal", "InputError", "Instance", "NotInvertible", "Partition",
    "SpectrumFunc", "SpectrumSpace", "TheoremViolation", "UltraPoint", "approximate", "build_spectrum",
    "characters", "closure_eA", "contains", "dense_image_factorization", "enumerate_F_filters",
    "enumerate_ideals", "extend", "extend_to_ultrafilter", "filter_from_ideal", "gamma_check", "hat",
    "ideal_from_filter", "in_F0", "invert", "is_F_family", "is_F_filter", "is_subalgebra", "join",
    "kernel_partition", "level_set", "load_instance", "meet", "quotient_map", "spectrum_homeo",
    "surjpts_check", "three_cond_check", "ultrafilter_characterizations", "ultrafilters", "verify_space",
    "zero_set",
]
