"""Exact verification of invariant contact pair structures on Lie algebras."""

from .exterior import (
    AltForm,
    Endomorphism,
    LieAlgebra,
    Vector,
    VectorValuedTwoForm,
    VerificationReport,
    bracket,
    exterior_derivative,
    interior_product,
    jacobi_check,
    lie_derivative_endo,
    lie_derivative_form,
    nijenhuis_endo,
    wedge,
)
from .pairs import (
    AlmostContactSymplecticStructure,
    ContactPair,
    ContactPairStructure,
    ContactSymplecticPair,
    NotAPair,
    classify_contact_pair,
    classify_contact_symplectic,
    classify_symplectic_pair,
    contact_pair,
    construct_decomposable_phi,
    is_decomposable,
    reeb_pair,
    splitting_bases,
    verify_acss,
    verify_cps,
)
from .normality import (
    almost_contact_normality,
    induced_normality,
    k_contact_flags,
    normality_report,
    normality_tensor,
    split_system_check,
)
from .constructions import boothby_wang_extend, bw_base_conditions, direct_sum

__version__ = "0.1.0"
