"""Free-group commutator calculus and Seifert-surface certificate checks."""

from .words import (
    TaggedWord,
    commutator_word,
    concat,
    conjugate,
    delete_letters,
    format_word,
    generators_in,
    insert_canceling_pair,
    invert,
    kill_generators,
    parse_word,
    reduce_word,
    simple_commutator,
    successive_entry_check,
)
from .magnus import (
    LongitudeSystem,
    NCPolynomial,
    expand,
    fox_coefficient,
    lcs_at_least,
    lcs_degree,
    milnor_invariant,
    milnor_vanish_upto,
    nc_add,
    nc_inverse,
    nc_mul,
)
from .decomp import CommutatorCombination, decompose, lie_component
from .schreier import (
    NotInNormalClosure,
    SchreierLetter,
    normal_closure_lcs_degree,
    schreier_rewrite,
    schreier_substitute,
)
from .trivializer import (
    FamilyCheck,
    LetterSetFamily,
    build_letter_sets,
    extremal_entry_word,
    verify_family,
)
from .seifert import (
    LaurentPolynomial,
    RationalSeries,
    SeifertMatrix,
    alexander,
    alternating_sum,
    anti_block_determinant_check,
    apply_basis_change,
    classify_form,
    mmr_series,
    symmetrize,
)
from .certify import (
    CertificateError,
    CertificateReport,
    GuardViolation,
    SurfaceCertificate,
    TranslationError,
    certificate_from_dict,
    certificate_to_dict,
    certify_elliptic,
    certify_hyperbolic,
    certify_parabolic,
    certify_unknotted,
    translate_certificate,
    spine_link_pipeline,
)

__version__ = "0.1.0"
