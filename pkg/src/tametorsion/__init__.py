"""Hyperelliptic curves over Q with tamely ramified p-torsion fields."""

from .arith import ResidueClass, crt_combine, euler_phi, factorize, is_prime, mult_order
from .census import ImageEvidence, FrobeniusRecord, census, count_points, frobenius_charpoly, image_evidence
from .certify import TamenessCertificate, certify, good_reduction_odd
from .construct import (
    CongruenceConstraint,
    CurveSpec,
    assemble,
    choose_n,
    even_degree_model,
    good_reduction_two_check,
    local_condition_odd_ell,
    mod2_class_for_genus,
    two_torsion_rational_curve,
)
from .endo import (
    EndoStructure,
    SplittingDatum,
    endo_ring,
    endo_structure,
    splitting_data,
    tame_at_p_criterion,
    unit_group_order,
    verify_pn_via_eigenvalues,
)
from .entries import CertificateEntry, Justification, Verdict
from .fpoly import FiniteField, FpPoly, factor_mod, find_irreducible, is_separable_mod
from .intpoly import IntPoly, cyclotomic, discriminant, pn_poly, resultant

__version__ = "0.1.0"
