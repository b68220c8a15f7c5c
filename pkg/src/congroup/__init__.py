"""Exact computation in totally disconnected contraction groups built from
truncated Laurent series over Z/p^m Z with the shift automorphism."""

from .series import EXACT, AbsValue, Modulus, TruncSeries, format_series, make_series, parse
from .cocycles import (
    BasisOmega,
    BitSeq,
    Eta,
    ParamOmega,
    ParamSeq,
    QuadCoboundary,
    Transformed,
    antisymmetrize,
    b_map,
    check_cocycle_identity,
    check_equivariance,
    evaluate,
)
from .extensions import ExtElement, center_test, commutator, equivalence_map, ext_identity
from .fingerprint import delta_profile, equivalent_on_window, fingerprint, recover_bits
from .sections import build_section, digit_expand, make_ext_projection_ctx, make_mod_reduction_ctx, verify_section
from .classify import (
    ContractionSpec,
    FiniteAbelianType,
    NuTable,
    RationalPoly,
    canonicalize_spec,
    composition_data,
    element_order,
    omega_p_contractive,
    primary_decompose,
    schur_cohn,
    spec_iso_test,
    theta_x,
)

__version__ = "0.1.0"
