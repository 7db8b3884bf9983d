"""Normalized chains, integral and field homology, and the equivalence witness."""

from .chains import (
    DEFAULT_COEFFS, Q, Z, ChainComplex, HomologyProfile, chain_complex, field_ranks_from_factors, homology,
    parse_coeffs,
)
from .smith import invariant_factors, rank_mod_p, rank_over_q
from .witness import (
    EquivalenceWitnessReport, InducedIso, g_equivalence_witness, identity_check, induced_iso, induced_rank,
)

__all__ = [
    "DEFAULT_COEFFS", "Q", "Z", "ChainComplex", "EquivalenceWitnessReport", "HomologyProfile", "InducedIso",
    "chain_complex", "field_ranks_from_factors", "g_equivalence_witness", "homology", "identity_check",
    "induced_iso", "induced_rank", "invariant_factors", "parse_coeffs", "rank_mod_p", "rank_over_q",
]
