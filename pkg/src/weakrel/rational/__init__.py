"""Infinite representations over Q^n: exact points, relation families, samplers and verifiers."""
from .points import RationalTuple, SignedPoint, format_pair, lex_level, parse_pair, parse_point
from .relations import (Delta, DeltaAlpha, EvenT, OddR, SymbolicRelation, composition_table,
                        even_indices, member, member_by_profile, odd_indices, parse_family, profile)
from .sampling import SamplingStrategy, generate_member, parse_mix, sample_pairs
from .verify import verify_composition, verify_embedding, verify_structure
from .witness import find_witness

__all__ = [
    "RationalTuple", "SignedPoint", "lex_level", "parse_pair", "parse_point", "format_pair",
    "SymbolicRelation", "OddR", "EvenT", "Delta", "DeltaAlpha", "member", "member_by_profile",
    "profile", "parse_family", "composition_table", "odd_indices", "even_indices",
    "SamplingStrategy", "parse_mix", "sample_pairs", "generate_member",
    "find_witness", "verify_composition", "verify_structure", "verify_embedding",
]
