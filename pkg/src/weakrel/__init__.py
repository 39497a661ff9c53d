"""Weakening relations on finite ordered contexts, the distributive InFL-algebras
they form, Sugihara chains, and exact rational representations of those chains."""
__version__ = "0.1.0"

from .algebra import (DInFLAlgebra, build_algebra, generate_subalgebra, hasse_dot, is_cyclic,
                      product_context, verify_infl_axioms, verify_product_iso)
from .chains import build_chain, direct_reduct_check, verify_sugihara_axioms
from .context import RepContext, enumerate_upsets, load_context, make_context, precedes
from .errors import (ContractError, EmptyRelationError, ResourceError, StructuralError,
                     ValidationError, WeakrelError, WitnessSearchError)
from .finite import FiniteAlgebra, Homomorphism, find_embedding, verify_homomorphism
from .kernels import BACKEND
from .relcore import Carrier, Rel, Universe, verify_relation_identities
from .report import VerificationReport

__all__ = [
    "__version__", "BACKEND",
    "Carrier", "Universe", "Rel", "verify_relation_identities",
    "RepContext", "make_context", "load_context", "precedes", "enumerate_upsets",
    "DInFLAlgebra", "build_algebra", "verify_infl_axioms", "is_cyclic", "generate_subalgebra",
    "product_context", "verify_product_iso", "hasse_dot",
    "FiniteAlgebra", "Homomorphism", "find_embedding", "verify_homomorphism",
    "build_chain", "verify_sugihara_axioms", "direct_reduct_check",
    "VerificationReport",
    "WeakrelError", "StructuralError", "ValidationError", "ResourceError",
    "EmptyRelationError", "ContractError", "WitnessSearchError",
]
