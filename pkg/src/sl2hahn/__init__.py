"""Exact matrix models of sl2 tensor products, the universal Hahn algebra
and Terwilliger algebras of Johnson graphs."""

__version__ = "0.1.0"

from .exactarith import Rational, RepMatrix, span_closure  # noqa: E402
from .hahn import HahnRep, build_vd, check_hahn_relations, classify_module  # noqa: E402
from .johnson import terwilliger_dim_bruteforce, terwilliger_dim_formula  # noqa: E402
from .sl2rep import build_Ln, build_tensor_rep  # noqa: E402

__all__ = [
    "Rational",
    "RepMatrix",
    "span_closure",
    "HahnRep",
    "build_vd",
    "check_hahn_relations",
    "classify_module",
    "terwilliger_dim_bruteforce",
    "terwilliger_dim_formula",
    "build_Ln",
    "build_tensor_rep",
]
