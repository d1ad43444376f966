"""Exact computer algebra for distinguished pre-Nichols algebras of
diagonal braidings: root systems, PBW data, Hilbert series, and the
coproduct/derivation identities, all over cyclotomic fields."""

__version__ = "0.1.0"

from .bichar import BraidingMatrix, chi_eval, lambda_scalar, pullback, qtilde
from .cyclo import CycNum, CyclotomicContext, get_context, q_binomial, q_factorial, q_number
from .freealg import FreeElem, TensorElem, coproduct, partial_k, partial_l
from .quotient import NICHOLS, QuotientView, RelationSet
from .roots import explore_groupoid, positive_roots, reflect_object

__all__ = [
    "BraidingMatrix",
    "CycNum",
    "CyclotomicContext",
    "FreeElem",
    "NICHOLS",
    "QuotientView",
    "RelationSet",
    "TensorElem",
    "chi_eval",
    "coproduct",
    "explore_groupoid",
    "get_context",
    "lambda_scalar",
    "partial_k",
    "partial_l",
    "positive_roots",
    "pullback",
    "q_binomial",
    "q_factorial",
    "q_number",
    "qtilde",
    "reflect_object",
]
