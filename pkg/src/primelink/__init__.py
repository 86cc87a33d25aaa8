"""Linking numbers of primes and the invariants built on top of them.

The package computes, exactly and at desk scale:

* linking numbers lk(l, l') of prime numbers (discrete logarithms of
  inverses to canonical primitive-root bases, with a p-adic variant when
  the target prime is p itself);
* Redei symbols [la, lb, li] and the mod-2 Milnor numbers mu_2 they encode;
* Koch-type presentations of Galois groups with restricted ramification,
  including triple-commutator relation classes and Borromean triples;
* circularity certificates for sets of primes (mildness criterion);
* Fitting-ideal approximations of Iwasawa modules over Z_2[[T]] via pro-2
  Fox calculus, with closed-form checks for quadratic fields;
* Gold's lambda-invariant criterion for imaginary quadratic fields.
"""

from .errors import (
    HypothesisError,
    NormalizationError,
    NotImplementedVariant,
    SearchExhausted,
)

__version__ = "0.1.0"

__all__ = [
    "HypothesisError",
    "NormalizationError",
    "NotImplementedVariant",
    "SearchExhausted",
    "__version__",
]
