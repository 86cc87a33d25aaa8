"""Circular sets of primes and mildness certificates.

A set {p} u {l_1, ..., l_d} with d odd is circular when the indices can be
arranged around a cycle so that primes at even positions avoid 3 (mod 4)
when p = 2, linking numbers between even positions vanish mod p, and the
product of twisted linking numbers taken clockwise around the cycle
differs mod p from the counterclockwise product. A circular arrangement
certifies that the tame Galois group is mild: deficiency zero,
cohomological dimension 2, not p-adic analytic.

The certificate object records each condition separately so a failed
check names the culprit. For p = 2 the set is augmented by an auxiliary
prime q = 3 (mod 4), which twists linking numbers toward targets that are
3 (mod 4) but never joins the cycle itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import prod

from . import arith
from .errors import HypothesisError
from .linking import linking_matrix, lk_tilde


@dataclass(frozen=True)
class Condition:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class CircularityReport:
    """Outcome of the circularity test for one arrangement sigma.

    sigma maps cycle positions 0..d to indices into primes (whose 0th
    entry is always p). forward and backward are the two cycle products
    of twisted linking numbers mod p.
    """

    p: int
    primes: tuple[int, ...]
    q: int | None
    sigma: tuple[int, ...]
    conditions: tuple[Condition, ...]
    forward: int
    backward: int

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.conditions)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def cycle(self) -> tuple[int, ...]:
        return tuple(self.primes[i] for i in self.sigma)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "primes": list(self.primes),
            "q": self.q,
            "sigma": list(self.sigma),
            "cycle": list(self.cycle),
            "circular": self.ok,
            "forward_product": self.forward,
            "backward_product": self.backward,
            "conditions": [
                {"name": c.name, "ok": c.ok, "detail": c.detail}
                for c in self.conditions
            ],
        }


def _validate(s: tuple[int, ...], p: int, q: int | None) -> None:
    d = len(s)
    if d <= 1 or d % 2 == 0:
        raise HypothesisError(f"need an odd number d > 1 of primes, got d = {d}")
    if p == 2:
        if q is None:
            raise ValueError("p = 2 needs the auxiliary prime q")
        if not arith.is_prime(q) or q % 4 != 3:
            raise HypothesisError(f"q = {q} must be a prime 3 (mod 4)")
        if q in s:
            raise HypothesisError("q must not lie in the prime set itself")
    elif q is not None:
        raise ValueError("q is a p = 2 decoration only")


def _matrices(
    s: tuple[int, ...], p: int, q: int | None
) -> tuple[tuple[int, ...], list[list[int]], list[list[int]]]:
    """(primes, raw lk mod p, twisted lk mod p) over {p} u s."""
    matrix = linking_matrix(s, p, n=16)
    primes = matrix.primes
    size = len(primes)
    raw = [[matrix.mod(i, j, p) for j in range(size)] for i in range(size)]
    tilde = [
        [
            lk_tilde(primes[i], primes[j], p, q=q, n=16) if i != j else 0
            for j in range(size)
        ]
        for i in range(size)
    ]
    return primes, raw, tilde


def _report(
    p: int,
    primes: tuple[int, ...],
    q: int | None,
    sigma: tuple[int, ...],
    raw: list[list[int]],
    tilde: list[list[int]],
) -> CircularityReport:
    d = len(primes) - 1
    evens = range(0, d + 1, 2)

    if p == 2:
        bad = [i for i in evens if primes[sigma[i]] % 4 == 3]
        residue_ok = not bad
        residue_detail = (
            "even positions avoid 3 (mod 4)"
            if residue_ok
            else f"position {bad[0]} holds {primes[sigma[bad[0]]]} = 3 (mod 4)"
        )
    else:
        residue_ok, residue_detail = True, "vacuous for odd p"

    linking_ok, linking_detail = True, "all even-even linking numbers vanish"
    for i in evens:
        for j in evens:
            if i != j and raw[sigma[i]][sigma[j]] != 0:
                linking_ok = False
                linking_detail = (
                    f"lk({primes[sigma[i]]}, {primes[sigma[j]]}) "
                    f"!= 0 (mod {p})"
                )
                break
        if not linking_ok:
            break

    forward = prod(
        tilde[sigma[i]][sigma[(i + 1) % (d + 1)]] for i in range(d + 1)
    ) % p
    backward = prod(
        tilde[sigma[(i + 1) % (d + 1)]][sigma[i]] for i in range(d + 1)
    ) % p
    products_ok = forward != backward
    products_detail = (
        f"cycle products {forward} and {backward} differ mod {p}"
        if products_ok
        else f"both cycle products are {forward} mod {p}"
    )

    return CircularityReport(
        p=p,
        primes=primes,
        q=q,
        sigma=sigma,
        conditions=(
            Condition("even-positions-residue", residue_ok, residue_detail),
            Condition("even-even-linking", linking_ok, linking_detail),
            Condition("cycle-products", products_ok, products_detail),
        ),
        forward=forward,
        backward=backward,
    )


def is_circular(
    s: list[int] | tuple[int, ...],
    p: int,
    *,
    q: int | None = None,
    sigma: tuple[int, ...] | None = None,
) -> CircularityReport:
    """Test one arrangement (identity order by default) for circularity.

    The report is truthy iff all three conditions hold; it never raises
    on a mere condition failure, only on inadmissible input.
    """
    s = tuple(s)
    _validate(s, p, q)
    primes, raw, tilde = _matrices(s, p, q)
    if sigma is None:
        sigma = tuple(range(len(primes)))
    else:
        sigma = tuple(sigma)
        if sorted(sigma) != list(range(len(primes))):
            raise ValueError(
                f"sigma must be a permutation of 0..{len(primes) - 1}"
            )
    return _report(p, primes, q, sigma, raw, tilde)


def find_circular_order(
    s: list[int] | tuple[int, ...],
    p: int,
    *,
    q: int | None = None,
) -> CircularityReport | None:
    """First arrangement (lexicographic in sigma) that passes, or None.

    Exhausts all (d+1)! arrangements, so the set size is capped; the per
    arrangement checks are cheap table lookups.
    """
    s = tuple(s)
    _validate(s, p, q)
    if len(s) > 9:
        raise ValueError("arrangement search is factorial; need d <= 9")
    primes, raw, tilde = _matrices(s, p, q)
    size = len(primes)
    bad_residue = frozenset(
        i for i, l in enumerate(primes) if p == 2 and l % 4 == 3
    )
    evens = range(0, size, 2)
    for sigma in permutations(range(size)):
        if any(sigma[i] in bad_residue for i in evens):
            continue
        if any(
            raw[sigma[i]][sigma[j]] for i in evens for j in evens if i != j
        ):
            continue
        report = _report(p, primes, q, sigma, raw, tilde)
        if report.ok:
            return report
    return None


__all__ = ["CircularityReport", "Condition", "find_circular_order", "is_circular"]
