"""Linking numbers of primes over Q.

For distinct primes l, l' with l' != p and l' = 1 (mod p), the linking
number lk(l, l') is the discrete log of l**(-1) to the base alpha, where
alpha is the canonical (smallest) primitive root mod l'. When the target
is p itself the linking number is the p-adic exponent produced by
padic.cyclotomic_dlog. lk(l, l) = 0 by convention.

Raw finite values live in [0, l'-1); theorems consume them through the
mod-2 / mod-4 / mod-p accessors, which are independent of the choice of
primitive root where the source theorems need them to be.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import arith
from .errors import HypothesisError
from .padic import DEFAULT_PRECISION, PadicInt, cyclotomic_dlog


@dataclass(frozen=True)
class LkValue:
    """One linking number: finite-target integer or p-adic exponent."""

    kind: str  # "finite" | "cyclotomic"
    value: int | PadicInt
    sign_exp: int = 0  # only meaningful for kind == "cyclotomic", p = 2

    def __post_init__(self) -> None:
        if self.kind not in ("finite", "cyclotomic"):
            raise ValueError(f"unknown LkValue kind {self.kind!r}")

    def mod(self, m: int) -> int:
        """The value reduced mod m (m must divide p**N for cyclotomic)."""
        if self.kind == "finite":
            assert isinstance(self.value, int)
            return self.value % m
        assert isinstance(self.value, PadicInt)
        return self.value.residue(m)

    @property
    def bit(self) -> int:
        """Parity of the linking number."""
        return self.mod(2)

    def __repr__(self) -> str:
        if self.kind == "finite":
            return f"lk={self.value}"
        return f"lk={self.value!r} (sign_exp={self.sign_exp})"


def lk(l: int, lprime: int, p: int, n: int = DEFAULT_PRECISION) -> LkValue:
    """Linking number lk(l, l') with ambient prime p.

    l and l' are primes; l' is either p (cyclotomic kind) or satisfies
    l' = 1 (mod p) (finite kind). lk(l, l) = 0.
    """
    if not arith.is_prime(l):
        raise ValueError(f"l = {l} is not prime")
    if not arith.is_prime(lprime):
        raise ValueError(f"l' = {lprime} is not prime")
    if not arith.is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if l == lprime:
        return LkValue("finite", 0)
    if lprime == p:
        sign_exp, x = cyclotomic_dlog(l, p, n)
        return LkValue("cyclotomic", x, sign_exp)
    if lprime % p != 1:
        raise HypothesisError(
            f"target {lprime} is {lprime % p} (mod {p}); finite linking "
            f"numbers need l' = 1 (mod p)"
        )
    alpha = arith.primitive_root(lprime)
    inv = pow(l, -1, lprime)
    return LkValue("finite", arith.dlog(alpha, inv, lprime))


def lk_tilde(
    li: int,
    lj: int,
    p: int,
    q: int | None = None,
    n: int = DEFAULT_PRECISION,
) -> int:
    """Twisted linking number mod p.

    For odd p this is lk(li, lj) mod p and q is ignored. For p = 2 it is
    lk(li, lj) + [lj = 3 (mod 4)] * lk(li, q) mod 2, which needs q (a prime
    = 3 mod 4) to be supplied.
    """
    if p == 2:
        if q is None:
            raise ValueError("p = 2 twisted linking numbers need q")
        if not arith.is_prime(q) or q % 4 != 3:
            raise ValueError(f"q = {q} must be a prime = 3 (mod 4)")
        base = lk(li, lj, p, n).mod(2)
        if lj % 4 == 3:
            base = (base + lk(li, q, p, n).mod(2)) % 2
        return base
    return lk(li, lj, p, n).mod(p)


@dataclass(frozen=True)
class LinkingMatrix:
    """All pairwise linking numbers of {p} | S, with l_0 = p first."""

    p: int
    primes: tuple[int, ...]
    precision: int
    entries: dict[tuple[int, int], LkValue] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.primes)

    def value(self, i: int, j: int) -> LkValue:
        return self.entries[(i, j)]

    def mod(self, i: int, j: int, m: int) -> int:
        return self.entries[(i, j)].mod(m)

    def parity(self, i: int, j: int) -> int:
        return self.entries[(i, j)].bit

    def render(self, m: int | None = None) -> list[list[object]]:
        """Rows of raw values (m=None) or reductions mod m."""
        out: list[list[object]] = []
        for i in range(self.size):
            row: list[object] = []
            for j in range(self.size):
                v = self.entries[(i, j)]
                if m is None:
                    row.append(v.value if v.kind == "finite" else repr(v))
                else:
                    row.append(v.mod(m))
            out.append(row)
        return out


def linking_matrix(
    s: list[int] | tuple[int, ...], p: int, n: int = DEFAULT_PRECISION
) -> LinkingMatrix:
    """The (|S|+1) x (|S|+1) linking matrix of S with l_0 = p prepended.

    Every l in S must be a prime = 1 (mod p) distinct from p; order is
    preserved. Diagonal entries are 0 by the lk(l, l) convention.
    """
    primes = [p, *s]
    seen: set[int] = set()
    for l in primes:
        if not arith.is_prime(l):
            raise ValueError(f"{l} is not prime")
        if l in seen:
            raise ValueError(f"duplicate prime {l} in S")
        seen.add(l)
    for l in s:
        if l % p != 1:
            raise HypothesisError(
                f"S member {l} is {l % p} (mod {p}), expected 1 (mod {p})"
            )
    entries: dict[tuple[int, int], LkValue] = {}
    for i, li in enumerate(primes):
        for j, lj in enumerate(primes):
            entries[(i, j)] = (
                LkValue("finite", 0) if i == j else lk(li, lj, p, n)
            )
    return LinkingMatrix(p, tuple(primes), n, entries)


__all__ = ["LkValue", "LinkingMatrix", "lk", "lk_tilde", "linking_matrix"]
