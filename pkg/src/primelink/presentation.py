"""Koch-style presentations of tame pro-p Galois groups over Q.

For a finite set S of primes congruent to 1 mod p (augmented by infinity
or by an auxiliary prime q = 3 (mod 4) when p = 2), the Galois group of
the maximal pro-p extension of the cyclotomic Z_p-field unramified outside
S has a minimal presentation on generators x_0, ..., x_d, one per prime of
{p} u S, where x_i generates inertia above l_i. The relations are

    r_0 = [x_0^-1, y_0^-1],    r_i = x_i^(l_i - 1) [x_i^-1, y_i^-1],

with the Frobenius word y_i congruent mod [F, F] to a product of the x_j
raised to linking numbers (twisted by lk(l_i, q) when q plays the tame
role). The archimedean place and q contribute no generator.

When p = 2, every l_i = 1 (mod 4) and all mutual linking numbers are even,
each relation collapses mod the fourth Zassenhaus step to a product of
triple commutators whose exponents are mod-2 Milnor numbers; triples where
exactly the three permutation exponents survive are Borromean.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import arith
from .errors import HypothesisError
from .linking import LinkingMatrix, lk, linking_matrix
from .padic import DEFAULT_PRECISION, PadicInt
from .redei import mu2, redei_hypotheses


@dataclass(frozen=True)
class KochPresentation:
    """Presentation data: generators x_0..x_d and relation exponents.

    exponents[i][j] is the exponent of x_j in the Frobenius word y_i;
    the j = 0 entry is a p-adic integer (exact only up to the stated
    precision), the rest are plain integers.
    """

    p: int
    primes: tuple[int, ...]
    infinity: bool
    q: int | None
    precision: int
    exponents: tuple[tuple[PadicInt | int, ...], ...]

    @property
    def generators(self) -> tuple[str, ...]:
        return tuple(f"x{i}" for i in range(len(self.primes)))

    def frobenius_word(self, i: int) -> str:
        parts = []
        for j, e in enumerate(self.exponents[i]):
            if isinstance(e, PadicInt):
                if e == 0:
                    continue
                parts.append(f"x{j}^({e.digits} + O({self.p}^{e.precision}))")
            elif e:
                parts.append(f"x{j}^{e}")
        return " ".join(parts) if parts else "1"

    def relation_word(self, i: int) -> str:
        tame = f"x{i}^{self.primes[i] - 1} " if i else ""
        return f"{tame}[x{i}^-1, y{i}^-1]"

    def to_dict(self) -> dict:
        def enc(e: PadicInt | int) -> dict | int:
            if isinstance(e, PadicInt):
                return {"value": e.digits, "precision": e.precision}
            return e

        return {
            "p": self.p,
            "primes": list(self.primes),
            "infinity": self.infinity,
            "q": self.q,
            "precision": self.precision,
            "generators": list(self.generators),
            "relations": [self.relation_word(i) for i in range(len(self.primes))],
            "frobenius_words": [
                self.frobenius_word(i) for i in range(len(self.primes))
            ],
            "exponents": [[enc(e) for e in row] for row in self.exponents],
        }


def _validate_s(
    s: tuple[int, ...], p: int, infinity: bool, q: int | None
) -> None:
    if p == 2:
        if infinity == (q is not None):
            raise ValueError(
                "p = 2 needs exactly one of infinity=True or an auxiliary q"
            )
        if q is not None:
            if not arith.is_prime(q) or q % 4 != 3:
                raise HypothesisError(f"q = {q} must be a prime 3 (mod 4)")
            if q in s:
                raise ValueError("q must not repeat a prime of S")
    elif infinity or q is not None:
        raise ValueError("infinity and q are p = 2 decorations only")


def koch_presentation(
    s: list[int] | tuple[int, ...],
    p: int,
    *,
    infinity: bool = False,
    q: int | None = None,
    n: int = DEFAULT_PRECISION,
) -> KochPresentation:
    """The presentation attached to S (finite primes listed in s).

    For p = 2 the set S additionally contains infinity or the prime q,
    reflected by the flags; the Frobenius exponents then acquire the
    q-twist (l_j - 1)/2 * lk(l_i, q) on the odd columns.
    """
    s = tuple(s)
    _validate_s(s, p, infinity, q)
    matrix = linking_matrix(s, p, n=n)
    primes = matrix.primes
    twist = {}
    if q is not None:
        for li in primes:
            twist[li] = lk(li, q, 2, n=n).value
    rows = []
    for i, li in enumerate(primes):
        row: list[PadicInt | int] = []
        for j, lj in enumerate(primes):
            e = matrix.value(i, j).value
            if q is not None and j >= 1:
                e = e + (lj - 1) // 2 * twist[li]
            row.append(e)
        rows.append(tuple(row))
    return KochPresentation(
        p=p,
        primes=primes,
        infinity=infinity,
        q=q,
        precision=n,
        exponents=tuple(rows),
    )


def generator_rank(
    s: list[int] | tuple[int, ...],
    p: int,
    *,
    infinity: bool = False,
    q: int | None = None,
) -> int:
    """Minimal generator number of the group presented above.

    Computed as |S| + (places above p) + dim B - dim E/E^p, which is
    |S| + 1 - 1 for p = 2 and |S| + 1 otherwise: the obstruction space B
    vanishes over Q whenever p is odd, or p = 2 and S contains infinity
    or a prime 3 (mod 4). Outside those cases vanishing is not certified
    and the formula is refused.
    """
    s = tuple(s)
    if infinity and q is not None:
        raise ValueError("S contains at most one of infinity and q")
    if q is not None and (not arith.is_prime(q) or q % 4 != 3):
        raise HypothesisError(f"q = {q} must be a prime 3 (mod 4)")
    if p != 2 and (infinity or q is not None):
        raise ValueError("infinity and q are p = 2 decorations only")
    if p == 2 and not (infinity or q is not None):
        raise HypothesisError(
            "rank formula certified only when S contains infinity or q"
        )
    for l in s:
        if not arith.is_prime(l) or l == p:
            raise ValueError(f"{l} must be a prime different from {p}")
        if l % p != 1:
            raise HypothesisError(f"{l} is not 1 mod {p}")
    size = len(s) + (1 if (infinity or q is not None) else 0)
    return size + 1 - (1 if p == 2 else 0)


Factor = tuple[tuple[str, str, str], int]


@dataclass(frozen=True)
class MilnorRelations:
    """Relations mod the fourth Zassenhaus step, as triple commutators.

    factors[i] lists ([x_a, x_b, x_i], mu2(abi)) for a < b, then the
    degenerate shapes [x_a, x_i, x_a] (a < i) and [x_i, x_b, x_b]
    (b > i). Only mod-2 exponents matter.
    """

    primes: tuple[int, ...]
    factors: tuple[tuple[Factor, ...], ...]

    def nonzero(self, i: int) -> tuple[Factor, ...]:
        return tuple(f for f in self.factors[i] if f[1])

    def is_free_quotient(self) -> bool:
        """True when every exponent vanishes: the group agrees with the
        free pro-2 group mod the fourth Zassenhaus step."""
        return all(not f[1] for row in self.factors for f in row)

    def to_dict(self) -> dict:
        return {
            "primes": list(self.primes),
            "relations": [
                [
                    {"commutator": list(c), "exponent": e}
                    for c, e in row
                ]
                for row in self.factors
            ],
        }


def _mu_cached(cache: dict, la: int, lb: int, li: int) -> int:
    key = (min(la, lb), max(la, lb), li)
    if key not in cache:
        cache[key] = mu2(*key)
    return cache[key]


def relations_mod_f4(s: list[int] | tuple[int, ...]) -> MilnorRelations:
    """Milnor form of the relations for p = 2 and S = {s, infinity}.

    Requires every prime of s to be 1 (mod 4) and all mutual linking
    numbers, including those against 2, to be even.
    """
    s = tuple(s)
    _validate_s(s, 2, True, None)
    primes = (2, *s)
    d = len(s)
    for l in s:
        if not arith.is_prime(l) or l % 4 != 1:
            raise HypothesisError(f"{l} must be a prime 1 (mod 4)")
    if len(set(s)) != d:
        raise ValueError("primes of S must be distinct")
    for a in primes:
        for b in primes:
            if a != b and lk(a, b, 2, n=8).bit:
                raise HypothesisError(
                    f"lk({a}, {b}) is odd; relations do not collapse"
                )
    cache: dict = {}
    rows = []
    for i in range(d + 1):
        row: list[Factor] = []
        for a in range(d + 1):
            for b in range(a + 1, d + 1):
                e = _mu_cached(cache, primes[a], primes[b], primes[i])
                row.append(((f"x{a}", f"x{b}", f"x{i}"), e))
        for a in range(i):
            e = _mu_cached(cache, primes[a], primes[i], primes[a])
            row.append(((f"x{a}", f"x{i}", f"x{a}"), e))
        for b in range(i + 1, d + 1):
            e = _mu_cached(cache, primes[i], primes[b], primes[b])
            row.append(((f"x{i}", f"x{b}", f"x{b}"), e))
        rows.append(tuple(row))
    return MilnorRelations(primes=primes, factors=tuple(rows))


def is_borromean(l1: int, l2: int) -> bool:
    """True when (2, l1, l2) is proper Borromean mod 2: the three
    permutation Milnor numbers are 1 and all degenerate ones vanish."""
    if not redei_hypotheses(l1, l2, 2) or l1 % 4 != 1 or l2 % 4 != 1:
        return False
    if lk(l1, 2, 2, n=8).bit or lk(l2, 2, 2, n=8).bit:
        return False
    rel = relations_mod_f4((l1, l2))
    for i, row in enumerate(rel.factors):
        for (ca, cb, ci), e in row:
            is_perm = len({ca, cb, ci}) == 3
            if e != (1 if is_perm else 0):
                return False
    return True


def borromean_scan(bound: int, *, start: int = 3) -> Iterator[tuple[int, int, int]]:
    """Yield Borromean triples (2, l1, l2) with l1 < l2 < bound.

    Candidate primes are 1 (mod 8): evenness of linking against 2 forces
    that already. The scan is lazy; the Borromean check per pair runs the
    full relation collapse.
    """
    candidates = [
        l for l in arith.primes_in(start, bound) if l % 8 == 1
    ]
    for i, l1 in enumerate(candidates):
        for l2 in candidates[i + 1 :]:
            if lk(l1, l2, 2, n=8).bit or lk(l2, l1, 2, n=8).bit:
                continue
            if is_borromean(l1, l2):
                yield (2, l1, l2)


__all__ = [
    "KochPresentation",
    "MilnorRelations",
    "borromean_scan",
    "generator_rank",
    "is_borromean",
    "koch_presentation",
    "relations_mod_f4",
]
