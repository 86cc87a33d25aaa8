"""Split-prime linking in imaginary quadratic fields.

For an odd prime p split in k = Q(sqrt(-d)) as (p) = P1 P2, with class
number h prime to p, the two primes above p link: fix a generator beta of
the principal ideal P1^h; then lk(P1, P2) = 0 (mod p^n) exactly when
beta^(p-1) = 1 (mod P2^(n+1)). The mod-p nonvanishing of this linking
number is equivalent to the Iwasawa polynomial of the unramified-outside-
nothing tower being exactly T, i.e. the whole tame Galois group being
Z_p^2 (a linking-theoretic reading of Gold's criterion).

Everything here is elementary and exact: class numbers by reduced binary
quadratic forms, beta by Cornacchia's algorithm on p^h (with the 4 p^h
variant for half-integral coordinates when d = 3 mod 4), and the linking
evaluation inside Z/p^(n+1) through the two square roots of -d.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from . import arith
from .errors import HypothesisError


def class_number(d: int) -> int:
    """Class number of Q(sqrt(-d)) for squarefree d >= 1.

    Counts reduced forms (a, b, c) of the fundamental discriminant
    D = -d (d = 3 mod 4) or -4d: |b| <= a <= c, with b >= 0 when either
    bound is tight.
    """
    if d < 1 or not arith.squarefree(d):
        raise ValueError(f"d = {d} must be a squarefree positive integer")
    disc = -d if d % 4 == 3 else -4 * d
    h = 0
    for b in range(disc % 2, isqrt(-disc // 3) + 1, 2):
        m = (b * b - disc) // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                h += 1 if (b == 0 or a == b or a * a == m) else 2
            a += 1
    return h


def splits(p: int, d: int) -> bool:
    """Whether the odd prime p splits in Q(sqrt(-d)).

    Inert returns False; ramified (p dividing the discriminant) raises,
    since the split machinery is meaningless there.
    """
    if not arith.is_prime(p) or p == 2:
        raise ValueError(f"p = {p} must be an odd prime")
    if d < 1 or not arith.squarefree(d):
        raise ValueError(f"d = {d} must be a squarefree positive integer")
    if d % p == 0:
        raise HypothesisError(f"{p} ramifies in Q(sqrt(-{d}))")
    return arith.legendre(-d, p) == 1


@dataclass(frozen=True)
class BetaGenerator:
    """A generator (u + v sqrt(-d)) / (2 if half else 1) of P1^h."""

    p: int
    d: int
    h: int
    u: int
    v: int
    half: bool

    def __post_init__(self) -> None:
        scale = 4 if self.half else 1
        if self.u**2 + self.d * self.v**2 != scale * self.p**self.h:
            raise ValueError("wrong norm for a generator of P1^h")
        if self.u % self.p == 0 and self.v % self.p == 0:
            raise ValueError("generator is divisible by p")


def _cornacchia(m: int, d: int, r: int) -> tuple[int, int] | None:
    """A solution of x^2 + d y^2 = m from the root r of -d mod m, if the
    Euclidean descent lands on one."""
    a, b = m, r % m
    while b * b > m:
        a, b = b, a % b
    if b == 0:
        return None
    t = m - b * b
    if t % d:
        return None
    y = isqrt(t // d)
    if y * y * d != t:
        return None
    return b, y


def beta_generator(p: int, d: int, *, root_choice: int = 0) -> BetaGenerator:
    """A generator of P1^h for one of the two primes P1 over p.

    root_choice rotates which square root of -d seeds the search, so 0
    and 1 generally produce generators of the two conjugate ideals; the
    linking answer must not depend on it.
    """
    if not splits(p, d):
        raise HypothesisError(f"{p} does not split in Q(sqrt(-{d}))")
    h = class_number(d)
    m = p**h
    r = arith.sqrt_mod_prime_power(-d, p, h) if h > 1 else arith.sqrt_mod(-d, p)
    seeds = [r % m, (m - r) % m]
    if root_choice % 2:
        seeds.reverse()
    for seed in seeds:
        sol = _cornacchia(m, d, seed)
        if sol and not (sol[0] % p == 0 and sol[1] % p == 0):
            return BetaGenerator(p=p, d=d, h=h, u=sol[0], v=sol[1], half=False)
    if d % 4 == 3:
        # allow half-integral coordinates: u^2 + d v^2 = 4 p^h, u = v (2)
        m4 = 4 * m
        lifts = []
        for odd in (1, 3):
            # CRT a root mod 4 with each root mod p^h
            for base in seeds:
                k = (odd - base) * pow(m % 4, -1, 4) % 4
                lifts.append((base + k * m) % m4)
        for seed in lifts:
            sol = _cornacchia(m4, d, seed)
            if (
                sol
                and sol[0] % 2 == sol[1] % 2
                and not (sol[0] % p == 0 and sol[1] % p == 0)
            ):
                return BetaGenerator(
                    p=p, d=d, h=h, u=sol[0], v=sol[1], half=True
                )
    # tiny cases: exhaust v directly (the descent can miss thin solutions)
    scale = 4 if d % 4 == 3 else 1
    target = scale * m
    if target <= 10**13:
        for v in range(1, isqrt(target // d) + 1):
            t = target - d * v * v
            u = isqrt(t)
            if u * u != t:
                continue
            if scale == 4 and (u - v) % 2:
                continue
            if u % p == 0 and v % p == 0:
                continue
            return BetaGenerator(
                p=p, d=d, h=h, u=u, v=v, half=scale == 4
            )
    raise AssertionError(
        f"no primitive representation of {p}^{h} found for d = {d}"
    )


def split_linking_vanishes(
    p: int, d: int, n: int = 1, *, root_choice: int = 0
) -> bool:
    """Whether lk(P1, P2) = 0 (mod p^n) for the primes over p.

    Evaluates beta at the conjugate prime (the embedding where it stays a
    unit) and tests beta^(p-1) = 1 there, one p-adic digit beyond n.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    beta = beta_generator(p, d, root_choice=root_choice)
    mod = p ** (n + 1)
    r = arith.sqrt_mod_prime_power(-d, p, n + 1)
    halver = pow(2, -1, mod) if beta.half else 1
    images = [
        (beta.u + s * beta.v * r) * halver % mod for s in (1, -1)
    ]
    units = [t for t in images if t % p]
    if len(units) != 1:
        raise AssertionError("exactly one embedding should be a p-unit")
    return pow(units[0], p - 1, mod) == 1


@dataclass(frozen=True)
class GoldResult:
    """Verdict of the linking-number criterion for Q(sqrt(-d)) at p."""

    p: int
    d: int
    class_number: int
    linking_vanishes_mod_p: bool
    delta_is_t: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "class_number": self.class_number,
            "linking_vanishes_mod_p": self.linking_vanishes_mod_p,
            "iwasawa_polynomial_is_T": self.delta_is_t,
        }


def gold_test(p: int, d: int) -> GoldResult:
    """Decide whether the Iwasawa polynomial of Q(sqrt(-d)) at p is T.

    Requires p odd and split, class number prime to p, and excludes
    (p, d) = (3, 3): the hexagonal unit group breaks the presentation
    this criterion rests on.
    """
    if (p, d) == (3, 3):
        raise HypothesisError("Q(sqrt(-3)) at p = 3 is outside the criterion")
    if not splits(p, d):
        raise HypothesisError(f"{p} is inert in Q(sqrt(-{d}))")
    h = class_number(d)
    if h % p == 0:
        raise HypothesisError(
            f"class number {h} of Q(sqrt(-{d})) is divisible by {p}"
        )
    vanishes = split_linking_vanishes(p, d, 1)
    return GoldResult(
        p=p,
        d=d,
        class_number=h,
        linking_vanishes_mod_p=vanishes,
        delta_is_t=not vanishes,
    )


__all__ = [
    "BetaGenerator",
    "GoldResult",
    "beta_generator",
    "class_number",
    "gold_test",
    "split_linking_vanishes",
    "splits",
]
