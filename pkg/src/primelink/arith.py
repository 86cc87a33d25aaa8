"""Exact modular arithmetic: primality, residue symbols, primitive roots,
discrete logarithms and modular square roots.

Everything here is deterministic and exact at desk scale (moduli below
2**64). The residue-symbol functions follow the classical definitions:

* ``legendre(a, l)``     Legendre symbol, l an odd prime.
* ``jacobi(a, n)``       Jacobi symbol, n odd and positive.
* ``kronecker(a, n)``    Kronecker symbol, any nonzero n.
* ``quartic_symbol``     rational quartic residue symbol (z/l)_4, defined
  for l = 2 on z = 1 (mod 8) by (-1)**((z-1)/8) and for primes l = 1 (mod 4)
  on quadratic residues z by z**((l-1)/4) mod l.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

from .errors import HypothesisError

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3e24 (Sorenson &
# Webster), which comfortably covers the supported range n < 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_DESK_LIMIT = 2**64


def is_prime(n: int) -> bool:
    """Deterministic primality test for 2 <= n < 2**64."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"expected an integer, got {type(n).__name__}")
    if n < 2:
        raise ValueError(f"is_prime expects n >= 2, got {n}")
    if n >= _DESK_LIMIT:
        raise ValueError(f"n = {n} exceeds the supported range (< 2**64)")
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _require_prime(l: int, what: str = "modulus") -> None:
    if not is_prime(l):
        raise ValueError(f"{what} {l} is not prime")


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n, by binary reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), extending Jacobi to all nonzero n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor out 2s of n: (a/2) = 0, +1, -1 for a even, a = +-1 (8), a = +-3 (8)
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    return result * jacobi(a, n)


def legendre(a: int, l: int) -> int:
    """Legendre symbol (a/l) for an odd prime l; 0 iff l divides a."""
    _require_prime(l)
    if l == 2:
        raise ValueError("legendre needs an odd prime; use kronecker for 2")
    return jacobi(a, l)


def quartic_symbol(z: int, l: int) -> int:
    """Rational quartic residue symbol (z/l)_4, valued in {+1, -1}.

    For l = 2 the symbol is (-1)**((z-1)/8), defined only on z = 1 (mod 8).
    For an odd prime l it is z**((l-1)/4) mod l, defined when l = 1 (mod 4)
    and z is a quadratic residue (so the power lands in {+1, -1}).

    Raises ValueError if l is not prime and HypothesisError if l is prime
    but (z, l) violates the domain above. The two failure modes are kept
    distinct on purpose: the latter is a meaningful arithmetic obstruction.
    """
    _require_prime(l)
    if l == 2:
        if z % 8 != 1:
            raise HypothesisError(
                f"(z/2)_4 needs z = 1 (mod 8); z = {z} is {z % 8} (mod 8)"
            )
        return -1 if (z - 1) // 8 % 2 else 1
    if l % 4 != 1:
        raise HypothesisError(
            f"(z/l)_4 needs l = 1 (mod 4) or l = 2, got l = {l}"
        )
    if legendre(z, l) != 1:
        raise HypothesisError(
            f"(z/{l})_4 undefined: {z} is not a nonzero square mod {l}"
        )
    r = pow(z, (l - 1) // 4, l)
    if r == 1:
        return 1
    if r == l - 1:
        return -1
    raise AssertionError(f"z^((l-1)/4) = {r} mod {l} not +-1 for residue z")


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    """Ascending distinct prime factors of n >= 1, by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=None)
def primitive_root(l: int) -> int:
    """Smallest positive primitive root mod the odd prime l."""
    _require_prime(l)
    if l == 2:
        raise ValueError("primitive_root expects an odd prime")
    phi = l - 1
    factors = _prime_factors(phi)
    for g in range(2, l):
        if all(pow(g, phi // q, l) != 1 for q in factors):
            return g
    raise AssertionError(f"no primitive root below {l}")  # unreachable


def dlog(base: int, target: int, l: int) -> int:
    """Discrete log x with base**x = target (mod l), 0 <= x < l - 1.

    base must be a primitive root mod the odd prime l and target must be
    coprime to l. Baby-step/giant-step above 10**4, linear scan below.
    """
    _require_prime(l)
    if l == 2:
        raise ValueError("dlog expects an odd prime modulus")
    target %= l
    if target == 0:
        raise ValueError(f"target divisible by {l} has no discrete log")
    base %= l
    phi = l - 1
    if any(pow(base, phi // q, l) == 1 for q in _prime_factors(phi)):
        raise ValueError(f"base {base} is not a generator mod {l}")
    if l < 10**4:
        acc = 1
        for x in range(phi):
            if acc == target:
                return x
            acc = acc * base % l
        raise AssertionError("generator scan missed the target")
    m = isqrt(phi) + 1
    baby = {}
    acc = 1
    for j in range(m):
        baby.setdefault(acc, j)
        acc = acc * base % l
    # giant steps multiply by base**(-m)
    step = pow(base, -m, l)
    gamma = target
    for i in range(m + 1):
        if gamma in baby:
            return (i * m + baby[gamma]) % phi
        gamma = gamma * step % l
    raise AssertionError("baby-step/giant-step missed the target")


def sqrt_mod(a: int, l: int) -> int:
    """A square root of a mod the odd prime l, by Tonelli-Shanks.

    Returns the root r with 0 <= r < l (the caller picks between r and
    l - r). Raises HypothesisError when a is a non-residue.
    """
    _require_prime(l)
    if l == 2:
        raise ValueError("sqrt_mod expects an odd prime; see sqrt_2adic")
    a %= l
    if a == 0:
        return 0
    if legendre(a, l) != 1:
        raise HypothesisError(f"{a} is not a square mod {l}")
    if l % 4 == 3:
        return pow(a, (l + 1) // 4, l)
    # write l - 1 = q * 2**s with q odd
    q, s = l - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, l) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, l), pow(a, q, l), pow(a, (q + 1) // 2, l)
    while t != 1:
        # find least i with t**(2**i) = 1
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % l
            i += 1
        b = pow(c, 1 << (m - i - 1), l)
        m, c = i, b * b % l
        t, r = t * c % l, r * b % l
    return r


def sqrt_mod_prime_power(a: int, l: int, k: int) -> int:
    """A square root of a mod l**k for an odd prime l not dividing a.

    Hensel lifting of sqrt_mod; the derivative 2r is a unit, so each lift
    step is exact.
    """
    if k < 1:
        raise ValueError("precision k must be >= 1")
    if a % l == 0:
        raise ValueError("sqrt_mod_prime_power needs a unit argument")
    r = sqrt_mod(a % l, l)
    mod = l
    while mod < l**k:
        mod = min(mod * mod, l**k)
        # Newton step: r <- r - (r^2 - a) / (2r)
        r = (r - (r * r - a) * pow(2 * r, -1, mod)) % mod
    return r % l**k


def sqrt_2adic(a: int, k: int) -> int:
    """A square root of a mod 2**k for a = 1 (mod 8), k >= 3.

    The returned root is the one congruent to 1 mod 4; the full set of
    roots mod 2**k is {+-r, +-r + 2**(k-1)}.
    """
    if k < 3:
        raise ValueError("need k >= 3 digits for a 2-adic square root")
    if a % 8 != 1:
        raise HypothesisError(f"{a} = {a % 8} (mod 8) is not a 2-adic square")
    r = 1
    for j in range(3, k):
        # r is a root mod 2**j; correct the next bit
        if (r * r - a) % (1 << (j + 1)):
            r += 1 << (j - 1)
    return r % (1 << k)


def valuation(n: int, p: int) -> int:
    """Largest v with p**v dividing n, for n != 0."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def squarefree(n: int) -> bool:
    """True iff n > 0 has no repeated prime factor."""
    if n <= 0:
        raise ValueError("squarefree expects a positive integer")
    if n % 4 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 2
    return True


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi), by sieve. Desk-scale helper for scans."""
    if hi <= lo or hi <= 2:
        return []
    if hi > 10**7:
        raise ValueError("scan range too large (desk scale is < 1e7)")
    sieve = bytearray([1]) * hi
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [n for n in range(max(lo, 2), hi) if sieve[n]]


__all__ = [
    "is_prime",
    "jacobi",
    "kronecker",
    "legendre",
    "quartic_symbol",
    "primitive_root",
    "dlog",
    "sqrt_mod",
    "sqrt_mod_prime_power",
    "sqrt_2adic",
    "valuation",
    "squarefree",
    "primes_in",
    "gcd",
]
