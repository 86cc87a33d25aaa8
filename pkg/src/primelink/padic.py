"""Fixed-precision p-adic integers and the cyclotomic discrete logarithm.

A PadicInt is a residue mod p**N together with the exact digit count N.
Arithmetic propagates the minimum precision of the operands, so reducing
first and computing after gives the same answer as computing first and
reducing after.

cyclotomic_dlog solves, digit by digit,

    (1 + p)**x = l  (mod p**(N+1))          for odd p,
    (-1)**s * 5**x = l  (mod 2**(N+2))      for p = 2, s = (l-1)/2 mod 2,

returning x as a PadicInt with N exact digits. These are the linking
numbers lk(l, p) with target prime p.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_prime
from .errors import HypothesisError

DEFAULT_PRECISION = 64


@dataclass(frozen=True)
class PadicInt:
    """Residue mod p**precision with min-precision arithmetic."""

    p: int
    digits: int
    precision: int

    def __post_init__(self) -> None:
        if self.precision < 1:
            raise ValueError("precision must be at least 1 digit")
        object.__setattr__(self, "digits", self.digits % self.p**self.precision)

    def _coerce(self, other: object) -> "PadicInt":
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError(f"mixed primes {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return PadicInt(self.p, other, self.precision)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "PadicInt":
        o = self._coerce(other)
        n = min(self.precision, o.precision)
        return PadicInt(self.p, self.digits + o.digits, n)

    __radd__ = __add__

    def __neg__(self) -> "PadicInt":
        return PadicInt(self.p, -self.digits, self.precision)

    def __sub__(self, other: object) -> "PadicInt":
        return self + (-self._coerce(other))

    def __rsub__(self, other: object) -> "PadicInt":
        return (-self) + self._coerce(other)

    def __mul__(self, other: object) -> "PadicInt":
        o = self._coerce(other)
        n = min(self.precision, o.precision)
        return PadicInt(self.p, self.digits * o.digits, n)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PadicInt":
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers are supported")
        return PadicInt(
            self.p, pow(self.digits, e, self.p**self.precision), self.precision
        )

    def __eq__(self, other: object) -> bool:
        """Agreement at the smaller of the two precisions."""
        if isinstance(other, int):
            other = PadicInt(self.p, other, self.precision)
        if not isinstance(other, PadicInt):
            return NotImplemented
        if self.p != other.p:
            return False
        n = min(self.precision, other.precision)
        return (self.digits - other.digits) % self.p**n == 0

    __hash__ = None  # type: ignore[assignment]

    def reduce(self, n: int) -> "PadicInt":
        """The same value at n <= precision exact digits."""
        if n > self.precision:
            raise ValueError(f"cannot raise precision {self.precision} to {n}")
        return PadicInt(self.p, self.digits % self.p**n, n)

    def lift(self) -> int:
        """The canonical integer representative in [0, p**precision)."""
        return self.digits

    def residue(self, m: int) -> int:
        """digits mod m, for m dividing p**precision."""
        if self.p**self.precision % m:
            raise ValueError(f"{m} does not divide p**precision")
        return self.digits % m

    def is_unit(self) -> bool:
        return self.digits % self.p != 0

    def __repr__(self) -> str:
        return f"{self.digits} + O({self.p}^{self.precision})"


def cyclotomic_dlog(
    l: int, p: int, n: int = DEFAULT_PRECISION
) -> tuple[int, PadicInt]:
    """Solve the 1-unit discrete log defining lk(l, p); see module docstring.

    Returns (sign_exp, x). sign_exp is 0 for odd p; for p = 2 it is
    (l - 1)/2 mod 2 and x satisfies 5**x = (-1)**sign_exp * l mod 2**(n+2).

    For odd p the equation is solvable only when l = 1 (mod p); otherwise
    a HypothesisError("... not in the 1-units") is raised.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if not is_prime(l):
        raise ValueError(f"l = {l} is not prime")
    if l == p:
        raise ValueError("cyclotomic_dlog needs l != p")
    if n < 1:
        raise ValueError("need at least one digit of precision")

    if p == 2:
        sign_exp = (l - 1) // 2 % 2
        modulus = 1 << (n + 2)
        target = (l if sign_exp == 0 else -l) % modulus
        base = 5
        x = 0
        for j in range(n):
            # x is exact mod 2**j; fix the next bit against mod 2**(j+3)
            step = 1 << (j + 3)
            if pow(base, x, step) != target % step:
                x += 1 << j
        if pow(base, x, modulus) != target:
            raise AssertionError("2-adic digit solve failed to converge")
        return sign_exp, PadicInt(2, x, n)

    if l % p != 1:
        raise HypothesisError(
            f"l = {l} is {l % p} (mod {p}): not in the 1-units of Z_{p}"
        )
    modulus = p ** (n + 1)
    target = l % modulus
    base = 1 + p
    x = 0
    for j in range(n):
        step = p ** (j + 2)
        want = target % step
        for digit in range(p):
            if pow(base, x + digit * p**j, step) == want:
                x += digit * p**j
                break
        else:
            raise AssertionError("p-adic digit solve failed to converge")
    if pow(base, x, modulus) != target:
        raise AssertionError("p-adic digit solve failed to converge")
    return 0, PadicInt(p, x, n)


__all__ = ["PadicInt", "cyclotomic_dlog", "DEFAULT_PRECISION"]
