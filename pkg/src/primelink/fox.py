"""Free-group words, Magnus expansions, and Fox derivatives into Lambda.

Lambda is the power series ring Z_2[[T]], truncated here to degree D with
coefficients kept mod 2^M. The specialization Phi sends the two lifts
w01, w02 of the cyclotomic generator to 1 + T and every other generator
to 1. The Fox derivative follows the product rule
d(uv) = du + u dv, so a prefix acts through Phi as a power of 1 + T.

Words whose Phi-image is trivial (total w01 + w02 exponent zero) form
the kernel on which derivatives are Z_2-linear in the exponents; the
KernelProduct type carries such bases with 2-adic exponents and is the
input format for the relator calculus built on top of this module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .padic import PadicInt

DEFAULT_BITS = 16
DEFAULT_DEGREE = 8

_GEN_PATTERN = re.compile(r"^[a-z][a-z0-9]*$")
_PHI_GEN_PATTERN = re.compile(r"^(w01|w02|w[1-9][0-9]*)$")


def _check_generator(gen: str) -> None:
    if not _GEN_PATTERN.match(gen):
        raise ValueError(f"unknown generator {gen!r}")


def _weight(gen: str) -> int:
    return 1 if gen in ("w01", "w02") else 0


def phi_weight(gen: str) -> int:
    """Exponent of 1 + T in the Phi-image of a generator."""
    if not _PHI_GEN_PATTERN.match(gen):
        raise ValueError(f"unknown generator {gen!r}")
    return _weight(gen)


def binom(e: int, k: int) -> int:
    """Binomial coefficient C(e, k) for any integer e and k >= 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if e >= 0:
        if k > e:
            return 0
        num = 1
        for i in range(k):
            num = num * (e - i) // (i + 1)
        return num
    return (-1) ** k * binom(-e + k - 1, k)


@dataclass(frozen=True)
class LambdaElem:
    """Element of Z_2[T]/(T^(D+1)) with coefficients mod 2^M."""

    coeffs: tuple[int, ...]
    bits: int = DEFAULT_BITS

    def __post_init__(self) -> None:
        mask = (1 << self.bits) - 1
        object.__setattr__(
            self, "coeffs", tuple(c & mask for c in self.coeffs)
        )

    @property
    def degree_cap(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, bits: int = DEFAULT_BITS, deg: int = DEFAULT_DEGREE) -> "LambdaElem":
        return cls((0,) * (deg + 1), bits)

    @classmethod
    def const(cls, c: int, bits: int = DEFAULT_BITS, deg: int = DEFAULT_DEGREE) -> "LambdaElem":
        return cls((c,) + (0,) * deg, bits)

    @classmethod
    def one(cls, bits: int = DEFAULT_BITS, deg: int = DEFAULT_DEGREE) -> "LambdaElem":
        return cls.const(1, bits, deg)

    @classmethod
    def t_power(cls, j: int, bits: int = DEFAULT_BITS, deg: int = DEFAULT_DEGREE) -> "LambdaElem":
        if not 0 <= j <= deg:
            raise ValueError(f"T^{j} is outside the degree cap {deg}")
        return cls(tuple(1 if k == j else 0 for k in range(deg + 1)), bits)

    @classmethod
    def one_plus_t_pow(cls, e: int, bits: int = DEFAULT_BITS, deg: int = DEFAULT_DEGREE) -> "LambdaElem":
        """(1 + T)^e for any integer e, via generalized binomials."""
        return cls(tuple(binom(e, k) for k in range(deg + 1)), bits)

    @classmethod
    def geometric(cls, e: int, bits: int = DEFAULT_BITS, deg: int = DEFAULT_DEGREE) -> "LambdaElem":
        """((1 + T)^e - 1) / T: the Fox image of a w01- or w02-power."""
        return cls(tuple(binom(e, k + 1) for k in range(deg + 1)), bits)

    def _match(self, other: "LambdaElem") -> None:
        if self.bits != other.bits or len(self.coeffs) != len(other.coeffs):
            raise ValueError("mixed Lambda truncation parameters")

    def __add__(self, other: "LambdaElem") -> "LambdaElem":
        self._match(other)
        return LambdaElem(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.bits
        )

    def __neg__(self) -> "LambdaElem":
        return LambdaElem(tuple(-a for a in self.coeffs), self.bits)

    def __sub__(self, other: "LambdaElem") -> "LambdaElem":
        return self + (-other)

    def __mul__(self, other: object) -> "LambdaElem":
        if isinstance(other, int):
            return LambdaElem(tuple(other * a for a in self.coeffs), self.bits)
        if not isinstance(other, LambdaElem):
            return NotImplemented
        self._match(other)
        deg = self.degree_cap
        out = [0] * (deg + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(deg + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return LambdaElem(tuple(out), self.bits)

    __rmul__ = __mul__

    def reduce_mod_ideal(self, n: int) -> "LambdaElem":
        """Canonical representative modulo (2, T)^n."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        out = []
        for j, c in enumerate(self.coeffs):
            k = max(0, n - j)
            out.append(c % (1 << k) if k else 0)
        return LambdaElem(tuple(out), self.bits)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def degree(self) -> int:
        """Largest exponent with a nonzero coefficient, -1 for zero."""
        for j in range(self.degree_cap, -1, -1):
            if self.coeffs[j]:
                return j
        return -1

    def shift(self) -> "LambdaElem":
        """Multiplication by T."""
        return LambdaElem((0,) + self.coeffs[:-1], self.bits)

    def __str__(self) -> str:
        parts = []
        for j in range(self.degree_cap, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append("T" if c == 1 else f"{c}T")
            else:
                parts.append(f"T^{j}" if c == 1 else f"{c}T^{j}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Word:
    """Normal-form word in the free group on named generators."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        for gen, exp in self.letters:
            _check_generator(gen)
            if exp == 0:
                raise ValueError("zero exponent in normal form")
        for (a, _), (b, _) in zip(self.letters, self.letters[1:]):
            if a == b:
                raise ValueError("adjacent letters with equal generators")

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[str, int]]) -> "Word":
        stack: list[tuple[str, int]] = []
        for gen, exp in letters:
            _check_generator(gen)
            if exp == 0:
                continue
            if stack and stack[-1][0] == gen:
                merged = stack[-1][1] + exp
                stack.pop()
                if merged:
                    stack.append((gen, merged))
            else:
                stack.append((gen, exp))
        return cls(tuple(stack))

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "Word":
        return cls.from_letters([(name, exp)])

    def __mul__(self, other: "Word") -> "Word":
        return Word.from_letters(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        base = self if n > 0 else self.inverse()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def phi_exponent(self) -> int:
        """Total w01 + w02 exponent: Phi(word) = (1 + T)^this."""
        return sum(e for g, e in self.letters if g in ("w01", "w02"))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "*".join(
            g if e == 1 else f"{g}^{e}" for g, e in self.letters
        )


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a^-1 b^-1 a b."""
    return a.inverse() * b.inverse() * a * b


def conjugate(a: Word, by: Word) -> Word:
    """by a by^-1."""
    return by * a * by.inverse()


@dataclass(frozen=True)
class KernelProduct:
    """Product of Phi-kernel words with (2-adic) integer exponents."""

    factors: tuple[tuple[Word, int], ...]

    def __post_init__(self) -> None:
        for base, _ in self.factors:
            if base.phi_exponent() != 0:
                raise ValueError(
                    "base word lies outside the Phi-kernel: "
                    f"{base.letters}"
                )

    @classmethod
    def build(cls, factors: Iterable[tuple[Word, int | PadicInt]]) -> "KernelProduct":
        out = []
        for base, exp in factors:
            e = exp.lift() if isinstance(exp, PadicInt) else exp
            out.append((base, e))
        return cls(tuple(out))

    def inverse(self) -> "KernelProduct":
        return KernelProduct(
            tuple((base, -e) for base, e in reversed(self.factors))
        )


def fox_phi(
    w: Word, gen: str, bits: int = DEFAULT_BITS, deg: int = DEFAULT_DEGREE
) -> LambdaElem:
    """Phi of the Fox derivative of w with respect to gen."""
    if not _PHI_GEN_PATTERN.match(gen):
        raise ValueError(f"unknown generator {gen!r}")
    acc = LambdaElem.zero(bits, deg)
    prefix = LambdaElem.one(bits, deg)
    for g, e in w.letters:
        if g == gen:
            local = (
                LambdaElem.geometric(e, bits, deg)
                if _weight(g)
                else LambdaElem.const(e, bits, deg)
            )
            acc = acc + prefix * local
        if _weight(g):
            prefix = prefix * LambdaElem.one_plus_t_pow(e, bits, deg)
    return acc


def fox_phi_kernel(
    kp: KernelProduct, gen: str, bits: int = DEFAULT_BITS, deg: int = DEFAULT_DEGREE
) -> LambdaElem:
    """Phi-Fox derivative of a kernel product, linear in the exponents."""
    acc = LambdaElem.zero(bits, deg)
    for base, exp in kp.factors:
        if exp == 0:
            continue
        acc = acc + exp * fox_phi(base, gen, bits, deg)
    return acc


def lambda_det(matrix: list[list[LambdaElem]]) -> LambdaElem:
    """Determinant of a square LambdaElem matrix by cofactor expansion."""
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square and nonempty")
    if n > 8:
        raise ValueError("cofactor expansion capped at 8x8")
    if n == 1:
        return matrix[0][0]
    acc = LambdaElem.zero(matrix[0][0].bits, matrix[0][0].degree_cap)
    for col in range(n):
        minor = [row[:col] + row[col + 1 :] for row in matrix[1:]]
        term = matrix[0][col] * lambda_det(minor)
        acc = acc + (term if col % 2 == 0 else -term)
    return acc


class NcSeries:
    """Truncated power series in non-commuting variables X_g.

    Terms map multi-indices (tuples of generator names) to residues
    mod p^M; products drop every monomial longer than the degree cap.
    """

    __slots__ = ("terms", "p", "bits", "deg")

    def __init__(
        self,
        terms: Mapping[tuple[str, ...], int],
        p: int,
        bits: int = DEFAULT_BITS,
        deg: int = 4,
    ) -> None:
        self.p = p
        self.bits = bits
        self.deg = deg
        mod = p**bits
        self.terms = {
            idx: val % mod
            for idx, val in terms.items()
            if len(idx) <= deg and val % mod
        }

    @classmethod
    def one(cls, p: int, bits: int = DEFAULT_BITS, deg: int = 4) -> "NcSeries":
        return cls({(): 1}, p, bits, deg)

    def __mul__(self, other: "NcSeries") -> "NcSeries":
        out: dict[tuple[str, ...], int] = {}
        for ia, va in self.terms.items():
            for ib, vb in other.terms.items():
                if len(ia) + len(ib) > self.deg:
                    continue
                idx = ia + ib
                out[idx] = out.get(idx, 0) + va * vb
        return NcSeries(out, self.p, self.bits, self.deg)

    def coeff(self, index: tuple[str, ...]) -> int:
        return self.terms.get(tuple(index), 0)


def _magnus_generator_power(
    gen: str, e: int, p: int, bits: int, deg: int
) -> NcSeries:
    # (1 + X)^e truncated, valid for negative e via generalized binomials
    terms = {
        tuple([gen] * k): binom(e, k) for k in range(deg + 1)
    }
    return NcSeries(terms, p, bits, deg)


def magnus_series(w: Word, p: int, bits: int = DEFAULT_BITS, deg: int = 4) -> NcSeries:
    """Magnus expansion of w: each generator g maps to 1 + X_g."""
    out = NcSeries.one(p, bits, deg)
    for gen, exp in w.letters:
        out = out * _magnus_generator_power(gen, exp, p, bits, deg)
    return out


def magnus_coeff(w: Word, index: tuple[str, ...], p: int, deg: int = 4) -> int:
    """The mod-p Magnus coefficient of w at the given multi-index."""
    if len(index) > deg:
        raise ValueError(f"multi-index longer than the degree cap {deg}")
    for gen in index:
        _check_generator(gen)
    return magnus_series(w, p, deg=deg).coeff(tuple(index)) % p


__all__ = [
    "DEFAULT_BITS",
    "DEFAULT_DEGREE",
    "KernelProduct",
    "LambdaElem",
    "NcSeries",
    "Word",
    "binom",
    "commutator",
    "conjugate",
    "fox_phi",
    "fox_phi_kernel",
    "lambda_det",
    "magnus_coeff",
    "magnus_series",
    "phi_weight",
]
