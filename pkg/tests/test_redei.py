"""Redei symbols: closed forms, the conic construction, and agreement.

The strongest checks here are cross-route: for targets inside the pair the
symbol has a quartic-residue closed form, and the conic construction must
reproduce it from a completely different computation (rational point plus
2-adic normalization). Fourth-power membership gives an independent oracle
for the closed forms themselves.
"""

import pytest

from primelink import arith
from primelink.errors import HypothesisError, SearchExhausted
from primelink.linking import lk
from primelink.redei import (
    ConicPoint,
    conic_point,
    mu2,
    redei_hypotheses,
    redei_symbol,
    star,
)


def oracle_quartic(z: int, l: int) -> int:
    """(z/l)_4 for odd l by fourth-power membership in F_l^x."""
    fourth = {pow(x, 4, l) for x in range(1, l)}
    return 1 if z % l in fourth else -1


def admissible_pairs(bound: int) -> list[tuple[int, int]]:
    """All pairs a < b of primes below the bound with even mutual linking."""
    out = []
    primes = arith.primes_in(2, bound)
    for i, a in enumerate(primes):
        for b in primes[i + 1 :]:
            if redei_hypotheses(a, b, b):
                out.append((a, b))
    return out


# --- star ------------------------------------------------------------------


def test_star_values() -> None:
    assert star(2) == 2
    assert star(5) == 5
    assert star(13) == 13
    assert star(3) == -3
    assert star(7) == -7
    for l in (3, 5, 7, 11, 13):
        assert star(l) % 4 == 1


def test_star_rejects_composites() -> None:
    with pytest.raises(ValueError):
        star(15)


# --- hypotheses -------------------------------------------------------------


def test_hypotheses_known_pairs() -> None:
    assert redei_hypotheses(113, 593, 2)
    assert redei_hypotheses(337, 593, 2)
    assert redei_hypotheses(2, 113, 593)
    assert redei_hypotheses(13, 17, 13)
    # legendre(3, 5) = -1, so the pair (3, 5) has odd linking
    assert not redei_hypotheses(3, 5, 7)


def test_hypotheses_outside_target_needs_even_linking() -> None:
    # the pair (17, 89) is fine, but 3 links oddly into 17
    assert redei_hypotheses(17, 89, 17)
    assert arith.legendre(3, 17) == -1
    assert not redei_hypotheses(17, 89, 3)


def test_hypotheses_rejects_bad_input() -> None:
    with pytest.raises(ValueError):
        redei_hypotheses(15, 7, 2)
    with pytest.raises(ValueError):
        redei_hypotheses(7, 7, 2)
    with pytest.raises(ValueError):
        redei_hypotheses(7, 11, 2, p=3)


# --- conic points ------------------------------------------------------------


def test_conic_point_satisfies_equation() -> None:
    pt = conic_point(113, 593)
    assert pt.x**2 == 113 * pt.y**2 + 593 * pt.z**2
    pt2 = conic_point(-7, 2)
    assert pt2.x**2 + 7 * pt2.y**2 == 2 * pt2.z**2


def test_conic_point_indexing_is_stable() -> None:
    first = conic_point(113, 593, index=0)
    again = conic_point(113, 593, index=0)
    second = conic_point(113, 593, index=1)
    assert first == again
    assert first != second


def test_conic_point_rejects_insolvable() -> None:
    with pytest.raises(HypothesisError):
        conic_point(-3, -7)
    # x^2 - 5 y^2 + 3 z^2: insolvable mod 3 by descent
    with pytest.raises(HypothesisError):
        conic_point(5, -3)


def test_conic_point_work_cap() -> None:
    with pytest.raises(SearchExhausted):
        conic_point(100000037, 5)


def test_conic_point_validates_shape() -> None:
    with pytest.raises(ValueError):
        conic_point(15, 2)
    with pytest.raises(ValueError):
        conic_point(7, 2)  # 7 = 3 (mod 4) is not a star
    with pytest.raises(ValueError):
        ConicPoint(1, 1, 1, 113, 593)


# --- closed forms against the fourth-power oracle ---------------------------


@pytest.mark.parametrize("a,b", [(13, 17), (13, 29), (17, 89), (5, 29), (37, 41)])
def test_closed_forms_match_powers_oracle(a: int, b: int) -> None:
    assert redei_hypotheses(a, b, a)
    assert redei_symbol(a, b, a) == oracle_quartic(b, a)
    assert redei_symbol(a, b, b) == oracle_quartic(a, b)


@pytest.mark.parametrize("a,b", [(5, 11), (13, 23), (2, 7), (2, 23)])
def test_closed_forms_negated_entry(a: int, b: int) -> None:
    # second pair prime is 3 (mod 4): both in-pair symbols equal (-b/a)_4
    assert b % 4 == 3
    expected = (
        arith.quartic_symbol(-b, a) if a == 2 else oracle_quartic(-b, a)
    )
    assert redei_symbol(a, b, a) == expected
    assert redei_symbol(a, b, b) == expected


def test_halved_linking_exponent_identity() -> None:
    # for an in-pair target with both primes 1 (mod 4), the symbol is
    # (-1) to the half linking number
    for a, b in [(13, 17), (5, 29), (13, 29), (17, 89)]:
        v = lk(a, b, 2).value
        assert v % 2 == 0
        assert redei_symbol(a, b, b) == (-1) ** (v // 2 % 2)


# --- frozen symbol values ----------------------------------------------------


def test_borromean_triple_values() -> None:
    assert redei_symbol(113, 593, 2) == -1
    assert redei_symbol(2, 113, 593) == -1
    assert redei_symbol(2, 593, 113) == -1
    assert mu2(113, 593, 2) == 1


def test_borromean_degenerate_values() -> None:
    assert redei_symbol(2, 113, 2) == 1
    assert redei_symbol(2, 113, 113) == 1
    assert redei_symbol(2, 593, 2) == 1
    assert redei_symbol(2, 593, 593) == 1
    assert redei_symbol(113, 593, 113) == 1
    assert redei_symbol(113, 593, 593) == 1


def test_vanishing_triple_values() -> None:
    for a, b, i in [(337, 593, 2), (2, 337, 593), (2, 593, 337)]:
        assert redei_symbol(a, b, i) == 1
        assert mu2(a, b, i) == 0
    assert redei_symbol(2, 337, 337) == 1
    assert redei_symbol(337, 593, 337) == 1


# --- conic route against closed forms ---------------------------------------


def test_overlap_agreement_small_pairs() -> None:
    pairs = admissible_pairs(60)
    assert len(pairs) >= 8
    for a, b in pairs:
        for i in (a, b):
            closed = redei_symbol(a, b, i, method="closed")
            conic = redei_symbol(a, b, i, method="conic")
            assert closed == conic, f"[{a}, {b}, {i}]: {closed} vs {conic}"


def test_overlap_agreement_inert_case() -> None:
    # stars 5 and -11 are both 5 (mod 8): exercises the inert 2-adic test
    assert star(5) % 8 == 5 and star(11) % 8 == 5
    for i in (5, 11):
        assert redei_symbol(5, 11, i, method="conic") == redei_symbol(
            5, 11, i, method="closed"
        )


# --- invariance --------------------------------------------------------------


def test_symbol_symmetric_in_pair() -> None:
    for a, b, i in [(113, 593, 2), (2, 113, 593), (13, 17, 13), (5, 11, 11)]:
        assert redei_symbol(a, b, i) == redei_symbol(b, a, i)


def test_symbol_independent_of_point() -> None:
    for a, b, i in [(113, 593, 2), (2, 113, 593), (5, 11, 5)]:
        base = redei_symbol(a, b, i, method="conic")
        for k in (1, 2):
            assert redei_symbol(a, b, i, method="conic", point_index=k) == base


# --- input validation ---------------------------------------------------------


def test_symbol_rejects_violated_hypotheses() -> None:
    with pytest.raises(HypothesisError):
        redei_symbol(3, 5, 7)
    with pytest.raises(HypothesisError):
        redei_symbol(17, 89, 3)


def test_symbol_rejects_bad_method() -> None:
    with pytest.raises(ValueError):
        redei_symbol(13, 17, 13, method="magic")
    with pytest.raises(ValueError):
        redei_symbol(113, 593, 2, method="closed")
