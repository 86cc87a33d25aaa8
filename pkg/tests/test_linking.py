"""Linking numbers: point values frozen from brute force, parity oracles.

The mod-2 oracle is the Legendre symbol: lk(l, l') is even exactly when
l is a square mod l' (inverting and taking dlog both preserve parity
facts), and for target 2 exactly when 2 is a square mod l.
"""

from __future__ import annotations

import pytest

from primelink.arith import kronecker, legendre, primes_in, primitive_root
from primelink.errors import HypothesisError
from primelink.linking import lk, lk_tilde, linking_matrix


def test_self_linking_is_zero() -> None:
    assert lk(5, 5, 2).value == 0
    assert lk(2, 2, 2).value == 0


def test_lk_3_5_is_one() -> None:
    # 3**(-1) = 2 (mod 5) and alpha_5 = 2, so lk = 1
    v = lk(3, 5, 2)
    assert v.kind == "finite"
    assert v.value == 1


def test_lk_finite_definition_roundtrip() -> None:
    for l, lp in ((3, 7), (5, 13), (113, 593), (7, 3)):
        v = lk(l, lp, 2)
        alpha = primitive_root(lp)
        assert isinstance(v.value, int)
        assert 0 <= v.value < lp - 1
        assert pow(alpha, v.value, lp) == pow(l, -1, lp)


def test_borromean_pairs_vanish_mod_four() -> None:
    for l, lp in ((113, 593), (593, 113), (337, 593), (593, 337)):
        assert lk(l, lp, 2).mod(4) == 0
    for l in (113, 593, 337):
        assert lk(l, 2, 2).mod(4) == 0
        assert lk(2, l, 2).mod(4) == 0


def test_cyclotomic_kind_for_target_p() -> None:
    v = lk(7, 2, 2, n=10)
    assert v.kind == "cyclotomic"
    assert v.sign_exp == 1
    assert v.mod(8) == 2


def test_target_not_one_mod_p_rejected() -> None:
    with pytest.raises(HypothesisError):
        lk(13, 5, 3)  # 5 = 2 (mod 3)


def test_parity_matches_legendre_oracle() -> None:
    odd_targets = [l for l in primes_in(3, 80)]
    sources = [3, 5, 7, 11, 13, 17, 19, 23]
    for lp in odd_targets:
        for l in sources:
            if l == lp:
                continue
            assert lk(l, lp, 2).bit == (0 if legendre(l, lp) == 1 else 1)


def test_cyclotomic_parity_matches_kronecker_two() -> None:
    for l in primes_in(3, 120):
        bit = lk(l, 2, 2).bit
        assert bit == (0 if kronecker(2, l) == 1 else 1)


def test_parity_reciprocity_one_mod_four() -> None:
    ones = [l for l in primes_in(5, 250) if l % 4 == 1]
    for i, l in enumerate(ones):
        for lp in ones[i + 1 :]:
            assert lk(l, lp, 2).bit == lk(lp, l, 2).bit


# ----------------------------------------------------------------- tilde


def test_lk_tilde_odd_p_is_plain_reduction() -> None:
    assert lk_tilde(13, 73, 3) == lk(13, 73, 3).mod(3)
    assert lk_tilde(61, 13, 3, q=None) == lk(61, 13, 3).mod(3)


def test_lk_tilde_p2_delta_vanishes_on_one_mod_four() -> None:
    assert lk_tilde(7, 17, 2, q=3) == lk(7, 17, 2).bit


def test_lk_tilde_p2_twist_on_three_mod_four() -> None:
    # spec point: (li, lj, q) = (17, 7, 3) twists by lk(17, 3)
    expect = (lk(17, 7, 2).bit + lk(17, 3, 2).bit) % 2
    assert lk_tilde(17, 7, 2, q=3) == expect


def test_lk_tilde_p2_needs_q() -> None:
    with pytest.raises(ValueError):
        lk_tilde(7, 17, 2)
    with pytest.raises(ValueError):
        lk_tilde(7, 17, 2, q=5)  # q must be 3 (mod 4)


# ---------------------------------------------------------------- matrix


def test_matrix_borromean() -> None:
    m = linking_matrix([113, 593], 2, n=16)
    assert m.primes == (2, 113, 593)
    for i in range(3):
        for j in range(3):
            assert m.mod(i, j, 4) == 0 if i != j else m.mod(i, j, 4) == 0


def test_matrix_null_example() -> None:
    m = linking_matrix([337, 593], 2, n=16)
    for i in range(3):
        for j in range(3):
            assert m.mod(i, j, 4) == 0


def test_matrix_empty_s() -> None:
    m = linking_matrix([], 2)
    assert m.size == 1
    assert m.value(0, 0).value == 0


def test_matrix_diagonal_zero_and_entries_match_lk() -> None:
    m = linking_matrix([13, 61, 73], 3, n=8)
    assert m.primes == (3, 13, 61, 73)
    for i in range(4):
        assert m.value(i, i).value == 0
    assert m.mod(1, 3, 3) == lk(13, 73, 3).mod(3)
    assert m.mod(2, 0, 3) == lk(61, 3, 3).mod(3)


def test_matrix_rejects_malformed() -> None:
    with pytest.raises(ValueError):
        linking_matrix([15], 2)
    with pytest.raises(ValueError):
        linking_matrix([5, 5], 2)
    with pytest.raises(HypothesisError):
        linking_matrix([5], 3)  # 5 != 1 (mod 3)


def test_matrix_render_mod_two() -> None:
    m = linking_matrix([5, 13], 2, n=8)
    rows = m.render(2)
    assert rows[1][2] == lk(5, 13, 2).bit
    assert all(rows[i][i] == 0 for i in range(3))
