"""Class numbers, split primes, and the linking criterion for Q(sqrt(-d))."""

import pytest

from primelink import arith
from primelink.errors import HypothesisError
from primelink.quadfield import (
    BetaGenerator,
    beta_generator,
    class_number,
    gold_test,
    split_linking_vanishes,
    splits,
)


def dirichlet_class_number(d: int) -> int:
    """Character-sum class number formula, as an independent oracle."""
    disc = -d if d % 4 == 3 else -4 * d
    w = {-3: 6, -4: 4}.get(disc, 2)
    total = sum(arith.kronecker(disc, a) * a for a in range(1, -disc))
    return w * abs(total) // (2 * -disc)


def squarefree_range(bound: int) -> list[int]:
    return [d for d in range(1, bound) if arith.squarefree(d)]


def test_class_number_frozen_values() -> None:
    assert class_number(1) == 1
    assert class_number(2) == 1
    assert class_number(3) == 1
    assert class_number(5) == 2
    assert class_number(6) == 2
    assert class_number(23) == 3
    assert class_number(47) == 5
    assert class_number(163) == 1


def test_class_number_matches_character_sum() -> None:
    for d in squarefree_range(120):
        assert class_number(d) == dirichlet_class_number(d), d


def test_class_number_rejects_bad_input() -> None:
    for d in (0, -5, 4, 12, 18):
        with pytest.raises(ValueError):
            class_number(d)


def test_splits_known_values() -> None:
    assert splits(5, 1) is True
    assert splits(3, 1) is False
    assert splits(3, 2) is True
    assert splits(5, 2) is False
    assert splits(13, 1) is True


def test_splits_rejects() -> None:
    with pytest.raises(HypothesisError):
        splits(3, 3)
    with pytest.raises(HypothesisError):
        splits(7, 14)
    with pytest.raises(ValueError):
        splits(2, 5)
    with pytest.raises(ValueError):
        splits(9, 5)
    with pytest.raises(ValueError):
        splits(5, 12)


def test_beta_generator_simple() -> None:
    beta = beta_generator(5, 1)
    assert beta.h == 1
    assert not beta.half
    assert sorted((beta.u, abs(beta.v))) == [1, 2]


def test_beta_generator_half_integral() -> None:
    # 3 = N((1 + sqrt(-11)) / 2) has no integral representation
    beta = beta_generator(3, 11)
    assert beta.half
    assert beta.u % 2 == 1 and beta.v % 2 == 1
    assert beta.u**2 + 11 * beta.v**2 == 4 * 3


def test_beta_generator_contract_sweep() -> None:
    for p in (3, 5):
        for d in squarefree_range(60):
            if d % p == 0 or not splits(p, d):
                continue
            beta = beta_generator(p, d)
            scale = 4 if beta.half else 1
            assert beta.u**2 + d * beta.v**2 == scale * p**beta.h
            assert not (beta.u % p == 0 and beta.v % p == 0)


def test_beta_generator_validates_norm() -> None:
    with pytest.raises(ValueError):
        BetaGenerator(p=5, d=1, h=1, u=3, v=1, half=False)
    with pytest.raises(ValueError):
        BetaGenerator(p=5, d=1, h=2, u=5, v=0, half=False)


def test_split_linking_frozen() -> None:
    # beta = 2 + i, sqrt(-1) = 7 in Z/25, unit side 9, 9^4 = 11 != 1
    assert split_linking_vanishes(5, 1, 1) is False
    # beta = 1 + sqrt(-2), sqrt(-2) = 4 in Z/9, unit side 5, 5^2 = 7 != 1
    assert split_linking_vanishes(3, 2, 1) is False


def test_split_linking_root_invariance() -> None:
    for p in (3, 5):
        for d in squarefree_range(80):
            if d % p == 0 or not splits(p, d) or (p, d) == (3, 3):
                continue
            a = split_linking_vanishes(p, d, 1, root_choice=0)
            b = split_linking_vanishes(p, d, 1, root_choice=1)
            assert a == b, (p, d)


def test_split_linking_precision_filtration() -> None:
    for p in (3, 5):
        for d in squarefree_range(50):
            if d % p == 0 or not splits(p, d) or (p, d) == (3, 3):
                continue
            if split_linking_vanishes(p, d, 2):
                assert split_linking_vanishes(p, d, 1)


def test_gold_frozen() -> None:
    res = gold_test(5, 1)
    assert res.delta_is_t is True
    assert res.class_number == 1
    assert gold_test(3, 2).delta_is_t is True


def test_gold_rejections() -> None:
    with pytest.raises(HypothesisError):
        gold_test(3, 3)
    with pytest.raises(HypothesisError):
        gold_test(5, 2)
    with pytest.raises(HypothesisError):
        gold_test(3, 23)


def test_gold_serializes() -> None:
    got = gold_test(5, 1).to_dict()
    assert got["p"] == 5 and got["d"] == 1
    assert got["iwasawa_polynomial_is_T"] is True
    assert got["linking_vanishes_mod_p"] is False
