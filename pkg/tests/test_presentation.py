"""Presentations, rank counts, and the collapse to triple commutators."""

import json

import pytest

from primelink.errors import HypothesisError
from primelink.linking import lk, lk_tilde
from primelink.padic import PadicInt
from primelink.presentation import (
    borromean_scan,
    generator_rank,
    is_borromean,
    koch_presentation,
    relations_mod_f4,
)


def test_presentation_shape_odd_p() -> None:
    pres = koch_presentation([13, 73, 61], 3)
    assert pres.primes == (3, 13, 73, 61)
    assert pres.generators == ("x0", "x1", "x2", "x3")
    assert len(pres.exponents) == 4
    # column 0 is 3-adic (except the vanishing self-entry), others integral
    assert isinstance(pres.exponents[1][0], PadicInt)
    assert pres.exponents[0][0] == 0
    assert all(isinstance(e, int) for row in pres.exponents for e in row[1:])


def test_presentation_relation_words() -> None:
    pres = koch_presentation([113, 593], 2, infinity=True)
    assert pres.relation_word(0) == "[x0^-1, y0^-1]"
    assert pres.relation_word(1) == "x1^112 [x1^-1, y1^-1]"
    assert pres.relation_word(2) == "x2^592 [x2^-1, y2^-1]"


def test_presentation_exponents_match_linking() -> None:
    pres = koch_presentation([113, 593], 2, infinity=True)
    assert pres.exponents[1][2] == lk(113, 593, 2).value
    assert pres.exponents[2][1] == lk(593, 113, 2).value
    assert pres.exponents[1][0] == lk(113, 2, 2).value
    # the triple is chosen so that every linking number is 0 mod 4
    for i in (1, 2):
        for j in (0, 1, 2):
            e = pres.exponents[i][j]
            assert (e.residue(4) if isinstance(e, PadicInt) else e % 4) == 0


def test_presentation_q_twist() -> None:
    pres = koch_presentation([7, 17, 5], 2, q=3)
    assert pres.q == 3
    for i, li in enumerate(pres.primes):
        for j, lj in enumerate(pres.primes[1:], start=1):
            if li == lj:
                continue
            expected = lk(li, lj, 2).value + (lj - 1) // 2 * lk(li, 3, 2).value
            assert pres.exponents[i][j] == expected
            assert pres.exponents[i][j] % 2 == lk_tilde(li, lj, 2, q=3)


def test_presentation_validation() -> None:
    with pytest.raises(ValueError):
        koch_presentation([113], 2)  # needs infinity or q
    with pytest.raises(ValueError):
        koch_presentation([113], 2, infinity=True, q=3)
    with pytest.raises(HypothesisError):
        koch_presentation([113], 2, q=13)  # q must be 3 mod 4
    with pytest.raises(ValueError):
        koch_presentation([13], 3, infinity=True)
    with pytest.raises(HypothesisError):
        koch_presentation([5], 3)  # 5 is not 1 mod 3


def test_presentation_serializes() -> None:
    pres = koch_presentation([113, 593], 2, infinity=True)
    blob = json.dumps(pres.to_dict())
    data = json.loads(blob)
    assert data["primes"] == [2, 113, 593]
    assert data["generators"] == ["x0", "x1", "x2"]
    assert data["exponents"][1][0]["precision"] == pres.precision


def test_generator_rank_formula() -> None:
    assert generator_rank([13, 73, 61], 3) == 4
    assert generator_rank([13], 3) == 2
    assert generator_rank([113, 593], 2, infinity=True) == 3
    assert generator_rank([7, 17, 5], 2, q=3) == 4
    with pytest.raises(HypothesisError):
        generator_rank([113, 593], 2)


# --- relations mod the fourth Zassenhaus step --------------------------------


def test_borromean_relations() -> None:
    rel = relations_mod_f4((113, 593))
    assert rel.primes == (2, 113, 593)
    # r_0 = [x1, x2, x0], r_1 = [x0, x2, x1] (~ [x2, x0, x1] up to
    # inversion, invisible mod squares), r_2 = [x0, x1, x2]
    assert rel.nonzero(0) == ((("x1", "x2", "x0"), 1),)
    assert rel.nonzero(1) == ((("x0", "x2", "x1"), 1),)
    assert rel.nonzero(2) == ((("x0", "x1", "x2"), 1),)
    assert not rel.is_free_quotient()


def test_vanishing_relations() -> None:
    rel = relations_mod_f4((337, 593))
    assert rel.is_free_quotient()
    for i in range(3):
        assert rel.nonzero(i) == ()


def test_relations_reject_odd_linking() -> None:
    # legendre(13, 17) = 1 but 13 = 5 (mod 8), so lk(13, 2) is odd
    with pytest.raises(HypothesisError):
        relations_mod_f4((13, 17))
    with pytest.raises(HypothesisError):
        relations_mod_f4((5, 13))


def test_relations_reject_wrong_residue() -> None:
    with pytest.raises(HypothesisError):
        relations_mod_f4((7, 17))


def test_is_borromean_known_values() -> None:
    assert is_borromean(113, 593)
    assert not is_borromean(337, 593)
    assert not is_borromean(13, 17)


def test_scan_finds_borromean_pair() -> None:
    for triple in borromean_scan(600):
        if triple == (2, 113, 593):
            break
    else:
        raise AssertionError("scan missed the known Borromean triple")
