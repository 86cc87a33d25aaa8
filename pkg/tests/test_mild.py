"""Circularity certificates for the two worked prime cycles."""

import pytest

from primelink.errors import HypothesisError
from primelink.mild import find_circular_order, is_circular


def test_odd_p_cycle() -> None:
    report = is_circular([13, 73, 61], 3)
    assert report.ok
    assert bool(report)
    assert report.cycle == (3, 13, 73, 61)
    # the counterclockwise product dies at lk(3, 61) = 0 (mod 3)
    assert report.backward == 0
    assert report.forward != 0
    assert all(c.ok for c in report.conditions)


def test_two_cycle_with_auxiliary_prime() -> None:
    report = is_circular([7, 17, 5], 2, q=3)
    assert report.ok
    assert report.cycle == (2, 7, 17, 5)
    assert report.forward == 1
    assert report.backward == 0


def test_even_rotation_preserves_circularity() -> None:
    report = is_circular([13, 73, 61], 3, sigma=(2, 3, 0, 1))
    assert report.ok


def test_failing_arrangement_names_condition() -> None:
    # swapping 73 and 61 puts 61 at an even position, where its linking
    # with 3 does not vanish mod 3
    report = is_circular([13, 73, 61], 3, sigma=(0, 1, 3, 2))
    assert not report.ok
    failed = [c for c in report.conditions if not c.ok]
    assert any(c.name == "even-even-linking" for c in failed)


def test_residue_condition_p2() -> None:
    # 7 = 3 (mod 4) may not sit at an even position when p = 2
    report = is_circular([7, 17, 5], 2, q=3, sigma=(1, 0, 2, 3))
    assert not report.ok
    assert report.conditions[0].name == "even-positions-residue"
    assert not report.conditions[0].ok


def test_find_returns_identity_when_it_passes() -> None:
    report = find_circular_order([13, 73, 61], 3)
    assert report is not None
    assert report.sigma == (0, 1, 2, 3)

    report2 = find_circular_order([7, 17, 5], 2, q=3)
    assert report2 is not None
    assert report2.ok


def test_find_exhausts_structurally_blocked_set() -> None:
    # all three primes are 3 (mod 4); the cycle has two even positions
    # but only p = 2 itself may occupy one
    assert find_circular_order([7, 11, 19], 2, q=3) is None


def test_input_validation() -> None:
    with pytest.raises(HypothesisError):
        is_circular([13, 73], 3)  # d must be odd
    with pytest.raises(HypothesisError):
        is_circular([13], 3)  # and exceed 1
    with pytest.raises(ValueError):
        is_circular([7, 17, 5], 2)  # q missing
    with pytest.raises(HypothesisError):
        is_circular([7, 17, 5], 2, q=13)
    with pytest.raises(HypothesisError):
        is_circular([7, 17, 3], 2, q=3)
    with pytest.raises(ValueError):
        is_circular([13, 73, 61], 3, sigma=(0, 1, 2, 2))
    with pytest.raises(HypothesisError):
        is_circular([13, 73, 5], 3)  # 5 is not 1 mod 3


def test_report_serializes() -> None:
    report = is_circular([7, 17, 5], 2, q=3)
    data = report.to_dict()
    assert data["circular"] is True
    assert data["cycle"] == [2, 7, 17, 5]
    assert len(data["conditions"]) == 3
