"""End-to-end tests of the command line front end.

Each test drives ``main`` with an argv list and parses what it printed,
so flag wiring, serialization, config embedding, and exit codes are all
exercised exactly as a shell user would hit them.
"""

import json

import pytest

from primelink.cli import main


def run(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv: str) -> tuple[int, dict]:
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def flatten_scalars(value: object) -> list[object]:
    if isinstance(value, dict):
        out: list[object] = []
        for v in value.values():
            out.extend(flatten_scalars(v))
        return out
    if isinstance(value, list):
        out = []
        for v in value:
            out.extend(flatten_scalars(v))
        return out
    return [value]


def test_lk_cyclotomic_target(capsys) -> None:
    code, data = run_json(capsys, "lk", "--p", "2", "--primes", "73,2")
    assert code == 0
    assert data["kind"] == "cyclotomic"
    assert data["value"] == 33206
    assert data["modulus"] == 65536
    assert data["parity"] == 0
    assert data["sign_exp"] == 0
    assert data["config"]["precision"] == 16


def test_lk_finite_target(capsys) -> None:
    code, data = run_json(capsys, "lk", "--p", "2", "--primes", "3,73")
    assert code == 0
    assert data["kind"] == "finite"
    assert data["value"] == 66
    assert data["modulus"] is None


def test_lk_wrong_arity_is_malformed(capsys) -> None:
    code, _ = run(capsys, "lk", "--primes", "3,73,5")
    assert code == 2


def test_linkmatrix_frozen(capsys) -> None:
    code, data = run_json(capsys, "linkmatrix", "--p", "2", "--primes", "73,3")
    assert code == 0
    assert data["labels"] == [2, 73, 3]
    assert data["values"] == [
        [0, 64, 1],
        [33206, 0, 0],
        [42659, 66, 0],
    ]
    assert data["residues_mod_p"] == [[0, 0, 1], [0, 0, 0], [1, 0, 0]]
    assert data["sign_exps"] == [0, 0, 1]


def test_linkmatrix_odd_characteristic(capsys) -> None:
    code, data = run_json(capsys, "linkmatrix", "--p", "3", "--primes", "13,61")
    assert code == 0
    assert data["labels"] == [3, 13, 61]
    assert data["cyclotomic_modulus"] == 3**16
    assert "sign_exps" not in data
    assert data["residues_mod_p"][0] == [0, 2, 0]


def test_redei_borromean_triple(capsys) -> None:
    code, data = run_json(capsys, "redei", "--primes", "113,593,2")
    assert code == 0
    assert data["symbol"] == -1
    assert data["mu2"] == 1


def test_redei_rejection(capsys) -> None:
    code, data = run_json(capsys, "redei", "--primes", "13,61,73")
    assert code == 1
    assert data["rejection"]["type"] == "HypothesisError"
    assert "parity" in data["rejection"]["reason"]
    assert data["config"]["subcommand"] == "redei"


def test_milnor_borromean_table(capsys) -> None:
    code, data = run_json(capsys, "milnor", "--p", "2", "--primes", "113,593")
    assert code == 0
    assert data["free_quotient"] is False
    hits = {
        tuple(f["commutator"])
        for row in data["relations"]
        for f in row
        if f["exponent"]
    }
    assert hits == {
        ("x1", "x2", "x0"),
        ("x0", "x2", "x1"),
        ("x0", "x1", "x2"),
    }


def test_milnor_null_table(capsys) -> None:
    code, data = run_json(capsys, "milnor", "--p", "2", "--primes", "337,593")
    assert code == 0
    assert data["free_quotient"] is True
    assert all(
        f["exponent"] == 0 for row in data["relations"] for f in row
    )


def test_milnor_odd_characteristic_is_malformed(capsys) -> None:
    assert run(capsys, "milnor", "--p", "3", "--primes", "13,61")[0] == 2


def test_koch_odd_characteristic(capsys) -> None:
    code, data = run_json(capsys, "koch", "--p", "3", "--primes", "13,73")
    assert code == 0
    assert data["generator_rank"] == 3
    assert data["generators"] == ["x0", "x1", "x2"]
    assert data["relations"] == [
        "[x0^-1, y0^-1]",
        "x1^12 [x1^-1, y1^-1]",
        "x2^72 [x2^-1, y2^-1]",
    ]


def test_koch_two_needs_infinity_or_q(capsys) -> None:
    assert run(capsys, "koch", "--p", "2", "--primes", "17,73")[0] == 2
    code, data = run_json(
        capsys, "koch", "--p", "2", "--primes", "17,73", "--infinity"
    )
    assert code == 0
    assert data["generator_rank"] == 3


def test_borromean_verdicts(capsys) -> None:
    code, data = run_json(capsys, "borromean", "--primes", "113,593")
    assert code == 0
    assert data["borromean"] is True
    code, data = run_json(capsys, "borromean", "--primes", "337,593")
    assert code == 0
    assert data["borromean"] is False
    assert data["free_quotient"] is True


def test_circular_certificates(capsys) -> None:
    code, data = run_json(capsys, "circular", "--p", "3", "--primes", "13,73,61")
    assert code == 0
    assert data["circular"] is True
    assert data["cycle"] == [3, 13, 73, 61]
    code, again = run_json(
        capsys,
        "circular",
        "--p",
        "3",
        "--primes",
        "13,73,61",
        "--sigma",
        ",".join(str(i) for i in data["sigma"]),
    )
    assert code == 0
    assert again["circular"] is True

    code, data = run_json(
        capsys, "circular", "--p", "2", "--primes", "7,17,5", "--q", "3"
    )
    assert code == 0
    assert data["circular"] is True


def test_circular_bad_sigma_is_malformed(capsys) -> None:
    code, _ = run(
        capsys, "circular", "--p", "3", "--primes", "13,73,61",
        "--sigma", "0,0,1,2",
    )
    assert code == 2


def test_iwasawa_pipeline(capsys) -> None:
    code, data = run_json(capsys, "iwasawa", "--primes", "73,3")
    assert code == 0
    assert data["D"] == -219
    assert data["minors"] == ["T^2 + 2T + 4", "T^2 + 2T + 4", "T^2 + 4"]
    assert data["config"]["subcommand"] == "iwasawa"


def test_iwasawa_finite_sigma_is_malformed(capsys) -> None:
    assert run(capsys, "iwasawa", "--primes", "73,3", "--sigma", "7")[0] == 2


def test_delta_imag_display(capsys) -> None:
    code, data = run_json(capsys, "delta-imag", "--primes", "73,3")
    assert code == 0
    assert data["display"] == "T^2 + 2T + 4 (mod 4T, 8)"


def test_delta_imag_rejection(capsys) -> None:
    code, data = run_json(capsys, "delta-imag", "--primes", "41,19")
    assert code == 1
    assert "splitting" in data["rejection"]["reason"]


def test_delta_imag_nonprime_is_malformed(capsys) -> None:
    assert run(capsys, "delta-imag", "--primes", "15,7")[0] == 2


def test_delta_real_display(capsys) -> None:
    code, data = run_json(capsys, "delta-real", "--primes", "7,3")
    assert code == 0
    assert data["display"] == "(2, T^2)"
    assert data["quotient"] == "Lambda/(2, T^2)"


def test_gold_subcommand(capsys) -> None:
    code, data = run_json(capsys, "gold", "--p", "3", "--d", "254")
    assert code == 0
    assert data["class_number"] == 16
    assert data["linking_vanishes_mod_p"] is False
    assert data["iwasawa_polynomial_is_T"] is True
    code, data = run_json(capsys, "gold", "--p", "3", "--d", "3")
    assert code == 1


def test_json_round_trip_is_idempotent(capsys) -> None:
    _, data = run_json(capsys, "iwasawa", "--primes", "73,3")
    assert json.loads(json.dumps(data)) == data


def test_table_carries_identical_content(capsys) -> None:
    _, data = run_json(capsys, "delta-imag", "--primes", "73,3")
    code, table = run(
        capsys, "delta-imag", "--primes", "73,3", "--format", "table"
    )
    assert code == 0
    assert "{" not in table
    for scalar in flatten_scalars(data):
        if scalar is True:
            token = "true"
        elif scalar is False:
            token = "false"
        elif scalar is None:
            token = "null"
        else:
            token = str(scalar)
        assert token in table, token


def test_precision_env_override(capsys, monkeypatch) -> None:
    monkeypatch.setenv("PRIMELINK_PRECISION", "8")
    code, data = run_json(capsys, "lk", "--p", "2", "--primes", "73,2")
    assert code == 0
    assert data["config"]["precision"] == 8
    assert data["modulus"] == 256
    assert data["value"] == 33206 % 256


def test_precision_flag_beats_env(capsys, monkeypatch) -> None:
    monkeypatch.setenv("PRIMELINK_PRECISION", "8")
    code, data = run_json(
        capsys, "lk", "--p", "2", "--primes", "73,2", "--precision", "12"
    )
    assert code == 0
    assert data["config"]["precision"] == 12


def test_bad_precision_env_is_malformed(capsys, monkeypatch) -> None:
    monkeypatch.setenv("PRIMELINK_PRECISION", "many")
    assert run(capsys, "lk", "--p", "2", "--primes", "73,2")[0] == 2
    monkeypatch.setenv("PRIMELINK_PRECISION", "0")
    assert run(capsys, "lk", "--p", "2", "--primes", "73,2")[0] == 2


def test_unknown_subcommand_exits_two(capsys) -> None:
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_garbled_prime_list_exits_two(capsys) -> None:
    with pytest.raises(SystemExit) as exc:
        main(["lk", "--primes", "73;3"])
    assert exc.value.code == 2
