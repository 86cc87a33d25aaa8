"""Command line front end for every pipeline in the package.

Each subcommand prints one document, as JSON (default) or as an aligned
plain-text table carrying the same content. Every document embeds the
configuration it was computed under, so outputs are auditable and
reproducible.

Exit status: 0 on success, 1 when a hypothesis needed by the requested
computation fails (the reason is part of the printed document, so
scanners can filter on it), 2 on malformed input or a request for an
unimplemented variant.

The default working precision is 16 digits and can be overridden by the
``PRIMELINK_PRECISION`` environment variable or per call by
``--precision``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import Callable, Sequence

from .errors import HypothesisError, NotImplementedVariant, SearchExhausted
from .fox import DEFAULT_BITS, DEFAULT_DEGREE
from .iwasawa import delta_imag, fitting_approx, real_case
from .linking import lk, linking_matrix
from .mild import find_circular_order, is_circular
from .presentation import (
    generator_rank,
    is_borromean,
    koch_presentation,
    relations_mod_f4,
)
from .quadfield import gold_test
from .redei import redei_symbol

PRECISION_ENV = "PRIMELINK_PRECISION"
DEFAULT_PRECISION = 16
ALPHA_CONVENTION = "least primitive root"


def _prime_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a comma-separated integer list"
        )
    if not values:
        raise argparse.ArgumentTypeError("empty prime list")
    return values


def _int_list(text: str) -> tuple[int, ...]:
    return _prime_list(text)


def _config(args: argparse.Namespace) -> dict:
    return {
        "subcommand": args.command,
        "p": getattr(args, "p", None),
        "precision": args.precision,
        "lambda_bits": DEFAULT_BITS,
        "lambda_degree": DEFAULT_DEGREE,
        "alpha_convention": ALPHA_CONVENTION,
    }


def _fmt(value: object) -> str:
    if value is True:
        return "true"
    if value is False:
        return "false"
    if value is None:
        return "null"
    return str(value)


def _is_scalar(value: object) -> bool:
    return value is None or isinstance(value, (bool, int, float, str))


def _render(label: str, value: object, indent: int, lines: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            lines.append(f"{pad}{label}: {{}}")
            return
        lines.append(f"{pad}{label}:")
        for key, sub in value.items():
            _render(str(key), sub, indent + 1, lines)
    elif isinstance(value, (list, tuple)):
        items = list(value)
        if all(_is_scalar(x) for x in items):
            joined = ", ".join(_fmt(x) for x in items) if items else "(none)"
            lines.append(f"{pad}{label}: {joined}")
        elif all(
            isinstance(x, (list, tuple)) and all(_is_scalar(c) for c in x)
            for x in items
        ):
            lines.append(f"{pad}{label}:")
            width = max(len(_fmt(c)) for row in items for c in row)
            for row in items:
                cells = "  ".join(_fmt(c).rjust(width) for c in row)
                lines.append("  " * (indent + 1) + cells)
        else:
            lines.append(f"{pad}{label}:")
            for pos, x in enumerate(items):
                _render(f"[{pos}]", x, indent + 1, lines)
    else:
        lines.append(f"{pad}{label}: {_fmt(value)}")


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
        return
    lines: list[str] = []
    for key, value in payload.items():
        _render(str(key), value, 0, lines)
    print("\n".join(lines))


def _want(args: argparse.Namespace, count: int) -> tuple[int, ...]:
    if len(args.primes) != count:
        raise ValueError(
            f"{args.command} needs exactly {count} primes, "
            f"got {len(args.primes)}"
        )
    return args.primes


def _cmd_lk(args: argparse.Namespace) -> dict:
    l, lprime = _want(args, 2)
    value = lk(l, lprime, args.p, n=args.precision)
    out: dict = {
        "l": l,
        "lprime": lprime,
        "kind": value.kind,
        "parity": value.bit,
    }
    if value.kind == "finite":
        out["value"] = value.value
        out["modulus"] = None
    else:
        modulus = args.p**args.precision
        out["value"] = value.mod(modulus)
        out["modulus"] = modulus
        if args.p == 2:
            out["sign_exp"] = value.sign_exp
    return out


def _cmd_linkmatrix(args: argparse.Namespace) -> dict:
    matrix = linking_matrix(args.primes, args.p, n=args.precision)
    modulus = args.p**args.precision
    size = matrix.size
    values = []
    residues = []
    for i in range(size):
        row = []
        for j in range(size):
            entry = matrix.value(i, j)
            row.append(entry.value if entry.kind == "finite" else entry.mod(modulus))
        values.append(row)
        residues.append([matrix.mod(i, j, args.p) for j in range(size)])
    out: dict = {
        "labels": list(matrix.primes),
        "cyclotomic_modulus": modulus,
        "values": values,
        "residues_mod_p": residues,
    }
    if args.p == 2:
        out["sign_exps"] = [matrix.value(i, 0).sign_exp for i in range(size)]
    return out


def _cmd_redei(args: argparse.Namespace) -> dict:
    a, b, c = _want(args, 3)
    symbol = redei_symbol(
        a, b, c, method=args.method, point_index=args.point_index
    )
    return {
        "a": a,
        "b": b,
        "c": c,
        "method": args.method,
        "symbol": symbol,
        "mu2": (1 - symbol) // 2,
    }


def _cmd_milnor(args: argparse.Namespace) -> dict:
    if args.p != 2:
        raise NotImplementedVariant("the Milnor table is computed for p = 2")
    relations = relations_mod_f4(args.primes)
    out = relations.to_dict()
    out["free_quotient"] = relations.is_free_quotient()
    return out


def _cmd_koch(args: argparse.Namespace) -> dict:
    pres = koch_presentation(
        args.primes,
        args.p,
        infinity=args.infinity,
        q=args.q,
        n=args.precision,
    )
    out = pres.to_dict()
    out["generator_rank"] = generator_rank(
        args.primes, args.p, infinity=args.infinity, q=args.q
    )
    return out


def _cmd_borromean(args: argparse.Namespace) -> dict:
    l1, l2 = _want(args, 2)
    out: dict = {"l1": l1, "l2": l2, "borromean": is_borromean(l1, l2)}
    try:
        relations = relations_mod_f4((l1, l2))
    except HypothesisError as exc:
        out["reason"] = str(exc)
    else:
        out["relations"] = relations.to_dict()["relations"]
        out["free_quotient"] = relations.is_free_quotient()
    return out


def _cmd_circular(args: argparse.Namespace) -> dict:
    if args.sigma is not None:
        report = is_circular(args.primes, args.p, q=args.q, sigma=args.sigma)
        if not report.ok:
            failed = [c.name for c in report.conditions if not c.ok]
            raise HypothesisError(
                f"arrangement {list(args.sigma)} fails: {', '.join(failed)}"
            )
        return report.to_dict()
    report = find_circular_order(args.primes, args.p, q=args.q)
    if report is None:
        raise HypothesisError(
            f"no arrangement of {list(args.primes)} passes the "
            "circularity conditions"
        )
    return report.to_dict()


def _cmd_iwasawa(args: argparse.Namespace) -> dict:
    sigma: str | int = args.sigma
    if sigma != "inf":
        sigma = int(sigma)
    approx = fitting_approx(args.primes, sigma=sigma, precision=args.precision)
    return approx.to_dict()


def _cmd_delta_imag(args: argparse.Namespace) -> dict:
    l1, l2 = _want(args, 2)
    result = delta_imag(l1, l2, precision=args.precision)
    out = result.to_dict()
    out["display"] = f"{result.delta} (mod 4T, 8)"
    return out


def _cmd_delta_real(args: argparse.Namespace) -> dict:
    l1, l2 = _want(args, 2)
    result = real_case(l1, l2, precision=args.precision)
    out = result.to_dict()
    out["display"] = "(" + ", ".join(str(g) for g in result.ideal) + ")"
    return out


def _cmd_gold(args: argparse.Namespace) -> dict:
    return gold_test(args.p, args.d).to_dict()


HANDLERS: dict[str, Callable[[argparse.Namespace], dict]] = {
    "lk": _cmd_lk,
    "linkmatrix": _cmd_linkmatrix,
    "redei": _cmd_redei,
    "milnor": _cmd_milnor,
    "koch": _cmd_koch,
    "borromean": _cmd_borromean,
    "circular": _cmd_circular,
    "iwasawa": _cmd_iwasawa,
    "delta-imag": _cmd_delta_imag,
    "delta-real": _cmd_delta_real,
    "gold": _cmd_gold,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "table"),
        default="json",
        help="output format (identical content either way)",
    )
    common.add_argument(
        "--precision",
        type=int,
        default=None,
        help=f"working precision in digits (default {DEFAULT_PRECISION}, "
        f"or ${PRECISION_ENV})",
    )

    parser = argparse.ArgumentParser(
        prog="primelink",
        description="Linking numbers, triple symbols, and pro-p "
        "presentations of prime sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    s = add("lk", "one linking number lk(l, l')")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--primes", type=_prime_list, required=True,
                   metavar="L,LPRIME")

    s = add("linkmatrix", "all pairwise linking numbers of {p} | S")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--primes", type=_prime_list, required=True)

    s = add("redei", "triple symbol [a, b, c] and its exponent")
    s.add_argument("--primes", type=_prime_list, required=True,
                   metavar="A,B,C")
    s.add_argument("--method", choices=("auto", "closed", "conic"),
                   default="auto")
    s.add_argument("--point-index", type=int, default=0)
    s.set_defaults(p=2)

    s = add("milnor", "mod-2 Milnor numbers of S against infinity")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--primes", type=_prime_list, required=True)

    s = add("koch", "generators and tame relations for the set S")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--primes", type=_prime_list, required=True)
    s.add_argument("--infinity", action="store_true",
                   help="adjoin the archimedean place (p = 2 only)")
    s.add_argument("--q", type=int, default=None,
                   help="auxiliary prime 3 (mod 4) (p = 2 only)")

    s = add("borromean", "Borromean verdict for the triple (2, l1, l2)")
    s.add_argument("--primes", type=_prime_list, required=True,
                   metavar="L1,L2")
    s.set_defaults(p=2)

    s = add("circular", "search for a circular arrangement of {p} | S")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--primes", type=_prime_list, required=True)
    s.add_argument("--q", type=int, default=None)
    s.add_argument("--sigma", type=_int_list, default=None,
                   help="test this arrangement instead of searching")

    s = add("iwasawa", "Fitting-ideal approximation from depth-4 relators")
    s.add_argument("--primes", type=_prime_list, required=True)
    s.add_argument("--sigma", default="inf",
                   help="'inf' or an auxiliary prime 3 (mod 4)")
    s.set_defaults(p=2)

    s = add("delta-imag", "characteristic polynomial mod (4T, 8), "
            "imaginary two-prime family")
    s.add_argument("--primes", type=_prime_list, required=True,
                   metavar="L1,L2")
    s.set_defaults(p=2)

    s = add("delta-real", "ideal and presentation, real two-prime family")
    s.add_argument("--primes", type=_prime_list, required=True,
                   metavar="L1,L2")
    s.set_defaults(p=2)

    s = add("gold", "linking criterion for the quadratic field of -d")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--d", type=int, required=True)

    return parser


def _resolve_precision(args: argparse.Namespace) -> None:
    if args.precision is None:
        raw = os.environ.get(PRECISION_ENV)
        if raw is None:
            args.precision = DEFAULT_PRECISION
        else:
            try:
                args.precision = int(raw)
            except ValueError:
                raise ValueError(
                    f"{PRECISION_ENV}={raw!r} is not an integer"
                )
    if not 1 <= args.precision <= 512:
        raise ValueError(
            f"precision {args.precision} out of range 1..512"
        )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _resolve_precision(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    handler = HANDLERS[args.command]
    try:
        payload = handler(args)
    except (HypothesisError, SearchExhausted) as exc:
        rejection = {
            "rejection": {"type": type(exc).__name__, "reason": str(exc)},
            "config": _config(args),
        }
        _emit(rejection, args.format)
        return 1
    except NotImplementedVariant as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload["config"] = _config(args)
    _emit(payload, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
