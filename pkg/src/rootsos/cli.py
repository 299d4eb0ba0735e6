"""Command-line front end: certify, verify, inspect.

Polynomial expressions are parsed exactly (integer, decimal, and a/b
literals; +, -, *, ^; parentheses with implicit adjacency), certificates are
written in the JSON format of the certificate module, and exit codes are
stable: 0 success, 1 parse/IO error, 2 hypothesis violated, 3 not
non-negative / invalid certificate, 4 precision exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction

from . import certificate as certmod
from .certificate import Certificate, ParseError as CertificateParseError
from .exactify import PrecisionExhausted
from .factorq import DEFAULT_SEED, factor_over_Q
from .lifting import HypothesisViolated, NotNonnegative, certify_nonnegative
from .ratpoly import Poly, gcd, squarefree_decompose, sturm_real_root_count

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_HYPOTHESIS = 2
EXIT_NOT_NONNEGATIVE = 3
EXIT_PRECISION = 4

MAX_EXPONENT = 10**4


class ParseError(ValueError):
    """Expression syntax error with position and expectation."""

    def __init__(self, position: int, expected: str):
        super().__init__(f"at position {position}: expected {expected}")
        self.position = position
        self.expected = expected


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def number(self) -> Fraction:
        self.skip_ws()
        start = self.pos
        seen_dot = False
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch.isdigit():
                self.pos += 1
            elif ch == "." and not seen_dot:
                seen_dot = True
                self.pos += 1
            else:
                break
        lexeme = self.text[start : self.pos]
        if not lexeme or lexeme == ".":
            raise ParseError(start, "a number")
        return Fraction(lexeme)

    def uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError(start, "an integer exponent")
        return int(self.text[start : self.pos])


def parse_poly(text: str) -> Poly:
    """Parse an exact univariate polynomial expression in x."""
    toks = _Tokens(text)
    poly = _parse_expr(toks)
    toks.skip_ws()
    if toks.pos != len(text):
        raise ParseError(toks.pos, "end of input")
    return poly


def _parse_expr(toks: _Tokens) -> Poly:
    acc = _parse_term(toks)
    while True:
        ch = toks.peek()
        if ch == "+":
            toks.take()
            acc = acc + _parse_term(toks)
        elif ch == "-":
            toks.take()
            acc = acc - _parse_term(toks)
        else:
            return acc


def _parse_term(toks: _Tokens) -> Poly:
    acc = _parse_factor(toks)
    while True:
        ch = toks.peek()
        if ch == "*":
            toks.take()
            acc = acc * _parse_factor(toks)
        elif ch == "(":  # implicit adjacency: x(x^3-2)^2
            acc = acc * _parse_factor(toks)
        else:
            return acc


def _parse_factor(toks: _Tokens) -> Poly:
    base = _parse_base(toks)
    if toks.peek() == "^":
        toks.take()
        exponent = toks.uint()
        if exponent > MAX_EXPONENT:
            raise ParseError(toks.pos, f"an exponent <= {MAX_EXPONENT}")
        return base**exponent
    return base


def _parse_base(toks: _Tokens) -> Poly:
    ch = toks.peek()
    if ch == "-":
        toks.take()
        return -_parse_factor(toks)
    if ch == "(":
        toks.take()
        inner = _parse_expr(toks)
        if toks.peek() != ")":
            raise ParseError(toks.pos, "')'")
        toks.take()
        return inner
    if ch in ("x", "X"):
        toks.take()
        return Poly.x()
    if ch.isdigit() or ch == ".":
        value = toks.number()
        if toks.peek() == "/":
            toks.take()
            denom = toks.number()
            if denom == 0:
                raise ParseError(toks.pos, "a non-zero denominator")
            value = value / denom
        return Poly.constant(value)
    raise ParseError(toks.pos, "a number, 'x', '(' or '-'")


def poly_str(p: Poly) -> str:
    """Human-readable rendering, descending powers."""
    return str(p)


def _read_seed() -> int:
    raw = os.environ.get("SOS_CERT_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"SOS_CERT_SEED must be an integer, got {raw!r}") from exc


def _coeff_bits(x: Fraction) -> int:
    return max(abs(x.numerator).bit_length(), x.denominator.bit_length())


def _max_bits(cert: Certificate) -> int:
    bits = 0
    for w in cert.weights:
        bits = max(bits, _coeff_bits(w))
    for h in cert.polys:
        for c in h.coeffs:
            bits = max(bits, _coeff_bits(c))
    for c in cert.q.coeffs:
        bits = max(bits, _coeff_bits(c))
    return bits


def _pretty_certificate(cert: Certificate) -> str:
    lines = [
        f"f = {poly_str(cert.f)}",
        f"g = {poly_str(cert.g)}",
        f"q = {poly_str(cert.q)}",
        f"identity: g = sum of {len(cert.weights)} weighted squares + q*f",
    ]
    for i, (w, h) in enumerate(zip(cert.weights, cert.polys), start=1):
        lines.append(f"  omega_{i} = {w},  h_{i} = {poly_str(h)}")
    return "\n".join(lines) + "\n"


def cmd_certify(args: argparse.Namespace) -> int:
    try:
        f = parse_poly(args.f)
        g = parse_poly(args.g)
        seed = _read_seed()
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    started = time.perf_counter()
    try:
        cert = certify_nonnegative(
            f,
            g,
            precision_bits=args.precision_bits,
            digits_cap=args.digits_cap,
            max_retries=args.max_retries,
            lambda_factor=float(args.lambda_factor),
            seed=seed,
        )
    except HypothesisViolated as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except NotNonnegative as exc:
        print(
            f"not non-negative: g({exc.root}) = {exc.value} < 0 "
            f"at a real root of the factor {poly_str(exc.factor)}",
            file=sys.stderr,
        )
        return EXIT_NOT_NONNEGATIVE
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    elapsed = time.perf_counter() - started

    payload = _pretty_certificate(cert) if args.pretty else certmod.serialize(cert)
    summary = (
        f"certificate: N={len(cert.weights)} terms, "
        f"max coefficient bits={_max_bits(cert)}, time={elapsed:.3f}s"
    )
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(payload)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_ERROR
        print(summary)
    else:
        sys.stdout.write(payload)
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        with open(args.cert, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        print(f"error: cannot read {args.cert}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        cert = certmod.deserialize(text)
    except CertificateParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    verdict = certmod.verify(cert)
    if verdict:
        print(f"valid: g = sum of {len(cert.weights)} weighted squares + q*f")
        return EXIT_OK
    print(f"invalid: {verdict.reason}", file=sys.stderr)
    if verdict.residual is not None:
        print(f"residual = {poly_str(verdict.residual)}", file=sys.stderr)
    return EXIT_NOT_NONNEGATIVE


def cmd_inspect(args: argparse.Namespace) -> int:
    try:
        f = parse_poly(args.f)
        g = parse_poly(args.g) if args.g is not None else None
        seed = _read_seed()
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if f.is_zero:
        print("error: f must be non-zero", file=sys.stderr)
        return EXIT_ERROR

    lines = [f"f = {poly_str(f)}", f"deg f = {int(f.degree) if f else '-inf'}"]
    if f.degree >= 1:
        sqf = squarefree_decompose(f)
        lines.append("squarefree decomposition:")
        for factor, mult in sqf.parts:
            lines.append(f"  ({poly_str(factor)})^{mult}")
        fact = factor_over_Q(f, seed=seed)
        lines.append(f"irreducible factorization (unit {fact.unit}):")
        for p, e in fact.factors:
            lines.append(
                f"  ({poly_str(p)})^{e}  [distinct real roots: {sturm_real_root_count(p)}]"
            )
    if g is not None:
        lines.append(f"g = {poly_str(g)}")
        if g.is_zero:
            lines.append("gcd(f, g) = f (g is zero); hypothesis: OK (empty certificate)")
        else:
            d = gcd(f, g)
            cofactor = f // d
            lines.append(f"d = gcd(f, g) = {poly_str(d)}")
            lines.append(f"f/d = {poly_str(cofactor)}")
            ok = d.degree == 0 or gcd(d, cofactor).degree == 0
            lines.append(f"hypothesis gcd(d, f/d) = 1: {'OK' if ok else 'VIOLATED'}")
    print("\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootsos",
        description=(
            "Compute and verify exact rational SOS certificates that g is "
            "non-negative at all real roots of f."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cert = sub.add_parser("certify", help="compute a certificate for (f, g)")
    cert.add_argument("--f", required=True, metavar="EXPR", help="modulus polynomial")
    cert.add_argument("--g", required=True, metavar="EXPR", help="polynomial to certify")
    cert.add_argument("--out", metavar="PATH", help="write the certificate here")
    cert.add_argument("--precision-bits", type=int, default=106)
    cert.add_argument("--digits-cap", type=int, default=64)
    cert.add_argument("--max-retries", type=int, default=3)
    cert.add_argument("--lambda-factor", type=Fraction, default=Fraction(2))
    fmt = cert.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--pretty", action="store_true", help="human-readable output")
    cert.set_defaults(func=cmd_certify)

    ver = sub.add_parser("verify", help="verify a certificate file exactly")
    ver.add_argument("--cert", required=True, metavar="PATH")
    ver.set_defaults(func=cmd_verify)

    ins = sub.add_parser("inspect", help="factor f and check the gcd hypothesis")
    ins.add_argument("--f", required=True, metavar="EXPR")
    ins.add_argument("--g", metavar="EXPR")
    ins.set_defaults(func=cmd_inspect)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; fold that into the IO/parse code
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
