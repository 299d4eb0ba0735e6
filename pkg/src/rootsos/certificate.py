"""Certificate data model, exact verifier, and JSON serialization.

A certificate for (f, g) is the exact identity g = sum w_i h_i^2 + q*f with
positive rational weights and deg h_i < deg f; its existence proves that g
is non-negative at every real root of f.  The file format stores every
rational bit-exactly as a "num/den" string, so verification after a
round-trip is still an exact computation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .ratpoly import Poly

FORMAT_VERSION = "sos-cert/1"

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


class ParseError(ValueError):
    """Malformed certificate text; carries a line number when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.message = message


@dataclass(frozen=True)
class Certificate:
    """(f, g, weights, polys, q) with g = sum w_i polys_i^2 + q*f."""

    f: Poly
    g: Poly
    weights: tuple[Fraction, ...]
    polys: tuple[Poly, ...]
    q: Poly


@dataclass(frozen=True)
class Verdict:
    """Outcome of exact verification; falsy when invalid."""

    valid: bool
    reason: Optional[str] = None
    residual: Optional[Poly] = None

    def __bool__(self) -> bool:
        return self.valid


def verify(cert: Certificate) -> Verdict:
    """Exact check of every certificate invariant.

    Returns the first violated clause; for the identity clause the non-zero
    residual polynomial g - sum w_i h_i^2 - q*f is attached.
    """
    if len(cert.weights) != len(cert.polys):
        return Verdict(False, "weights and squares have different lengths")
    if cert.f.is_zero:
        return Verdict(False, "modulus f is zero")
    for i, w in enumerate(cert.weights):
        if w <= 0:
            return Verdict(False, f"weight {i + 1} is not positive")
    for i, h in enumerate(cert.polys):
        if not h.degree < cert.f.degree:
            return Verdict(False, f"square {i + 1} has degree >= deg f")
    acc = Poly.zero()
    for w, h in zip(cert.weights, cert.polys):
        acc = acc + h * h * w
    residual = cert.g - acc - cert.q * cert.f
    if not residual.is_zero:
        return Verdict(False, "identity g = sum w_i h_i^2 + q*f fails", residual)
    return Verdict(True)


def _rational_str(x: Fraction) -> str:
    return str(x)  # Fraction renders canonically as "n" or "n/d"


def _poly_obj(p: Poly) -> list[str]:
    return [_rational_str(c) for c in p.coeffs]


def _parse_rational(text: object, where: str) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ParseError(f"{where}: expected a rational string, got {text!r}")
    num, _, den = text.partition("/")
    if den == "":
        return Fraction(int(num))
    if int(den) == 0:
        raise ParseError(f"{where}: zero denominator")
    return Fraction(int(num), int(den))


def _parse_poly(obj: object, where: str) -> Poly:
    if not isinstance(obj, list):
        raise ParseError(f"{where}: expected a coefficient array")
    return Poly(_parse_rational(c, f"{where}[{i}]") for i, c in enumerate(obj))


def serialize(cert: Certificate) -> str:
    """Render a certificate as a stable, bit-exact JSON document."""
    doc = {
        "version": FORMAT_VERSION,
        "f": _poly_obj(cert.f),
        "g": _poly_obj(cert.g),
        "q": _poly_obj(cert.q),
        "terms": [
            {"omega": _rational_str(w), "h": _poly_obj(h)}
            for w, h in zip(cert.weights, cert.polys)
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def deserialize(text: str) -> Certificate:
    """Parse a serialized certificate; raises ParseError with position info."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported version {version!r} (expected {FORMAT_VERSION!r})")
    for key in ("f", "g", "q", "terms"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    terms = doc["terms"]
    if not isinstance(terms, list):
        raise ParseError("'terms' must be an array")
    weights: list[Fraction] = []
    polys: list[Poly] = []
    for i, term in enumerate(terms):
        if not isinstance(term, dict) or "omega" not in term or "h" not in term:
            raise ParseError(f"terms[{i}] must be an object with 'omega' and 'h'")
        weights.append(_parse_rational(term["omega"], f"terms[{i}].omega"))
        polys.append(_parse_poly(term["h"], f"terms[{i}].h"))
    return Certificate(
        f=_parse_poly(doc["f"], "f"),
        g=_parse_poly(doc["g"], "g"),
        weights=tuple(weights),
        polys=tuple(polys),
        q=_parse_poly(doc["q"], "q"),
    )
