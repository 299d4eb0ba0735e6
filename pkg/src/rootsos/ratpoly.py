"""Exact arithmetic over Q and Q[x].

Polynomials are dense coefficient vectors of ``fractions.Fraction``, index i
holding the coefficient of x**i.  The zero polynomial is the empty vector and
its degree is the sentinel ``NEG_INF``, which compares below every integer.
All values are immutable and all operations are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
CoeffLike = Union[int, str, Fraction]

#: Degree of the zero polynomial; below all integers.
NEG_INF = float("-inf")


class DivisionByZeroPoly(ZeroDivisionError):
    """Polynomial division by the zero polynomial."""


class BothZero(ValueError):
    """gcd/extended_gcd of two zero polynomials is undefined."""


class ZeroPolynomial(ValueError):
    """Operation is undefined for the zero polynomial."""


class NotSquarefree(ValueError):
    """Input has a repeated factor where a squarefree polynomial is required."""


class Poly:
    """Immutable dense univariate polynomial over Q."""

    __slots__ = ("coeffs",)

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[CoeffLike] = ()) -> None:
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: CoeffLike) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, power: int, c: CoeffLike = 1) -> "Poly":
        if power < 0:
            raise ValueError("power must be non-negative")
        return cls([0] * power + [c])

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> Union[int, float]:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Fraction:
        """Coefficient of x**k (zero when k exceeds the degree)."""
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- ring operations ---------------------------------------------------

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["Poly", int, Fraction]) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def __rmul__(self, other: Union[int, Fraction]) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = Poly.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Exact Euclidean division: self = q*other + r with deg r < deg other."""
        if not isinstance(other, Poly):
            return NotImplemented
        if other.is_zero:
            raise DivisionByZeroPoly("division by the zero polynomial")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lc = 1 / other.leading_coefficient
        quo = [Fraction(0)] * max(len(rem) - db, 0)
        for top in range(len(rem) - 1, db - 1, -1):
            c = rem[top]
            if not c:
                continue
            c *= inv_lc
            quo[top - db] = c
            for i, b in enumerate(other.coeffs):
                rem[top - db + i] -= c * b
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    # -- calculus / normal forms -------------------------------------------

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        return self * (1 / self.leading_coefficient)

    def __call__(self, point):
        """Horner evaluation; exact for Fraction/int points, generic otherwise."""
        acc = point * 0  # zero of the point's type
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    # -- display -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "x" if k == 1 else f"x^{k}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    if a.is_zero and b.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    r0, r1 = a, b
    while not r1.is_zero:
        r0, r1 = r1, r0 % r1
        if not r1.is_zero:
            r1 = r1.monic()  # keeps coefficient growth in check
    return r0.monic()


def extended_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g, g the monic gcd.

    The cofactors are put in canonical minimal-degree form:
    deg s < deg b - deg g and deg t < deg a - deg g whenever those bounds are
    satisfiable (for two nonzero constants the convention is s = 0).
    """
    if a.is_zero and b.is_zero:
        raise BothZero("extended_gcd(0, 0) is undefined")
    if a.is_zero:
        lc = b.leading_coefficient
        return b.monic(), Poly.zero(), Poly.constant(1 / lc)
    if b.is_zero:
        lc = a.leading_coefficient
        return a.monic(), Poly.constant(1 / lc), Poly.zero()

    r0, r1 = a, b
    s0, s1 = Poly.one(), Poly.zero()
    t0, t1 = Poly.zero(), Poly.one()
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv_lc = 1 / r0.leading_coefficient
    g, s, t = r0 * inv_lc, s0 * inv_lc, t0 * inv_lc

    # Canonicalize: reduce s modulo b/g, recompute t by exact division.
    cof_b = b // g
    s = s % cof_b
    t_num = g - s * a
    t, rem = divmod(t_num, b)
    if not rem.is_zero:
        raise AssertionError("extended_gcd internal error: inexact cofactor")
    return g, s, t


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """Monic squarefree pairwise-coprime factors with multiplicities.

    ``constant * prod(factor**multiplicity)`` reconstructs the input exactly.
    """

    constant: Fraction
    parts: tuple[tuple[Poly, int], ...]

    def reconstruct(self) -> Poly:
        out = Poly.constant(self.constant)
        for factor, mult in self.parts:
            out = out * factor**mult
        return out


def squarefree_decompose(f: Poly) -> SquarefreeDecomposition:
    """Yun's squarefree decomposition (characteristic zero)."""
    if f.is_zero:
        raise ZeroPolynomial("squarefree decomposition of 0 is undefined")
    constant = f.leading_coefficient
    m = f.monic()
    if m.degree == 0:
        return SquarefreeDecomposition(constant, ())

    parts: list[tuple[Poly, int]] = []
    df = m.derivative()
    a0 = gcd(m, df)
    b = m // a0
    d = (df // a0) - b.derivative()
    i = 1
    while b.degree > 0:
        a = gcd(b, d) if not d.is_zero else b.monic()
        b, rem_b = divmod(b, a)
        if not rem_b.is_zero:
            raise AssertionError("Yun internal error: inexact division")
        d = (d // a) - b.derivative()
        if a.degree > 0:
            parts.append((a, i))
        i += 1
    return SquarefreeDecomposition(constant, tuple(parts))


def is_squarefree(f: Poly) -> bool:
    if f.is_zero:
        raise ZeroPolynomial("squarefreeness of 0 is undefined")
    if f.degree == 0:
        return True
    return gcd(f, f.derivative()).degree == 0


def sturm_sequence(f: Poly) -> list[Poly]:
    """Sturm chain f, f', -rem(...), ... (zero tail dropped)."""
    seq = [f, f.derivative()]
    while not seq[-1].is_zero:
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _sign_variations(signs: list[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for x, y in zip(nz, nz[1:]) if x != y)


def sturm_real_root_count(f: Poly) -> int:
    """Number of distinct real roots of a squarefree polynomial."""
    if f.is_zero:
        raise ZeroPolynomial("root count of 0 is undefined")
    if not is_squarefree(f):
        raise NotSquarefree("Sturm root count requires a squarefree input")
    chain = sturm_sequence(f)

    def sign_at_inf(p: Poly, positive: bool) -> int:
        lc = p.leading_coefficient
        s = 1 if lc > 0 else -1
        if not positive and int(p.degree) % 2 == 1:
            s = -s
        return s

    at_pos = [sign_at_inf(p, True) for p in chain]
    at_neg = [sign_at_inf(p, False) for p in chain]
    return _sign_variations(at_neg) - _sign_variations(at_pos)


def norm2_squared(p: Poly) -> Fraction:
    """Squared coefficient 2-norm, exact."""
    return sum((c * c for c in p.coeffs), Fraction(0))


def sqrt_upper_bound(r: Fraction, digits: int = 24) -> Fraction:
    """Conservative rational upper bound on sqrt(r) for r >= 0.

    The value is lifted into [1, 100) by powers of 100, bounded by
    (isqrt(ceil(. * M^2)) + 1)/M with M = 10**digits, and scaled back, so
    bound**2 > r always holds and the relative error stays around
    10**-digits regardless of the magnitude of r.
    """
    if r < 0:
        raise ValueError("sqrt of a negative rational")
    if r == 0:
        return Fraction(0)
    shift = 0
    lifted = r
    while lifted < 1:
        lifted *= 10000
        shift += 2
    scale = 10**digits
    num = -((-lifted.numerator * scale * scale) // lifted.denominator)  # ceil
    return Fraction(math.isqrt(num) + 1, scale * 10**shift)
