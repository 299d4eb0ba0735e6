"""Exact rationalization of the floating-point Gram pair.

Rounds (Q*, q*) at a precision derived from the smallest-eigenvalue margin,
projects the rounded matrix back onto the affine space of Gram matrices of
g - q*f (Frobenius-orthogonal), certifies positive definiteness by an exact
LDL^T decomposition over Q, and extracts the weighted sum-of-squares
decomposition.  Every certificate identity is re-verified exactly before it
is returned, so floating-point behaviour can never produce a wrong result.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import numeric
from .numeric import (
    DEFAULT_PRECISION_BITS,
    PRECISION_CAP_BITS,
    IllConditioned,
    NotStrictlyPositive,
    RootClassificationUnstable,
    exact_fraction,
)
from .ratpoly import Poly, norm2_squared, sqrt_upper_bound

Matrix = tuple[tuple[Fraction, ...], ...]

DEFAULT_DIGITS_CAP = 64
DEFAULT_MAX_RETRIES = 3


class DegreeTooHigh(ValueError):
    """Polynomial degree exceeds 2n-2 for the requested matrix size."""


class NotPD(ArithmeticError):
    """Exact LDL^T check found a non-positive pivot."""


class PrecisionExhausted(ArithmeticError):
    """Certification failed at the precision cap; diagnostics attached."""

    def __init__(self, message: str, sigma=None, rho=None, delta=None, precision_bits=None):
        super().__init__(message)
        self.sigma = sigma
        self.rho = rho
        self.delta = delta
        self.precision_bits = precision_bits


@dataclass(frozen=True)
class GramLift:
    """Exact Gram certificate data: g = x^T Q x + q*f with Q symmetric."""

    Q: Matrix
    q: Poly
    f: Poly
    g: Poly

    def __post_init__(self):
        _check_symmetric(self.Q)
        if gram_poly(self.Q) + self.q * self.f != self.g:
            raise ValueError("GramLift identity g = x^T Q x + q*f does not hold")


@dataclass(frozen=True)
class SOSDecomposition:
    """Positive weighted squares: sum w_i h_i^2, taken modulo ``modulus``."""

    weights: tuple[Fraction, ...]
    polys: tuple[Poly, ...]
    modulus: Poly

    def __post_init__(self):
        if len(self.weights) != len(self.polys):
            raise ValueError("weights and polynomials must pair up")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be strictly positive")
        if any(not h.degree < self.modulus.degree for h in self.polys):
            raise ValueError("square degrees must stay below the modulus degree")

    def square_sum(self) -> Poly:
        out = Poly.zero()
        for w, h in zip(self.weights, self.polys):
            out = out + h * h * w
        return out


@dataclass(frozen=True)
class LDLReport:
    """Unit lower-triangular L and positive diagonal D with L D L^T = Q."""

    lower: Matrix
    diag: tuple[Fraction, ...]


def _check_symmetric(rows) -> None:
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise ValueError("matrix must be symmetric")


def _as_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(x) if isinstance(x, int) else x for x in row) for row in rows)


def gram_poly(rows) -> Poly:
    """The quadratic form x^T Q x as a polynomial in x = [1, x, ..., x^{n-1}]."""
    n = len(rows)
    coeffs = [Fraction(0)] * (2 * n - 1) if n else []
    for i in range(n):
        for j in range(n):
            coeffs[i + j] += rows[i][j]
    return Poly(coeffs)


def gram_of_poly(p: Poly, n: int) -> Matrix:
    """Canonical antidiagonal-averaged Gram matrix of p (degree <= 2n-2).

    Entry (i, j) is p_{i+j}/s_{i+j} where s_k counts the entries on the
    k-th antidiagonal, so the quadratic form reproduces p exactly and the
    Frobenius norm is bounded by the coefficient norm of p.
    """
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    if p.degree > 2 * n - 2:
        raise DegreeTooHigh(f"degree {p.degree} exceeds 2n-2 = {2 * n - 2}")
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            k = i + j
            s = min(k, 2 * n - 2 - k) + 1
            rows[i][j] = p.coefficient(k) / s
    return tuple(tuple(row) for row in rows)


def project(qbar, target: Poly) -> Matrix:
    """Frobenius-orthogonal projection onto {Q : x^T Q x = target}.

    Implemented as Q - Q_e with e the quadratic-form error, which subtracts
    a combination of the antidiagonal (Hankel) basis matrices.
    """
    qbar = _as_matrix(qbar)
    _check_symmetric(qbar)
    n = len(qbar)
    if target.degree > 2 * n - 2:
        raise DegreeTooHigh(f"degree {target.degree} exceeds 2n-2 = {2 * n - 2}")
    err = gram_poly(qbar) - target
    correction = gram_of_poly(err, n)
    return tuple(
        tuple(qbar[i][j] - correction[i][j] for j in range(n)) for i in range(n)
    )


def delta_bound(f: Poly, sigma, rho) -> Fraction:
    """Safe rounding precision 0.99*(sigma - rho)/(n + (n-1)*sqrt(n)*||f||).

    Computed from conservative exact rationals (sigma rounded down, rho and
    the square roots rounded up); a non-positive result signals that the
    numeric stage must rerun at a higher precision.
    """
    n = int(f.degree)
    if n < 1:
        raise ValueError("f must have degree >= 1")
    sig = exact_fraction(sigma)
    ro = exact_fraction(rho)
    denom = n + (n - 1) * sqrt_upper_bound(Fraction(n)) * sqrt_upper_bound(norm2_squared(f))
    return Fraction(99, 100) * (sig - ro) / denom


def _round_scalar(value, digits: int) -> Fraction:
    scaled = exact_fraction(value) * 10**digits
    num, den = scaled.numerator, scaled.denominator
    q, r = divmod(abs(num), den)
    if 2 * r >= den:
        q += 1
    return Fraction(q if num >= 0 else -q, 10**digits)


def round_to_digits(value, digits: int):
    """Round floats to the nearest fractions with denominator 10**digits.

    Accepts a scalar, a polynomial (Poly or flat coefficient sequence,
    returned as Poly), or a square matrix (rounded on the lower triangle and
    mirrored, so symmetry is exact by construction).
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if isinstance(value, Poly):
        return Poly(_round_scalar(c, digits) for c in value.coeffs)
    if isinstance(value, Sequence) or isinstance(value, tuple):
        seq = list(value)
        if seq and isinstance(seq[0], (Sequence, tuple)) and not isinstance(seq[0], (str, bytes)):
            n = len(seq)
            rows = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1):
                    rows[i][j] = rows[j][i] = _round_scalar(seq[i][j], digits)
            return tuple(tuple(row) for row in rows)
        return Poly(_round_scalar(c, digits) for c in seq)
    return _round_scalar(value, digits)


def check_positive_definite(rows) -> Optional[LDLReport]:
    """Exact square-root-free Cholesky (LDL^T) over Q.

    Returns the decomposition when every pivot is strictly positive, which
    proves positive definiteness; returns None as soon as a pivot fails.
    """
    q = _as_matrix(rows)
    _check_symmetric(q)
    n = len(q)
    lower = [[Fraction(0)] * n for _ in range(n)]
    diag: list[Fraction] = []
    for j in range(n):
        lower[j][j] = Fraction(1)
        pivot = q[j][j] - sum((lower[j][k] ** 2 * diag[k] for k in range(j)), Fraction(0))
        if pivot <= 0:
            return None
        diag.append(pivot)
        for i in range(j + 1, n):
            acc = q[i][j] - sum(
                (lower[i][k] * lower[j][k] * diag[k] for k in range(j)), Fraction(0)
            )
            lower[i][j] = acc / pivot
    return LDLReport(tuple(tuple(r) for r in lower), tuple(diag))


def gram_to_sos(lift: GramLift) -> SOSDecomposition:
    """Weighted SOS from the LDL^T factors: weights from D, squares from L.

    Column i of L, read in the basis 1, x, ..., x^{n-1}, is the i-th square;
    the reconstruction sum w_i h_i^2 = x^T Q x is exact.
    """
    report = check_positive_definite(lift.Q)
    if report is None:
        raise NotPD("Gram matrix is not positive definite")
    n = len(lift.Q)
    polys = tuple(Poly(report.lower[r][i] for r in range(n)) for i in range(n))
    return SOSDecomposition(report.diag, polys, lift.f)


def _digits_for(delta: Fraction, cap: int) -> int:
    """ceil(log10(1/delta)) clamped to [1, cap]."""
    t = 1
    while Fraction(1, 10**t) > delta and t < cap:
        t += 1
    return t


def certify_strict_squarefree(
    f: Poly,
    g: Poly,
    *,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    digits_cap: int = DEFAULT_DIGITS_CAP,
    max_retries: int = DEFAULT_MAX_RETRIES,
    lambda_factor: float = 2.0,
) -> tuple[GramLift, SOSDecomposition]:
    """Exact rational Gram certificate for g strictly positive at the real
    roots of a squarefree f.

    Pipeline per attempt: approximate roots, build the interior pair
    (Q*, q*), derive the safe rounding precision from the eigenvalue margin,
    round, project, and check positive definiteness exactly.  When the margin
    is not positive (or the exact check fails even after two extra digits),
    the working precision doubles; after ``max_retries`` doublings the
    attempt is abandoned with diagnostics.
    """
    if f.is_zero or f.degree < 1:
        raise ValueError("f must have degree >= 1")
    digits_cap = max(1, min(digits_cap, 64))
    q_reduction, g_red = divmod(g, f)

    bits = precision_bits
    last_sigma = last_rho = last_delta = None
    for _attempt in range(max_retries + 1):
        try:
            roots = numeric.find_roots(f, bits)
            gram = numeric.build_interior_gram(f, g_red, roots, lambda_factor)
        except RootClassificationUnstable as exc:
            raise PrecisionExhausted(str(exc), precision_bits=bits) from exc
        except IllConditioned:
            gram = None
        except NotStrictlyPositive as exc:
            if exc.definitive:
                raise
            gram = None  # too close to zero to call; retry sharper

        if gram is not None:
            delta = delta_bound(f, gram.sigma, gram.rho)
            last_sigma, last_rho, last_delta = gram.sigma, gram.rho, delta
            if delta > 0:
                digits = _digits_for(delta, digits_cap)
                for t in (digits, min(digits + 2, digits_cap)):
                    qbar = round_to_digits(gram.Qstar, t)
                    q_round = round_to_digits(Poly(exact_fraction(c) for c in gram.qstar), t)
                    target = g_red - q_round * f
                    q_exact = project(qbar, target)
                    if check_positive_definite(q_exact) is None:
                        continue
                    lift = GramLift(q_exact, q_round + q_reduction, f, g)
                    sos = gram_to_sos(lift)
                    if sos.square_sum() != gram_poly(q_exact):
                        raise AssertionError("LDL reconstruction mismatch")
                    return lift, sos

        new_bits = min(2 * bits, PRECISION_CAP_BITS)
        if new_bits == bits:
            break
        bits = new_bits

    raise PrecisionExhausted(
        f"no positive-definite rounding found up to {bits} bits "
        f"(sigma={last_sigma}, rho={last_rho}, delta={last_delta})",
        sigma=last_sigma,
        rho=last_rho,
        delta=last_delta,
        precision_bits=bits,
    )
