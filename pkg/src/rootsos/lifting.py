"""Lifting machinery for the non-squarefree / non-negative case.

Extends an SOS decomposition modulo an irreducible p to modulo p**e by a
Newton square-root iteration applied to a single well-chosen square,
recombines decompositions across pairwise-coprime moduli through Chinese
remainder idempotents, and reduces the non-negative problem to the strictly
positive one via the Bezout identity 1 = s*(f/d) + t*d^2 with d = gcd(f, g).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exactify
from .certificate import Certificate, verify
from .exactify import SOSDecomposition, certify_strict_squarefree
from .factorq import DEFAULT_SEED, factor_over_Q
from .numeric import NotStrictlyPositive
from .ratpoly import Poly, extended_gcd, gcd


class NoInvertibleSquare(ValueError):
    """No square in the decomposition is invertible modulo p."""


class NotIrreducible(ValueError):
    """A gcd became non-trivial where irreducibility was assumed."""


class NotCoprime(ValueError):
    """Moduli for recombination must be pairwise coprime."""


class HypothesisViolated(ValueError):
    """gcd(f, g) and f/gcd(f, g) share a factor; no certificate can exist."""

    def __init__(self, d: Poly, cofactor: Poly):
        common = gcd(d, cofactor)
        super().__init__(
            f"gcd(f,g) = {d} and f/gcd(f,g) = {cofactor} share the factor {common}"
        )
        self.d = d
        self.cofactor = cofactor


class ZeroG(ValueError):
    """g = 0 must be handled by the caller (empty certificate)."""


class NotNonnegative(ArithmeticError):
    """g is negative at a numerically located real root of a factor of f."""

    def __init__(self, factor: Poly, root, value):
        super().__init__(f"g is negative near the real root {root} of {factor}")
        self.factor = factor
        self.root = root
        self.value = value


@dataclass(frozen=True)
class StrictReduction:
    """d = gcd(f, g), cofactor = f/d, and b with b*d^2 = g mod f.

    b is reduced modulo the cofactor; it is coprime to the cofactor and
    strictly positive at its real roots whenever g is non-negative at the
    real roots of f.
    """

    d: Poly
    cofactor: Poly
    b: Poly


def newton_sqrt_iterates(gbar: Poly, h0: Poly, p: Poly, e: int) -> list[Poly]:
    """Newton iterates h^(k+1) = (h^(k) + s*gbar)/2 mod p^(2^(k+1)).

    Starting from h0 with h0^2 = gbar mod p, iterate k = ceil(log2(e))
    times; s inverts the current iterate modulo p^(2^(k+1)).  The returned
    list contains h0 and every iterate, so (iterates[k])^2 = gbar mod p^(2^k)
    can be checked step by step.
    """
    if e < 1:
        raise ValueError("target exponent must be >= 1")
    steps = (e - 1).bit_length()  # ceil(log2(e))
    iterates = [h0]
    h = h0
    for k in range(steps):
        modulus = p ** (2 ** (k + 1))
        unit, s, _ = extended_gcd(h, modulus)
        if unit != Poly.one():
            raise NotIrreducible(
                f"{h} is not invertible modulo {p}^{2 ** (k + 1)}"
            )
        h = ((h + s * gbar) * Fraction(1, 2)) % modulus
        iterates.append(h)
    return iterates


def hensel_lift_sos(
    sos: SOSDecomposition, p: Poly, e: int, g: Poly, lift_index: int | None = None
) -> SOSDecomposition:
    """Lift an SOS decomposition of g modulo irreducible p to modulo p**e.

    Only one square is replaced (the last one coprime to p unless
    ``lift_index`` overrides); weights are unchanged.  Requires p not to
    divide g, which guarantees an invertible square exists.
    """
    if e < 1:
        raise ValueError("target exponent must be >= 1")
    if sos.modulus != p:
        raise ValueError("decomposition modulus does not match p")
    if e == 1:
        return sos
    if (g % p).is_zero:
        raise NoInvertibleSquare("p divides g; the lifting lemma does not apply")

    if lift_index is None:
        candidates = [
            j for j, h in enumerate(sos.polys) if not h.is_zero and gcd(h, p).degree == 0
        ]
        if not candidates:
            raise NoInvertibleSquare("every square is divisible by p")
        j = candidates[-1]
    else:
        j = lift_index
        h = sos.polys[j]
        if h.is_zero or gcd(h, p).degree != 0:
            raise NoInvertibleSquare(f"square {j} is divisible by p")

    rest = Poly.zero()
    for i, (w, h) in enumerate(zip(sos.weights, sos.polys)):
        if i != j:
            rest = rest + h * h * w
    gbar = (g - rest) * (1 / sos.weights[j])
    if not ((sos.polys[j] * sos.polys[j] - gbar) % p).is_zero:
        raise NoInvertibleSquare("input is not an SOS decomposition of g modulo p")

    iterates = newton_sqrt_iterates(gbar, sos.polys[j], p, e)
    for k, h in enumerate(iterates):
        if not ((h * h - gbar) % p ** (2**k)).is_zero:
            raise AssertionError("Newton square invariant broken")
    lifted = iterates[-1] % p**e

    polys = list(sos.polys)
    polys[j] = lifted
    return SOSDecomposition(sos.weights, tuple(polys), p**e)


def crt_combine_sos(
    parts: list[tuple[Poly, SOSDecomposition]], g: Poly
) -> SOSDecomposition:
    """Combine SOS decompositions of g modulo pairwise-coprime moduli.

    Each square h is mapped to (s_i * F/f_i * h) mod F with s_i the Bezout
    inverse of F/f_i modulo f_i; the mapped factor is an idempotent modulo F,
    so squaring it does not disturb the congruence.
    """
    if not parts:
        raise ValueError("need at least one decomposition")
    moduli = [fi for fi, _ in parts]
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if gcd(moduli[i], moduli[j]).degree != 0:
                raise NotCoprime(f"{moduli[i]} and {moduli[j]} share a factor")
    for fi, sos in parts:
        if sos.modulus != fi:
            raise ValueError("decomposition modulus does not match its entry")

    total = Poly.one()
    for fi in moduli:
        total = total * fi

    weights: list[Fraction] = []
    polys: list[Poly] = []
    for fi, sos in parts:
        complement = total // fi
        unit, s, _ = extended_gcd(complement, fi)
        if unit != Poly.one():
            raise NotCoprime("moduli are not coprime")  # defensive; checked above
        idem = (s * complement) % total
        for w, h in zip(sos.weights, sos.polys):
            weights.append(w)
            polys.append((idem * h) % total)
    return SOSDecomposition(tuple(weights), tuple(polys), total)


def reduce_nonneg_to_strict(f: Poly, g: Poly) -> StrictReduction:
    """Reduce 'g non-negative at real roots of f' to a strict instance.

    With d = gcd(f, g) and the hypothesis gcd(d, f/d) = 1, the Bezout
    identity 1 = s*(f/d) + t*d^2 yields b = t*g (reduced modulo f/d) with
    b*d^2 = g mod f; b is then strictly positive at the real roots of f/d.
    """
    if f.is_zero or f.degree < 1:
        raise ValueError("f must have degree >= 1")
    if g.is_zero:
        raise ZeroG("g = 0 has the empty certificate")

    d = gcd(f, g)
    cofactor, rem = divmod(f, d)
    if not rem.is_zero:
        raise AssertionError("gcd does not divide f")
    if d.degree > 0 and gcd(d, cofactor).degree != 0:
        raise HypothesisViolated(d, cofactor)

    if cofactor.degree == 0:
        return StrictReduction(d, cofactor, Poly.zero())

    unit, _s, t = extended_gcd(cofactor, d * d)
    if unit != Poly.one():
        raise AssertionError("cofactor and d^2 are not coprime despite hypothesis")
    b = (t * g) % cofactor
    if not ((b * d * d - g) % f).is_zero:
        raise AssertionError("b*d^2 = g mod f failed")
    if gcd(b, cofactor).degree != 0:
        raise AssertionError("b is not coprime to f/d")
    return StrictReduction(d, cofactor, b)


def certify_nonnegative(
    f: Poly,
    g: Poly,
    *,
    precision_bits: int = exactify.DEFAULT_PRECISION_BITS,
    digits_cap: int = exactify.DEFAULT_DIGITS_CAP,
    max_retries: int = exactify.DEFAULT_MAX_RETRIES,
    lambda_factor: float = 2.0,
    seed: int = DEFAULT_SEED,
) -> Certificate:
    """Certificate that g is non-negative at all real roots of f.

    Reduces to the strictly positive case, certifies each irreducible factor
    of f/d separately, Hensel-lifts to the factor multiplicities, recombines
    by CRT, restores the gcd part, and recovers the exact quotient q with
    g = sum w_i h_i^2 + q*f.  The certificate is verified exactly before it
    is returned.
    """
    if f.is_zero or f.degree < 1:
        raise ValueError("f must have degree >= 1")
    if g.is_zero:
        return Certificate(f, g, (), (), Poly.zero())

    reduction = reduce_nonneg_to_strict(f, g)
    d, cofactor, b = reduction.d, reduction.cofactor, reduction.b

    if cofactor.degree == 0:
        quotient, rem = divmod(g, f)
        if not rem.is_zero:
            raise AssertionError("f should divide g when f/gcd(f,g) is constant")
        cert = Certificate(f, g, (), (), quotient)
    else:
        factorization = factor_over_Q(cofactor, seed=seed)
        parts: list[tuple[Poly, SOSDecomposition]] = []
        for p, e in factorization.factors:
            b_p = b % p
            try:
                _lift, sos = certify_strict_squarefree(
                    p,
                    b_p,
                    precision_bits=precision_bits,
                    digits_cap=digits_cap,
                    max_retries=max_retries,
                    lambda_factor=lambda_factor,
                )
            except NotStrictlyPositive as exc:
                raise NotNonnegative(p, exc.root, g(exc.root)) from exc
            if e > 1:
                sos = hensel_lift_sos(sos, p, e, b)
            parts.append((p**e, sos))
        combined = crt_combine_sos(parts, b)

        weights = combined.weights
        polys = tuple(d * h for h in combined.polys)
        acc = Poly.zero()
        for w, h in zip(weights, polys):
            acc = acc + h * h * w
        quotient, rem = divmod(g - acc, f)
        if not rem.is_zero:
            raise AssertionError("certificate identity has a non-zero remainder")
        cert = Certificate(f, g, weights, polys, quotient)

    verdict = verify(cert)
    if not verdict:
        raise AssertionError(f"emitted certificate failed verification: {verdict.reason}")
    return cert
