"""Irreducible factorization of rational polynomials.

Zassenhaus scheme: reduce to a monic integer polynomial, factor modulo a
small odd prime (distinct-degree then equal-degree splitting), lift the
modular factors past the Landau-Mignotte coefficient bound by quadratic
Hensel steps, then recombine subsets by trial division over Z.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .ratpoly import Poly, squarefree_decompose

#: Inputs above this degree are refused instead of silently grinding.
DEGREE_CAP = 64

DEFAULT_SEED = 0

_PRIME_ATTEMPTS = 200


class ZeroOrConstant(ValueError):
    """Factorization needs a polynomial of degree at least 1."""


class BadPrime(ValueError):
    """Chosen prime divides the leading coefficient or breaks squarefreeness."""


class LiftFailure(ValueError):
    """Modular factors are not pairwise coprime; retry with another prime."""


class DegreeTooLarge(ValueError):
    """Input degree exceeds DEGREE_CAP."""


@dataclass(frozen=True)
class IrreducibleFactorization:
    """unit * prod(p**e) equals the input exactly; p monic irreducible."""

    unit: Fraction
    factors: tuple[tuple[Poly, int], ...]

    def reconstruct(self) -> Poly:
        out = Poly.constant(self.unit)
        for p, e in self.factors:
            out = out * p**e
        return out


@dataclass(frozen=True)
class ModularFactorSet:
    """Monic factors of ``poly`` modulo prime**level.

    ``poly`` is the monic integer image of the original input (denominators
    cleared by the x -> x/L substitution); coefficients of the factors are
    stored as canonical representatives in [0, prime**level).
    """

    prime: int
    level: int
    poly: tuple[int, ...]
    factors: tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# integer / modular coefficient-list helpers (ascending order, trimmed)
# ---------------------------------------------------------------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _deg(c: list[int]) -> int:
    return len(c) - 1


def _zp_reduce(a: list[int], m: int) -> list[int]:
    return _trim([x % m for x in a])


def _zp_add(a: list[int], b: list[int], m: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % m
    return _trim(out)


def _zp_sub(a: list[int], b: list[int], m: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % m
    return _trim(out)


def _zp_mul(a: list[int], b: list[int], m: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % m
    return _trim(out)


def _zp_divmod_monic(a: list[int], b: list[int], m: int) -> tuple[list[int], list[int]]:
    """Division by a monic polynomial over Z/mZ."""
    if not b or b[-1] % m != 1:
        raise ValueError("divisor must be monic")
    rem = [x % m for x in a]
    db = _deg(b)
    quo = [0] * max(len(rem) - db, 0)
    for top in range(len(rem) - 1, db - 1, -1):
        c = rem[top]
        if not c:
            continue
        quo[top - db] = c
        for i, y in enumerate(b):
            rem[top - db + i] = (rem[top - db + i] - c * y) % m
    return _trim(quo), _trim(rem)


def _gf_monic(a: list[int], p: int) -> list[int]:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [(x * inv) % p for x in a]


def _gf_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    inv = pow(b[-1], -1, p)
    rem = [x % p for x in a]
    db = _deg(b)
    quo = [0] * max(len(rem) - db, 0)
    for top in range(len(rem) - 1, db - 1, -1):
        c = (rem[top] * inv) % p
        if not c:
            continue
        quo[top - db] = c
        for i, y in enumerate(b):
            rem[top - db + i] = (rem[top - db + i] - c * y) % p
    return _trim(quo), _trim(rem)


def _gf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    r0, r1 = _zp_reduce(a, p), _zp_reduce(b, p)
    while r1:
        r0, r1 = r1, _gf_divmod(r0, r1, p)[1]
    return _gf_monic(r0, p)


def _gf_gcdex(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int], list[int]]:
    """(g, s, t) with s*a + t*b = g (monic) over GF(p)."""
    r0, r1 = _zp_reduce(a, p), _zp_reduce(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _zp_sub(s0, _zp_mul(q, s1, p), p)
        t0, t1 = t1, _zp_sub(t0, _zp_mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    scale = lambda c: [(x * inv) % p for x in c]
    return scale(r0), scale(s0), scale(t0)


def _gf_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _gf_divmod(a, f, p)[1]
    while e:
        if e & 1:
            result = _gf_divmod(_zp_mul(result, base, p), f, p)[1]
        base = _gf_divmod(_zp_mul(base, base, p), f, p)[1]
        e >>= 1
    return result


def _z_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _z_divmod_monic(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    rem = list(a)
    db = _deg(b)
    quo = [0] * max(len(rem) - db, 0)
    for top in range(len(rem) - 1, db - 1, -1):
        c = rem[top]
        if not c:
            continue
        quo[top - db] = c
        for i, y in enumerate(b):
            rem[top - db + i] -= c * y
    return _trim(quo), _trim(rem)


def _symmetric(c: list[int], m: int) -> list[int]:
    half = m // 2
    return _trim([((x % m) - m) if (x % m) > half else (x % m) for x in c])


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if n % q == 0:
            return n == q
    d = 37
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _odd_primes():
    n = 3
    while True:
        if _is_prime(n):
            yield n
        n += 2


# ---------------------------------------------------------------------------
# rational <-> monic integer transform
# ---------------------------------------------------------------------------


def _monic_integral(f: Poly) -> tuple[list[int], int]:
    """Map f (up to a unit) to the monic integer polynomial G(x) = L^n m(x/L).

    m is the monic normalization of f and L the lcm of the denominators of
    its coefficients; roots of G are L times the roots of f.
    """
    m = f.monic()
    n = int(m.degree)
    scale = 1
    for c in m.coeffs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    out = []
    for k, c in enumerate(m.coeffs):
        v = c * scale ** (n - k)
        if v.denominator != 1:
            raise AssertionError("monic-integral transform failed")
        out.append(int(v))
    return out, scale


def _from_integer_factor(c: list[int], scale: int) -> Poly:
    """Inverse transform: monic integer factor C -> monic rational C(Lx)/L^deg."""
    d = _deg(c)
    return Poly(Fraction(c[k] * scale**k, scale**d) for k in range(d + 1))


def _mignotte_bound(g: list[int]) -> int:
    """Upper bound on coefficient magnitudes of any monic factor of g over Z."""
    norm = math.isqrt(sum(x * x for x in g)) + 1
    return (1 << _deg(g)) * norm


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def factor_mod_p(f: Poly, prime: int, seed: int = DEFAULT_SEED) -> ModularFactorSet:
    """Complete monic irreducible factorization modulo an odd prime.

    Distinct-degree splitting followed by seeded Cantor-Zassenhaus
    equal-degree splitting; the factorization is of the monic integer image
    of f, with factors sorted by (degree, coefficients).
    """
    if f.is_zero or f.degree < 1:
        raise ZeroOrConstant("factor_mod_p needs degree >= 1")
    if prime < 3 or not _is_prime(prime):
        raise BadPrime(f"{prime} is not an odd prime")
    for c in f.coeffs:
        if c.denominator != 1:
            raise ValueError("factor_mod_p expects integer coefficients")
    if int(f.leading_coefficient) % prime == 0:
        raise BadPrime(f"{prime} divides the leading coefficient")

    g_int, _scale = _monic_integral(f)
    fbar = _zp_reduce(g_int, prime)
    if _deg(fbar) != _deg(g_int):
        raise BadPrime(f"degree drops mod {prime}")
    deriv = _trim([(k * fbar[k]) % prime for k in range(1, len(fbar))])
    if _deg(_gf_gcd(fbar, deriv, prime)) != 0:
        raise BadPrime(f"input is not squarefree mod {prime}")

    rng = random.Random(f"{seed}:{prime}:{_deg(fbar)}")
    irreducibles: list[list[int]] = []
    for part, d in _gf_distinct_degree(fbar, prime):
        irreducibles.extend(_gf_equal_degree(part, d, prime, rng))
    irreducibles.sort(key=lambda c: (len(c), c))
    return ModularFactorSet(prime, 1, tuple(g_int), tuple(tuple(c) for c in irreducibles))


def _gf_distinct_degree(f: list[int], p: int) -> list[tuple[list[int], int]]:
    out: list[tuple[list[int], int]] = []
    v = list(f)
    h = [0, 1]  # x
    d = 0
    while _deg(v) > 0:
        d += 1
        if 2 * d > _deg(v):
            out.append((v, _deg(v)))
            break
        h = _gf_powmod(h, p, v, p)
        g = _gf_gcd(_zp_sub(h, [0, 1], p), v, p)
        if _deg(g) > 0:
            out.append((g, d))
            v = _gf_divmod(v, g, p)[0]
            h = _gf_divmod(h, v, p)[1]
    return out


def _gf_equal_degree(f: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Split a product of degree-d irreducibles (Cantor-Zassenhaus, p odd)."""
    n = _deg(f)
    if n == d:
        return [_gf_monic(f, p)]
    exponent = (p**d - 1) // 2
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if _deg(a) < 1:
            continue
        u = _gf_gcd(a, f, p)
        if 0 < _deg(u) < n:
            pass
        else:
            b = _zp_sub(_gf_powmod(a, exponent, f, p), [1], p)
            u = _gf_gcd(b, f, p)
            if not 0 < _deg(u) < n:
                continue
        rest = _gf_divmod(f, u, p)[0]
        return _gf_equal_degree(u, d, p, rng) + _gf_equal_degree(rest, d, p, rng)


def hensel_lift_factors(mf: ModularFactorSet, target_level: int) -> ModularFactorSet:
    """Quadratic Hensel lifting of a modular factor set to prime**target_level."""
    if target_level <= mf.level:
        return mf
    p = mf.prime
    base = [_zp_reduce(list(c), p) for c in mf.factors]
    lifted = _lift_tree(list(mf.poly), base, p, target_level)
    lifted.sort(key=lambda c: (len(c), c))
    return ModularFactorSet(p, target_level, mf.poly, tuple(tuple(c) for c in lifted))


def _lift_tree(f: list[int], facs: list[list[int]], p: int, target: int) -> list[list[int]]:
    modulus = p**target
    if len(facs) == 1:
        return [_zp_reduce(f, modulus)]
    mid = len(facs) // 2
    g = [1]
    for c in facs[:mid]:
        g = _zp_mul(g, c, p)
    h = [1]
    for c in facs[mid:]:
        h = _zp_mul(h, c, p)
    g, h = _lift_pair(f, g, h, p, target)
    return _lift_tree(g, facs[:mid], p, target) + _lift_tree(h, facs[mid:], p, target)


def _lift_pair(
    f: list[int], g: list[int], h: list[int], p: int, target: int
) -> tuple[list[int], list[int]]:
    """Lift f = g*h from mod p to mod p**target (g, h monic and coprime mod p)."""
    gg, s, t = _gf_gcdex(g, h, p)
    if _deg(gg) != 0:
        raise LiftFailure("modular factors are not coprime")
    level = 1
    while level < target:
        level = min(2 * level, target)
        m = p**level
        e = _zp_sub(_zp_reduce(f, m), _zp_mul(g, h, m), m)
        q, r = _zp_divmod_monic(_zp_mul(s, e, m), h, m)
        g = _zp_add(g, _zp_add(_zp_mul(t, e, m), _zp_mul(q, g, m), m), m)
        h = _zp_add(h, r, m)
        if level < target:
            b = _zp_sub(_zp_add(_zp_mul(s, g, m), _zp_mul(t, h, m), m), [1], m)
            c, d = _zp_divmod_monic(_zp_mul(s, b, m), h, m)
            s = _zp_sub(s, d, m)
            t = _zp_sub(t, _zp_add(_zp_mul(t, b, m), _zp_mul(c, g, m), m), m)
    return g, h


def recombine(mf: ModularFactorSet, f: Poly) -> list[Poly]:
    """True monic irreducible rational factors of squarefree f from its
    lifted modular factor set, by subset products and trial division."""
    g_int, scale = _monic_integral(f)
    if tuple(g_int) != mf.poly:
        raise ValueError("factor set does not belong to this polynomial")
    bound = _mignotte_bound(g_int)
    modulus = mf.prime**mf.level
    if modulus <= 2 * bound:
        raise ValueError("factor set is not lifted past the coefficient bound")

    remaining = [list(c) for c in mf.factors]
    found: list[list[int]] = []
    rest = list(g_int)
    size = 1
    while 2 * size <= len(remaining):
        hit = True
        while hit:
            hit = False
            for combo in combinations(range(len(remaining)), size):
                prod = [1]
                for i in combo:
                    prod = _zp_mul(prod, remaining[i], modulus)
                cand = _symmetric(prod, modulus)
                if any(abs(x) > bound for x in cand):
                    continue
                quo, rem = _z_divmod_monic(rest, cand)
                if not rem:
                    found.append(cand)
                    rest = quo
                    remaining = [c for i, c in enumerate(remaining) if i not in combo]
                    hit = True
                    break
            if 2 * size > len(remaining):
                break
        size += 1
    if _deg(rest) > 0:
        found.append(rest)

    out = [_from_integer_factor(c, scale) for c in found]
    out.sort(key=lambda q: (q.degree, q.coeffs))
    return out


def factor_over_Q(f: Poly, seed: int = DEFAULT_SEED) -> IrreducibleFactorization:
    """Factor f into monic irreducible rational polynomials with multiplicities."""
    if f.is_zero or f.degree < 1:
        raise ZeroOrConstant("factorization needs degree >= 1")
    if f.degree > DEGREE_CAP:
        raise DegreeTooLarge(f"degree {f.degree} exceeds cap {DEGREE_CAP}")

    sqf = squarefree_decompose(f)
    factors: list[tuple[Poly, int]] = []
    for part, mult in sqf.parts:
        for irr in _factor_squarefree(part, seed):
            factors.append((irr, mult))
    factors.sort(key=lambda pe: (pe[0].degree, pe[0].coeffs))
    return IrreducibleFactorization(sqf.constant, tuple(factors))


def _factor_squarefree(part: Poly, seed: int) -> list[Poly]:
    if part.degree == 1:
        return [part.monic()]
    g_int, _scale = _monic_integral(part)
    g_poly = Poly(g_int)

    mf = None
    for prime, _ in zip(_odd_primes(), range(_PRIME_ATTEMPTS)):
        try:
            mf = factor_mod_p(g_poly, prime, seed)
            break
        except BadPrime:
            continue
    if mf is None:
        raise BadPrime("no usable prime found")  # unreachable for squarefree input
    if len(mf.factors) == 1:
        return [part.monic()]

    bound = _mignotte_bound(g_int)
    target = 1
    while mf.prime**target <= 2 * bound:
        target += 1
    lifted = hensel_lift_factors(mf, target)
    return recombine(lifted, part)
