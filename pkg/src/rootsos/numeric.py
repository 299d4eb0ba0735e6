"""Floating-point stage of the certification pipeline.

Simultaneous root approximation (Aberth-Ehrlich), conjugate-pair
classification cross-checked against the exact Sturm count, Lagrange basis
construction, and assembly of the interior Gram pair (Q*, q*) whose exact
rounding is performed downstream.  Precision is managed in software floats
with a configurable mantissa (mpmath), doubling on retry up to a hard cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .ratpoly import Poly, norm2_squared, sqrt_upper_bound, sturm_real_root_count

DEFAULT_PRECISION_BITS = 106
PRECISION_CAP_BITS = 848

_ABERTH_MAX_ITER = 500


class RootClassificationUnstable(ArithmeticError):
    """Real/complex classification keeps disagreeing with the Sturm count."""


class IllConditioned(ArithmeticError):
    """Root cluster or degenerate data at the working precision; retry higher."""


class NotStrictlyPositive(ArithmeticError):
    """g is not strictly positive at a real root (within the numeric threshold).

    ``definitive`` is set when the value is clearly negative rather than
    merely too close to zero to call at the working precision.
    """

    def __init__(self, root, value, definitive: bool):
        super().__init__(f"g({mpmath.nstr(root, 12)}) = {mpmath.nstr(value, 12)} <= threshold")
        self.root = root
        self.value = value
        self.definitive = definitive


@dataclass(frozen=True)
class RootProfile:
    """Approximate roots of a squarefree polynomial.

    ``real_roots`` is ascending; ``complex_pairs`` holds one representative
    per conjugate pair (positive imaginary part), sorted by real then
    imaginary part.  Ordered slots list each pair as (conjugate,
    representative) after the real roots.
    """

    real_roots: tuple
    complex_pairs: tuple
    precision_bits: int

    @property
    def degree(self) -> int:
        return len(self.real_roots) + 2 * len(self.complex_pairs)

    def ordered_roots(self) -> list:
        out = list(self.real_roots)
        for rep in self.complex_pairs:
            out.append(mpmath.conj(rep))
            out.append(rep)
        return out


@dataclass(frozen=True)
class InteriorGram:
    """Interior Gram pair: g = x^T Qstar x + qstar*f up to the residual rho.

    sigma is a defensible lower estimate of the smallest eigenvalue of Qstar,
    rho an upper bound on the coefficient 2-norm of the identity residual.
    """

    Qstar: tuple
    qstar: tuple
    sigma: object
    rho: object


def exact_fraction(x) -> Fraction:
    """Exact rational value of a binary float (mpf or Python float)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(*x.as_integer_ratio())
    if hasattr(x, "_mpf_"):
        num, den = mpmath.libmp.to_rational(x._mpf_)
        return Fraction(int(num), int(den))
    raise TypeError(f"cannot convert {type(x).__name__} exactly to Fraction")


def _mp_coeffs(p: Poly) -> list:
    return [mp.mpf(c.numerator) / c.denominator for c in p.coeffs]


def _horner(coeffs, x):
    acc = x * 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs, xi):
    """Quotient of coeffs (ascending) by (x - xi), remainder discarded."""
    n = len(coeffs) - 1
    quo = [mp.mpc(0)] * n
    quo[n - 1] = coeffs[n]
    for k in range(n - 2, -1, -1):
        quo[k] = coeffs[k + 1] + xi * quo[k + 1]
    return quo


def _aberth(coeffs, bits):
    """Aberth-Ehrlich simultaneous iteration; None when it fails to settle."""
    n = len(coeffs) - 1
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    if n == 1:
        return [mp.mpc(-monic[0])]
    deriv = [k * monic[k] for k in range(1, n + 1)]

    radius = 1 + max(abs(c) for c in monic[:-1])
    z = [
        radius * mp.expjpi(mp.mpf(2 * j) / n + mp.mpf(1) / (3 * n) + mp.mpf("0.1"))
        for j in range(n)
    ]
    eps = mp.ldexp(1, -bits + 8)
    for _ in range(_ABERTH_MAX_ITER):
        shift = mp.mpf(0)
        for i in range(n):
            pv = _horner(monic, z[i])
            if pv == 0:
                continue
            dv = _horner(deriv, z[i])
            if dv == 0:
                z[i] += mp.ldexp(1, -bits // 2) * (1 + abs(z[i]))
                continue
            w = pv / dv
            s = mp.mpc(0)
            collided = False
            for j in range(n):
                if j == i:
                    continue
                diff = z[i] - z[j]
                if diff == 0:
                    collided = True
                    break
                s += 1 / diff
            if collided:
                z[i] += mp.ldexp(1, -bits // 2) * (1 + abs(z[i]))
                continue
            denom = 1 - w * s
            corr = w if denom == 0 else w / denom
            z[i] -= corr
            rel = abs(corr) / (1 + abs(z[i]))
            if rel > shift:
                shift = rel
        if shift < eps:
            return z
    return None


def _classify(z, f: Poly, expected_real: int, bits: int):
    """Split approximations into real roots and conjugate-pair representatives.

    Returns None when the picture is inconsistent (wrong real count, unpaired
    complex roots, or residuals too large), signalling a precision retry.
    """
    n = len(z)
    thr = mp.ldexp(1, -(bits // 2))
    reals = []
    complexes = []
    for zi in z:
        if abs(mp.im(zi)) < thr * (1 + abs(mp.re(zi))):
            reals.append(mp.re(zi))
        else:
            complexes.append(zi)
    if len(reals) != expected_real or len(complexes) % 2 != 0:
        return None

    pos = sorted((c for c in complexes if mp.im(c) > 0), key=lambda c: (mp.re(c), mp.im(c)))
    neg = sorted((c for c in complexes if mp.im(c) < 0), key=lambda c: (mp.re(c), -mp.im(c)))
    if len(pos) != len(neg):
        return None
    pair_tol = mp.ldexp(1, -(bits // 4))
    reps = []
    for a, b in zip(pos, neg):
        if abs(a - mp.conj(b)) > pair_tol * (1 + abs(a)):
            return None
        reps.append((a + mp.conj(b)) / 2)

    # residual screen: every returned root must nearly annihilate f
    fc = _mp_coeffs(f)
    norm2 = norm2_squared(f)
    norm_f = mp.sqrt(mp.mpf(norm2.numerator) / norm2.denominator)
    bound = mp.ldexp(1, -(bits // 4)) * norm_f
    for xi in list(reals) + reps:
        if abs(_horner(fc, xi)) > bound * max(1, abs(xi)) ** n:
            return None

    reals.sort()
    reps.sort(key=lambda c: (mp.re(c), mp.im(c)))
    return tuple(reals), tuple(reps)


def find_roots(f: Poly, precision_bits: int = DEFAULT_PRECISION_BITS) -> RootProfile:
    """All complex roots of a squarefree polynomial, classified real/pair.

    The real count is validated against the exact Sturm count; on mismatch
    the working precision doubles, up to PRECISION_CAP_BITS.
    """
    if f.is_zero or f.degree < 1:
        raise ValueError("find_roots needs degree >= 1")
    expected = sturm_real_root_count(f)  # raises NotSquarefree when repeated

    bits = min(precision_bits, PRECISION_CAP_BITS)
    while True:
        with mp.workprec(bits):
            z = _aberth(_mp_coeffs(f), bits)
            split = _classify(z, f, expected, bits) if z is not None else None
        if split is not None:
            reals, reps = split
            return RootProfile(reals, reps, bits)
        if bits >= PRECISION_CAP_BITS:
            raise RootClassificationUnstable(
                f"root classification of {f} unstable at {bits} bits"
            )
        bits = min(2 * bits, PRECISION_CAP_BITS)


def lagrange_basis(f: Poly, roots: RootProfile) -> list:
    """Lagrange basis u_i = f/(f'(xi_i)(x - xi_i)) over the ordered roots.

    Each u_i is a coefficient tuple of degree n-1 with u_i(xi_j) ~ delta_ij;
    a cluster that breaks the interpolation tolerance raises IllConditioned.
    """
    n = int(f.degree)
    with mp.workprec(roots.precision_bits):
        xs = [mp.mpc(x) for x in roots.ordered_roots()]
        for i in range(n):
            for j in range(i + 1, n):
                if xs[i] == xs[j]:
                    raise IllConditioned("coincident roots at working precision")
        monic = _mp_coeffs(f.monic())
        basis = []
        for xi in xs:
            quo = _deflate(monic, xi)
            dval = _horner(quo, xi)  # f'(xi)/lc = prod_{j != i} (xi - xj)
            if dval == 0:
                raise IllConditioned("vanishing derivative at a root")
            basis.append([c / dval for c in quo])
        tol = mp.ldexp(1, -(roots.precision_bits // 4))
        for i, u in enumerate(basis):
            for j, xj in enumerate(xs):
                want = 1 if i == j else 0
                if abs(_horner(u, xj) - want) > tol:
                    raise IllConditioned("interpolation residual too large")
        return [tuple(u) for u in basis]


def _jacobi_lower_eigen_bound(rows, bits):
    """Smallest-eigenvalue lower estimate by cyclic Jacobi sweeps.

    Returns min(diagonal) minus the off-diagonal Frobenius residual, a valid
    lower bound up to the rounding of the sweeps themselves.
    """
    n = len(rows)
    a = [[mp.mpf(x) for x in row] for row in rows]
    if n == 1:
        return a[0][0]

    def off_norm():
        return mp.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))

    scale = max(abs(a[i][j]) for i in range(n) for j in range(n)) + 1
    stop = mp.ldexp(1, -bits + 8) * scale
    for _ in range(60):
        if off_norm() <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if abs(apq) <= stop / (n * n):
                    continue
                theta = (a[q][q] - a[p][p]) / (2 * apq)
                if theta == 0:
                    t = mp.mpf(1)
                else:
                    t = mp.sign(theta) / (abs(theta) + mp.sqrt(theta**2 + 1))
                c = 1 / mp.sqrt(t**2 + 1)
                s = t * c
                app, aqq = a[p][p], a[q][q]
                a[p][p] = app - t * apq
                a[q][q] = aqq + t * apq
                a[p][q] = a[q][p] = mp.mpf(0)
                for r in range(n):
                    if r in (p, q):
                        continue
                    arp, arq = a[r][p], a[r][q]
                    a[r][p] = a[p][r] = c * arp - s * arq
                    a[r][q] = a[q][r] = s * arp + c * arq
    return min(a[i][i] for i in range(n)) - off_norm()


def build_interior_gram(
    f: Poly, g: Poly, roots: RootProfile, lambda_factor: float = 2.0
) -> InteriorGram:
    """Interior Gram pair (Q*, q*) for g modulo squarefree f.

    Columns of the square-sum matrix come from the Lagrange basis: one column
    per real root weighted by g there, two real columns per conjugate pair
    with weight 2(lambda + Re g(xi)) and lambda = lambda_factor*|g(xi)|.
    With lambda_factor > 1 the matrix is positive definite; lambda_factor = 1
    degenerates to the boundary construction (exposed for testing).
    """
    n = int(f.degree)
    if not g.degree < n:
        raise ValueError("g must be reduced modulo f first")
    if roots.degree != n:
        raise ValueError("root profile does not match f")
    if lambda_factor < 1:
        raise ValueError("lambda_factor must be >= 1")

    bits = roots.precision_bits
    with mp.workprec(bits):
        basis = lagrange_basis(f, roots)
        gc = _mp_coeffs(g)
        thr = mp.ldexp(1, -(bits // 4))

        weights = []
        columns = []
        for i, xi in enumerate(roots.real_roots):
            val = _horner(gc, xi)
            if val <= thr:
                raise NotStrictlyPositive(xi, val, definitive=bool(val <= -thr))
            weights.append(val)
            columns.append([mp.re(c) for c in basis[i]])

        k = len(roots.real_roots)
        for idx, rep in enumerate(roots.complex_pairs):
            u = basis[k + 2 * idx + 1]  # basis polynomial at the representative
            gamma = _horner(gc, rep)
            mag = abs(gamma)
            lam = mp.mpf(lambda_factor) * mag if mag > 0 else mp.mpf(lambda_factor)
            den = lam + mp.re(gamma)
            if den <= thr:
                raise IllConditioned("degenerate pair weight")
            disc = lam**2 - mag**2
            if disc < 0:
                disc = mp.mpf(0)
            ratio = mp.im(gamma) / den
            root_disc = mp.sqrt(disc) / den
            columns.append([mp.re(c) - ratio * mp.im(c) for c in u])
            weights.append(2 * den)
            columns.append([root_disc * mp.im(c) for c in u])
            weights.append(2 * den)

        rows = [[mp.mpf(0)] * n for _ in range(n)]
        for r in range(n):
            for c in range(r, n):
                acc = mp.mpf(0)
                for w, col in zip(weights, columns):
                    acc += w * col[r] * col[c]
                rows[r][c] = rows[c][r] = acc

        # q* by synthetic division of (g - x^T Q* x) by f
        quad = [mp.mpf(0)] * (2 * n - 1)
        for r in range(n):
            for c in range(n):
                quad[r + c] += rows[r][c]
        num = [(gc[i] if i < len(gc) else mp.mpf(0)) - quad[i] for i in range(2 * n - 1)]
        fc = _mp_coeffs(f)
        qstar = [mp.mpf(0)] * max(len(num) - len(fc) + 1, 0)
        rem = list(num)
        for top in range(len(rem) - 1, len(fc) - 2, -1):
            cof = rem[top] / fc[-1]
            qstar[top - len(fc) + 1] = cof
            for i, y in enumerate(fc):
                rem[top - len(fc) + 1 + i] -= cof * y

        sigma = _jacobi_lower_eigen_bound(rows, bits) * (1 - mp.ldexp(1, -32))

        # exact residual norm: binary floats are rationals, so the identity
        # error of (Q*, q*) can be bounded without any floating-point slack
        q_exact = [[exact_fraction(x) for x in row] for row in rows]
        quad_exact = [Fraction(0)] * (2 * n - 1)
        for r in range(n):
            for c in range(n):
                quad_exact[r + c] += q_exact[r][c]
        resid = Poly(quad_exact) + Poly(exact_fraction(x) for x in qstar) * f - g
        rho_frac = sqrt_upper_bound(norm2_squared(resid)) * (1 + Fraction(1, 2**32))
        rho = mp.mpf(rho_frac.numerator) / rho_frac.denominator

        return InteriorGram(
            Qstar=tuple(tuple(x for x in row) for row in rows),
            qstar=tuple(qstar),
            sigma=sigma,
            rho=rho,
        )
