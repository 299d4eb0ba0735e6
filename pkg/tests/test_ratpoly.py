import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootsos.ratpoly import (
    NEG_INF,
    BothZero,
    DivisionByZeroPoly,
    NotSquarefree,
    Poly,
    ZeroPolynomial,
    extended_gcd,
    gcd,
    norm2_squared,
    sqrt_upper_bound,
    squarefree_decompose,
    sturm_real_root_count,
)
from support import grid_real_root_count, random_nonzero_poly

X = Poly.x()
F_CUBE = X**3 - Poly.constant(2)  # x^3 - 2


def test_zero_degree_sentinel():
    assert Poly().degree == NEG_INF
    assert Poly().degree < -(10**9)
    assert Poly([0, 0]).is_zero
    assert Poly([1]).degree == 0


def test_rem_trivial():
    assert (X**3) % F_CUBE == Poly.constant(2)


def test_mul_trivial():
    assert (X - Poly.one()) * (X + Poly.one()) == X**2 - Poly.one()


def test_divrem_hand_oracle():
    # long division by hand: 0.1x^3 + x = (1/10)(x^3 - 2) + (x + 1/5)
    a = Poly([0, 1, 0, F(1, 10)])
    q, r = divmod(a, F_CUBE)
    assert q == Poly.constant(F(1, 10))
    assert r == Poly([F(1, 5), 1])


def test_divrem_by_zero():
    with pytest.raises(DivisionByZeroPoly):
        divmod(X, Poly.zero())


coeffs_strategy = st.lists(
    st.fractions(min_value=-50, max_value=50, max_denominator=20), min_size=0, max_size=9
)


@settings(max_examples=120, deadline=None)
@given(coeffs_strategy, coeffs_strategy)
def test_divrem_reconstruction(ac, bc):
    a, b = Poly(ac), Poly(bc)
    if b.is_zero:
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_gcd_examples():
    assert gcd(F_CUBE, X) == Poly.one()
    assert gcd(X * F_CUBE**2, X**3) == X
    assert gcd(X**2 - Poly.one(), X - Poly.one()) == X - Poly.one()


def test_gcd_both_zero():
    with pytest.raises(BothZero):
        gcd(Poly.zero(), Poly.zero())
    with pytest.raises(BothZero):
        extended_gcd(Poly.zero(), Poly.zero())


def test_extended_gcd_examples():
    assert extended_gcd(X, X - Poly.one()) == (Poly.one(), Poly.one(), -Poly.one())
    assert extended_gcd(F_CUBE, Poly.one()) == (Poly.one(), Poly.zero(), Poly.one())
    # modular inverse oracle: t*x^2 = 1 mod (x^3-2)^2
    g, s, t = extended_gcd(F_CUBE**2, X**2)
    assert g == Poly.one()
    assert ((t * X**2) % (F_CUBE**2)) == Poly.one()


def test_extended_gcd_random_bezout():
    rng = random.Random(20240811)
    for _ in range(250):
        a = random_nonzero_poly(rng, 20, 40)
        b = random_nonzero_poly(rng, 20, 40)
        g, s, t = extended_gcd(a, b)
        assert s * a + t * b == g
        assert g.leading_coefficient == 1
        assert (a % g).is_zero and (b % g).is_zero
        # canonical minimal-degree cofactors (whenever satisfiable)
        if b.degree > g.degree:
            assert s.degree < b.degree - g.degree
        if a.degree > g.degree:
            assert t.degree < a.degree - g.degree


def test_squarefree_examples():
    dec = squarefree_decompose(X * F_CUBE**2)
    assert dec.parts == ((X, 1), (F_CUBE, 2))
    assert squarefree_decompose(F_CUBE).parts == ((F_CUBE, 1),)
    expanded = (X - Poly.one()) ** 2 * (X + Poly.one()) ** 3
    assert squarefree_decompose(expanded).parts == (
        (X - Poly.one(), 2),
        (X + Poly.one(), 3),
    )


def test_squarefree_zero_rejected():
    with pytest.raises(ZeroPolynomial):
        squarefree_decompose(Poly.zero())


def test_squarefree_reconstruction_random():
    rng = random.Random(7)
    for _ in range(120):
        f = random_nonzero_poly(rng, 4, 8)
        if f.is_zero:
            continue
        g = random_nonzero_poly(rng, 3, 8)
        h = (f * f * g) if not g.is_zero else f
        dec = squarefree_decompose(h)
        assert dec.reconstruct() == h
        factors = [p for p, _ in dec.parts]
        for p in factors:
            assert p.leading_coefficient == 1
            assert gcd(p, p.derivative()).degree == 0
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                assert gcd(factors[i], factors[j]).degree == 0


def test_sturm_examples():
    assert sturm_real_root_count(F_CUBE) == 1
    assert sturm_real_root_count(X**2 + Poly.one()) == 0
    three = (X - Poly.constant(1)) * (X - Poly.constant(2)) * (X - Poly.constant(3))
    assert sturm_real_root_count(three) == 3


def test_sturm_requires_squarefree():
    with pytest.raises(NotSquarefree):
        sturm_real_root_count((X - Poly.one()) ** 2)


def test_sturm_vs_grid_scan():
    rng = random.Random(99)
    half_grid = [F(n, 2) for n in range(-20, 21)]
    for _ in range(60):
        k = rng.randint(0, 4)
        roots = rng.sample(half_grid, k)
        f = Poly.one()
        for r in roots:
            f = f * (X - Poly.constant(r))
        if rng.random() < 0.5:
            b = rng.randint(-3, 3)
            c = rng.randint(b * b // 4 + 1, b * b // 4 + 9)  # disc < 0
            f = f * Poly([c, b, 1])
        assert sturm_real_root_count(f) == k
        # independent oracle: exact sign-change scan with bisection refinement
        scanned = grid_real_root_count(f, F(-43, 4) - F(1, 8), F(43, 4), F(1, 4))
        assert scanned == k


def test_norm2_squared_examples():
    assert norm2_squared(F_CUBE) == 5
    assert norm2_squared(Poly.zero()) == 0
    assert norm2_squared(Poly([F(3, 10), F(-2, 5)])) == F(1, 4)


def test_product_norm_bound():
    # ||p*f||^2 <= ((deg p + 1) ||p|| ||f||)^2, checked exactly
    rng = random.Random(5)
    for _ in range(200):
        p = random_nonzero_poly(rng, 6, 30)
        f = random_nonzero_poly(rng, 6, 30)
        if p.is_zero or f.is_zero:
            continue
        d = int(p.degree)
        assert norm2_squared(p * f) <= (d + 1) ** 2 * norm2_squared(p) * norm2_squared(f)


def test_sqrt_upper_bound():
    for r in (F(0), F(2), F(5), F(1, 3), F(10**12, 7)):
        ub = sqrt_upper_bound(r)
        assert ub * ub >= r
        if r > 0:
            assert (ub * ub - r) / r < F(1, 10**18)
    with pytest.raises(ValueError):
        sqrt_upper_bound(F(-1))


def test_poly_pow_and_eval():
    p = (X + Poly.one()) ** 3
    assert p == Poly([1, 3, 3, 1])
    assert p(F(1, 2)) == F(27, 8)
    assert Poly([F(1, 3), 1])(F(-1, 3)) == 0
