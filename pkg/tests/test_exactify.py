import random
from fractions import Fraction as F

import pytest
from mpmath import mp

from rootsos.exactify import (
    DegreeTooHigh,
    GramLift,
    NotPD,
    PrecisionExhausted,
    certify_strict_squarefree,
    check_positive_definite,
    delta_bound,
    gram_of_poly,
    gram_poly,
    gram_to_sos,
    project,
    round_to_digits,
)
from rootsos.numeric import NotStrictlyPositive
from rootsos.ratpoly import Poly, norm2_squared
from support import random_nonzero_poly

X = Poly.x()
F_CUBE = X**3 - Poly.constant(2)

TOY_QBAR = (
    (F(6, 10), F(1, 10), F(-2, 10)),
    (F(1, 10), F(4, 10), F(-1, 10)),
    (F(-2, 10), F(-1, 10), F(4, 10)),
)
TOY_Q = (
    (F(3, 5), F(1, 10), F(-1, 5)),
    (F(1, 10), F(2, 5), F(-3, 20)),
    (F(-1, 5), F(-3, 20), F(2, 5)),
)


def _random_symmetric(rng, n, bound=40):
    rows = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            rows[i][j] = rows[j][i] = F(rng.randint(-bound, bound), rng.randint(1, 8))
    return tuple(tuple(r) for r in rows)


def test_gram_of_poly_error_matrix():
    # the antidiagonal averaging of -(1/10)x^3 + (1/10)x^2 for n = 3
    q = gram_of_poly(Poly([0, 0, F(1, 10), F(-1, 10)]), 3)
    assert q == (
        (F(0), F(0), F(1, 30)),
        (F(0), F(1, 30), F(-1, 20)),
        (F(1, 30), F(-1, 20), F(0)),
    )


def test_gram_of_poly_zero_and_corner():
    assert gram_of_poly(Poly.zero(), 2) == ((F(0), F(0)), (F(0), F(0)))
    assert gram_of_poly(X**2, 2) == ((F(0), F(0)), (F(0), F(1)))
    with pytest.raises(DegreeTooHigh):
        gram_of_poly(X**3, 2)


def test_gram_poly_inverts_gram_of_poly():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 6)
        p = random_nonzero_poly(rng, 2 * n - 2, 100)
        assert gram_poly(gram_of_poly(p, n)) == p


def test_project_toy_example():
    q = project(TOY_QBAR, X - Poly([F(3, 10), F(-2, 5)]) * F_CUBE)
    assert q == TOY_Q


def test_project_second_example():
    qbar = (
        (F(6, 10), F(0), F(-2, 10)),
        (F(0), F(5, 10), F(-2, 10)),
        (F(-2, 10), F(-2, 10), F(5, 10)),
    )
    target = X - Poly([F(3, 10), F(-1, 2)]) * F_CUBE
    assert project(qbar, target) == (
        (F(3, 5), F(0), F(-7, 30)),
        (F(0), F(7, 15), F(-3, 20)),
        (F(-7, 30), F(-3, 20), F(1, 2)),
    )


def test_project_idempotent_and_member():
    rng = random.Random(77)
    for _ in range(200):
        n = rng.randint(1, 6)
        q = _random_symmetric(rng, n)
        p = random_nonzero_poly(rng, 2 * n - 2, 100)
        proj = project(q, p)
        assert gram_poly(proj) == p
        assert project(proj, p) == proj
        # what was subtracted lies in the antidiagonal (Hankel) span:
        # constant along every antidiagonal
        for k in range(2 * n - 1):
            entries = [
                q[i][k - i] - proj[i][k - i]
                for i in range(n)
                if 0 <= k - i < n
            ]
            assert all(e == entries[0] for e in entries)


def test_project_degree_guard():
    with pytest.raises(DegreeTooHigh):
        project(TOY_QBAR, X**5)


def test_frobenius_norm_bound():
    rng = random.Random(13)
    for _ in range(200):
        n = rng.randint(1, 6)
        p = random_nonzero_poly(rng, 2 * n - 2, 100)
        q = gram_of_poly(p, n)
        frob2 = sum(q[i][j] ** 2 for i in range(n) for j in range(n))
        assert frob2 <= norm2_squared(p)


def test_delta_bound_second_example():
    delta = delta_bound(F_CUBE, 0.246693, 1.16e-15)
    assert F(226, 10**4) < delta < F(228, 10**4)


def test_delta_bound_signs_and_linear():
    assert delta_bound(F_CUBE, 0.1, 0.2) <= 0
    # n = 1: denominator collapses to 1
    d = delta_bound(X - Poly.one(), 0.5, 0.0)
    assert d == F(99, 100) * F(1, 2)


def test_round_to_digits_scalar():
    assert round_to_digits(0.2295612, 2) == F(23, 100)
    assert round_to_digits(F(3, 10), 1) == F(3, 10)
    with pytest.raises(ValueError):
        round_to_digits(0.5, 0)


def test_round_to_digits_matrix_one_digit():
    with mp.workprec(106):
        qs = tuple(
            tuple(mp.mpf(v) for v in row)
            for row in (
                ("0.6322063", "-0.0167531", "-0.2295612"),
                ("-0.0167531", "0.4591225", "-0.1580516"),
                ("-0.2295612", "-0.1580516", "0.5167531"),
            )
        )
    rounded = round_to_digits(qs, 1)
    assert rounded == (
        (F(3, 5), F(0), F(-1, 5)),
        (F(0), F(1, 2), F(-1, 5)),
        (F(-1, 5), F(-1, 5), F(1, 2)),
    )


def test_check_positive_definite_toy():
    report = check_positive_definite(TOY_Q)
    assert report is not None
    assert report.diag == (F(3, 5), F(23, 60), F(137, 460))


def test_check_positive_definite_identity_and_indefinite():
    eye = ((F(1), F(0)), (F(0), F(1)))
    report = check_positive_definite(eye)
    assert report is not None
    assert report.diag == (F(1), F(1))
    assert report.lower == ((F(1), F(0)), (F(0), F(1)))
    assert check_positive_definite(((F(1), F(2)), (F(2), F(1)))) is None


def _leading_minors_positive(q):
    n = len(q)
    for k in range(1, n + 1):
        sub = [[q[i][j] for j in range(k)] for i in range(k)]
        if _det(sub) <= 0:
            return False
    return True


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = F(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _det(minor)
    return total


def test_ldl_vs_determinant_oracle():
    rng = random.Random(999)
    for _ in range(80):
        n = rng.randint(1, 5)
        q = _random_symmetric(rng, n, 10)
        report = check_positive_definite(q)
        if report is not None:
            # reconstruction and the independent minor criterion
            recon = [
                [
                    sum(report.lower[i][k] * report.diag[k] * report.lower[j][k] for k in range(n))
                    for j in range(n)
                ]
                for i in range(n)
            ]
            assert tuple(tuple(r) for r in recon) == q
            assert _leading_minors_positive(q)
        else:
            assert not _leading_minors_positive(q)


def test_gram_to_sos_toy():
    lift = GramLift(TOY_Q, Poly([F(3, 10), F(-2, 5)]), F_CUBE, X)
    sos = gram_to_sos(lift)
    assert sos.weights == (F(3, 5), F(23, 60), F(137, 460))
    assert sos.polys == (
        Poly([1, F(1, 6), F(-1, 3)]),
        Poly([0, 1, F(-7, 23)]),
        Poly([0, 0, 1]),
    )


def test_gram_to_sos_identity_matrix():
    f = X**2 + Poly.one()
    lift = GramLift(((F(1), F(0)), (F(0), F(1))), Poly.zero(), f, Poly.one() + X**2)
    sos = gram_to_sos(lift)
    assert sos.weights == (F(1), F(1))
    assert sos.polys == (Poly.one(), X)


def test_gram_to_sos_not_pd():
    bad = ((F(1), F(2)), (F(2), F(1)))
    lift = GramLift(bad, Poly.zero(), X**2 + Poly.one(), gram_poly(bad))
    with pytest.raises(NotPD):
        gram_to_sos(lift)


def test_gram_lift_validates_identity():
    with pytest.raises(ValueError):
        GramLift(TOY_Q, Poly.zero(), F_CUBE, X)


def test_sos_reconstruction_random_pd():
    rng = random.Random(4321)
    for _ in range(60):
        n = rng.randint(1, 5)
        a = [[F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
        q = [[sum(a[k][i] * a[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            q[i][i] += 1
        q = tuple(tuple(row) for row in q)  # A^T A + I is positive definite
        f = Poly.monomial(n) - Poly.constant(2)
        lift = GramLift(q, Poly.zero(), f, gram_poly(q))
        sos = gram_to_sos(lift)
        assert sos.square_sum() == gram_poly(q)


def test_certify_strict_toy():
    lift, sos = certify_strict_squarefree(F_CUBE, X)
    assert check_positive_definite(lift.Q) is not None
    assert gram_poly(lift.Q) + lift.q * F_CUBE == X
    assert sos.square_sum() == gram_poly(lift.Q)


def test_certify_strict_vacuous():
    f = X**2 + Poly.one()
    g = Poly.constant(-1)
    lift, sos = certify_strict_squarefree(f, g)
    assert gram_poly(lift.Q) + lift.q * f == g
    assert all(w > 0 for w in sos.weights)


def test_certify_strict_linear():
    f = X - Poly.constant(2)
    lift, sos = certify_strict_squarefree(f, X)
    assert lift.Q == ((F(2),),)
    assert lift.q == Poly.one()
    assert sos.weights == (F(2),)
    assert sos.polys == (Poly.one(),)


def test_certify_strict_negative_definitive():
    f = (X - Poly.one()) * (X + Poly.one())
    with pytest.raises(NotStrictlyPositive):
        certify_strict_squarefree(f, X - Poly.constant(5))


def test_certify_strict_zero_at_root_exhausts():
    # g vanishes exactly at a real root: never strictly positive, and never
    # definitively negative either, so precision runs out
    f = (X - Poly.one()) * (X + Poly.constant(2))
    with pytest.raises((PrecisionExhausted, NotStrictlyPositive)):
        certify_strict_squarefree(f, X - Poly.one(), max_retries=2)
