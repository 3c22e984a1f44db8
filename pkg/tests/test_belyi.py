import random
from fractions import Fraction

import pytest

from dessins.belyi import (
    D013_A_FACTORS,
    KLEIN_FACTORS,
    QuadPoly,
    QuadraticElem,
    verify_d013_belyi,
    verify_klein_shabat,
)


def _rand_elem(rng, d=-11):
    return QuadraticElem.of(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), rng.randint(-9, 9), d)


def _rand_poly(rng):
    return QuadPoly([_rand_elem(rng) for _ in range(rng.randint(1, 5))])


def test_quadratic_field_arithmetic():
    s = QuadraticElem.of(0, 1)
    assert s * s == QuadraticElem.of(-11)
    u = QuadraticElem.of(3, 2)
    assert u * u.conjugate() == QuadraticElem.of(9 + 44)
    with pytest.raises(ValueError):
        u + QuadraticElem.of(1, 1, d=-3)


@pytest.mark.parametrize("seed", range(20))
def test_quadratic_ring_axioms(seed):
    rng = random.Random(seed)
    a, b, c = (_rand_elem(rng) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


@pytest.mark.parametrize("seed", range(20))
def test_quadpoly_ring(seed):
    rng = random.Random(seed)
    f, g, h = (_rand_poly(rng) for _ in range(3))
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert (f * g).conjugate() == f.conjugate() * g.conjugate()
    assert (f * g).degree == f.degree + g.degree
    assert (f + g) * h == f * h + g * h


def test_klein_degree_and_printed_sign():
    r = verify_klein_shabat()
    assert r.p_degree == 11
    # the identity holds for q3 = 175 + 279 sqrt(-11), but only with P - 1 = +(...)
    assert not r.ok
    assert r.resolved_reading is None
    assert r.holds_with_flipped_sign == "175+279*sqrt(-11)"
    assert all(diff is not None for diff in r.readings.values())


def test_klein_flipped_sign_holds():
    r = verify_klein_shabat(p_minus_1_sign=1)
    assert r.ok
    assert r.resolved_reading == "175+279*sqrt(-11)"
    assert r.readings["454*sqrt(-11)"] is not None


def test_klein_galois_conjugate():
    for s in (1, -1):
        a = verify_klein_shabat(sign_of_sqrt=1, p_minus_1_sign=s)
        b = verify_klein_shabat(sign_of_sqrt=-1, p_minus_1_sign=s)
        assert (a.ok, a.resolved_reading, a.holds_with_flipped_sign) == (b.ok, b.resolved_reading, b.holds_with_flipped_sign)
    with pytest.raises(ValueError):
        verify_klein_shabat(sign_of_sqrt=2)


def test_klein_fault_injection():
    q2 = list(KLEIN_FACTORS["q2"])
    q2[1] = (-12, 13)
    r = verify_klein_shabat(p_minus_1_sign=1, overrides={"q2": q2})
    assert not r.ok
    deg, lhs, rhs = r.readings["175+279*sqrt(-11)"]
    assert lhs != rhs
    assert 0 <= deg <= 11


def test_klein_report_dict():
    d = verify_klein_shabat().as_dict()
    assert d["ok"] is False and d["p_degree"] == 11
    assert set(d["failing_coefficient"]) == {"175+279*sqrt(-11)", "454*sqrt(-11)"}


def test_d013_identity():
    r = verify_d013_belyi()
    assert r.ok
    assert r.failing_coefficient is None
    assert r.degrees == (14, 14)
    assert r.monic


def test_d013_perturbed():
    f, e, g, h = D013_A_FACTORS
    bad = ([f[0] + 1] + list(f[1:]), e, g, h)
    r = verify_d013_belyi(a_factors=bad)
    assert not r.ok
    assert r.failing_coefficient[0] == 0


def test_d013_numeric_spot_check():
    # f(t) = -A(t)/(1728 t) and f(t) - 1 = -B(t)/(1728 t) at a few rational t
    def A(t):
        return (t**4 - 7 * t**3 + 20 * t**2 - 19 * t + 1) ** 3 * (t**2 - 5 * t + 13)

    def B(t):
        return (t**6 - 10 * t**5 + 46 * t**4 - 108 * t**3 + 122 * t**2 - 38 * t - 1) ** 2 * (t**2 - 6 * t + 13)

    for t in (Fraction(1), Fraction(-3, 7), Fraction(11, 2)):
        assert -A(t) / (1728 * t) - 1 == -B(t) / (1728 * t)
