from math import factorial

import pytest

import oracles
from dessins.constructions import (
    BinMat,
    ClosureOrderWrong,
    ComplementDegenerate,
    CongruenceMismatch,
    KernelViolation,
    ProjMat2,
    agl_choices,
    agl_lift,
    companion,
    d0_genus,
    d0_passport,
    family_dessin_degree_p,
    family_dessin_degree_p_plus_1,
    find_glnq_triple,
    glnq_dessin,
    least_primitive_polynomial,
    modular_cover_stats,
    modular_dessin,
    psl2_11_generators,
    psl2_coset_dessin,
)
from dessins.dessin import Passport, are_isomorphic, mirror
from dessins.enumerate import PassportQuery, enumerate_passport
from dessins.group_id import identify, projective_order
from dessins.perm import PermGroup, Permutation

PRIMES_200 = [p for p in range(2, 201) if oracles.is_prime_trial(p)]
D0_GENUS_PRINTED = {2: 0, 3: 0, 5: 0, 7: 0, 11: 1, 13: 0, 17: 1, 19: 1, 23: 2, 29: 2, 31: 2,
                    37: 2, 41: 3, 43: 3, 47: 4, 53: 4}


def _legendre(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _expected_d0(p):
    """Cycle lengths of x, y from the fixed points of t -> -1/(t-1) and t -> -1/t."""
    fx = 1 + _legendre(-3, p)  # t^2 - t + 1 = 0
    fy = 1 + _legendre(-1, p)  # t^2 + 1 = 0
    x = sorted([3] * ((p + 1 - fx) // 3) + [1] * fx, reverse=True)
    y = sorted([2] * ((p + 1 - fy) // 2) + [1] * fy, reverse=True)
    return x, y


@pytest.mark.parametrize("p", [p for p in PRIMES_200 if p >= 5])
def test_d0_passport_from_quadratic_residues(p):
    d = modular_dessin(p)
    x, y = _expected_d0(p)
    assert list(oracles.cycle_lengths(d.x.images)) == x
    assert list(oracles.cycle_lengths(d.y.images)) == y
    assert d.passport == d0_passport(p)
    assert d.genus == d0_genus(p)
    assert 12 * d.genus == p - {1: 13, 5: 5, 7: 7, 11: -1}[p % 12]


def test_d0_genus_table():
    for p, g in D0_GENUS_PRINTED.items():
        assert modular_dessin(p).genus == g == d0_genus(p)


def test_d0_small_primes():
    assert modular_dessin(2).group_order() == 6
    assert modular_dessin(3).group_order() == 12
    assert str(modular_dessin(11).passport) == "3^4; 2^6; 11^1 1^1"
    assert str(modular_dessin(13).passport) == "3^4 1^2; 2^6 1^2; 13^1 1^1"
    with pytest.raises(ValueError):
        modular_dessin(9)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
def test_d0_order_by_closure(p):
    d = modular_dessin(p)
    els = oracles.closure([list(d.x.images), list(d.y.images)])
    assert len(els) == d.group_order() == p * (p * p - 1) // 2


def test_d0_z_is_translation():
    for p in (5, 11, 13):
        d = modular_dessin(p)
        assert d.z == Permutation.from_cycles([list(range(1, p + 1))], p + 1)


def test_modular_cover_stats():
    assert modular_cover_stats(7) == (168, 3)
    assert modular_cover_stats(11) == (660, 26)
    assert modular_cover_stats(5) == (60, 0)
    assert modular_cover_stats(2) == (6, 0)


def test_cover_genus_matches_riemann_hurwitz():
    for p in (5, 7, 11, 13, 17, 19):
        n, g = modular_cover_stats(p)
        # regular map of type (3, 2, p) with n/3 + n/2 + n/p vertices, edges and faces
        chi = n // 3 + n // 2 + n // p - n
        assert 2 - 2 * g == chi


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_d0_unique_of_its_order(p):
    q = PassportQuery.parse(*str(d0_passport(p)).split("; "))
    ds = enumerate_passport(q)
    order = p * (p * p - 1) // 2
    hits = [d for d in ds if d.group_order() == order]
    assert len(hits) == 1
    assert are_isomorphic(hits[0], modular_dessin(p))


def test_projmat_normalization():
    m = ProjMat2.make(-1, 0, 0, -1, 11)
    assert m.is_identity()
    a = ProjMat2.make(10, 1, -1, 0, 11)
    assert (a.a, a.b, a.c, a.d) == (1, 10, 1, 0)
    with pytest.raises(ValueError):
        ProjMat2.make(1, 1, 1, 1, 11)
    for m in psl2_11_generators().values():
        assert (m.a * m.d - m.b * m.c) % 11 == 1
        first = next(v for v in (m.a, m.b, m.c, m.d) if v)
        assert 1 <= first <= 5


def test_projmat_generators_relations():
    g = psl2_11_generators()
    x, y, z = g["x"], g["y"], g["z"]
    assert (x * x * x).is_identity() and (y * y).is_identity()
    assert (x * y * z).is_identity()
    assert Permutation(z.moebius()) == Permutation(oracles.moebius_perm(11, 1, 1, 0, 1))


def test_coset_pair(klein):
    H = psl2_coset_dessin(11, "H")
    Hb = psl2_coset_dessin(11, "Hbar")
    assert str(H.passport) == "3^3 1^2; 2^4 1^3; 11^1"
    m1 = klein["M1"]
    assert are_isomorphic(H, m1) or are_isomorphic(H, mirror(m1))
    assert are_isomorphic(Hb, mirror(H))
    assert are_isomorphic(H, Hb) is None
    assert H.group_order() == 660


def test_coset_bad_variant():
    with pytest.raises(ValueError):
        psl2_coset_dessin(11, "K")
    with pytest.raises(ValueError):
        psl2_coset_dessin(13)
    assert issubclass(ClosureOrderWrong, AssertionError)


def test_family_d(klein):
    d = family_dessin_degree_p(11, "D")
    assert str(d.passport) == "3^3 1^2; 2^4 1^3; 11^1"
    assert are_isomorphic(d, mirror(klein["M3"]))
    assert d.z == Permutation.from_cycles([list(range(1, 12))], 11)


@pytest.mark.parametrize("p", [5, 11, 17, 23, 29])
def test_family_d_passport(p):
    k = (p - 2) // 3
    d = family_dessin_degree_p(p, "D")
    assert d.genus == 0
    assert d.passport == Passport.parse(f"3^{k} 1^2; 2^{k + 1} 1^{k}; {p}^1")


@pytest.mark.parametrize("p", [7, 13, 19, 31, 37])
def test_family_dprime_passport(p):
    k = (p - 1) // 3
    d = family_dessin_degree_p(p, "D'")
    assert d.genus == 0
    assert d.passport == Passport.parse(f"3^{k} 1^1; 2^{k} 1^{k + 1}; {p}^1")


def test_family_groups():
    assert family_dessin_degree_p(13, "D'").group_order() == factorial(13) // 2
    assert family_dessin_degree_p(7, "D'").group_order() == 168


def test_family_congruence():
    with pytest.raises(CongruenceMismatch):
        family_dessin_degree_p(13, "D")
    with pytest.raises(CongruenceMismatch):
        family_dessin_degree_p(11, "D'")


@pytest.mark.parametrize("p,passport", [
    (17, "3^5 1^3; 2^8 1^2; 17^1 1^1"),
    (19, "3^5 1^5; 2^10; 19^1 1^1"),
    (23, "3^7 1^3; 2^10 1^4; 23^1 1^1"),
])
def test_family_p_plus_1(p, passport):
    d = family_dessin_degree_p_plus_1(p)
    assert d.passport == Passport.parse(passport)
    assert d.group_order() == factorial(p + 1) // 2
    assert str(identify(d)) == f"A{p + 1}"


def test_primitive_polynomials():
    # x^2+x+1, x^3+x+1, x^5+x^2+1, x^7+x+1
    assert least_primitive_polynomial(2) == 0b111
    assert least_primitive_polynomial(3) == 0b1011
    assert least_primitive_polynomial(5) == 0b100101
    assert least_primitive_polynomial(7) == 0b10000011
    for n in (3, 5):
        z = companion(least_primitive_polynomial(n), n)
        assert z.order() == 2**n - 1


def test_binmat_algebra():
    z = companion(least_primitive_polynomial(5), 5)
    assert z * z.inverse() == BinMat.identity(5)
    assert (z**31) == BinMat.identity(5)
    assert z.rank() == 5
    assert (z + z).rank() == 0


@pytest.mark.parametrize("n,passport", [(3, "3^2 1^1; 2^2 1^3; 7^1"), (5, "3^10 1^1; 2^12 1^7; 31^1")])
def test_glnq_triple(n, passport):
    x, y, z = find_glnq_triple(n, seed=0)
    ident = BinMat.identity(n)
    assert x * x * x == ident and y * y == ident and x * y * z == ident
    d = glnq_dessin(x, y)
    assert d.passport == Passport.parse(passport)
    assert d.group_order() == projective_order(n, 2)


def test_glnq_deterministic():
    assert find_glnq_triple(5, seed=7) == find_glnq_triple(5, seed=7)
    with pytest.raises(ValueError):
        find_glnq_triple(4)


@pytest.fixture(scope="module")
def triple5():
    return find_glnq_triple(5, seed=0)


def test_agl_lift_both_passports(triple5):
    x, y, z = triple5
    Ta, Tb, im = agl_choices(x, y)
    assert len(Ta) == 16 and len(Tb) == 8 and len(im) == 4
    seen = {}
    for a in Ta[:4]:
        for b in Tb:
            try:
                d = agl_lift(5, x, y, z, a, b)
            except ComplementDegenerate:
                # the complement GL_5(2) shows up only when b lies in im(1 - y)
                assert b in im
                continue
            assert d.group_order() == 319979520
            seen.setdefault(b in im, set()).add(str(d.passport))
            if b not in im:
                assert len(d.y.moved_points()) == 32
                # 12 + 16 + 2 - 32 = -2 from the passport, so genus (p - 7)/12 = 2
                assert d.genus == 2
    assert seen[False] == {"3^10 1^2; 2^16; 31^1 1^1"}
    assert seen[True] == {"3^10 1^2; 2^12 1^8; 31^1 1^1"}


def test_agl_lift_kernel_checks(triple5):
    x, y, z = triple5
    Ta, Tb, _ = agl_choices(x, y)
    bad_a = next(v for v in range(32) if v not in Ta)
    bad_b = next(v for v in range(32) if v not in Tb)
    with pytest.raises(KernelViolation):
        agl_lift(5, x, y, z, bad_a, Tb[0])
    with pytest.raises(KernelViolation):
        agl_lift(5, x, y, z, Ta[0], bad_b)


def test_agl_lift_degenerates_at_n3():
    x, y, z = find_glnq_triple(3, seed=0)
    Ta, Tb, _ = agl_choices(x, y)
    for a in Ta:
        for b in Tb:
            with pytest.raises(ComplementDegenerate):
                agl_lift(3, x, y, z, a, b)


def test_agl3_order_by_closure():
    x, y, z = find_glnq_triple(3, seed=0)
    Ta, Tb, _ = agl_choices(x, y)
    a, b = Ta[-1], Tb[-1]
    u = [x.apply(t) ^ a for t in range(8)]
    v = [y.apply(t) ^ b for t in range(8)]
    assert len(oracles.closure([u, v])) == 168
    assert PermGroup([Permutation(u), Permutation(v)]).order() == 168
