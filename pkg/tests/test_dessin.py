import pytest

from dessins.dessin import (
    Dessin,
    DessinType,
    NonIntegralGenus,
    Passport,
    are_isomorphic,
    canonical_form,
    canonical_key,
    commutator_signature,
    format_dessin,
    is_mirror_symmetric,
    make_dessin,
    mirror,
    parse_dessins,
    regular_cover_genus,
    regular_cover_genus_general,
)
from dessins.golden import load_set
from dessins.perm import NotTransitive, Permutation, compose, conjugate, parse_cycles

M5_X = "(1,11,6)(2,5,4)(7,10,8)"
M5_Y = "(1,5)(2,3)(6,10)(8,9)"
M5_T = "(1,6)(2,8)(3,9)(4,7)(5,10)"

# commutator cycle types of the six Klein representatives
COMMUTATORS = {"M1": "5^2 1^1", "M2": "7^1 3^1 1^1", "M3": "8^1 2^1 1^1",
               "M4": "5^1 4^1 2^1", "M5": "7^1 2^2", "M6": "4^2 3^1"}


def test_make_dessin_m5():
    d = make_dessin(parse_cycles(M5_X, 11), parse_cycles(M5_Y, 11))
    assert d.z == parse_cycles("(1,2,3,4,5,6,7,8,9,10,11)", 11)
    assert d.genus == 0


def test_trivial_dessin():
    e = Permutation.identity(1)
    d = make_dessin(e, e)
    assert d.genus == 0 and d.degree == 1
    assert is_mirror_symmetric(d)
    assert str(commutator_signature(d)) == "1^1"


def test_intransitive_rejected():
    with pytest.raises(NotTransitive):
        make_dessin(parse_cycles("(1,2,3)", 5), parse_cycles("(4,5)", 5))


def test_genus_examples(klein):
    for d in klein.values():
        assert d.genus == 0
    assert all(d.genus == 1 for d in load_set("psl2_16_17"))
    assert all(d.genus == 4 for d in load_set("psl3_8_73"))


def test_euler_characteristic_is_even_for_any_triple():
    # sign(x) sign(y) sign(z) = 1 forces c(x) + c(y) + c(z) = n mod 2
    import itertools

    for xs in itertools.permutations(range(4)):
        for ys in itertools.permutations(range(4)):
            d = Dessin(Permutation(xs), Permutation(ys))
            assert d.euler_characteristic() % 2 == 0


def test_nonintegral_cover_genus_rejected():
    with pytest.raises(NonIntegralGenus):
        regular_cover_genus((3, 2, 7), 7)
    with pytest.raises(NonIntegralGenus):
        regular_cover_genus_general(6)


def test_regular_cover_genus():
    assert regular_cover_genus((3, 2, 11), 660) == 26
    assert regular_cover_genus((3, 2, 11), 19958400) == 756001
    assert regular_cover_genus(DessinType(3, 2, 31), 372000) == 25001
    assert regular_cover_genus_general(10) == 1330561
    assert regular_cover_genus_general(30) == 2661121
    assert regular_cover_genus_general(18) == 2217601


def test_commutator_signatures(klein):
    for label, want in COMMUTATORS.items():
        assert str(commutator_signature(klein[label])) == want


def test_mirror_of_m5_has_the_printed_witness(klein):
    m5 = klein["M5"]
    t = parse_cycles(M5_T, 11)
    assert conjugate(m5.x, t) == m5.x.__invert__()
    assert conjugate(m5.y, t) == m5.y.__invert__()
    assert is_mirror_symmetric(m5)
    assert are_isomorphic(m5, mirror(m5)) is not None


def test_chiral_m1(klein):
    m1 = klein["M1"]
    assert are_isomorphic(m1, mirror(m1)) is None
    assert are_isomorphic(m1, klein["M2"]) is None
    assert are_isomorphic(m1, m1) is not None


def test_isomorphism_returns_a_conjugator(klein):
    t = parse_cycles("(1,7,3)(2,9)(4,11,5,8)", 11)
    for d in klein.values():
        e = d.relabel(t)
        s = are_isomorphic(d, e)
        assert s is not None
        assert conjugate(d.x, s) == e.x and conjugate(d.y, s) == e.y


def test_canonical_forms(klein):
    for d in klein.values():
        c = canonical_form(d)
        assert canonical_form(c) == c
        assert canonical_form(d.relabel(parse_cycles("(1,2,3,4,5,6,7,8,9,10,11)", 11))) == c
    keys = {canonical_key(d) for d in klein.values()} | {canonical_key(mirror(d)) for d in klein.values()}
    assert len(keys) == 10


def test_mirror_preserves_invariants(klein):
    for d in klein.values():
        m = mirror(d)
        assert m.passport == d.passport
        assert m.genus == d.genus
        assert m.group_order() == d.group_order()
        assert are_isomorphic(mirror(m), d) is not None


def test_text_format_roundtrip(klein):
    text = "\n".join(format_dessin(d) for d in klein.values())
    again = parse_dessins(text)
    assert [(d.x, d.y, d.label) for d in again] == [(d.x, d.y, d.label) for d in klein.values()]
    with pytest.raises(ValueError):
        parse_dessins("degree: 3\nx: (1,2,3)\n")
    with pytest.raises(ValueError):
        parse_dessins("degree: 3\nx: (1,2,3)\nq: ()\n")


def test_passport_parse():
    p = Passport.parse("3^3 1^2; 2^4 1^3; 11^1")
    assert str(p) == "3^3 1^2; 2^4 1^3; 11^1"
    assert p.degree == 11


def test_euler_formula(klein):
    for d in list(klein.values()) + load_set("psl3_5_31"):
        c = sum(p.num_cycles for p in (d.passport.black, d.passport.white, d.passport.faces))
        assert 2 * d.genus == 2 - c + d.degree
        x, y, z = d.x, d.y, d.z
        assert compose(compose(x, y), z).is_identity()
