from math import gcd

import pytest
from hypothesis import given, strategies as st

from toricsod.kkalg import (
    ONE,
    KKInconsistency,
    Word,
    custom_presentation,
    enumerate_words,
    is_commutative,
    kk_presentation,
    monomial_basis,
    multiply,
    opposite_check,
)


def W(*runs):
    return Word(tuple(runs))


def types(max_r):
    return st.integers(2, max_r).flatmap(lambda r: st.sampled_from([a for a in range(1, r) if gcd(a, r) == 1]).map(lambda a: (r, a)))


def test_k75_presentation():
    p = kk_presentation((7, 5))
    assert p.l == 2 and p.cs == (4, 2)
    assert set(p.forbidden) == {W((1, 4)), W((2, 2)), W((1, 1), (2, 1)), W((2, 1), (1, 3))}
    assert p.render() == "k<z1,z2>/(z1^4, z2^2, z1*z2, z2*z1^3)"


def test_cyclic_and_square_zero_presentations():
    for r in range(2, 10):
        p = kk_presentation((r, r - 1))
        assert p.l == 1 and p.cs == (r,) and p.forbidden == (W((1, r)),)
        assert p.render() == f"k[z]/z^{r}"
        q = kk_presentation((r, 1))
        assert q.l == r - 1 and set(q.cs) == {2}
        words2 = {Word.from_letters((i, j)) for i in range(1, r) for j in range(1, r)}
        # every product of two generators is killed
        assert all(any(w.contains(f) for f in q.forbidden) for w in words2)


def test_k75_basis():
    b = monomial_basis(kk_presentation((7, 5)))
    assert [str(w) for w in b] == ["1", "z1", "z2", "z1^2", "z2*z1", "z1^3", "z2*z1^2"]


def test_cyclic_basis():
    assert [str(w) for w in monomial_basis(kk_presentation((4, 3)))] == ["1", "z1", "z1^2", "z1^3"]


def test_k117_basis_has_11_words():
    p = kk_presentation((11, 7))
    assert p.cs == (3, 4)
    assert len(monomial_basis(p)) == 11


def test_multiply_examples():
    p = kk_presentation((7, 5))
    assert multiply(p, W((2, 1)), W((1, 2))) == W((2, 1), (1, 2))
    assert multiply(p, W((1, 1)), W((2, 1))) is None
    for w in monomial_basis(p):
        assert multiply(p, ONE, w) == w == multiply(p, w, ONE)
    with pytest.raises(ValueError):
        multiply(p, W((1, 4)), ONE)


def test_commutativity_examples():
    assert is_commutative(kk_presentation((5, 1)))
    assert is_commutative(kk_presentation((5, 4)))
    assert not is_commutative(kk_presentation((7, 5)))
    assert is_commutative(kk_presentation((1, 0)))
    assert monomial_basis(kk_presentation((1, 0))) == [ONE]
    assert kk_presentation((1, 0)).render() == "k"


def test_opposite_examples():
    assert opposite_check((7, 5))
    assert opposite_check((6, 1))
    with pytest.raises(ValueError):
        opposite_check((1, 0))


@given(types(60))
def test_dimension_equals_order(t):
    assert len(monomial_basis(kk_presentation(t))) == t[0]


@given(types(40))
def test_commutative_iff_extreme(t):
    r, a = t
    assert is_commutative(kk_presentation(t)) == (a in (1, r - 1))


@given(types(30))
def test_opposite(t):
    assert opposite_check(t)


@given(types(20))
def test_associative_and_local(t):
    p = kk_presentation(t)
    b = monomial_basis(p)
    for x in b:
        for y in b:
            xy = multiply(p, x, y)
            for z in b:
                yz = multiply(p, y, z)
                left = None if xy is None else multiply(p, xy, z)
                right = None if yz is None else multiply(p, x, yz)
                assert left == right
    for w in b[1:]:
        # nilpotent
        power = w
        for _ in range(t[0] + 1):
            power = multiply(p, power, w)
            if power is None:
                break
        assert power is None
        # the nonempty words span an ideal
        for v in b:
            prod = multiply(p, w, v)
            assert prod is None or prod != ONE


def test_word_basics():
    w = Word.from_letters([2, 2, 1])
    assert w.runs == ((2, 2), (1, 1)) and len(w) == 3 and str(w) == "z2^2*z1"
    assert w * Word.from_letters([1]) == W((2, 2), (1, 2))
    assert w.reversed_relabeled(2) == W((2, 1), (1, 2))
    assert w.contains(W((2, 1), (1, 1))) and not w.contains(W((1, 2)))
    assert str(ONE) == "1" and not ONE
    with pytest.raises(ValueError):
        Word.from_letters([0])


def test_z2sq_z1sq_variant_fails_dimension_guard():
    # the order-11 point of P(2,3,11) has type (11,8); replacing the relation
    # z2^2*z1^3 by z2^2*z1^2 loses a basis word
    general = kk_presentation((11, 8))
    assert general.cs == (4, 3)
    assert "z2^2*z1^3" in general.relations()
    assert len(monomial_basis(general)) == 11
    variant = custom_presentation((11, 8), [[(1, 4)], [(1, 1), (2, 1)], [(2, 2), (1, 2)], [(2, 3)]])
    assert len(enumerate_words(variant, 20)) == 10
    with pytest.raises(KKInconsistency, match="give 10 basis words, expected 11"):
        monomial_basis(variant)


def test_to_json_shape():
    j = kk_presentation((7, 5)).to_json()
    assert j == {
        "generators": 2,
        "cs": [4, 2],
        "relations": ["z1^4", "z2^2", "z1*z2", "z2*z1^3"],
        "dim": 7,
        "presentation": "k<z1,z2>/(z1^4, z2^2, z1*z2, z2*z1^3)",
    }
