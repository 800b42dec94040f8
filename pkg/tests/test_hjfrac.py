from math import gcd

import pytest
from hypothesis import given, strategies as st

from toricsod.hjfrac import SingularityType, dual_fraction, hj_eval, hj_expand, inverse_type, tridet


def types(max_r=200):
    return st.integers(2, max_r).flatmap(lambda r: st.sampled_from([a for a in range(1, r) if gcd(a, r) == 1]).map(lambda a: (r, a)))


def test_hj_expand_examples():
    assert hj_expand((7, 5)) == [2, 2, 3]
    assert hj_expand((11, 7)) == [2, 3, 2, 2]
    for r in range(2, 15):
        assert hj_expand((r, 1)) == [r]
        assert hj_expand((r, r - 1)) == [2] * (r - 1)


def test_tridet_examples():
    assert tridet([2, 2, 3]) == 7
    assert tridet([2, 3]) == 5
    assert tridet([]) == 1
    assert tridet([9]) == 9


def test_hj_eval_examples():
    assert hj_eval([2, 2, 3]) == (7, 5)
    assert hj_eval([]) == (1, 0)
    assert hj_eval([2, 3, 2, 2]) == (11, 7)


def test_dual_fraction_examples():
    assert dual_fraction((7, 5)) == [4, 2]
    assert dual_fraction((11, 7)) == [3, 4]
    for r in range(2, 12):
        assert dual_fraction((r, 1)) == [2] * (r - 1)
    with pytest.raises(ValueError):
        dual_fraction((1, 0))


def test_inverse_type_examples():
    assert inverse_type((7, 5)) == (7, 3)
    assert inverse_type((11, 7)) == (11, 8)
    for r in range(2, 12):
        assert inverse_type((r, r - 1)) == (r, r - 1)
    with pytest.raises(ValueError):
        inverse_type((1, 0))


@pytest.mark.parametrize("bad", [(0, 0), (6, 2), (5, 5), (5, 0), (1, 1), (4, -1)])
def test_invalid_types_rejected(bad):
    with pytest.raises(ValueError):
        SingularityType(*bad).validate()


def test_digits_below_two_rejected():
    with pytest.raises(ValueError):
        hj_eval([2, 1, 3])


@given(types())
def test_round_trip_and_reversal(t):
    ds = hj_expand(t)
    assert hj_eval(ds) == t
    assert hj_expand(inverse_type(t)) == ds[::-1]


@given(types())
def test_duality_and_coprime_continuants(t):
    r, a = t
    cs = dual_fraction(t)
    assert hj_eval(cs) == (r, r - a)
    back = hj_expand(hj_eval(hj_expand((r, r - a))))
    assert back == cs
    assert dual_fraction((r, r - a)) == hj_expand(t)
    ds = hj_expand(t)
    assert gcd(tridet(ds), tridet(ds[1:])) == 1


@given(st.lists(st.integers(2, 9), min_size=1, max_size=8))
def test_continuant_positivity(ds):
    assert tridet(ds) > tridet(ds[1:])
    assert hj_expand(hj_eval(ds)) == ds
