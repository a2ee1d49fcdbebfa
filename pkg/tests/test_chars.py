import itertools

import pytest
from hypothesis import given, settings, strategies as st

from breuilext import chars
from breuilext.chars import InertialChar


def test_digit_examples():
    assert InertialChar(5, 2, 7).digits() == (2, 1)
    assert InertialChar(5, 2, 14).digits() == (4, 2)
    # the trivial character carries all-(p-1) digits
    assert InertialChar(5, 2, 0).digits() == (4, 4)
    assert InertialChar(3, 1, 0).digits() == (2,)


@pytest.mark.parametrize("p,f", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 2), (3, 3)])
def test_digits_round_trip_exhaustive(p, f):
    for t in range(p ** f - 1):
        ch = InertialChar(p, f, t)
        digs = ch.digits()
        assert all(0 <= d <= p - 1 for d in digs)
        assert chars.from_digits(p, f, digs) == ch


def test_omega_tower():
    for p, f in [(3, 2), (5, 2), (3, 3)]:
        for i in range(f):
            assert chars.omega(p, f, i + 1).pow(p) == chars.omega(p, f, i)
        # omega_0 is the standard character
        assert chars.omega(p, f, 0).scalar == 1


def test_cyclotomic_restriction():
    # product of all fundamental characters to the e' gives the cyclotomic
    for p, f, ep_ in [(3, 2, 1), (5, 2, 2), (7, 1, 3)]:
        want = InertialChar(p, f, 0)
        for i in range(f):
            want = want.mul(chars.omega(p, f, i).pow(ep_))
        assert chars.cyclotomic_inertial(p, f, ep_) == want


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 23), st.integers(0, 23), st.integers(-5, 5))
def test_group_laws(t1, t2, k):
    a, b = InertialChar(5, 2, t1), InertialChar(5, 2, t2)
    assert a.mul(b) == b.mul(a)
    assert a.mul(a.inv()).is_trivial
    assert a.pow(k) == InertialChar(5, 2, t1 * k)
    assert a.div(b).mul(b) == a


def test_product_digits_are_not_digitwise_sums():
    # guards against a naive digit implementation
    hits = [
        (a, b)
        for a, b in itertools.product(range(8), repeat=2)
        if tuple(x + y for x, y in zip(InertialChar(3, 2, a).digits(),
                                       InertialChar(3, 2, b).digits()))
        != InertialChar(3, 2, a + b).digits()
    ]
    assert hits


def test_decompose_examples():
    d = chars.decompose(InertialChar(5, 1, 1), InertialChar(5, 1, 1))
    assert d.delta == 0 and d.delta_digits == (0,) and d.carries == frozenset()
    d = chars.decompose(InertialChar(5, 1, 1), InertialChar(5, 1, 3))
    assert d.delta_digits == (2,) and d.carries == frozenset()
    d = chars.decompose(InertialChar(5, 1, 3), InertialChar(5, 1, 1))
    assert d.delta_digits == (2,) and d.carries == frozenset({0})


@pytest.mark.parametrize("p,f", [(3, 1), (3, 2), (5, 1), (5, 2)])
def test_decompose_recompose_exhaustive(p, f):
    mod = p ** f - 1
    for t1, t2 in itertools.product(range(mod), repeat=2):
        lam, lam_p = InertialChar(p, f, t1), InertialChar(p, f, t2)
        dd = chars.decompose(lam, lam_p)
        nu, nu_p = lam.digits(), lam_p.digits()
        assert not all(x == p - 1 for x in dd.delta_digits)
        for i in range(f):
            assert nu_p[i] == (dd.delta_digits[i] + nu[i]
                               - p * dd.gamma[(i - 1) % f] + dd.gamma[i])


def test_bracket():
    assert chars.bracket(3, 2, 0, 1) == 0
    assert chars.bracket(3, 2, 5, 1) == 7
    assert chars.bracket(3, 2, 5, 3) == chars.bracket(3, 2, 5, 1)
    assert all(0 <= chars.bracket(5, 2, d, i) <= 23
               for d in range(24) for i in range(4))


def test_galois_char_json():
    from breuilext import gf
    F = gf.make_field(5, 2)
    ch = chars.GaloisChar(InertialChar(5, 2, 7), F.pow(F.gen, 5), F)
    assert ch.json_dict() == {"scalar": 7, "unramified_dlog": 5}
    assert ch.mul(ch.inv()).is_trivial
