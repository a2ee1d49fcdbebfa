import pytest
from hypothesis import given, settings, strategies as st

from breuilext import gf
from breuilext.errors import DomainError


def test_make_field_examples():
    F3 = gf.make_field(3, 1)
    assert F3.q == 3 and F3.gen == 2
    F9 = gf.make_field(3, 2)
    assert F9.pow(F9.gen, 4) != 1
    assert F9.pow(F9.gen, 8) == 1
    F25 = gf.make_field(5, 2)
    assert F25.order_of(F25.gen) == 24


def test_make_field_rejects_bad_characteristic():
    with pytest.raises(DomainError):
        gf.make_field(2, 3)
    with pytest.raises(DomainError):
        gf.make_field(9, 1)
    with pytest.raises(DomainError):
        gf.make_field(15, 2)


def test_field_is_deterministic_and_idempotent():
    assert gf.make_field(3, 2) is gf.make_field(3, 2)
    assert gf.make_field(3, 2).modulus == (1, 0, 1)


def test_modulus_verified_irreducible():
    # no roots in proper subfields: gcd(modulus, X^{p^d} - X) trivial
    for p, m in [(3, 2), (5, 2), (3, 3), (7, 2)]:
        F = gf.make_field(p, m)
        poly = list(F.modulus)
        assert gf._is_irreducible(poly, p)


def test_generator_order_checked_against_prime_divisors():
    for p, m in [(3, 2), (5, 2), (7, 1)]:
        F = gf.make_field(p, m)
        n = F.q - 1
        for ell in gf.prime_factors(n):
            assert F.pow(F.gen, n // ell) != 1


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 24), st.integers(0, 24), st.integers(0, 24))
def test_field_axioms_f25(a, b, c):
    F = gf.make_field(5, 2)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 24), st.integers(0, 24))
def test_frobenius_additive(a, b):
    F = gf.make_field(5, 2)
    assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))


@pytest.fixture
def ring_p3f2():
    # p=3, f=2, e'=1: e = 8, ep = 24
    return gf.TensorRing(gf.make_field(3, 2), 2, 24)


def test_phi_examples(ring_p3f2):
    ring = ring_p3f2
    one = ring.one()
    assert gf.phi(one) == one
    # u^e dies: e*p = ep
    assert gf.phi(ring.monomial(0, 8)).is_zero()
    assert gf.phi(ring.monomial(0, 2)).support() == ((1, 6),)


def test_phi_f_fold_is_power_map(ring_p3f2):
    ring = ring_p3f2
    import random
    rnd = random.Random(3)
    for _ in range(25):
        x = ring.zero()
        for _ in range(4):
            x = x.add(ring.monomial(rnd.randrange(2), rnd.randrange(24),
                                    rnd.randrange(1, 9)))
        y = x
        for _ in range(ring.f):
            y = gf.phi(y)
        expect = ring.zero()
        for i, row in enumerate(x.comps):
            for j, a in enumerate(row):
                if a and j * 3 ** 2 < ring.ep:
                    expect = expect.add(ring.monomial(i, j * 9, a))
        assert y == expect


def test_galois_act(ring_p3f2):
    ring = ring_p3f2
    F = ring.field
    zeta = F.element_of_order(8)
    one = ring.one()
    assert gf.galois_act(zeta, (0, 0), one) == one
    x = ring.monomial(0, 1)
    assert gf.galois_act(zeta, (0, 0), x) != x
    # order: applying p^f - 1 times is the identity
    y = ring.monomial(1, 5, F.gen)
    z = y
    for _ in range(8):
        z = gf.galois_act(zeta, (3, 1), z)
    assert z == y
    # fixed points in degrees < e(K/L): exactly the ones congruent to -w_i
    for w0 in range(3):
        fixed = [j for j in range(8)
                 if gf.galois_act(zeta, (w0, 0), ring.monomial(0, j))
                 == ring.monomial(0, j)]
        assert fixed == [(-w0) % 8]


def test_galois_act_rejects_wrong_order(ring_p3f2):
    ring = ring_p3f2
    bad = ring.field.element_of_order(4)
    with pytest.raises(DomainError):
        gf.galois_act(bad, (0, 0), ring.one())


def test_norm():
    F9 = gf.make_field(3, 2)
    g = F9.gen
    a = gf.TensorElt(F9, (g, F9.pow(g, 3)))
    assert gf.norm(a) == F9.pow(g, 4)
    assert gf.norm(gf.TensorElt(F9, (1, 1))) == 1
    # multiplicative, and invariant under the idempotent shift
    import random
    rnd = random.Random(0)
    for _ in range(50):
        x = gf.TensorElt(F9, (rnd.randrange(1, 9), rnd.randrange(1, 9)))
        y = gf.TensorElt(F9, (rnd.randrange(1, 9), rnd.randrange(1, 9)))
        assert gf.norm(x.mul(y)) == F9.mul(gf.norm(x), gf.norm(y))
        assert gf.norm(x.shift()) == gf.norm(x)
