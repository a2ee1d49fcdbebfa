import itertools

import pytest

from breuilext import chars, weights
from breuilext.chars import InertialChar
from breuilext.errors import IllegalFlag, NotGeneric, RangeViolation
from breuilext.weights import GenericityData, SerreWeight, WeightParam


def test_weight_identity():
    # equal iff n matches and the m residues agree mod p^f - 1
    w1 = SerreWeight.from_mn(5, 2, (4, 1), (4, 2))
    w2 = SerreWeight.from_mn(5, 2, (0, 30), (4, 2))
    assert w1.m_scalar == (4 * 25 + 1 * 5) % 24
    assert w2 == SerreWeight(5, 2, (4, 2), w2.m_scalar)
    assert w1 != w2
    assert SerreWeight.from_mn(5, 2, (4, 1), (4, 2)) == w1
    assert w1.dim == 5 * 3


def test_enumerate_wss_counterexample_pair():
    out = dict(weights.enumerate_Wss(InertialChar(5, 2, 0),
                                     InertialChar(5, 2, 14), 1))
    mu = SerreWeight.from_mn(5, 2, (4, 1), (4, 2))
    mu_prime = SerreWeight.from_mn(5, 2, (0, 0), (3, 1))
    assert [wp.json_dict() for wp in out[mu]] == [{"J": [0], "d": [0, 1]}]
    assert [wp.json_dict() for wp in out[mu_prime]] == [{"J": [0, 1], "d": [0, 0]}]


def test_enumerate_wss_generic_count():
    # f=1, generic quotient away from the cyclotomic: exactly two weights
    out = weights.enumerate_Wss(InertialChar(7, 1, 0), InertialChar(7, 1, 3), 1)
    assert len(out) == 2
    assert all(len(wits) == 1 for _, wits in out)


def test_genericity():
    g = weights.genericity(InertialChar(5, 2, 0), InertialChar(5, 2, 13), 1)
    assert g.b == (2, 1) and g.chi1_digits == (4, 4)
    with pytest.raises(NotGeneric):
        weights.genericity(InertialChar(5, 2, 0), InertialChar(5, 2, 5), 1)
    with pytest.raises(NotGeneric):
        weights.genericity(InertialChar(3, 1, 0), InertialChar(3, 1, 1), 2)
    with pytest.raises(NotGeneric):  # trivial quotient is never generic
        weights.genericity(InertialChar(5, 2, 3), InertialChar(5, 2, 3), 1)


def test_mu_of_jd():
    gen = GenericityData(5, 2, 1, (2, 1), (0, 0))
    w = weights.mu_of_Jd(gen, (0, 1), (0, 0))
    assert w.m_display == (4, 4) and w.n == (2, 1)
    with pytest.raises(RangeViolation):
        weights.mu_of_Jd(gen, (0, 1), (1, 0))  # d_0 too big on J
    with pytest.raises(RangeViolation):
        weights.mu_of_Jd(gen, (), (0, 0))  # d must be >= 1 off J


def test_mu_of_jd_injective_and_satisfies_congruences():
    chi1 = InertialChar(5, 2, 7)
    for b in itertools.product(range(3), repeat=2):
        chi2 = chi1.mul(chars.from_digits(5, 2, tuple(x + 1 for x in b)))
        gen = weights.genericity(chi1, chi2, 1)
        scan = dict(weights.enumerate_Wss(chi1, chi2, 1))
        seen = {}
        for wp in weights._legal_params(2, 1):
            w = weights.mu_of_Jd(gen, wp.J, wp.d)
            assert w not in seen
            seen[w] = wp
            assert w in scan
            assert (wp.J, wp.d) in {(x.J, x.d) for x in scan[w]}


def test_exceptional_weights():
    assert weights.exceptional_weights(GenericityData(5, 2, 1, (1, 1), (0, 0))) == []
    ex = weights.exceptional_weights(GenericityData(5, 2, 1, (0, 0), (2, 3)))
    assert len(ex) == 1
    wp, w = ex[0]
    assert wp.J == (0, 1) and wp.d == (0, 0) and wp.exceptional
    assert w.n == (4, 4) and w.m_scalar == chars.from_digits(5, 2, (2, 3)).scalar
    ex = weights.exceptional_weights(GenericityData(5, 2, 1, (2, 2), (2, 3)))
    assert len(ex) == 1 and ex[0][0].J == ()
    # both arise iff b = 0 and e' = (p-1)/2, and they differ
    both = weights.exceptional_weights(GenericityData(5, 1, 2, (0,), (1,)))
    assert len(both) == 2 and both[0][1] != both[1][1]


def test_tau_of_a_and_scalar_flags():
    gen = GenericityData(5, 2, 1, (0, 0), (1, 2))
    lam, lam_p, scalar = weights.tau_of_a(gen, (0, 0))
    assert scalar and lam == lam_p
    lam, lam_p, scalar = weights.tau_of_a(gen, (1, 1))
    assert not scalar
    gen2 = GenericityData(5, 2, 1, (2, 2), (1, 2))
    _, _, scalar = weights.tau_of_a(gen2, (1, 1))
    assert scalar
    # coagulation-side digits
    nu, nu_p = weights.twisted_tau_digits(gen, (0, 0))
    assert nu == (4, 4) and nu_p == (4, 4)
    nu, nu_p = weights.twisted_tau_digits(gen2, (1, 0))
    assert nu == (3, 2) and nu_p == (3, 4)


def test_jh_scalar_case_single_constituent():
    gen = GenericityData(5, 2, 1, (0, 0), (1, 2))
    out = weights.jh_constituents(gen, (0, 0))
    assert len(out) == 1 and out[0].n == (0, 0)
    gen2 = GenericityData(5, 2, 1, (2, 2), (1, 2))
    out2 = weights.jh_constituents(gen2, (1, 1))
    assert len(out2) == 1 and out2[0].n == (0, 0)


def test_partition_small():
    gen = weights.genericity(InertialChar(7, 1, 0), InertialChar(7, 1, 3), 1)
    part = weights.partition(gen)
    assert [len(ws) for _, ws in part.assignments] == [1, 1]
    assert part.extras == ()
    # packet sizes across e' = 2
    gen2 = weights.genericity(InertialChar(7, 1, 2), InertialChar(7, 1, 5), 2)
    part2 = weights.partition(gen2)
    assert [len(ws) for _, ws in part2.assignments] == [1, 2, 1]
    assert len(part2.W) == 4


def test_partition_matches_enumerate_scan():
    # the explicit scan finds exactly the partition weights plus exceptionals
    chi1 = InertialChar(5, 2, 11)
    for b in [(0, 0), (1, 2), (2, 2)]:
        chi2 = chi1.mul(chars.from_digits(5, 2, tuple(x + 1 for x in b)))
        gen = weights.genericity(chi1, chi2, 1)
        part = weights.partition(gen)
        scan = weights.enumerate_Wss(chi1, chi2, 1)
        expect = set(part.W) | {w for _, w in part.extras}
        assert {w for w, _ in scan} == expect
        # non-exceptional weights carry exactly one witness; the exceptional
        # weight carries exactly its predicted host (J, d)
        extras = {w for _, w in part.extras}
        predicted = {w: wp for wp, w in weights.exceptional_weights(gen)}
        for w, wits in scan:
            if w not in extras:
                assert len(wits) == 1
            else:
                assert [(x.J, x.d) for x in wits] \
                    == [(predicted[w].J, predicted[w].d)]


def test_partition_sum_rule():
    gen = weights.genericity(InertialChar(5, 2, 3), InertialChar(5, 2, 3 + 18), 1)
    for wp in weights._legal_params(2, 1):
        a = weights.host_a(gen, wp)
        assert sum(a) == sum(wp.d)


def test_wexpl_shape():
    gen = GenericityData(5, 2, 1, (1, 1), (0, 0))
    full = weights.wexpl_shape(gen, (1, 1))
    bottom = weights.wexpl_shape(gen, (0, 0))
    assert set(bottom) <= set(full)
    assert len(full) == 4 and len(bottom) == 1
    gen0 = GenericityData(5, 2, 1, (0, 0), (3, 1))
    tr = weights.wexpl_shape(gen0, tres_ramifiee=True)
    assert len(tr) == 1 and tr[0].n == (4, 4)
    assert tr[0].m_scalar == chars.from_digits(5, 2, (3, 1)).scalar
    with pytest.raises(IllegalFlag):
        weights.wexpl_shape(gen, tres_ramifiee=True)  # b != 0
    with pytest.raises(IllegalFlag):
        weights.wexpl_shape(gen0, (1, 1), tres_ramifiee=True)


def test_lcris_dim():
    gen = GenericityData(5, 2, 1, (1, 1), (0, 0))
    assert weights.lcris_dim(gen, WeightParam((0,), (0, 1))) == 1
    assert weights.lcris_dim(None, WeightParam((0, 1), (0, 0)), eprime=1) == 2
    assert weights.lcris_dim(gen, WeightParam((), (1, 1), exceptional=True)) == 0
    assert weights.lcris_dim(gen, WeightParam((0, 1), (0, 0), exceptional=True)) == 2
    with pytest.raises(RangeViolation):
        weights.lcris_dim(gen, WeightParam((0,), (1, 1)))
    with pytest.raises(RangeViolation):
        weights.lcris_dim(None, WeightParam((0,), (0, 1)))
