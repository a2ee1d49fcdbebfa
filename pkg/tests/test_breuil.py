import itertools
import random

import pytest

from breuilext import breuil, chars, weights
from breuilext.breuil import Params, RankOneModule
from breuilext.errors import (EmptyModelSet, HypothesisViolation,
                              PreconditionViolation, RangeViolation,
                              RecurrenceViolation)


@pytest.fixture(scope="module")
def p311():
    return Params(3, 1, 1)


@pytest.fixture(scope="module")
def p321():
    return Params(3, 2, 1)


def test_make_validates(p311, p321):
    m = RankOneModule(p311, (0,), 1, (0,))
    assert m.alpha == (0,)
    m = RankOneModule(p311, (2,), 1, (0,))
    assert m.alpha == (3,)
    m = RankOneModule(p321, (8, 0), 1, (0, 0))
    assert m.alpha == (9, 3)
    with pytest.raises(RangeViolation):
        RankOneModule(p311, (3,), 1, (0,))
    with pytest.raises(RecurrenceViolation):
        RankOneModule(p321, (8, 0), 1, (1, 0))
    with pytest.raises(RangeViolation):
        RankOneModule(p311, (0,), 0, (0,))


def test_alpha_recurrence_everywhere(p321):
    for m in breuil.enumerate_rank_one(p321):
        for i in range(2):
            assert m.alpha[(i + 1) % 2] == 3 * (m.alpha[i] - m.r[i])
            assert m.alpha[i] % 3 == 0


def test_generic_fibre(p311, p321):
    assert RankOneModule(p311, (0,), 1, (0,)).generic_fibre().is_trivial
    g = RankOneModule(p311, (2,), 1, (0,)).generic_fibre()
    assert g.inertial.scalar == 1 and g.unramified == 1
    # unramified part is the inverse norm
    gen = p321.field.gen
    m = RankOneModule(p321, (0, 0), gen, (0, 0))
    assert m.generic_fibre().unramified == p321.field.inv(gen)
    # fibre exponent is embedding-independent for every valid module
    for m in breuil.enumerate_rank_one(p321):
        m.generic_fibre()


def test_hom_exists(p311):
    m = RankOneModule(p311, (0,), 1, (0,))
    assert breuil.hom_exists(m, m) == (0,)
    P = Params(3, 1, 3)
    M = RankOneModule(P, (0,), 1, (0,))
    N = RankOneModule(P, (6,), 1, (0,))
    assert breuil.hom_exists(M, N) is None  # degree 9 fails the parity
    # norm mismatch blocks the map
    m_g = RankOneModule(p311, (0,), p311.field.gen, (0,))
    assert breuil.hom_exists(m, m_g) is None


def test_hom_iff_same_fibre_and_alpha_dominates(p321):
    mods = breuil.enumerate_rank_one(p321)
    rnd = random.Random(5)
    for _ in range(300):
        M, N = rnd.choice(mods), rnd.choice(mods)
        want = (M.generic_fibre() == N.generic_fibre()
                and all(b >= a for a, b in zip(M.alpha, N.alpha)))
        assert (breuil.hom_exists(M, N) is not None) == want


def test_chi_dual(p311, p321):
    m = RankOneModule(p311, (0,), 1, (0,))
    chi2 = p311.galois_char(1, 1)
    n = breuil.chi_dual(m, chi2)
    assert n.r == (2,) and n.c == (0,) and n.norm_a == 1
    # involution and alpha pairing
    for P in (p311, p321):
        top = P.ep // (P.p - 1)
        mods = breuil.enumerate_rank_one(P)
        for m in mods[:40]:
            chi2 = P.galois_char(3, P.field.gen)
            d = breuil.chi_dual(m, chi2)
            assert all(x + y == top for x, y in zip(m.alpha, d.alpha))
            back = breuil.chi_dual(d, m.generic_fibre())
            assert back == m
            prod = m.generic_fibre().mul(d.generic_fibre())
            assert prod.inertial == m.generic_fibre().inertial.mul(chi2.inertial)


def test_upper_and_lower_bound(p311, p321):
    M = RankOneModule(p311, (2,), 1, (0,))
    N = RankOneModule(p311, (0,), 1, (1,))
    assert breuil.upper_bound_model(M, M) == M
    P = breuil.upper_bound_model(M, N)
    assert P == M
    lo = breuil.lower_bound_model(M, N)
    assert lo == N
    with pytest.raises(PreconditionViolation):
        breuil.upper_bound_model(M, RankOneModule(p311, (0,), 1, (0,)))
    # random checks at f=2
    mods = breuil.enumerate_rank_one(p321)
    byfib = {}
    for m in mods:
        byfib.setdefault(m.generic_fibre().inertial.scalar, []).append(m)
    rnd = random.Random(11)
    for group in byfib.values():
        for _ in range(10):
            A, B = rnd.choice(group), rnd.choice(group)
            up = breuil.upper_bound_model(A, B)
            assert up.alpha == tuple(max(x, y) for x, y in zip(A.alpha, B.alpha))
            assert up.r == tuple(x - y // 3 for x, y in
                                 zip(up.alpha, up.alpha[1:] + up.alpha[:1]))
            lo = breuil.lower_bound_model(A, B)
            assert lo.alpha == tuple(min(x, y) for x, y in zip(A.alpha, B.alpha))


def test_models_of_type_matches_direct_enumeration():
    for (p, f, ep_) in [(3, 1, 2), (3, 2, 1), (5, 1, 1)]:
        P = Params(p, f, ep_)
        mods = breuil.enumerate_rank_one(P)
        ekl = P.ekl
        for t1 in range(ekl):
            for t2 in range(t1, ekl):
                S = {t1, t2}
                direct = [m for m in mods
                          if all((m.c[i] * pow(p, f - i, ekl)) % ekl in S
                                 for i in range(f))]
                byfib = {}
                for m in direct:
                    byfib.setdefault(m.generic_fibre(), []).append(m)
                tau = (P.inertial(t1), P.inertial(t2))
                for fib, want in byfib.items():
                    got = breuil.models_of_type(P, tau, fib)
                    assert sorted((m.r, m.c) for m in got) \
                        == sorted((m.r, m.c) for m in want)


def test_models_deterministic_order(p321):
    tau = (p321.inertial(1), p321.inertial(3))
    chis = {m.generic_fibre() for m in breuil.models_of_type(
        p321, tau, p321.trivial_char())}
    got = breuil.models_of_type(p321, tau, p321.trivial_char())
    assert got == breuil.models_of_type(p321, tau, p321.trivial_char())


def test_extremal_models(p311, p321):
    tau = (p311.inertial(0), p311.inertial(0))
    mn, mx = breuil.extremal_models(p311, tau, p311.trivial_char())
    assert mn == RankOneModule(p311, (0,), 1, (0,))
    empty = next((t1, t2, s)
                 for t1 in range(8) for t2 in range(8) for s in range(8)
                 if not breuil.models_of_type(
                     p321, (p321.inertial(t1), p321.inertial(t2)),
                     p321.galois_char(s, 1)))
    with pytest.raises(EmptyModelSet):
        breuil.extremal_models(p321, (p321.inertial(empty[0]),
                                      p321.inertial(empty[1])),
                               p321.galois_char(empty[2], 1))
    # max model with fibre chi2 = dual of min model with fibre chi1
    rnd = random.Random(7)
    done = 0
    while done < 15:
        t1, t2 = rnd.randrange(8), rnd.randrange(8)
        tau = (p321.inertial(t1), p321.inertial(t2))
        prod = (t1 + t2 + chars.cyclotomic_inertial(3, 2, 1).scalar) % 8
        c1 = rnd.randrange(8)
        u = p321.field.from_dlog(rnd.randrange(8))
        chi1 = p321.galois_char(c1, u)
        chi2 = p321.galois_char(prod - c1, p321.field.inv(u))
        if not (breuil.models_of_type(p321, tau, chi1)
                and breuil.models_of_type(p321, tau, chi2)):
            continue
        done += 1
        mn1, _ = breuil.extremal_models(p321, tau, chi1)
        _, mx2 = breuil.extremal_models(p321, tau, chi2)
        assert breuil.chi_dual(mn1, chi2) == mx2


def test_ext_dim_and_basis(p311):
    m = RankOneModule(p311, (0,), 1, (0,))
    assert breuil.ext_dim(m, m) == 1
    basis = breuil.ext_basis(m, m)
    assert basis.slots == ((),) and basis.delta_slot == 0
    P = Params(3, 1, 3)
    M = RankOneModule(P, (0,), 1, (0,))
    N = RankOneModule(P, (6,), 1, (0,))
    basis = breuil.ext_basis(M, N)
    assert basis.slots == ((0, 2, 4),) and basis.delta_slot is None
    assert breuil.ext_dim(M, N) == 3
    assert basis.json_dict() == {"slots": [[0, 2, 4]], "delta_slot": None}


def test_ext_dim_depends_only_on_norm(p321):
    # replacing (a, b) by coefficients of equal norms keeps the dimension
    g = p321.field.gen
    mods = breuil.enumerate_rank_one(p321)[:20]
    for M in mods[:6]:
        for N in mods[:6]:
            d1 = breuil.ext_dim(M, N)
            M2 = RankOneModule(p321, M.r, M.norm_a, M.c)
            N2 = RankOneModule(p321, N.r, N.norm_a, N.c)
            assert breuil.ext_dim(M2, N2) == d1
            # distinct norms kill the delta slot only
            Ng = RankOneModule(p321, N.r, p321.field.mul(N.norm_a, g), N.c)
            delta = breuil.hom_exists(M, N) is not None
            assert breuil.ext_dim(M, Ng) == d1 - delta


def test_ext_class_validation(p311):
    P = Params(3, 1, 3)
    M = RankOneModule(P, (0,), 1, (0,))
    N = RankOneModule(P, (6,), 1, (0,))
    good = breuil.ext_class_from_slots(M, N, [(1, 0, 2)])
    assert good.is_canonical()
    m0 = RankOneModule(P, (0,), 1, (0,))
    with_delta = breuil.ext_class_from_slots(m0, m0, [()], delta_coeff=1)
    assert with_delta.is_canonical()
    assert with_delta.h.support() == ((0, 0),)
    with pytest.raises(RangeViolation):
        breuil.ExtClass(M, N, P.ring.monomial(0, 1))  # odd degree breaks parity
    with pytest.raises(RangeViolation):
        breuil.ext_class_from_slots(M, N, [()], delta_coeff=1)  # no delta slot
    # degree >= e + s is unconstrained
    breuil.ExtClass(M, N, P.ring.monomial(0, 13))
    # a non-canonical but well-defined parameter
    cls = breuil.ExtClass(M, N, P.ring.monomial(0, 8))
    assert not cls.is_canonical()


def test_minimax_transfer(p311):
    m = RankOneModule(p311, (0,), 1, (0,))
    n2 = RankOneModule(p311, (2,), 1, (1,))
    fixed = breuil.minimax_transfer(breuil.ExtClass(m, n2, p311.ring.zero()))
    assert fixed.M == m and fixed.N == n2
    P = Params(3, 1, 3)
    M = RankOneModule(P, (4,), 1, (0,))
    chi2 = P.galois_char(M.generic_fibre().inertial.scalar, 1)
    N = breuil.chi_dual(M, chi2)
    basis = breuil.ext_basis(M, N)
    for i, degs in enumerate(basis.slots):
        for dg in degs:
            cls = breuil.ExtClass(M, N, P.ring.monomial(i, dg))
            out = breuil.minimax_transfer(cls)
            assert out.M.r == (0,) and out.N.r == (P.e,)
            assert out.M.c == tuple((M.c[j] + M.alpha[j]) % P.ekl
                                    for j in range(P.f))


def test_l_space_hypotheses(p321):
    chi = p321.galois_char(chars.from_digits(3, 2, (1, 1)).scalar, 1)
    L = breuil.l_space(p321, (0, 0), (2, 2), chi)
    assert L.dimension == 2
    with pytest.raises(HypothesisViolation):
        breuil.l_space(p321, (0, 0), (0, 2), chi)  # nu' outside the band
    with pytest.raises(HypothesisViolation):
        breuil.l_space(p321, (2, 0), (1, 2), chi)  # nu > nu'
    with pytest.raises(HypothesisViolation):
        breuil.l_space(p321, (0, 0), (1, 2), chi)  # nu + nu' < p-1
    with pytest.raises(HypothesisViolation):
        breuil.l_space(p321, (0, 0), (2, 2), p321.trivial_char())
    with pytest.raises(HypothesisViolation):
        breuil.l_space(p321, (1, 1), (2, 2),
                       p321.galois_char(chars.from_digits(3, 2, (1, 1)).scalar, 1))


def test_l_space_matches_transferred_slots():
    # the slot sets are the minimax transfer of the minimal pair's classes,
    # with degree 0 traded for degree e when both characters are trivial
    p, f, ep_ = 5, 2, 1
    P = Params(p, f, ep_)
    for b in itertools.product(range(p - 2 * ep_), repeat=f):
        gen = weights.GenericityData(p, f, ep_, b, (0,) * f)
        chi = P.galois_char(
            chars.from_digits(p, f, tuple(x + ep_ for x in b)).scalar, 1)
        for a in gen.A:
            nu, nu_p = weights.twisted_tau_digits(gen, a)
            lam = chars.from_digits(p, f, nu)
            lam_p = chars.from_digits(p, f, nu_p)
            L = breuil.l_space(P, nu, nu_p, chi)
            assert L.dimension == sum(ep_ - x for x in a)
            mn, _ = breuil.extremal_models(P, (lam, lam_p), P.trivial_char())
            N = breuil.chi_dual(mn, chi)
            basis = breuil.ext_basis(mn, N)
            assert basis.delta_slot is None
            assert basis.dimension == L.dimension
            all_top = all(x + y == 2 * (p - 1) for x, y in zip(nu, nu_p))
            for i in range(f):
                got = set()
                for dg in basis.slots[i]:
                    cls = breuil.ExtClass(mn, N, P.ring.monomial(i, dg))
                    out = breuil.minimax_transfer(cls)
                    assert out.M == L.quotient and out.N == L.sub
                    got.add(out.h.support()[0][1])
                if all_top and 0 in got:
                    got = (got - {0}) | {P.e}
                assert got == set(L.degree_sets()[i])


def test_containment(p311):
    P = Params(3, 1, 2)
    mods = breuil.enumerate_rank_one(P)
    byfib = {}
    for m in mods:
        byfib.setdefault(m.generic_fibre(), []).append(m)
    falsifier = False
    for group in byfib.values():
        for M, Mp in itertools.product(group, repeat=2):
            for group2 in byfib.values():
                for N, Np in itertools.product(group2, repeat=2):
                    res = breuil.containment(Mp, Np, M, N)
                    if M is Mp and N is Np:
                        assert res
                    if (breuil.hom_exists(M, Mp) is not None
                            and breuil.hom_exists(Np, N) is not None):
                        assert res
                    if not res and Mp.alpha[0] < M.alpha[0] and Np.alpha == N.alpha:
                        falsifier = True
    assert falsifier
    with pytest.raises(PreconditionViolation):
        a = mods[0]
        other = next(m for m in mods if m.generic_fibre() != a.generic_fibre())
        breuil.containment(other, a, a, a)


def test_json_encodings(p321):
    m = RankOneModule(p321, (8, 0), p321.field.gen, (0, 0))
    assert m.json_dict() == {"r": [8, 0], "a_norm_dlog": 1, "c": [0, 0]}


def test_coefficient_extension_degree():
    # k_E strictly larger than k: unramified parts outside the prime subfield
    P = Params(3, 1, 1, coeff_degree=2)
    assert P.field.q == 9
    g = P.field.gen
    m = RankOneModule(P, (0,), g, (0,))
    fib = m.generic_fibre()
    assert fib.unramified == P.field.inv(g)
    chi2 = P.galois_char(1, g)
    n = breuil.chi_dual(m, chi2)
    assert n.generic_fibre() == chi2
    tau = (P.inertial(0), P.inertial(1))
    mods = breuil.models_of_type(P, tau, chi2)
    assert mods and all(x.generic_fibre() == chi2 for x in mods)


def test_models_of_type_f3():
    P = Params(3, 3, 1)
    mods = breuil.enumerate_rank_one(P)
    ekl = P.ekl
    rnd = random.Random(17)
    for _ in range(6):
        t1, t2 = rnd.randrange(ekl), rnd.randrange(ekl)
        S = {t1, t2}
        direct = {}
        for m in mods:
            if all((m.c[i] * pow(3, 3 - i, ekl)) % ekl in S for i in range(3)):
                direct.setdefault(m.generic_fibre(), []).append(m)
        tau = (P.inertial(t1), P.inertial(t2))
        for fib, want in direct.items():
            got = breuil.models_of_type(P, tau, fib)
            assert sorted((m.r, m.c) for m in got) == sorted((m.r, m.c) for m in want)


def test_minimax_shift_in_coagulation_setting():
    # for the minimal pair of a type within the digit band, the transfer
    # shift is (p^f-1)(p-1-nu'_i) + 2*sum_j (p-1-nu'_{i-j}) p^j
    P = Params(3, 2, 1)
    top = P.ep // (P.p - 1)
    for nu_p in itertools.product((1, 2), repeat=2):
        lam = chars.from_digits(3, 2, nu_p)
        mn, _ = breuil.extremal_models(P, (lam, lam), P.trivial_char())
        chi = P.galois_char((2 * lam.scalar
                             + chars.cyclotomic_inertial(3, 2, 1).scalar) % 8, 1)
        N = breuil.chi_dual(mn, chi)
        for i in range(2):
            want = (3 ** 2 - 1) * (2 - nu_p[i]) \
                + 2 * sum((2 - nu_p[(i - j) % 2]) * 3 ** j for j in range(2))
            assert top - N.alpha[i] + mn.alpha[i] - mn.r[i] == want
