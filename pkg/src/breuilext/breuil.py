"""Rank-one Breuil modules with tame descent data and their extensions.

The fixed setting throughout: p an odd prime, f = f', e(K/L) = p^f - 1,
e = e' * (p^f - 1), working ring (k (x) k_E)[u]/u^{ep}.

A rank-one module is determined by the invariant triple (r, a, c):

* r_i in [0, e]           -- filtration heights, one per embedding,
* a in (k (x) k_E)^x      -- Frobenius coefficient; only Nm(a) matters,
                             so constructors normalise a to (Nm(a), 1, ..., 1),
* c_i mod p^f - 1         -- descent exponents, c_{i+1} = p(c_i + r_i).

Derived from r: alpha_i = p(p^{f-1} r_i + ... + r_{i+f-1})/(p^f - 1), a
nonnegative integer divisible by p, with alpha_{i+1} = p(alpha_i - r_i).
The generic fibre is the character with inertial exponent c_i + alpha_i at
embedding i and unramified part Nm(a)^{-1}.

Extensions of M(r,a,c) by M(s,b,d) are stored in the canonical form: an
extension parameter h with slot-i monomials of degree j in
[max(0, r_i+s_i-e), s_i) congruent to r_i + c_i - d_i mod p^f - 1, plus one
extra degree-(r_0+beta_0-alpha_0) slot in component 0 exactly when a
nonzero map M -> N exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from . import chars, gf
from .chars import GaloisChar, InertialChar
from .errors import (DomainError, EmptyModelSet, HypothesisViolation,
                     InconsistentInvariants, NonIntegralAlpha,
                     PreconditionViolation, RangeViolation,
                     RecurrenceViolation)
from .gf import TensorElt, TensorRing, TruncPoly


@dataclass(frozen=True)
class Params:
    """Ambient arithmetic setting; everything else is parameterised by it.

    coeff_degree s >= 1 sets k_E = F_{p^{f*s}} (s = 1 by default: k_E = k).
    """

    p: int
    f: int
    eprime: int
    coeff_degree: int = 1

    def __post_init__(self):
        if self.p == 2 or not gf.is_prime(self.p):
            raise DomainError("p must be an odd prime")
        if self.f < 1 or self.eprime < 1 or self.coeff_degree < 1:
            raise DomainError("f, e', coeff_degree must be >= 1")

    @property
    def q(self) -> int:
        return self.p ** self.f

    @property
    def ekl(self) -> int:
        return self.q - 1

    @property
    def e(self) -> int:
        return self.eprime * self.ekl

    @property
    def ep(self) -> int:
        return self.e * self.p

    @cached_property
    def field(self) -> gf.Field:
        return gf.make_field(self.p, self.f * self.coeff_degree)

    @cached_property
    def ring(self) -> TensorRing:
        return TensorRing(self.field, self.f, self.ep)

    @cached_property
    def zeta(self) -> int:
        """Image under sigma_0 of the fixed generator of mu_{e(K/L)}(k)."""
        return self.field.element_of_order(self.ekl)

    # -- conveniences --------------------------------------------------------

    def inertial(self, scalar: int) -> InertialChar:
        return InertialChar(self.p, self.f, scalar)

    def galois_char(self, scalar: int, unramified: int = 1) -> GaloisChar:
        return GaloisChar(self.inertial(scalar), unramified, self.field)

    def trivial_char(self) -> GaloisChar:
        return self.galois_char(0, 1)

    def tensor(self, comps) -> TensorElt:
        return TensorElt(self.field, comps)

    def unit_tensor(self, norm_value: int = 1) -> TensorElt:
        if norm_value == 0:
            raise RangeViolation("norm value must be invertible")
        return TensorElt(self.field, (norm_value,) + (1,) * (self.f - 1))


class RankOneModule:
    """M(r, a, c): the invariant triple with derived alpha and generic fibre."""

    __slots__ = ("params", "r", "a", "c", "alpha")

    def __init__(self, params: Params, r: Sequence[int], a, c: Sequence[int]):
        self.params = params
        f, e, ekl, p = params.f, params.e, params.ekl, params.p
        self.r = tuple(int(x) for x in r)
        if len(self.r) != f:
            raise RangeViolation(f"r must have {f} entries")
        if any(not 0 <= ri <= e for ri in self.r):
            raise RangeViolation(f"r entries must lie in [0, {e}]")
        if isinstance(a, TensorElt):
            if not a.is_invertible():
                raise RangeViolation("a must be invertible")
            a = gf.norm(a)
        if a == 0:
            raise RangeViolation("a must be invertible")
        self.a = params.unit_tensor(a)
        self.c = tuple(int(x) % ekl for x in c)
        if len(self.c) != f:
            raise RangeViolation(f"c must have {f} entries")
        for i in range(f):
            if self.c[(i + 1) % f] != (p * (self.c[i] + self.r[i])) % ekl:
                raise RecurrenceViolation(
                    f"c_{(i + 1) % f} != p*(c_{i} + r_{i}) mod {ekl}")
        alpha = []
        for i in range(f):
            num = p * sum(p ** (f - 1 - j) * self.r[(i + j) % f] for j in range(f))
            if num % ekl:
                # unreachable once the recurrence above holds
                raise NonIntegralAlpha(f"alpha_{i} is not an integer")
            alpha.append(num // ekl)
        self.alpha = tuple(alpha)

    @property
    def norm_a(self) -> int:
        return gf.norm(self.a)

    def generic_fibre(self) -> GaloisChar:
        """Character with inertial exponent c_i + alpha_i, unramified Nm(a)^{-1}."""
        pr, f, ekl = self.params, self.params.f, self.params.ekl
        vals = {((self.c[i] + self.alpha[i]) * pow(pr.p, f - i, ekl)) % ekl
                for i in range(f)}
        if len(vals) != 1:
            raise InconsistentInvariants(f"fibre exponent depends on i: {vals}")
        lam = pr.field.inv(self.norm_a)
        return GaloisChar(pr.inertial(vals.pop()), lam, pr.field)

    def json_dict(self):
        return {"r": list(self.r),
                "a_norm_dlog": self.params.field.dlog(self.norm_a),
                "c": list(self.c)}

    def __eq__(self, other):
        # isomorphism classes: (r, c, Nm(a)) per the rank-one classification
        return (isinstance(other, RankOneModule)
                and self.params == other.params
                and self.r == other.r and self.c == other.c
                and self.norm_a == other.norm_a)

    def __hash__(self):
        return hash((self.r, self.c, self.norm_a))

    def __repr__(self):
        return f"M(r={self.r}, Nm(a)={self.norm_a}, c={self.c})"


def enumerate_rank_one(params: Params, norm_a: int = 1) -> List[RankOneModule]:
    """All valid modules with the given coefficient norm, in (r, c) order.

    The descent exponents are propagated from c_0 through the recurrence
    and kept only when they close up around the cycle.
    """
    out = []
    for r in itertools.product(range(params.e + 1), repeat=params.f):
        for c0 in range(params.ekl):
            c = [c0]
            for i in range(params.f - 1):
                c.append((params.p * (c[i] + r[i])) % params.ekl)
            if (params.p * (c[-1] + r[-1])) % params.ekl != c0:
                continue
            out.append(RankOneModule(params, r, norm_a, c))
    return out


def hom_exists(M: RankOneModule, N: RankOneModule) -> Optional[Tuple[int, ...]]:
    """Degrees z_i = beta_i - alpha_i of the map m -> delta*u^z*n, or None.

    A nonzero map M -> N exists iff z_i >= 0 and z_i = c_i - d_i mod p^f - 1
    for all i, and Nm(a) = Nm(b).
    """
    if M.params != N.params:
        raise DomainError("modules live over different params")
    ekl = M.params.ekl
    z = tuple(b - a for a, b in zip(M.alpha, N.alpha))
    if any(zi < 0 for zi in z):
        return None
    if any((zi - (ci - di)) % ekl for zi, ci, di in zip(z, M.c, N.c)):
        return None
    if M.norm_a != N.norm_a:
        return None
    return z


def chi_dual(M: RankOneModule, chi2: GaloisChar) -> RankOneModule:
    """The module N with s_i = e - r_i and generic fibre chi2.

    alpha_i(M) + alpha_i(N) = ep/(p-1) for all i.
    """
    pr = M.params
    beta_top = pr.ep // (pr.p - 1)
    s = tuple(pr.e - ri for ri in M.r)
    beta = tuple(beta_top - ai for ai in M.alpha)
    w = chi2.inertial.scalar
    d = tuple((w * pow(pr.p, i, pr.ekl) - beta[i]) % pr.ekl for i in range(pr.f))
    b = pr.field.inv(chi2.unramified)
    N = RankOneModule(pr, s, b, d)
    assert N.generic_fibre() == chi2
    return N


def _bound_model(M: RankOneModule, N: RankOneModule, upper: bool) -> RankOneModule:
    if M.params != N.params:
        raise DomainError("modules live over different params")
    pr = M.params
    if M.generic_fibre() != N.generic_fibre():
        raise PreconditionViolation("generic fibres differ")
    pick = max if upper else min
    gamma = tuple(pick(a, b) for a, b in zip(M.alpha, N.alpha))
    # t_i = gamma_i - gamma_{i+1}/p; every alpha_i (hence gamma_i) is divisible by p
    t = tuple(gamma[i] - gamma[(i + 1) % pr.f] // pr.p for i in range(pr.f))
    v = tuple((M.c[i] + M.alpha[i] - gamma[i]) % pr.ekl for i in range(pr.f))
    P = RankOneModule(pr, t, M.norm_a, v)
    assert P.alpha == gamma
    if upper:
        assert hom_exists(M, P) is not None and hom_exists(N, P) is not None
    else:
        assert hom_exists(P, M) is not None and hom_exists(P, N) is not None
    return P


def upper_bound_model(M: RankOneModule, N: RankOneModule) -> RankOneModule:
    """P = M(t, a, v) with alpha_i(P) = max(alpha_i, beta_i) and maps from M, N."""
    return _bound_model(M, N, upper=True)


def lower_bound_model(M: RankOneModule, N: RankOneModule) -> RankOneModule:
    """P with alpha_i(P) = min(alpha_i, beta_i) and maps to M and N."""
    return _bound_model(M, N, upper=False)


def models_of_type(params: Params, tau: Tuple[InertialChar, InertialChar],
                   chi: GaloisChar) -> List[RankOneModule]:
    """All models of type lambda (+) lambda' with generic fibre chi.

    Enumerates subsets J (J = {} forced when lambda = lambda') and tuples x
    allowable for J whose twisted product matches chi on inertia; r comes
    from the degree bookkeeping of the (J, x) parametrisation and c from
    the digit sums of lambda or lambda'.  Deterministic order: (J, x)
    lexicographic.
    """
    lam, lam_p = tau
    p, f, ekl, eprime = params.p, params.f, params.ekl, params.eprime
    dd = chars.decompose(lam, lam_p)
    C = dd.carries
    nu, nu_p = lam.digits(), lam_p.digits()
    target = chi.inertial.scalar
    a_norm = params.field.inv(chi.unramified)
    c_in = tuple(sum(nu[(i - j) % f] * pow(p, j, ekl) for j in range(f)) % ekl
                 for i in range(f))
    c_out = tuple(sum(nu_p[(i - j) % f] * pow(p, j, ekl) for j in range(f)) % ekl
                  for i in range(f))
    out: List[RankOneModule] = []
    if lam == lam_p:
        subsets = [frozenset()]
    else:
        subsets = [frozenset(i for i in range(f) if mask >> i & 1)
                   for mask in range(1 << f)]
    for J in subsets:
        base = sum((nu[i] if i in J else nu_p[i]) * pow(p, f - i, ekl)
                   for i in range(f)) % ekl
        for x in itertools.product(range(eprime + 1), repeat=f):
            if not _allowable(x, J, C, f, eprime, lam == lam_p):
                continue
            if (base + sum(x[i] * pow(p, f - i, ekl) for i in range(f))) % ekl != target:
                continue
            r = []
            for i in range(f):
                bk = chars.bracket(p, f, dd.delta, i)
                inJ, nextJ, inC = i in J, (i + 1) % f in J, i in C
                if inJ == nextJ:
                    off = 0
                elif inJ and not nextJ:
                    off = -(ekl - bk) if inC else bk
                else:  # i not in J, i+1 in J
                    off = (ekl - bk) if inC else -bk
                r.append(x[i] * ekl + off)
            c = tuple(c_in[i] if i in J else c_out[i] for i in range(f))
            m = RankOneModule(params, r, a_norm, c)
            assert m.generic_fibre() == chi
            out.append(m)
    return out


def _allowable(x, J, C, f, eprime, scalar_type) -> bool:
    if scalar_type:
        return True
    for i in range(f):
        inJ, nextJ, inC = i in J, (i + 1) % f in J, i in C
        if inJ and not nextJ:
            if (not inC and x[i] == eprime) or (inC and x[i] == 0):
                return False
        elif not inJ and nextJ:
            if (inC and x[i] == eprime) or (not inC and x[i] == 0):
                return False
    return True


def extremal_models(params: Params, tau, chi: GaloisChar
                    ) -> Tuple[RankOneModule, RankOneModule]:
    """(minimal, maximal) of the set of models of type tau with fibre chi.

    Computed by folding the pairwise bounds over the enumeration; both
    extremes are verified against every member.
    """
    S = models_of_type(params, tau, chi)
    if not S:
        raise EmptyModelSet("no model of the requested type and fibre")
    mx = mn = S[0]
    for m in S[1:]:
        mx = upper_bound_model(mx, m)
        mn = lower_bound_model(mn, m)
    for m in S:
        assert hom_exists(m, mx) is not None
        assert hom_exists(mn, m) is not None
    return mn, mx


# ---------------------------------------------------------------------------
# Extensions.


def _slot_degrees(lo: int, hi: int, residue: int, mod: int) -> Tuple[int, ...]:
    first = lo + ((residue - lo) % mod)
    return tuple(range(first, hi, mod)) if first < hi else ()


@dataclass(frozen=True)
class ExtBasis:
    """Canonical-form slot degrees of Ext^1(M, N), per component, plus the
    extra component-0 slot present exactly when a nonzero map M -> N exists."""

    slots: Tuple[Tuple[int, ...], ...]
    delta_slot: Optional[int]

    @property
    def dimension(self) -> int:
        return (self.delta_slot is not None) + sum(len(s) for s in self.slots)

    def json_dict(self):
        return {"slots": [list(s) for s in self.slots],
                "delta_slot": self.delta_slot}


def ext_basis(M: RankOneModule, N: RankOneModule) -> ExtBasis:
    """Slot degrees j in [max(0, r_i+s_i-e), s_i), j = r_i+c_i-d_i mod p^f-1."""
    pr = M.params
    if pr != N.params:
        raise DomainError("modules live over different params")
    slots = []
    for i in range(pr.f):
        lo = max(0, M.r[i] + N.r[i] - pr.e)
        residue = (M.r[i] + M.c[i] - N.c[i]) % pr.ekl
        slots.append(_slot_degrees(lo, N.r[i], residue, pr.ekl))
    z = hom_exists(M, N)
    delta_slot = None
    if z is not None:
        delta_slot = M.r[0] + z[0]
    return ExtBasis(tuple(slots), delta_slot)


def ext_dim(M: RankOneModule, N: RankOneModule) -> int:
    """dim Ext^1(M, N) = delta + sum_i #{slot degrees at i}."""
    return ext_basis(M, N).dimension


class ExtClass:
    """Extension of M(r,a,c) by N(s,b,d) with parameter h.

    Validates the well-definedness conditions: u^{max(0, r_i+s_i-e)} divides
    h_i and every term of degree < e + s_i is congruent to r_i + c_i - d_i
    mod p^f - 1.  Canonical form (degrees < s_i except the permitted common
    slot) is checked by ``is_canonical``.
    """

    __slots__ = ("M", "N", "h")

    def __init__(self, M: RankOneModule, N: RankOneModule, h: TruncPoly):
        if M.params != N.params:
            raise DomainError("modules live over different params")
        if h.ring is not M.params.ring:
            raise DomainError("h lives in the wrong ring")
        self.M, self.N, self.h = M, N, h
        pr = M.params
        for i, j in h.support():
            if j < max(0, M.r[i] + N.r[i] - pr.e):
                raise RangeViolation(
                    f"h_{i} not divisible by u^{max(0, M.r[i] + N.r[i] - pr.e)}")
            if j < pr.e + N.r[i] and (j - (M.r[i] + M.c[i] - N.c[i])) % pr.ekl:
                raise RangeViolation(
                    f"term of degree {j} in h_{i} violates the degree congruence")

    def is_canonical(self) -> bool:
        basis = ext_basis(self.M, self.N)
        for i, j in self.h.support():
            if j in basis.slots[i]:
                continue
            if i == 0 and basis.delta_slot is not None and j == basis.delta_slot:
                continue
            return False
        return True

    def __repr__(self):
        return f"ExtClass({self.M!r}; {self.N!r}; h={self.h!r})"


def ext_class_from_slots(M: RankOneModule, N: RankOneModule,
                         coeffs, delta_coeff: int = 0) -> ExtClass:
    """Build a canonical-form class from per-slot coefficients.

    ``coeffs[i]`` assigns a k_E coefficient to each degree in the i-th slot
    list of ``ext_basis(M, N)``; ``delta_coeff`` fills the extra slot.
    """
    pr = M.params
    basis = ext_basis(M, N)
    h = pr.ring.zero()
    for i, (degs, row) in enumerate(zip(basis.slots, coeffs)):
        for j, cf in zip(degs, row):
            if cf:
                h = h.add(pr.ring.monomial(i, j, cf))
    if delta_coeff:
        if basis.delta_slot is None:
            raise RangeViolation("no extra slot: no nonzero map M -> N")
        h = h.add(pr.ring.monomial(0, basis.delta_slot, delta_coeff))
    return ExtClass(M, N, h)


def minimax_transfer(P: ExtClass) -> ExtClass:
    """Same generic fibre, transported to the pair with r = 0 and s = e.

    Sends P(r,a,c; s,b,d; h) to P(0,a,c''; e,b,d''; u^shift h) where
    c''_i = c_i + alpha_i, d''_i = d_i + beta_i - ep/(p-1) and
    shift_i = ep/(p-1) - beta_i + alpha_i - r_i >= 0.
    """
    M, N = P.M, P.N
    pr = M.params
    top = pr.ep // (pr.p - 1)
    for i in range(pr.f):
        # beta_i - s_i = beta_{i+1}/p <= e/(p-1)
        assert pr.e - N.r[i] <= top - N.alpha[i]
    shift = tuple(top - N.alpha[i] + M.alpha[i] - M.r[i] for i in range(pr.f))
    assert all(s >= 0 for s in shift)
    c_dag = tuple((M.c[i] + M.alpha[i]) % pr.ekl for i in range(pr.f))
    d_dag = tuple((N.c[i] + N.alpha[i] - top) % pr.ekl for i in range(pr.f))
    M_dag = RankOneModule(pr, (0,) * pr.f, M.norm_a, c_dag)
    N_dag = RankOneModule(pr, (pr.e,) * pr.f, N.norm_a, d_dag)
    return ExtClass(M_dag, N_dag, P.h.shift_degrees(shift))


# ---------------------------------------------------------------------------
# The flat extension space L(chi_1, chi_2, tau) in canonical coordinates.


@dataclass(frozen=True)
class LSpace:
    """L(1, chi, tau) as slot occupancy in Ext^1 of the transferred pair.

    ``slots[i]`` lists (t, degree) with degree = t(p^f-1) - B_i, where B_i
    is the bracket representative of the digit sum of lambda*lambda' at i;
    t runs over (p-1-nu'_i, e'].  The host pair is (M(0,1,0), M(e,b,dd)).
    """

    quotient: RankOneModule
    sub: RankOneModule
    slots: Tuple[Tuple[Tuple[int, int], ...], ...]

    @property
    def dimension(self) -> int:
        return sum(len(s) for s in self.slots)

    def degree_sets(self) -> Tuple[frozenset, ...]:
        return tuple(frozenset(d for _, d in s) for s in self.slots)

    def json_dict(self):
        return {"slots": [[list(td) for td in s] for s in self.slots],
                "dimension": self.dimension,
                "sub": self.sub.json_dict()}


def l_space(params: Params, nu: Sequence[int], nu_prime: Sequence[int],
            chi: GaloisChar) -> LSpace:
    """Canonical slot sets of L(1, chi, lambda (+) lambda').

    Inputs are the digit tuples of lambda, lambda' after twisting so the
    sub-character is trivial (the caller passes chi = chi_1^{-1} chi_2).
    Hypotheses: nu'_i in [p-1-e', p-1], nu_i <= nu'_i, nu_i + nu'_i >= p-1
    for all i, chi != 1, and chi = lambda lambda' cyclotomic on inertia.
    """
    p, f, eprime, ekl = params.p, params.f, params.eprime, params.ekl
    nu, nu_p = tuple(nu), tuple(nu_prime)
    for i in range(f):
        if not p - 1 - eprime <= nu_p[i] <= p - 1:
            raise HypothesisViolation("nu'_i in [p-1-e', p-1]", f"fails at i={i}")
        if nu[i] > nu_p[i]:
            raise HypothesisViolation("nu_i <= nu'_i", f"fails at i={i}")
        if nu[i] + nu_p[i] < p - 1:
            raise HypothesisViolation("nu_i + nu'_i >= p-1", f"fails at i={i}")
    if chi.is_trivial:
        raise HypothesisViolation("chi != 1")
    lam = chars.from_digits(p, f, nu)
    lam_p = chars.from_digits(p, f, nu_p)
    cyc = chars.cyclotomic_inertial(p, f, eprime)
    if chi.inertial != lam.mul(lam_p).mul(cyc):
        raise HypothesisViolation("chi = lambda lambda' cyclotomic on inertia")
    sigma = tuple(nu[i] + nu_p[i] - (p - 1) for i in range(f))
    d_dag = tuple(sum(sigma[(i - j) % f] * pow(p, j, ekl) for j in range(f)) % ekl
                  for i in range(f))
    quotient = RankOneModule(params, (0,) * f, 1, (0,) * f)
    sub = RankOneModule(params, (params.e,) * f,
                        params.field.inv(chi.unramified), d_dag)
    slots = []
    for i in range(f):
        bk = sum(sigma[(i - j) % f] * pow(p, j, ekl) for j in range(f)) % ekl
        slots.append(tuple((t, t * ekl - bk)
                           for t in range(p - 1 - nu_p[i] + 1, eprime + 1)))
    return LSpace(quotient, sub, tuple(slots))


def containment(Mp: RankOneModule, Np: RankOneModule,
                M: RankOneModule, N: RankOneModule) -> bool:
    """True when L(Mp, Np) is contained in L(M, N).

    Checks, for all i, that
    max(alpha_{i+1}/p - beta_i, alpha_i - beta_{i+1}/p - e) is at most the
    same expression for the primed pair.  In particular this holds whenever
    nonzero maps M -> Mp and Np -> N exist.
    """
    pr = M.params
    if any(x.params != pr for x in (Mp, Np, N)):
        raise DomainError("modules live over different params")
    if Mp.generic_fibre() != M.generic_fibre() or Np.generic_fibre() != N.generic_fibre():
        raise PreconditionViolation("fibre pairing mismatch")
    p, f, e = pr.p, pr.f, pr.e

    def spread(A, B, i):
        return max(A.alpha[(i + 1) % f] // p - B.alpha[i],
                   A.alpha[i] - B.alpha[(i + 1) % f] // p - e)

    return all(spread(M, N, i) <= spread(Mp, Np, i) for i in range(f))
