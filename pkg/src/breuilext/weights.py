"""Serre weights for GL_2(k), their explicit predicted sets, and the
partition by tame principal-series types.

A Serre weight mu_{m,n} is determined by the tuple n in [0, p-1]^f and the
residue sum(m_i p^{f-i}) mod p^f - 1; two weights are isomorphic iff those
agree.  The explicit set for a split pair (chi_1, chi_2) consists of the
mu_{m,n} admitting a witness (J, d) with J a subset of the embeddings and
d_i in [0, e'-1] for i in J, [1, e'] otherwise, solving

    chi_2 = prod_{i in J} omega_i^{m_i+n_i+e'-d_i} prod_{i not in J} omega_i^{m_i+e'-d_i},
    chi_1 = prod_{i in J} omega_i^{m_i+d_i}      prod_{i not in J} omega_i^{m_i+n_i+d_i}.

Under the genericity band e' <= b_i + e' <= p-1-e' on the digits of
chi_1^{-1} chi_2, each witness determines its weight, weights are indexed
by (J, d), and the whole set partitions into packets W_a indexed by
a in [0, e']^f through the reduction of the types tau_a.

Symbols b, c, d in this module always mean the weight-side quantities (the
genericity digits, the chi_1 digits, and witness offsets); they are
unrelated to the Breuil-module coefficients of the same names.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import chars
from .chars import InertialChar
from .errors import (IllegalFlag, InternalInconsistency, NotGeneric,
                     RangeViolation)


@dataclass(frozen=True)
class SerreWeight:
    """Irreducible GL_2(k)-weight: tensor over embeddings of det^m Sym^n."""

    p: int
    f: int
    n: Tuple[int, ...]
    m_scalar: int
    m_display: Tuple[int, ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        mod = self.p ** self.f - 1
        object.__setattr__(self, "m_scalar", self.m_scalar % mod)
        if self.m_display is None:
            object.__setattr__(self, "m_display",
                               InertialChar(self.p, self.f, self.m_scalar).digits())
        if len(self.n) != self.f or any(not 0 <= ni <= self.p - 1 for ni in self.n):
            raise RangeViolation("n entries must lie in [0, p-1]")

    @classmethod
    def from_mn(cls, p: int, f: int, m: Sequence[int], n: Sequence[int]) -> "SerreWeight":
        mod = p ** f - 1
        scalar = sum(mi * pow(p, f - i, mod) for i, mi in enumerate(m)) % mod
        return cls(p, f, tuple(n), scalar, tuple(m))

    @property
    def dim(self) -> int:
        out = 1
        for ni in self.n:
            out *= ni + 1
        return out

    @property
    def central_scalar(self) -> int:
        """Exponent of the central character on k^x."""
        mod = self.p ** self.f - 1
        return (2 * self.m_scalar
                + sum(ni * pow(self.p, self.f - i, mod)
                      for i, ni in enumerate(self.n))) % mod

    def sort_key(self):
        return (self.m_scalar, self.n)

    def json_dict(self):
        return {"m": list(self.m_display), "n": list(self.n)}

    def __eq__(self, other):
        return (isinstance(other, SerreWeight)
                and (self.p, self.f, self.n, self.m_scalar)
                == (other.p, other.f, other.n, other.m_scalar))

    def __hash__(self):
        return hash((self.p, self.f, self.n, self.m_scalar))

    def __repr__(self):
        return f"mu(m={self.m_display}, n={self.n})"


@dataclass(frozen=True)
class WeightParam:
    """Witness (J, d) for a weight; exceptional marks the two extra weights."""

    J: Tuple[int, ...]
    d: Tuple[int, ...]
    exceptional: bool = False

    def json_dict(self):
        out = {"J": list(self.J), "d": list(self.d)}
        if self.exceptional:
            out["exceptional"] = True
        return out


def _legal_params(f: int, eprime: int):
    """All (J, d) with d_i in [0, e'-1] on J and [1, e'] off J, J ascending."""
    for mask in range(1 << f):
        J = tuple(i for i in range(f) if mask >> i & 1)
        ranges = [range(eprime) if i in J else range(1, eprime + 1) for i in range(f)]
        for d in itertools.product(*ranges):
            yield WeightParam(J, d)


def enumerate_Wss(chi1: InertialChar, chi2: InertialChar, eprime: int
                  ) -> List[Tuple[SerreWeight, List[WeightParam]]]:
    """Exhaustive scan for the explicit weight set of the split pair.

    Scans all (m residue, n tuple, J, d) and keeps weights with at least
    one witness; output sorted by (m residue, n), witnesses in (J, d) order.
    """
    chi1._check(chi2)
    p, f = chi1.p, chi1.f
    mod = p ** f - 1
    params = list(_legal_params(f, eprime))
    pw = [pow(p, f - i, mod) for i in range(f)]
    found: Dict[SerreWeight, List[WeightParam]] = {}
    for m_scalar in range(mod):
        for n in itertools.product(range(p), repeat=f):
            n_scalar = {}
            wit = []
            for wp in params:
                sum_nJ = sum(n[i] * pw[i] for i in wp.J) % mod
                sum_n_off = (sum(ni * pw[i] for i, ni in enumerate(n)) - sum_nJ) % mod
                sum_d = sum(di * pw[i] for i, di in enumerate(wp.d)) % mod
                sum_e = eprime * sum(pw) % mod
                if (m_scalar + sum_nJ + sum_e - sum_d) % mod != chi2.scalar:
                    continue
                if (m_scalar + sum_n_off + sum_d) % mod != chi1.scalar:
                    continue
                wit.append(wp)
            if wit:
                found[SerreWeight(p, f, n, m_scalar)] = wit
    return sorted(found.items(), key=lambda kv: kv[0].sort_key())


@dataclass(frozen=True)
class GenericityData:
    """Digits b of chi_1^{-1} chi_2 (shifted by e') and the chi_1 digits."""

    p: int
    f: int
    eprime: int
    b: Tuple[int, ...]
    chi1_digits: Tuple[int, ...]

    @property
    def A(self) -> List[Tuple[int, ...]]:
        """The index set [0, e']^f, lexicographic."""
        return list(itertools.product(range(self.eprime + 1), repeat=self.f))

    def delta_a(self, a: Sequence[int]) -> int:
        return sum(1 for ai in a if ai in (0, self.eprime))


def genericity(chi1: InertialChar, chi2: InertialChar, eprime: int) -> GenericityData:
    """Check the digit band e' <= b_i + e' <= p-1-e' on chi_1^{-1} chi_2.

    Raises NotGeneric with the violating embedding, or unconditionally when
    2e' > p-1 (empty band).
    """
    chi1._check(chi2)
    p, f = chi1.p, chi1.f
    if 2 * eprime > p - 1:
        raise NotGeneric(message=f"empty band: 2e' = {2 * eprime} > p-1 = {p - 1}")
    quot = chi2.div(chi1)
    digs = quot.digits()
    if quot.is_trivial:
        # all-(p-1) digits always violate the band since e' >= 1
        raise NotGeneric(index=0)
    for i, g in enumerate(digs):
        if not eprime <= g <= p - 1 - eprime:
            raise NotGeneric(index=i)
    b = tuple(g - eprime for g in digs)
    return GenericityData(p, f, eprime, b, chi1.digits())


def mu_of_Jd(gen: GenericityData, J: Sequence[int], d: Sequence[int]) -> SerreWeight:
    """The weight mu(J, d), by the four-case table on consecutive embeddings."""
    p, f, ep_ = gen.p, gen.f, gen.eprime
    Jset = frozenset(J)
    d = tuple(d)
    for i in range(f):
        lo, hi = (0, ep_ - 1) if i in Jset else (1, ep_)
        if not lo <= d[i] <= hi:
            raise RangeViolation(f"d_{i} outside [{lo}, {hi}]")
    b, c = gen.b, gen.chi1_digits
    m, n = [], []
    for i in range(f):
        inJ, nextJ = i in Jset, (i + 1) % f in Jset
        if inJ and nextJ:
            m.append(c[i] + p - 1 - d[i]); n.append(b[i] + 2 * d[i])
        elif inJ and not nextJ:
            m.append(c[i] + p - 1 - d[i]); n.append(b[i] + 2 * d[i] + 1)
        elif not inJ and nextJ:
            m.append(c[i] + b[i] + d[i] - 1); n.append(p - b[i] - 2 * d[i])
        else:
            m.append(c[i] + b[i] + d[i]); n.append(p - 1 - b[i] - 2 * d[i])
    return SerreWeight.from_mn(p, f, m, n)


def exceptional_weights(gen: GenericityData) -> List[Tuple[WeightParam, SerreWeight]]:
    """The at-most-two extra weights with n = (p-1, ..., p-1).

    One occurs when b = 0 (hosted at J = all, d = 0) and one when
    b = (p-1-2e', ...) (hosted at J = {}, d = (e', ...)); both occur, and
    are distinct, exactly when b = 0 and e' = (p-1)/2.
    """
    p, f, ep_ = gen.p, gen.f, gen.eprime
    out = []
    if all(bi == 0 for bi in gen.b):
        wp = WeightParam(tuple(range(f)), (0,) * f, exceptional=True)
        out.append((wp, SerreWeight.from_mn(p, f, gen.chi1_digits, (p - 1,) * f)))
    if all(bi == p - 1 - 2 * ep_ for bi in gen.b):
        wp = WeightParam((), (ep_,) * f, exceptional=True)
        m = tuple(ci - ep_ for ci in gen.chi1_digits)
        out.append((wp, SerreWeight.from_mn(p, f, m, (p - 1,) * f)))
    return out


def tau_of_a(gen: GenericityData, a: Sequence[int]
             ) -> Tuple[InertialChar, InertialChar, bool]:
    """The type attached to a: exponents c+b+a and c-a, plus a scalar flag."""
    p, f, ep_ = gen.p, gen.f, gen.eprime
    a = _check_a(gen, a)
    b, c = gen.b, gen.chi1_digits
    lam = _char_from_exponents(p, f, tuple(c[i] + b[i] + a[i] for i in range(f)))
    lam_p = _char_from_exponents(p, f, tuple(c[i] - a[i] for i in range(f)))
    scalar = (all(x == 0 for x in a) and all(x == 0 for x in b)) or \
             (all(x == ep_ for x in a) and all(x == p - 1 - 2 * ep_ for x in b))
    assert scalar == (lam == lam_p)
    return lam, lam_p, scalar


def _char_from_exponents(p: int, f: int, exps: Sequence[int]) -> InertialChar:
    mod = p ** f - 1
    return InertialChar(p, f, sum(e * pow(p, f - i, mod) for i, e in enumerate(exps)))


def _check_a(gen: GenericityData, a: Sequence[int]) -> Tuple[int, ...]:
    a = tuple(a)
    if len(a) != gen.f or any(not 0 <= ai <= gen.eprime for ai in a):
        raise RangeViolation("a entries must lie in [0, e']")
    return a


def twisted_tau_digits(gen: GenericityData, a: Sequence[int]
                       ) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Digit tuples (nu, nu') of tau_a after twisting chi_1 to 1.

    nu_i = a_i + b_i and nu'_i = p-1-a_i, except that a trivial first
    character is written with all digits p-1.
    """
    p, f = gen.p, gen.f
    a = _check_a(gen, a)
    nu = tuple(a[i] + gen.b[i] for i in range(f))
    if all(x == 0 for x in nu):
        nu = (p - 1,) * f
    nu_p = tuple(p - 1 - a[i] for i in range(f))
    return nu, nu_p


def jh_constituents(gen: GenericityData, a: Sequence[int]) -> List[SerreWeight]:
    """Constituents of the reduction of the type attached to a.

    Non-scalar types: the weights nu(a, J') over subsets J' with all
    n'_i >= 0, by the four-case table (with the chi_1 digits reinstated).
    Scalar types have a single constituent: J' = all embeddings when
    a = b = 0, J' = {} in the other scalar case.
    """
    p, f, ep_ = gen.p, gen.f, gen.eprime
    a = _check_a(gen, a)
    _, _, scalar = tau_of_a(gen, a)
    if scalar:
        if all(x == 0 for x in a):
            subsets = [frozenset(range(f))]
        else:
            subsets = [frozenset()]
    else:
        subsets = [frozenset(i for i in range(f) if mask >> i & 1)
                   for mask in range(1 << f)]
    out = []
    for Jp in subsets:
        mn = _nu_of_aJ(gen, a, Jp)
        if mn is not None:
            out.append(mn)
    return sorted(set(out), key=lambda w: w.sort_key())


def _nu_of_aJ(gen: GenericityData, a, Jp) -> Optional[SerreWeight]:
    p, f = gen.p, gen.f
    b, c = gen.b, gen.chi1_digits
    m, n = [], []
    for i in range(f):
        inJ, nextJ = i in Jp, (i + 1) % f in Jp
        if inJ and nextJ:
            m.append(c[i] + p - 1 - a[i]); n.append(b[i] + 2 * a[i])
        elif inJ and not nextJ:
            m.append(c[i] + p - a[i]); n.append(b[i] + 2 * a[i] - 1)
        elif not inJ and nextJ:
            m.append(c[i] + b[i] + a[i]); n.append(p - 2 - b[i] - 2 * a[i])
        else:
            m.append(c[i] + b[i] + a[i]); n.append(p - 1 - b[i] - 2 * a[i])
        if n[-1] < 0:
            return None
    return SerreWeight.from_mn(p, f, m, n)


def host_a(gen: GenericityData, wp: WeightParam) -> Tuple[int, ...]:
    """The packet index of mu(J, d): a_i = d_i +- 1 at J-boundary crossings."""
    if wp.exceptional:
        return (0,) * gen.f if wp.J else (gen.eprime,) * gen.f
    Jset = frozenset(wp.J)
    a = []
    for i in range(gen.f):
        inJ, nextJ = i in Jset, (i + 1) % gen.f in Jset
        if inJ and not nextJ:
            a.append(wp.d[i] + 1)
        elif not inJ and nextJ:
            a.append(wp.d[i] - 1)
        else:
            a.append(wp.d[i])
    return tuple(a)


@dataclass(frozen=True)
class Partition:
    """The packets W_a plus the exceptional extras, keyed by host index."""

    gen: GenericityData
    assignments: Tuple[Tuple[Tuple[int, ...], Tuple[SerreWeight, ...]], ...]
    extras: Tuple[Tuple[Tuple[int, ...], SerreWeight], ...]

    def W_a(self, a) -> Tuple[SerreWeight, ...]:
        a = tuple(a)
        for key, ws in self.assignments:
            if key == a:
                return ws
        return ()

    def W_prime_a(self, a) -> Tuple[SerreWeight, ...]:
        a = tuple(a)
        out = list(self.W_a(a))
        for key, w in self.extras:
            if key == a:
                out.append(w)
        return tuple(out)

    @property
    def W(self) -> List[SerreWeight]:
        return sorted((w for _, ws in self.assignments for w in ws),
                      key=lambda w: w.sort_key())

    def json_dict(self):
        return [{"a": list(a),
                 "W_a": [w.json_dict() for w in ws],
                 "Wprime_extra": [w.json_dict() for key, w in self.extras if key == a]}
                for a, ws in self.assignments]


def partition(gen: GenericityData) -> Partition:
    """Partition of the explicit weight set into packets W_a.

    Verifies: weights are pairwise distinct ((J,d) -> mu injective), packet
    sizes are 2^{f - delta_a}, sum(a) = sum(d) on every assignment, and
    each packet is contained in the constituents of its type.  Any failure
    raises InternalInconsistency.
    """
    f, ep_ = gen.f, gen.eprime
    buckets: Dict[Tuple[int, ...], List[SerreWeight]] = {a: [] for a in gen.A}
    seen: Dict[SerreWeight, WeightParam] = {}
    for wp in _legal_params(f, ep_):
        w = mu_of_Jd(gen, wp.J, wp.d)
        if w in seen:
            raise InternalInconsistency(f"(J,d) -> weight not injective: {wp} vs {seen[w]}")
        seen[w] = wp
        a = host_a(gen, wp)
        if sum(a) != sum(wp.d):
            raise InternalInconsistency(f"sum(a) != sum(d) for {wp}")
        buckets[a].append(w)
    for a, ws in buckets.items():
        if len(ws) != 2 ** (f - gen.delta_a(a)):
            raise InternalInconsistency(
                f"|W_a| = {len(ws)} != 2^(f-delta) at a={a}")
        jh = set(jh_constituents(gen, a))
        if not set(ws) <= jh:
            raise InternalInconsistency(f"W_a not inside the constituents at a={a}")
    extras = tuple((host_a(gen, wp), w) for wp, w in exceptional_weights(gen))
    assignments = tuple((a, tuple(sorted(buckets[a], key=lambda w: w.sort_key())))
                        for a in gen.A)
    return Partition(gen, assignments, extras)


def wexpl_shape(gen: GenericityData, a_max: Optional[Sequence[int]] = None,
                tres_ramifiee: bool = False) -> List[SerreWeight]:
    """Predicted-weight-set shape: union of W'_a over a <= a_max, or the
    single weight (m = chi_1 digits, n all p-1) in the tres-ramifiee case."""
    if tres_ramifiee:
        if a_max is not None:
            raise IllegalFlag("pass either a_max or tres_ramifiee, not both")
        if any(bi != 0 for bi in gen.b):
            raise IllegalFlag("tres ramifiee requires the quotient to be "
                              "cyclotomic on inertia (b = 0)")
        return [SerreWeight.from_mn(gen.p, gen.f, gen.chi1_digits,
                                    (gen.p - 1,) * gen.f)]
    a_max = _check_a(gen, a_max)
    part = partition(gen)
    out: List[SerreWeight] = []
    for a in gen.A:
        if all(x <= y for x, y in zip(a, a_max)):
            out.extend(part.W_prime_a(a))
    return sorted(out, key=lambda w: w.sort_key())


def lcris_dim(gen: Optional[GenericityData], param: WeightParam,
              eprime: Optional[int] = None) -> int:
    """Crystalline-extension dimension count for a witness (J, d).

    Ordinary witnesses give sum(e' - d_i); the exceptional witness at
    J = {} gives 0 and the one at J = all gives e'f.  ``gen`` validates
    ranges when present; pass ``eprime`` instead to use the count outside
    the generic setting.
    """
    if gen is not None:
        eprime = gen.eprime
    if eprime is None:
        raise RangeViolation("either gen or eprime is required")
    f = len(param.d)
    if param.exceptional:
        return 0 if not param.J else eprime * f
    for i in range(f):
        lo, hi = (0, eprime - 1) if i in param.J else (1, eprime)
        if not lo <= param.d[i] <= hi:
            raise RangeViolation(f"d_{i} outside [{lo}, {hi}]")
    return sum(eprime - di for di in param.d)
