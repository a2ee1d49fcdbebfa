"""Exact arithmetic in F_{p^m}, in the tensor ring k (x) k_E, and in the
truncated polynomial ring (k (x) k_E)[u]/u^{ep}.

Representation conventions
--------------------------

* An element of F_{p^m} is an integer in [0, p^m) encoding the coefficient
  vector of its polynomial representative: c_0 + c_1*x + ... maps to
  c_0 + c_1*p + c_2*p^2 + ...  The defining polynomial is the first monic
  irreducible of degree m in this encoding order, so fields are
  reproducible bit for bit.

* The tensor ring k (x) k_E decomposes as a product of f copies of k_E cut
  out by idempotents e_0, ..., e_{f-1}; a ``TensorElt`` stores the f
  component values.  The Frobenius-type endomorphism ``phi`` substitutes
  u -> u^p and shifts component i into slot i+1 (mod f); it is k_E-linear
  on coefficients.

* A ``TruncPoly`` stores, per idempotent slot, a dense coefficient tuple of
  length ep; all arithmetic truncates at u^{ep}.

Everything is immutable after construction and safe to share.
"""

from __future__ import annotations

import functools
import math
from typing import Iterable, Sequence, Tuple

from .errors import DomainError, RangeViolation


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> Tuple[int, ...]:
    """Distinct prime divisors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


# ---------------------------------------------------------------------------
# Polynomial arithmetic over F_p (coefficient lists, little-endian).

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_rem(res, mod, p)


def _poly_rem(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            factor = (c * inv_lead) % p
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - factor * mod[j]) % p
    del a[dm:]
    return _poly_trim(a)


def _poly_powmod(a, k, mod, p):
    result = [1]
    base = _poly_rem(a, mod, p)
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        k >>= 1
    return result


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        a[i] = (a[i] - c) % p
    return _poly_trim(a)


def _poly_gcd(a, b, p):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a = _poly_rem(a, b, p) if len(a) >= len(b) else a
        a, b = b, a
    return a


def _is_irreducible(poly, p) -> bool:
    """Monic poly of degree m >= 1 over F_p, by the derandomized criterion:
    x^{p^m} = x mod poly, and gcd(x^{p^{m/l}} - x, poly) = 1 for primes l|m."""
    m = len(poly) - 1
    if m == 1:
        return True
    x = [0, 1]
    xq = _poly_powmod(x, p ** m, poly, p)
    if _poly_sub(xq, x, p):
        return False
    for ell in prime_factors(m):
        d = m // ell
        xd = _poly_powmod(x, p ** d, poly, p)
        g = _poly_gcd(_poly_sub(xd, x, p), poly, p)
        if len(g) > 1:
            return False
    return True


# ---------------------------------------------------------------------------


class Field:
    """F_{p^m} with a verified defining polynomial and generator.

    Elements are ints in [0, q); ``exp``/``log`` tables make mul/inv/pow
    cheap.  Construction is deterministic for fixed (p, m).
    """

    def __init__(self, p: int, m: int, modulus: Tuple[int, ...]):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = tuple(modulus)
        self.gen = self._find_generator()
        self._build_tables()

    # -- encoding ----------------------------------------------------------

    def to_vec(self, a: int) -> Tuple[int, ...]:
        v = []
        for _ in range(self.m):
            v.append(a % self.p)
            a //= self.p
        return tuple(v)

    def from_vec(self, v: Sequence[int]) -> int:
        a = 0
        for c in reversed(list(v)):
            a = a * self.p + (c % self.p)
        return a

    # -- raw arithmetic (table-free, used during bootstrap) -----------------

    def _raw_mul(self, a: int, b: int) -> int:
        av, bv = list(self.to_vec(a)), list(self.to_vec(b))
        prod = _poly_mulmod(_poly_trim(av), _poly_trim(bv), list(self.modulus), self.p)
        return self.from_vec(prod + [0] * (self.m - len(prod)))

    def _find_generator(self) -> int:
        n = self.q - 1
        fac = prime_factors(n)
        for cand in range(2, self.q):
            ok = True
            for ell in fac:
                e, acc, base = n // ell, 1, cand
                while e:
                    if e & 1:
                        acc = self._raw_mul(acc, base)
                    base = self._raw_mul(base, base)
                    e >>= 1
                if acc == 1:
                    ok = False
                    break
            if ok:
                return cand
        raise DomainError("no multiplicative generator found (not a field?)")

    def _build_tables(self):
        self.exp = [1] * (self.q - 1)
        for i in range(1, self.q - 1):
            self.exp[i] = self._raw_mul(self.exp[i - 1], self.gen)
        self.log = [0] * self.q  # log[0] is meaningless
        for i, v in enumerate(self.exp):
            self.log[v] = i

    # -- field operations ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p, r, mul = self.p, 0, 1
        while a or b:
            r += ((a + b) % p) * mul
            a //= p
            b //= p
            mul *= p
        return r

    def neg(self, a: int) -> int:
        p, r, mul = self.p, 0, 1
        while a:
            r += (-a % p) * mul
            a //= p
            mul *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self.exp[-self.log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        return self.exp[(self.log[a] * k) % (self.q - 1)]

    def frob(self, a: int) -> int:
        """x -> x^p (additive on sums; asserted in tests)."""
        return self.pow(a, self.p)

    def order_of(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        n = self.q - 1
        return n // math.gcd(n, self.log[a])

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("dlog of 0")
        return self.log[a]

    def from_dlog(self, k: int) -> int:
        return self.exp[k % (self.q - 1)]

    def element_of_order(self, n: int) -> int:
        """Deterministic element of exact multiplicative order n."""
        if (self.q - 1) % n != 0:
            raise DomainError(f"no element of order {n} in F_{self.q}")
        return self.exp[(self.q - 1) // n]

    def __repr__(self):
        return f"Field(p={self.p}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))


@functools.lru_cache(maxsize=None)
def make_field(p: int, m: int) -> Field:
    """First monic irreducible of degree m (in encoding order) over F_p.

    Rejects p = 2 and composite p.  Idempotent: repeated calls return the
    same object.
    """
    if p == 2:
        raise DomainError("characteristic 2 is not supported")
    if not is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if m < 1:
        raise DomainError("extension degree must be >= 1")
    for enc in range(p ** m):
        field = Field(p, m, tuple(_int_digits(enc, p, m)) + (1,))
        poly = list(field.modulus)
        if _is_irreducible(poly, p):
            return field
    raise DomainError("no irreducible polynomial found")  # pragma: no cover


def _int_digits(n: int, p: int, m: int):
    out = []
    for _ in range(m):
        out.append(n % p)
        n //= p
    return out


# ---------------------------------------------------------------------------


class TensorElt:
    """Element of k (x) k_E as its f idempotent components (k_E values)."""

    __slots__ = ("field", "comps")

    def __init__(self, field: Field, comps: Iterable[int]):
        self.field = field
        self.comps = tuple(comps)
        if any(not 0 <= c < field.q for c in self.comps):
            raise RangeViolation("tensor component outside its field")

    @property
    def f(self) -> int:
        return len(self.comps)

    def is_invertible(self) -> bool:
        return all(c != 0 for c in self.comps)

    def mul(self, other: "TensorElt") -> "TensorElt":
        fld = self.field
        return TensorElt(fld, (fld.mul(a, b) for a, b in zip(self.comps, other.comps)))

    def inv(self) -> "TensorElt":
        fld = self.field
        return TensorElt(fld, (fld.inv(a) for a in self.comps))

    def shift(self, k: int = 1) -> "TensorElt":
        """Component i moved to slot i+k (the idempotent shift under phi^k)."""
        f = self.f
        return TensorElt(self.field, (self.comps[(i - k) % f] for i in range(f)))

    def __eq__(self, other):
        return isinstance(other, TensorElt) and self.comps == other.comps and self.field == other.field

    def __hash__(self):
        return hash((self.field, self.comps))

    def __repr__(self):
        return f"TensorElt{self.comps}"


def norm(a: TensorElt) -> int:
    """Product of the f components (an element of k_E)."""
    fld = a.field
    out = 1
    for c in a.comps:
        out = fld.mul(out, c)
    return out


class TensorRing:
    """(k (x) k_E)[u]/u^{ep} with f idempotent slots.

    ``f`` is the number of slots (the degree of k over F_p); the coefficient
    field k_E may be larger.  Carries the operations phi and the tame Galois
    action; e(K/L) = p^f - 1 throughout.
    """

    def __init__(self, field: Field, f: int, ep: int):
        self.field = field
        self.f = f
        self.ep = ep
        self.p = field.p
        self.ekl = field.p ** f - 1

    def zero(self) -> "TruncPoly":
        row = (0,) * self.ep
        return TruncPoly(self, (row,) * self.f)

    def one(self) -> "TruncPoly":
        comps = [[0] * self.ep for _ in range(self.f)]
        for i in range(self.f):
            comps[i][0] = 1
        return TruncPoly(self, comps)

    def monomial(self, i: int, j: int, coeff: int = 1) -> "TruncPoly":
        """coeff * u^j in idempotent slot i."""
        if not 0 <= j < self.ep:
            raise RangeViolation(f"degree {j} outside [0, {self.ep})")
        comps = [[0] * self.ep for _ in range(self.f)]
        comps[i % self.f][j] = coeff
        return TruncPoly(self, comps)

    def sigma_image(self, zeta: int, i: int) -> int:
        """sigma_i(zeta) for zeta given through sigma_0; uses sigma_{i+1}^p = sigma_i.

        sigma_i = sigma_0 o (x -> x^{p^{f-i}}), and zeta has order p^f - 1,
        so the exponent is taken mod p^f - 1.
        """
        return self.field.pow(zeta, pow(self.p, (self.f - i) % self.f, self.ekl))


class TruncPoly:
    """Element of a TensorRing: per-slot dense coefficient tuples."""

    __slots__ = ("ring", "comps")

    def __init__(self, ring: TensorRing, comps):
        self.ring = ring
        self.comps = tuple(tuple(c) for c in comps)
        if len(self.comps) != ring.f or any(len(c) != ring.ep for c in self.comps):
            raise RangeViolation("component shape does not match the ring")

    def add(self, other: "TruncPoly") -> "TruncPoly":
        fld = self.ring.field
        return TruncPoly(self.ring, (tuple(fld.add(a, b) for a, b in zip(ra, rb))
                                     for ra, rb in zip(self.comps, other.comps)))

    def neg(self) -> "TruncPoly":
        fld = self.ring.field
        return TruncPoly(self.ring, (tuple(fld.neg(a) for a in row) for row in self.comps))

    def sub(self, other: "TruncPoly") -> "TruncPoly":
        return self.add(other.neg())

    def scale(self, coeff: TensorElt) -> "TruncPoly":
        fld = self.ring.field
        return TruncPoly(self.ring, (tuple(fld.mul(coeff.comps[i], a) for a in row)
                                     for i, row in enumerate(self.comps)))

    def mul(self, other: "TruncPoly") -> "TruncPoly":
        ring, fld = self.ring, self.ring.field
        out = [[0] * ring.ep for _ in range(ring.f)]
        for i in range(ring.f):
            row, orow, orow_out = self.comps[i], other.comps[i], out[i]
            for j, a in enumerate(row):
                if a:
                    top = ring.ep - j
                    for k in range(top):
                        b = orow[k]
                        if b:
                            orow_out[j + k] = fld.add(orow_out[j + k], fld.mul(a, b))
        return TruncPoly(ring, out)

    def shift_degrees(self, shifts: Sequence[int]) -> "TruncPoly":
        """Multiply slot i by u^{shifts[i]} (shifts may be any integers >= 0)."""
        ring = self.ring
        out = [[0] * ring.ep for _ in range(ring.f)]
        for i, row in enumerate(self.comps):
            s = shifts[i]
            for j, a in enumerate(row):
                if a and j + s < ring.ep:
                    out[i][j + s] = a
        return TruncPoly(ring, out)

    def is_zero(self) -> bool:
        return all(all(a == 0 for a in row) for row in self.comps)

    def support(self):
        """Sorted (slot, degree) pairs of the nonzero terms."""
        return tuple((i, j) for i, row in enumerate(self.comps)
                     for j, a in enumerate(row) if a)

    def __eq__(self, other):
        return isinstance(other, TruncPoly) and self.comps == other.comps and self.ring is other.ring

    def __hash__(self):
        return hash(self.comps)

    def __repr__(self):
        terms = [f"{a}*u^{j}*e{i}" for i, row in enumerate(self.comps)
                 for j, a in enumerate(row) if a]
        return "TruncPoly(" + (" + ".join(terms) if terms else "0") + ")"


def phi(x: TruncPoly) -> TruncPoly:
    """u -> u^p on each slot, slot i shifted to i+1; k_E-linear on coefficients."""
    ring = x.ring
    out = [[0] * ring.ep for _ in range(ring.f)]
    for i, row in enumerate(x.comps):
        dest = out[(i + 1) % ring.f]
        for j, a in enumerate(row):
            if a:
                jp = j * ring.p
                if jp < ring.ep:
                    dest[jp] = a
    return TruncPoly(ring, out)


def galois_act(zeta: int, w: Sequence[int], x: TruncPoly) -> TruncPoly:
    """Action of the inertia generator g with eta-bar(g) = zeta, twisted by u^w.

    Multiplies the degree-j term of slot i by sigma_i(zeta)^{w_i + j}.  The
    fixed points are exactly the elements whose slot-i terms have degree
    congruent to -w_i mod p^f - 1.
    """
    ring, fld = x.ring, x.ring.field
    if zeta == 0 or fld.order_of(zeta) != ring.ekl:
        raise DomainError(f"zeta must have exact order {ring.ekl}")
    out = []
    for i, row in enumerate(x.comps):
        zi = ring.sigma_image(zeta, i)
        powers = [fld.pow(zi, (w[i] + j) % ring.ekl) for j in range(ring.ep)]
        out.append(tuple(fld.mul(powers[j], a) if a else 0 for j, a in enumerate(row)))
    return TruncPoly(ring, out)
