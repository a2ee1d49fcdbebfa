"""Tame characters of inertia and their digit combinatorics.

A character of I_L valued in k_E^x is tame here and factors through the
cyclic quotient of order p^f - 1, so it is identified with its exponent
scalar: the character prod_i omega_i^{nu_i} of the fundamental characters
omega_i (normalised by omega_{i+1}^p = omega_i) is stored as

    scalar = sum_i nu_i * p^{f-i}  mod p^f - 1.

The canonical digit tuple (nu_0, ..., nu_{f-1}) with nu_i in [0, p-1] comes
from the representative of the scalar in [1, p^f - 1]; in particular the
trivial character has digits (p-1, ..., p-1).  The one exception is the
digit tuple of a trivial *quotient* in ``decompose``, which is all zeros.

A ``GaloisChar`` extends an ``InertialChar`` by an unramified part: the
value of the character on an arithmetic Frobenius, an element of k_E^x.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .errors import DomainError, RangeViolation
from .gf import Field


@dataclass(frozen=True)
class InertialChar:
    """Tame inertial character as an exponent scalar mod p^f - 1."""

    p: int
    f: int
    scalar: int

    def __post_init__(self):
        object.__setattr__(self, "scalar", self.scalar % self.modulus)

    @property
    def modulus(self) -> int:
        return self.p ** self.f - 1

    @property
    def is_trivial(self) -> bool:
        return self.scalar == 0

    def digits(self) -> Tuple[int, ...]:
        """Canonical digit tuple; the trivial character gives all p-1."""
        rep = self.scalar % self.modulus
        if rep == 0:
            rep = self.modulus
        t = []
        for _ in range(self.f):
            t.append(rep % self.p)
            rep //= self.p
        # scalar weights are p^{f-i}: nu_0 = t_0 and nu_i = t_{f-i} for i >= 1
        return tuple(t[0:1] + [t[self.f - i] for i in range(1, self.f)])

    def mul(self, other: "InertialChar") -> "InertialChar":
        self._check(other)
        return InertialChar(self.p, self.f, self.scalar + other.scalar)

    def inv(self) -> "InertialChar":
        return InertialChar(self.p, self.f, -self.scalar)

    def div(self, other: "InertialChar") -> "InertialChar":
        self._check(other)
        return InertialChar(self.p, self.f, self.scalar - other.scalar)

    def pow(self, k: int) -> "InertialChar":
        return InertialChar(self.p, self.f, self.scalar * k)

    def _check(self, other: "InertialChar"):
        if (self.p, self.f) != (other.p, other.f):
            raise DomainError("characters live over different (p, f)")

    def json_dict(self):
        return {"scalar": self.scalar}


def from_digits(p: int, f: int, digits) -> InertialChar:
    """prod_i omega_i^{digits[i]} as an InertialChar."""
    digits = tuple(digits)
    if len(digits) != f:
        raise RangeViolation(f"expected {f} digits")
    mod = p ** f - 1
    scalar = sum(d * pow(p, f - i, mod) for i, d in enumerate(digits)) % mod
    return InertialChar(p, f, scalar)


def omega(p: int, f: int, i: int) -> InertialChar:
    """The i-th fundamental character of niveau f."""
    mod = p ** f - 1
    return InertialChar(p, f, pow(p, f - (i % f), mod))


def cyclotomic_inertial(p: int, f: int, eprime: int) -> InertialChar:
    """Restriction of the mod-p cyclotomic character: prod_i omega_i^{e'}."""
    return InertialChar(p, f, eprime * ((p ** f - 1) // (p - 1)))


@dataclass(frozen=True)
class GaloisChar:
    """Inertial part plus the value on arithmetic Frobenius (in k_E^x)."""

    inertial: InertialChar
    unramified: int
    field: Field

    def __post_init__(self):
        if not 1 <= self.unramified < self.field.q:
            raise RangeViolation("unramified part must be a nonzero field element")

    @property
    def is_trivial(self) -> bool:
        return self.inertial.is_trivial and self.unramified == 1

    def mul(self, other: "GaloisChar") -> "GaloisChar":
        return GaloisChar(self.inertial.mul(other.inertial),
                          self.field.mul(self.unramified, other.unramified), self.field)

    def inv(self) -> "GaloisChar":
        return GaloisChar(self.inertial.inv(), self.field.inv(self.unramified), self.field)

    def div(self, other: "GaloisChar") -> "GaloisChar":
        return self.mul(other.inv())

    def json_dict(self):
        return {"scalar": self.inertial.scalar,
                "unramified_dlog": self.field.dlog(self.unramified)}


@dataclass(frozen=True)
class DigitDecomp:
    """Digit/carry data of a quotient lambda'/lambda.

    Satisfies nu'_i = delta_i + nu_i - p*gamma_{i-1} + gamma_i for all i
    (indices mod f), where nu, nu' are the canonical digits of lambda,
    lambda' and delta_i the digits of the quotient (all zero when the
    quotient is trivial).  C = {i : gamma_i = 1} is the carry set.
    """

    delta: int
    delta_digits: Tuple[int, ...]
    gamma: Tuple[int, ...]

    @property
    def carries(self) -> frozenset:
        return frozenset(i for i, g in enumerate(self.gamma) if g)


def decompose(lam: InertialChar, lam_prime: InertialChar) -> DigitDecomp:
    """Unique carry decomposition relating the digits of lambda and lambda'."""
    lam._check(lam_prime)
    p, f = lam.p, lam.f
    quot = lam_prime.div(lam)
    delta = quot.scalar
    delta_digits = (0,) * f if delta == 0 else quot.digits()
    nu, nu_p = lam.digits(), lam_prime.digits()
    found = None
    for mask in range(1 << f):
        gamma = tuple((mask >> i) & 1 for i in range(f))
        if all(nu_p[i] == delta_digits[i] + nu[i] - p * gamma[(i - 1) % f] + gamma[i]
               for i in range(f)):
            if found is not None:
                raise DomainError("carry decomposition is not unique (bug)")
            found = gamma
    if found is None:
        raise DomainError("no carry decomposition exists (bug)")
    return DigitDecomp(delta, delta_digits, found)


def bracket(p: int, f: int, delta: int, i: int) -> int:
    """The representative of p^i * delta in [0, p^f - 2]."""
    mod = p ** f - 1
    return (pow(p, i % f, mod) * delta) % mod
