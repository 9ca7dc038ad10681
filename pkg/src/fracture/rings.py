"""Coefficient ring descriptors for the corner categories.

Matrices are always exact rationals; the ring tag decides which entries
are integral, which integers are units, and what the homology values of
a mixed complex mean. The two product rings (profinite nub and finite
adeles) live at the container level, see finsupp.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .abgroups import prime_factors


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Ring:
    kind: str                      # "Z" | "Q" | "Zp" | "Qp" | "ZS"
    prime: int | None = None
    support: frozenset[int] | None = None

    def __post_init__(self):
        if self.kind in ("Zp", "Qp"):
            if self.prime is None or not _is_prime(self.prime):
                raise ValueError("local rings need a prime")
        elif self.kind == "ZS":
            if not self.support:
                raise ValueError("S-local integers need a nonempty support set")
            object.__setattr__(self, "support", frozenset(self.support))
            if any(not _is_prime(p) for p in self.support):
                raise ValueError("support must consist of primes")
        elif self.kind in ("Z", "Q"):
            if self.prime is not None or self.support is not None:
                raise ValueError(f"{self.kind} takes no parameters")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    # -- classification ------------------------------------------------------

    @property
    def is_field(self) -> bool:
        return self.kind in ("Q", "Qp")

    def integral_entry(self, x) -> bool:
        """Is x in the integral part of the ring?"""
        den = Fraction(x).denominator
        if self.kind == "Z":
            return den == 1
        if self.kind == "Zp":
            return den % self.prime != 0
        if self.kind == "ZS":
            for p in self.support:
                while den % p == 0:
                    den //= p
            return den == 1
        return True  # fields

    def unit_int(self, n: int) -> bool:
        """Is the nonzero integer n a unit?"""
        if n == 0:
            return False
        if self.is_field:
            return True
        if self.kind == "Z":
            return abs(n) == 1
        if self.kind == "Zp":
            return n % self.prime != 0
        return all(p in self.support for p in prime_factors(n))

    def nonunit_factor(self, d: int) -> int:
        """Invariant-factor content of the integer d over this ring."""
        d = abs(d)
        if d == 0:
            return 0
        if self.kind == "Z":
            return d
        if self.kind == "Zp":
            out = 1
            while d % self.prime == 0:
                d //= self.prime
                out *= self.prime
            return out
        if self.kind == "ZS":
            for p in self.support:
                while d % p == 0:
                    d //= p
            return d
        return 1

    @property
    def rationalized(self) -> "Ring":
        if self.kind in ("Z", "ZS", "Q"):
            return Q
        if self.kind in ("Zp", "Qp"):
            return Qp(self.prime)
        raise AssertionError

    def residue_field_primes(self) -> list[int] | None:
        """Primes with a residue field check; None means all primes off support."""
        if self.kind == "Zp":
            return [self.prime]
        if self.is_field:
            return []
        return None  # Z: every prime; ZS: every prime off S

    def allows_residue_prime(self, p: int) -> bool:
        if self.kind == "Z":
            return True
        if self.kind == "Zp":
            return p == self.prime
        if self.kind == "ZS":
            return p not in self.support
        return False

    def __str__(self):
        if self.kind == "Zp":
            return f"Z{self.prime}^"
        if self.kind == "Qp":
            return f"Q{self.prime}^"
        if self.kind == "ZS":
            return "Z[1/" + ",".join(str(p) for p in sorted(self.support)) + "]"
        return self.kind


Z = Ring("Z")
Q = Ring("Q")


def Zp(p: int) -> Ring:
    return Ring("Zp", prime=p)


def Qp(p: int) -> Ring:
    return Ring("Qp", prime=p)


def ZS(support) -> Ring:
    return Ring("ZS", support=frozenset(support))


class NoRingMorphism(ValueError):
    pass


def base_change_allowed(src: Ring, tgt: Ring) -> bool:
    """The declared scalar-extension arrows between corner rings."""
    if src == tgt:
        return True
    if src.kind == "Z":
        return tgt.kind in ("Q", "Zp", "Qp", "ZS")
    if src.kind == "ZS":
        if tgt.kind == "Q":
            return True
        if tgt.kind in ("Zp", "Qp"):
            return tgt.prime not in src.support
        if tgt.kind == "ZS":
            return tgt.support >= src.support
        return False
    if src.kind == "Zp":
        return tgt.kind == "Qp" and tgt.prime == src.prime
    if src.kind == "Q":
        return tgt.kind == "Qp"
    if src.kind == "Qp":
        return False
    return False


def restriction_allowed(outer: Ring, inner: Ring) -> bool:
    """Restriction of scalars used to run pullbacks in one local category.

    A pure-rational complex over the fraction field restricts to a mixed
    complex (with empty integral part) over the local ring.
    """
    if outer == inner:
        return True
    if outer.kind == "Qp":
        return inner.kind == "Zp" and inner.prime == outer.prime
    if outer.kind == "Q":
        return inner.kind in ("Z", "ZS", "Zp")
    return False
