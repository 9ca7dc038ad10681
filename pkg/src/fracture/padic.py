"""p-adic approximations with explicit precision tracking, and adele elements.

A PadicApprox is p^val * u where the unit part u is known modulo
p^precision. Elements of Z_p^ have val >= 0; negative offsets only occur
inside adele corrections, where denominators supported on S are allowed.
Precision is never silently dropped: cancellation in addition reduces the
recorded precision and raises once nothing is known anymore.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRECISION = 64


class PrecisionExhausted(ArithmeticError):
    pass


class NonUnitInversion(ArithmeticError):
    pass


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
class PadicApprox:
    prime: int
    precision: int          # relative precision of the unit part, >= 1
    residue: int            # unit part mod p^precision, 0 <= residue < p^precision
    exact: bool = False     # image of a known rational
    val: int = 0            # valuation offset; >= 0 for Z_p^ elements
    _zero: bool = False     # exact zero marker

    def __post_init__(self):
        if not _is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.precision < 1:
            raise PrecisionExhausted(f"precision reached {self.precision}")
        if not (0 <= self.residue < self.prime ** self.precision):
            raise ValueError("residue out of range")
        if not self._zero and self.residue % self.prime == 0 and self.residue != 0:
            raise ValueError("residue must be a unit part (not divisible by p)")
        if self._zero and self.residue != 0:
            raise ValueError("zero marker with nonzero residue")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(n: int, p: int, precision: int = DEFAULT_PRECISION) -> "PadicApprox":
        return PadicApprox.from_rational(Fraction(n), p, precision)

    @staticmethod
    def from_rational(x: Fraction, p: int, precision: int = DEFAULT_PRECISION) -> "PadicApprox":
        x = Fraction(x)
        if x == 0:
            return PadicApprox(p, precision, 0, exact=True, _zero=True)
        v = 0
        num, den = x.numerator, x.denominator
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        u = (num * pow(den, -1, p ** precision)) % p ** precision
        return PadicApprox(p, precision, u, exact=True, val=v)

    @staticmethod
    def from_residue(residue: int, p: int, precision: int = DEFAULT_PRECISION) -> "PadicApprox":
        """Interpret an integer residue mod p^precision, normalizing the unit part."""
        residue %= p ** precision
        if residue == 0:
            return PadicApprox(p, precision, 0, exact=False, _zero=True)
        v = 0
        while residue % p == 0:
            residue //= p
            v += 1
        if precision - v < 1:
            raise PrecisionExhausted("all known digits lost in normalization")
        return PadicApprox(p, precision - v, residue % p ** (precision - v), exact=False, val=v)

    # -- views -------------------------------------------------------------

    def is_zero(self) -> bool:
        return self._zero

    @property
    def absolute_precision(self) -> int:
        return self.precision if self._zero else self.val + self.precision

    def absolute_residue(self) -> int:
        """Value modulo p^absolute_precision, for val >= 0 elements."""
        if self._zero:
            return 0
        if self.val < 0:
            raise ValueError("element has a pole; no integral residue")
        return (self.residue * self.prime ** self.val) % self.prime ** self.absolute_precision

    def valuation(self) -> int | None:
        return None if self._zero else self.val

    def __str__(self):
        if self._zero:
            return f"O({self.prime}^{self.precision})"
        return f"{self.absolute_residue() if self.val >= 0 else f'{self.prime}^{self.val}*{self.residue}'} mod {self.prime}^{self.absolute_precision}"

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "PadicApprox"):
        if self.prime != other.prime:
            raise ValueError("mixed primes in p-adic arithmetic")

    def _cap_absolute(self, abs_prec: int) -> "PadicApprox":
        """Forget digits beyond absolute precision abs_prec."""
        p = self.prime
        if self._zero:
            return PadicApprox(p, min(self.precision, abs_prec), 0, exact=self.exact, _zero=True)
        rel = abs_prec - self.val
        if rel < 1:
            # the whole value is below the retained precision
            if abs_prec < 1:
                raise PrecisionExhausted("no digits retained")
            return PadicApprox(p, abs_prec, 0, exact=False, _zero=True)
        return self.truncate(rel)

    def add(self, other: "PadicApprox") -> "PadicApprox":
        self._check(other)
        p = self.prime
        if self._zero:
            return other if self.exact else other._cap_absolute(self.precision)
        if other._zero:
            return self if other.exact else self._cap_absolute(other.precision)
        lo = min(self.val, other.val)
        abs_prec = min(self.absolute_precision, other.absolute_precision)
        if abs_prec - lo < 1:
            raise PrecisionExhausted("addition lost all known digits")
        mod = p ** (abs_prec - lo)
        total = (self.residue * p ** (self.val - lo) + other.residue * p ** (other.val - lo)) % mod
        if total == 0:
            if self.exact and other.exact:
                return PadicApprox(p, max(self.absolute_precision, other.absolute_precision), 0, exact=True, _zero=True)
            # zero marker: precision records the absolute window
            return PadicApprox(p, abs_prec, 0, exact=False, _zero=True)
        v = 0
        while total % p == 0:
            total //= p
            v += 1
        rel = abs_prec - lo - v
        if rel < 1:
            raise PrecisionExhausted("cancellation exhausted the precision")
        return PadicApprox(p, rel, total % p ** rel, exact=self.exact and other.exact, val=lo + v)

    def neg(self) -> "PadicApprox":
        if self._zero:
            return self
        m = self.prime ** self.precision
        return PadicApprox(self.prime, self.precision, (-self.residue) % m, exact=self.exact, val=self.val)

    def mul(self, other: "PadicApprox") -> "PadicApprox":
        self._check(other)
        p = self.prime
        if self._zero or other._zero:
            prec = min(self.precision, other.precision)
            return PadicApprox(p, prec, 0, exact=self.exact and other.exact, _zero=True)
        rel = min(self.precision, other.precision)
        mod = p ** rel
        return PadicApprox(p, rel, (self.residue * other.residue) % mod,
                           exact=self.exact and other.exact, val=self.val + other.val)

    def inv(self) -> "PadicApprox":
        if self._zero:
            raise NonUnitInversion("cannot invert zero")
        if self.val != 0:
            raise NonUnitInversion(f"element has valuation {self.val}, not a unit")
        mod = self.prime ** self.precision
        return PadicApprox(self.prime, self.precision, pow(self.residue, -1, mod), exact=self.exact)

    def scale_rational(self, c: Fraction) -> "PadicApprox":
        return self.mul(PadicApprox.from_rational(Fraction(c), self.prime, self.precision))

    def truncate(self, precision: int) -> "PadicApprox":
        if precision >= self.precision:
            return self
        if precision < 1:
            raise PrecisionExhausted("truncation below one digit")
        if self._zero:
            return PadicApprox(self.prime, precision, 0, exact=self.exact, _zero=True)
        return PadicApprox(self.prime, precision, self.residue % self.prime ** precision,
                           exact=self.exact, val=self.val)

    def agrees_with(self, other: "PadicApprox") -> bool:
        """Consistency to the shared absolute precision."""
        self._check(other)
        p = self.prime
        m = min(self.absolute_precision, other.absolute_precision)
        shift = 0
        for x in (self, other):
            if not x._zero:
                shift = min(shift, x.val)
        mod = p ** (m - shift)

        def lifted(x: "PadicApprox") -> int:
            if x._zero:
                return 0
            return (x.residue * p ** (x.val - shift)) % mod

        return lifted(self) == lifted(other)


def padic_op(a: PadicApprox, b: PadicApprox | None, op: str) -> PadicApprox:
    """Dispatch add/mul/inv with the shared-prime precondition."""
    if op == "add":
        assert b is not None
        return a.add(b)
    if op == "mul":
        assert b is not None
        return a.mul(b)
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown p-adic operation {op!r}")


# ---------------------------------------------------------------------------
# Adeles with finite support
# ---------------------------------------------------------------------------

def _den_primes_in(x: Fraction, support: frozenset[int]) -> bool:
    den = Fraction(x).denominator
    for p in sorted(support):
        while den % p == 0:
            den //= p
    return den == 1


@dataclass(frozen=True)
class AdeleElement:
    """Finite adele: rational template plus per-prime corrections on S.

    The component at p in S is rational_part + corrections[p]; at primes
    off S it is the rational part itself, which is integral there because
    the denominator is supported in S.
    """

    support: frozenset[int]
    rational_part: Fraction
    corrections: dict[int, PadicApprox]

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(self.support))
        object.__setattr__(self, "rational_part", Fraction(self.rational_part))
        if set(self.corrections) != set(self.support):
            raise ValueError("corrections must be keyed exactly by the support set")
        if not _den_primes_in(self.rational_part, self.support):
            raise ValueError("rational part has denominator primes outside the support")
        for p, c in self.corrections.items():
            if c.prime != p:
                raise ValueError("correction prime mismatch")

    @staticmethod
    def from_rational(x: Fraction, support, precision: int = DEFAULT_PRECISION) -> "AdeleElement":
        support = frozenset(support)
        x = Fraction(x)
        zero = {p: PadicApprox.from_rational(Fraction(0), p, precision) for p in support}
        return AdeleElement(support, x, zero)

    def component(self, p: int) -> PadicApprox:
        if p in self.support:
            base = PadicApprox.from_rational(self.rational_part, p, self.corrections[p].precision)
            return base.add(self.corrections[p])
        prec = min((c.precision for c in self.corrections.values()), default=DEFAULT_PRECISION)
        return PadicApprox.from_rational(self.rational_part, p, prec)

    def _align(self, other: "AdeleElement") -> frozenset[int]:
        if self.support != other.support:
            raise ValueError("adele supports differ; enlarge to a common support first")
        return self.support

    def enlarge(self, support) -> "AdeleElement":
        support = frozenset(support)
        if not support >= self.support:
            raise ValueError("support can only grow")
        corr = dict(self.corrections)
        for p in support - self.support:
            corr[p] = PadicApprox.from_rational(Fraction(0), p, DEFAULT_PRECISION)
        return AdeleElement(support, self.rational_part, corr)

    def add(self, other: "AdeleElement") -> "AdeleElement":
        s = self._align(other)
        corr = {p: self.corrections[p].add(other.corrections[p]) for p in s}
        return AdeleElement(s, self.rational_part + other.rational_part, corr)

    def mul(self, other: "AdeleElement") -> "AdeleElement":
        s = self._align(other)
        corr = {}
        for p in s:
            c1, c2 = self.corrections[p], other.corrections[p]
            term = c1.scale_rational(other.rational_part)
            term = term.add(c2.scale_rational(self.rational_part))
            term = term.add(c1.mul(c2))
            corr[p] = term
        return AdeleElement(s, self.rational_part * other.rational_part, corr)

    def agrees_with(self, other: "AdeleElement") -> bool:
        """Exact parts compared exactly, corrections to shared precision."""
        if self.support != other.support or self.rational_part != other.rational_part:
            return False
        return all(self.corrections[p].agrees_with(other.corrections[p]) for p in self.support)
