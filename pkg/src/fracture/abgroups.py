"""Finitely generated abelian groups in invariant-factor normal form."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .matrices import Matrix, diagonal_of, smith_normal_form


@dataclass(frozen=True)
class FgAbGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and d_i >= 2."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        facs = tuple(self.invariant_factors)
        if any(d < 2 for d in facs):
            raise ValueError("invariant factors must be >= 2")
        for a, b in zip(facs, facs[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")
        object.__setattr__(self, "invariant_factors", facs)

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def is_torsion(self) -> bool:
        return self.free_rank == 0

    def torsion_primes(self) -> frozenset[int]:
        out = set()
        for d in self.invariant_factors:
            out |= set(prime_factors(d))
        return frozenset(out)

    def p_part_exponents(self, p: int) -> tuple[int, ...]:
        """Exponents e with Z/p^e summands, ascending, zeros dropped."""
        out = []
        for d in self.invariant_factors:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            if e:
                out.append(e)
        return tuple(sorted(out))

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


def prime_factors(n: int) -> list[int]:
    n = abs(n)
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
    return out


def fg_invariants(presentation: Matrix) -> FgAbGroup:
    """Cokernel of a relations-into-generators presentation.

    Rows are relations, columns are generators: the result is
    Z^cols / (row lattice), in invariant-factor normal form.
    """
    if not presentation.is_integral():
        raise ValueError("presentation matrix must be integral")
    _u, d, _v = smith_normal_form(presentation)
    diag = [x for x in diagonal_of(d) if x != 0]
    return FgAbGroup(
        free_rank=presentation.cols - len(diag),
        invariant_factors=tuple(x for x in diag if x > 1),
    )


def from_p_parts(free_rank: int, p_parts: dict[int, tuple[int, ...]]) -> FgAbGroup:
    """Assemble an FgAbGroup from per-prime exponent multisets.

    Aligns the largest exponents across primes so the factors come out
    in a divisibility chain.
    """
    depth = max((len(v) for v in p_parts.values()), default=0)
    factors = []
    for i in range(depth):
        d = 1
        for p, exps in p_parts.items():
            # pad ascending lists on the left so largest aligns with largest
            padded = (0,) * (depth - len(exps)) + tuple(exps)
            d *= p ** padded[i]
        if d > 1:
            factors.append(d)
    return FgAbGroup(free_rank=free_rank, invariant_factors=tuple(factors))


def merge_factor_lists(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Invariant factors of the direct sum of two groups given by factors."""
    parts: dict[int, list[int]] = {}
    for d in list(a) + list(b):
        for p in prime_factors(d):
            e = 0
            dd = d
            while dd % p == 0:
                dd //= p
                e += 1
            parts.setdefault(p, []).append(e)
    norm = {p: tuple(sorted(v)) for p, v in parts.items()}
    return from_p_parts(0, norm).invariant_factors
