"""Seeded random generators for property checks and demo runs.

Complexes are built top degree down: each differential is drawn from the
saturated left-kernel lattice of the one above it, so d*d = 0 holds exactly
and entries stay small.
"""

from __future__ import annotations

import random

from .complexes import ChainComplex, ChainMap, shift
from .matrices import Matrix, left_kernel_basis, saturate
from .rings import Z


def random_perfect_complex(rng: random.Random, max_rank: int = 3, top_degree: int = 3,
                           max_entry: int = 3) -> ChainComplex:
    lo = 0
    hi = rng.randint(lo, top_degree)
    ranks = {n: rng.randint(0, max_rank) for n in range(lo, hi + 1)}
    if all(r == 0 for r in ranks.values()):
        ranks[lo] = 1
    diffs: dict[int, Matrix] = {}
    above: Matrix | None = None
    for n in range(hi, lo, -1):
        rows, cols = ranks[n - 1], ranks[n]
        if rows == 0 or cols == 0:
            above = None
            continue
        if above is None or above.is_zero():
            m = Matrix(rows, cols, [[rng.randint(-max_entry, max_entry) for _ in range(cols)] for _ in range(rows)])
        else:
            lk = saturate(left_kernel_basis(above).transpose()).transpose()
            coeff = Matrix(rows, lk.rows, [[rng.randint(-1, 1) for _ in range(lk.rows)] for _ in range(rows)])
            m = coeff * lk
        diffs[n] = m
        above = m
    return ChainComplex.pure(Z, ranks, {n: m for n, m in diffs.items() if not m.is_zero()})


def random_homotopy(rng: random.Random, x: ChainComplex, y: ChainComplex, max_entry: int = 2):
    """Random degree +1 block maps h_n : X_n -> Y_{n+1}."""
    h = {}
    for n in x.degrees():
        rows, cols = y.dim(n + 1), x.dim(n)
        if rows and cols:
            h[n] = Matrix(rows, cols, [[rng.randint(-max_entry, max_entry) for _ in range(cols)] for _ in range(rows)])
    return h


def null_homotopic_map(rng: random.Random, x: ChainComplex, y: ChainComplex) -> ChainMap:
    """d h + h d for a random h; a chain map by construction."""
    h = {n: m for n, m in random_homotopy(rng, x, y).items()}

    def h_at(n):
        m = h.get(n)
        return m if m is not None else Matrix.zero(y.dim(n + 1), x.dim(n))

    mats = {}
    for n in set(x.degrees()) | set(y.degrees()):
        mats[n] = y.diff(n + 1) * h_at(n) + h_at(n - 1) * x.diff(n)
    return ChainMap(x, y, mats)


def random_chain_map(rng: random.Random) -> ChainMap:
    x = random_perfect_complex(rng)
    if rng.random() < 0.5:
        f = null_homotopic_map(rng, x, x)
        c = rng.randint(-3, 3)
        scaled = {n: Matrix.identity(x.dim(n)).scale(c) for n in x.degrees()}
        mats = {n: f.mat(n) + scaled[n] for n in x.degrees()}
        return ChainMap(x, x, mats)
    y = random_perfect_complex(rng)
    if rng.random() < 0.3:
        y = shift(x, rng.randint(0, 1))
    return null_homotopic_map(rng, x, y)
