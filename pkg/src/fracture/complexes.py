"""Bounded chain complexes of free modules over localizations of Z.

Each degree carries a pair (integral rank, rationalized rank): the module
R^a + Q^b over the integral part R of the ring. Maps respect the filtration,
so the block from rationalized generators into integral ones is forced to
vanish. Pure complexes have one of the two ranks zero everywhere.

Homology of such a complex lands in the closed value class
    R^free + sum R/d_i + Q^rat + (Q/R)^div
which over the p-local ring reads  ZpHat^free + sum Z/p^e + QpHat^rat +
Prufer^div. All computations are exact (Fractions + integer Smith forms).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .abgroups import FgAbGroup
from .matrices import (
    Matrix,
    diagonal_of,
    invert,
    kernel_basis,
    left_kernel_basis,
    rank,
    rref,
    saturate,
    smith_normal_form,
    solve,
)
from .rings import NoRingMorphism, Q, Ring, base_change_allowed, restriction_allowed


# ---------------------------------------------------------------------------
# homology values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalValue:
    """Homology of a mixed complex in one degree."""

    free_rank: int = 0
    factors: tuple[int, ...] = ()
    rat_rank: int = 0
    div_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def is_zero(self) -> bool:
        return self == LocalValue()

    @property
    def rationalized_dim(self) -> int:
        return self.free_rank + self.rat_rank

    def to_fg(self) -> FgAbGroup:
        if self.rat_rank or self.div_rank:
            raise ValueError("value is not finitely generated over the integers")
        return FgAbGroup(self.free_rank, tuple(self.factors))

    def render(self, ring: Ring) -> str:
        free, rat, div = {
            "Z": ("Z", "Q", "Q/Z"),
            "ZS": (str(ring), "Q", f"Q/{ring}"),
            "Zp": ("ZpHat", "QpHat", "Z/p^inf"),
            "Q": ("", "Q", ""),
            "Qp": ("", "QpHat", ""),
        }[ring.kind]
        parts = []
        if self.free_rank:
            parts.append(free if self.free_rank == 1 else f"{free}^{self.free_rank}")
        for d in self.factors:
            parts.append(f"Z/{d}")
        if self.rat_rank:
            parts.append(rat if self.rat_rank == 1 else f"{rat}^{self.rat_rank}")
        if self.div_rank:
            parts.append(div if self.div_rank == 1 else f"{div}^{self.div_rank}")
        return " + ".join(parts) if parts else "0"


def graded_is_zero(h: Mapping[int, LocalValue]) -> bool:
    return all(v.is_zero() for v in h.values())


# ---------------------------------------------------------------------------
# the complex type
# ---------------------------------------------------------------------------

class ChainComplex:
    """Immutable bounded complex; construction checks d*d = 0 exactly."""

    __slots__ = ("ring", "_ranks", "_diffs")

    def __init__(self, ring: Ring, ranks: Mapping[int, tuple[int, int]], diffs: Mapping[int, Matrix]):
        self.ring = ring
        norm: dict[int, tuple[int, int]] = {}
        for n, pair in ranks.items():
            a, b = (pair, 0) if isinstance(pair, int) else tuple(pair)
            if a < 0 or b < 0:
                raise ValueError("ranks must be nonnegative")
            if ring.is_field and a:
                raise ValueError("field coefficients carry no integral part")
            if a or b:
                norm[int(n)] = (a, b)
        self._ranks = norm
        kept: dict[int, Matrix] = {}
        for n, m in diffs.items():
            n = int(n)
            if self.dim(n) == 0 or self.dim(n - 1) == 0:
                if not m.is_zero():
                    raise ValueError(f"differential at degree {n} maps between zero modules")
                continue
            if (m.rows, m.cols) != (self.dim(n - 1), self.dim(n)):
                raise ValueError(f"differential at degree {n} has the wrong shape")
            _check_mixed_blocks(ring, m, self.rank_pair(n - 1), self.rank_pair(n))
            if not m.is_zero():
                kept[n] = m
        self._diffs = kept
        for n in kept:
            if self.dim(n + 1) and n + 1 in kept:
                if not (kept[n] * kept[n + 1]).is_zero():
                    raise ValueError(f"d o d != 0 at degree {n + 1}")

    # -- shape ---------------------------------------------------------------

    def degrees(self) -> list[int]:
        return sorted(self._ranks)

    def rank_pair(self, n: int) -> tuple[int, int]:
        return self._ranks.get(n, (0, 0))

    def dim(self, n: int) -> int:
        a, b = self.rank_pair(n)
        return a + b

    def ranks(self) -> dict[int, tuple[int, int]]:
        return dict(self._ranks)

    def diff(self, n: int) -> Matrix:
        m = self._diffs.get(n)
        if m is None:
            return Matrix.zero(self.dim(n - 1), self.dim(n))
        return m

    def diffs(self) -> dict[int, Matrix]:
        return dict(self._diffs)

    def is_zero_complex(self) -> bool:
        return not self._ranks

    def is_pure_integral(self) -> bool:
        return all(b == 0 for _a, b in self._ranks.values())

    def is_pure_rational(self) -> bool:
        return all(a == 0 for a, _b in self._ranks.values())

    def __eq__(self, other):
        return (
            isinstance(other, ChainComplex)
            and self.ring == other.ring
            and self._ranks == other._ranks
            and self._diffs == other._diffs
        )

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self._ranks.items())), tuple(sorted(self._diffs.items()))))

    def __repr__(self):
        return f"ChainComplex({self.ring}, ranks={self._ranks})"

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def zero(ring: Ring) -> "ChainComplex":
        return ChainComplex(ring, {}, {})

    @staticmethod
    def pure(ring: Ring, ranks: Mapping[int, int], diffs: Mapping[int, Matrix]) -> "ChainComplex":
        if ring.is_field:
            shaped = {n: (0, r) for n, r in ranks.items()}
        else:
            shaped = {n: (r, 0) for n, r in ranks.items()}
        return ChainComplex(ring, shaped, diffs)

    @staticmethod
    def free_module(ring: Ring, rank_: int = 1, degree: int = 0) -> "ChainComplex":
        return ChainComplex.pure(ring, {degree: rank_}, {})


def _check_mixed_blocks(ring: Ring, m: Matrix, tgt: tuple[int, int], src: tuple[int, int]):
    at, _bt = tgt
    asrc, bsrc = src
    for i in range(at):
        for j in range(asrc, asrc + bsrc):
            if m[i, j] != 0:
                raise ValueError("rationalized generators cannot hit integral ones")
    for i in range(at):
        for j in range(asrc):
            if not ring.integral_entry(m[i, j]):
                raise ValueError(f"entry {m[i, j]} is not integral over {ring}")


# ---------------------------------------------------------------------------
# chain maps
# ---------------------------------------------------------------------------

class ChainMap:
    __slots__ = ("source", "target", "_mats")

    def __init__(self, source: ChainComplex, target: ChainComplex, mats: Mapping[int, Matrix]):
        if source.ring != target.ring:
            raise ValueError("chain maps require a common coefficient ring")
        self.source = source
        self.target = target
        kept: dict[int, Matrix] = {}
        for n, m in mats.items():
            n = int(n)
            if (m.rows, m.cols) != (target.dim(n), source.dim(n)):
                raise ValueError(f"component at degree {n} has the wrong shape")
            _check_mixed_blocks(source.ring, m, target.rank_pair(n), source.rank_pair(n))
            if not m.is_zero():
                kept[n] = m
        self._mats = kept
        lo = min(source.degrees() + target.degrees(), default=0)
        hi = max(source.degrees() + target.degrees(), default=0)
        for n in range(lo, hi + 1):
            lhs = target.diff(n) * self.mat(n)
            rhs = self.mat(n - 1) * source.diff(n)
            if lhs != rhs:
                raise ValueError(f"square at degree {n} does not commute")

    def mat(self, n: int) -> Matrix:
        m = self._mats.get(n)
        if m is None:
            return Matrix.zero(self.target.dim(n), self.source.dim(n))
        return m

    def mats(self) -> dict[int, Matrix]:
        return dict(self._mats)

    def __eq__(self, other):
        return (
            isinstance(other, ChainMap)
            and self.source == other.source
            and self.target == other.target
            and self._mats == other._mats
        )

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"

    @staticmethod
    def identity(c: ChainComplex) -> "ChainMap":
        return ChainMap(c, c, {n: Matrix.identity(c.dim(n)) for n in c.degrees()})

    @staticmethod
    def zero_map(source: ChainComplex, target: ChainComplex) -> "ChainMap":
        return ChainMap(source, target, {})

    def compose(self, first: "ChainMap") -> "ChainMap":
        """self o first."""
        if first.target != self.source:
            raise ValueError("composition mismatch")
        degs = set(first._mats) | set(self._mats)
        return ChainMap(first.source, self.target, {n: self.mat(n) * first.mat(n) for n in degs})

    def is_degreewise_iso(self) -> bool:
        degs = set(self.source.degrees()) | set(self.target.degrees())
        return all(_mixed_is_iso(self.source.ring, self.mat(n), self.target.rank_pair(n), self.source.rank_pair(n)) for n in degs)

    def inverse(self) -> "ChainMap":
        mats = {}
        for n in set(self.source.degrees()) | set(self.target.degrees()):
            if self.source.dim(n):
                mats[n] = invert(self.mat(n))
        return ChainMap(self.target, self.source, mats)


def _mixed_is_iso(ring: Ring, m: Matrix, tgt: tuple[int, int], src: tuple[int, int]) -> bool:
    if (tgt[0] + tgt[1]) != (src[0] + src[1]) or tgt[0] != src[0]:
        return False
    if tgt[0] + tgt[1] == 0:
        return True
    a = tgt[0]
    u = m.submatrix(range(a), range(a))
    t = m.submatrix(range(a, m.rows), range(a, m.cols))
    if a:
        den = u.denominator_lcm()
        from .matrices import _int_det  # exact determinant

        det_num = _int_det(u.scale(den))
        if det_num == 0:
            return False
        if not (ring.unit_int(det_num) and ring.unit_int(den ** u.rows)):
            return False
    return t.rows == 0 or rank(t) == t.rows


# ---------------------------------------------------------------------------
# block assembly
# ---------------------------------------------------------------------------

def _offsets(pieces: Sequence[tuple[int, int]]):
    total_int = sum(a for a, _ in pieces)
    int_off, rat_off = [], []
    ai = 0
    bi = total_int
    for a, b in pieces:
        int_off.append(ai)
        rat_off.append(bi)
        ai += a
        bi += b
    return int_off, rat_off


def mixed_assemble(tgt_pieces, src_pieces, blocks: Mapping[tuple[int, int], Matrix]) -> Matrix:
    """Assemble a map between direct sums of mixed modules.

    blocks[(i, j)] is the full matrix from source piece j to target piece i
    in each piece's own (integral first) layout; the result is laid out with
    all integral generators first.
    """
    rows = sum(a + b for a, b in tgt_pieces)
    cols = sum(a + b for a, b in src_pieces)
    t_int, t_rat = _offsets(tgt_pieces)
    s_int, s_rat = _offsets(src_pieces)
    grid = [[0] * cols for _ in range(rows)]
    for (i, j), m in blocks.items():
        at, bt = tgt_pieces[i]
        asrc, bsrc = src_pieces[j]
        if (m.rows, m.cols) != (at + bt, asrc + bsrc):
            raise ValueError("block has the wrong shape")
        for r in range(at + bt):
            gr = t_int[i] + r if r < at else t_rat[i] + (r - at)
            for c in range(asrc + bsrc):
                gc = s_int[j] + c if c < asrc else s_rat[j] + (c - asrc)
                grid[gr][gc] = m[r, c]
    return Matrix(rows, cols, grid)


def sum_pair(p: tuple[int, int], q: tuple[int, int]) -> tuple[int, int]:
    return (p[0] + q[0], p[1] + q[1])


def direct_sum(*cs: ChainComplex) -> ChainComplex:
    if not cs:
        raise ValueError("empty direct sum needs a ring")
    ring = cs[0].ring
    if any(c.ring != ring for c in cs):
        raise ValueError("summands over different rings")
    degs = sorted({n for c in cs for n in c.degrees()})
    ranks = {n: (sum(c.rank_pair(n)[0] for c in cs), sum(c.rank_pair(n)[1] for c in cs)) for n in degs}
    diffs = {}
    for n in degs:
        tgt = [c.rank_pair(n - 1) for c in cs]
        src = [c.rank_pair(n) for c in cs]
        diffs[n] = mixed_assemble(tgt, src, {(i, i): cs[i].diff(n) for i in range(len(cs))})
    return ChainComplex(ring, ranks, diffs)


def summand_inclusion(cs: Sequence[ChainComplex], which: int) -> ChainMap:
    total = direct_sum(*cs)
    mats = {}
    for n in total.degrees():
        tgt = [total.rank_pair(n)]
        src = [cs[which].rank_pair(n)]
        # place an identity into the right sub-block by assembling through pieces
        pieces = [c.rank_pair(n) for c in cs]
        blk = mixed_assemble(pieces, [cs[which].rank_pair(n)], {(which, 0): Matrix.identity(cs[which].dim(n))})
        mats[n] = blk
        del tgt, src
    return ChainMap(cs[which], total, mats)


def shift(c: ChainComplex, k: int) -> ChainComplex:
    """Suspension: (shift(C, k))_n = C_{n-k}, differentials pick up (-1)^k."""
    sign = -1 if k % 2 else 1
    ranks = {n + k: pair for n, pair in c.ranks().items()}
    diffs = {n + k: (m if sign == 1 else m.scale(-1)) for n, m in c.diffs().items()}
    return ChainComplex(c.ring, ranks, diffs)


# ---------------------------------------------------------------------------
# base change and restriction
# ---------------------------------------------------------------------------

def rationalized(c: ChainComplex) -> ChainComplex:
    """Extension of scalars to the fraction field; matrices are unchanged."""
    tgt = c.ring.rationalized
    ranks = {n: (0, a + b) for n, (a, b) in c.ranks().items()}
    return ChainComplex(tgt, ranks, c.diffs())


def base_change(c: ChainComplex, ring2: Ring) -> ChainComplex:
    if not base_change_allowed(c.ring, ring2):
        raise NoRingMorphism(f"no declared morphism {c.ring} -> {ring2}")
    if ring2.is_field:
        out = rationalized(c)
        return ChainComplex(ring2, out.ranks(), out.diffs())
    return ChainComplex(ring2, c.ranks(), c.diffs())


def restrict(c: ChainComplex, inner: Ring) -> ChainComplex:
    """Restriction of scalars of a rationalized complex into a local pair."""
    if not restriction_allowed(c.ring, inner):
        raise NoRingMorphism(f"no declared restriction {c.ring} -> {inner}")
    if c.ring == inner:
        return c
    return ChainComplex(inner, {n: (0, c.dim(n)) for n in c.degrees()}, c.diffs())


def integral_part(c: ChainComplex) -> ChainComplex:
    """The subcomplex of integral generators; models derived completion."""
    ranks = {n: (a, 0) for n, (a, _b) in c.ranks().items()}
    diffs = {}
    for n in c.degrees():
        at = c.rank_pair(n - 1)[0]
        asrc = c.rank_pair(n)[0]
        diffs[n] = c.diff(n).submatrix(range(at), range(asrc))
    return ChainComplex(c.ring, ranks, diffs)


def integral_projection(c: ChainComplex) -> ChainMap:
    """The completion unit C -> integral_part(C): kill rationalized generators."""
    tgt = integral_part(c)
    mats = {}
    for n in c.degrees():
        a, b = c.rank_pair(n)
        mats[n] = Matrix.identity(a).hstack(Matrix.zero(a, b))
    return ChainMap(c, tgt, mats)


# ---------------------------------------------------------------------------
# cones, pullbacks, totalization
# ---------------------------------------------------------------------------

def cone(f: ChainMap) -> ChainComplex:
    """Mapping cone: cone(f)_n = X_{n-1} + Y_n, d(x, y) = (-dx, dy - fx)."""
    x, y = f.source, f.target
    degs = sorted({n for n in set(d + 1 for d in x.degrees()) | set(y.degrees())})
    ranks = {n: sum_pair(x.rank_pair(n - 1), y.rank_pair(n)) for n in degs}
    diffs = {}
    for n in degs:
        tgt = [x.rank_pair(n - 2), y.rank_pair(n - 1)]
        src = [x.rank_pair(n - 1), y.rank_pair(n)]
        diffs[n] = mixed_assemble(tgt, src, {
            (0, 0): x.diff(n - 1).scale(-1),
            (1, 0): f.mat(n - 1).scale(-1),
            (1, 1): y.diff(n),
        })
    return ChainComplex(x.ring, ranks, diffs)


def cone_inclusion(f: ChainMap) -> ChainMap:
    """The canonical map target -> cone(f)."""
    c = cone(f)
    x, y = f.source, f.target
    mats = {}
    for n in c.degrees():
        pieces = [x.rank_pair(n - 1), y.rank_pair(n)]
        mats[n] = mixed_assemble(pieces, [y.rank_pair(n)], {(1, 0): Matrix.identity(y.dim(n))})
    return ChainMap(y, c, mats)


@dataclass
class Pullback:
    complex: ChainComplex
    to_left: ChainMap
    to_right: ChainMap
    strict: bool


def homotopy_pullback(f: ChainMap, g: ChainMap) -> Pullback:
    """Homotopy pullback of  A --f--> C <--g-- B.

    When one leg is a degreewise isomorphism the strict pullback along its
    inverse is returned (and it is literally the other corner); otherwise
    the shifted cone with projections.
    """
    if f.target != g.target:
        raise ValueError("pullback legs must share a target")
    a, b, c = f.source, g.source, f.target
    if g.is_degreewise_iso():
        back = g.inverse().compose(f)
        return Pullback(a, ChainMap.identity(a), back, strict=True)
    if f.is_degreewise_iso():
        back = f.inverse().compose(g)
        return Pullback(b, back, ChainMap.identity(b), strict=True)
    degs = sorted(set(a.degrees()) | set(b.degrees()) | {n - 1 for n in c.degrees()})
    ranks = {n: sum_pair(sum_pair(a.rank_pair(n), b.rank_pair(n)), c.rank_pair(n + 1)) for n in degs}
    diffs = {}
    for n in degs:
        tgt = [a.rank_pair(n - 1), b.rank_pair(n - 1), c.rank_pair(n)]
        src = [a.rank_pair(n), b.rank_pair(n), c.rank_pair(n + 1)]
        diffs[n] = mixed_assemble(tgt, src, {
            (0, 0): a.diff(n),
            (1, 1): b.diff(n),
            (2, 0): f.mat(n),
            (2, 1): g.mat(n).scale(-1),
            (2, 2): c.diff(n + 1).scale(-1),
        })
    p = ChainComplex(a.ring, ranks, diffs)
    pa = {}
    pb = {}
    for n in degs:
        pieces = [a.rank_pair(n), b.rank_pair(n), c.rank_pair(n + 1)]
        pa[n] = mixed_assemble([a.rank_pair(n)], pieces, {(0, 0): Matrix.identity(a.dim(n))})
        pb[n] = mixed_assemble([b.rank_pair(n)], pieces, {(0, 1): Matrix.identity(b.dim(n))})
    return Pullback(p, ChainMap(p, a, pa), ChainMap(p, b, pb), strict=False)


def square_total(top: ChainMap, left: ChainMap, right: ChainMap, bottom: ChainMap,
                 homotopy: Mapping[int, Matrix] | None = None) -> ChainComplex:
    """Total complex of a commuting square

        X --top--> V
        |          |
      left       right
        v          v
        N -bottom-> Q

    acyclic exactly when the square is a homotopy pullback. A homotopy
    witness h with dh + hd = bottom*left - right*top is folded in.
    """
    if top.source != left.source or top.target != right.source:
        raise ValueError("square corners are inconsistent")
    if left.target != bottom.source or right.target != bottom.target:
        raise ValueError("square corners are inconsistent")
    x = top.source
    q = bottom.target
    ct = cone(top)      # X[1] + V
    cb = cone(bottom)   # N[1] + Q
    mats = {}
    witness = dict(homotopy or {})
    for n in set(ct.degrees()) | set(cb.degrees()):
        tgt = [bottom.source.rank_pair(n - 1), q.rank_pair(n)]
        src = [x.rank_pair(n - 1), top.target.rank_pair(n)]
        blocks = {(0, 0): left.mat(n - 1), (1, 1): right.mat(n)}
        if n - 1 in witness:
            h = witness[n - 1]
            if (h.rows, h.cols) != (q.dim(n), x.dim(n - 1)):
                raise ValueError("homotopy witness has the wrong shape")
            blocks[(1, 0)] = h
        mats[n] = mixed_assemble(tgt, src, blocks)
    chi = ChainMap(ct, cb, mats)  # raises if the square does not commute
    return cone(chi)


# ---------------------------------------------------------------------------
# mixed kernels, cokernels, homology
# ---------------------------------------------------------------------------

def mixed_kernel(ring: Ring, m: Matrix, tgt: tuple[int, int], src: tuple[int, int]):
    """Kernel of a mixed map, as (shape, basis matrix into the source).

    The integral part of the basis is a saturated lattice basis, so
    coordinates of kernel lattice points in it are integral.
    """
    asrc, bsrc = src
    at, bt = tgt
    a_blk = m.submatrix(range(at), range(asrc))
    c_blk = m.submatrix(range(at, at + bt), range(asrc))
    d_blk = m.submatrix(range(at, at + bt), range(asrc, asrc + bsrc))
    lk = left_kernel_basis(d_blk)            # rows spanning coker of D
    cond = a_blk.vstack(lk * c_blk) if lk.rows else a_blk
    kq = kernel_basis(cond)                  # rational kernel in the integral coordinates
    k_int = saturate(kq)                     # saturated integral basis
    cols = []
    for j in range(k_int.cols):
        x = k_int.submatrix(range(asrc), [j])
        y = solve(d_blk, (c_blk * x).scale(-1))
        assert y is not None, "kernel condition guarantees solvability"
        cols.append((x, y))
    k_rat = kernel_basis(d_blk)
    kappa, kappa_rat = len(cols), k_rat.cols
    grid = [[0] * (kappa + kappa_rat) for _ in range(asrc + bsrc)]
    for j, (x, y) in enumerate(cols):
        for i in range(asrc):
            grid[i][j] = x[i, 0]
        for i in range(bsrc):
            grid[asrc + i][j] = y[i, 0]
    for j in range(kappa_rat):
        for i in range(bsrc):
            grid[asrc + i][kappa + j] = k_rat[i, j]
    return (kappa, kappa_rat), Matrix(asrc + bsrc, kappa + kappa_rat, grid)


def mixed_cokernel_value(ring: Ring, m: Matrix, tgt: tuple[int, int], src: tuple[int, int]) -> LocalValue:
    """Invariants of coker(m) for a mixed map, in the closed value class."""
    at, bt = tgt
    asrc, bsrc = src
    a_blk = m.submatrix(range(at), range(asrc))
    c_blk = m.submatrix(range(at, at + bt), range(asrc))
    d_blk = m.submatrix(range(at, at + bt), range(asrc, asrc + bsrc))
    r = rank(d_blk)
    lk = left_kernel_basis(d_blk)
    c2 = lk * c_blk if lk.rows else Matrix.zero(0, asrc)
    den = a_blk.denominator_lcm()
    if not ring.unit_int(den):
        raise ValueError("integral block has entries outside the ring")
    _u, d, v = smith_normal_form(a_blk.scale(den)) if at and asrc else (None, Matrix.zero(at, asrc), Matrix.identity(asrc))
    diag = [x for x in diagonal_of(d) if x != 0]
    k = len(diag)
    factors = []
    for x in diag:
        f = ring.nonunit_factor(x)
        if f > 1:
            factors.append(f)
    c2v = c2 * v if c2.rows else c2
    c3 = c2v.submatrix(range(c2v.rows), range(k, asrc)) if c2v.rows else Matrix.zero(0, asrc - k)
    s = rank(c3) if c3.rows and c3.cols else 0
    return LocalValue(
        free_rank=at - k,
        factors=tuple(factors),
        rat_rank=bt - r - s,
        div_rank=s,
    )


def homology(c: ChainComplex) -> dict[int, LocalValue]:
    """H_n = ker d_n / im d_{n+1} in normal form, per degree."""
    out: dict[int, LocalValue] = {}
    for n in c.degrees():
        shape_k, basis = mixed_kernel(c.ring, c.diff(n), c.rank_pair(n - 1), c.rank_pair(n))
        if c.dim(n + 1):
            coords = solve(basis, c.diff(n + 1))
            assert coords is not None, "boundaries must be cycles"
            val = mixed_cokernel_value(c.ring, coords, shape_k, c.rank_pair(n + 1))
        else:
            val = mixed_cokernel_value(c.ring, Matrix.zero(sum(shape_k), 0), shape_k, (0, 0))
        if not val.is_zero():
            out[n] = val
    return out


def is_acyclic(c: ChainComplex) -> bool:
    return graded_is_zero(homology(c))


def is_quasi_iso(f: ChainMap) -> tuple[bool, dict[int, LocalValue]]:
    """True when the cone is acyclic; the report gives the cone homology."""
    h = homology(cone(f))
    return graded_is_zero(h), h


def euler_characteristic(c: ChainComplex) -> int:
    """Alternating sum of rational homology dimensions."""
    return sum((-1) ** n * v.rationalized_dim for n, v in homology(rationalized(c)).items())


# ---------------------------------------------------------------------------
# residue-field checks (cheap acyclicity certificates)
# ---------------------------------------------------------------------------

def rational_homology_dims(c: ChainComplex) -> dict[int, int]:
    out = {}
    for n in c.degrees():
        h = c.dim(n) - rank(c.diff(n)) - rank(c.diff(n + 1))
        if h:
            out[n] = h
    return out


def _fp_rank(m: Matrix, p: int) -> int:
    rows = []
    for row in m.entries():
        r = []
        for x in row:
            fx = Fraction(x)
            if fx.denominator % p == 0:
                raise ValueError("entry not p-integral")
            r.append(fx.numerator * pow(fx.denominator, -1, p) % p)
        rows.append(r)
    rk = 0
    n_rows, n_cols = m.rows, m.cols
    r = 0
    for col in range(n_cols):
        piv = next((i for i in range(r, n_rows) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
        rk += 1
    return rk


def mod_p_homology_dims(c: ChainComplex, p: int) -> dict[int, int]:
    """Dimensions of the homology of (integral part) tensor F_p."""
    if not c.ring.allows_residue_prime(p):
        raise ValueError(f"{p} is invertible over {c.ring}")
    ip = integral_part(c)
    out = {}
    for n in ip.degrees():
        h = ip.dim(n) - _fp_rank(ip.diff(n), p) - _fp_rank(ip.diff(n + 1), p)
        if h:
            out[n] = h
    return out


def field_acyclic_degrees(c: ChainComplex, p: int | None) -> dict[int, bool]:
    """Per-degree vanishing verdicts over Q (p=None) or over F_p."""
    dims = rational_homology_dims(c) if p is None else mod_p_homology_dims(c, p)
    degs = c.degrees()
    lo = min(degs, default=0)
    hi = max(degs, default=-1)
    return {n: dims.get(n, 0) == 0 for n in range(lo, hi + 1)}
