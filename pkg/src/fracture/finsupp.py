"""Modules over the product ring and over the finite adeles, with finite support.

An object is a per-prime family of local complexes on the support set S
together with a generic template over the S-inverted integers, describing
every closed point off S at once. Freeness off the support is enforced:
the template's elementary divisors may only involve primes of S, so the
piece at any q outside S is a complex of free modules with unit divisors.

The nub flavor (a module over the product ring) and the separated flavor
(an object of the product of module categories) carry the same finite data;
sigma and pi translate between them, and under this representation the
triangular identities hold on the nose.
"""

from __future__ import annotations

from typing import Mapping

from .abgroups import prime_factors
from .complexes import (
    ChainComplex,
    ChainMap,
    LocalValue,
    base_change,
    homology,
    rationalized,
)
from .matrices import Matrix, diagonal_of, smith_normal_form
from .rings import Q, Qp, Ring, ZS, Zp


def torsion_primes_of(c: ChainComplex) -> frozenset[int]:
    """Primes dividing some elementary divisor of some differential."""
    out: set[int] = set()
    for n in c.degrees():
        m = c.diff(n)
        if m.is_zero():
            continue
        den = m.denominator_lcm()
        _u, d, _v = smith_normal_form(m.scale(den))
        for x in diagonal_of(d):
            if x:
                out |= set(prime_factors(x))
        out |= set(prime_factors(den))
    return frozenset(out)


class ProductComplex:
    """Finite-support object over the profinite nub or the adele ring."""

    __slots__ = ("support", "components", "generic")

    def __init__(self, support, components: Mapping[int, ChainComplex], generic: ChainComplex):
        self.support = frozenset(support)
        if not self.support:
            raise ValueError("support must be nonempty")
        comps = dict(components)
        if set(comps) != self.support:
            raise ValueError("components must be keyed exactly by the support")
        for p, c in comps.items():
            if c.ring != Zp(p):
                raise ValueError(f"component at {p} must live over the {p}-local ring")
        if generic.ring != ZS(self.support):
            raise ValueError("generic template must live over the S-inverted integers")
        off = torsion_primes_of(generic) - self.support
        if off:
            raise ValueError(f"generic template has torsion at {sorted(off)} outside the support")
        self.components = comps
        self.generic = generic

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.support == other.support
            and self.components == other.components
            and self.generic == other.generic
        )

    def __repr__(self):
        return f"{type(self).__name__}(S={sorted(self.support)})"

    def piece(self, p: int) -> ChainComplex:
        """Idempotent piece at a closed point; free off the support."""
        if p in self.support:
            return self.components[p]
        return base_change(self.generic, Zp(p))

    def generic_ranks(self) -> dict[int, int]:
        """Rank of the free piece at closed points off the support."""
        return {n: v.free_rank + v.rat_rank for n, v in homology(self.generic).items()}

    def is_rationalized(self) -> bool:
        return self.generic.is_pure_rational() and all(c.is_pure_rational() for c in self.components.values())

    def is_torsion(self) -> bool:
        """Vanishes at the generic point: all pieces rationally acyclic."""
        from .complexes import rational_homology_dims

        if rational_homology_dims(self.generic):
            return False
        return all(not rational_homology_dims(c) for c in self.components.values())

    def is_zero_object(self) -> bool:
        return self.generic.is_zero_complex() and all(c.is_zero_complex() for c in self.components.values())

    def homology_by_piece(self) -> dict[str, dict[int, LocalValue]]:
        out = {str(p): homology(self.components[p]) for p in sorted(self.support)}
        out["generic"] = homology(self.generic)
        return out

    def map_componentwise(self, f) -> "ProductComplex":
        """Apply f: (sector, complex) -> complex to every piece; sector is a prime or None."""
        return type(self)(
            self.support,
            {p: f(p, c) for p, c in self.components.items()},
            f(None, self.generic),
        )

    def enlarged(self, support) -> "ProductComplex":
        support = frozenset(support)
        if not support >= self.support:
            raise ValueError("support can only grow")
        comps = dict(self.components)
        for p in support - self.support:
            comps[p] = base_change(self.generic, Zp(p))
        gen = ChainComplex(ZS(support), self.generic.ranks(), self.generic.diffs())
        return type(self)(support, comps, gen)

    def restricted(self, support) -> "ProductComplex":
        """Forget components; only legal when they are generic there."""
        support = frozenset(support)
        if not support <= self.support:
            raise ValueError("restriction must shrink the support")
        gen = ChainComplex(ZS(support), self.generic.ranks(), self.generic.diffs())
        for p in self.support - support:
            if self.components[p] != base_change(gen, Zp(p)):
                raise ValueError(f"component at {p} is not generic; cannot restrict")
        return type(self)(support, {p: self.components[p] for p in support}, gen)


class NubModule(ProductComplex):
    """A module over the product of the local completions."""


class SeparatedFamily(ProductComplex):
    """An object of the product of the local module categories."""


class AdeleComplex(ProductComplex):
    """A module over the finite adeles: every piece rationalized."""

    def __init__(self, support, components, generic):
        super().__init__(support, components, generic)
        if not self.is_rationalized():
            raise ValueError("adele objects must be rationalized in every piece")


class ProductMap:
    """Componentwise chain map between finite-support objects."""

    __slots__ = ("source", "target", "component_maps", "generic_map")

    def __init__(self, source: ProductComplex, target: ProductComplex,
                 component_maps: Mapping[int, ChainMap], generic_map: ChainMap):
        if source.support != target.support:
            raise ValueError("source and target supports differ")
        self.source = source
        self.target = target
        maps = dict(component_maps)
        if set(maps) != source.support:
            raise ValueError("maps must be keyed exactly by the support")
        for p, f in maps.items():
            if f.source != source.components[p] or f.target != target.components[p]:
                raise ValueError(f"component map at {p} has wrong endpoints")
        if generic_map.source != source.generic or generic_map.target != target.generic:
            raise ValueError("generic map has wrong endpoints")
        self.component_maps = maps
        self.generic_map = generic_map

    @staticmethod
    def from_matrices(source: ProductComplex, target: ProductComplex,
                      comp_mats: Mapping[int, Mapping[int, Matrix]],
                      gen_mats: Mapping[int, Matrix]) -> "ProductMap":
        maps = {p: ChainMap(source.components[p], target.components[p], comp_mats.get(p, {}))
                for p in source.support}
        gen = ChainMap(source.generic, target.generic, gen_mats)
        return ProductMap(source, target, maps, gen)

    @staticmethod
    def identity(obj: ProductComplex) -> "ProductMap":
        return ProductMap(obj, obj, {p: ChainMap.identity(c) for p, c in obj.components.items()},
                          ChainMap.identity(obj.generic))

    @staticmethod
    def zero(source: ProductComplex, target: ProductComplex) -> "ProductMap":
        return ProductMap(source, target,
                          {p: ChainMap.zero_map(source.components[p], target.components[p]) for p in source.support},
                          ChainMap.zero_map(source.generic, target.generic))

    def compose(self, first: "ProductMap") -> "ProductMap":
        return ProductMap(first.source, self.target,
                          {p: self.component_maps[p].compose(first.component_maps[p]) for p in self.source.support},
                          self.generic_map.compose(first.generic_map))

    def is_degreewise_iso(self) -> bool:
        return (all(f.is_degreewise_iso() for f in self.component_maps.values())
                and self.generic_map.is_degreewise_iso())

    def __eq__(self, other):
        return (isinstance(other, ProductMap) and self.source == other.source
                and self.target == other.target and self.component_maps == other.component_maps
                and self.generic_map == other.generic_map)


# ---------------------------------------------------------------------------
# constructors and the sigma/pi adjunction
# ---------------------------------------------------------------------------

def nub_of(x: ChainComplex, support) -> NubModule:
    """x tensored with the product of local completions, finite support."""
    support = frozenset(support) | torsion_primes_of(x)
    return NubModule(
        support,
        {p: base_change(x, Zp(p)) for p in support},
        base_change(x, ZS(support)),
    )


def zero_product(support, cls=NubModule) -> ProductComplex:
    support = frozenset(support)
    return cls(support, {p: ChainComplex.zero(Zp(p)) for p in support}, ChainComplex.zero(ZS(support)))


def idempotent_piece(n: ProductComplex, p: int) -> ChainComplex:
    """e_p applied to a product module; idempotent on stored components."""
    return n.piece(p)


def sigma(n: NubModule) -> SeparatedFamily:
    """Collect idempotent pieces; unit data is the identity here."""
    return SeparatedFamily(n.support, n.components, n.generic)


def pi(f: SeparatedFamily) -> NubModule:
    """Reassemble the product under the finite-support representation."""
    return NubModule(f.support, f.components, f.generic)


def sigma_pi_unit(n: NubModule) -> ProductMap:
    """n -> pi(sigma(n)); an isomorphism for finite-support modules."""
    return ProductMap(n, pi(sigma(n)),
                      {p: ChainMap.identity(c) for p, c in n.components.items()},
                      ChainMap.identity(n.generic))


def sigma_pi_counit(f: SeparatedFamily) -> ProductMap:
    """sigma(pi(f)) -> f."""
    return ProductMap(sigma(pi(f)), f,
                      {p: ChainMap.identity(c) for p, c in f.components.items()},
                      ChainMap.identity(f.generic))


def rationalize_product(n: ProductComplex) -> AdeleComplex:
    """Generic-point localization of a product object: the adele module."""
    return AdeleComplex(
        n.support,
        {p: _relocal(rationalized(c), p) for p, c in n.components.items()},
        _regeneric(rationalized(n.generic), n.support),
    )


def _relocal(c: ChainComplex, p: int) -> ChainComplex:
    """View a rationalized complex over the p-local pair again."""
    return ChainComplex(Zp(p), {n: (0, c.dim(n)) for n in c.degrees()}, c.diffs())


def _regeneric(c: ChainComplex, support) -> ChainComplex:
    return ChainComplex(ZS(support), {n: (0, c.dim(n)) for n in c.degrees()}, c.diffs())


def rationalization_unit(n: ProductComplex) -> ProductMap:
    """The localization map n -> rationalize_product(n), identity matrices."""
    tgt = rationalize_product(n)
    comp = {}
    for p, c in n.components.items():
        comp[p] = {m: Matrix.identity(c.dim(m)) for m in c.degrees()}
    gen = {m: Matrix.identity(n.generic.dim(m)) for m in n.generic.degrees()}
    return ProductMap.from_matrices(n, tgt, comp, gen)


def jstar(v: ChainComplex, support) -> AdeleComplex:
    """Extension of scalars of a rational complex to the finite adeles."""
    if v.ring != Q:
        raise ValueError("jstar expects a rational complex")
    support = frozenset(support)
    return AdeleComplex(
        support,
        {p: _relocal(v, p) for p in support},
        _regeneric(v, support),
    )


def jstar_map(f: ChainMap, support) -> ProductMap:
    src = jstar(f.source, support)
    tgt = jstar(f.target, support)
    comp = {p: dict(f.mats()) for p in src.support}
    return ProductMap.from_matrices(src, tgt, comp, dict(f.mats()))


def product_homology_is_zero(n: ProductComplex) -> bool:
    return all(not h for h in n.homology_by_piece().values())
