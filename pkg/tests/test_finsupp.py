import random

import pytest

from fracture.complexes import ChainComplex, LocalValue, homology, base_change
from fracture.finsupp import (
    AdeleComplex,
    NubModule,
    SeparatedFamily,
    ProductMap,
    idempotent_piece,
    jstar,
    nub_of,
    pi,
    rationalization_unit,
    rationalize_product,
    sigma,
    sigma_pi_counit,
    sigma_pi_unit,
    torsion_primes_of,
    zero_product,
)
from fracture.matrices import Matrix
from fracture.rings import Q, Z, Zp
from fracture.samples import random_perfect_complex


def hasse_nub_of_line(support={2, 3}):
    return nub_of(ChainComplex.free_module(Z), support)


def test_nub_pieces_of_the_line():
    n = hasse_nub_of_line()
    piece = idempotent_piece(n, 2)
    assert piece.ring == Zp(2)
    assert homology(piece) == {0: LocalValue(free_rank=1)}
    # off-support piece is free of the generic rank
    off = idempotent_piece(n, 7)
    assert off.ring == Zp(7)
    assert homology(off) == {0: LocalValue(free_rank=1)}
    assert n.generic_ranks() == {0: 1}


def test_idempotence_of_pieces():
    from fracture.rings import ZS
    from fracture.complexes import ChainComplex as CC

    x = ChainComplex.pure(Z, {1: 1, 0: 1}, {1: Matrix.from_rows([[8]])})
    n = nub_of(x, {2, 3})
    for p in (2, 3):
        piece = idempotent_piece(n, p)
        # e_p M, viewed over the product ring again, is concentrated at p
        wrapped = NubModule(n.support,
                            {q: (piece if q == p else CC.zero(Zp(q))) for q in n.support},
                            CC.zero(ZS(n.support)))
        assert idempotent_piece(wrapped, p) == piece
        for q in n.support - {p}:
            assert idempotent_piece(wrapped, q).is_zero_complex()


def test_torsion_only_nub_off_prime():
    x = ChainComplex.pure(Z, {1: 1, 0: 1}, {1: Matrix.from_rows([[4]])})
    n = nub_of(x, {2})
    assert homology(idempotent_piece(n, 3)) == {}  # only the free part survives
    assert homology(idempotent_piece(n, 2))[0] == LocalValue(factors=(4,))


def test_zero_nub():
    z = zero_product({2, 3})
    assert idempotent_piece(z, 2).is_zero_complex()
    assert z.is_zero_object() and z.is_torsion()


def test_support_enforced_on_generic():
    x = ChainComplex.pure(Z, {1: 1, 0: 1}, {1: Matrix.from_rows([[6]])})
    # constructor must refuse a generic template with torsion off S
    with pytest.raises(ValueError):
        NubModule({2}, {2: base_change(x, Zp(2))}, base_change(x, __import__("fracture.rings", fromlist=["ZS"]).ZS({2})))
    # nub_of enlarges instead
    n = nub_of(x, {2})
    assert n.support == frozenset({2, 3})


def test_sigma_pi_adjunction_strict():
    rng = random.Random(5)
    for _ in range(10):
        x = random_perfect_complex(rng)
        n = nub_of(x, {2, 3})
        f = sigma(n)
        assert isinstance(f, SeparatedFamily)
        assert pi(f) == n  # unit is an isomorphism here
        unit = sigma_pi_unit(n)
        counit = sigma_pi_counit(f)
        assert unit.is_degreewise_iso() and counit.is_degreewise_iso()
        # triangular identities hold strictly in this representation
        sigma_unit = ProductMap(f, sigma(pi(f)), unit.component_maps, unit.generic_map)
        assert counit.compose(sigma_unit) == ProductMap.identity(f)


def test_rationalization_and_jstar():
    n = hasse_nub_of_line()
    ln = rationalize_product(n)
    assert isinstance(ln, AdeleComplex) and ln.is_rationalized()
    unit = rationalization_unit(n)
    assert unit.source is n and unit.target == ln
    v = ChainComplex.free_module(Q)
    jv = jstar(v, {2, 3})
    assert jv.components[2].dim(0) == 1 and jv.generic.dim(0) == 1
    with pytest.raises(ValueError):
        jstar(ChainComplex.free_module(Z), {2})


def test_enlarge_restrict_round_trip():
    x = ChainComplex.pure(Z, {1: 2, 0: 2}, {1: Matrix.from_rows([[2, 0], [0, 1]])})
    n = nub_of(x, {2})
    big = n.enlarged({2, 5})
    assert big.support == frozenset({2, 5})
    assert big.restricted({2}) == n
    with pytest.raises(ValueError):
        # the 2-component is not generic, so it cannot be dropped
        big.restricted({5})


def test_torsion_primes_of():
    x = ChainComplex.pure(Z, {1: 2, 0: 2}, {1: Matrix.from_rows([[2, 0], [0, 6]])})
    assert torsion_primes_of(x) == frozenset({2, 3})
