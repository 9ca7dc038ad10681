import random

from fractions import Fraction

import pytest

from fracture.padic import (
    AdeleElement,
    NonUnitInversion,
    PadicApprox,
    PrecisionExhausted,
    padic_op,
)


def test_add_example():
    a = PadicApprox.from_int(3, 2, 5)
    b = PadicApprox.from_int(5, 2, 5)
    c = padic_op(a, b, "add")
    assert c.absolute_residue() == 8
    assert c.absolute_precision == 5


def test_inv_brute_force_oracle():
    # brute force: the unique x with 3*x = 1 mod 125
    expect = next(x for x in range(125) if (3 * x) % 125 == 1)
    assert expect == 42
    a = PadicApprox.from_int(3, 5, 3)
    assert padic_op(a, None, "inv").absolute_residue() == 42


def test_inv_non_unit():
    a = PadicApprox.from_int(5, 5, 3)
    with pytest.raises(NonUnitInversion):
        padic_op(a, None, "inv")
    with pytest.raises(NonUnitInversion):
        PadicApprox.from_int(0, 5, 3).inv()


def test_mixed_prime_rejected():
    with pytest.raises(ValueError):
        PadicApprox.from_int(1, 2).add(PadicApprox.from_int(1, 3))


def test_precision_tracking():
    a = PadicApprox.from_residue(8, 2, 5)  # 2^3 * 1 known mod 2^5
    assert a.valuation() == 3
    assert a.precision == 2
    b = PadicApprox.from_residue(24, 2, 5)  # 2^3 * 3
    s = a.add(b)
    # 8 + 24 = 32 vanishes modulo 2^5: approximate zero at the known window
    assert s.is_zero() and s.precision == 5
    # cancellation below the known window raises instead of silently truncating
    pole = PadicApprox.from_rational(Fraction(1, 4), 2, 1)
    with pytest.raises(PrecisionExhausted):
        pole.add(pole.neg().mul(PadicApprox.from_residue(3, 2, 1)))
    with pytest.raises(PrecisionExhausted):
        PadicApprox.from_int(3, 2, 4).truncate(0)


def test_rational_images():
    x = PadicApprox.from_rational(Fraction(1, 3), 2, 6)
    three = PadicApprox.from_int(3, 2, 6)
    assert x.mul(three).agrees_with(PadicApprox.from_int(1, 2, 6))
    assert x.exact


def _random_adele(rng, support, precision=12):
    num = rng.randint(-20, 20)
    den = 1
    for p in support:
        den *= p ** rng.randint(0, 2)
    corr = {
        p: PadicApprox.from_int(rng.randint(0, 50), p, precision)
        for p in support
    }
    return AdeleElement(frozenset(support), Fraction(num, den), corr)


def test_adele_commutative_associative():
    rng = random.Random(11)
    support = (2, 3, 5)
    for _ in range(25):
        x = _random_adele(rng, support)
        y = _random_adele(rng, support)
        z = _random_adele(rng, support)
        assert x.add(y).agrees_with(y.add(x))
        assert x.mul(y).agrees_with(y.mul(x))
        assert x.add(y).add(z).agrees_with(x.add(y.add(z)))
        assert x.mul(y).mul(z).agrees_with(x.mul(y.mul(z)))


def test_adele_support_discipline():
    with pytest.raises(ValueError):
        AdeleElement(frozenset({2}), Fraction(1, 3), {2: PadicApprox.from_int(0, 2)})
    with pytest.raises(ValueError):
        AdeleElement(frozenset({2, 3}), Fraction(1), {2: PadicApprox.from_int(0, 2)})
    x = AdeleElement.from_rational(Fraction(1, 2), {2})
    y = x.enlarge({2, 5})
    assert y.support == frozenset({2, 5})
    assert y.component(5).agrees_with(PadicApprox.from_rational(Fraction(1, 2), 5))
