import random

import pytest

from fracture.abgroups import FgAbGroup, fg_invariants, from_p_parts, merge_factor_lists
from fracture.matrices import Matrix, minors_gcd, smith_normal_form


def test_cyclic_case():
    g = fg_invariants(Matrix.from_rows([[6]]))
    assert g == FgAbGroup(0, (6,))


def test_unit_factor_dropped():
    # minors-gcd oracle: d1 = gcd(2,1) = 1 (dropped), d1*d2 = |det| = 2
    a = Matrix.from_rows([[2, 0], [0, 1]])
    assert minors_gcd(a, 1) == 1
    assert minors_gcd(a, 2) == 2
    assert fg_invariants(a) == FgAbGroup(0, (2,))


def test_free_case():
    g = fg_invariants(Matrix.zero(0, 2))
    assert g == FgAbGroup(2, ())


def test_invariant_under_unimodular_ops():
    rng = random.Random(7)
    for _ in range(40):
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        a = Matrix(n, m, [[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)])
        u, _d, v = smith_normal_form(Matrix(n, n, [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]))
        # u is unimodular; use it to scramble the presentation
        assert fg_invariants(u * a) == fg_invariants(a)
        w, _d2, _v2 = smith_normal_form(Matrix(m, m, [[rng.randint(-2, 2) for _ in range(m)] for _ in range(m)]))
        assert fg_invariants(a * w) == fg_invariants(a)


def test_validation():
    with pytest.raises(ValueError):
        FgAbGroup(0, (3, 2))
    with pytest.raises(ValueError):
        FgAbGroup(0, (1,))
    with pytest.raises(ValueError):
        FgAbGroup(-1, ())


def test_p_parts_round_trip():
    g = FgAbGroup(1, (2, 6, 12))
    assert g.p_part_exponents(2) == (1, 1, 2)
    assert g.p_part_exponents(3) == (1, 1)
    rebuilt = from_p_parts(1, {2: g.p_part_exponents(2), 3: g.p_part_exponents(3)})
    assert rebuilt == g


def test_merge_factor_lists():
    assert merge_factor_lists((2,), (3,)) == (6,)
    assert merge_factor_lists((2, 4), (3,)) == (2, 12)
