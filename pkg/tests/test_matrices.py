import random

from fractions import Fraction

import pytest

from fracture.matrices import (
    Matrix,
    diagonal_of,
    invert,
    kernel_basis,
    minors_gcd,
    rank,
    saturate,
    smith_normal_form,
    solve,
)


def check_snf(a):
    u, d, v = smith_normal_form(a)
    assert u * a * v == d
    # unimodularity via integer inverse
    ui = invert(u)
    vi = invert(v)
    assert ui.is_integral() and vi.is_integral()
    diag = diagonal_of(d)
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j:
                assert d[i, j] == 0
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        if x != 0:
            assert y % x == 0
        else:
            assert y == 0
    return diag


def test_snf_identity():
    diag = check_snf(Matrix.identity(2))
    assert diag == [1, 1]


def test_snf_frozen_example():
    # gcd-of-minors oracle: d1 = gcd(2,4,6,8) = 2, d1*d2 = gcd of 2x2 minors = 8
    a = Matrix.from_rows([[2, 4], [6, 8]])
    assert minors_gcd(a, 1) == 2
    assert minors_gcd(a, 2) == 8
    diag = check_snf(a)
    assert diag == [2, 4]


def test_snf_zero():
    a = Matrix.zero(3, 2)
    assert check_snf(a) == [0, 0]


def test_snf_minors_oracle_random():
    rng = random.Random(20240)
    for _ in range(200):
        n = rng.randint(1, 5)
        m = rng.randint(1, 5)
        a = Matrix(n, m, [[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)])
        diag = check_snf(a)
        prod = 1
        for k in range(1, min(n, m) + 1):
            g = minors_gcd(a, k)
            expect = diag[k - 1] * prod
            assert g == expect
            if g == 0:
                break
            prod = g


def test_rank_kernel_solve():
    a = Matrix.from_rows([[1, 2, 3], [2, 4, 6]])
    assert rank(a) == 1
    k = kernel_basis(a)
    assert k.cols == 2
    assert (a * k).is_zero()
    b = Matrix.from_rows([[14], [28]])
    x = solve(a, b)
    assert a * x == b
    assert solve(Matrix.from_rows([[1], [0]]), Matrix.from_rows([[0], [1]])) is None


def test_saturate_recovers_full_lattice():
    # columns (1,0) and (1,2) span Q^2; the saturation is all of Z^2
    b = Matrix.from_rows([[1, 1], [0, 2]])
    s = saturate(b)
    assert s.cols == 2
    assert abs(s[0, 0] * s[1, 1] - s[0, 1] * s[1, 0]) == 1


def test_saturate_fractional_input():
    b = Matrix.from_rows([[Fraction(1, 2)], [Fraction(1, 3)]])
    s = saturate(b)
    assert s.cols == 1
    col = [s[0, 0], s[1, 0]]
    # primitive integer vector on the same line
    assert col[0] * 2 == col[1] * 3
    from math import gcd

    assert gcd(col[0], col[1]) == 1


def test_invert_round_trip():
    a = Matrix.from_rows([[2, 1], [1, 1]])
    assert invert(a) * a == Matrix.identity(2)
    with pytest.raises(ValueError):
        invert(Matrix.from_rows([[1, 1], [1, 1]]))
