"""
Exact arithmetic: rationals, rational matrices, the linear solver, polynomials and
truncated matrix series.
"""
import math
import sys
from fractions import Fraction

import numpy as np
import pytest

from hspy import hs_exact
from hspy.hs_errors import DimensionError, RationalDivisionError, RationalError
from hspy.hs_exact import MatrixSeries, RatPoly

n_random = 50


def test_rat_arith_examples():
    # 1/128 + 63/64 + 1/128 is the (0, 0) entry of the even part of a1
    partial = hs_exact.rat_arith("1/128", "63/64", "add")
    assert hs_exact.rat_arith(partial, "1/128", "add") == 1
    assert hs_exact.rat_arith("7/256", 0, "mul") == 0
    assert hs_exact.rat_arith("1/2", "1/16", "div") == 8


def test_division_by_zero():
    with pytest.raises(RationalDivisionError):
        hs_exact.rat_arith(1, 0, "div")
    # still a ZeroDivisionError for callers that only know the builtin
    with pytest.raises(ZeroDivisionError):
        hs_exact.rat_arith("3/4", "0", "div")


def test_parse_and_format():
    assert hs_exact.parse_rational("3/6") == Fraction(1, 2)
    assert hs_exact.parse_rational("-7") == -7
    assert hs_exact.parse_rational("-25/1344") == Fraction(-25, 1344)
    assert hs_exact.format_rational(Fraction(4, 2)) == "2"
    assert hs_exact.format_rational(Fraction(-1, 12)) == "-1/12"
    assert hs_exact.format_rational(0) == "0"
    for bad in ["1/0", "abc", " 1", "1/-2", "+1", "1.5", "", "1/2/3"]:
        with pytest.raises(RationalError):
            hs_exact.parse_rational(bad)


def test_floats_are_rejected():
    with pytest.raises(RationalError):
        hs_exact.to_rational(0.5)


def test_canonical_form_and_laws(rng, random_rational):
    for _ in range(n_random):
        a, b, c = (random_rational(rng, size=1000, max_den=1000) for _ in range(3))
        for q in (a, b, c):
            assert q.denominator > 0
            assert math.gcd(abs(q.numerator), q.denominator) == 1
        assert hs_exact.rat_arith(a, b, "add") == hs_exact.rat_arith(b, a, "add")
        assert hs_exact.rat_arith(a, b, "mul") == hs_exact.rat_arith(b, a, "mul")
        left = hs_exact.rat_arith(hs_exact.rat_arith(a, b, "add"), c, "add")
        right = hs_exact.rat_arith(a, hs_exact.rat_arith(b, c, "add"), "add")
        assert left == right
        left = hs_exact.rat_arith(hs_exact.rat_arith(a, b, "mul"), c, "mul")
        right = hs_exact.rat_arith(a, hs_exact.rat_arith(b, c, "mul"), "mul")
        assert left == right


def test_mat_mul_examples():
    A = hs_exact.rat_matrix([["1/2", "-1/16"], ["15/16", "-7/32"]])
    assert hs_exact.mat_equal(hs_exact.mat_mul(hs_exact.identity(2), A), A)
    product = hs_exact.mat_mul(hs_exact.diagonal([1, "1/2"]), hs_exact.diagonal([1, 2]))
    assert hs_exact.mat_equal(product, hs_exact.identity(2))
    column = hs_exact.mat_mul(hs_exact.rat_matrix([[1, 0], [0, "1/2"]]), hs_exact.rat_matrix([[0], [1]]))
    assert hs_exact.mat_equal(column, hs_exact.rat_matrix([[0], ["1/2"]]))
    assert all(isinstance(x, Fraction) for x in column.flat)


def test_mat_mul_dimension_mismatch():
    with pytest.raises(DimensionError):
        hs_exact.mat_mul(hs_exact.identity(2), hs_exact.identity(3))


def test_ragged_matrix():
    with pytest.raises(DimensionError):
        hs_exact.rat_matrix([[1, 2], [3]])


def test_solve_linear_examples():
    b = hs_exact.rat_vector(["1/3", "-2", "5/7"])
    sol = hs_exact.solve_linear(hs_exact.identity(3), b)
    assert sol.consistent and hs_exact.mat_equal(sol.particular, b) and sol.nullspace == []

    sol = hs_exact.solve_linear(hs_exact.rat_matrix([[0]]), hs_exact.rat_vector([1]))
    assert not sol.consistent
    assert sol.particular is None
    assert sol.contradiction == 1

    sol = hs_exact.solve_linear(hs_exact.rat_matrix([[1, 1]]), hs_exact.rat_vector([0]))
    assert sol.consistent
    assert hs_exact.mat_equal(sol.particular, hs_exact.rat_vector([0, 0]))
    assert len(sol.nullspace) == 1
    assert hs_exact.mat_equal(sol.nullspace[0], hs_exact.rat_vector([-1, 1]))


def test_solve_linear_without_unknowns():
    # a system with no columns is consistent iff the right hand side vanishes
    empty = hs_exact.rat_matrix([[], []], n_cols=0)
    assert hs_exact.solve_linear(empty, hs_exact.rat_vector([0, 0])).consistent
    assert not hs_exact.solve_linear(empty, hs_exact.rat_vector([0, 1])).consistent


def test_solve_linear_dimension_mismatch():
    with pytest.raises(DimensionError):
        hs_exact.solve_linear(hs_exact.identity(2), hs_exact.rat_vector([1, 2, 3]))


def test_solve_linear_random(rng, random_rational):
    # We draw rank deficient systems on purpose: the last column is a combination of the others
    for _ in range(n_random):
        n_rows, n_cols = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        rows = [[random_rational(rng) for _ in range(n_cols)] for _ in range(n_rows)]
        if n_cols > 1:
            for row in rows:
                row[-1] = row[0] - 2 * row[1 % (n_cols - 1)]
        A = hs_exact.rat_matrix(rows)
        x0 = hs_exact.rat_vector([random_rational(rng) for _ in range(n_cols)])
        if rng.random() < 0.5:
            b = hs_exact.mat_mul(A, x0)
        else:
            b = hs_exact.rat_vector([random_rational(rng) for _ in range(n_rows)])
        sol = hs_exact.solve_linear(A, b)
        if sol.consistent:
            assert hs_exact.mat_equal(hs_exact.mat_mul(A, sol.particular), b)
        else:
            assert sol.contradiction != 0
        for v in sol.nullspace:
            assert hs_exact.is_zero(hs_exact.mat_mul(A, v))
        assert hs_exact.solve_linear(A, hs_exact.mat_mul(A, x0)).consistent


def test_poly_eval_examples():
    p2 = RatPoly(["-1/12", 0, "1/2"])
    assert hs_exact.poly_eval(p2, 1) == Fraction(5, 12)
    assert hs_exact.poly_eval(RatPoly(), "3/7") == 0
    tau = Fraction(-1, 3)
    assert hs_exact.poly_eval(RatPoly.monomial(1), tau) == tau


def test_poly_derive_examples():
    assert hs_exact.poly_derive(RatPoly.monomial(3, Fraction(1, 6))) == RatPoly.monomial(2, Fraction(1, 2))
    assert hs_exact.poly_derive(RatPoly(["5/3"])).is_zero()
    assert RatPoly(["-1/12", 0, "1/2"]).derive(2) == 1


def test_poly_compose_affine_examples():
    assert hs_exact.poly_compose_affine(RatPoly.monomial(1), 2, 1) == RatPoly([1, 2])
    tau = Fraction(3, 5)
    expected = RatPoly([tau ** 2 / 2, tau, Fraction(1, 2)])
    assert hs_exact.poly_compose_affine(RatPoly.monomial(2, Fraction(1, 2)), 1, tau) == expected
    assert hs_exact.poly_compose_affine(RatPoly(["-1/12", 0, "1/2"]), 2, 0) == RatPoly(["-1/12", 0, 2])


def test_poly_shift_roundtrip(rng, random_rational):
    for _ in range(n_random):
        p = RatPoly([random_rational(rng) for _ in range(int(rng.integers(0, 7)))])
        b = random_rational(rng)
        assert hs_exact.poly_compose_affine(hs_exact.poly_compose_affine(p, 1, b), 1, -b) == p


def test_ratpoly_trims_and_prints():
    assert RatPoly([1, 0, 0]).degree == 0
    assert RatPoly([0, 0]).degree == -1
    assert RatPoly(["-1/12", 0, "1/2"]).to_strings() == ["-1/12", "0", "1/2"]
    assert str(RatPoly(["-1/12", 0, "1/2"])) == "1/2*x^2 - 1/12"
    assert hs_exact.shifted_monomial(2, "-1/2") == RatPoly(["1/8", "-1/2", "1/2"])


def _series(*matrices):
    return MatrixSeries([hs_exact.rat_matrix(M) for M in matrices])


def test_series_mul_examples():
    I = [[1, 0], [0, 1]]
    Z = [[0, 0], [0, 0]]
    M = [[0, "1/64"], ["-15/8", 0]]
    N = [[0, "-15/64"], ["15/8", 0]]

    assert hs_exact.series_mul(_series(I, Z), _series(I, M), 1) == _series(I, M)
    assert hs_exact.series_mul(_series(Z, M), _series(Z, N), 1) == _series(Z, Z)

    minus_M = [[-x for x in row] for row in hs_exact.rat_matrix(M)]
    M2 = hs_exact.mat_mul(hs_exact.rat_matrix(M), hs_exact.rat_matrix(M))
    expected = MatrixSeries([hs_exact.identity(2), hs_exact.zeros(2, 2), -M2])
    product = hs_exact.series_mul(_series(I, M, Z), _series(I, minus_M, Z), 2)
    assert product == expected


def test_series_mul_needs_defined_orders():
    with pytest.raises(DimensionError):
        hs_exact.series_mul(_series([[1]]), _series([[1]], [[2]]), 1)


def test_series_truncation(rng, random_rational):
    # coefficients up to order do not depend on the truncation order
    for _ in range(10):
        A = MatrixSeries([hs_exact.rat_matrix([[random_rational(rng) for _ in range(2)] for _ in range(2)])
                          for _ in range(6)])
        B = MatrixSeries([hs_exact.rat_matrix([[random_rational(rng) for _ in range(2)] for _ in range(2)])
                          for _ in range(6)])
        order = int(rng.integers(0, 5))
        assert hs_exact.series_mul(A, B, order) == hs_exact.series_mul(A, B, 5).truncate(order)


def test_matrices_stay_exact():
    A = hs_exact.rat_matrix([["1/3", 0], [0, "1/7"]])
    product = np.dot(A, A)
    assert product[0, 0] == Fraction(1, 9)
    assert product[1, 1] == Fraction(1, 49)


def test_scale_argument():
    # Y(2t) for Y(t) = sum_s nu_s t^s multiplies the s-th coefficient by 2^s
    Y = _series([[1]], [[-1]], [["-1/12"]])
    assert Y.scale_argument(2) == _series([[1]], [[-2]], [["-1/3"]])
    assert Y.scale_argument(1) == Y


def test_ratpoly_strings_roundtrip(rng, random_rational):
    for _ in range(n_random):
        p = RatPoly([random_rational(rng) for _ in range(int(rng.integers(0, 6)))])
        assert RatPoly.from_strings(p.to_strings()) == p


def test_long_digit_strings():
    # well past the interpreter's default int/str conversion limit
    big = "1" + "0" * 5000
    q = hs_exact.parse_rational("3/" + big)
    assert q == Fraction(3, 10 ** 5000)
    assert hs_exact.format_rational(q) == "3/" + big
    assert hs_exact.parse_rational("-" + big + "7") == -(10 ** 5001 + 7)
    getter = getattr(sys, "get_int_max_str_digits", None)
    if getter is not None:
        limit = getter()
        hs_exact.parse_rational(big)
        assert getter() == limit
