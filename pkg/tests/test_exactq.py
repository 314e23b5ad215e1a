from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fogus.exactq import (
    Matrix, Polynomial, Subspace, certified_root_moduli, charpoly, coordinates,
    format_rational, roots_on_circle, rref, solve, to_rational,
)

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def matrices(rows, cols):
    return st.lists(st.lists(rationals, min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows).map(lambda r: Matrix(r, cols))


square = st.integers(1, 4).flatmap(lambda n: matrices(n, n))
shapes = st.tuples(st.integers(1, 4), st.integers(1, 4))
rect = shapes.flatmap(lambda s: matrices(*s))


def leibniz_det(A: Matrix) -> Fraction:
    """Oracle: sum over permutations."""
    n = A.rows
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= A[i, perm[i]]
        total += term
    return total


def interpolated_charpoly(A: Matrix) -> Polynomial:
    """Oracle: det(tI - A) at n+1 points, Lagrange interpolation."""
    n = A.rows
    xs = list(range(n + 1))
    ys = [leibniz_det(Matrix.identity(n) * x - A) for x in xs]
    out = Polynomial([0])
    for i, xi in enumerate(xs):
        term = Polynomial([ys[i]])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * Polynomial([Fraction(-xj, xi - xj), Fraction(1, xi - xj)])
        out = out + term
    return out


# ----------------------------------------------------------------- rationals


def test_rational_parsing():
    assert to_rational("-3/4") == Fraction(-3, 4)
    assert to_rational("6/8") == Fraction(3, 4)
    assert to_rational(7) == 7
    for bad in (0.5, "0.5", "1e3", True, None, ""):
        with pytest.raises((TypeError, ValueError)):
            to_rational(bad)


def test_format_rational_canonical():
    assert format_rational(Fraction(6, -8)) == "-3/4"
    assert format_rational(Fraction(4, 2)) == "2"


# ------------------------------------------------------------------ matrices


@given(square)
def test_det_matches_leibniz(A):
    assert A.det() == leibniz_det(A)


@given(square)
@settings(max_examples=40)
def test_charpoly_matches_interpolation(A):
    assert charpoly(A) == interpolated_charpoly(A)


@given(square)
def test_cayley_hamilton(A):
    P = charpoly(A)
    acc = Matrix.zeros(A.rows, A.rows)
    power = Matrix.identity(A.rows)
    for c in P.coeffs:
        acc = acc + power * c
        power = power @ A
    assert acc.is_zero()


@given(rect)
def test_rref_relation_and_rank_nullity(A):
    R, piv, T = rref(A)
    assert T @ A == R
    assert T.det() != 0
    assert A.rank() + A.nullspace().cols == A.cols
    assert (A @ A.nullspace()).is_zero()
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert all(R[k, c] == 0 for k in range(R.rows) if k != i)


@given(square)
def test_inverse(A):
    if A.det() == 0:
        with pytest.raises(ZeroDivisionError):
            A.inverse()
    else:
        assert A @ A.inverse() == Matrix.identity(A.rows)


@given(shapes.flatmap(lambda s: st.tuples(matrices(*s), matrices(s[0], 1))))
def test_solve(Ab):
    A, b = Ab
    sol = solve(A, b)
    if sol is None:
        assert Matrix.hstack(A, b).rank() > A.rank()
    else:
        x, K = sol
        assert A @ x == b
        assert K.dim == A.cols - A.rank()


@given(matrices(2, 3), matrices(3, 2), matrices(2, 2))
def test_vec_kron_identity(A, X, B):
    lhs = Matrix.column((A @ X @ B).vec())
    rhs = A.kron(B.T) @ Matrix.column(X.vec())
    assert lhs == rhs


@given(matrices(3, 2), matrices(3, 2))
def test_subspace_lattice(S1, S2):
    U, V = Subspace(3, S1), Subspace(3, S2)
    assert U.sum(V).dim + U.intersection(V).dim == U.dim + V.dim
    assert U.intersection(V) <= U and U <= U.sum(V)
    assert (U.annihilator() @ U.basis).is_zero() if U.dim else True
    C = U.complement_basis()
    assert Subspace(3, Matrix.hstack(U.basis, C)).dim == 3


def test_coordinates_raise_outside_span():
    B = Matrix([[1], [0]])
    assert coordinates(B, Matrix([[5], [0]])) == Matrix([[5]])
    with pytest.raises(ValueError):
        coordinates(B, Matrix([[0], [1]]))


def test_column_space_is_canonical():
    A = Matrix([[1, 2], [2, 4]])
    assert Subspace(2, A) == Subspace(2, Matrix([[3], [6]]))


# ---------------------------------------------------------------- polynomials


polys = st.lists(rationals, min_size=2, max_size=5).map(Polynomial)


@given(polys, polys)
def test_divmod(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5))
def test_real_root_count_with_multiplicity(roots):
    P = Polynomial.from_roots(roots)
    assert P.real_root_count(Fraction(-6), Fraction(6)) == len(roots)
    assert P.real_root_count(Fraction(1, 2), Fraction(7)) == sum(1 for r in roots if r >= 1)
    assert P.sturm_count(Fraction(-6), Fraction(6)) == len(set(roots))


def test_reversal():
    P = Polynomial([5, -2, 1])
    assert P.reversal(5) == Polynomial([25, -10, 5])


@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3)
                .filter(lambda x: x != 0), min_size=1, max_size=4))
def test_certified_moduli_enclose_roots(roots):
    P = Polynomial.from_roots(roots)
    ivs = certified_root_moduli(P)
    assert sum(iv.multiplicity for iv in ivs) == len(roots)
    for r in roots:
        assert any(iv.contains(abs(r)) for iv in ivs)
    for iv in ivs:
        assert iv.width <= Fraction(1, 10 ** 20)


def test_certified_moduli_complex_pair():
    (iv,) = certified_root_moduli(Polynomial([5, -2, 1]))
    assert iv.multiplicity == 2
    assert iv.contains_sqrt(5)


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=4))
@settings(max_examples=30)
def test_moduli_agree_with_numpy(coeffs):
    P = Polynomial(coeffs + [1])
    if P.coeffs[0] == 0:
        return
    ivs = certified_root_moduli(P)
    for z in np.roots([float(c) for c in reversed(P.coeffs)]):
        assert any(float(iv.lower) - 1e-6 <= abs(z) <= float(iv.upper) + 1e-6 for iv in ivs)


def test_roots_on_circle():
    assert roots_on_circle(Polynomial([5, -2, 1]), 5)
    assert not roots_on_circle(Polynomial.from_roots([1, 2]), 2)
    assert roots_on_circle(Polynomial([1, -1, 1, -1, 1]), 1)
    assert not roots_on_circle(Polynomial.from_roots([2, Fraction(1, 2)]), 1)
    # (3 + 4i)/5 and its conjugate
    assert roots_on_circle(Polynomial([1, Fraction(-6, 5), 1]), 1)
