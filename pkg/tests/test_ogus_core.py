from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fogus import ogus_core as og
from fogus.errors import (
    DimensionMismatch, DuplicatePlace, FrobeniusInstability, InvalidPlace,
    NonInvertibleFrobenius, NotAMorphism,
)
from fogus.exactq import Matrix, Subspace


def test_first_primes():
    assert og.first_primes(6) == [2, 3, 5, 7, 11, 13]
    assert not og.is_prime(1) and og.is_prime(97)


def test_construction_errors():
    with pytest.raises(DuplicatePlace):
        og.make_object(1, None, [(2, [[1]]), (2, [[2]])])
    with pytest.raises(NonInvertibleFrobenius):
        og.make_object(2, None, {3: [[1, 2], [2, 4]]})
    with pytest.raises(InvalidPlace):
        og.make_object(1, None, {6: [[1]]})
    with pytest.raises(DimensionMismatch):
        og.make_object(2, (0,), {})
    with pytest.raises(DimensionMismatch):
        og.make_object(2, None, {2: [[1]]})


def test_gauge_is_absorbed():
    eps = Matrix([[1, 1], [0, 1]])
    phi = Matrix([[2, 0], [0, 3]])
    M = og.make_object(2, None, {5: phi}, gauge={5: eps})
    assert M.frobenius(5) == eps.inverse() @ phi @ eps


def test_tate_frobenius():
    Q1 = og.tate_object(1)
    assert Q1.frobenius(7) == Matrix([[Fraction(1, 7)]])
    assert og.tate_twist(og.unit_object(), 1) == Q1


def test_hom_examples():
    Q, Q1 = og.unit_object(), og.tate_object(1)
    assert len(og.hom_space(Q, Q)) == 1
    assert len(og.hom_space(Q, Q1)) == 0
    assert len(og.hom_space(og.direct_sum(Q, Q1), og.direct_sum(Q1, Q))) == 2


def test_tail_basis_object():
    B = Matrix([[1, 1], [0, 1]])
    M = og.make_object(2, (0, 1), tail_basis=B)
    # the line spanned by the twist-1 column is the only nonzero invariant at tails
    assert M.frobenius(3) @ B.columns([1]) == B.columns([1]) * Fraction(1, 3)
    homs = og.hom_space(og.tate_object(1), M)
    assert len(homs) == 1
    assert Subspace(2, homs[0].f_dR) == Subspace(2, B.columns([1]))


def test_morphism_validation():
    Q, Q1 = og.unit_object(), og.tate_object(1)
    with pytest.raises(NotAMorphism):
        og.OgusMorphism(Q, Q1, Matrix([[1]]))
    with pytest.raises(DimensionMismatch):
        og.OgusMorphism(Q, Q, Matrix([[1, 0]]))
    U = og.make_object(2, None, {2: [[1, 1], [0, 1]]})
    with pytest.raises(NotAMorphism):
        og.OgusMorphism(U, U, Matrix([[0, 0], [1, 0]]))


def test_kernel_cokernel_image():
    Q = og.unit_object()
    QQ = og.direct_sum(Q, Q)
    f = og.OgusMorphism(QQ, Q, Matrix([[1, 1]]))
    K, inc = og.kernel(f)
    assert K.dim == 1 and (f.f_dR @ inc.f_dR).is_zero()
    C, proj = og.cokernel(og.OgusMorphism(Q, QQ, Matrix([[1], [1]])))
    assert C.dim == 1
    I, onto, into = og.image(f)
    assert into.f_dR @ onto.f_dR == f.f_dR


def test_unstable_subobject():
    U = og.make_object(2, None, {2: [[1, 1], [0, 1]]})
    with pytest.raises(FrobeniusInstability):
        og.subobject(U, Matrix([[0], [1]]))
    mixed = og.direct_sum(og.unit_object(), og.tate_object(1))
    with pytest.raises(FrobeniusInstability):
        og.subobject(mixed, Matrix([[1], [1]]))


def test_internal_hom():
    H = og.internal_hom(og.unit_object(), og.tate_object(1))
    assert H.tail == (1,)
    U = og.make_object(2, None, {2: [[1, 1], [0, 1]]})
    H = og.internal_hom(U, U)
    # invariants of the internal Hom are the endomorphisms
    inv = (H.frobenius(2) - Matrix.identity(4)).nullspace()
    assert inv.cols == len(og.hom_space(U, U))


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
@settings(max_examples=30)
def test_change_basis_preserves_object(entries):
    P = Matrix([entries[:2], entries[2:]])
    if not P.is_invertible():
        return
    M = og.make_object(2, (0, 1), {3: [[1, 2], [0, Fraction(1, 3)]]})
    N = og.change_basis(M, P)
    f = og.OgusMorphism(M, N, P)
    assert og.is_isomorphism(f)
    assert og.same_object(N, og.change_basis(N, Matrix.identity(2)))


def test_hom_elements_commute_everywhere():
    M = og.make_object(2, (0, 0), {2: [[1, 1], [0, 1]], 3: [[0, 1], [1, 0]]})
    for f in og.hom_space(M, M):
        for p in (2, 3, 5, 7):
            assert f.f_dR @ M.frobenius(p) == M.frobenius(p) @ f.f_dR
