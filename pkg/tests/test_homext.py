import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fogus import homext as he
from fogus import ogus_core as og
from fogus import samples as sm
from fogus import weights as wt
from fogus.errors import DimensionMismatch, NoSection, WeightViolation
from fogus.exactq import Matrix

ONE = Matrix([[1]])


@pytest.fixture
def qq1():
    return wt.unit_fog(), wt.tate_fog(1)


def test_cocycle_values(qq1):
    Q, Q1 = qq1
    x = he.make_cocycle(Q, Q1, Matrix([[2]]), {5: Matrix([[7]])})
    assert x.value_at(5) == Matrix([[7]])
    # off the support the value is g - p^-1 g
    assert x.value_at(3) == Matrix([[2 - Fraction(2, 3)]])
    assert (x + x).value_at(3) == x.value_at(3) * 2
    assert (x - x).value_at(5).is_zero()


def test_xi_on_q_q1(qq1):
    Q, Q1 = qq1
    x = he.xi(Q, Q1, Matrix([[3]]))
    for p in (2, 3, 5, 101):
        assert x.value_at(p) == Matrix([[3 - Fraction(3, p)]])
    assert he.is_coboundary(x) == Matrix([[3]])


def test_delta_classes(qq1):
    Q, Q1 = qq1
    ds = [he.delta(Q, Q1, p, ONE) for p in (2, 3, 5, 7)]
    assert he.ext1_rank(Q, Q1, ds) == 4
    assert he.is_coboundary(ds[0]) is None
    # truncated to {2} the same class dies: b = 2 solves (1 - 1/2) b = 1
    assert he.is_coboundary(ds[0], probe=[2]) == Matrix([[2]])


def test_rank_counts_relations(qq1):
    Q, Q1 = qq1
    d2 = he.delta(Q, Q1, 2, ONE)
    assert he.ext1_rank(Q, Q1, [d2, d2 * 3, d2 + he.xi(Q, Q1, ONE)]) == 1
    assert he.ext1_rank(Q, Q1, []) == 0


def test_weight_violation():
    Q, Qm1 = wt.unit_fog(), wt.tate_fog(-1)
    with pytest.raises(WeightViolation):
        he.delta(Q, Qm1, 2, ONE)
    x = he.delta(Q, Qm1, 2, ONE, mode="og")
    assert x.mode == "og"


def test_mismatched_cocycles(qq1):
    Q, Q1 = qq1
    with pytest.raises(DimensionMismatch):
        he.delta(Q, Q1, 2, ONE) + he.delta(Q, Q, 2, ONE)


def test_build_extension_frobenius(qq1):
    Q, Q1 = qq1
    T = he.build_extension(he.delta(Q, Q1, 2, ONE))
    assert T.E.frobenius(2) == Matrix([[Fraction(1, 2), -1], [0, 1]])
    assert T.E.frobenius(3) == Matrix([[Fraction(1, 3), 0], [0, 1]])
    he.check_extension(T)
    assert wt.validate_fog(T.E).verdict is wt.Verdict.PURE


def test_extension_with_tail_generator_keeps_tate_tail(qq1):
    Q, Q1 = qq1
    x = he.make_cocycle(Q, Q1, Matrix([[2]]), {})
    T = he.build_extension(x)
    for p in (2, 3, 5, 7, 11):
        assert T.E.frobenius(p) == Matrix([[Fraction(1, p), -x.value_at(p)[0, 0]], [0, 1]])


def test_extract_class_default_section(qq1):
    Q, Q1 = qq1
    x = he.delta(Q, Q1, 2, ONE)
    y = he.extract_class(he.build_extension(x))
    assert y.value_at(2) == ONE and y.value_at(3).is_zero()


def test_changing_section_changes_by_coboundary(qq1):
    Q, Q1 = qq1
    x = he.delta(Q, Q1, 3, ONE)
    T = he.build_extension(x)
    s = Matrix([[5], [1]])
    y = he.extract_class(T, section=s)
    assert he.is_coboundary(y - x) == Matrix([[5]])
    with pytest.raises(NoSection):
        he.extract_class(T, section=Matrix([[0], [2]]))


def test_cohomologous_extensions_are_isomorphic(qq1):
    Q, Q1 = qq1
    x = he.delta(Q, Q1, 5, ONE)
    psi = he.extension_isomorphism(x, Matrix([[4]]))
    assert og.is_isomorphism(psi)


def test_baer_sum_adds_classes(qq1):
    Q, Q1 = qq1
    x = he.delta(Q, Q1, 2, ONE)
    y = he.make_cocycle(Q, Q1, Matrix([[2]]), {5: Matrix([[7]])})
    S = he.baer_sum(he.build_extension(x), he.build_extension(y))
    he.check_extension(S)
    assert he.is_coboundary(he.extract_class(S) - x - y) is not None


def test_baer_sum_mismatch(qq1):
    Q, Q1 = qq1
    T1 = he.build_extension(he.delta(Q, Q1, 2, ONE))
    T2 = he.build_extension(he.delta(Q, Q, 2, ONE))
    with pytest.raises(DimensionMismatch):
        he.baer_sum(T1, T2)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_round_trip_mixed(seed):
    rng = random.Random(seed)
    M, N = sm.random_fog(rng, 2), sm.random_fog(rng, 2)
    if not he.w0_basis(M, N):
        return
    x = sm.random_cocycle(rng, M, N)
    y = he.extract_class(he.build_extension(x))
    assert he.is_coboundary(y - x) is not None


@given(st.integers(0, 10 ** 6))
@settings(max_examples=20, deadline=None)
def test_baer_sum_is_additive_on_random_pairs(seed):
    rng = random.Random(seed)
    M, N = sm.random_fog(rng, 2), sm.random_fog(rng, 1)
    if not he.w0_basis(M, N):
        return
    x, y = sm.random_cocycle(rng, M, N), sm.random_cocycle(rng, M, N)
    S = he.baer_sum(he.build_extension(x), he.build_extension(y))
    assert he.is_coboundary(he.extract_class(S) - x - y) is not None


@given(st.integers(0, 10 ** 6))
@settings(max_examples=20, deadline=None)
def test_coboundaries_are_recognised(seed):
    rng = random.Random(seed)
    M, N = sm.random_fog_pair(rng)
    g = sm.random_w0(rng, M, N)
    h = he.is_coboundary(he.xi(M, N, g))
    assert h is not None
    assert he.is_coboundary(he.xi(M, N, g) - he.xi(M, N, h)) is not None


@pytest.mark.parametrize("N, expected", [
    (wt.tate_fog(-1), (0, 1, 1)),
    (wt.tate_fog(1), (1, 1, 0)),
    (wt.unit_fog(), (2, 2, 0)),
])
def test_ses_examples(N, expected):
    r = he.ses_fog_og(wt.unit_fog(), N, [2, 3])
    assert (r.rank_fog, r.rank_og, r.rank_third) == expected
    assert r.verified


def test_ses_samples_agree():
    Q, Q1 = wt.unit_fog(), wt.tate_fog(1)
    samples = [he.delta(Q, Q1, 2, ONE), he.xi(Q, Q1, ONE)]
    assert not he.ses_fog_og(Q, Q1, [2, 3], samples).sample_mismatches
