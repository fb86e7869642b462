import itertools
import math
import random

import numpy as np
import pytest

from kummerlcp import (
    InvariantTuple,
    bound_B,
    coeffs_all_ones,
    coeffs_half_double,
    coeffs_half_single,
    coeffs_lambda_two,
    criterion_check,
    enumerate_nonspecial,
    make_curve,
)
from kummerlcp.curve import ell_invariant_bulk
from kummerlcp.errors import (
    JOutOfRange,
    NkNotPositive,
    RegimeViolation,
    SearchSpaceTooLarge,
)
from kummerlcp.instances import EX37_TUPLES
from kummerlcp.nonspecial import bulk_verdicts, overflow_set, search_cap


def random_curves(seed, count, m_range=(2, 10), r_range=(2, 5)):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = rng.randrange(*m_range[0:1] + (m_range[1] + 1,))
        r = rng.randrange(r_range[0], r_range[1] + 1)
        lambdas = [rng.randrange(1, m) for _ in range(r)]
        if math.gcd(m, *lambdas) != 1:
            continue
        out.append(make_curve(None, m, lambdas))
    return out


# ---------------------------------------------------------------------------
# The bound B and the overflow sets C
# ---------------------------------------------------------------------------

def test_bound_B_hand_values(ex37_curve):
    # m=6, lambdas=(1,1,1,3,5): residues of -j*lambda mod 6 summed, minus 0,
    # divided by 6, ceiling, minus 1
    assert bound_B(ex37_curve, 0, 1) == 3   # (5+5+5+3+1)=19 -> ceil/6 - 1
    assert bound_B(ex37_curve, 0, 2) == 2   # (4+4+4+0+2)=14
    assert bound_B(ex37_curve, 0, 3) == 2   # (3+3+3+3+3)=15
    assert bound_B(ex37_curve, 0, 4) == 1   # (2+2+2+0+4)=10
    assert bound_B(ex37_curve, 0, 5) == 1   # (1+1+1+3+5)=11
    with pytest.raises(JOutOfRange):
        bound_B(ex37_curve, 0, 0)
    with pytest.raises(JOutOfRange):
        bound_B(ex37_curve, 0, 6)


def test_bound_B_all_ones_closed_form():
    # for lambda = (1,...,1): B(0, j) = r - 1 - floor(r*j/m)
    for m, r in [(5, 3), (7, 4), (9, 5), (11, 3)]:
        c = make_curve(None, m, [1] * r)
        for j in range(1, m):
            assert bound_B(c, 0, j) == r - 1 - (r * j) // m


def test_bound_B_sum_identity():
    # sum over j of B(n0, j) equals g - n0 * d_inf
    for c in random_curves(42, 60):
        for n0 in range(c.ram.e_inf):
            total = sum(bound_B(c, n0, j) for j in range(1, c.m))
            assert total == c.genus - n0 * c.ram.d_inf


def test_overflow_set_examples(ex37_curve):
    tup = InvariantTuple(0, (0, 1, 3, 0, 5))
    # j=1: n_i * d_i >= (lambda_i mod 6) > 0 picks indices with n_i >= residue
    assert overflow_set(ex37_curve, tup, 1) == [1, 2, 4]
    assert overflow_set(ex37_curve, InvariantTuple(0, (0, 0, 0, 0, 0)), 1) == []
    with pytest.raises(JOutOfRange):
        overflow_set(ex37_curve, tup, 0)


# ---------------------------------------------------------------------------
# The criterion
# ---------------------------------------------------------------------------

def test_criterion_known_tuples(ex37_curve):
    good = criterion_check(ex37_curve, InvariantTuple(0, (0, 1, 3, 0, 5)))
    assert good.passed and good.degree == good.genus == 9
    assert all(ok for _, _, _, ok in good.rows)
    bad = criterion_check(ex37_curve, InvariantTuple(0, (0, 0, 0, 0, 0)))
    assert not bad.passed
    report = criterion_check(ex37_curve, InvariantTuple(0, (0, 1, 3, 0, 5)),
                             mode="cond2")
    assert report.passed
    blob = good.to_json()
    assert blob["verdict"] == "nonspecial_deg_g"
    assert len(blob["rows"]) == ex37_curve.m - 1


def test_criterion_bad_inputs(ex37_curve):
    with pytest.raises(ValueError):
        criterion_check(ex37_curve, InvariantTuple(0, (0, 0, 0)), mode="cond3")
    with pytest.raises(ValueError):
        criterion_check(ex37_curve, InvariantTuple(0, (0, 0, 0, 0, 0)),
                        mode="bogus")
    out_of_box = criterion_check(ex37_curve, InvariantTuple(9, (0, 0, 0, 0, 0)))
    assert not out_of_box.bounds_ok and not out_of_box.passed


def test_modes_agree_and_match_dimension_oracle():
    # cond2 and cond3 give the same verdict, and both coincide with the
    # direct dimension computation: degree g and dim L(A) = 1
    for c in random_curves(2024, 40):
        for n0 in range(c.ram.e_inf):
            cond2, cond3 = bulk_verdicts(c, n0)
            assert np.array_equal(cond2, cond3)
            ell = ell_invariant_bulk(c, n0)
            deg = np.zeros((), dtype=np.int64) + n0 * c.ram.d_inf
            for axis, (e_i, d_i) in enumerate(zip(c.ram.e, c.ram.d)):
                sh = [1] * c.r
                sh[axis] = e_i
                deg = deg + (np.arange(e_i, dtype=np.int64) * d_i).reshape(sh)
            oracle = (deg == c.genus) & (ell == 1)
            assert np.array_equal(cond3, oracle)


def test_criterion_permutation_symmetry(ex37_curve):
    # the first three branch points all carry lambda = 1, so permuting their
    # coefficients cannot change the verdict
    rng = random.Random(9)
    for _ in range(100):
        n = [rng.randrange(0, 6) for _ in range(3)] + [rng.randrange(0, 2),
                                                       rng.randrange(0, 6)]
        base = criterion_check(ex37_curve, InvariantTuple(0, tuple(n))).passed
        for perm in itertools.permutations(n[:3]):
            tup = InvariantTuple(0, tuple(perm) + tuple(n[3:]))
            assert criterion_check(ex37_curve, tup).passed == base


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def test_enumeration_matches_reference_list(ex37_curve):
    tuples = enumerate_nonspecial(ex37_curve, dedup=True)
    assert sorted((t.n0,) + t.n for t in tuples) == sorted(EX37_TUPLES)
    assert len(tuples) == 24


def test_enumeration_dedup_vs_full(ex37_curve):
    full = enumerate_nonspecial(ex37_curve)
    deduped = enumerate_nonspecial(ex37_curve, dedup=True)
    assert len(deduped) <= len(full)
    # every full tuple canonicalizes into the deduped list
    canon = {(t.n0,) + t.n for t in deduped}
    for t in full:
        key = (t.n0,) + tuple(sorted(t.n[:3])) + t.n[3:]
        assert key in canon
    # all tuples pass the criterion and have degree g
    for t in full:
        assert criterion_check(ex37_curve, t).passed
        assert t.degree(ex37_curve) == 9


def test_enumeration_empty_case():
    # m=17, lambda=(1,2): no invariant non-special divisor of degree g exists
    c = make_curve(None, 17, [1, 2])
    assert enumerate_nonspecial(c) == []


def test_enumeration_all_ones_unique_up_to_order():
    # with n0 = 0, lambda all ones, the sorted solution is unique
    c = make_curve(None, 5, [1, 1, 1])
    tuples = enumerate_nonspecial(c, dedup=True)
    assert [(t.n0,) + t.n for t in tuples if t.n0 == 0] == [(0, 0, 1, 3)]


def test_search_cap(monkeypatch):
    c = make_curve(None, 6, [1, 1, 1, 3, 5])
    with pytest.raises(SearchSpaceTooLarge):
        enumerate_nonspecial(c, cap=10)
    monkeypatch.setenv("KDL_MAX_SEARCH", "10")
    assert search_cap() == 10
    with pytest.raises(SearchSpaceTooLarge):
        enumerate_nonspecial(c)
    monkeypatch.delenv("KDL_MAX_SEARCH")
    assert search_cap() > 10


# ---------------------------------------------------------------------------
# Closed-form families
# ---------------------------------------------------------------------------

def test_all_ones_examples():
    assert coeffs_all_ones(5, 3) == InvariantTuple(0, (0, 1, 3))
    assert coeffs_all_ones(2, 5) == InvariantTuple(0, (0, 0, 0, 1, 1))
    for m, r in [(3, 2), (7, 3), (8, 5), (11, 4), (13, 7)]:
        if math.gcd(m, 1) != 1:
            continue
        tup = coeffs_all_ones(m, r)
        c = make_curve(None, m, [1] * r)
        assert criterion_check(c, tup).passed


def test_all_ones_gcd_one_simple_form():
    # when gcd(m, r) = 1 the ceiling is never attained exactly, so
    # n_i = floor(m*(i-1)/r)
    for m, r in [(5, 3), (7, 4), (9, 5), (11, 3), (8, 5)]:
        assert math.gcd(m, r) == 1
        tup = coeffs_all_ones(m, r)
        assert tup.n == tuple((m * i) // r for i in range(r))


def test_half_single_examples():
    assert coeffs_half_single(8, 4, 0) == InvariantTuple(0, (1, 3, 5, 0))
    tup = coeffs_half_single(8, 6, 1)
    c = make_curve(None, 8, [1] * 5 + [4])
    assert criterion_check(c, tup).passed and tup.n[-1] == 1
    with pytest.raises(RegimeViolation):
        coeffs_half_single(7, 4, 0)    # odd m
    with pytest.raises(RegimeViolation):
        coeffs_half_single(8, 4, 2)    # N out of range
    with pytest.raises(RegimeViolation):
        coeffs_half_single(8, 3, 1)    # r too small for N=1


def test_half_double_examples():
    tup0 = coeffs_half_double(4, 7, 0)
    assert tup0.n[-2:] == (0, 0)
    c7 = make_curve(None, 4, [1] * 5 + [2, 2])
    assert criterion_check(c7, tup0).passed
    assert tup0.degree(c7) == c7.genus
    tup1 = coeffs_half_double(4, 5, 1)
    assert tup1.n[-2:] == (1, 0)
    c = make_curve(None, 4, [1, 1, 1, 2, 2])
    assert criterion_check(c, tup1).passed
    with pytest.raises(RegimeViolation):
        coeffs_half_double(4, 5, 3)
    with pytest.raises(RegimeViolation):
        coeffs_half_double(4, 6, 2)    # r too small for N=2


def test_lambda_two_examples():
    assert coeffs_lambda_two(8, 5, 0, 1) == InvariantTuple(0, (0, 2, 3, 6, 1))
    with pytest.raises(RegimeViolation):
        coeffs_lambda_two(7, 5, 0, 1)  # odd m
    with pytest.raises(RegimeViolation):
        coeffs_lambda_two(8, 4, 0, 1)  # odd r - 1
    with pytest.raises(RegimeViolation):
        coeffs_lambda_two(8, 5, 0, 5)  # k out of range
    with pytest.raises(NkNotPositive):
        coeffs_lambda_two(4, 3, 0, 1)  # N_1 = (4 - 1)//4 = 0


def test_families_sweep():
    # every closed-form output must pass the criterion (the family functions
    # already self-check; this exercises a broad parameter range)
    count = 0
    for m in range(2, 17):
        for r in range(2, 9):
            tup = coeffs_all_ones(m, r)
            assert tup.degree(make_curve(None, m, [1] * r)) == \
                make_curve(None, m, [1] * r).genus
            count += 1
            if m % 2 == 0 and m >= 4:
                for N in (0, 1):
                    try:
                        coeffs_half_single(m, r, N)
                        count += 1
                    except RegimeViolation:
                        pass
                for N in (0, 1, 2):
                    try:
                        coeffs_half_double(m, r, N)
                        count += 1
                    except RegimeViolation:
                        pass
                if (r - 1) % 2 == 0 and r >= 3:
                    for k in range(1, (r + 1) // 2):
                        try:
                            coeffs_lambda_two(m, r, 0, k)
                            count += 1
                        except (RegimeViolation, NkNotPositive):
                            pass
    assert count > 150


def test_lambda_two_with_positive_n0():
    # nonzero coefficient at infinity, still degree g and non-special
    tup = coeffs_lambda_two(14, 5, 1, 1)
    c = make_curve(None, 14, [1, 1, 1, 1, 2])
    assert tup.n0 == 1
    assert criterion_check(c, tup).passed


def test_nonspecial_tuples_have_trivial_space():
    # a passing tuple supports only constants: every shifted summand with
    # t > 0 has negative degree and the t = 0 summand has degree exactly 0
    from kummerlcp.curve import _restricted_summand_degree

    for c in random_curves(77, 25):
        tuples = enumerate_nonspecial(c, cap=10**6)
        for tup in tuples[:5]:
            assert _restricted_summand_degree(c, tup.n0, tup.n, 0) == 0
            for t in range(1, c.m):
                assert _restricted_summand_degree(c, tup.n0, tup.n, t) < 0
