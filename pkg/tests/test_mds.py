from __future__ import annotations

import itertools

import numpy as np
import pytest

from msrcode import linalg
from msrcode.construct import build_parity_check, cauchy_from_elements
from msrcode.errors import BudgetExceededError, RhoNotFoundError, SingularMatrixError
from msrcode.mds import check_mds, degree_bound, find_rho, search_rho, subset_count
from msrcode.params import derive_params
from oracles import SlowField, rank_oracle

from conftest import certified


def test_rank_examples(gf8):
    assert linalg.rank(gf8, np.eye(5, dtype=np.uint8)) == 5
    assert linalg.rank(gf8, np.zeros((4, 6), dtype=np.uint8)) == 0
    assert linalg.rank(gf8, np.zeros((0, 0), dtype=np.uint8)) == 0
    cauchy = [[gf8.inv(0 ^ 2), gf8.inv(0 ^ 3)], [gf8.inv(1 ^ 2), gf8.inv(1 ^ 3)]]
    assert linalg.rank(gf8, cauchy) == 2


def test_rank_agrees_with_oracle_on_random_matrices(gf8, gf16):
    rng = np.random.default_rng(11)
    for field, sf in ((gf8, SlowField(8, 0x11B)), (gf16, SlowField(16, 0x1100B))):
        for _ in range(30):
            r, c, inner = rng.integers(1, 9, size=3)
            # random low-rank products exercise rank deficiency
            A = field.random(rng, (r, inner))
            B = field.random(rng, (inner, c))
            M = linalg.matmul(field, A, B)
            assert linalg.rank(field, M) == rank_oracle(sf, M.tolist())


def test_solve_inverse_roundtrip(gf8):
    rng = np.random.default_rng(3)
    A = gf8.random(rng, (6, 6))
    while linalg.rank(gf8, A) < 6:
        A = gf8.random(rng, (6, 6))
    inv = linalg.inverse(gf8, A)
    assert np.array_equal(linalg.matmul(gf8, A, inv), np.eye(6, dtype=np.uint8))
    b = gf8.random(rng, 6)
    x = linalg.solve(gf8, A, b)
    assert np.array_equal(linalg.matmul(gf8, A, x[:, None])[:, 0], b)
    with pytest.raises(SingularMatrixError):
        linalg.inverse(gf8, np.zeros((3, 3), dtype=np.uint8))


def test_left_inverse(gf8):
    rng = np.random.default_rng(5)
    A = gf8.random(rng, (9, 4))
    rows, M = linalg.left_inverse(gf8, A)
    assert np.array_equal(linalg.matmul(gf8, M, A[rows]), np.eye(4, dtype=np.uint8))
    with pytest.raises(SingularMatrixError):
        linalg.left_inverse(gf8, np.zeros((5, 2), dtype=np.uint8))


def test_subset_count_and_report_for_4_2_3(gf8):
    p = derive_params(4, 2, 3)
    assert subset_count(p) == 6
    report = check_mds(build_parity_check(p, gf8, find_rho(p, gf8)))
    assert report.is_mds and report.subsets_checked == 6 and report.d_min == 3
    assert report.first_failure is None and report.rank_deficiency is None


@pytest.mark.parametrize("nkd", [(4, 2, 3), (5, 2, 3), (6, 3, 4), (7, 4, 5)])
def test_base_matrix_alone_is_mds(nkd, gf8):
    pc = build_parity_check(derive_params(*nkd), gf8, 1)
    assert check_mds(pc.without_rho()).is_mds


def test_duplicate_b_breaks_base_matrix(gf8):
    """A repeated b-element makes two node columns of J identical."""
    sf = SlowField(8, 0x11B)
    p = derive_params(4, 2, 3)
    c = cauchy_from_elements(gf8, [0, 1], [2, 2, 4, 5], require_distinct=False)
    pc = build_parity_check(p, gf8, 1, c)
    report = check_mds(pc.without_rho())
    assert not report.is_mds
    assert report.first_failure == (1, 2)
    assert report.rank_deficiency == 4
    assert rank_oracle(sf, pc.without_rho().submatrix((1, 2)).tolist()) == 8 - 4
    # the rho entries separate the two nodes again: confirmed independently
    assert check_mds(pc).is_mds
    assert rank_oracle(sf, pc.submatrix((1, 2)).tolist()) == 8


def test_duplicate_a_breaks_full_code(gf8):
    """Two identical Type I rows per tuple: no subset can be full rank."""
    sf = SlowField(8, 0x11B)
    p = derive_params(5, 2, 3)
    c = cauchy_from_elements(gf8, [0, 0, 1], range(3, 8), require_distinct=False)
    pc = build_parity_check(p, gf8, 1, c)
    report = check_mds(pc)
    assert not report.is_mds
    assert report.first_failure == (1, 2, 3)
    assert report.subsets_checked == 10
    full = (p.n - p.k) * p.alpha
    assert rank_oracle(sf, pc.submatrix(report.first_failure).tolist()) == full - report.rank_deficiency


def test_failures_confirmed_by_independent_rank(gf8):
    """Every subset the checker calls deficient is deficient under the oracle, and vice versa."""
    sf = SlowField(8, 0x11B)
    p = derive_params(4, 2, 3)
    full = (p.n - p.k) * p.alpha
    for rho in range(1, 40):
        pc = build_parity_check(p, gf8, rho)
        for S in itertools.combinations(range(1, p.n + 1), p.n - p.k):
            fast = linalg.rank(gf8, pc.submatrix(S))
            assert fast == rank_oracle(sf, pc.submatrix(S).tolist())
            assert (fast < full) == (fast != full)


def test_find_rho_regressions(gf8):
    p = derive_params(4, 2, 3)
    rho = find_rho(p, gf8)
    assert rho == 1
    assert find_rho(p, gf8) == rho
    assert check_mds(build_parity_check(p, gf8, rho)).is_mds


def test_find_rho_skips_failing_values():
    # q = 3 is the first case where rho = 1 does not certify
    pc = certified(9, 4, 6)
    assert pc.rho == 13
    failing = build_parity_check(pc.params, pc.field, 1)
    report = check_mds(failing)
    assert not report.is_mds and report.first_failure is not None


def test_search_reports_degree_bound(gf8):
    p = derive_params(5, 2, 3)
    found = search_rho(p, gf8)
    assert found.degree_bound == degree_bound(p) == 10 * 3 * 8
    assert found.rho != 0


def test_budget_guard(gf8):
    p = derive_params(20, 10, 11)
    assert subset_count(p) == 184756
    with pytest.raises(BudgetExceededError):
        search_rho(p, gf8)


def test_rho_not_found_error_message():
    err = RhoNotFoundError(8, 12345)
    assert "12345" in str(err) and "larger field" in str(err)


def test_report_is_deterministic(gf8):
    pc = build_parity_check(derive_params(5, 2, 3), gf8, 1)
    assert check_mds(pc) == check_mds(pc)
    assert check_mds(pc).to_dict() == check_mds(pc).to_dict()
