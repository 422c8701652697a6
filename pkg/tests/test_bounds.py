import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from partialspread.bounds import (
    ANDRE_R0,
    DF_THM1,
    EJSSS_THM3,
    LEMMA11,
    MAIN_THM5,
    ParamSet,
    delta,
    drake_freeman_floor_omega,
    ell,
    exact_or_range,
    lb_construction,
    theta,
    ub_drake_freeman,
    ub_lemma11,
)
from partialspread.errors import BadParams, NotApplicable

GRID = [(q, n, t) for q in (2, 3, 4, 5) for n in range(2, 21) for t in range(1, n)]


def test_theta_delta_examples():
    assert theta(2, 3) == 7
    assert theta(3, 2) == 4
    assert all(theta(q, 1) == 1 for q in (2, 3, 4, 5, 7))
    assert all(delta(2, i) == 1 for i in range(1, 20))
    assert delta(3, 2) == 2
    assert delta(5, 3) == 19


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_delta_recurrence_and_range(q):
    for i in range(1, 31):
        assert 1 + delta(q, i + 1) == q * delta(q, i)
        if i >= 2:
            assert 0 < delta(q, i) < q ** (i - 1)


def test_ell_and_construction_examples():
    assert ell(2, 5, 2) == 2
    assert ell(2, 8, 3) == 4
    assert ell(3, 7, 2) == 30
    assert lb_construction(2, 5, 2) == 9
    assert lb_construction(2, 8, 3) == 33
    assert lb_construction(2, 6, 2) == 21


def test_df_bound_examples():
    assert drake_freeman_floor_omega(2, 8, 3) == 1
    assert ub_drake_freeman(2, 8, 3) == 34
    assert ub_drake_freeman(2, 7, 3) == 17
    assert ub_drake_freeman(3, 5, 2) == 29
    with pytest.raises(NotApplicable):
        ub_drake_freeman(2, 6, 2)


@pytest.mark.parametrize("q,n,t", [p for p in GRID if p[1] % p[2]])
def test_floor_omega_matches_high_precision_float(q, n, t):
    r = n % t
    x, y = q**t, q**r
    disc = 4 * x * (x - y) + 1
    b = 2 * x - 2 * y + 1
    # Decimal-free oracle: bracket sqrt by exact squares of the candidate floor
    w = drake_freeman_floor_omega(q, n, t)
    assert (2 * w + b) ** 2 <= disc < (2 * w + 2 + b) ** 2
    if disc < 2**50:
        assert w == math.floor((math.sqrt(disc) - b) / 2)


def test_theta_r_bound_examples():
    assert ub_lemma11(2, 8, 3) == 34
    assert ub_lemma11(3, 10, 4) == 732
    # strictly better than the shape ell q^t + ceil(q^r / 2)
    assert 732 < ell(3, 10, 4) * 81 + math.ceil(9 / 2)
    with pytest.raises(NotApplicable):
        ub_lemma11(2, 10, 4)


def test_exact_or_range_examples():
    rep = exact_or_range(2, 8, 3)
    assert rep.exact == 34 and EJSSS_THM3 in rep.labels and LEMMA11 in rep.labels
    assert rep.row() == "mu=34 exact [EJSSS_THM3, LEMMA11, DF_THM1=34]"
    rep = exact_or_range(2, 10, 4)
    assert rep.exact == 65 and MAIN_THM5 in rep.labels
    rep = exact_or_range(3, 11, 4)
    assert rep.exact is None and rep.lower == 2188
    assert rep.upper == ub_drake_freeman(3, 11, 4)
    assert exact_or_range(2, 6, 2).labels[0] == ANDRE_R0


def test_bad_params():
    with pytest.raises(BadParams):
        ParamSet(2, 3, 3)
    with pytest.raises(BadParams):
        ell(2, 3, 0)
    assert ParamSet(2, 8, 3).r == 2 and ParamSet(2, 8, 3).k == 2


@pytest.mark.parametrize("q,n,t", GRID)
def test_grid_invariants(q, n, t):
    rep = exact_or_range(q, n, t)
    assert rep.lower <= rep.upper
    assert rep.lower >= lb_construction(q, n, t) or n < 2 * t
    # counting bound: no more members than points allow
    assert rep.upper <= theta(q, n) // theta(q, t)
    if rep.exact is not None:
        try:
            assert rep.exact <= ub_drake_freeman(q, n, t)
        except NotApplicable:
            pass
    labels = rep.labels
    r = n % t
    if r >= 1 and t > theta(q, r):
        assert MAIN_THM5 in labels
    if r == 0:
        assert ANDRE_R0 in labels
    if r:
        assert DF_THM1 in labels


@pytest.mark.parametrize("q,n,t", [p for p in GRID if p[1] % p[2]])
def test_df_bound_ceiling_form(q, n, t):
    """DF equals ell q^t + q^r - ceil(omega) whenever it is defined."""
    r = n % t
    x, y = q**t, q**r
    w = drake_freeman_floor_omega(q, n, t)
    disc = 4 * x * (x - y) + 1
    b = 2 * x - 2 * y + 1
    ceil_w = w if (2 * w + b) ** 2 == disc else w + 1
    assert ub_drake_freeman(q, n, t) == ell(q, n, t) * x + y - ceil_w


@pytest.mark.parametrize("q,n,t", [p for p in GRID if p[0] == 2 and p[1] % p[2] == 2 and p[2] > 3])
def test_q2_r2_family_is_covered_by_general_case(q, n, t):
    assert MAIN_THM5 in exact_or_range(q, n, t).labels


@given(st.sampled_from([2, 3, 4, 5, 7]), st.integers(2, 40), st.integers(1, 39))
def test_ell_is_integral_and_construction_counts_fit(q, n, t):
    if t >= n:
        return
    lb = lb_construction(q, n, t)
    assert Fraction(q ** (n - t) - q ** (n % t), q**t - 1).denominator == 1
    assert lb * theta(q, t) <= theta(q, n)
