from fractions import Fraction

import pytest

from partialspread.bounds import delta, ell, theta
from partialspread.construct import construct_partial_spread
from partialspread.errors import CoverageError, HypothesisNotMet, OverlapError
from partialspread.partition import (
    SubspacePartition,
    average_b1,
    check_hele0,
    check_hele1,
    descend,
    descent_certificate,
    descent_select,
    empirical_average_b1,
    from_partial_spread,
    histogram,
    induce,
    profile,
    profiles,
    validate_partition,
)
from partialspread.space import VectorSpaceCtx, coordinate_span, hyperplanes


@pytest.fixture(scope="module")
def p52():
    return from_partial_spread(construct_partial_spread(2, 5, 2))


def test_from_partial_spread_examples(p52):
    full = from_partial_spread(construct_partial_spread(2, 6, 2))
    assert full.type_vector == {2: 21}
    assert p52.type_vector == {2: 9, 1: 4}
    assert p52.type_string() == "[2^9,1^4]"
    ctx = VectorSpaceCtx.of(3, 4)
    single = construct_partial_spread(3, 4, 3)
    assert from_partial_spread(single).type_vector == {3: 1, 1: theta(3, 4) - theta(3, 3)}
    assert validate_partition(full).size == 21


def test_validate_detects_overlap_and_gap(p52):
    twice = SubspacePartition(p52.ctx, p52.members + [p52.members[0]])
    with pytest.raises(OverlapError):
        validate_partition(twice)
    drop = [w for w in p52.members if w.d == 1][0]
    missing = SubspacePartition(p52.ctx, [w for w in p52.members if w is not drop])
    with pytest.raises(CoverageError) as exc:
        validate_partition(missing)
    assert exc.value.point == drop.points[0]


def test_profiles_examples(p52):
    for prof in profiles(p52):
        b1, b2 = prof.b[1], prof.b[2]
        assert 2 * b1 + 4 * b2 == 12
        assert (b1, b2) in {(0, 3), (2, 2), (4, 1)}
    w = p52.members[0]
    for h in hyperplanes(p52.ctx):
        if set(w.points) <= set(h.points):
            assert profile(p52, h).b[2] >= 1
    full = from_partial_spread(construct_partial_spread(2, 6, 2))
    assert all(prof.b.get(1, 0) == 0 for prof in profiles(full))


def test_hele_identities(p52):
    assert check_hele0(p52).checked == 31
    rep = check_hele1(p52)
    assert rep.details == [
        "sum s_b = 31 = theta_5",
        "d=2: sum b_d s_b = 63 = 9*theta_3",
        "d=1: sum b_d s_b = 60 = 4*theta_4",
    ]
    full = from_partial_spread(construct_partial_spread(2, 4, 2))
    check_hele0(full)
    assert all(prof.b[2] == 1 for prof in profiles(full))
    assert [l for l in histogram(p52).lines()] == ["s_b [1,4] 3", "s_b [2,2] 24", "s_b [3,0] 4"]


def test_histogram_merge(p52):
    h = histogram(p52)
    merged = h.merge(h)
    assert sum(merged.counts.values()) == 62


def test_average_examples(p52):
    assert average_b1(p52) == Fraction(60, 31) == empirical_average_b1(p52)
    full = from_partial_spread(construct_partial_spread(2, 6, 2))
    assert average_b1(full) == 0
    chosen = descent_select(full)
    assert chosen.hyperplane == next(iter(hyperplanes(full.ctx)))
    sel = descent_select(p52)
    assert sel.b[1] <= Fraction(60, 31)
    assert descent_select(p52).hyperplane == sel.hyperplane


@pytest.mark.parametrize("q,n,t", [(2, 5, 2), (2, 7, 3), (3, 5, 2), (2, 6, 3)])
def test_average_envelope(q, n, t):
    p = from_partial_spread(construct_partial_spread(q, n, t))
    n1 = p.type_vector.get(1, 0)
    assert average_b1(p) < Fraction(n1, q) + 1


def test_induce_examples():
    full = from_partial_spread(construct_partial_spread(2, 4, 2))
    for h in hyperplanes(full.ctx):
        sub = induce(full, h)
        assert sub.ctx.n == 3
        assert sub.type_vector == {2: 1, 1: 4}
        validate_partition(sub)
        again = induce(sub, next(iter(hyperplanes(sub.ctx))))
        validate_partition(again)


def test_induce_keeps_higher_members():
    p = from_partial_spread(construct_partial_spread(2, 8, 4))
    before = sum(k for d, k in p.type_vector.items() if d >= 2)
    h = descent_select(p).hyperplane
    after = induce(p, h)
    validate_partition(after)
    assert sum(k for d, k in after.type_vector.items() if d >= 2) == before


def test_descend_runs_and_stays_valid(p52):
    steps = descend(p52, 3)
    assert len(steps) == 3
    for s in steps:
        validate_partition(s.partition)
        assert s.chosen.b.get(1, 0) <= s.average


def test_descent_certificate_examples():
    cert = descent_certificate(2, 10, 4)
    assert (cert.n_t, cert.n_1, cert.bound) == (66, 33, 65)
    assert theta(2, 10) == 66 * theta(2, 4) + 33
    assert cert.verdict == "CONTRADICTION"
    assert cert.trace[-1] == "CONTRADICTION ⇒ mu ≤ 65"
    cert = descent_certificate(3, 7, 2)
    assert cert.bound == 271 == ell(3, 7, 2) * 9 + 1
    with pytest.raises(HypothesisNotMet):
        descent_certificate(2, 8, 3)
    with pytest.raises(HypothesisNotMet):
        descent_certificate(2, 8, 4)


def test_certificate_bookkeeping():
    for q in (2, 3, 4):
        for n in range(3, 31):
            for t in range(2, n):
                r = n % t
                if r == 0 or t <= theta(q, r):
                    continue
                cert = descent_certificate(q, n, t)
                assert cert.n_t == ell(q, n, t) * q**t + 2
                assert cert.n_1 == (theta(q, r) - 1) * q**t + delta(q, t + 1)
                assert theta(q, n) == cert.n_t * theta(q, t) + cert.n_1
                assert cert.states[0].n_t == cert.n_t
