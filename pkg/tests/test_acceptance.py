"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line (printed in the terminal summary and
directly to stdout) and asserts at the stated tolerance.
"""

import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations

from conftest import ACCEPTANCE
from partialspread.bounds import (
    delta,
    ell,
    exact_or_range,
    lb_construction,
    theta,
    ub_drake_freeman,
    ub_lemma11,
)
from partialspread.construct import construct_partial_spread, min_subspace_distance, verify_partial_spread
from partialspread.errors import HypothesisNotMet
from partialspread.partition import (
    average_b1,
    check_hele0,
    check_hele1,
    descent_certificate,
    descent_select,
    empirical_average_b1,
    from_partial_spread,
    induce,
    validate_partition,
)
from partialspread.search import SearchConfig, max_partial_spread
from partialspread.space import subspace_distance

HELE_INSTANCES = [(2, 5, 2), (2, 6, 2), (2, 7, 3), (3, 4, 2), (3, 5, 2)]
CERT_GRID = [(q, n, t) for q in (2, 3, 4) for n in range(2, 31) for t in range(1, n)]


@contextmanager
def criterion(label):
    info = {"detail": ""}
    start = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        line = (label, False, f"{type(exc).__name__}: {exc}"[:200])
        ACCEPTANCE.append(line)
        print(f"FAIL {label}: {line[2]}")
        raise
    elapsed = time.perf_counter() - start
    detail = f"{info['detail']} ({elapsed:.1f}s)".strip()
    ACCEPTANCE.append((label, True, detail))
    print(f"PASS {label}: {detail}")


def test_c1_construction_size():
    with criterion("C1 construction size, q<=5 n<=12") as info:
        start = time.perf_counter()
        count = 0
        for q in (2, 3, 4, 5):
            for n in range(3, 13):
                for t in range(1, n):
                    r = n % t
                    want = (q**n - q ** (t + r)) // (q**t - 1) + 1
                    rep = verify_partial_spread(construct_partial_spread(q, n, t))
                    assert rep.size == want, (q, n, t, rep.size, want)
                    count += 1
        elapsed = time.perf_counter() - start
        assert elapsed < 60, f"took {elapsed:.1f}s"
        info["detail"] = f"{count} parameter points verified"


SEARCH_INSTANCES = [(2, 4, 2, 5), (2, 5, 2, 9), (2, 6, 2, 21), (2, 6, 3, 9), (2, 5, 3, 1), (3, 4, 2, 10)]


def test_c2_search_oracle():
    with criterion("C2 search oracle agrees with exact values") as info:
        slowest = 0.0
        for q, n, t, mu in SEARCH_INSTANCES:
            res = max_partial_spread(q, n, t, SearchConfig(use_paper_bounds=False))
            assert res.optimal, (q, n, t)
            assert res.size == mu == exact_or_range(q, n, t).exact, (q, n, t, res.size)
            assert verify_partial_spread(res.best).size == mu
            assert res.elapsed < 120, (q, n, t, res.elapsed)
            slowest = max(slowest, res.elapsed)
        info["detail"] = f"{len(SEARCH_INSTANCES)} instances optimal, slowest {slowest:.1f}s"


def test_c3_flagship_point():
    with criterion("C3 bounds at (2,8,3)") as info:
        assert ub_drake_freeman(2, 8, 3) == 34
        assert ub_lemma11(2, 8, 3) == 34
        rep = exact_or_range(2, 8, 3)
        assert rep.exact == 34 and "EJSSS_THM3" in rep.labels
        assert lb_construction(2, 8, 3) == 33
        size = verify_partial_spread(construct_partial_spread(2, 8, 3)).size
        assert size == 33 and rep.exact - size == 1
        info["detail"] = "DF=34 L11=34 exact=34 lb=33 constructed=33"


def test_c4_hele_identities():
    with criterion("C4 hyperplane identities") as info:
        start = time.perf_counter()
        checks = 0
        for q, n, t in HELE_INSTANCES:
            p = from_partial_spread(construct_partial_spread(q, n, t))
            checks += check_hele0(p).checked + check_hele1(p).checked
        elapsed = time.perf_counter() - start
        assert elapsed < 30, f"took {elapsed:.1f}s"
        info["detail"] = f"{checks} identity checks on {len(HELE_INSTANCES)} partitions"


def test_c5_averaging():
    with criterion("C5 averaging, selection, induction") as info:
        p = from_partial_spread(construct_partial_spread(2, 5, 2))
        assert p.type_vector == {2: 9, 1: 4}
        assert average_b1(p) == Fraction(60, 31)
        for q, n, t in HELE_INSTANCES:
            p = from_partial_spread(construct_partial_spread(q, n, t))
            avg = average_b1(p)
            assert avg == empirical_average_b1(p)
            chosen = descent_select(p)
            assert chosen.b.get(1, 0) <= avg
            validate_partition(induce(p, chosen.hyperplane))
        info["detail"] = f"{len(HELE_INSTANCES)} instances"


def test_c6_descent_grid():
    with criterion("C6 descent certificates, q<=4 n<=30") as info:
        start = time.perf_counter()
        passed = refused = 0
        for q, n, t in CERT_GRID:
            r = n % t
            applicable = r >= 1 and t > theta(q, r)
            try:
                cert = descent_certificate(q, n, t)
            except HypothesisNotMet:
                assert not applicable, (q, n, t)
                refused += 1
                continue
            assert applicable, (q, n, t)
            assert cert.verdict == "CONTRADICTION"
            assert cert.bound == lb_construction(q, n, t)
            passed += 1
        elapsed = time.perf_counter() - start
        assert elapsed < 10, f"took {elapsed:.1f}s"
        info["detail"] = f"{passed} certificates, {refused} refusals"


def test_c7_delta_theta_algebra():
    with criterion("C7 delta/theta algebra") as info:
        checks = 0
        for q in (2, 3, 4, 5, 7, 9):
            for i in range(1, 31):
                assert 1 + delta(q, i + 1) == q * delta(q, i)
                checks += 1
                if i >= 2:
                    assert 0 < delta(q, i) < q ** (i - 1)
                    checks += 1
        for q, n, t in CERT_GRID:
            r = n % t
            if r == 0 or t <= theta(q, r):
                continue
            n_t = ell(q, n, t) * q**t + 2
            n_1 = (theta(q, r) - 1) * q**t + delta(q, t + 1)
            assert theta(q, n) == n_t * theta(q, t) + n_1
            cert = descent_certificate(q, n, t)
            assert (cert.n_t, cert.n_1) == (n_t, n_1)
            checks += 1
        info["detail"] = f"{checks} equalities"


def test_c8_code_distance():
    with criterion("C8 minimum subspace distance 2t") as info:
        count = 0
        for q in (2, 3, 4, 5):
            for n in range(3, 13):
                for t in range(1, n // 2 + 1):
                    s = construct_partial_spread(q, n, t)
                    assert min_subspace_distance(s) == 2 * t, (q, n, t)
                    count += 1
        # pairwise linear algebra on the small cases, independent of point marking
        for q, n, t in [(2, 6, 2), (2, 7, 3), (3, 5, 2), (2, 8, 3), (4, 5, 2)]:
            mem = construct_partial_spread(q, n, t).members
            assert min(subspace_distance(a, b) for a, b in combinations(mem, 2)) == 2 * t
        info["detail"] = f"{count} spreads"
