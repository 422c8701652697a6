"""Subspace partitions of V(n, q) and their hyperplane statistics.

A subspace partition is a set of nonzero subspaces covering every nonzero
vector exactly once.  For a hyperplane H, ``b_H[d]`` counts the members of
dimension d contained in H; the histogram of these count vectors over all
hyperplanes obeys two exact counting identities which :func:`check_hele0`
and :func:`check_hele1` test.  :func:`descent_certificate` replays, with
integers only, the hyperplane-averaging descent that bounds the size of a
partial spread.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .bounds import delta, ell, theta
from .construct import PartialSpread, hole_points, verify_partial_spread
from .errors import CoverageError, CtxMismatch, HypothesisNotMet, IdentityViolation, OverlapError
from .space import (
    Subspace,
    VectorSpaceCtx,
    evaluate,
    hyperplanes,
    indices_of,
    normal_functional,
    point_vector,
    rref_canonical,
)


class SubspacePartition:
    def __init__(self, ctx: VectorSpaceCtx, members: Sequence[Subspace]) -> None:
        for w in members:
            if w.ctx != ctx:
                raise CtxMismatch(f"{w.ctx} != {ctx}")
        self.ctx = ctx
        self.members = list(members)

    @property
    def type_vector(self) -> dict[int, int]:
        """Map d -> number of d-dimensional members, largest d first."""
        counts = Counter(w.d for w in self.members)
        return dict(sorted(counts.items(), reverse=True))

    @property
    def dims(self) -> list[int]:
        return list(self.type_vector)

    def __len__(self) -> int:
        return len(self.members)

    def type_string(self) -> str:
        return "[" + ",".join(f"{d}^{k}" for d, k in self.type_vector.items()) + "]"

    def __repr__(self) -> str:
        return f"SubspacePartition({self.ctx}, type={self.type_string()})"


def from_partial_spread(spread: PartialSpread) -> SubspacePartition:
    """The spread's members plus every uncovered point as a 1-subspace."""
    verify_partial_spread(spread)
    ctx = spread.ctx
    holes = [rref_canonical(ctx, [point_vector(ctx, int(p))]) for p in hole_points(spread)]
    return SubspacePartition(ctx, spread.members + holes)


@dataclass
class PartitionReport:
    type_vector: dict[int, int]
    size: int

    def summary(self) -> str:
        body = ",".join(f"{d}^{k}" for d, k in self.type_vector.items())
        return f"partition type [{body}] size={self.size} OK"


def validate_partition(p: SubspacePartition) -> PartitionReport:
    covered = 0
    for i, w in enumerate(p.members):
        clash = covered & w.mask
        if clash:
            point = indices_of(clash & -clash)[0]
            j = next(k for k in range(i) if p.members[k].mask >> point & 1)
            raise OverlapError(j, i, point)
        covered |= w.mask
    full = (1 << p.ctx.num_points) - 1
    missing = full & ~covered
    if missing:
        raise CoverageError(indices_of(missing & -missing)[0])
    return PartitionReport(p.type_vector, len(p))


# ---------------------------------------------------------------------------
# Hyperplane profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HyperplaneProfile:
    hyperplane: Subspace
    b: dict[int, int]

    def vector(self, dims: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.b.get(d, 0) for d in dims)


def profile(p: SubspacePartition, h: Subspace) -> HyperplaneProfile:
    if h.ctx != p.ctx:
        raise CtxMismatch(f"{h.ctx} != {p.ctx}")
    hm = h.mask
    b = dict.fromkeys(p.dims, 0)
    for w in p.members:
        if w.mask & hm == w.mask:
            b[w.d] += 1
    return HyperplaneProfile(h, b)


def profiles(p: SubspacePartition) -> Iterator[HyperplaneProfile]:
    for h in hyperplanes(p.ctx):
        yield profile(p, h)


@dataclass
class ProfileHistogram:
    dims: list[int]
    counts: dict[tuple[int, ...], int] = field(default_factory=dict)

    def merge(self, other: "ProfileHistogram") -> "ProfileHistogram":
        assert self.dims == other.dims
        merged = Counter(self.counts)
        merged.update(other.counts)
        return ProfileHistogram(self.dims, dict(sorted(merged.items())))

    def lines(self) -> list[str]:
        return [
            f"s_b [{','.join(map(str, b))}] {c}" for b, c in sorted(self.counts.items())
        ]


def histogram(p: SubspacePartition) -> ProfileHistogram:
    dims = p.dims
    counts = Counter(prof.vector(dims) for prof in profiles(p))
    return ProfileHistogram(dims, dict(sorted(counts.items())))


@dataclass
class IdentityReport:
    name: str
    checked: int
    details: list[str]

    def summary(self) -> str:
        return f"{self.name}: {self.checked} checks OK"


def check_hele0(p: SubspacePartition) -> IdentityReport:
    """|P| = 1 + sum_d b_{H,d} q^d for every hyperplane H."""
    q = p.ctx.q
    size = len(p)
    count = 0
    for prof in profiles(p):
        rhs = 1 + sum(k * q**d for d, k in prof.b.items())
        if rhs != size:
            raise IdentityViolation(
                f"|P|={size} but 1 + sum b_H,d q^d = {rhs} at hyperplane "
                f"{normal_functional(prof.hyperplane)}"
            )
        count += 1
    return IdentityReport("hyperplane size identity", count, [])


def check_hele1(p: SubspacePartition) -> IdentityReport:
    """sum_b s_b = theta_n and sum_b b_d s_b = n_d theta_{n-d} for each d."""
    q, n = p.ctx.q, p.ctx.n
    hist = histogram(p)
    details = []
    total = sum(hist.counts.values())
    if total != theta(q, n):
        raise IdentityViolation(f"sum s_b = {total} != theta_n = {theta(q, n)}")
    details.append(f"sum s_b = {total} = theta_{n}")
    nd = p.type_vector
    for k, d in enumerate(hist.dims):
        lhs = sum(b[k] * s for b, s in hist.counts.items())
        rhs = nd[d] * theta(q, n - d)
        if lhs != rhs:
            raise IdentityViolation(f"d={d}: sum b_d s_b = {lhs} != n_d theta_(n-d) = {rhs}")
        details.append(f"d={d}: sum b_d s_b = {lhs} = {nd[d]}*theta_{n - d}")
    return IdentityReport("hyperplane histogram identities", 1 + len(hist.dims), details)


# ---------------------------------------------------------------------------
# Averaging descent on concrete partitions
# ---------------------------------------------------------------------------


def average_b1(p: SubspacePartition) -> Fraction:
    """Mean of b_{H,1} over all hyperplanes: n_1 theta_{n-1} / theta_n."""
    q, n = p.ctx.q, p.ctx.n
    n1 = p.type_vector.get(1, 0)
    return Fraction(n1 * theta(q, n - 1), theta(q, n))


def empirical_average_b1(p: SubspacePartition) -> Fraction:
    values = [prof.b.get(1, 0) for prof in profiles(p)]
    return Fraction(sum(values), len(values))


def descent_select(p: SubspacePartition) -> HyperplaneProfile:
    """First hyperplane (canonical order) with b_{H,1} <= the average."""
    avg = average_b1(p)
    for prof in profiles(p):
        if prof.b.get(1, 0) <= avg:
            return prof
    raise AssertionError("no hyperplane at or below the mean")


def induce(p: SubspacePartition, h: Subspace) -> SubspacePartition:
    """Intersect every member with H and rewrite the result in H's own frame.

    A vector of H is given coordinates by reading it at H's pivot columns,
    which identifies H with V(n-1, q).  Members meeting H trivially vanish.
    """
    if h.ctx != p.ctx:
        raise CtxMismatch(f"{h.ctx} != {p.ctx}")
    ctx = p.ctx
    f = ctx.field
    fn = normal_functional(h)
    sub = VectorSpaceCtx(f, ctx.n - 1)
    out = []
    for w in p.members:
        vals = [evaluate(f, fn, row) for row in w.rows]
        k = next((i for i, v in enumerate(vals) if v), None)
        if k is None:
            rows = list(w.rows)
        else:
            inv = f.inv(vals[k])
            rows = []
            for i, row in enumerate(w.rows):
                if i == k:
                    continue
                c = f.mul(vals[i], inv)
                rows.append(tuple(f.sub(x, f.mul(c, y)) for x, y in zip(row, w.rows[k])))
        if not rows:
            continue
        framed = [tuple(row[j] for j in h.pivots) for row in rows]
        out.append(rref_canonical(sub, framed))
    return SubspacePartition(sub, out)


@dataclass
class DescentStepResult:
    partition: SubspacePartition
    chosen: HyperplaneProfile
    average: Fraction


def descend(p: SubspacePartition, steps: int) -> list[DescentStepResult]:
    """Run select-then-induce ``steps`` times on a concrete partition."""
    out = []
    for _ in range(steps):
        if p.ctx.n < 2:
            break
        avg = average_b1(p)
        chosen = descent_select(p)
        out.append(DescentStepResult(p, chosen, avg))
        p = induce(p, chosen.hyperplane)
    return out


# ---------------------------------------------------------------------------
# Arithmetic certificate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DescentState:
    """Bookkeeping after j descent steps.

    ``c_max`` bounds the coefficient c_j in m_{j,1} = c_j q^(t-j) + delta_(t+1-j);
    the members of dimension t-j..t always number ``n_t`` in total.
    """

    j: int
    n_eff: int
    dims: tuple[int, ...]
    n_t: int
    c_max: int
    m1_residue: int
    m1_modulus: int

    def m1(self, c: int) -> int:
        return c * self.m1_modulus + self.m1_residue


@dataclass
class DescentCertificate:
    q: int
    n: int
    t: int
    r: int
    ell: int
    n_t: int
    n_1: int
    states: list[DescentState]
    checks: int
    trace: list[str]
    verdict: str
    bound: int


class _Checker:
    def __init__(self) -> None:
        self.count = 0
        self.trace: list[str] = []

    def __call__(self, ok: bool, what: str) -> None:
        self.count += 1
        if not ok:
            raise IdentityViolation(what)

    def log(self, line: str) -> None:
        self.trace.append(line)


def descent_certificate(q: int, n: int, t: int) -> DescentCertificate:
    """Check every arithmetic step refuting a partial spread of size ell q^t + 2.

    Assumes only a hypothetical partition of type [t^(ell q^t + 2), 1^n_1];
    nothing is constructed.  Raises ``HypothesisNotMet`` unless r = n mod t
    is at least 1 and t > theta_r.
    """
    if not 1 <= t < n:
        raise HypothesisNotMet(f"need 1 <= t < n (t={t}, n={n})")
    r = n % t
    if r == 0:
        raise HypothesisNotMet("r = n mod t = 0")
    th_r = theta(q, r)
    if t <= th_r:
        raise HypothesisNotMet(f"t = {t} <= theta_r = {th_r}")

    chk = _Checker()
    L = ell(q, n, t)
    n_t = L * q**t + 2
    n_1 = (th_r - 1) * q**t + delta(q, t + 1)
    chk(n_1 == (th_r - 1) * q**t + (q ** (t + 1) - 2 * q**t + 1) // (q - 1), "n_1 closed forms agree")
    chk(theta(q, n) == n_t * theta(q, t) + n_1, "theta_n = n_t theta_t + n_1")
    chk(L * q**t + 1 == (q**n - q ** (t + r)) // (q**t - 1) + 1, "ell q^t + 1 matches the lower bound")
    chk.log(f"q={q} n={n} t={t} r={r} theta_r={th_r} ell={L}")
    chk.log(f"assume a partition of type [{t}^{n_t},1^{n_1}] (partial spread of size ell q^t + 2)")
    chk.log(f"theta_{n} = {theta(q, n)} = {n_t}*{theta(q, t)} + {n_1}")

    states = []
    c_max = th_r - 1
    for j in range(0, th_r - 1):
        mod = q ** (t - j)
        res = delta(q, t + 1 - j)
        state = DescentState(j, n - j, tuple(range(t, t - j - 1, -1)) + (1,), n_t, c_max, res, mod)
        states.append(state)
        chk(t - j > 2, f"j={j}: t-j > 2 so no member drops to dimension 1")
        sub_mod = q ** (t - j - 1)
        target = delta(q, t - j)
        chk(0 < target < sub_mod, f"j={j}: 0 < delta_(t-j) < q^(t-j-1)")
        chk(1 + delta(q, t + 1 - j) == q * target, f"j={j}: 1 + delta_(t+1-j) = q delta_(t-j)")
        for c in range(0, c_max + 1):
            m1 = state.m1(c)
            size = n_t + m1
            chk(size == 1 + L * q**t + c * mod + q * target, f"j={j} c={c}: |P_j| = 1 + ell q^t + c q^(t-j) + q delta")
            chk((size - 1) % q == 0, f"j={j} c={c}: |P_j| - 1 divisible by q")
            reduced = (size - 1) // q
            chk(reduced == L * q ** (t - 1) + c * sub_mod + target, f"j={j} c={c}: reduced identity")
            chk(reduced % sub_mod == target, f"j={j} c={c}: b_H,1 = delta_(t-j) mod q^(t-j-1)")
            avg = Fraction(m1 * theta(q, n - 1 - j), theta(q, n - j))
            chk(avg < Fraction(m1, q), f"j={j} c={c}: average < m_1 / q")
            chk(Fraction(m1, q) < c * sub_mod + target, f"j={j} c={c}: m_1 / q < c q^(t-j-1) + delta_(t-j)")
            # admissible b: b <= avg, b = target mod sub_mod, b >= 0
            top = (avg.numerator // avg.denominator - target) // sub_mod if avg >= target else -1
            chk(top <= c - 1, f"j={j} c={c}: next coefficient at most c-1")
        chk(c_max - 1 == th_r - 2 - j, f"j={j}: c_(j+1) <= theta_r - 2 - j")
        chk.log(
            f"j={j}: n_eff={n - j} m_1 = c*{mod} + {res}, 0 <= c <= {c_max}; "
            f"mean b_H,1 < c*{sub_mod} + {target}, b_H,1 = {target} mod {sub_mod} => c' <= {c_max - 1}"
        )
        c_max -= 1

    j = th_r - 1
    chk(c_max == 0, "coefficient range exhausted at the last step")
    m1 = delta(q, t + 2 - th_r)
    last = delta(q, t + 1 - th_r)
    mod = q ** (t - th_r)
    states.append(DescentState(j, n - j, tuple(range(t, t - j - 1, -1)) + (1,), n_t, 0, m1, q ** (t + 1 - th_r)))
    chk(t - th_r >= 1, "t - theta_r >= 1")
    chk(n_t + m1 == 1 + L * q**t + q * last, "|P| = 1 + ell q^t + q delta_(t+1-theta_r)")
    reduced = (n_t + m1 - 1) // q
    chk(reduced == L * q ** (t - 1) + last, "reduced terminal identity")
    chk(reduced % mod == last % mod and last < mod, "b_H*,1 = delta_(t+1-theta_r) mod q^(t-theta_r)")
    avg = Fraction(m1 * theta(q, n - th_r), theta(q, n - th_r + 1))
    chk(avg < Fraction(m1, q) < last, "mean b_H,1 < delta_(t+2-theta_r)/q < delta_(t+1-theta_r)")
    floor_avg = avg.numerator // avg.denominator
    # congruence forces b >= last, averaging forces b <= floor(avg) < last
    chk(floor_avg < last, "some hyperplane has b_H,1 < delta_(t+1-theta_r)")
    smallest_admissible = last
    chk(smallest_admissible > floor_avg, "no admissible value of b_H,1")
    bound = L * q**t + 1
    chk.log(
        f"j={j}: n_eff={n - j} m_1 = {m1}; mean b_H,1 = {avg} ({float(avg):.4f}) < {last}, "
        f"but b_H,1 = {last} mod {mod} forces b_H,1 >= {last}"
    )
    chk.log(f"CONTRADICTION ⇒ mu ≤ {bound}")
    return DescentCertificate(
        q=q, n=n, t=t, r=r, ell=L, n_t=n_t, n_1=n_1, states=states,
        checks=chk.count, trace=chk.trace, verdict="CONTRADICTION", bound=bound,
    )
