"""Closed-form bounds on the maximum size of a partial t-spread of V(n, q).

Every function here is exact integer arithmetic.  ``exact_or_range`` combines
the individual results into a :class:`BoundsReport` that records which
results apply at a parameter point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .errors import BadParams, NotAPrimePower, NotApplicable
from .gf import prime_divisors

ANDRE_R0 = "ANDRE_R0"
BHP_R1 = "BHP_R1"
MAIN_THM5 = "MAIN_THM5"
EJSSS_THM3 = "EJSSS_THM3"
KURZ_THM4 = "KURZ_THM4"
DF_THM1 = "DF_THM1"
LEMMA11 = "LEMMA11"
TRIVIAL_SMALL_N = "TRIVIAL_SMALL_N"

EXACT_LABELS = (TRIVIAL_SMALL_N, ANDRE_R0, BHP_R1, MAIN_THM5, EJSSS_THM3, KURZ_THM4)
UPPER_LABELS = (LEMMA11, DF_THM1)


def theta(q: int, i: int) -> int:
    """Number of points of an i-dimensional subspace, (q^i - 1)/(q - 1)."""
    if i < 0:
        raise ValueError("i must be >= 0")
    return (q**i - 1) // (q - 1)


def delta(q: int, i: int) -> int:
    """(q^i - 2q^(i-1) + 1)/(q - 1)."""
    if i < 1:
        raise ValueError("i must be >= 1")
    num = q**i - 2 * q ** (i - 1) + 1
    assert num % (q - 1) == 0
    return num // (q - 1)


def _check(q: int, n: int, t: int) -> None:
    if q < 2 or not 1 <= t < n:
        raise BadParams(f"need q >= 2 and 1 <= t < n, got q={q} n={n} t={t}")
    if len(prime_divisors(q)) != 1:
        raise NotAPrimePower(f"{q} is not a prime power")


@dataclass(frozen=True)
class ParamSet:
    q: int
    n: int
    t: int

    def __post_init__(self) -> None:
        _check(self.q, self.n, self.t)

    @property
    def r(self) -> int:
        return self.n % self.t

    @property
    def k(self) -> int:
        return self.n // self.t


def ell(q: int, n: int, t: int) -> int:
    _check(q, n, t)
    r = n % t
    num = q ** (n - t) - q**r
    assert num % (q**t - 1) == 0
    return num // (q**t - 1)


def lb_construction(q: int, n: int, t: int) -> int:
    """ell * q^t + 1, the size reached by the recursive construction."""
    return ell(q, n, t) * q**t + 1


def drake_freeman_floor_omega(q: int, n: int, t: int) -> int:
    """floor(omega) with 2*omega = sqrt(4q^t(q^t - q^r) + 1) - (2q^t - 2q^r + 1).

    With s = isqrt(D), floor((sqrt(D) - B)/2) == (s - B) // 2 whether or not D
    is a perfect square, so no floating point is involved.
    """
    r = n % t
    x, y = q**t, q**r
    disc = 4 * x * (x - y) + 1
    b = 2 * x - 2 * y + 1
    return (isqrt(disc) - b) // 2


def ub_drake_freeman(q: int, n: int, t: int) -> int:
    _check(q, n, t)
    r = n % t
    if r == 0:
        raise NotApplicable("this bound needs t not dividing n")
    head = q**n - q**r
    assert head % (q**t - 1) == 0
    return head // (q**t - 1) - drake_freeman_floor_omega(q, n, t) - 1


def ub_lemma11(q: int, n: int, t: int) -> int:
    """ell * q^t + q, valid when r >= 2 and t = theta(q, r)."""
    _check(q, n, t)
    r = n % t
    if r < 2 or t != theta(q, r):
        raise NotApplicable(f"needs r >= 2 and t = theta_r (r={r}, t={t})")
    return ell(q, n, t) * q**t + q


@dataclass(frozen=True)
class Source:
    label: str
    value: int


@dataclass(frozen=True)
class BoundsReport:
    q: int
    n: int
    t: int
    lower: int
    upper: int
    exact: int | None
    provenance: tuple[Source, ...] = field(default=())

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.provenance]

    def provenance_text(self) -> str:
        parts = []
        for s in self.provenance:
            # exact sources and tight upper bounds print bare; DF always shows its value
            bare = s.label != DF_THM1 and (s.label in EXACT_LABELS or s.value == self.exact)
            parts.append(s.label if bare else f"{s.label}={s.value}")
        return ", ".join(parts)

    def row(self) -> str:
        if self.exact is not None:
            return f"mu={self.exact} exact [{self.provenance_text()}]"
        return f"mu in [{self.lower}, {self.upper}] [{self.provenance_text()}]"

    def machine_line(self) -> str:
        exact = "-" if self.exact is None else str(self.exact)
        prov = " ".join(f"{s.label}={s.value}" for s in self.provenance)
        return f"BOUND {self.q} {self.n} {self.t} {self.lower} {self.upper} {exact} {prov}".rstrip()


def exact_values(q: int, n: int, t: int) -> list[Source]:
    """All known results that pin down mu_q(n, t) exactly at this point."""
    _check(q, n, t)
    r = n % t
    lb = lb_construction(q, n, t)
    out = []
    if n < 2 * t:
        out.append(Source(TRIVIAL_SMALL_N, 1))
    if r == 0:
        out.append(Source(ANDRE_R0, (q**n - 1) // (q**t - 1)))
    if r == 1:
        out.append(Source(BHP_R1, lb))
    if r >= 1 and t > theta(q, r):
        out.append(Source(MAIN_THM5, lb))
    if q == 2 and t == 3 and r == 2 and n >= 8:
        out.append(Source(EJSSS_THM3, (2**n - 2**5) // 7 + 2))
    if q == 2 and r == 2 and t > 3:
        out.append(Source(KURZ_THM4, lb))
    return out


def upper_values(q: int, n: int, t: int) -> list[Source]:
    out = []
    for label, fn in ((LEMMA11, ub_lemma11), (DF_THM1, ub_drake_freeman)):
        try:
            out.append(Source(label, fn(q, n, t)))
        except NotApplicable:
            pass
    return out


def exact_or_range(q: int, n: int, t: int) -> BoundsReport:
    exacts = exact_values(q, n, t)
    uppers = upper_values(q, n, t)
    if exacts:
        values = {s.value for s in exacts}
        if len(values) != 1:
            raise AssertionError(f"conflicting exact values at {(q, n, t)}: {exacts}")
        (mu,) = values
        return BoundsReport(q, n, t, mu, mu, mu, tuple(exacts + uppers))
    lower = lb_construction(q, n, t)
    upper = min(s.value for s in uppers)
    return BoundsReport(q, n, t, lower, upper, None, tuple(uppers))
