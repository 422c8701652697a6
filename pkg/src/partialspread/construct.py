"""Partial t-spreads: construction, verification and the spread file format.

A :class:`PartialSpread` keeps its members as one stacked integer array so
that spreads with tens of millions of members stay cheap to build and check.
Members are materialised as :class:`~partialspread.space.Subspace` objects
only on request.

Spread file format (UTF-8, one record per line, ``#`` starts a comment)::

    q=2 n=7 t=3
    1 0 0 1 0 0 0; 0 1 0 0 1 0 0; 0 0 1 0 0 1 0
    ...

Each member line lists its RREF basis rows separated by ``;``.
"""

from __future__ import annotations

import io
import os
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence, TextIO

import numpy as np

from . import _kernels
from .bounds import lb_construction, theta
from .errors import (
    BadParams,
    CtxMismatch,
    DimensionError,
    FormatError,
    OverlapError,
    TooFewMembers,
)
from .gf import ExtFieldSpec, field_new
from .space import Subspace, VectorSpaceCtx, rref, subspace_distance


def _dtype(q: int):
    return np.uint8 if q <= 256 else np.uint16


class PartialSpread:
    """A list of subspaces of V(n, q) meant to be pairwise trivially intersecting.

    ``bases`` has shape ``(N, D, n)``: member i is the set of nonzero rows of
    ``bases[i]``, which must be in RREF.  Nothing is validated on
    construction; use :func:`verify_partial_spread`.
    """

    def __init__(self, ctx: VectorSpaceCtx, t: int, bases: np.ndarray) -> None:
        if bases.ndim != 3 or bases.shape[2] != ctx.n:
            raise ValueError(f"bases must have shape (N, D, {ctx.n})")
        self.ctx = ctx
        self.t = t
        self.bases = bases

    @classmethod
    def from_subspaces(cls, ctx: VectorSpaceCtx, t: int, members: Sequence[Subspace]) -> "PartialSpread":
        for s in members:
            if s.ctx != ctx:
                raise CtxMismatch(f"{s.ctx} != {ctx}")
        depth = max([t] + [s.d for s in members])
        bases = np.zeros((len(members), depth, ctx.n), dtype=_dtype(ctx.q))
        for i, s in enumerate(members):
            if s.d:
                bases[i, : s.d] = s.rows
        return cls(ctx, t, bases)

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def n(self) -> int:
        return self.ctx.n

    def __len__(self) -> int:
        return self.bases.shape[0]

    def member(self, i: int) -> Subspace:
        rows = [tuple(int(x) for x in r) for r in self.bases[i] if r.any()]
        _, pivots = rref(self.ctx.field, rows)
        return Subspace(self.ctx, tuple(rows), pivots)

    def __iter__(self) -> Iterator[Subspace]:
        for i in range(len(self)):
            yield self.member(i)

    @property
    def members(self) -> list[Subspace]:
        return list(self)

    def append(self, s: Subspace) -> "PartialSpread":
        """A new spread with ``s`` added at the end."""
        return PartialSpread.from_subspaces(self.ctx, self.t, self.members + [s])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PartialSpread)
            and self.ctx == other.ctx
            and self.t == other.t
            and self.bases.shape == other.bases.shape
            and bool(np.array_equal(self.bases, other.bases))
        )

    def __repr__(self) -> str:
        return f"PartialSpread(q={self.q}, n={self.n}, t={self.t}, size={len(self)})"


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def construct_partial_spread(q: int, n: int, t: int) -> PartialSpread:
    """Partial t-spread of V(n, q) of size ell * q^t + 1.

    While the current frame has dimension s >= 2t, view it as U x F_{q^m}
    with m = s - t and U = span(1, z, ..., z^(t-1)) inside F_{q^m}; emit the
    graphs {(x, a x) : x in U} for every a, then recurse into {0} x F_{q^m}.
    A frame with t <= s < 2t contributes U x {0}.
    """
    if not 1 <= t < n:
        raise BadParams(f"need 1 <= t < n, got t={t} n={n}")
    f = field_new(q)
    ctx = VectorSpaceCtx(f, n)
    levels = []
    s = n
    while s >= 2 * t:
        levels.append(s - t)
        s -= t
    size = sum(q**m for m in levels) + 1
    assert size == lb_construction(q, n, t)
    bases = np.zeros((size, t, n), dtype=_dtype(q))
    add, mul, neg = f.add_table, f.mul_table, f.neg_table
    start = offset = 0
    for m in levels:
        ext = ExtFieldSpec(f, m)
        modulus = np.array(ext.modulus, dtype=np.int64)
        _kernels.fill_graph_members(bases, start, offset, t, m, q, modulus, add, mul, neg)
        start += q**m
        offset += t
    for i in range(t):
        bases[start, i, offset + i] = 1
    return PartialSpread(ctx, t, bases)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass
class SpreadReport:
    q: int
    n: int
    t: int
    size: int
    holes: int
    hole_points: np.ndarray
    min_distance: int | None

    def summary(self) -> str:
        dist = "-" if self.min_distance is None else str(self.min_distance)
        return f"size={self.size} holes={self.holes} min_dist={dist} OK"


def _ranks(spread: PartialSpread) -> np.ndarray:
    ranks = np.zeros(len(spread), dtype=np.int64)
    bad = _kernels.check_rref(spread.bases, ranks)
    if bad >= 0:
        raise FormatError(f"member {bad} is not in reduced row-echelon form")
    return ranks


def _tables(spread: PartialSpread):
    q, n = spread.q, spread.n
    theta_tab = np.array([theta(q, i) for i in range(n + 1)], dtype=np.int64)
    pow_tab = np.array([q**i for i in range(n + 1)], dtype=np.int64)
    return spread.ctx.field.add_table, spread.ctx.field.mul_table, q, theta_tab, pow_tab


# points generated per batch, and log2 of the bit-set window (1 MiB) they are sorted into
_BLOCK = 1 << 22
_WINDOW_SHIFT = 23


def _cover(spread: PartialSpread, ranks: np.ndarray) -> tuple[np.ndarray, OverlapError | None]:
    """Bit set of covered points, plus the first overlap in member order."""
    add, mul, q, theta_tab, pow_tab = _tables(spread)
    seen = np.zeros((spread.ctx.num_points + 63) // 64, dtype=np.uint64)
    block = max(_BLOCK, int(theta_tab[spread.bases.shape[1]]))
    repeated = _kernels.mark_points_bucketed(
        spread.bases, ranks, add, mul, q, seen, theta_tab, pow_tab, block, _WINDOW_SHIFT
    )
    if not repeated:
        return seen, None
    # locate the first collision in member order with the plain walk
    seen[:] = 0
    second, point = _kernels.cover_points(
        spread.bases, ranks, add, mul, q, seen, theta_tab, pow_tab, -1
    )
    if second < 0:
        return seen, None
    first, _ = _kernels.cover_points(
        spread.bases[:second], ranks[:second], add, mul, q, seen, theta_tab, pow_tab, point
    )
    return seen, OverlapError(int(first), int(second), int(point))


def hole_points(spread: PartialSpread) -> np.ndarray:
    """Sorted indices of points not covered by any member."""
    seen, _ = _cover(spread, _ranks(spread))
    return _kernels.unset_bits(seen, spread.ctx.num_points)


def verify_partial_spread(spread: PartialSpread) -> SpreadReport:
    """Check that all members are t-dimensional and pairwise disjoint.

    Raises ``DimensionError`` or ``OverlapError`` with the first witness in
    member order.
    """
    ranks = _ranks(spread)
    wrong = np.flatnonzero(ranks != spread.t)
    if wrong.size:
        i = int(wrong[0])
        raise DimensionError(i, int(ranks[i]), spread.t)
    seen, overlap = _cover(spread, ranks)
    if overlap is not None:
        raise overlap
    holes = _kernels.unset_bits(seen, spread.ctx.num_points)
    size = len(spread)
    assert size * theta(spread.q, spread.t) + holes.size == spread.ctx.num_points
    return SpreadReport(
        q=spread.q,
        n=spread.n,
        t=spread.t,
        size=size,
        holes=int(holes.size),
        hole_points=holes,
        min_distance=2 * spread.t if size >= 2 else None,
    )


def min_subspace_distance(code: PartialSpread | Sequence[Subspace]) -> int:
    """Minimum of dim U + dim W - 2 dim(U & W) over pairs of distinct positions.

    For a stacked spread, members that share no point are at distance
    dim U + dim W; pairwise linear algebra is only used when some point is
    covered twice.
    """
    if isinstance(code, PartialSpread):
        if len(code) < 2:
            raise TooFewMembers("need at least two members")
        ranks = _ranks(code)
        _, overlap = _cover(code, ranks)
        if overlap is None:
            two = np.partition(ranks, 1)[:2]
            return int(two[0] + two[1])
        code = code.members
    code = list(code)
    if len(code) < 2:
        raise TooFewMembers("need at least two members")
    return min(subspace_distance(a, b) for a, b in combinations(code, 2))


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------

_HEADER = re.compile(r"^q=(\d+)\s+n=(\d+)\s+t=(\d+)$")


def format_member(rows: np.ndarray) -> str:
    return "; ".join(" ".join(str(int(x)) for x in r) for r in rows if r.any())


def write_spread(spread: PartialSpread, out: str | os.PathLike | TextIO) -> None:
    if isinstance(out, (str, os.PathLike)):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            write_spread(spread, fh)
        return
    out.write(f"q={spread.q} n={spread.n} t={spread.t}\n")
    for i in range(len(spread)):
        out.write(format_member(spread.bases[i]))
        out.write("\n")


def dumps_spread(spread: PartialSpread) -> str:
    buf = io.StringIO()
    write_spread(spread, buf)
    return buf.getvalue()


def loads_spread(text: str) -> PartialSpread:
    header = None
    members: list[Subspace] = []
    ctx = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise FormatError(f"line {lineno}: expected 'q=<int> n=<int> t=<int>'")
            header = tuple(int(x) for x in m.groups())
            q, n, t = header
            ctx = VectorSpaceCtx(field_new(q), n)
            continue
        q, n, t = header
        rows = []
        for part in line.split(";"):
            try:
                row = tuple(int(x) for x in part.split())
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer entry") from None
            if len(row) != n or any(not 0 <= x < q for x in row):
                raise FormatError(f"line {lineno}: each vector needs {n} entries in [0,{q})")
            rows.append(row)
        canon, pivots = rref(ctx.field, rows)
        if tuple(rows) != canon:
            raise FormatError(f"line {lineno}: basis is not in canonical RREF")
        members.append(Subspace(ctx, canon, pivots))
    if header is None:
        raise FormatError("missing header line")
    return PartialSpread.from_subspaces(ctx, header[2], members)


def read_spread(path: str | os.PathLike) -> PartialSpread:
    with open(path, encoding="utf-8") as fh:
        return loads_spread(fh.read())
