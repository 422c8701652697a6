"""Vectors and subspaces of V(n, q) in canonical reduced row-echelon form.

Points (1-subspaces) are numbered by their canonical representative, the
vector whose first nonzero coordinate is 1.  Representatives are ranked in
lexicographic order of their coordinate tuples, so a representative whose
leading 1 sits at position ``p`` gets index ``theta(L) + tail`` where
``L = n - 1 - p`` and ``tail`` reads the coordinates after ``p`` as a base-q
number (first coordinate most significant).

Sets of points are carried as Python ints used as bit sets: bit ``i`` is set
when point ``i`` is in the set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .bounds import theta
from .errors import CtxMismatch, DimensionZero
from .gf import FieldSpec, field_new

Vector = tuple[int, ...]


@dataclass(frozen=True)
class VectorSpaceCtx:
    field: FieldSpec
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("ambient dimension must be >= 1")

    @classmethod
    def of(cls, q: int, n: int) -> "VectorSpaceCtx":
        return cls(field_new(q), n)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def num_points(self) -> int:
        return theta(self.q, self.n)

    @property
    def num_nonzero(self) -> int:
        return self.q**self.n - 1

    def __repr__(self) -> str:
        return f"V({self.n},{self.q})"


# ---------------------------------------------------------------------------
# Row reduction
# ---------------------------------------------------------------------------


def rref(f: FieldSpec, rows: Iterable[Sequence[int]]) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Reduced row-echelon form of ``rows``; zero rows are dropped."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        sel = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if sel is None:
            continue
        m[rank], m[sel] = m[sel], m[rank]
        row = m[rank]
        if row[col] != 1:
            c = f.inv(row[col])
            row[:] = [f.mul(c, x) for x in row]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                c = m[i][col]
                other = m[i]
                other[:] = [f.sub(x, f.mul(c, y)) for x, y in zip(other, row)]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    return tuple(tuple(r) for r in m[:rank]), tuple(pivots)


def rank(f: FieldSpec, rows: Iterable[Sequence[int]]) -> int:
    return len(rref(f, rows)[1])


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


def normalize(ctx: VectorSpaceCtx, v: Sequence[int]) -> Vector:
    """Scale ``v`` so its first nonzero coordinate is 1."""
    f = ctx.field
    lead = next((x for x in v if x), None)
    if lead is None:
        raise DimensionZero("the zero vector is not a point")
    if lead == 1:
        return tuple(v)
    c = f.inv(lead)
    return tuple(f.mul(c, x) for x in v)


def point_index(ctx: VectorSpaceCtx, v: Sequence[int]) -> int:
    v = normalize(ctx, v)
    q, n = ctx.q, ctx.n
    p = next(i for i, x in enumerate(v) if x)
    tail = 0
    for x in v[p + 1 :]:
        tail = tail * q + x
    return theta(q, n - 1 - p) + tail


def point_vector(ctx: VectorSpaceCtx, index: int) -> Vector:
    """Canonical representative of point ``index`` (inverse of point_index)."""
    q, n = ctx.q, ctx.n
    if not 0 <= index < ctx.num_points:
        raise IndexError(f"point index {index} out of range for {ctx}")
    tail_len = 0
    while theta(q, tail_len + 1) <= index:
        tail_len += 1
    tail = index - theta(q, tail_len)
    digits = []
    for _ in range(tail_len):
        digits.append(tail % q)
        tail //= q
    return (0,) * (n - 1 - tail_len) + (1,) + tuple(reversed(digits))


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A nonzero subspace, identified by its canonical RREF basis."""

    ctx: VectorSpaceCtx
    rows: tuple[Vector, ...]
    pivots: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return self.ctx.n

    def vectors(self, nonzero: bool = True) -> Iterator[Vector]:
        f = self.ctx.field
        for coeffs in product(range(f.q), repeat=self.d):
            if nonzero and not any(coeffs):
                continue
            yield combine(f, coeffs, self.rows, self.n)

    def point_vectors(self) -> Iterator[Vector]:
        """Canonical representatives of the points of this subspace."""
        f = self.ctx.field
        d = self.d
        for lead in range(d):
            for tail in product(range(f.q), repeat=d - 1 - lead):
                coeffs = (0,) * lead + (1,) + tail
                yield combine(f, coeffs, self.rows, self.n)

    @cached_property
    def points(self) -> list[int]:
        return sorted(point_index(self.ctx, v) for v in self.point_vectors())

    @cached_property
    def mask(self) -> int:
        return mask_of(self.points)

    def contains(self, v: Sequence[int]) -> bool:
        return rank(self.ctx.field, self.rows + (tuple(v),)) == self.d

    def __repr__(self) -> str:
        body = "; ".join(" ".join(map(str, r)) for r in self.rows)
        return f"Subspace({self.ctx}, d={self.d}, [{body}])"


def combine(f: FieldSpec, coeffs: Sequence[int], rows: Sequence[Vector], n: int) -> Vector:
    acc = [0] * n
    for c, row in zip(coeffs, rows):
        if c:
            for j, x in enumerate(row):
                if x:
                    acc[j] = f.add(acc[j], f.mul(c, x))
    return tuple(acc)


def rref_canonical(ctx: VectorSpaceCtx, vectors: Iterable[Sequence[int]]) -> Subspace:
    vectors = [tuple(v) for v in vectors]
    for v in vectors:
        if len(v) != ctx.n or any(not 0 <= x < ctx.q for x in v):
            raise ValueError(f"{v} is not a vector of {ctx}")
    rows, pivots = rref(ctx.field, vectors)
    if not rows:
        raise DimensionZero("the vectors span the zero space")
    return Subspace(ctx, rows, pivots)


def points(s: Subspace) -> list[int]:
    return s.points


def _same_ctx(a: Subspace, b: Subspace) -> None:
    if a.ctx != b.ctx:
        raise CtxMismatch(f"{a.ctx} != {b.ctx}")


def sum_dim(a: Subspace, b: Subspace) -> int:
    _same_ctx(a, b)
    return rank(a.ctx.field, a.rows + b.rows)


def intersect_dim(a: Subspace, b: Subspace) -> int:
    return a.d + b.d - sum_dim(a, b)


def subspace_distance(a: Subspace, b: Subspace) -> int:
    return a.d + b.d - 2 * intersect_dim(a, b)


def gaussian_binomial(n: int, d: int, q: int) -> int:
    if not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n")
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (d - i) - 1
    return num // den


def enumerate_subspaces(ctx: VectorSpaceCtx, d: int) -> Iterator[Subspace]:
    """Every d-subspace once: pivot patterns in lexicographic order, then free
    entries in lexicographic order (row-major over the free positions)."""
    n, q = ctx.n, ctx.q
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    for pivots in combinations(range(n), d):
        pivot_set = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivot_set]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(d)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), x in zip(free, values):
                rows[i][j] = x
            yield Subspace(ctx, tuple(tuple(r) for r in rows), pivots)


def all_points(ctx: VectorSpaceCtx) -> Iterator[Vector]:
    """Canonical point representatives in index order."""
    for i in range(ctx.num_points):
        yield point_vector(ctx, i)


def kernel(ctx: VectorSpaceCtx, functional: Sequence[int]) -> Subspace:
    """The hyperplane {v : sum(functional[i] * v[i]) = 0}."""
    f = ctx.field
    functional = normalize(ctx, functional)
    p = next(i for i, x in enumerate(functional) if x)
    rows = []
    for j in range(ctx.n):
        if j == p:
            continue
        v = [0] * ctx.n
        v[j] = 1
        v[p] = f.neg(functional[j])
        rows.append(v)
    if not rows:
        raise DimensionZero("hyperplane of a 1-dimensional space is zero")
    return rref_canonical(ctx, rows)


def normal_functional(h: Subspace) -> Vector:
    """Canonical functional whose kernel is the hyperplane ``h``."""
    ctx = h.ctx
    if h.d != ctx.n - 1:
        raise ValueError("not a hyperplane")
    f = ctx.field
    (c,) = [j for j in range(ctx.n) if j not in h.pivots]
    out = [0] * ctx.n
    out[c] = 1
    for row, p in zip(h.rows, h.pivots):
        out[p] = f.neg(row[c])
    return normalize(ctx, out)


def hyperplane_functionals(ctx: VectorSpaceCtx) -> Iterator[Vector]:
    return all_points(ctx)


def hyperplanes(ctx: VectorSpaceCtx) -> Iterator[Subspace]:
    """All hyperplanes, ordered by the point index of their normal functional."""
    if ctx.n < 2:
        raise ValueError("hyperplanes need n >= 2")
    for fn in hyperplane_functionals(ctx):
        yield kernel(ctx, fn)


def evaluate(f: FieldSpec, functional: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for a, b in zip(functional, v):
        if a and b:
            acc = f.add(acc, f.mul(a, b))
    return acc


def coordinate_span(ctx: VectorSpaceCtx, coords: Iterable[int]) -> Subspace:
    rows = []
    for c in coords:
        v = [0] * ctx.n
        v[c] = 1
        rows.append(v)
    return rref_canonical(ctx, rows)
