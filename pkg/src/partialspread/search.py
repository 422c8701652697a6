"""Exact maximum partial t-spread by branch and bound.

The instance is the hypergraph whose vertices are the points of V(n, q) and
whose edges are the point sets of its t-subspaces; a partial spread is a
matching.  Search branches on a point that is neither covered nor abandoned:
either some candidate through that point joins the spread, or the point is
abandoned as a hole.  The branching point is the one with the fewest
remaining candidates (``branching="fewest-options"``) or the least index
(``"least-index"``).  Points no remaining candidate can reach are holes in
every completion, so a branch is cut when

    size + floor(coverable_points / theta_t) <= best

which uses nothing but point counting.  The optional ``use_paper_bounds``
switch also stops as soon as the closed-form upper bound is reached.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .bounds import exact_or_range, theta
from .construct import PartialSpread
from .errors import BadParams, CandidateCapExceeded
from .space import (
    Subspace,
    VectorSpaceCtx,
    coordinate_span,
    enumerate_subspaces,
    gaussian_binomial,
    indices_of,
)


@dataclass
class SearchConfig:
    time_limit_seconds: float | None = None
    node_limit: int | None = None
    symmetry_fix: bool = True
    use_paper_bounds: bool = False
    deterministic: bool = True
    candidate_cap: int = 100_000
    branching: str = "fewest-options"


@dataclass
class SearchResult:
    best: PartialSpread
    size: int
    optimal: bool
    nodes_explored: int
    elapsed: float
    stopped_by: str | None = None


class _Stop(Exception):
    pass


def max_partial_spread(q: int, n: int, t: int, cfg: SearchConfig | None = None) -> SearchResult:
    cfg = cfg or SearchConfig()
    if not 1 <= t < n:
        raise BadParams(f"need 1 <= t < n, got t={t} n={n}")
    ctx = VectorSpaceCtx.of(q, n)
    count = gaussian_binomial(n, t, q)
    if count > cfg.candidate_cap:
        raise CandidateCapExceeded(f"{count} candidate {t}-subspaces exceed cap {cfg.candidate_cap}")

    cands: list[Subspace] = list(enumerate_subspaces(ctx, t))
    masks = [c.mask for c in cands]
    npts = ctx.num_points
    # through[p]: candidates containing p; clash[k]: candidates meeting k
    through = [0] * npts
    for k, m in enumerate(masks):
        for p in indices_of(m):
            through[p] |= 1 << k
    clash = []
    for m in masks:
        c = 0
        for p in indices_of(m):
            c |= through[p]
        clash.append(c)

    block = theta(q, t)
    full = (1 << npts) - 1
    target = exact_or_range(q, n, t).upper if cfg.use_paper_bounds else None
    least_index = cfg.branching == "least-index"

    start = time.perf_counter()
    deadline = None if cfg.time_limit_seconds is None else start + cfg.time_limit_seconds
    state = {"nodes": 0, "best": [], "stopped_by": None}

    def check_limits() -> None:
        if cfg.node_limit is not None and state["nodes"] >= cfg.node_limit:
            state["stopped_by"] = "node_limit"
            raise _Stop
        if deadline is not None and state["nodes"] % 256 == 1 and time.perf_counter() > deadline:
            state["stopped_by"] = "time_limit"
            raise _Stop

    def dfs(used: int, avail: int, chosen: list[int]) -> bool:
        """Return True once the search can stop because the goal was reached."""
        state["nodes"] += 1
        check_limits()
        if len(chosen) > len(state["best"]):
            state["best"] = list(chosen)
            if target is not None and len(chosen) >= target:
                return True
        free = full & ~used
        # points no remaining candidate can cover are holes in every completion
        pick, pick_opts = -1, None
        coverable = 0
        for p in indices_of(free):
            opts = avail & through[p]
            if not opts:
                continue
            coverable += 1
            if pick < 0 or (not least_index and opts.bit_count() < pick_opts.bit_count()):
                pick, pick_opts = p, opts
        if len(chosen) + coverable // block <= len(state["best"]):
            return False
        while pick_opts:
            low = pick_opts & -pick_opts
            k = low.bit_length() - 1
            pick_opts ^= low
            chosen.append(k)
            if dfs(used | masks[k], avail & ~clash[k], chosen):
                return True
            chosen.pop()
        # abandon the branching point: it stays a hole in this branch
        return dfs(used | (1 << pick), avail & ~through[pick], chosen)

    first: list[int] = []
    used = 0
    full_avail = avail = (1 << len(cands)) - 1
    if cfg.symmetry_fix:
        # GL(n, q) is transitive on t-subspaces, so some optimum contains this one
        pinned = cands.index(coordinate_span(ctx, range(t)))
        first = [pinned]
        used = masks[pinned]
        avail = full_avail & ~clash[pinned]

    optimal = True
    try:
        dfs(used, avail, first)
    except _Stop:
        optimal = False
    except RecursionError:  # pragma: no cover - desk-scale instances stay shallow
        raise
    elapsed = time.perf_counter() - start

    members = [cands[k] for k in state["best"]]
    best = PartialSpread.from_subspaces(ctx, t, members)
    return SearchResult(best, len(members), optimal, state["nodes"], elapsed, state["stopped_by"])
