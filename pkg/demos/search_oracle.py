"""Exact maxima by exhaustive search, compared with the closed forms.

The search never looks at the theorem-based bounds (use_paper_bounds is
off), so agreement here is an independent check of them.

    python demos/search_oracle.py
"""

from __future__ import annotations

from partialspread.bounds import exact_or_range
from partialspread.search import SearchConfig, max_partial_spread

INSTANCES = [(2, 4, 2), (2, 5, 2), (2, 6, 2), (2, 5, 3), (2, 6, 3), (3, 4, 2), (2, 7, 4)]


def main() -> None:
    for q, n, t in INSTANCES:
        res = max_partial_spread(q, n, t, SearchConfig(time_limit_seconds=60))
        known = exact_or_range(q, n, t).exact
        tag = "optimal" if res.optimal else f"stopped ({res.stopped_by})"
        print(
            f"mu_{q}({n},{t}): search {res.size} {tag}, closed form {known}, "
            f"{res.nodes_explored} nodes in {res.elapsed:.2f}s"
        )

    # a budget-limited run still returns a valid spread, never smaller with more budget
    for limit in (10, 100, 1000, 10000):
        res = max_partial_spread(2, 5, 2, SearchConfig(node_limit=limit))
        print(f"node_limit={limit:>5}: size {res.size}, optimal={res.optimal}")


if __name__ == "__main__":
    main()
