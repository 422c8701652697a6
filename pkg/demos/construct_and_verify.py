"""Build a partial spread, save it, reload it and check it.

The construction stacks graphs of F_q-linear maps; its size is
ell * q^t + 1 and the points it misses form q^t * theta_r holes.

    python demos/construct_and_verify.py [q n t]
"""

from __future__ import annotations

import sys
import tempfile
import time
from pathlib import Path

from partialspread.bounds import exact_or_range, lb_construction
from partialspread.construct import construct_partial_spread, read_spread, verify_partial_spread, write_spread


def main(argv: list[str]) -> None:
    q, n, t = (int(x) for x in argv) if argv else (2, 8, 3)
    start = time.perf_counter()
    spread = construct_partial_spread(q, n, t)
    print(f"built {spread} in {time.perf_counter() - start:.2f}s")
    for i in range(min(3, len(spread))):
        print("  member", i, spread.member(i).rows)

    rep = verify_partial_spread(spread)
    print(rep.summary(), f"(expected size {lb_construction(q, n, t)})")

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "spread.txt"
        write_spread(spread, path)
        again = read_spread(path)
        print(f"round trip through {path.stat().st_size} bytes: equal={again == spread}")

    bounds = exact_or_range(q, n, t)
    print("known:", bounds.row())
    if bounds.exact is not None and bounds.exact > rep.size:
        print(f"the construction is {bounds.exact - rep.size} short of the maximum here")


if __name__ == "__main__":
    main(sys.argv[1:])
