"""Hyperplane statistics of the partition left by a partial spread.

Adding every uncovered point as a 1-dimensional member turns a partial
t-spread into a subspace partition.  Counting members inside each hyperplane
gives vectors b_H whose histogram satisfies exact identities; the average
of b_{H,1} drives the descent used to bound spread sizes.

    python demos/partition_identities.py
"""

from __future__ import annotations

from partialspread.construct import construct_partial_spread
from partialspread.partition import (
    average_b1,
    check_hele0,
    check_hele1,
    descend,
    descent_certificate,
    from_partial_spread,
    histogram,
)


def main() -> None:
    part = from_partial_spread(construct_partial_spread(2, 5, 2))
    print("partition", part.type_string(), "of V(5,2)")
    print(check_hele0(part).summary())
    rep = check_hele1(part)
    print(rep.summary())
    for line in rep.details:
        print("  ", line)
    print("histogram of (b_2, b_1) over hyperplanes:")
    for line in histogram(part).lines():
        print("  ", line)
    print("average b_1 =", average_b1(part))

    print("\ndescent on the concrete partition:")
    for step in descend(part, 3):
        p = step.partition
        print(
            f"  V({p.ctx.n},{p.ctx.q}) {p.type_string()}: average {step.average}, "
            f"picked b_1={step.chosen.b.get(1, 0)}"
        )

    print("\narithmetic certificate for (q, n, t) = (2, 10, 4):")
    for line in descent_certificate(2, 10, 4).trace:
        print("  ", line)


if __name__ == "__main__":
    main()
