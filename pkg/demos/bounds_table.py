"""Print what is known about mu_q(n, t) over a small parameter range.

Rows with a single value are settled; the rest show the gap between the
recursive construction and the best closed-form upper bound.

    python demos/bounds_table.py
"""

from __future__ import annotations

from partialspread.bounds import exact_or_range


def main() -> None:
    for q in (2, 3):
        print(f"# q={q}")
        for t in range(2, 6):
            for n in range(t + 1, 3 * t + 2):
                rep = exact_or_range(q, n, t)
                print(f"n={n:2d} t={t} r={n % t}  {rep.row()}")
        print()
    # the only open rows in this range have 2 <= r and t <= theta_r
    open_rows = [
        (q, n, t)
        for q in (2, 3, 4)
        for t in range(2, 8)
        for n in range(t + 1, 25)
        if exact_or_range(q, n, t).exact is None
    ]
    print(f"{len(open_rows)} open points for q<=4, t<8, n<25; first few: {open_rows[:5]}")


if __name__ == "__main__":
    main()
