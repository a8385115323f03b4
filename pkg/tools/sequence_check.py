"""Compare q = 1 specializations against reference prefixes of OEIS sequences."""

import sys

from analytic import eulerian
from exact_arith import lp_eval_rat
from stirling_q import bell_q, build_first_table, build_second_table

# A000110 (Bell), A008277 / A008275 (Stirling 2nd / signed 1st, n,k >= 1), A008292 (Eulerian)
A000110 = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597]
A008277 = [1, 1, 1, 1, 3, 1, 1, 7, 6, 1, 1, 15, 25, 10, 1, 1, 31, 90, 65, 15, 1, 1, 63, 301, 350, 140, 21, 1]
A008275 = [1, -1, 1, 2, -3, 1, -6, 11, -6, 1, 24, -50, 35, -10, 1, -120, 274, -225, 85, -15, 1]
A008292 = [1, 1, 1, 1, 4, 1, 1, 11, 11, 1, 1, 26, 66, 26, 1, 1, 57, 302, 302, 57, 1]


def _flatten(table, rows: int) -> list[int]:
    return [int(lp_eval_rat(table.entry(n, k), 1)) for n in range(1, rows + 1) for k in range(1, n + 1)]


def _rows_for(length: int) -> int:
    n = 0
    while n * (n + 1) // 2 < length:
        n += 1
    return n


def run() -> dict:
    second = build_second_table(len(A000110))
    results = {
        "A000110": [int(lp_eval_rat(bell_q(second, n), 1)) for n in range(len(A000110))] == A000110,
        "A008277": _flatten(second, _rows_for(len(A008277))) == A008277,
        "A008275": _flatten(build_first_table(_rows_for(len(A008275))), _rows_for(len(A008275)))
        == A008275,
        "A008292": [eulerian(n, k) for n in range(1, _rows_for(len(A008292)) + 1) for k in range(n)]
        == A008292,
    }
    return results


if __name__ == "__main__":
    res = run()
    print(res)
    sys.exit(0 if all(res.values()) else 1)
