"""Lower bounds on the number of bases of a cyclic k-matroid on Z_n.

All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, fields
from math import comb, gcd
from typing import Callable, Iterable, Sequence


def safe_binomial(a: int, b: int) -> int:
    """Binomial coefficient with the bottom-index -1 convention.

    C(a, -1) is 1 for a == -1 and 0 for a >= 0; every other out-of-range
    pair (negative bottom, negative top, bottom above top) gives 0.
    """
    if b == -1:
        return 1 if a == -1 else 0
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def _extended_binomial(a: int, b: int) -> int:
    # safe_binomial, but C(a, b) for a < 0 <= b follows the usual
    # negative-upper extension (-1)^b C(b - a - 1, b).
    if a < 0 <= b:
        return (-1) ** b * comb(b - a - 1, b)
    return safe_binomial(a, b)


def m1(n: int, k: int) -> int:
    """Bases of the form (B0 \\ Q) | P counted by spread and size of Q."""
    if not 2 <= k <= n - 1:
        return 0
    total = 1
    for delta in range(min(k - 1, n - k - 1) + 1):
        for r in range(1, delta + 2):
            reach = (n - k - delta - 1) // (k - r + 1) + 1
            total += (k - delta) * safe_binomial(delta - 1, r - 2) * max(reach, 0)
    return total


def m2(n: int, k: int) -> int:
    """Bases reached by exchanging B0 against the pairwise disjoint B_{ik}.

    The empty Q contributes 1.  For nonempty Q the composition count uses
    the extended binomial, so a Q drawn entirely from the last block
    B_{(l+1)k} is weighted by sum_w C(l, w) C(-1, w-1), i.e. 2 when l >= 1.
    This is the evaluation that reproduces the published comparison table.
    """
    if not 2 <= k <= n - 1:
        return 0
    ell = n // k - 1
    overlap = (ell + 2) * k - n  # |B0 \ B_{(l+1)k}|
    spill = n - (ell + 1) * k  # |B_{(l+1)k} \ B0|
    total = 1
    for size_q in range(1, k + 1):
        for j in range(min(spill, size_q) + 1):
            spread = sum(
                safe_binomial(ell, w) * _extended_binomial(size_q - j - 1, w - 1)
                for w in range(ell + 1)
            )
            total += safe_binomial(overlap, j) * safe_binomial(k - j, size_q - j) * spread
    return total


def m2_literal(n: int, k: int) -> int:
    """The m2 double sum evaluated term by term with :func:`safe_binomial` only.

    Kept for comparison; it undercounts :func:`m2` whenever k does not
    divide n and n >= 2k.
    """
    if not 2 <= k <= n - 1:
        return 0
    ell = n // k - 1
    total = 0
    for size_q in range(k + 1):
        for j in range(min(n - (ell + 1) * k, size_q) + 1):
            total += (
                safe_binomial((ell + 2) * k - n, j)
                * safe_binomial(k - j, size_q - j)
                * sum(safe_binomial(ell, w) * safe_binomial(size_q - j - 1, w - 1) for w in range(ell + 1))
            )
    return total


def orbit_count_lower_bound(k: int) -> int:
    """Guaranteed number of basis orbits: M + floor(k/4) + 1.

    M = floor(log2((floor(k/2) + 2) / 3)), computed from integer bit lengths.
    """
    m = ((k // 2 + 2) // 3).bit_length() - 1
    return max(m, 0) + k // 4 + 1


def m3(n: int, k: int) -> int:
    if n < 3 or not 2 <= k <= n - 1:
        return 0
    return orbit_count_lower_bound(k) * (n // gcd(n, k))


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    m1_k: int
    m1_nk: int
    m2_k: int
    m2_nk: int
    m3_k: int
    m3_nk: int
    m_best: int

    def row(self) -> tuple[int, ...]:
        """Values in table-column order: k, m1_k, m1_nk, m2_k, m2_nk, m3_k, m3_nk, mB."""
        return astuple(self)[1:]


TABLE_HEADER = ("k", "m1_k", "m1_nk", "m2_k", "m2_nk", "m3_k", "m3_nk", "mB")


def _ceil_to_multiple(x: int, n: int) -> int:
    return -(-x // n) * n


def m_best(n: int, k: int) -> BoundReport:
    """All six bound values at ranks k and n-k, and the best combined bound."""
    if n < 3 or not 2 <= k <= n - 1:
        raise ValueError(f"need n >= 3 and 2 <= k <= n-1, got n={n}, k={k}")
    vals = dict(
        m1_k=m1(n, k), m1_nk=m1(n, n - k),
        m2_k=m2(n, k), m2_nk=m2(n, n - k),
        m3_k=m3(n, k), m3_nk=m3(n, n - k),
    )
    if gcd(n, k) == 1:
        best = max(_ceil_to_multiple(v, n) for v in vals.values())
    else:
        best = max(vals.values())
    return BoundReport(n, k, m_best=best, **vals)


def bounds_table(n: int) -> list[BoundReport]:
    if n < 4:
        raise ValueError(f"bounds table needs n >= 4, got {n}")
    return [m_best(n, k) for k in range(2, n // 2 + 1)]


def table_csv(reports: Iterable[BoundReport], header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(TABLE_HEADER)
    for r in reports:
        w.writerow(r.row())
    return buf.getvalue()


def parse_table_csv(text: str, n: int) -> list[BoundReport]:
    rows = list(csv.reader(io.StringIO(text)))
    if rows and rows[0] == list(TABLE_HEADER):
        rows = rows[1:]
    names = [f.name for f in fields(BoundReport)][1:]
    return [BoundReport(n, **dict(zip(names, map(int, row)))) for row in rows if row]


def table_text(reports: Sequence[BoundReport]) -> str:
    rows = [TABLE_HEADER] + [tuple(str(v) for v in r.row()) for r in reports]
    widths = [max(len(row[i]) for row in rows) for i in range(len(TABLE_HEADER))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in rows) + "\n"


# k as a function of n for each figure series; None means "skip this n"
K_RULES: dict[str, Callable[[int], "int | None"]] = {
    "n/2": lambda n: n // 2,
    "n/3": lambda n: n // 3,
    "n/4": lambda n: n // 4,
    "n-2": lambda n: n - 2,
    "n-3": lambda n: n - 3,
    "n/3exact": lambda n: n // 3 if n % 3 == 0 else None,
}

FIGURE_HEADER = ("n", "k", "m1", "m2", "m3")


def figure_series(n_range: Iterable[int], k_rule: str) -> list[tuple[int, int, int, int, int]]:
    """Rows (n, k, m1, m2, m3) for k chosen from n by a named rule."""
    rule = K_RULES[k_rule]
    rows = []
    for n in n_range:
        k = rule(n)
        if k is None or not 2 <= k <= n - 1:
            continue
        rows.append((n, k, m1(n, k), m2(n, k), m3(n, k)))
    return rows


def fixed_n_series(n: int) -> list[tuple[int, int, int, int, int]]:
    """Rows (n, k, m1, m2, m3) for k = 2 .. n-2."""
    return [(n, k, m1(n, k), m2(n, k), m3(n, k)) for k in range(2, n - 1)]


def series_csv(rows: Iterable[Sequence[int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIGURE_HEADER)
    w.writerows(rows)
    return buf.getvalue()
