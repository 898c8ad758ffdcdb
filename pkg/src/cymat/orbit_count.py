"""Counting orbits of k-subsets of Z_n under cyclic shift.

Three routes are provided and are expected to agree: brute-force
enumeration, the orbit-counting lemma on fixed points, and the bijection
between orbits and rotation classes of (block, gap) composition pairs.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from math import comb, gcd

from . import zn_sets as zs
from .errors import DegenerateSet, OutOfRange, TooLarge
from .zn_sets import Orbit, ZnSubset

DEFAULT_BRUTE_CAP = 5_000_000


def brute_cap() -> int:
    raw = os.environ.get("CYMAT_BRUTE_CAP")
    return int(raw) if raw else DEFAULT_BRUTE_CAP


def euler_phi(m: int) -> int:
    result, p, x = m, 2, m
    while p * p <= x:
        if x % p == 0:
            while x % p == 0:
                x //= p
            result -= result // p
        p += 1
    if x > 1:
        result -= result // x
    return result


@dataclass(frozen=True)
class CompositionPair:
    c_a: tuple[int, ...]  # block lengths
    c_b: tuple[int, ...]  # gap lengths, c_b[i] follows block i

    @property
    def r(self) -> int:
        return len(self.c_a)

    def rotated(self, s: int) -> "CompositionPair":
        s %= self.r
        return CompositionPair(self.c_a[s:] + self.c_a[:s], self.c_b[s:] + self.c_b[:s])

    def canonical(self) -> "CompositionPair":
        """Lexicographically smallest diagonal rotation."""
        return min((self.rotated(s) for s in range(self.r)), key=lambda p: (p.c_a, p.c_b))


@dataclass(frozen=True)
class OrbitCensus:
    n: int
    k: int
    per_length: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.per_length.values())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("n", "k", "r", "orbit_count"))
        for r in sorted(self.per_length):
            w.writerow((self.n, self.k, r, self.per_length[r]))
        w.writerow((self.n, self.k, "total", self.total))
        return buf.getvalue()


def orbits_brute_force(n: int, k: int, cap: int | None = None) -> list[Orbit]:
    """Every orbit of k-subsets, found by enumerating all C(n, k) subsets."""
    cap = brute_cap() if cap is None else cap
    if not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    if comb(n, k) > cap:
        raise TooLarge(f"C({n},{k}) = {comb(n, k)} exceeds the brute-force cap {cap}")
    reps: dict[int, int] = {}
    for m in zs.k_subsets(n, k):
        c = zs.canonical_mask(m, n)
        reps[c] = reps.get(c, 0) + 1
    out = []
    for c in sorted(reps):
        rep = ZnSubset(n, c)
        gen, _ = zs.stabilizer(rep)
        out.append(Orbit(rep, reps[c], gen))
    return out


def count_orbits_burnside(n: int, k: int) -> int:
    """(1/n) * sum over shifts s of the number of k-subsets fixed by s."""
    if not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    total = 0
    for s in range(n):
        g = gcd(n, s)  # cycles of the shift; gcd(n, 0) = n
        if (k * g) % n == 0:
            total += comb(g, k * g // n)
    assert total % n == 0
    return total // n


def count_orbits_by_length(n: int, k: int, r: int) -> int:
    """Orbits whose block composition has exactly r parts.

    Counts rotation classes of pairs in C(k, r) x C(n-k, r) by the
    orbit-counting lemma: a rotation of order d = r/g fixes a pair iff both
    compositions are periodic with period g.
    """
    if not 1 <= k <= n - 1 or not 1 <= r <= min(k, n - k):
        raise OutOfRange(f"need 1 <= k <= n-1 and 1 <= r <= min(k, n-k), got n={n}, k={k}, r={r}")
    common = gcd(k, n - k)
    total = 0
    for g in range(1, r + 1):
        if r % g:
            continue
        d = r // g
        if common % d:
            continue
        total += euler_phi(d) * comb(k // d - 1, g - 1) * comb((n - k) // d - 1, g - 1)
    assert total % r == 0
    return total // r


def total_orbits_by_composition(n: int, k: int) -> OrbitCensus:
    if not 1 <= k <= n - 1:
        raise OutOfRange(f"need 1 <= k <= n-1, got n={n}, k={k}")
    per = {r: count_orbits_by_length(n, k, r) for r in range(1, min(k, n - k) + 1)}
    return OrbitCensus(n, k, per)


def census_brute_force(n: int, k: int, cap: int | None = None) -> OrbitCensus:
    """Histogram of block-composition lengths over brute-force orbits."""
    per: dict[int, int] = {}
    for o in orbits_brute_force(n, k, cap):
        if o.representative.mask in (0, zs.full_mask(n)):
            r = 1
        else:
            r = len(zs.block_structure(o.representative))
        per[r] = per.get(r, 0) + 1
    return OrbitCensus(n, k, per)


def composition_bijection(d: ZnSubset) -> CompositionPair:
    """(c(D), c(D^c)) with the gap after each block aligned to that block."""
    if d.mask == 0 or d.mask == zs.full_mask(d.n):
        raise DegenerateSet("the empty set and Z_n have no block/gap pair")
    blocks = zs.block_structure(d).blocks
    c_a = tuple(length for _, length in blocks)
    c_b = []
    for i, (start, length) in enumerate(blocks):
        nxt = blocks[(i + 1) % len(blocks)][0]
        c_b.append((nxt - (start + length)) % d.n)
    return CompositionPair(c_a, tuple(c_b))


def reconstruct(n: int, pair: CompositionPair, anchor: int = 0) -> ZnSubset:
    """Lay out blocks and gaps alternately starting at ``anchor``."""
    if len(pair.c_a) != len(pair.c_b) or not pair.c_a:
        raise ValueError("composition pair must have equal, positive length")
    if any(c <= 0 for c in pair.c_a + pair.c_b):
        raise ValueError("composition parts must be positive")
    if sum(pair.c_a) + sum(pair.c_b) != n:
        raise ValueError(f"parts sum to {sum(pair.c_a) + sum(pair.c_b)}, expected {n}")
    elements = []
    pos = anchor
    for a, b in zip(pair.c_a, pair.c_b):
        elements.extend((pos + t) % n for t in range(a))
        pos += a + b
    return ZnSubset.of(n, elements)
