"""Exhaustive and randomized search for cyclic matroids on Z_n.

A shift-closed family is a union of k-subset orbits, so candidates are
subsets of the orbit list rather than subsets of all k-subsets.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import zn_sets as zs
from .bounds import m_best
from .errors import CymatError, NotFound, OutOfRange, ParseError, TooLarge
from .matroid import (
    CyclicMatroid,
    _expand_orbits,
    cyclic_exchange_witness,
    from_document,
    from_orbit_representatives,
)

MAX_EXHAUSTIVE_ORBITS = 24


@dataclass(frozen=True)
class SearchConfig:
    n: int
    k: int
    mode: str = "randomized"  # "exhaustive" | "randomized"
    seed: int = 0
    max_candidates: int = 200
    require_nonuniform: bool = False

    def __post_init__(self):
        if not 2 <= self.k <= self.n - 1:
            raise OutOfRange(f"need 2 <= k <= n-1, got n={self.n}, k={self.k}")
        if self.mode not in ("exhaustive", "randomized"):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.max_candidates < 1:
            raise ValueError("max_candidates must be positive")


def orbit_representatives(n: int, k: int) -> list[int]:
    """Canonical masks of all k-subset orbits, ascending."""
    return sorted({zs.canonical_mask(m, n) for m in zs.k_subsets(n, k)})


def _exchange_clauses(n: int, reps: list[int]) -> list[tuple[int, int]]:
    """Constraints ``(need, options)`` on a set S of orbit indices (as a bitmask).

    S is a matroid iff for every clause with ``need & ~S == 0`` we also have
    ``options & S != 0``.  Each clause comes from one (B1, B2, x): B1 a
    representative, B2 any k-subset, and options the orbits of the sets
    (B1 - x) + y with y in B2 \\ B1.
    """
    index = {}
    for i, r in enumerate(reps):
        cur = r
        for _ in range(n):
            index[cur] = i
            cur = zs.rotate(cur, 1, n)
    clauses = set()
    for i, b1 in enumerate(reps):
        for b2, j in index.items():
            if b2 == b1:
                continue
            need = (1 << i) | (1 << j)
            ys = zs.elements_of(b2 & ~b1)
            for x in zs.elements_of(b1 & ~b2):
                base = b1 ^ (1 << x)
                opts = 0
                for y in ys:
                    opts |= 1 << index[base | (1 << y)]
                clauses.add((need, opts))
    # a clause satisfied by one of its own required orbits is vacuous
    return sorted((need, opts) for need, opts in clauses if not need & opts)


def _scan(args) -> list[int]:
    base, free_bits, clauses, lo, hi = args
    found = []
    for c in range(lo, hi):
        s = base
        for t, bit in enumerate(free_bits):
            if c >> t & 1:
                s |= bit
        for need, opts in clauses:
            if not need & ~s and not opts & s:
                break
        else:
            found.append(s)
    return found


def enumerate_cyclic_matroids(n: int, k: int, jobs: int = 1) -> list[CyclicMatroid]:
    """Every cyclic k-matroid on Z_n, sorted by basis count then representatives."""
    if not 1 <= k <= n - 1:
        raise OutOfRange(f"need 1 <= k <= n-1, got n={n}, k={k}")
    if n > zs.MAX_N:
        raise TooLarge(f"n={n} exceeds {zs.MAX_N}")
    reps = orbit_representatives(n, k)
    if len(reps) > MAX_EXHAUSTIVE_ORBITS:
        raise TooLarge(f"{len(reps)} orbits > {MAX_EXHAUSTIVE_ORBITS}: candidate space too large")
    b0 = zs.canonical_mask((1 << k) - 1, n)
    base = 1 << reps.index(b0)
    free_bits = [1 << i for i in range(len(reps)) if reps[i] != b0]
    clauses = _exchange_clauses(n, reps)
    total = 1 << len(free_bits)
    if jobs <= 1 or total < 1024:
        sets = _scan((base, free_bits, clauses, 0, total))
    else:
        step = -(-total // (jobs * 4))
        tasks = [(base, free_bits, clauses, lo, min(lo + step, total)) for lo in range(0, total, step)]
        sets = []
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for part in ex.map(_scan, tasks):
                sets.extend(part)
    out = []
    for s in sets:
        chosen = [reps[i] for i in range(len(reps)) if s >> i & 1]
        out.append(from_orbit_representatives(n, k, chosen, verify=False))
    out.sort(key=lambda m: (m.basis_count, [r.mask for r in m.representatives]))
    return out


def min_bases(n: int, k: int, jobs: int = 1) -> int:
    return min(m.basis_count for m in enumerate_cyclic_matroids(n, k, jobs))


def random_cyclic_matroid(cfg: SearchConfig) -> CyclicMatroid:
    """Removal-based random walk down from the uniform matroid.

    Orbits other than that of B0 are drawn uniformly and dropped whenever
    the smaller family still satisfies the exchange axiom.  The walk stops
    after ``max_candidates`` consecutive failed removals, or once every
    remaining orbit has failed since the last success.  Uses numpy's PCG64
    generator seeded with ``cfg.seed``.
    """
    n, k = cfg.n, cfg.k
    rng = np.random.default_rng(cfg.seed)
    b0 = zs.canonical_mask((1 << k) - 1, n)
    current = orbit_representatives(n, k)
    failures = 0
    tried: set[int] = set()
    while failures < cfg.max_candidates:
        removable = [r for r in current if r != b0 and r not in tried]
        if not removable:
            break
        pick = removable[int(rng.integers(len(removable)))]
        trial = [r for r in current if r != pick]
        if cyclic_exchange_witness(n, _expand_orbits(n, trial), trial) is None:
            current = trial
            failures = 0
            tried.clear()
        else:
            failures += 1
            tried.add(pick)
    if cfg.require_nonuniform and len(current) == len(orbit_representatives(n, k)):
        raise NotFound(f"no proper cyclic sub-family found for n={n}, k={k}, seed={cfg.seed}")
    return from_orbit_representatives(n, k, current, verify=False)


def search(cfg: SearchConfig, jobs: int = 1) -> list[CyclicMatroid]:
    if cfg.mode == "exhaustive":
        return enumerate_cyclic_matroids(cfg.n, cfg.k, jobs)
    return [random_cyclic_matroid(cfg)]


@dataclass(frozen=True)
class FixtureReport:
    n: int
    k: int
    valid: bool
    basis_count: int
    m_best: Optional[int]
    error: str = ""

    @property
    def meets_bound(self) -> bool:
        return self.valid and (self.m_best is None or self.basis_count >= self.m_best)

    def summary(self) -> str:
        if not self.valid:
            return f"invalid: {self.error}"
        bound = "" if self.m_best is None else f"; {self.basis_count} >= m_B={self.m_best}: {self.meets_bound}"
        return f"valid cyclic {self.k}-matroid, {self.basis_count} bases{bound}"


def verify_appendix_fixture(doc: dict) -> FixtureReport:
    """Rebuild a matroid document and check axiom, closure and the m_B bound."""
    try:
        n, k = int(doc["n"]), int(doc["k"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matroid document: {exc}") from exc
    try:
        bound = m_best(n, k).m_best
    except ValueError:
        bound = None
    try:
        m = from_document(doc)
    except ParseError:
        raise
    except CymatError as exc:
        return FixtureReport(n, k, False, 0, bound, f"{type(exc).__name__}: {exc}")
    return FixtureReport(n, k, True, m.basis_count, bound)
