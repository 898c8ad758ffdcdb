"""Matroids given by their bases, with cyclic-basis counting helpers.

Bases are kept as integer masks over Z_n; see :mod:`cymat.zn_sets`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional

from . import zn_sets as zs
from .errors import (
    AxiomViolation,
    BadSubset,
    CyclicityViolation,
    EmptyFamily,
    MissingCyclicBasis,
    NonUniformCardinality,
    NotMembers,
    OutOfRange,
    ParseError,
    SpreadTooLarge,
    WrongCardinality,
)
from .zn_sets import ZnSubset


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _as_mask(x, n: int) -> int:
    if isinstance(x, ZnSubset):
        if x.n != n:
            raise ValueError(f"subset {x} is not over Z_{n}")
        return x.mask
    return int(x)


def _to_mask(x, n: int) -> int:
    """Accept a ZnSubset, a raw mask or an iterable of elements."""
    if isinstance(x, ZnSubset):
        return _as_mask(x, n)
    if isinstance(x, int):
        return x
    return zs.mask_of(x)


@dataclass(frozen=True)
class BasesSet:
    """An explicit family of subsets of Z_n, not yet known to be a matroid."""

    n: int
    members: frozenset

    @classmethod
    def of(cls, n: int, members: Iterable) -> "BasesSet":
        masks = [_to_mask(b, n) for b in members]
        for m in masks:
            if m >> n:
                raise ValueError(f"member {zs.format_elements(m)} not inside Z_{n}")
        return cls(n, frozenset(masks))

    @property
    def k(self) -> int:
        sizes = {_popcount(m) for m in self.members}
        if not sizes:
            raise EmptyFamily("no members")
        if len(sizes) > 1:
            raise NonUniformCardinality(f"member sizes differ: {sorted(sizes)}")
        return sizes.pop()

    def subsets(self) -> list[ZnSubset]:
        return [ZnSubset(self.n, m) for m in sorted(self.members)]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, b) -> bool:
        return _as_mask(b, self.n) in self.members


@dataclass(frozen=True)
class ExchangeCheck:
    ok: bool
    witness: Optional[tuple[ZnSubset, ZnSubset, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def _exchange_fails(b1: int, b2: int, members) -> int:
    """Return the smallest x in b1 \\ b2 with no valid exchange, or -1."""
    d1 = b1 & ~b2
    d2 = b2 & ~b1
    ys = zs.elements_of(d2)
    for x in zs.elements_of(d1):
        base = b1 ^ (1 << x)
        for y in ys:
            if base | (1 << y) in members:
                break
        else:
            return x
    return -1


def verify_exchange_axiom(b: BasesSet) -> ExchangeCheck:
    """Check the basis exchange axiom on every ordered pair of members.

    On failure the witness ``(B1, B2, x)`` is the first one in ascending mask
    order of B1, then B2, then x.
    """
    b.k  # raises EmptyFamily / NonUniformCardinality
    members = b.members
    ordered = sorted(members)
    for b1 in ordered:
        for b2 in ordered:
            if b1 == b2:
                continue
            x = _exchange_fails(b1, b2, members)
            if x >= 0:
                return ExchangeCheck(False, (ZnSubset(b.n, b1), ZnSubset(b.n, b2), x))
    return ExchangeCheck(True)


def cyclic_exchange_witness(n: int, members, reps: Iterable[int]):
    """Exchange-axiom check for a shift-closed family.

    By shift invariance it suffices to let B1 range over one representative
    per orbit.  Returns ``(b1, b2, x)`` masks for the first failure, else None.
    """
    ordered = sorted(members)
    for b1 in sorted(reps):
        for b2 in ordered:
            if b1 == b2:
                continue
            x = _exchange_fails(b1, b2, members)
            if x >= 0:
                return b1, b2, x
    return None


def verify_multiple_exchange(
    b: BasesSet, b1: ZnSubset, b2: ZnSubset, q: ZnSubset
) -> Optional[ZnSubset]:
    """Find P subset of b2 \\ b1 with (b1 \\ q) | P a member, smallest mask first.

    Returns None when no such P exists (impossible for a genuine matroid).
    """
    m1, m2, mq = _as_mask(b1, b.n), _as_mask(b2, b.n), _as_mask(q, b.n)
    if m1 not in b.members or m2 not in b.members:
        raise NotMembers("b1 and b2 must both be members")
    diff = m2 & ~m1
    if mq & ~(m1 & ~m2):
        raise BadSubset("q must be a subset of b1 \\ b2")
    base = m1 & ~mq
    r = _popcount(mq)
    pool = zs.elements_of(diff)
    candidates = sorted(zs.mask_of(c) for c in combinations(pool, r))
    for p in candidates:
        if base | p in b.members:
            return ZnSubset(b.n, p)
    return None


def is_cyclic(b: BasesSet) -> bool:
    return all(zs.rotate(m, 1, b.n) in b.members for m in b.members)


def _expand_orbits(n: int, rep_masks: Iterable[int]) -> frozenset:
    out = set()
    for m in rep_masks:
        cur = m
        for _ in range(n):
            out.add(cur)
            cur = zs.rotate(cur, 1, n)
    return frozenset(out)


@dataclass(frozen=True)
class CyclicMatroid:
    """A cyclic k-matroid on Z_n stored by canonical orbit representatives."""

    n: int
    k: int
    basis_orbits: tuple[zs.Orbit, ...]
    _bases: frozenset = field(default=frozenset(), compare=False, repr=False)

    @property
    def representatives(self) -> tuple[ZnSubset, ...]:
        return tuple(o.representative for o in self.basis_orbits)

    @property
    def bases(self) -> frozenset:
        """All bases as masks."""
        return self._bases

    @property
    def basis_count(self) -> int:
        return sum(o.size for o in self.basis_orbits)

    def bases_set(self) -> BasesSet:
        return BasesSet(self.n, self._bases)

    def basis_subsets(self) -> list[ZnSubset]:
        return [ZnSubset(self.n, m) for m in sorted(self._bases)]

    def rank(self, x) -> int:
        mask = _as_mask(x, self.n)
        return max(_popcount(mask & b) for b in self._bases)

    def is_independent(self, x) -> bool:
        mask = _as_mask(x, self.n)
        return any(mask & ~b == 0 for b in self._bases)

    def to_document(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "orbit_representatives": [zs.format_elements(r.mask) for r in self.representatives],
            "basis_count": self.basis_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document())

    def __str__(self) -> str:
        reps = ", ".join(zs.format_elements(r.mask) for r in self.representatives)
        return f"CyclicMatroid(n={self.n}, k={self.k}, {self.basis_count} bases; orbits {reps})"


def from_orbit_representatives(n: int, k: int, reps: Iterable, *, verify: bool = True) -> CyclicMatroid:
    """Build and validate a cyclic matroid from one basis per orbit.

    Representatives may be any orbit member; they are canonicalized and
    deduplicated.  ``verify=False`` skips only the exchange-axiom check.
    """
    if not 0 <= k <= n:
        raise WrongCardinality(f"rank {k} outside 0..{n}")
    canon = set()
    for r in reps:
        m = _to_mask(r, n)
        if m >> n:
            raise WrongCardinality(f"{zs.format_elements(m)} is not a subset of Z_{n}")
        if _popcount(m) != k:
            raise WrongCardinality(f"{zs.format_elements(m)} has size {_popcount(m)}, expected {k}")
        canon.add(zs.canonical_mask(m, n))
    b0 = (1 << k) - 1
    if zs.canonical_mask(b0, n) not in canon:
        raise MissingCyclicBasis(f"orbit of {zs.format_elements(b0)} is not among the bases")
    bases = _expand_orbits(n, canon)
    if verify:
        bad = cyclic_exchange_witness(n, bases, canon)
        if bad is not None:
            b1, b2, x = bad
            raise AxiomViolation(
                f"exchange fails for B1={zs.format_elements(b1)}, B2={zs.format_elements(b2)}, x={x}",
                witness=(ZnSubset(n, b1), ZnSubset(n, b2), x),
            )
    orbits = tuple(zs.orbit(ZnSubset(n, m)) for m in sorted(canon))
    return CyclicMatroid(n, k, orbits, bases)


def from_bases(b: BasesSet, *, verify: bool = True) -> CyclicMatroid:
    """Wrap an explicit shift-closed basis family as a CyclicMatroid."""
    k = b.k
    if not is_cyclic(b):
        raise CyclicityViolation("basis family is not closed under shifts")
    reps = {zs.canonical_mask(m, b.n) for m in b.members}
    return from_orbit_representatives(b.n, k, reps, verify=verify)


def from_document(doc: dict, *, verify: bool = True) -> CyclicMatroid:
    try:
        n = int(doc["n"])
        k = int(doc["k"])
        reps = [zs.parse_elements(s) for s in doc["orbit_representatives"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matroid document: {exc}") from exc
    return from_orbit_representatives(n, k, reps, verify=verify)


def dual(m: CyclicMatroid) -> CyclicMatroid:
    full = zs.full_mask(m.n)
    reps = [full & ~r.mask for r in m.representatives]
    return from_orbit_representatives(m.n, m.n - m.k, reps)


def uniform(n: int, k: int) -> CyclicMatroid:
    reps = {zs.canonical_mask(s, n) for s in zs.k_subsets(n, k)}
    return from_orbit_representatives(n, k, reps, verify=False)


def is_connected(m: CyclicMatroid) -> bool:
    """True iff no proper split E = E1 + E2 has r(E1) + r(E2) = r(E)."""
    n = m.n
    full = zs.full_mask(n)
    # element 0 is fixed in E1 so each split is seen once
    for e1 in range(1, full, 2):
        e2 = full & ~e1
        if e2 == 0:
            continue
        if m.rank(e1) + m.rank(e2) == m.k:
            return False
    return True


def cyclic_basis_intersection_excess(n: int, k: int, i: int, j: int) -> int:
    """|(B_i & B_j) \\ B_0| by the closed-form case split.

    The closed form counts the non-wrapping case; when B_j wraps past n-1
    (j + k > n) it can disagree with
    :func:`cyclic_basis_intersection_excess_direct`.
    """
    if not (1 <= j <= i <= n - 1) or not (1 <= k <= n):
        raise OutOfRange(f"need 1 <= j <= i <= n-1, got n={n}, k={k}, i={i}, j={j}")
    if i - j >= k:
        return 0
    return j + k - max(k, i)


def cyclic_basis_intersection_excess_direct(n: int, k: int, i: int, j: int) -> int:
    bi = zs.rotate((1 << k) - 1, i, n)
    bj = zs.rotate((1 << k) - 1, j, n)
    return _popcount(bi & bj & ~((1 << k) - 1))


def _q_extent(n: int, k: int, q) -> tuple[int, int, int]:
    mq = _to_mask(q, n)
    if mq == 0:
        raise BadSubset("Q must be nonempty")
    if mq >> k:
        raise BadSubset(f"Q must be a subset of B0 = {{0..{k - 1}}}")
    els = zs.elements_of(mq)
    q1, q2 = els[0], els[-1]
    if q2 - q1 >= n - k:
        raise SpreadTooLarge(f"q2 - q1 = {q2 - q1} >= n - k = {n - k}")
    return q1, q2, len(els)


def trivially_intersecting_cyclic_bases(n: int, k: int, q) -> list[int]:
    """Shifts s with B_s disjoint from Q, for Q inside B0 of small spread."""
    q1, q2, _ = _q_extent(n, k, q)
    return [q1 + i for i in range(q2 - q1 + 1, n - k + 1)]


def distinct_exchange_count(n: int, k: int, q) -> int:
    """Guaranteed number of distinct bases (B0 \\ Q) | P_i from exchanges."""
    q1, q2, r = _q_extent(n, k, q)
    return (n - k - q2 + q1 - 1) // (k - r + 1) + 1
