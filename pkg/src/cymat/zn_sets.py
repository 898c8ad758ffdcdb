"""Subsets of Z_n as n-bit masks: shifts, block structure, orbits, stabilizers.

A subset is stored as an integer mask where bit ``e`` is set iff ``e`` belongs
to the subset.  Every operation here is a pure function of immutable values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import EmptySet, ParseError

MAX_N = 63

_SUBSET_RE = re.compile(r"^\s*(\d+)\s*:\s*\{([^}]*)\}\s*$")
_BRACES_RE = re.compile(r"^\s*\{([^}]*)\}\s*$")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def rotate(mask: int, s: int, n: int) -> int:
    """Cyclic shift of a mask by ``s`` positions (element e -> e+s mod n)."""
    s %= n
    if s == 0:
        return mask
    return ((mask << s) | (mask >> (n - s))) & ((1 << n) - 1)


def canonical_mask(mask: int, n: int) -> int:
    """Smallest mask value among all n rotations."""
    best = mask
    m = mask
    full = (1 << n) - 1
    for _ in range(n - 1):
        m = ((m << 1) | (m >> (n - 1))) & full
        if m < best:
            best = m
    return best


def format_elements(mask: int) -> str:
    return "{" + ",".join(str(e) for e in elements_of(mask)) + "}"


def parse_elements(text: str) -> tuple[int, ...]:
    """Parse ``{1,2,3}`` (braces required) into a tuple of ints."""
    m = _BRACES_RE.match(text)
    if not m:
        raise ParseError(f"expected '{{e1,e2,...}}', got {text!r}")
    body = m.group(1).strip()
    if not body:
        return ()
    try:
        return tuple(int(tok) for tok in body.split(","))
    except ValueError as exc:
        raise ParseError(f"bad element list {text!r}") from exc


@dataclass(frozen=True, order=False)
class ZnSubset:
    """A subset of Z_n.  Equality is by modulus and mask."""

    n: int
    mask: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"modulus must be in 1..{MAX_N}, got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} has elements outside Z_{self.n}")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "ZnSubset":
        elements = list(elements)
        for e in elements:
            if not 0 <= e < n:
                raise ValueError(f"element {e} not in Z_{n}")
        return cls(n, mask_of(elements))

    @classmethod
    def parse(cls, text: str) -> "ZnSubset":
        """Parse the ``n:{e1,e2,...}`` text format."""
        m = _SUBSET_RE.match(text)
        if not m:
            raise ParseError(f"expected 'n:{{e1,...}}', got {text!r}")
        n = int(m.group(1))
        return cls.of(n, parse_elements("{" + m.group(2) + "}"))

    @classmethod
    def interval(cls, n: int, k: int, start: int = 0) -> "ZnSubset":
        """The cyclic interval {start, ..., start+k-1}."""
        return cls(n, rotate((1 << k) - 1, start, n))

    @property
    def elements(self) -> tuple[int, ...]:
        return elements_of(self.mask)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, e: int) -> bool:
        return 0 <= e < self.n and bool(self.mask >> e & 1)

    def complement(self) -> "ZnSubset":
        return ZnSubset(self.n, full_mask(self.n) & ~self.mask)

    def __str__(self) -> str:
        return f"{self.n}:{format_elements(self.mask)}"

    def __repr__(self) -> str:
        return f"ZnSubset({self})"


@dataclass(frozen=True)
class BlockStructure:
    blocks: tuple[tuple[int, int], ...]  # (start, length), ascending start

    @property
    def composition(self) -> tuple[int, ...]:
        return tuple(length for _, length in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class Orbit:
    representative: ZnSubset
    size: int
    stabilizer_generator: int


def shift(a: ZnSubset, s: int) -> ZnSubset:
    return ZnSubset(a.n, rotate(a.mask, s, a.n))


def block_structure(a: ZnSubset) -> BlockStructure:
    """Maximal runs of consecutive residues, ordered by their first element.

    The full set is reported as a single block starting at 0.
    """
    n, mask = a.n, a.mask
    if mask == 0:
        raise EmptySet("block structure of the empty set is undefined")
    if mask == full_mask(n):
        return BlockStructure(((0, n),))
    blocks = []
    for e in elements_of(mask):
        if (mask >> ((e - 1) % n)) & 1:
            continue
        length = 1
        while (mask >> ((e + length) % n)) & 1:
            length += 1
        blocks.append((e, length))
    return BlockStructure(tuple(blocks))


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def stabilizer(a: ZnSubset) -> tuple[int, int]:
    """Return ``(generator, size)`` of Stab(a); trivial stabilizer is ``(0, 1)``."""
    n = a.n
    for d in _divisors(n):
        if d == n:
            break
        if rotate(a.mask, d, n) == a.mask:
            return d, n // d
    return 0, 1


def orbit(a: ZnSubset) -> Orbit:
    gen, stab_size = stabilizer(a)
    rep = ZnSubset(a.n, canonical_mask(a.mask, a.n))
    return Orbit(rep, a.n // stab_size, gen)


def orbit_members(a: ZnSubset) -> list[ZnSubset]:
    """Distinct shifts of ``a`` in shift order 0, 1, ..."""
    gen, _ = stabilizer(a)
    period = gen if gen else a.n
    return [shift(a, s) for s in range(period)]


def arithmetic_progression_decomposition(a: ZnSubset) -> tuple[int, ...]:
    """Coset starts a_i in [0, s0) with a = union of (a_i + Stab(a)).

    For a trivial stabilizer the elements themselves are returned.
    """
    gen, _ = stabilizer(a)
    if gen == 0:
        return a.elements
    return tuple(e for e in a.elements if e < gen)


def circulant_matrix(a: ZnSubset) -> np.ndarray:
    """0/1 matrix whose row i is the incidence vector of a + i."""
    n = a.n
    first = np.array([(a.mask >> j) & 1 for j in range(n)], dtype=np.uint8)
    return np.stack([np.roll(first, i) for i in range(n)])


def subset_polynomial(a: ZnSubset) -> tuple[int, ...]:
    """Coefficients (c_0, ..., c_{n-1}) of f_A in Z_2[x]/(x^n - 1)."""
    return tuple((a.mask >> j) & 1 for j in range(a.n))


def polymul_mod_xn1_gf2(f: Sequence[int], g: Sequence[int], n: int) -> tuple[int, ...]:
    """Product of two GF(2) polynomials reduced modulo x^n - 1."""
    out = [0] * n
    for i, fi in enumerate(f):
        if not fi & 1:
            continue
        for j, gj in enumerate(g):
            if gj & 1:
                out[(i + j) % n] ^= 1
    return tuple(out)


def rank_gf2_rows(rows: Sequence[int]) -> int:
    """Rank over GF(2) of rows given as int bitsets."""
    pivots: dict[int, int] = {}  # leading bit -> row
    for r in rows:
        while r:
            h = r.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = r
                break
            r ^= p
    return len(pivots)


def rows_to_bits(m) -> list[int]:
    arr = np.asarray(m, dtype=np.int64) & 1
    if arr.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return [mask_of(np.flatnonzero(row).tolist()) for row in arr]


def rank_gf2(m) -> int:
    """Rank of a 0/1 matrix over GF(2)."""
    return rank_gf2_rows(rows_to_bits(m))


def k_subsets(n: int, k: int) -> Iterator[int]:
    """All k-subset masks of Z_n in increasing numeric order (Gosper's hack)."""
    if k == 0:
        yield 0
        return
    if k > n:
        return
    m = (1 << k) - 1
    limit = 1 << n
    while m < limit:
        yield m
        c = m & -m
        r = m + c
        m = (((r ^ m) >> 2) // c) | r
