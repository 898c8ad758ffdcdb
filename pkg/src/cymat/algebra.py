"""Finite fields, cyclic codes, cyclic projective planes and k-normal elements.

Polynomials over F_p are tuples of coefficients in ascending degree with no
trailing zeros (the zero polynomial is ``()``).
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

from . import zn_sets as zs
from .errors import (
    CyclicityViolation,
    NotFound,
    NotIrreducible,
    ParseError,
    RankDeficient,
    TooLarge,
    ZeroElement,
)
from .matroid import BasesSet, CyclicMatroid, from_bases, is_cyclic
from .zn_sets import ZnSubset

Poly = tuple


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# -- polynomial arithmetic over F_p ------------------------------------------


def poly_trim(f: Sequence[int], p: int) -> Poly:
    out = [c % p for c in f]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_deg(f: Poly) -> int:
    return len(f) - 1


def poly_add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return poly_trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], p)


def poly_sub(f: Poly, g: Poly, p: int) -> Poly:
    return poly_add(f, tuple(-c for c in g), p)


def poly_mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return poly_trim(out, p)


def poly_divmod(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(poly_trim(f, p))
    dg = poly_deg(g)
    inv = pow(g[-1], p - 2, p)
    q = [0] * max(len(r) - dg, 1)
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        c = r[-1] * inv % p
        q[shift] = c
        for i, gc in enumerate(g):
            r[shift + i] = (r[shift + i] - c * gc) % p
        while r and r[-1] == 0:
            r.pop()
    return poly_trim(q, p), tuple(r)


def poly_mod(f: Poly, g: Poly, p: int) -> Poly:
    return poly_divmod(f, g, p)[1]


def monic_polys(p: int, d: int) -> Iterator[Poly]:
    """Monic degree-d polynomials, lower coefficients read as a base-p counter."""
    for low in product(range(p), repeat=d):
        yield tuple(low[::-1]) + (1,)


def is_irreducible(f: Poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1 .. deg(f)/2."""
    f = poly_trim(f, p)
    d = poly_deg(f)
    if d < 1:
        return False
    for e in range(1, d // 2 + 1):
        for g in monic_polys(p, e):
            if not poly_mod(f, g, p):
                return False
    return True


def first_irreducible(p: int, d: int) -> Poly:
    for f in monic_polys(p, d):
        if is_irreducible(f, p):
            return f
    raise NotFound(f"no irreducible polynomial of degree {d} over F_{p}")


def xn_minus_1(n: int, p: int) -> Poly:
    return poly_trim([-1] + [0] * (n - 1) + [1], p)


def factor_polynomial(f: Poly, p: int) -> list[Poly]:
    """Monic irreducible factors with multiplicity, by repeated trial division."""
    f = poly_trim(f, p)
    lead_inv = pow(f[-1], p - 2, p)
    f = poly_trim([c * lead_inv for c in f], p)
    factors = []
    e = 1
    while poly_deg(f) >= 2 * e:
        for g in monic_polys(p, e):
            q, r = poly_divmod(f, g, p)
            if not r:
                factors.append(g)
                f = q
                break
        else:
            e += 1
    if poly_deg(f) >= 1:
        factors.append(f)
    return sorted(factors)


def monic_divisors(f: Poly, p: int) -> list[Poly]:
    """All monic divisors of f, sorted by degree then coefficients."""
    counts: dict[Poly, int] = {}
    for g in factor_polynomial(f, p):
        counts[g] = counts.get(g, 0) + 1
    divs = [(1,)]
    for g, mult in counts.items():
        nxt = []
        for d in divs:
            cur = d
            for _ in range(mult + 1):
                nxt.append(cur)
                cur = poly_mul(cur, g, p)
        divs = nxt
    return sorted(set(divs), key=lambda d: (len(d), d))


# -- linear algebra over F_p ---------------------------------------------------


@dataclass(frozen=True)
class GfMatrix:
    """A matrix over the prime field F_p."""

    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if not self.rows or not self.rows[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", tuple(tuple(int(v) % self.p for v in r) for r in self.rows))

    @classmethod
    def of(cls, p: int, rows: Iterable[Iterable[int]]) -> "GfMatrix":
        return cls(p, tuple(tuple(r) for r in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def rank(self) -> int:
        return rank_mod_p([list(r) for r in self.rows], self.p)

    def row_basis(self) -> "GfMatrix":
        """Nonzero rows of the reduced row echelon form."""
        return GfMatrix(self.p, tuple(tuple(r) for r in _rref(self.rows, self.p)))


def _rref(rows, p: int) -> list[list[int]]:
    m = [list(r) for r in rows]
    if not m:
        return []
    width = len(m[0])
    piv_row = 0
    for col in range(width):
        pivot = next((i for i in range(piv_row, len(m)) if m[i][col] % p), None)
        if pivot is None:
            continue
        m[piv_row], m[pivot] = m[pivot], m[piv_row]
        inv = pow(m[piv_row][col], p - 2, p)
        m[piv_row] = [v * inv % p for v in m[piv_row]]
        for i in range(len(m)):
            if i != piv_row and m[i][col]:
                c = m[i][col]
                m[i] = [(a - c * b) % p for a, b in zip(m[i], m[piv_row])]
        piv_row += 1
        if piv_row == len(m):
            break
    return m[:piv_row]


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    if p == 2:
        return zs.rank_gf2_rows([zs.mask_of(j for j, v in enumerate(r) if v & 1) for r in rows])
    return len(_rref(rows, p))


def _independent_subsets(p: int, columns: list, k: int, chunk: Sequence[tuple[int, ...]]) -> list[int]:
    out = []
    if p == 2:
        for idx in chunk:
            if zs.rank_gf2_rows([columns[i] for i in idx]) == k:
                out.append(zs.mask_of(idx))
    else:
        for idx in chunk:
            if len(_rref([columns[i] for i in idx], p)) == k:
                out.append(zs.mask_of(idx))
    return out


def independent_column_sets(p: int, columns: list, k: int, jobs: int = 1) -> frozenset:
    """Masks of all k-sets of columns that are linearly independent."""
    n = len(columns)
    if p == 2:
        columns = [zs.mask_of(i for i, v in enumerate(c) if v & 1) for c in columns]
    if jobs <= 1:
        return frozenset(_independent_subsets(p, columns, k, list(combinations(range(n), k))))
    cands = list(combinations(range(n), k))
    size = max(1, len(cands) // (jobs * 4) + 1)
    chunks = [cands[i : i + size] for i in range(0, len(cands), size)]
    found: set[int] = set()
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for part in ex.map(_independent_subsets, [p] * len(chunks), [columns] * len(chunks), [k] * len(chunks), chunks):
            found.update(part)
    return frozenset(found)


def matroid_from_matrix(g: GfMatrix, jobs: int = 1) -> BasesSet:
    """Column matroid of a full-row-rank matrix: bases are independent k-column sets."""
    k, n = g.shape
    if g.rank() != k:
        raise RankDeficient(f"matrix has rank {g.rank()} < {k} rows")
    cols = [list(g.column(j)) for j in range(n)]
    return BasesSet(n, independent_column_sets(g.p, cols, k, jobs))


# -- cyclic codes -----------------------------------------------------------


@dataclass(frozen=True)
class CyclicCode:
    p: int
    n: int
    g: Poly  # generator polynomial, ascending coefficients

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        g = poly_trim(self.g, self.p)
        if not g or g[-1] != 1:
            raise ValueError("generator polynomial must be monic")
        if poly_mod(xn_minus_1(self.n, self.p), g, self.p):
            raise ValueError(f"g does not divide x^{self.n} - 1 over F_{self.p}")
        if not 1 <= self.n - poly_deg(g) <= self.n - 1:
            raise ValueError(f"code dimension {self.n - poly_deg(g)} outside 1..n-1")
        object.__setattr__(self, "g", g)

    @property
    def k(self) -> int:
        return self.n - poly_deg(self.g)

    def generator_matrix(self) -> GfMatrix:
        """Rows x^i g(x) for i = 0 .. k-1."""
        rows = []
        for i in range(self.k):
            row = [0] * self.n
            for j, c in enumerate(self.g):
                row[i + j] = c
            rows.append(row)
        return GfMatrix.of(self.p, rows)


_CODE_RE = re.compile(r"^\s*p\s*=\s*(\d+)\s*;\s*n\s*=\s*(\d+)\s*;\s*g\s*=\s*([\d,\s]+)$")


def parse_code_spec(text: str) -> CyclicCode:
    """Parse ``p=3;n=6;g=1,2,2,1`` (g ascending by degree)."""
    m = _CODE_RE.match(text)
    if not m:
        raise ParseError(f"expected 'p=<prime>;n=<len>;g=<c0,c1,...>', got {text!r}")
    p, n = int(m.group(1)), int(m.group(2))
    g = tuple(int(c) for c in m.group(3).split(",") if c.strip())
    try:
        return CyclicCode(p, n, g)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def code_matroid(c: CyclicCode, jobs: int = 1) -> CyclicMatroid:
    bases = matroid_from_matrix(c.generator_matrix(), jobs)
    if not is_cyclic(bases):
        raise CyclicityViolation("code matroid is not shift-closed")
    return from_bases(bases)


def cyclic_codes(p: int, n: int) -> list[CyclicCode]:
    """Every cyclic code of length n over F_p with 1 <= k <= n-1."""
    out = []
    for g in monic_divisors(xn_minus_1(n, p), p):
        if 1 <= poly_deg(g) <= n - 1:
            out.append(CyclicCode(p, n, g))
    return out


# -- cyclic projective planes -------------------------------------------------


def is_perfect_difference_set(d: ZnSubset) -> bool:
    n = d.n
    seen = [0] * n
    els = d.elements
    for a in els:
        for b in els:
            if a != b:
                seen[(a - b) % n] += 1
    return all(seen[r] == 1 for r in range(1, n))


def perfect_difference_set(q: int) -> ZnSubset:
    """Smallest canonical (q+1)-subset of Z_{q^2+q+1} with every nonzero
    difference represented exactly once."""
    n = q * q + q + 1
    if n > zs.MAX_N:
        raise TooLarge(f"q={q} gives n={n} > {zs.MAX_N}")
    size = q + 1
    found: list[int] = []
    # some shift of any solution contains {0, 1}
    used = [False] * n
    used[1] = used[n - 1] = True

    def extend(chosen: list[int]):
        if len(chosen) == size:
            found.append(zs.canonical_mask(zs.mask_of(chosen), n))
            return
        for c in range(chosen[-1] + 1, n):
            diffs = []
            ok = True
            for e in chosen:
                for dd in ((c - e) % n, (e - c) % n):
                    if used[dd] or dd in diffs:
                        ok = False
                        break
                    diffs.append(dd)
                if not ok:
                    break
            if not ok:
                continue
            for dd in diffs:
                used[dd] = True
            extend(chosen + [c])
            for dd in diffs:
                used[dd] = False

    extend([0, 1])
    if not found:
        raise NotFound(f"no perfect difference set for q={q}")
    return ZnSubset(n, min(found))


def expected_plane_rank(q: int) -> int:
    """GF(2)-rank of the PG(2, q) incidence matrix: q^2+q for odd q, 3^t+1 for q = 2^t."""
    if q % 2:
        return q * q + q
    t = q.bit_length() - 1
    if q != 1 << t:
        raise ValueError(f"q={q} is neither odd nor a power of two")
    return 3**t + 1


def cyclic_plane_incidence(q: int) -> GfMatrix:
    inc = zs.circulant_matrix(perfect_difference_set(q))
    return GfMatrix.of(2, inc.tolist())


PLANE_FULL_LIMIT = 20_000


def plane_matroid(q: int, full: bool = False, jobs: int = 1) -> CyclicMatroid:
    """Column matroid of the cyclic plane incidence matrix over F_2.

    Basis enumeration over more than PLANE_FULL_LIMIT candidates requires
    ``full=True``; such large matroids are representable by construction, so
    only shift closure is checked, not the exchange axiom.
    """
    inc = cyclic_plane_incidence(q)
    gen = inc.row_basis()
    k, n = gen.shape
    large = comb(n, k) > PLANE_FULL_LIMIT
    if large and not full:
        raise TooLarge(f"C({n},{k}) = {comb(n, k)} candidate bases; request full enumeration (--full)")
    bases = matroid_from_matrix(gen, jobs)
    if not is_cyclic(bases):
        raise CyclicityViolation("plane matroid is not shift-closed")
    return from_bases(bases, verify=not large)


# -- extension fields and k-normal elements ---------------------------------


@dataclass(frozen=True)
class ExtensionField:
    """F_{p^d} as F_p[x]/(modulus), elements as length-d coefficient tuples."""

    p: int
    modulus: Poly

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        m = poly_trim(self.modulus, self.p)
        if not m or m[-1] != 1:
            raise NotIrreducible("modulus must be monic")
        if not is_irreducible(m, self.p):
            raise NotIrreducible(f"modulus {m} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", m)

    @classmethod
    def default(cls, p: int, d: int) -> "ExtensionField":
        return cls(p, first_irreducible(p, d))

    @property
    def degree(self) -> int:
        return poly_deg(self.modulus)

    @property
    def order(self) -> int:
        return self.p**self.degree

    def element(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        d = self.degree
        c = list(coeffs)
        if len(c) > d:
            c = list(poly_mod(poly_trim(c, self.p), self.modulus, self.p))
        c = [v % self.p for v in c] + [0] * (d - len(c))
        return tuple(c)

    def from_int(self, value: int) -> tuple[int, ...]:
        """Element whose coefficients are the base-p digits of ``value``."""
        digits = []
        for _ in range(self.degree):
            value, r = divmod(value, self.p)
            digits.append(r)
        return tuple(digits)

    def to_int(self, a: Sequence[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(a))

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        prod = poly_mul(poly_trim(a, self.p), poly_trim(b, self.p), self.p)
        return self.element(poly_mod(prod, self.modulus, self.p))

    def power(self, a: Sequence[int], e: int) -> tuple[int, ...]:
        result = self.element((1,))
        base = tuple(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def conjugates(self, a: Sequence[int]) -> list[tuple[int, ...]]:
        """a, a^p, ..., a^(p^(d-1))."""
        out = [tuple(a)]
        for _ in range(self.degree - 1):
            out.append(self.power(out[-1], self.p))
        return out


def parse_element(text: str) -> tuple[int, ...]:
    """Field element literal: comma-separated coefficients ascending by degree."""
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise ParseError(f"bad field element literal {text!r}") from exc


def normality_defect(field: ExtensionField, alpha: Sequence[int]) -> int:
    """n minus the F_p-dimension spanned by the conjugates of alpha."""
    return field.degree - rank_mod_p([list(c) for c in field.conjugates(alpha)], field.p)


def knormal_matroid(
    p: int, n: int, modulus: Optional[Poly], alpha: Sequence[int]
) -> tuple[int, CyclicMatroid]:
    """(k, M) where alpha is k-normal and M is the cyclic (n-k)-matroid of
    index sets S with {alpha^(p^i) : i in S} linearly independent."""
    field = ExtensionField(p, modulus) if modulus is not None else ExtensionField.default(p, n)
    if field.degree != n:
        raise ValueError(f"modulus has degree {field.degree}, expected {n}")
    alpha = field.element(alpha)
    if not any(alpha):
        raise ZeroElement("alpha must be nonzero")
    conj = [list(c) for c in field.conjugates(alpha)]
    rank = rank_mod_p(conj, p)
    bases = BasesSet(n, independent_column_sets(p, conj, rank))
    if not is_cyclic(bases):
        raise CyclicityViolation("conjugate matroid is not shift-closed")
    return n - rank, from_bases(bases)


KNORMAL_SCAN_LIMIT = 1 << 20


def find_knormal(p: int, n: int, k: int, modulus: Optional[Poly] = None) -> tuple[int, ...]:
    """First nonzero element, in base-p integer order, with normality defect k."""
    field = ExtensionField(p, modulus) if modulus is not None else ExtensionField.default(p, n)
    if field.order > KNORMAL_SCAN_LIMIT:
        raise TooLarge(f"field of order {field.order} exceeds scan limit {KNORMAL_SCAN_LIMIT}")
    for v in range(1, field.order):
        a = field.from_int(v)
        if normality_defect(field, a) == k:
            return a
    raise NotFound(f"no {k}-normal element in F_{p}^{n}")
