from __future__ import annotations

from itertools import combinations

import pytest

from cymat import algebra as al
from cymat import matroid as mt
from cymat import zn_sets as zs
from cymat.errors import NotFound, NotIrreducible, ParseError, RankDeficient, TooLarge, ZeroElement
from cymat.search import enumerate_cyclic_matroids

import checks


def test_polynomial_division():
    f = al.xn_minus_1(7, 2)
    q, r = al.poly_divmod(f, (1, 0, 1, 1), 2)
    assert r == ()
    assert al.poly_mul(q, (1, 0, 1, 1), 2) == f


def test_irreducibility():
    assert al.is_irreducible((1, 1, 1), 2)
    assert not al.is_irreducible((1, 0, 1), 2)
    assert al.first_irreducible(2, 4) == (1, 1, 0, 0, 1)
    assert al.first_irreducible(3, 2) == (1, 0, 1)


def test_factorization_of_x7_minus_1():
    assert al.factor_polynomial(al.xn_minus_1(7, 2), 2) == [(1, 0, 1, 1), (1, 1), (1, 1, 0, 1)]
    assert len(al.monic_divisors(al.xn_minus_1(7, 2), 2)) == 8


def test_gf_matrix_rank():
    assert al.GfMatrix.of(3, [[1, 2], [2, 1]]).rank() == 1
    assert al.GfMatrix.of(5, [[1, 2], [2, 1]]).rank() == 2
    with pytest.raises(ValueError):
        al.GfMatrix.of(4, [[1]])


def test_fano_from_simplex_generator():
    b = al.matroid_from_matrix(al.GfMatrix.of(2, checks.FANO_GENERATOR))
    assert b.members == frozenset(zs.mask_of(t) for t in checks.FANO_BASES)


def test_rank_deficient_matrix():
    with pytest.raises(RankDeficient):
        al.matroid_from_matrix(al.GfMatrix.of(2, [[1, 1, 0], [1, 1, 0]]))


def test_parallel_column_scan_matches_serial():
    g = al.GfMatrix.of(3, al.CyclicCode(3, 8, (2, 0, 1)).generator_matrix().rows)
    assert al.matroid_from_matrix(g, jobs=1).members == al.matroid_from_matrix(g, jobs=2).members


def test_cyclic_code_validation_and_parsing():
    c = al.parse_code_spec("p=3;n=6;g=1,2,2,1")
    assert (c.p, c.n, c.k) == (3, 6, 3)
    for bad in ["p=2;n=7;g=1,1,1", "p=4;n=3;g=1,1", "nonsense", "p=2;n=3;g=1"]:
        with pytest.raises(ParseError):
            al.parse_code_spec(bad)


def test_code_examples():
    m = al.code_matroid(al.CyclicCode(2, 7, (1, 0, 1, 1)))
    assert (m.n, m.k) == (7, 4)
    m = al.code_matroid(al.CyclicCode(2, 5, (1, 1, 1, 1, 1)))
    assert m.k == 1 and m.basis_count == 5


def test_codes_reproduce_the_three_rank3_matroids_on_z6():
    enumerated = {m.bases for m in enumerate_cyclic_matroids(6, 3)}
    codes = [al.CyclicCode(2, 6, (1, 0, 0, 1)), al.CyclicCode(3, 6, (1, 2, 2, 1)), al.CyclicCode(5, 6, (1, 2, 2, 1))]
    got = [al.code_matroid(c) for c in codes]
    assert [m.basis_count for m in got] == [8, 18, 20]
    assert {m.bases for m in got} == enumerated


@pytest.mark.parametrize("p", [2, 3, 5])
def test_every_cyclic_code_gives_a_cyclic_matroid(p):
    for n in range(2, 11):
        for c in al.cyclic_codes(p, n):
            m = al.code_matroid(c)
            assert mt.is_cyclic(m.bases_set())
            assert mt.verify_exchange_axiom(m.bases_set())
            # shifting column indices of a basis gives a basis
            assert all(zs.rotate(b, 1, n) in m.bases for b in m.bases)


@pytest.mark.parametrize("q,expected", [(2, "7:{0,1,3}"), (3, "13:{0,1,4,6}")])
def test_perfect_difference_sets(q, expected):
    d = al.perfect_difference_set(q)
    assert str(d) == expected
    assert al.is_perfect_difference_set(d)


def test_perfect_difference_set_q4():
    d = al.perfect_difference_set(4)
    assert d.n == 21 and len(d) == 5 and al.is_perfect_difference_set(d)


@pytest.mark.parametrize("q,rank", [(2, 4), (3, 12), (4, 10), (5, 30)])
def test_expected_plane_rank(q, rank):
    assert al.expected_plane_rank(q) == rank
    assert al.cyclic_plane_incidence(q).rank() == rank


def test_plane_matroids():
    m = al.plane_matroid(2)
    assert (m.n, m.k) == (7, 4)
    assert mt.verify_exchange_axiom(m.bases_set())
    m3 = al.plane_matroid(3)
    assert (m3.n, m3.k, m3.basis_count) == (13, 12, 13)
    with pytest.raises(TooLarge):
        al.plane_matroid(4)


def test_extension_field_arithmetic():
    f = al.ExtensionField.default(2, 4)
    x = f.element((0, 1))
    assert f.power(x, 15) == f.element((1,))
    assert len(set(f.power(x, e) for e in range(15))) == 15
    with pytest.raises(NotIrreducible):
        al.ExtensionField(2, (1, 0, 1))


def test_knormal_scan():
    a = al.find_knormal(2, 4, 0)
    assert al.normality_defect(al.ExtensionField.default(2, 4), a) == 0
    with pytest.raises(NotFound):
        al.find_knormal(2, 4, 4)
    a = al.find_knormal(2, 6, 1)
    k, m = al.knormal_matroid(2, 6, None, a)
    assert (k, m.k) == (1, 5)
    assert 0b11111 in m.bases


def test_knormal_rejects_zero():
    with pytest.raises(ZeroElement):
        al.knormal_matroid(2, 4, None, (0, 0, 0, 0))


def test_normal_element_gives_full_rank_matroid():
    a = al.find_knormal(2, 4, 0)
    k, m = al.knormal_matroid(2, 4, None, a)
    assert k == 0 and m.k == 4 and m.basis_count == 1


@pytest.mark.parametrize("n", [4, 6])
def test_independent_conjugate_sets_are_shift_closed(n):
    field = al.ExtensionField.default(2, n)
    for v in range(field.order):
        a = field.from_int(v)
        conj = [list(c) for c in field.conjugates(a)]
        indep = {
            zs.mask_of(s)
            for r in range(n + 1)
            for s in combinations(range(n), r)
            if al.rank_mod_p([conj[i] for i in s], 2) == r
        }
        assert all(zs.rotate(s, 1, n) in indep for s in indep)
