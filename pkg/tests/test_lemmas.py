from fractions import Fraction
from itertools import permutations
from math import comb, factorial

import pytest

from cayleyid.cayley import lemma_check
from cayleyid.lemmas import (LEMMAS, binomial_poly, cycles, default_grid, enumerate_bmatrices,
                             matching_cycle_count, perfect_matchings, rising, sign)
from cayleyid.ring import S, Ring, param

from oracles import perm_sign

GRID = default_grid(3)


def _grid_id(item):
    name, params = item
    return name + "-" + "-".join(f"{k}={v}" for k, v in params.items() if k != "seed")


@pytest.mark.parametrize("name,params", GRID, ids=[_grid_id(g) for g in GRID])
def test_default_grid(name, params):
    assert lemma_check(name, **params)


def test_grid_covers_every_lemma():
    assert {name for name, _ in GRID} == set(LEMMAS)
    assert default_grid(0) == []
    assert all(p.get("seed", 7) == 7 for _, p in default_grid(2, seed=7))


def test_unknown_lemma():
    with pytest.raises(ValueError):
        lemma_check("no_such_lemma")


def test_cycle_generating_function_example():
    ring = Ring([S])
    s = ring.var(S)
    total = ring.zero()
    for perm in permutations(range(3)):
        seen, count = set(), 0
        for a in range(3):
            if a not in seen:
                count += 1
                while a not in seen:
                    seen.add(a)
                    a = perm[a]
        total = total + s ** count
    assert str(total) == "s^3+3s^2+2s"
    assert lemma_check("cycle_genfn", k=3)


def test_small_parameter_examples():
    assert lemma_check("gvform", n=1)
    assert lemma_check("chu_vandermonde", p=3)
    assert lemma_check("hessenberg", ell=2, k=1)


def test_chu_vandermonde_by_hand():
    ring = Ring()
    w, m = ring.var(param("w")), ring.var(param("m"))
    lhs = sum((binomial_poly(w, j) * binomial_poly(m, 3 - j) for j in range(4)), ring.zero())
    assert lhs == binomial_poly(w + m, 3)
    for wv in range(5):
        for mv in range(5):
            point = {param("w"): Fraction(wv), param("m"): Fraction(mv)}
            assert binomial_poly(w + m, 3).eval(point) == comb(wv + mv, 3)


def test_binomial_poly_at_integers():
    ring = Ring()
    r = ring.var(param("r"))
    for k in range(6):
        p = binomial_poly(r, k)
        for v in range(-3, 8):
            expected = comb(v, k) if v >= 0 else (-1) ** k * comb(k - v - 1, k)
            assert p.eval({param("r"): Fraction(v)}) == expected


def test_rising_factorial():
    ring = Ring([S])
    s = ring.var(S)
    assert rising(ring, s, 1, 3) == s * (s + 1) * (s + 2)
    assert rising(ring, s, 2, 0) == ring.one()


def test_permutation_helpers():
    for n in range(1, 6):
        for perm in permutations(range(n)):
            cs = cycles(perm)
            assert sorted(a for c in cs for a in c) == list(range(n))
            for c in cs:
                for a, b in zip(c, c[1:] + c[:1]):
                    assert perm[a] == b
            assert sign(perm) == perm_sign(perm) == (-1) ** (n - len(cs))


def test_perfect_matchings_count_and_cycles():
    for k in range(0, 5):
        pts = list(range(2 * k))
        ms = perfect_matchings(pts)
        assert len(ms) == factorial(2 * k) // (2 ** k * factorial(k))
        if k:
            ref = [(2 * i, 2 * i + 1) for i in range(k)]
            assert matching_cycle_count(ref, ref) == k


def test_bmatrix_candidates_cover_the_triangle():
    for ell in range(1, 4):
        for k in range(0, 3):
            mats = list(enumerate_bmatrices(ell, k))
            assert len(mats) == (k + 1) ** (ell * (ell + 1) // 2)
            assert len(mats) == len({tuple(sorted(B.items())) for B in mats})
            assert all(i + j <= ell + 1 for B in mats for i, j in B)
