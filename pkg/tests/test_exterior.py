"""Signs and index bookkeeping for wedge powers."""

from itertools import combinations
from math import comb

import pytest

from nashindex.exterior import ext_basis, insert_sign, remove_sign, wedge_sign


@pytest.mark.parametrize("n,q", [(3, 0), (3, 1), (3, 2), (3, 3), (5, 2)])
def test_basis_size_and_order(n, q):
    basis = ext_basis(n, q)
    assert len(basis) == comb(n, q)
    assert basis == sorted(basis)
    assert all(len(b) == q and sorted(set(b)) == list(b) for b in basis)


def test_insert_remove_roundtrip():
    subset = (0, 2, 5)
    for i in (1, 3, 4, 6):
        s, bigger = insert_sign(i, subset)
        assert i in bigger
        s2, back = remove_sign(i, bigger)
        assert back == subset
        assert s * s2 == 1


def test_insert_sign_counts_transpositions():
    assert insert_sign(0, (1, 2)) == (1, (0, 1, 2))
    assert insert_sign(3, (1, 2)) == (1, (1, 2, 3))
    assert insert_sign(1, (0, 2)) == (-1, (0, 1, 2))
    assert insert_sign(2, (0, 2)) == (0, None)


def test_wedge_sign_antisymmetry():
    for n in (3, 4):
        for a in ext_basis(n, 1):
            for b in ext_basis(n, 1):
                sa, ma = wedge_sign(a, b)
                sb, mb = wedge_sign(b, a)
                if set(a) & set(b):
                    assert sa == 0 and sb == 0
                else:
                    assert sa == -sb and sa in (1, -1)
                    assert ma == mb == tuple(sorted(a + b))


def test_wedge_sign_associates():
    n = 5
    singles = ext_basis(n, 1)
    for a in singles:
        for b in singles:
            for c in singles:
                if len({a[0], b[0], c[0]}) < 3:
                    continue
                sab, ab = wedge_sign(a, b)
                sbc, bc = wedge_sign(b, c)
                left = sab * wedge_sign(ab, c)[0]
                right = sbc * wedge_sign(a, bc)[0]
                assert left == right


def test_koszul_square_zero_via_signs():
    """Contracting twice along the basis directions must cancel: the
    (i, j) and (j, i) removal paths from any subset carry opposite
    signs.  This is the combinatorial core of every square-zero check
    downstream."""
    n, q = 4, 3
    for subset in ext_basis(n, q):
        for i, j in combinations(subset, 2):
            sign1, s1 = remove_sign(i, subset)
            sign2, _ = remove_sign(j, s1)
            sign3, t1 = remove_sign(j, subset)
            sign4, _ = remove_sign(i, t1)
            assert sign1 * sign2 == -sign3 * sign4
