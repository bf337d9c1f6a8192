"""Index bookkeeping for exterior powers of a free module.

Basis elements of the q-th exterior power are strictly increasing tuples
of 0-based indices.  Signs follow the usual convention: inserting an
index i into a sorted tuple K costs (-1)^(number of entries of K below i
... actually above insertion point); see `insert_sign`.
"""

from __future__ import annotations

from itertools import combinations


def ext_basis(n, q):
    """Sorted q-subsets of range(n), in lexicographic order."""
    if q < 0 or q > n:
        return []
    return list(combinations(range(n), q))


def insert_sign(i, subset):
    """Sign and result of e_i wedge e_subset; sign 0 when i in subset."""
    if i in subset:
        return 0, None
    pos = 0
    while pos < len(subset) and subset[pos] < i:
        pos += 1
    merged = subset[:pos] + (i,) + subset[pos:]
    return (-1) ** pos, merged


def remove_sign(i, subset):
    """Sign of contracting e_i out of e_subset (i must be a member)."""
    pos = subset.index(i)
    rest = subset[:pos] + subset[pos + 1:]
    return (-1) ** pos, rest


def wedge_sign(a, b):
    """Sign of e_a wedge e_b as a multiple of e_{sorted(a+b)}; 0 on overlap."""
    if set(a) & set(b):
        return 0, None
    sign = 1
    merged = a
    for i in b:
        # append on the right: e_K ^ e_i = (-1)^(#{k in K : k > i}) e_{K+i}
        above = sum(1 for k in merged if k > i)
        if above & 1:
            sign = -sign
        pos = len(merged) - above
        merged = merged[:pos] + (i,) + merged[pos:]
    return sign, merged
