"""Truncated Cech double complex and its degree-0 strand over the base.

For each chart subset I the strand piece of a graded module M is the
degree-0 part of (M / s_I-torsion) shifted by the denominator (s_I)^d,
a finite module over the base ring A carried by monomial generators
e_K * s^alpha.  Horizontal differentials insert charts with alternating
signs and multiply by s_j^d; vertical differentials wedge with the
pulled-back form.  Totalization twists the vertical maps by (-1)^p and
the squared differential is checked to vanish exactly.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

from .ring import QQ, QQ0, Polynomial, RingContext, mono_mul
from .engine import (
    FreeModule, module_saturate, graded_resolution, vec_add, DEFAULT_BUDGET,
)


class TwistBound:
    __slots__ = ("d", "source_twists", "overridden")

    def __init__(self, d, source_twists, overridden=False):
        self.d = d
        self.source_twists = sorted(source_twists)
        self.overridden = overridden

    def __repr__(self):
        return "TwistBound(d=%d%s)" % (self.d,
                                       ", overridden" if self.overridden else "")


def twist_bound(fps, n, depth=None, override=None, budget=None):
    """Denominator exponent d for the truncation.

    Harvests generator twists from partial resolutions of every module
    (depth defaults to n) and takes max - (n-1), clamped to at least 1.
    An explicit override wins; the harvest is still recorded.
    """
    if depth is None:
        depth = n
    twists = []
    for fp in fps:
        twists.extend(fp.ambient.twists)
        for mod, _ in graded_resolution(fp.relations, fp.ambient,
                                        depth, budget):
            twists.extend(mod.twists)
    if override is not None:
        if override < 1:
            raise ValueError("twist bound override must be >= 1")
        return TwistBound(override, twists, overridden=True)
    d = max(twists, default=0) - (n - 1)
    if d < 1:
        d = 1
    return TwistBound(d, twists)


class Piece:
    """One chart-subset piece of a strand: its generators (position in
    the ambient module, s-exponent tuple), their index, and relation
    columns with entries over the base ring only."""

    __slots__ = ("I", "gens", "index", "relations")

    def __init__(self, I, gens, relations):
        self.I = I
        self.gens = gens
        self.index = {g: i for i, g in enumerate(gens)}
        self.relations = relations


def _s_monomials(ctx, deg):
    if deg < 0:
        return []
    monos = ctx.monos_of_degree(deg, block="s")
    return sorted(ctx.s_exponents(m) for m in monos)


def _to_base(ctx, actx, xexp):
    # x-exponent tuple of the graded ring, as a base-ring monomial
    return tuple(xexp)


def build_piece(fp, I, d, p, actx, budget=None):
    """Strand piece for chart subset I at Cech degree p."""
    ctx = fp.ambient.ctx
    delta = d * (p + 1)
    s_one = Polynomial.const(ctx, 1)
    for i in I:
        s_one = s_one * Polynomial.var(ctx, ctx.s_vars[i])
    if fp.relations:
        sat = module_saturate(fp.relations, s_one, fp.ambient, budget)
    else:
        sat = []
    gens = []
    for pos in range(fp.ambient.rank):
        for alpha in _s_monomials(ctx, delta - fp.ambient.twists[pos]):
            gens.append((pos, alpha))
    piece = Piece(tuple(I), gens, [])
    for v in sat:
        dv = fp.ambient.vec_s_degree(v)
        if dv is None:
            raise ValueError("saturated relation is not homogeneous")
        for beta in _s_monomials(ctx, delta - dv):
            col = {}
            for (pos, m), c in v.items():
                alpha = tuple(a + b for a, b in
                              zip(ctx.s_exponents(m), beta))
                tgt = piece.index.get((pos, alpha))
                if tgt is None:
                    raise ValueError("relation leaves the strand degree")
                key = (tgt, _to_base(ctx, actx, ctx.x_exponents(m)))
                s = col.get(key, QQ0) + c
                if s:
                    col[key] = s
                else:
                    del col[key]
            if col:
                piece.relations.append(col)
    return piece


def chart_subsets(n, p):
    return list(combinations(range(n), p + 1))


class TotalComplex:
    """Degree-0 strand of the totalized double complex, over the base.

    terms[k]: (module, relations, layout) where layout maps
    (p, q, I, pos, alpha) to a global generator index.
    diffs[k]: columns of the differential terms[k] -> terms[k+1].
    """

    __slots__ = ("actx", "terms", "diffs", "kmin", "kmax", "piece_sizes")

    def __init__(self, actx):
        self.actx = actx
        self.terms = {}
        self.diffs = {}
        self.kmin = 0
        self.kmax = -1
        self.piece_sizes = {}


def totalize(fps, wedges, n, d, actx, budget=None):
    """Assemble the total complex of the truncated double complex.

    fps: dict q -> FPModule over the graded ring (a single 0 entry for
    plain sheaf-cohomology runs).  wedges: dict q -> columns of the
    vertical map at q (empty dict when there is no form).  The squared
    differential is checked to be exactly zero; anything else is an
    internal inconsistency and raises.
    """
    qs = sorted(fps)
    if budget is None:
        budget = DEFAULT_BUDGET
    pieces = {}
    for q in qs:
        for p in range(n):
            for I in chart_subsets(n, p):
                pieces[(p, q, I)] = build_piece(fps[q], I, d, p,
                                                actx, budget)

    total = TotalComplex(actx)
    total.kmax = (n - 1) + max(qs)
    layout = {}
    ranks = {}
    for k in range(total.kmax + 1):
        idx = 0
        rels = []
        for q in qs:
            p = k - q
            if p < 0 or p > n - 1:
                continue
            for I in chart_subsets(n, p):
                piece = pieces[(p, q, I)]
                base = idx
                for g in piece.gens:
                    layout[(p, q, I) + g] = base + piece.index[g]
                idx += len(piece.gens)
                for col in piece.relations:
                    rels.append({(base + t, m): c
                                 for (t, m), c in col.items()})
                total.piece_sizes[(p, q, I)] = len(piece.gens)
        ranks[k] = idx
        total.terms[k] = (FreeModule(actx, idx), rels)

    one = actx.one_mono
    for k in range(total.kmax):
        cols = [{} for _ in range(ranks[k])]
        for q in qs:
            p = k - q
            if p < 0 or p > n - 1:
                continue
            gctx = fps[q].ambient.ctx
            wcols = wedges.get(q) if (q + 1) in fps else None
            for I in chart_subsets(n, p):
                piece = pieces[(p, q, I)]
                for g in piece.gens:
                    pos, alpha = g
                    col = cols[layout[(p, q, I) + g]]
                    if p + 1 <= n - 1:
                        for j in range(n):
                            if j in I:
                                continue
                            J = tuple(sorted(I + (j,)))
                            sign = QQ(-1) if J.index(j) & 1 else QQ(1)
                            a2 = list(alpha)
                            a2[j] += d
                            tgt = layout[(p + 1, q, J, pos, tuple(a2))]
                            key = (tgt, one)
                            s = col.get(key, QQ0) + sign
                            if s:
                                col[key] = s
                            else:
                                del col[key]
                    if wcols is not None:
                        vsign = QQ(-1) if p & 1 else QQ(1)
                        for (tpos, m), c in wcols[pos].items():
                            if any(gctx.s_exponents(m)):
                                raise ValueError(
                                    "vertical map has positive s-degree")
                            key = (layout[(p, q + 1, I, tpos, alpha)],
                                   gctx.x_exponents(m))
                            s = col.get(key, QQ0) + vsign * c
                            if s:
                                col[key] = s
                            else:
                                del col[key]
        total.diffs[k] = cols

    for k in range(total.kmax - 1):
        nxt = total.diffs[k + 1]
        for col in total.diffs[k]:
            img = {}
            for (pos, m), c in col.items():
                for (p2, m2), c2 in nxt[pos].items():
                    key = (p2, tuple(a + b for a, b in zip(m2, m)))
                    s = img.get(key, QQ0) + c * c2
                    if s:
                        img[key] = s
                    else:
                        del img[key]
            if img:
                raise ArithmeticError(
                    "total differential does not square to zero")
    return total


def prune_total(total):
    """Shrink a total complex without changing any cohomology module.

    Two moves run to a fixed point.  A relation column whose whole entry
    at some row is a nonzero constant rewrites that generator in terms
    of the others, giving a smaller presentation of the same module.  A
    differential entry that is a nonzero constant, in a source row and a
    target row that no relation touches, cancels the generator pair with
    the usual Gaussian correction of the surrounding entries.  Only
    constants are ever inverted, so all arithmetic stays polynomial.
    """
    one = total.actx.one_mono
    kmax = total.kmax
    ks = sorted(total.terms)
    alive = {k: set(range(total.terms[k][0].rank)) for k in ks}
    rels = {}
    dcols = {}
    row_occ = {k: {} for k in ks}
    REL, DIF = 0, 1

    def occ_add(k, row, handle):
        row_occ[k].setdefault(row, set()).add(handle)

    def occ_del(k, row, handle):
        s = row_occ[k].get(row)
        if s is not None:
            s.discard(handle)

    def to_rows(flat):
        col = {}
        for (r, m), c in flat.items():
            col.setdefault(r, {})[m] = c
        return col

    for k in ks:
        rels[k] = {}
        for cid, flat in enumerate(total.terms[k][1]):
            col = to_rows(flat)
            if col:
                rels[k][cid] = col
                for r in col:
                    occ_add(k, r, (REL, k, cid))
        if k < kmax:
            dcols[k] = {}
            for src, flat in enumerate(total.diffs[k]):
                col = to_rows(flat)
                if col:
                    dcols[k][src] = col
                    for r in col:
                        occ_add(k + 1, r, (DIF, k, src))

    def shift_into(k, col, handle, pivot, mono, coef):
        # col += coef * x^mono * pivot, keeping row_occ in step
        for r, terms in pivot.items():
            dst = col.get(r)
            if dst is None:
                dst = col[r] = {}
                occ_add(k, r, handle)
            for m, c in terms.items():
                key = mono_mul(m, mono)
                v = dst.get(key, QQ0) + coef * c
                if v:
                    dst[key] = v
                else:
                    del dst[key]
            if not dst:
                del col[r]
                occ_del(k, r, handle)

    # pass one: presentations.  A pivot row of a relation column must be
    # exactly a constant there, or the rewrite would need a power series.
    work = deque()
    for k in ks:
        for cid in sorted(rels[k]):
            work.append((k, cid))
    while work:
        k, cid = work.popleft()
        col = rels[k].get(cid)
        if col is None:
            continue
        t = None
        for r in sorted(col):
            if r in alive[k] and len(col[r]) == 1 and one in col[r]:
                t = r
                break
        if t is None:
            continue
        c = col[t][one]
        handle = (REL, k, cid)
        for h in sorted(row_occ[k].get(t, set())):
            if h == handle:
                continue
            hkind, hk, hid = h
            other = rels[k].get(hid) if hkind == REL else dcols[hk].get(hid)
            if other is None or t not in other:
                occ_del(k, t, h)
                continue
            for m, coef in list(other[t].items()):
                shift_into(k, other, h, col, m, -coef / c)
            if hkind == REL:
                work.append((k, hid))
        for r in col:
            occ_del(k, r, handle)
        del rels[k][cid]
        alive[k].discard(t)
        if k < kmax:
            dropped = dcols[k].pop(t, None)
            if dropped is not None:
                for r in dropped:
                    occ_del(k + 1, r, (DIF, k, t))

    # pass two: Gaussian cancellation of generator pairs across one
    # differential.  Needs both rows free of relations so each term
    # splits off the corresponding rank-one summand.
    def has_rel(k, row):
        return any(h[0] == REL for h in row_occ[k].get(row, ()))

    dwork = deque()
    for k in sorted(dcols):
        for src in sorted(dcols[k]):
            dwork.append((k, src))
    while dwork:
        k, s = dwork.popleft()
        col = dcols[k].get(s)
        if col is None or s not in alive[k] or has_rel(k, s):
            continue
        t = None
        for r in sorted(col):
            if (r in alive[k + 1] and len(col[r]) == 1
                    and one in col[r] and not has_rel(k + 1, r)):
                t = r
                break
        if t is None:
            continue
        c = col[t][one]
        me = (DIF, k, s)
        gamma = [(t2, dict(terms)) for t2, terms in sorted(col.items())
                 if t2 != t]
        for h in sorted(row_occ[k + 1].get(t, set())):
            if h == me:
                continue
            s2 = h[2]
            col2 = dcols[k].get(s2)
            if col2 is None or t not in col2:
                occ_del(k + 1, t, h)
                continue
            e1 = col2.pop(t)
            occ_del(k + 1, t, h)
            for m2, c2 in e1.items():
                f = -c2 / c
                for t2, terms in gamma:
                    dst = col2.get(t2)
                    if dst is None:
                        dst = col2[t2] = {}
                        occ_add(k + 1, t2, h)
                    for m1, c1 in terms.items():
                        key = mono_mul(m1, m2)
                        v = dst.get(key, QQ0) + f * c1
                        if v:
                            dst[key] = v
                        else:
                            del dst[key]
                    if not dst:
                        del col2[t2]
                        occ_del(k + 1, t2, h)
            if not col2:
                del dcols[k][s2]
            dwork.append((k, s2))
        for h in sorted(row_occ[k].get(s, set())):
            k0, src0 = h[1], h[2]
            col0 = dcols[k0].get(src0)
            if col0 is not None and s in col0:
                del col0[s]
                if not col0:
                    del dcols[k0][src0]
            occ_del(k, s, h)
        if k + 1 in dcols:
            dropped = dcols[k + 1].pop(t, None)
            if dropped is not None:
                for r in dropped:
                    occ_del(k + 2, r, (DIF, k + 1, t))
        for r in col:
            occ_del(k + 1, r, me)
        del dcols[k][s]
        alive[k].discard(s)
        alive[k + 1].discard(t)

    out = TotalComplex(total.actx)
    out.kmin = total.kmin
    out.kmax = kmax
    out.piece_sizes = dict(total.piece_sizes)
    remap = {k: {old: i for i, old in enumerate(sorted(alive[k]))}
             for k in ks}
    for k in ks:
        cols = []
        seen = set()
        for cid in sorted(rels[k]):
            flat = {}
            for r, terms in rels[k][cid].items():
                nr = remap[k][r]
                for m, c in terms.items():
                    flat[(nr, m)] = c
            if not flat:
                continue
            key = tuple(sorted(flat.items()))
            if key in seen:
                continue
            seen.add(key)
            cols.append(flat)
        out.terms[k] = (FreeModule(total.actx, len(alive[k])), cols)
        if k < kmax:
            dlist = []
            for old in sorted(alive[k]):
                flat = {}
                for r, terms in dcols[k].get(old, {}).items():
                    nr = remap[k + 1][r]
                    for m, c in terms.items():
                        flat[(nr, m)] = c
                dlist.append(flat)
            out.diffs[k] = dlist
    return out


def free_sheaf_complex(n, w, d=None, budget=None):
    """Strand pipeline for a single twisted free module on projective
    (n-1)-space over the rational base: the plain sheaf-cohomology
    oracle.  Returns (TotalComplex, TwistBound)."""
    from .nash import FPModule
    sctx = RingContext((), tuple("s%d" % i for i in range(n)))
    actx = RingContext(())
    fp = FPModule(FreeModule(sctx, 1, (w,)), [])
    tb = twist_bound([fp], n, override=d, budget=budget)
    total = totalize({0: fp}, {}, n, tb.d, actx, budget)
    return total, tb
