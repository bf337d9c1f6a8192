"""Standard bases over a mixed local/global order, and what they buy us.

Vectors in a free module are dicts {(position, mono): coeff}.  Normal
forms use Mora's algorithm (weak normal form, head reduction only), so
everything here is valid over the localisation picked out by the term
order: units are 1 + (nonconstant pure-x part).

Syzygies, lifts, colon, saturation and intersection all go through one
construction: append tail unit vectors to the generators and compute a
standard basis of the augmented module under a block order in which the
original positions dominate.  No division tracking anywhere.
"""

from __future__ import annotations

import heapq
import itertools

from .ring import (
    QQ, QQ0, QQ1, Polynomial,
    mono_mul, mono_div, mono_divides, mono_lcm,
)


class ResourceLimitError(RuntimeError):
    """A computation blew through its work budget or iteration cap."""


class Budget:
    """Shared work meter.  tick() raises once the limit is crossed."""

    __slots__ = ("used", "limit")

    def __init__(self, limit=None):
        self.used = 0
        self.limit = limit

    def tick(self, n=1):
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise ResourceLimitError(
                "work limit exceeded after %d reduction steps" % self.used)


DEFAULT_BUDGET = Budget()


# ---------------------------------------------------------------------------
# free modules and raw vector helpers


class FreeModule:
    """Free graded module; twists[i] is the grading shift of e_i.

    A twist list [w_0, ..., w_{r-1}] means the module is the direct sum
    of rank-one pieces shifted so that e_i sits in s-degree w_i.
    """

    __slots__ = ("ctx", "rank", "twists")

    def __init__(self, ctx, rank, twists=None):
        self.ctx = ctx
        self.rank = rank
        self.twists = tuple(twists) if twists is not None else (0,) * rank
        if len(self.twists) != rank:
            raise ValueError("twist list does not match rank")

    def __repr__(self):
        return "FreeModule(rank=%d, twists=%r)" % (self.rank, self.twists)

    def unit(self, pos, mono=None, coeff=QQ1):
        if mono is None:
            mono = self.ctx.one_mono
        return {(pos, mono): QQ(coeff)}

    def from_polys(self, polys):
        """Column vector from a list of entry polynomials."""
        if len(polys) != self.rank:
            raise ValueError("entry count does not match rank")
        v = {}
        for pos, p in enumerate(polys):
            if p is None:
                continue
            for m, c in p.terms.items():
                v[(pos, m)] = c
        return v

    def entry(self, vec, pos):
        t = {m: c for (p, m), c in vec.items() if p == pos}
        return Polynomial(self.ctx, t)

    def to_polys(self, vec):
        return [self.entry(vec, p) for p in range(self.rank)]

    def vec_s_degree(self, vec):
        """Common s-degree of a homogeneous vector, None if mixed."""
        if not vec:
            return 0
        degs = {self.ctx.s_degree(m) + self.twists[p] for (p, m) in vec}
        return degs.pop() if len(degs) == 1 else None

    def vec_str(self, vec):
        if not vec:
            return "0"
        parts = []
        for pos in range(self.rank):
            p = self.entry(vec, pos)
            if p:
                parts.append("(%s)*e%d" % (p, pos))
        return " + ".join(parts)


def vec_scale(v, c):
    c = QQ(c)
    if not c:
        return {}
    return {t: cv * c for t, cv in v.items()}


def vec_add(a, b):
    out = dict(a)
    for t, c in b.items():
        s = out.get(t, QQ0) + c
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def vec_axpy(target, coeff, mono, src):
    """target += coeff * mono * src, in place."""
    for (p, m), c in src.items():
        t = (p, mono_mul(m, mono))
        s = target.get(t, QQ0) + coeff * c
        if s:
            target[t] = s
        else:
            target.pop(t, None)


def vec_shift(v, offset):
    return {(p + offset, m): c for (p, m), c in v.items()}


def vec_project(v, lo, hi, shift=0):
    """Keep positions lo <= p < hi, shifting them by `shift`."""
    return {(p + shift, m): c for (p, m), c in v.items() if lo <= p < hi}


def poly_to_vec(p, pos=0):
    return {(pos, m): c for m, c in p.terms.items()}


def term_key_fn(ctx, split=None):
    """Comparison key for module terms (position, mono).

    Monomial first, then lower position wins.  With `split` set,
    positions below it dominate everything at or above it, which is the
    elimination-style order the syzygy construction needs.
    """
    mk = ctx.mono_key
    cache = {}
    if split is None:
        def tk(t):
            k = cache.get(t)
            if k is None:
                k = mk(t[1]) + (-t[0],)
                cache[t] = k
            return k
    else:
        def tk(t):
            k = cache.get(t)
            if k is None:
                k = ((1 if t[0] < split else 0,) + mk(t[1]) + (-t[0],))
                cache[t] = k
            return k
    return tk


# ---------------------------------------------------------------------------
# Mora weak normal form


class Rec:
    """A basis element with cached lead data."""

    __slots__ = ("vec", "lead", "ecart", "idx", "sugar", "single_pos")

    def __init__(self, vec, tk, idx=0, sugar=None):
        self.vec = vec
        self.lead = max(vec, key=tk)
        maxdeg = max(sum(m) for (_, m) in vec)
        self.ecart = maxdeg - sum(self.lead[1])
        self.idx = idx
        self.sugar = maxdeg if sugar is None else sugar
        self.single_pos = len({p for (p, _) in vec}) == 1


def make_recs(vecs, tk):
    return [Rec(v, tk, i) for i, v in enumerate(vecs) if v]


def mora_nf(vec, recs, tk, budget=None, buckets=None, stop_pos=None):
    """Weak normal form of vec against recs.

    Head reduction only; reduction stops as soon as the leading term has
    no divisor among the (possibly growing) reducer set.  Intermediate
    results with larger ecart are appended as extra reducers, which is
    what makes this terminate over a local order.  The result r satisfies
    u*vec = (module combination) + r for some unit u of the localisation.

    With stop_pos set, reduction also stops once the head reaches that
    position block; under a split order this means the part below
    stop_pos is already zero, which is all the augmented computations
    need.  Heads are tracked with lazy heaps so each step costs
    O(log #terms) instead of a scan of the whole vector.
    """
    if not vec:
        return {}
    if budget is None:
        budget = DEFAULT_BUDGET
    if buckets is None:
        buckets = {}
        for r in recs:
            buckets.setdefault(r.lead[0], []).append(r)
    local = {}
    h = dict(vec)
    lead_heap = []
    deg_heap = []
    for t in h:
        lead_heap.append((tuple(-a for a in tk(t)), t))
        deg_heap.append((-sum(t[1]), t))
    heapq.heapify(lead_heap)
    heapq.heapify(deg_heap)
    while True:
        hl = None
        while lead_heap:
            t = lead_heap[0][1]
            if t in h:
                hl = t
                break
            heapq.heappop(lead_heap)
        if hl is None:
            return {}
        budget.tick()
        hpos, hmono = hl
        if stop_pos is not None and hpos >= stop_pos:
            return h
        cands = [t for t in buckets.get(hpos, ())
                 if mono_divides(t.lead[1], hmono)]
        cands += [t for t in local.get(hpos, ())
                  if mono_divides(t.lead[1], hmono)]
        if not cands:
            return h
        best = min(cands, key=lambda t: (t.ecart, t.idx))
        if best.ecart > 0:
            while deg_heap and deg_heap[0][1] not in h:
                heapq.heappop(deg_heap)
            h_ecart = -deg_heap[0][0] - sum(hmono)
            if best.ecart > h_ecart:
                # stash the current state so later heads can reduce by it
                r = Rec(dict(h), tk, idx=10 ** 9 + budget.used)
                local.setdefault(r.lead[0], []).append(r)
        c = h[hl] / best.vec[best.lead]
        q = mono_div(hmono, best.lead[1])
        for (p2, m2), c2 in best.vec.items():
            t2 = (p2, mono_mul(m2, q))
            s = h.get(t2, QQ0) - c * c2
            if s:
                if t2 not in h:
                    heapq.heappush(lead_heap,
                                   (tuple(-a for a in tk(t2)), t2))
                    heapq.heappush(deg_heap, (-sum(t2[1]), t2))
                h[t2] = s
            else:
                h.pop(t2, None)


# ---------------------------------------------------------------------------
# standard bases (Buchberger/Mora with Gebauer-Moeller pair pruning)


def standard_basis(gens, ctx, tk=None, budget=None, return_recs=False,
                   skip_pos=None, nfrozen=0):
    """Standard basis of the submodule generated by `gens`.

    Returns a minimal (lead-interreduced, monic) list of vectors.  The
    product criterion is deliberately not used: it is unsound for local
    orders.  The chain criterion in Gebauer-Moeller form is fine.

    With skip_pos set, no pairs are formed between elements whose leads
    both sit at positions >= skip_pos.  Under the split order those are
    the pure-bookkeeping tails of an augmented computation: the chain
    identities express every dropped pair over the kept ones, so the
    tails still generate everything they should, they just are not
    interreduced among themselves.  Such elements are kept verbatim by
    the final sweep, since lead divisibility says nothing about
    redundancy outside a standard basis.  Generators are also added
    without a preliminary normal form in this mode; see the note in the
    intake loop.

    With nfrozen > 0 the first nfrozen generators must form a standard
    basis on their own.  No pairs are formed among them (their S-vectors
    reduce to zero by assumption, so dropping the pairs is the classic
    known-zero criterion); they still serve as reducers and pair up with
    everything added later.
    """
    if tk is None:
        tk = term_key_fn(ctx)
    if budget is None:
        budget = DEFAULT_BUDGET

    recs = []
    buckets = {}
    heap = []
    alive = {}          # (i, j) -> lcm mono, i < j, same lead position
    pairs_by_pos = {}   # lead position -> set of live (i, j)

    def push_pair(i, j, lcm, pos):
        ri, rj = recs[i], recs[j]
        sug = max(ri.sugar + sum(mono_div(lcm, ri.lead[1])),
                  rj.sugar + sum(mono_div(lcm, rj.lead[1])))
        heapq.heappush(heap, (sug, sum(lcm), lcm, i, j))
        alive[(i, j)] = lcm
        pairs_by_pos.setdefault(pos, set()).add((i, j))

    def add(vec, sugar=None):
        lc = vec[max(vec, key=tk)]
        if lc != 1:
            inv = 1 / lc
            vec = {t: c * inv for t, c in vec.items()}
        r = Rec(vec, tk, idx=len(recs), sugar=sugar)
        recs.append(r)
        pos, m = r.lead
        peers = buckets.setdefault(pos, [])
        if r.idx < nfrozen or (skip_pos is not None and pos >= skip_pos):
            peers.append(r)
            return
        t = r.idx
        new_lcms = {s.idx: mono_lcm(s.lead[1], m) for s in peers}
        peers.append(r)
        # chain criterion against existing pairs at this position
        live = pairs_by_pos.get(pos)
        if live:
            for (i, j) in list(live):
                lij = alive[(i, j)]
                if (mono_divides(m, lij)
                        and new_lcms.get(i) != lij
                        and new_lcms.get(j) != lij):
                    del alive[(i, j)]
                    live.discard((i, j))
        # prune the new pairs among themselves: one representative per
        # lcm value, then drop any lcm another one strictly divides
        reps = {}
        for i in sorted(new_lcms):
            li = new_lcms[i]
            if li not in reps:
                reps[li] = i
        uniq = list(reps)
        for li in uniq:
            ok = True
            for lj in uniq:
                if lj != li and mono_divides(lj, li):
                    ok = False
                    break
            if ok:
                push_pair(reps[li], t, li, pos)

    for v in gens:
        if not v:
            continue
        if skip_pos is not None:
            # Augmented run: take the generator as-is.  Normal-forming it
            # against the earlier ones drags the whole bookkeeping tail
            # through a long local reduction chain for no benefit; the
            # pair loop performs the same cancellations with lcm-matched
            # heads and stays small.
            add(dict(v))
            continue
        r = mora_nf(v, recs, tk, budget, buckets, stop_pos=skip_pos)
        if r:
            add(r)

    while heap:
        sug, _, lcm, i, j = heapq.heappop(heap)
        if alive.get((i, j)) != lcm:
            continue
        del alive[(i, j)]
        pairs_by_pos[recs[i].lead[0]].discard((i, j))
        budget.tick()
        fi, fj = recs[i], recs[j]
        h = {}
        vec_axpy(h, QQ1, mono_div(lcm, fi.lead[1]), fi.vec)
        vec_axpy(h, QQ(-1), mono_div(lcm, fj.lead[1]), fj.vec)
        r = mora_nf(h, recs, tk, budget, buckets, stop_pos=skip_pos)
        if r:
            add(r, sugar=sug)

    # minimalise: drop anything whose lead another element's lead divides
    out = []
    for r in recs:
        pos = r.lead[0]
        if skip_pos is not None and pos >= skip_pos:
            out.append(r)
            continue
        redundant = False
        for s in buckets.get(pos, ()):
            if s is r:
                continue
            if s.lead[1] == r.lead[1]:
                if s.idx < r.idx:
                    redundant = True
                    break
            elif mono_divides(s.lead[1], r.lead[1]):
                redundant = True
                break
        if not redundant:
            out.append(r)
    if return_recs:
        return out
    return [r.vec for r in out]


def membership(vec, sb_recs, tk, budget=None):
    """Is vec in the submodule with standard basis sb_recs?"""
    return not mora_nf(vec, sb_recs, tk, budget)


# ---------------------------------------------------------------------------
# syzygies, lifts, and friends, all via the augmented-module trick


def augmented_basis(gens, module, budget=None):
    """Standard basis of {(g_i, e_i)} in F + A^m under an order where
    the F block dominates.

    Returns (aug_recs, tk_split, aug_module).  Elements with zero
    F-part carry the syzygies; the rest carry a standard basis of the
    span of gens together with expressions in terms of the gens.
    """
    ctx = module.ctx
    rank = module.rank
    m = len(gens)
    degs = []
    for g in gens:
        d = module.vec_s_degree(g)
        degs.append(0 if d is None else d)
    aug = FreeModule(ctx, rank + m, module.twists + tuple(degs))
    tk = term_key_fn(ctx, split=rank)
    avecs = []
    for i, g in enumerate(gens):
        v = dict(g)
        v[(rank + i, ctx.one_mono)] = QQ1
        avecs.append(v)
    recs = standard_basis(avecs, ctx, tk=tk, budget=budget,
                          return_recs=True, skip_pos=rank)
    return recs, tk, aug


def syzygy_basis(gens, module, budget=None):
    """Generators of the syzygy module of `gens` inside A^len(gens)."""
    recs, _, _ = augmented_basis(gens, module, budget)
    rank = module.rank
    out = []
    for r in recs:
        if r.lead[0] >= rank:
            # F-part is zero: the tail is a syzygy
            out.append(vec_project(r.vec, rank, rank + len(gens), -rank))
    return out


def quotient_kernel(cols, rels_sb, module, budget=None):
    """Generators of {a in A^len(cols) : sum a_i*cols_i in <rels_sb>}.

    This is the kernel of the map A^len(cols) -> F/<rels_sb> sending the
    i-th unit vector to cols_i.  `rels_sb` must already be a standard
    basis: its elements ride along untagged and pairwise unprocessed, so
    none of the combination bookkeeping accumulates on their account.
    That matters when the relations have unit leads, where tracking
    their coefficients amounts to expanding power series.  Tags sit only
    on `cols`.

    The output generates the kernel but is not interreduced (pairs in
    the tag block are skipped); run it through standard_basis if lead
    terms are going to matter.
    """
    ctx = module.ctx
    rank = module.rank
    m = len(cols)
    tk = term_key_fn(ctx, split=rank)
    avecs = [dict(r) for r in rels_sb if r]
    nfrozen = len(avecs)
    for i, g in enumerate(cols):
        v = dict(g)
        v[(rank + i, ctx.one_mono)] = QQ1
        avecs.append(v)
    recs = standard_basis(avecs, ctx, tk=tk, budget=budget,
                          return_recs=True, skip_pos=rank, nfrozen=nfrozen)
    out = []
    for r in recs:
        if r.lead[0] >= rank:
            out.append(vec_project(r.vec, rank, rank + m, -rank))
    return out


def lift_vector(vec, aug_recs, tk, module, ngens, budget=None, buckets=None):
    """Express vec (up to a unit) as a combination of the gens behind
    aug_recs.  Returns the coefficient list, or None if vec is not in
    the submodule."""
    rank = module.rank
    rem = mora_nf(dict(vec), aug_recs, tk, budget, buckets, stop_pos=rank)
    if any(p < rank for (p, _) in rem):
        return None
    ctx = module.ctx
    coeffs = []
    for i in range(ngens):
        t = {m: -c for (p, m), c in rem.items() if p == rank + i}
        coeffs.append(Polynomial(ctx, t))
    return coeffs


def module_colon(gens, g, module, budget=None):
    """Generators of (N : g) = {a in F : g*a in N}, N = span of gens."""
    if g.is_unit_local():
        return [dict(v) for v in gens]
    rank = module.rank
    stacked = [{(k, m): c for m, c in g.terms.items()} for k in range(rank)]
    stacked += [dict(v) for v in gens]
    syz = syzygy_basis(stacked, module, budget)
    return [vec_project(s, 0, rank) for s in syz]


def module_saturate(gens, g, module, budget=None, cap=64):
    """(N : g^infinity) by iterating the colon until it stabilises."""
    tk = term_key_fn(module.ctx)
    cur = standard_basis(gens, module.ctx, tk=tk, budget=budget,
                         return_recs=True)
    for _ in range(cap):
        nxt = module_colon([r.vec for r in cur], g, module, budget)
        if all(membership(v, cur, tk, budget) for v in nxt):
            return [r.vec for r in cur]
        cur = standard_basis([r.vec for r in cur] + nxt, module.ctx,
                             tk=tk, budget=budget, return_recs=True)
    raise ResourceLimitError("saturation did not stabilise within %d colons"
                             % cap)


def module_intersect(gens_a, gens_b, module, budget=None):
    """Intersection of two submodules, read off the syzygies of the
    stacked generator list."""
    stacked = [dict(v) for v in gens_a] + [dict(v) for v in gens_b]
    syz = syzygy_basis(stacked, module, budget)
    out = []
    for s in syz:
        v = {}
        for (p, m), c in s.items():
            if p < len(gens_a):
                vec_axpy(v, c, m, gens_a[p])
        if v:
            out.append(v)
    return out


def is_full_module(sb_vecs, module, tk=None):
    """Does the standard basis span all of F?  True iff every unit
    vector's lead (pos, 1) shows up among the leads."""
    if tk is None:
        tk = term_key_fn(module.ctx)
    leads = {max(v, key=tk) for v in sb_vecs if v}
    one = module.ctx.one_mono
    return all((p, one) in leads for p in range(module.rank))


def saturate_by_ideal(gens, ideal_gens, module, budget=None, cap=64):
    """(N : I^infinity): intersect the single-element saturations.

    Generators of I that already act invertibly (units, or elements
    whose saturation is everything) drop out of the intersection.
    """
    tk = term_key_fn(module.ctx)
    factors = []
    for g in ideal_gens:
        if g.is_zero():
            continue
        sat = module_saturate(gens, g, module, budget, cap)
        if not is_full_module(sat, module, tk):
            factors.append(sat)
    if not factors:
        return [module.unit(p) for p in range(module.rank)]
    cur = factors[0]
    for f in factors[1:]:
        cur = module_intersect(cur, f, module, budget)
        cur = standard_basis(cur, module.ctx, tk=tk, budget=budget)
    return cur


def eliminate(gens, module, ntags, budget=None):
    """Intersect with the submodule of vectors free of the leading
    `ntags` tag variables.  The context's tag block must hold them."""
    ctx = module.ctx
    if len(ctx.tag_vars) < ntags:
        raise ValueError("context lacks the tag variables to eliminate")
    sb = standard_basis(gens, ctx, budget=budget)
    out = []
    for v in sb:
        if all(not any(m[:ntags]) for (_, m) in v):
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# graded resolutions


def graded_resolution(rel_vecs, ambient, depth, budget=None):
    """Iterated syzygy steps over the graded ring.

    Returns a list of (free_module, columns) pairs; columns of step k
    live in the module of step k-1 (the ambient for k = 0).  Stops early
    when the kernel runs dry.  Inputs must be s-homogeneous.
    """
    steps = []
    cur = [dict(v) for v in rel_vecs if v]
    amb = ambient
    for _ in range(depth):
        if not cur:
            break
        twists = []
        for v in cur:
            d = amb.vec_s_degree(v)
            if d is None:
                raise ValueError("resolution input is not homogeneous")
            twists.append(d)
        nxt = FreeModule(amb.ctx, len(cur), twists)
        steps.append((nxt, cur))
        cur = syzygy_basis(cur, amb, budget)
        amb = nxt
    return steps


# ---------------------------------------------------------------------------
# local vector space dimension


def local_vdim(sb_vecs, module, tk=None):
    """QQ-dimension of F / N from a standard basis of N.

    Counts standard monomials position by position.  Returns None when
    the quotient is infinite dimensional.  Only the lead terms matter,
    which is the whole point of having a standard basis.
    """
    ctx = module.ctx
    if tk is None:
        tk = term_key_fn(ctx)
    per_pos = {p: [] for p in range(module.rank)}
    for v in sb_vecs:
        if not v:
            continue
        p, m = max(v, key=tk)
        per_pos[p].append(m)
    one = ctx.one_mono
    nv = ctx.nvars
    total = 0
    for p in range(module.rank):
        leads = per_pos[p]
        if one in leads:
            continue
        # need a pure power of every variable among the leads
        bounds = []
        ok = True
        for i in range(nv):
            b = None
            for m in leads:
                if m[i] and all(e == 0 for j, e in enumerate(m) if j != i):
                    b = m[i] if b is None else min(b, m[i])
            if b is None:
                ok = False
                break
            bounds.append(b)
        if not ok:
            return None
        count = 0
        for exps in itertools.product(*(range(b) for b in bounds)):
            if not any(mono_divides(m, exps) for m in leads):
                count += 1
        total += count
    return total


# ---------------------------------------------------------------------------
# ideal-level conveniences (rank-one wrappers)


def ideal_sb(polys, ctx, budget=None, return_recs=False):
    return standard_basis([poly_to_vec(p) for p in polys if not p.is_zero()],
                          ctx, budget=budget, return_recs=return_recs)


def ideal_nf(p, sb_recs, ctx, budget=None):
    r = mora_nf(poly_to_vec(p), sb_recs, term_key_fn(ctx), budget)
    return Polynomial(ctx, {m: c for (_, m), c in r.items()})


def ideal_saturate(polys, sat_polys, ctx, budget=None, cap=64):
    mod = FreeModule(ctx, 1)
    gens = [poly_to_vec(p) for p in polys if not p.is_zero()]
    sat = saturate_by_ideal(gens, sat_polys, mod, budget, cap)
    return [Polynomial(ctx, {m: c for (_, m), c in v.items()}) for v in sat]


def ideal_vdim(polys, ctx, budget=None):
    mod = FreeModule(ctx, 1)
    sb = ideal_sb(polys, ctx, budget)
    return local_vdim(sb, mod)


def apply_map(cols, vec):
    """Matrix times vector; cols[i] is the image of e_i."""
    out = {}
    for (p, m), c in vec.items():
        if cols[p]:
            vec_axpy(out, c, m, cols[p])
    return out
