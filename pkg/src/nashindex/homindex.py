"""Homology of the totalized strand complex and the index itself.

Everything happens over the base ring A (the x-block local ring).  For
each degree the kernel of the differential into the next quotient term
is computed first; the homology is then the kernel modulo boundaries
and relations, presented as a second kernel-into-quotient problem whose
quotient dimension a standard basis reads off.  The alternating sum of
the dimensions, multiplied by (-1)^(dim X), is the index.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .ring import QQ
from .engine import (
    FreeModule, is_full_module, local_vdim, quotient_kernel,
    standard_basis, term_key_fn,
)
from .nash import (
    HypersurfaceProblem, NonIsolatedError, ProblemError,
    exterior_power_module, isolated_zero_check, nash_ideal, pullback_form,
    wedge_columns,
)
from .cech import prune_total, twist_bound, totalize
from . import engine


@dataclass
class IndexReport:
    index: int
    chi: int
    sign_exponent: int
    homology_dims: dict
    twist_bound: int
    nash_ideal_size: int
    elapsed_ms: int = 0
    term_ranks: dict = field(default_factory=dict)

    def check(self):
        chi = sum((-1) ** k * v for k, v in self.homology_dims.items())
        assert chi == self.chi
        assert self.index == (-1) ** self.sign_exponent * self.chi


def homology_dims(total, budget=None):
    """QQ-dimension of every cohomology module of the total complex.

    Raises NonIsolatedError when some homology is infinite dimensional,
    which is the algebraic shadow of a non-isolated zero upstream.
    """
    actx = total.actx
    tk = term_key_fn(actx)
    dims = {}
    # relation lists are heavily redundant; only their span matters
    # anywhere below, so interreduce each one once up front
    rel_sb = {}
    full = {}
    for k in range(total.kmax + 1):
        mod_k, rels = total.terms[k]
        rel_sb[k] = (standard_basis([dict(r) for r in rels if r], actx,
                                    tk=tk, budget=budget) if rels else [])
        # a term whose relations span everything is the zero module;
        # flagging it here lets the main loop skip all the expensive
        # work on and around it
        full[k] = mod_k.rank > 0 and is_full_module(rel_sb[k], mod_k, tk)
    for k in range(total.kmax + 1):
        mod_k, rels_k = total.terms[k]
        if mod_k.rank == 0 or full[k]:
            dims[k] = 0
            continue
        # cycle generators: kernel of D^k into the next quotient term.
        # When the next term vanishes the kernel is everything.
        if k < total.kmax and not full[k + 1]:
            dcols = [dict(c) for c in total.diffs[k]]
            mod_next = total.terms[k + 1][0]
            ker = quotient_kernel(dcols, rel_sb[k + 1], mod_next, budget)
            ker = [v for v in ker if v]
            ker = standard_basis(ker, actx, tk=tk, budget=budget)
        else:
            ker = [mod_k.unit(i) for i in range(mod_k.rank)]
        if not ker:
            dims[k] = 0
            continue
        # boundaries and relations span what the cycles are divided by;
        # columns out of a vanished term are relation combinations
        # already, so they add nothing
        bnd = [dict(r) for r in rel_sb[k]]
        if k > 0 and not full[k - 1]:
            bnd += [dict(c) for c in total.diffs[k - 1] if c]
        # homology presentation: coefficient vectors expressing membership
        # of a cycle combination in the boundary span.  Keeping the
        # boundaries as a frozen untagged basis stops their coefficients
        # from snowballing through the pair reductions.
        bsb = (standard_basis(bnd, actx, tk=tk, budget=budget)
               if bnd else [])
        pres = quotient_kernel(ker, bsb, mod_k, budget)
        pres = standard_basis(pres, actx, tk=tk, budget=budget)
        hmod = FreeModule(actx, len(ker))
        dim = local_vdim(pres, hmod, tk)
        if dim is None:
            raise NonIsolatedError(
                "infinite-dimensional cohomology at degree %d "
                "(the form has no isolated zero in the stratified sense)" % k)
        dims[k] = dim
    return dims


def euler_characteristic(dims):
    return sum((-1) ** k * v for k, v in dims.items())


def koszul_index_smooth(components, ctx, budget=None):
    """Index at a smooth point: colength of the component ideal."""
    v = engine.ideal_vdim(list(components), ctx, budget)
    if v is None:
        raise NonIsolatedError("component ideal is not finite colength")
    return v


def regular_point_vanishing(prob):
    """True when the base point is a smooth point of X and the form does
    not annihilate the tangent plane there.

    The index is 0 in that case: the pushforward complex is exact, being
    a Koszul complex on components that include a unit.  Both conditions
    are plain rank checks on the constant terms, so this costs nothing
    and is exact.
    """
    dh0 = [prob.h.diff(v).constant_term() for v in prob.x_names]
    if not any(dh0):
        return False
    w0 = [c.constant_term() for c in prob.w]
    n = prob.n
    for i in range(n):
        for j in range(i + 1, n):
            if w0[i] * dh0[j] != w0[j] * dh0[i]:
                return True
    return False


def homological_index(prob, budget=None, force=False):
    """The full pipeline on one hypersurface problem."""
    t0 = time.monotonic()
    if regular_point_vanishing(prob):
        report = IndexReport(
            index=0,
            chi=0,
            sign_exponent=prob.dim_x,
            homology_dims={k: 0 for k in range(prob.n + prob.dim_x)},
            twist_bound=0,
            nash_ideal_size=0,
            elapsed_ms=int((time.monotonic() - t0) * 1000),
        )
        report.check()
        return report
    if not force:
        ok, _ = isolated_zero_check(prob, budget)
        if not ok:
            raise NonIsolatedError(
                "the form does not have an isolated zero on the smooth "
                "part; rerun with force to attempt the computation anyway")
    j_gens = nash_ideal(prob, budget)
    w = pullback_form(prob)
    n = prob.n
    fps = {q: exterior_power_module(prob, j_gens, q)
           for q in range(prob.dim_x + 1)}
    wedges = {q: wedge_columns(prob, w, q) for q in range(prob.dim_x)}
    tb = twist_bound(list(fps.values()), n, depth=n,
                     override=prob.bound_override, budget=budget)
    total = totalize(fps, wedges, n, tb.d, prob.actx, budget)
    ranks = {k: total.terms[k][0].rank for k in total.terms}
    total = prune_total(total)
    dims = homology_dims(total, budget)
    chi = euler_characteristic(dims)
    sign = prob.dim_x
    report = IndexReport(
        index=(-1) ** sign * chi,
        chi=chi,
        sign_exponent=sign,
        homology_dims=dims,
        twist_bound=tb.d,
        nash_ideal_size=len(j_gens),
        elapsed_ms=int((time.monotonic() - t0) * 1000),
        term_ranks=ranks,
    )
    report.check()
    return report
