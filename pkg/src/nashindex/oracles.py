"""Independent cross-checks for the index pipeline.

None of these touch the Nash transform or the Cech machinery; they are
classical local computations (Milnor algebra colengths and a critical
branch count for a linear morsification pencil) used to validate the
main pipeline on overlapping inputs.
"""

from __future__ import annotations

from .ring import Polynomial, RingContext
from .engine import ideal_saturate, ideal_vdim
from .nash import NonIsolatedError, ProblemError, jacobian, minors2


def classical_milnor(f, budget=None):
    """Colength of the Jacobian ideal at the origin."""
    ctx = f.ctx
    if f.constant_term():
        raise ProblemError("function value at origin must be 0")
    v = ideal_vdim(jacobian(f, ctx.x_vars), ctx, budget)
    if v is None:
        raise NonIsolatedError("non-isolated critical point")
    return v


def smooth_restriction_milnor(g, f, budget=None):
    """Milnor number of f restricted to the smooth graph x_n = g.

    g lives in the first n-1 coordinates, f in all n; the restriction
    substitutes the graph equation and computes a classical Milnor
    number downstairs.
    """
    names = f.ctx.x_vars
    rctx = RingContext(names[:-1])
    images = {names[-1]: g.cast(rctx) if g.ctx is not rctx else g}
    for nm in names[:-1]:
        images[nm] = Polynomial.var(rctx, nm)
    restricted = f.substitute(images, new_ctx=rctx)
    return classical_milnor(restricted, budget)


def _fresh_name(taken, stem):
    nm = stem
    while nm in taken:
        nm += "_"
    return nm


def branch_count(prob, l, budget=None):
    """Critical points of the pencil f - t*l on the smooth part, near
    the origin, for generic small t; counted with multiplicity as the
    local t-degree.

    The critical scheme in (x, t) is cut by h and the minors pairing
    grad h against grad f - t * grad l; components inside the singular
    locus are saturated away, then the fiber over t = 0 is measured.
    """
    if prob.f is None:
        raise ProblemError("branch count needs a function, not a raw form")
    if l.is_zero() or l.total_degree() != 1 or l.constant_term():
        raise ProblemError("direction must be a nonzero linear form")
    tname = _fresh_name(prob.x_names, "t")
    tctx = RingContext(prob.x_names + (tname,))
    t = Polynomial.var(tctx, tname)
    h = prob.h.cast(tctx)
    dh = jacobian(h, prob.x_names)
    df = jacobian(prob.f.cast(tctx), prob.x_names)
    dl = jacobian(l.cast(tctx), prob.x_names)
    row2 = [df[i] - t * dl[i] for i in range(prob.n)]
    gens = [h] + minors2(dh, row2)
    sing = [g.cast(tctx) for g in prob.sing]
    sat = ideal_saturate(gens, sing, tctx, budget)
    v = ideal_vdim(sat + [t], tctx, budget)
    if v is None:
        raise NonIsolatedError("direction is not generic enough: "
                               "infinite local branch count")
    return v
