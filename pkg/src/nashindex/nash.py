"""Hypersurface problems and their Nash-transform presentations.

The transform of X = V(h) in (C^n, 0) lives in P^(n-1) x (C^n, 0); the
s-variable s_i is the projective coordinate paired with dh/dx_i.  The
defining ideal J is cut out of the total transform by saturating away
the singular locus.  Exterior powers of the dual tautological bundle
restricted to the transform are presented as cokernels of wedging with
the tautological section, tensored over the coordinate ring by S/J.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from .ring import QQ, Polynomial, RingContext
from .exterior import ext_basis, insert_sign
from .engine import (
    FreeModule, ideal_saturate, ideal_sb, ideal_vdim, poly_to_vec,
)


class ProblemError(ValueError):
    """Input fails a mathematical precondition."""


class NonIsolatedError(ProblemError):
    """The form's zero locus on the regular part is not isolated."""


def _s_names(x_names):
    n = len(x_names)
    prefix = "s"
    while any(("%s%d" % (prefix, i)) in x_names for i in range(n)):
        prefix = "s" + prefix
    return tuple("%s%d" % (prefix, i) for i in range(n))


class HypersurfaceProblem:
    """Everything the pipeline needs about (X, omega) at the origin."""

    __slots__ = ("x_names", "actx", "ctx", "h", "f", "w", "sing",
                 "bound_override", "work_limit")

    def __init__(self, x_names, h, f=None, form=None, sing=None,
                 bound_override=None, work_limit=None):
        self.x_names = tuple(x_names)
        n = len(self.x_names)
        if n < 2:
            raise ProblemError("need at least two coordinates")
        self.actx = h.ctx
        if self.actx.s_vars or self.actx.tag_vars:
            raise ProblemError("h must live in the plain x-coordinate ring")
        if tuple(self.actx.x_vars) != self.x_names:
            raise ProblemError("h does not match the declared ring")
        if h.is_zero() or h.is_constant():
            raise ProblemError("hypersurface equation is constant")
        if h.constant_term():
            raise ProblemError("hypersurface does not pass through origin")
        self.h = h
        if (f is None) == (form is None):
            raise ProblemError("give exactly one of function or form")
        if f is not None:
            if f.constant_term():
                raise ProblemError("function value at origin must be 0")
            self.f = f
            self.w = [f.diff(v) for v in self.x_names]
        else:
            if len(form) != n:
                raise ProblemError("form needs %d components" % n)
            self.f = None
            self.w = list(form)
        if sing is None:
            sing = [h] + [h.diff(v) for v in self.x_names]
        self.sing = [g for g in sing if not g.is_zero()]
        if not self.sing:
            raise ProblemError("empty singular-locus ideal")
        self.ctx = RingContext(self.x_names, _s_names(self.x_names))
        self.bound_override = bound_override
        self.work_limit = work_limit

    @property
    def n(self):
        return len(self.x_names)

    @property
    def dim_x(self):
        # dim of the hypersurface, also the sign exponent of the index
        return len(self.x_names) - 1

    def s_vars(self):
        return self.ctx.s_vars


def jacobian(p, names):
    return [p.diff(v) for v in names]


def minors2(row1, row2, ctx=None):
    """All 2x2 minors of the 2xn matrix with the given rows."""
    n = len(row1)
    out = []
    for i, j in combinations(range(n), 2):
        m = row1[i] * row2[j] - row1[j] * row2[i]
        if not m.is_zero():
            out.append(m)
    return out


def nash_ideal(prob, budget=None):
    """Standard-basis generators of the ideal of the Nash transform.

    Total transform first: h together with the minors tying (s_0..s_n-1)
    to the gradient of h; then saturate away everything supported on the
    singular locus.
    """
    ctx = prob.ctx
    h = prob.h.cast(ctx)
    dh = [prob.h.diff(v).cast(ctx) for v in prob.x_names]
    svec = [Polynomial.var(ctx, s) for s in ctx.s_vars]
    gens = [h] + minors2(svec, dh)
    sing = [g.cast(ctx) for g in prob.sing]
    return ideal_saturate(gens, sing, ctx, budget)


class FPModule:
    """Finitely presented graded module: ambient free module + relations."""

    __slots__ = ("ambient", "relations")

    def __init__(self, ambient, relations):
        self.ambient = ambient
        self.relations = list(relations)

    @property
    def rank(self):
        return self.ambient.rank


def theta_wedge_columns(ctx, n, q):
    """Columns of wedging with the tautological section, from basis
    (q-1)-subsets into q-subsets of the rank-n free module."""
    index = {K: pos for pos, K in enumerate(ext_basis(n, q))}
    cols = []
    for L in ext_basis(n, q - 1):
        v = {}
        for i in range(n):
            sign, K = insert_sign(i, L)
            if sign:
                v[(index[K], ctx.var_mono(ctx.s_vars[i]))] = QQ(sign)
        cols.append(v)
    return cols


def exterior_quotient(ctx, q):
    """Presentation of the q-th wedge of the tautological quotient on
    projective space, plus its full Koszul-style resolution.

    Returns (FPModule, steps); steps[k] = (FreeModule, columns) with the
    k-th resolution term C(n, q-1-k) copies of S(-1-k).
    """
    n = len(ctx.s_vars)
    if q < 0 or q > n - 1:
        raise ValueError("exterior power out of range")
    amb = FreeModule(ctx, comb(n, q))
    rels = theta_wedge_columns(ctx, n, q) if q >= 1 else []
    fp = FPModule(amb, rels)
    steps = []
    for k in range(q):
        rank = comb(n, q - 1 - k)
        mod = FreeModule(ctx, rank, (k + 1,) * rank)
        steps.append((mod, theta_wedge_columns(ctx, n, q - k)))
    return fp, steps


def exterior_power_module(prob, j_gens, q):
    """M[q]: the q-th wedge presentation tensored with S/J."""
    ctx = prob.ctx
    n = prob.n
    amb = FreeModule(ctx, comb(n, q))
    rels = theta_wedge_columns(ctx, n, q) if q >= 1 else []
    for g in j_gens:
        for pos in range(amb.rank):
            rels.append(poly_to_vec(g, pos))
    return FPModule(amb, rels)


def pullback_form(prob):
    """Components of the lifted form in the s-degree-0 part of S^n."""
    w = [p.cast(prob.ctx) for p in prob.w]
    if all(p.is_zero() for p in w):
        raise ProblemError("zero 1-form")
    return w


def wedge_columns(prob, w, q):
    """Matrix of (w wedge -): basis q-subsets into (q+1)-subsets."""
    n = prob.n
    index = {K: pos for pos, K in enumerate(ext_basis(n, q + 1))}
    cols = []
    for K in ext_basis(n, q):
        v = {}
        for i in range(n):
            sign, T = insert_sign(i, K)
            if not sign or w[i].is_zero():
                continue
            pos = index[T]
            for m, c in w[i].terms.items():
                key = (pos, m)
                c2 = v.get(key)
                v[key] = c * QQ(sign) if c2 is None else c2 + c * QQ(sign)
        cols.append({k: c for k, c in v.items() if c})
    return cols


def critical_ideal(prob):
    """Ideal of zeros of the form restricted to the smooth part:
    h together with the minors pairing the form against grad h."""
    dh = jacobian(prob.h, prob.x_names)
    return [prob.h] + minors2(prob.w, dh)


def isolated_zero_check(prob, budget=None):
    """Certify the form has an isolated zero on the regular part.

    Saturates the critical ideal by the singular locus and asks whether
    the local quotient is finite dimensional.  Returns (flag, witness).
    """
    sat = ideal_saturate(critical_ideal(prob), prob.sing, prob.actx, budget)
    v = ideal_vdim(sat, prob.actx, budget)
    return (v is not None), v
