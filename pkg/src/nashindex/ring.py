"""Exact polynomial arithmetic over QQ with a block term order.

Variables live in up to three ordered blocks.  An optional leading block
of tag variables (used for eliminations) is compared first and globally.
Then comes the projective block (the ``s`` variables of the Nash chart),
compared by graded reverse lexicographic order, also global.  Last is the
affine block (the ``x`` variables), compared by *negative* degree reverse
lex, which is a local order: 1 beats every nonconstant x-monomial, so
leading terms pick out the lowest-order part of a series.

Monomials are plain exponent tuples over the concatenated variable list
(tags, then s, then x).  Comparisons go through additive integer sort
keys, i.e. key(m1 * m2) == key(m1) + key(m2) componentwise, which is what
lets the module layer compare terms with one tuple comparison.
"""

from __future__ import annotations

import itertools

from gmpy2 import mpq

QQ = mpq
QQ0 = mpq(0)
QQ1 = mpq(1)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True if a | b, i.e. every exponent of a is <= that of b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b as a tuple; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class RingContext:
    """Variable layout and term order for one computation.

    Exponent tuples are laid out as (tags..., s..., x...).  The same
    context object is shared by every polynomial built over it; contexts
    compare by identity.
    """

    __slots__ = (
        "tag_vars", "s_vars", "x_vars", "names", "nvars",
        "_index", "_tag_slice", "_s_slice", "_x_slice", "_key_cache",
    )

    def __init__(self, x_vars, s_vars=(), tag_vars=()):
        self.tag_vars = tuple(tag_vars)
        self.s_vars = tuple(s_vars)
        self.x_vars = tuple(x_vars)
        self.names = self.tag_vars + self.s_vars + self.x_vars
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable name")
        for nm in self.names:
            if not nm or not (nm[0].isalpha() or nm[0] == "_"):
                raise ValueError("bad variable name %r" % (nm,))
        self.nvars = len(self.names)
        self._index = {nm: i for i, nm in enumerate(self.names)}
        t, s = len(self.tag_vars), len(self.s_vars)
        self._tag_slice = slice(0, t)
        self._s_slice = slice(t, t + s)
        self._x_slice = slice(t + s, self.nvars)
        self._key_cache = {}

    def __repr__(self):
        return "RingContext(x=%r, s=%r, tags=%r)" % (
            self.x_vars, self.s_vars, self.tag_vars)

    @property
    def signature(self):
        return (self.tag_vars, self.s_vars, self.x_vars)

    def compatible(self, other):
        return self is other or self.signature == other.signature

    @property
    def one_mono(self):
        return (0,) * self.nvars

    def var_index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown variable %r" % (name,)) from None

    def var_mono(self, name, exp=1):
        m = [0] * self.nvars
        m[self.var_index(name)] = exp
        return tuple(m)

    def s_degree(self, mono):
        return sum(mono[self._s_slice])

    def x_degree(self, mono):
        return sum(mono[self._x_slice])

    def tag_degree(self, mono):
        return sum(mono[self._tag_slice])

    def total_degree(self, mono):
        return sum(mono)

    def is_tag_free(self, mono):
        return not any(mono[self._tag_slice])

    def is_s_free(self, mono):
        return not any(mono[self._s_slice])

    def is_x_free(self, mono):
        return not any(mono[self._x_slice])

    def s_exponents(self, mono):
        return mono[self._s_slice]

    def x_exponents(self, mono):
        return mono[self._x_slice]

    def mono_from_blocks(self, tag=None, s=None, x=None):
        t = tag if tag is not None else (0,) * len(self.tag_vars)
        ss = s if s is not None else (0,) * len(self.s_vars)
        xx = x if x is not None else (0,) * len(self.x_vars)
        return tuple(t) + tuple(ss) + tuple(xx)

    def mono_key(self, mono):
        """Additive sort key; larger key = larger monomial.

        Tag block: graded revlex, global.  s block: graded revlex,
        global.  x block: negative-degree revlex, local.  Each block
        contributes (deg, -e_last, ..., -e_first) with deg negated in
        the x block; blocks concatenate in comparison order.
        """
        k = self._key_cache.get(mono)
        if k is None:
            t = mono[self._tag_slice]
            s = mono[self._s_slice]
            x = mono[self._x_slice]
            k = []
            if t:
                k.append(sum(t))
                k.extend(-e for e in reversed(t))
            if s:
                k.append(sum(s))
                k.extend(-e for e in reversed(s))
            if x:
                k.append(-sum(x))
                k.extend(-e for e in reversed(x))
            k = tuple(k)
            self._key_cache[mono] = k
        return k

    def mono_cmp_key(self):
        return self.mono_key

    def mono_str(self, mono):
        parts = []
        for nm, e in zip(self.names, mono):
            if e == 1:
                parts.append(nm)
            elif e:
                parts.append("%s^%d" % (nm, e))
        return "*".join(parts) if parts else "1"

    def with_tags(self, tag_vars):
        """Same x/s blocks with a leading elimination block added."""
        return RingContext(self.x_vars, self.s_vars,
                           tuple(tag_vars) + self.tag_vars)

    def fresh_tag_name(self, stem="@t"):
        nm = stem
        while nm in self._index:
            nm += "_"
        return nm

    def monos_of_degree(self, d, block="s"):
        """All monomials of total degree d supported on one block."""
        sl = {"s": self._s_slice, "x": self._x_slice}[block]
        idxs = range(self.nvars)[sl]
        if not idxs:
            return [self.one_mono] if d == 0 else []
        out = []
        for bars in itertools.combinations(range(d + len(idxs) - 1),
                                           len(idxs) - 1):
            exps = []
            prev = -1
            for b in bars:
                exps.append(b - prev - 1)
                prev = b
            exps.append(d + len(idxs) - 2 - prev)
            m = [0] * self.nvars
            for i, e in zip(idxs, exps):
                m[i] = e
            out.append(tuple(m))
        return out


class Polynomial:
    """Sparse polynomial over QQ, terms stored as {mono: coeff}."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = terms  # no zero coefficients, owned by this object

    # ---- constructors ----

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, {})

    @classmethod
    def const(cls, ctx, c):
        c = QQ(c)
        return cls(ctx, {ctx.one_mono: c} if c else {})

    @classmethod
    def var(cls, ctx, name, exp=1):
        return cls(ctx, {ctx.var_mono(name, exp): QQ1})

    @classmethod
    def from_terms(cls, ctx, pairs):
        t = {}
        for m, c in pairs:
            c = QQ(c) + t.get(m, QQ0)
            if c:
                t[m] = c
            else:
                t.pop(m, None)
        return cls(ctx, t)

    # ---- predicates / basic data ----

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx.compatible(other.ctx) and self.terms == other.terms
        if isinstance(other, (int, type(QQ0))):
            return self.terms == ({self.ctx.one_mono: QQ(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def constant_term(self):
        return self.terms.get(self.ctx.one_mono, QQ0)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1
                                  and self.ctx.one_mono in self.terms)

    def leading_mono(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=self.ctx.mono_key)

    def leading_coeff(self):
        return self.terms[self.leading_mono()]

    def total_degree(self):
        """Maximum total degree over all terms (-1 for the zero poly)."""
        if not self.terms:
            return -1
        return max(map(sum, self.terms))

    def s_degree(self):
        """Common s-degree of all terms, or None if mixed.  0 if zero."""
        if not self.terms:
            return 0
        degs = {self.ctx.s_degree(m) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_unit_local(self):
        """Unit in the localisation: s-degree 0 and nonzero constant term."""
        return bool(self.constant_term()) and self.s_degree() == 0

    # ---- arithmetic ----

    def __add__(self, other):
        if isinstance(other, (int, type(QQ0))):
            other = Polynomial.const(self.ctx, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        t = dict(self.terms)
        for m, c in other.terms.items():
            c2 = t.get(m, QQ0) + c
            if c2:
                t[m] = c2
            else:
                t.pop(m, None)
        return Polynomial(self.ctx, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, type(QQ0))):
            other = Polynomial.const(self.ctx, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, type(QQ0))):
            c = QQ(other)
            if not c:
                return Polynomial.zero(self.ctx)
            return Polynomial(self.ctx,
                              {m: c * v for m, v in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = t.get(m, QQ0) + c1 * c2
                if c:
                    t[m] = c
                else:
                    del t[m]
        return Polynomial(self.ctx, t)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power")
        out = Polynomial.const(self.ctx, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def term_mul(self, coeff, mono):
        """self * coeff * mono, the inner-loop primitive."""
        if not coeff:
            return Polynomial.zero(self.ctx)
        return Polynomial(self.ctx, {mono_mul(m, mono): c * coeff
                                     for m, c in self.terms.items()})

    def monic(self):
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        inv = 1 / lc
        return Polynomial(self.ctx, {m: c * inv for m, c in self.terms.items()})

    # ---- calculus / mappings ----

    def diff(self, name):
        i = self.ctx.var_index(name)
        t = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                m2 = m[:i] + (e - 1,) + m[i + 1:]
                c2 = t.get(m2, QQ0) + c * e
                if c2:
                    t[m2] = c2
                else:
                    del t[m2]
        return Polynomial(self.ctx, t)

    def substitute(self, images, new_ctx=None):
        """Map variables through images (name -> Polynomial or constant).

        Unmentioned variables map to the same-named variable of the
        target context; it is an error if the target lacks one.
        """
        ctx2 = new_ctx
        for v in images.values():
            if isinstance(v, Polynomial):
                ctx2 = v.ctx
                break
        if ctx2 is None:
            ctx2 = self.ctx
        cache = {}

        def image(i):
            if i not in cache:
                nm = self.ctx.names[i]
                v = images.get(nm)
                if v is None:
                    cache[i] = Polynomial.var(ctx2, nm)
                elif isinstance(v, Polynomial):
                    cache[i] = v
                else:
                    cache[i] = Polynomial.const(ctx2, v)
            return cache[i]

        out = Polynomial.zero(ctx2)
        for m, c in self.terms.items():
            t = Polynomial.const(ctx2, c)
            for i, e in enumerate(m):
                if e:
                    t = t * image(i) ** e
            out = out + t
        return out

    def cast(self, new_ctx):
        """Reinterpret in a context that contains all used variables."""
        t = {}
        idx = [new_ctx.var_index(nm) for nm in self.ctx.names]
        for m, c in self.terms.items():
            m2 = [0] * new_ctx.nvars
            for i, e in enumerate(m):
                if e:
                    m2[idx[i]] = e
            t[tuple(m2)] = c
        return Polynomial(new_ctx, t)

    def evaluate(self, point):
        """Evaluate at a full rational point (name -> value)."""
        out = QQ0
        for m, c in self.terms.items():
            v = c
            for nm, e in zip(self.ctx.names, m):
                if e:
                    v *= QQ(point[nm]) ** e
            out += v
        return out

    # ---- printing ----

    def __str__(self):
        if not self.terms:
            return "0"
        key = self.ctx.mono_key
        parts = []
        for m in sorted(self.terms, key=key, reverse=True):
            c = self.terms[m]
            ms = self.ctx.mono_str(m)
            if ms == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = ms
            else:
                body = "%s*%s" % (abs(c), ms)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    __repr__ = __str__


def poly_gcd_content(p):
    """Not a true gcd; scales to integer coefficients with content 1.

    Handy for printing and for stable golden values.
    """
    if not p.terms:
        return p
    from math import gcd
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, int(c.denominator))
    nums = [int(c * den) for c in p.terms.values()]
    g = 0
    for v in nums:
        g = gcd(g, v)
    if g == 0:
        return p
    return p * QQ(den, g)


def poly_exact_div(p, g):
    """Exact quotient p / g; raises ValueError if g does not divide p.

    Runs plain long division under lexicographic comparison of exponent
    tuples, which is a well-order, so it terminates regardless of the
    context's own (local) order.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ctx = p.ctx
    rem = dict(p.terms)
    out = {}
    gl = max(g.terms)  # lex
    glc = g.terms[gl]
    while rem:
        m = max(rem)
        if not mono_divides(gl, m):
            raise ValueError("not divisible")
        q = mono_div(m, gl)
        c = rem[m] / glc
        out[q] = c
        for gm, gc in g.terms.items():
            mm = mono_mul(gm, q)
            v = rem.get(mm, QQ0) - gc * c
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return Polynomial(ctx, out)
