"""Problem-file parsing and printing.

Line-oriented format; '#' starts a comment anywhere on a line.

    ring: x, y, z
    hypersurface: y^2 - x*z^2
    function: y^2 - (x - z)^2      # or form: <n comma-separated exprs>
    sing: y, z                     # optional
    linear: x + 2*z                # optional, used by oracles
    bound: 3                       # optional twist-bound override
    work-limit: 1000000            # optional reduction-step cap

Expressions use +, -, *, /, ^, integer literals and parentheses; '/'
only by a nonzero constant.  Every error carries line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ring import QQ, Polynomial, RingContext
from .nash import HypersurfaceProblem, ProblemError


class ParseError(ProblemError):
    def __init__(self, msg, line=None, col=None):
        self.msg = msg
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = "line %d" % line
            if col is not None:
                where += ", col %d" % col
            where += ": "
        super().__init__(where + msg)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(src, line, col0):
    toks = []
    i = 0
    while i < len(src):
        m = _TOKEN.match(src, i)
        if not m or m.end() == i:
            break
        col = col0 + m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", int(m.group(1)), col))
        elif m.group(2):
            toks.append(("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError("unexpected character %r" % ch, line, col)
            toks.append((ch, ch, col))
        i = m.end()
    toks.append(("end", None, col0 + len(src)))
    return toks


class _ExprParser:
    def __init__(self, src, ctx, line, col0=1):
        self.toks = _tokenize(src, line, col0)
        self.ctx = ctx
        self.line = line
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def parse(self):
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected trailing input")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, col = self.take()
            q = self.factor()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("can only divide by a nonzero constant",
                                     self.line, col)
                p = p * (1 / q.constant_term())
        return p

    def factor(self):
        sign = 1
        while self.peek()[0] in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        p = self.atom()
        if self.peek()[0] == "^":
            self.take()
            kind, val, col = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer",
                                 self.line, col)
            p = p ** val
        return p if sign > 0 else -p

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            return Polynomial.const(self.ctx, val)
        if kind == "name":
            if val not in self.ctx._index:
                raise ParseError("unknown variable %r" % val, self.line, col)
            return Polynomial.var(self.ctx, val)
        if kind == "(":
            p = self.expr()
            kind2, _, col2 = self.take()
            if kind2 != ")":
                raise ParseError("expected ')'", self.line, col2)
            return p
        raise ParseError("expected a number, variable or '('",
                         self.line, col)


def parse_expr(src, ctx, line=1, col0=1):
    return _ExprParser(src, ctx, line, col0).parse()


_KEYS = ("ring", "hypersurface", "function", "form", "sing", "linear",
         "bound", "work-limit")


@dataclass
class ProblemSpec:
    x_names: tuple
    h: object
    f: object = None
    form: object = None
    sing: object = None
    linear: object = None
    bound: object = None
    work_limit: object = None

    def to_problem(self):
        return HypersurfaceProblem(
            self.x_names, self.h, f=self.f, form=self.form, sing=self.sing,
            bound_override=self.bound, work_limit=self.work_limit)


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def parse_problem(text):
    """Parse a problem file into a ProblemSpec."""
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if ":" not in body:
            raise ParseError("expected 'key: value'", lineno, 1)
        key, _, value = body.partition(":")
        col0 = len(key) + 2
        key = key.strip()
        if key not in _KEYS:
            raise ParseError("unknown key %r" % key, lineno, 1)
        if key in seen:
            raise ParseError("duplicate key %r" % key, lineno, 1)
        seen[key] = (value, lineno, col0)

    if "ring" not in seen:
        raise ParseError("missing ring declaration")
    value, lineno, col0 = seen["ring"]
    names = []
    for part in value.split(","):
        nm = part.strip()
        if not _NAME_RE.match(nm):
            raise ParseError("bad variable name %r" % nm, lineno, col0)
        names.append(nm)
    if len(names) != len(set(names)):
        raise ParseError("duplicate variable in ring", lineno, col0)
    ctx = RingContext(tuple(names))

    def expr_field(key):
        if key not in seen:
            return None
        value, lineno, col0 = seen[key]
        return parse_expr(value, ctx, lineno, col0)

    def list_field(key):
        if key not in seen:
            return None
        value, lineno, col0 = seen[key]
        out = []
        col = col0
        for part in value.split(","):
            out.append(parse_expr(part, ctx, lineno, col))
            col += len(part) + 1
        return out

    def int_field(key):
        if key not in seen:
            return None
        value, lineno, col0 = seen[key]
        try:
            n = int(value.strip())
        except ValueError:
            raise ParseError("expected an integer", lineno, col0) from None
        if n < 1:
            raise ParseError("expected a positive integer", lineno, col0)
        return n

    if "hypersurface" not in seen:
        raise ParseError("missing hypersurface declaration")
    if ("function" in seen) == ("form" in seen):
        raise ParseError("need exactly one of function or form")

    return ProblemSpec(
        x_names=tuple(names),
        h=expr_field("hypersurface"),
        f=expr_field("function"),
        form=list_field("form"),
        sing=list_field("sing"),
        linear=expr_field("linear"),
        bound=int_field("bound"),
        work_limit=int_field("work-limit"),
    )


def print_problem(spec):
    """Canonical text for a ProblemSpec; parses back to an equal spec."""
    lines = ["ring: " + ", ".join(spec.x_names),
             "hypersurface: " + str(spec.h)]
    if spec.f is not None:
        lines.append("function: " + str(spec.f))
    if spec.form is not None:
        lines.append("form: " + ", ".join(str(p) for p in spec.form))
    if spec.sing is not None:
        lines.append("sing: " + ", ".join(str(p) for p in spec.sing))
    if spec.linear is not None:
        lines.append("linear: " + str(spec.linear))
    if spec.bound is not None:
        lines.append("bound: %d" % spec.bound)
    if spec.work_limit is not None:
        lines.append("work-limit: %d" % spec.work_limit)
    return "\n".join(lines) + "\n"
