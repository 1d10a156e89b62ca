"""Surface grammars: parsing into nameless form and printing back.

lambda-plus:  x | \\x. M | M N | M (+) N | _|_     (also λ, ⊕, ⊥)
resource:     x | \\x.s | <s>[t1,...,tn] | inl s | inr s
rigid:        as resource, with argument lists written (t1,...,tn)
permutations: as rigid, with monomials written (sigma=[2,1]; e1,e2)
sums:         c1*e1 + c2*e2 with c = num or num/den, or 0
"""

from __future__ import annotations

import re
from fractions import Fraction

from .perm import Perm
from .sums import FormalSum
from .terms import (
    APP, BOT, BOTTOM, BVAR, FVAR, INL, INR, LAM, PERM, PLUS, free_names, is_term,
)

OPLUS_ASCII = "(+)"


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.column = col


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<oplus>\(\+\)|⊕)
  | (?P<bot>_\|_|⊥)
  | (?P<lam>\\|λ)
  | (?P<num>\d+)
  | (?P<ident>[^\W\d][\w']*)
  | (?P<sym>[().<>\[\],*+/;=])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            val = m.group()
            if kind == "sym":
                kind = val
            toks.append((kind, val, pos))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def kind(self) -> str:
        return self.toks[self.i][0]

    @property
    def value(self) -> str:
        return self.toks[self.i][1]

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.toks[self.i][2])

    def take(self, kind: str, value: str | None = None) -> str:
        if self.kind != kind or (value is not None and self.value != value):
            want = value or kind
            got = self.value or "end of input"
            self.error(f"expected {want!r}, found {got!r}")
        v = self.value
        self.i += 1
        return v

    def accept(self, kind: str, value: str | None = None) -> bool:
        if self.kind == kind and (value is None or self.value == value):
            self.i += 1
            return True
        return False

    def finish(self):
        if self.kind != "eof":
            self.error(f"unexpected {self.value!r}")

    def binders(self) -> list[str]:
        names = [self.take("ident")]
        while self.kind == "ident":
            names.append(self.take("ident"))
        self.take(".")
        return names


def _lookup(env: list, name: str):
    for depth, bound in enumerate(reversed(env)):
        if bound == name:
            return (BVAR, depth)
    return None


# ---------------------------------------------------------------- lambda-plus

class _LambdaParser(_Parser):
    def __init__(self, text: str, prelude: dict):
        super().__init__(text)
        self.prelude = prelude

    def expr(self, env):
        m = self.term(env)
        while self.accept("oplus"):
            m = (PLUS, m, self.term(env))
        return m

    def term(self, env):
        if self.kind == "lam":
            return self.abstraction(env)
        m = self.atom(env)
        while True:
            if self.kind in ("ident", "bot", "("):
                m = (APP, m, self.atom(env))
            elif self.kind == "lam":
                return (APP, m, self.abstraction(env))
            else:
                return m

    def abstraction(self, env):
        self.take("lam")
        names = self.binders()
        body = self.expr(env + names)
        for _ in names:
            body = (LAM, body)
        return body

    def atom(self, env):
        if self.accept("bot"):
            return BOTTOM
        if self.accept("("):
            m = self.expr(env)
            self.take(")")
            return m
        if self.kind == "ident":
            name = self.take("ident")
            v = _lookup(env, name)
            if v is not None:
                return v
            if name in self.prelude:
                return self.prelude[name]
            return (FVAR, name)
        self.error(f"expected a term, found {self.value or 'end of input'!r}")


def parse_lambda(text: str, prelude: dict | None = None):
    """Parse a lambda-plus term or approximant."""
    if prelude is None:
        from .lambda_oplus import PRELUDE as prelude
    p = _LambdaParser(text, prelude)
    m = p.expr([])
    p.finish()
    return m


_NAMES = ["x", "y", "z", "w", "u", "v", "a", "b", "c", "d", "f", "g", "h"]


def _fresh(avoid: set) -> str:
    for n in _NAMES:
        if n not in avoid:
            return n
    k = 1
    while f"x{k}" in avoid:
        k += 1
    return f"x{k}"


class _Namer:
    def __init__(self, e):
        self.free = free_names(e)
        self.env: list[str] = []

    def bind(self) -> str:
        name = _fresh(self.free | set(self.env))
        self.env.append(name)
        return name

    def unbind(self):
        self.env.pop()

    def var(self, v) -> str:
        if v[0] == FVAR:
            return v[1]
        i = v[1]
        if i >= len(self.env):
            return f"#{i - len(self.env)}"
        return self.env[-1 - i]


def show_lambda(m, fold: bool = True) -> str:
    """Print a lambda-plus term; closed copies of Theta are shown as Θ."""
    from .lambda_oplus import THETA

    namer = _Namer(m)

    def atomic(t):
        return t[0] in (BVAR, FVAR, BOT) or (fold and t == THETA)

    def go(t) -> str:
        if fold and t == THETA:
            return "Θ"
        tag = t[0]
        if tag in (BVAR, FVAR):
            return namer.var(t)
        if tag == BOT:
            return "_|_"
        if tag == LAM:
            name = namer.bind()
            body = go(t[1])
            namer.unbind()
            return f"\\{name}. {body}"
        if tag == PLUS:
            return f"{operand(t[1])} {OPLUS_ASCII} {operand(t[2])}"
        if tag == APP:
            f, a = t[1], t[2]
            fs = go(f) if f[0] == APP or atomic(f) else f"({go(f)})"
            as_ = go(a) if atomic(a) else f"({go(a)})"
            return f"{fs} {as_}"
        raise ValueError(f"not a lambda-plus term: {t!r}")

    def operand(t) -> str:
        return go(t) if atomic(t) else f"({go(t)})"

    return go(m)


# ------------------------------------------------------- resource and rigid

class _ResourceParser(_Parser):
    def __init__(self, text: str, mode: str):
        super().__init__(text)
        self.mode = mode

    def expr(self, env):
        if self.kind == "[" or (self.kind == "(" and self.mode != "resource"):
            return self.monomial(env)
        return self.term(env)

    def term(self, env):
        if self.accept("lam"):
            names = self.binders()
            body = self.term(env + names)
            for _ in names:
                body = (LAM, body)
            return body
        if self.kind == "ident" and self.value in ("inl", "inr"):
            tag = INL if self.take("ident") == "inl" else INR
            return (tag, self.term(env))
        if self.accept("<"):
            f = self.term(env)
            self.take(">")
            m = (APP, f, self.monomial(env))
            while self.kind in ("[", "("):
                m = (APP, m, self.monomial(env))
            return m
        if self.kind == "ident":
            name = self.take("ident")
            return _lookup(env, name) or (FVAR, name)
        self.error(f"expected a term, found {self.value or 'end of input'!r}")

    def monomial(self, env):
        if self.mode == "resource":
            self.take("[")
            items = self.items(env, "]")
            return tuple(sorted(items))
        self.take("(")
        if self.mode == "perm":
            self.take("ident", "sigma")
            self.take("=")
            self.take("[")
            images = []
            if self.kind == "num":
                images.append(int(self.take("num")))
                while self.accept(","):
                    images.append(int(self.take("num")))
            self.take("]")
            self.take(";")
            parts = self.items(env, ")")
            try:
                sigma = Perm(images)
            except ValueError as exc:
                self.error(str(exc))
            if sigma.n != len(parts):
                self.error("sigma size differs from the number of parts")
            return (PERM, sigma, tuple(parts))
        return tuple(self.items(env, ")"))

    def items(self, env, close):
        items = []
        if not self.accept(close):
            items.append(self.term(env))
            while self.accept(","):
                items.append(self.term(env))
            self.take(close)
        return items


def parse_resource(text: str):
    """Parse a resource term or a [..] monomial (monomials are sorted)."""
    p = _ResourceParser(text, "resource")
    e = p.expr([])
    p.finish()
    return e


def parse_rigid(text: str):
    """Parse a rigid term or a (..) list."""
    p = _ResourceParser(text, "rigid")
    e = p.expr([])
    p.finish()
    return e


def parse_perm_expr(text: str):
    """Parse a permutation expression; variables stand for their identities."""
    p = _ResourceParser(text, "perm")
    e = p.expr([])
    p.finish()
    return e


def _show_res(e, mode: str) -> str:
    namer = _Namer(e)
    open_, close = ("[", "]") if mode == "resource" else ("(", ")")

    def mono(ms) -> str:
        if is_term(ms) and ms[0] == PERM:
            inner = ",".join(go(t) for t in ms[2])
            return f"(sigma={ms[1]}; {inner})"
        return open_ + ",".join(go(t) for t in ms) + close

    def go(t) -> str:
        tag = t[0]
        if tag in (BVAR, FVAR):
            return namer.var(t)
        if tag == LAM:
            name = namer.bind()
            body = go(t[1])
            namer.unbind()
            return f"\\{name}.{body}"
        if tag in (INL, INR):
            return f"{tag} {go(t[1])}"
        if tag == APP:
            return f"<{go(t[1])}>{mono(t[2])}"
        raise ValueError(f"not a resource expression: {t!r}")

    if is_term(e) and e[0] != PERM:
        return go(e)
    return mono(e)


def show_resource(e) -> str:
    return _show_res(e, "resource")


def show_rigid(e) -> str:
    from .rigid import ZERO

    if e is ZERO:
        return "0"
    return _show_res(e, "rigid")


def show_perm_expr(e) -> str:
    return _show_res(e, "perm")


# ------------------------------------------------------------------ sums

def show_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def show_sum(s: FormalSum, show=show_resource) -> str:
    if not s:
        return "0"
    parts = []
    for e, c in s.items():
        parts.append(show(e) if c == 1 else f"{show_coeff(c)}*{show(e)}")
    return " + ".join(parts)


def sum_to_json(s: FormalSum, show=show_resource) -> list:
    return [
        {"expr": show(e), "num": str(c.numerator), "den": str(c.denominator)}
        for e, c in s.items()
    ]


def parse_sum(text: str) -> FormalSum:
    """Parse `c1*e1 + c2*e2` (coefficients optional, `0` is the empty sum)."""
    p = _ResourceParser(text, "resource")
    acc: dict = {}
    if p.kind == "num" and p.value == "0" and p.toks[p.i + 1][0] == "eof":
        return FormalSum()
    while True:
        c = Fraction(1)
        if p.kind == "num":
            num = int(p.take("num"))
            den = int(p.take("num")) if p.accept("/") else 1
            if den == 0:
                p.error("zero denominator")
            c = Fraction(num, den)
            p.take("*")
        e = p.expr([])
        acc[e] = acc.get(e, 0) + c
        if not p.accept("+"):
            break
    p.finish()
    try:
        return FormalSum(acc)
    except ValueError as exc:
        p.error(str(exc))
