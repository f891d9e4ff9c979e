"""Closed meadow terms over the signature ``0, 1, -, ^-1, +, *``.

Numerals are carried by :class:`Lit`; ``ZERO`` and ``ONE`` are simply
``Lit(0)`` and ``Lit(1)``, so the constants and the literal sugar coincide.

Concrete syntax::

    expr    := sum
    sum     := prod (('+' | '-') prod)*
    prod    := unary (('*' | '/') unary)*
    unary   := '-' unary | postfix
    postfix := primary ('^-1')*
    primary := DECIMAL | '(' expr ')' | 'inv' '(' expr ')'

``a - b`` reads as ``a + -b`` and ``a / b`` as ``a * b^-1``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Generic, Mapping, TypeVar, Union


@dataclass(frozen=True)
class Lit:
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"literal must be nonnegative, got {self.n}")


@dataclass(frozen=True)
class Neg:
    t: "Term"


@dataclass(frozen=True)
class Inv:
    t: "Term"


@dataclass(frozen=True)
class Add:
    l: "Term"
    r: "Term"


@dataclass(frozen=True)
class Mul:
    l: "Term"
    r: "Term"


@dataclass(frozen=True)
class Var:
    """Variable leaf; only valid inside templates."""

    name: str


Term = Union[Lit, Neg, Inv, Add, Mul]
Template = Union[Lit, Neg, Inv, Add, Mul, Var]

ZERO = Lit(0)
ONE = Lit(1)

KINDS = ("zero", "one", "lit", "neg", "inv", "add", "mul")


def kind(t: Template) -> str:
    """Constructor name, with ``Lit(0)``/``Lit(1)`` reported as zero/one."""
    if isinstance(t, Lit):
        return "zero" if t.n == 0 else "one" if t.n == 1 else "lit"
    if isinstance(t, Var):
        return "var"
    return type(t).__name__.lower()


def sub(a: Template, b: Template) -> Add:
    return Add(a, Neg(b))


def div(a: Template, b: Template) -> Mul:
    return Mul(a, Inv(b))


def children(t: Template) -> tuple:
    if isinstance(t, (Lit, Var)):
        return ()
    if isinstance(t, (Neg, Inv)):
        return (t.t,)
    return (t.l, t.r)


def size(t: Template) -> int:
    """Number of nodes."""
    count = 0
    stack = [t]
    while stack:
        node = stack.pop()
        count += 1
        stack.extend(children(node))
    return count


def depth(t: Template) -> int:
    best = 0
    stack = [(t, 1)]
    while stack:
        node, d = stack.pop()
        best = max(best, d)
        stack.extend((c, d + 1) for c in children(node))
    return best


# ---------------------------------------------------------------------------
# Bottom-up evaluation

V = TypeVar("V")


class Algebra(Generic[V]):
    """Interpretation of the meadow signature; subclass and override."""

    def lit(self, n: int) -> V:
        raise NotImplementedError

    def neg(self, a: V) -> V:
        raise NotImplementedError

    def inv(self, a: V) -> V:
        raise NotImplementedError

    def add(self, a: V, b: V) -> V:
        raise NotImplementedError

    def mul(self, a: V, b: V) -> V:
        raise NotImplementedError


def fold(t: Template, alg: Algebra[V], release: bool = False,
         env: Mapping[str, V] | None = None) -> V:
    """Evaluate ``t`` in ``alg`` without recursion.

    Shared subtrees (same object) are evaluated once per call.  With
    ``release`` the value of a node is dropped as soon as its last parent has
    used it, which bounds memory when values are large.  Variables of a
    template are looked up in ``env``.
    """
    memo: dict[int, V] = {}
    pending = _parent_counts(t) if release else None
    stack: list = [t]

    def take(child) -> V:
        value = memo[id(child)]
        if pending is not None:
            key = id(child)
            pending[key] -= 1
            if pending[key] == 0:
                del memo[key]
        return value

    done: set[int] = set()
    while stack:
        node = stack[-1]
        key = id(node)
        if key in done:
            stack.pop()
            continue
        if isinstance(node, Lit):
            value = alg.lit(node.n)
        elif isinstance(node, (Neg, Inv)):
            if id(node.t) not in done:
                stack.append(node.t)
                continue
            inner = take(node.t)
            value = alg.neg(inner) if isinstance(node, Neg) else alg.inv(inner)
        elif isinstance(node, (Add, Mul)):
            missing = False
            if id(node.r) not in done:
                stack.append(node.r)
                missing = True
            if id(node.l) not in done:
                stack.append(node.l)
                missing = True
            if missing:
                continue
            left, right = take(node.l), take(node.r)
            value = alg.add(left, right) if isinstance(node, Add) else alg.mul(left, right)
        elif isinstance(node, Var):
            if env is None or node.name not in env:
                raise ValueError(f"free variable {node.name!r} in a closed term")
            value = env[node.name]
        else:
            raise TypeError(f"not a term: {node!r}")
        memo[key] = value
        done.add(key)
        stack.pop()
    return memo[id(t)]


def _parent_counts(t: Template) -> dict[int, int]:
    counts = {id(t): 1}
    seen = {id(t)}
    stack = [t]
    while stack:
        node = stack.pop()
        for c in children(node):
            counts[id(c)] = counts.get(id(c), 0) + 1
            if id(c) not in seen:
                seen.add(id(c))
                stack.append(c)
    return counts




# ---------------------------------------------------------------------------
# Parsing

class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: frozenset[str]):
        self.line = line
        self.column = column
        self.expected = expected
        exp = ", ".join(sorted(expected))
        super().__init__(f"{line}:{column}: {message} (expected one of: {exp})")


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<inv1>\^\s*-\s*1(?![0-9]))|(?P<num>[0-9]+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/()])"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            line, col = _line_col(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col,
                             frozenset({"DECIMAL", "'('", "'-'", "'inv'"}))
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "op":
                kind = value
            elif kind == "inv1":
                kind, value = "^-1", "^-1"
            toks.append(_Tok(kind, value, pos))
        pos = m.end()
    toks.append(_Tok("EOF", "", len(text)))
    return toks


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


_PRIMARY_START = frozenset({"DECIMAL", "'('", "'inv'", "'-'"})


class _Parser:
    def __init__(self, text: str, variables: frozenset[str]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.variables = variables

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected: frozenset[str]) -> ParseError:
        tok = self.peek()
        line, col = _line_col(self.text, tok.pos)
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        return ParseError(f"unexpected {found}", line, col, expected)

    def expect(self, kind: str) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            raise self.fail(frozenset({f"'{kind}'"}))
        self.i += 1
        return tok

    def parse(self) -> Template:
        t = self.sum()
        if self.peek().kind != "EOF":
            raise self.fail(frozenset({"'+'", "'-'", "'*'", "'/'", "'^-1'", "end of input"}))
        return t

    def sum(self) -> Template:
        t = self.prod()
        while self.peek().kind in ("+", "-"):
            op = self.toks[self.i].kind
            self.i += 1
            r = self.prod()
            t = Add(t, r) if op == "+" else Add(t, Neg(r))
        return t

    def prod(self) -> Template:
        t = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.toks[self.i].kind
            self.i += 1
            r = self.unary()
            t = Mul(t, r) if op == "*" else Mul(t, Inv(r))
        return t

    def unary(self) -> Template:
        if self.peek().kind == "-":
            self.i += 1
            return Neg(self.unary())
        return self.postfix()

    def postfix(self) -> Template:
        t = self.primary()
        while self.peek().kind == "^-1":
            self.i += 1
            t = Inv(t)
        return t

    def primary(self) -> Template:
        tok = self.peek()
        if tok.kind == "num":
            self.i += 1
            return Lit(int(tok.text))
        if tok.kind == "(":
            self.i += 1
            t = self.sum()
            self.expect(")")
            return t
        if tok.kind == "name":
            if tok.text == "inv":
                self.i += 1
                self.expect("(")
                t = self.sum()
                self.expect(")")
                return Inv(t)
            if tok.text in self.variables:
                self.i += 1
                return Var(tok.text)
        expected = set(_PRIMARY_START)
        expected.update(f"'{v}'" for v in self.variables)
        raise self.fail(frozenset(expected))


def parse(text: str) -> Term:
    """Parse a closed term."""
    return _Parser(text, frozenset()).parse()


def parse_template(text: str, variables: frozenset[str] | set[str] = frozenset("xyzu")) -> Template:
    """Parse a term that may mention the given variable names."""
    return _Parser(text, frozenset(variables)).parse()


# ---------------------------------------------------------------------------
# Printing

# binding strength of the printed form
_SUM, _PROD, _UNARY, _POSTFIX = 1, 2, 3, 4


def to_text(t: Template) -> str:
    """Print with minimal parentheses; ``parse(to_text(t)) == t``."""
    return _show(t, _SUM)


def _show(t: Template, ctx: int) -> str:
    if isinstance(t, Lit):
        return str(t.n)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Add):
        if isinstance(t.r, Neg):
            s = f"{_show(t.l, _SUM)} - {_show(t.r.t, _PROD)}"
        else:
            s = f"{_show(t.l, _SUM)} + {_show(t.r, _PROD)}"
        level = _SUM
    elif isinstance(t, Mul):
        s = f"{_show(t.l, _PROD)}*{_show(t.r, _UNARY)}"
        level = _PROD
    elif isinstance(t, Neg):
        s = f"-{_show(t.t, _UNARY)}"
        level = _UNARY
    elif isinstance(t, Inv):
        s = f"{_show(t.t, _POSTFIX)}^-1"
        level = _POSTFIX
    else:
        raise TypeError(f"not a term: {t!r}")
    return f"({s})" if level < ctx else s


# ---------------------------------------------------------------------------
# Numerals and normal rational terms

def expand_numeral(n: int, cap: int) -> Term:
    """The unary numeral ``(...((0 + 1) + 1) ... + 1)``; ``0`` for ``n == 0``."""
    if n < 0:
        raise ValueError("numeral must be nonnegative")
    if n > cap:
        raise ValueError(f"numeral {n} exceeds cap {cap}")
    t: Term = ZERO
    for _ in range(n):
        t = Add(t, ONE)
    return t


def numeral_value(t: Template) -> int | None:
    """``n`` if ``t`` is a numeral in literal or unary form, else ``None``."""
    count = 0
    while isinstance(t, Add):
        if t.r != ONE:
            return None
        count += 1
        t = t.l
    if isinstance(t, Lit):
        if count and t.n not in (0, 1):
            return None
        return t.n + count
    return None


def as_normal_rational(t: Template) -> Fraction | None:
    """Value of ``t`` if it is literally a normal rational term, else ``None``.

    Normal rational terms are ``0``, ``n*m^-1`` and ``-(n*m^-1)`` with
    ``n, m > 0`` coprime.
    """
    if numeral_value(t) == 0:
        return Fraction(0)
    sign = 1
    if isinstance(t, Neg):
        sign, t = -1, t.t
    if not (isinstance(t, Mul) and isinstance(t.r, Inv)):
        return None
    n = numeral_value(t.l)
    m = numeral_value(t.r.t)
    if n is None or m is None or n == 0 or m == 0 or gcd(n, m) != 1:
        return None
    return Fraction(sign * n, m)


def rat_to_term(q: Fraction) -> Term:
    if q == 0:
        return ZERO
    body = Mul(Lit(abs(q.numerator)), Inv(Lit(q.denominator)))
    return Neg(body) if q < 0 else body


# ---------------------------------------------------------------------------
# Templates

def substitute(tpl: Template, env: Mapping[str, Term]) -> Term:
    def go(node: Template) -> Term:
        if isinstance(node, Var):
            try:
                return env[node.name]
            except KeyError:
                raise KeyError(f"unbound {node.name}") from None
        if isinstance(node, Lit):
            return node
        if isinstance(node, Neg):
            return Neg(go(node.t))
        if isinstance(node, Inv):
            return Inv(go(node.t))
        if isinstance(node, Add):
            return Add(go(node.l), go(node.r))
        if isinstance(node, Mul):
            return Mul(go(node.l), go(node.r))
        raise TypeError(f"not a template: {node!r}")

    return go(tpl)


def variables(tpl: Template) -> set[str]:
    found = set()
    stack = [tpl]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            found.add(node.name)
        stack.extend(children(node))
    return found


# ---------------------------------------------------------------------------
# Random generation

def random_term(seed: int, max_depth: int, max_lit: int) -> Term:
    """Deterministic pseudo-random closed term.

    Depth is at most ``max_depth`` (a leaf has depth 1) and every literal is
    at most ``max_lit``.  Leaves become likelier with depth and small literals
    are favoured, which keeps denominators (and with them the index bound)
    moderate; every constructor and every literal up to ``max_lit`` stays
    reachable.
    """
    if max_depth < 1 or max_lit < 1:
        raise ValueError("max_depth and max_lit must be positive")
    return _grow(random.Random(seed), max_depth, max_lit, 1)


def _grow(rng: random.Random, max_depth: int, max_lit: int, level: int) -> Term:
    if level >= max_depth or rng.random() < 0.15 + 0.1 * level:
        return _leaf(rng, max_lit)
    pick = rng.random()
    if pick < 0.15:
        return Neg(_grow(rng, max_depth, max_lit, level + 1))
    if pick < 0.30:
        return Inv(_grow(rng, max_depth, max_lit, level + 1))
    l = _grow(rng, max_depth, max_lit, level + 1)
    r = _grow(rng, max_depth, max_lit, level + 1)
    return Add(l, r) if pick < 0.70 else Mul(l, r)


def _leaf(rng: random.Random, max_lit: int) -> Term:
    pick = rng.random()
    if pick < 0.25 or max_lit < 2:
        return ZERO if pick < 0.1 else ONE
    if rng.random() < 0.7:
        return Lit(rng.randint(2, min(max_lit, 7)))
    return Lit(rng.randint(2, max_lit))


def random_sized_term(seed: int, nodes: int, max_lit: int) -> Term:
    """Random term with exactly ``nodes`` nodes (for benchmarks)."""
    rng = random.Random(seed)

    def build(n: int) -> Term:
        if n == 1:
            return _leaf(rng, max_lit)
        if n == 2 or rng.random() < 0.2:
            inner = build(n - 1)
            return Neg(inner) if rng.random() < 0.5 else Inv(inner)
        k = rng.randint(1, n - 2)
        l, r = build(k), build(n - 1 - k)
        return Add(l, r) if rng.random() < 0.5 else Mul(l, r)

    if nodes < 1:
        raise ValueError("nodes must be positive")
    return build(nodes)

