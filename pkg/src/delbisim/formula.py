"""Formula language shared by all supported logics.

One AST covers basic modal operators plus the four deletion modalities:
edge deletion (``sab``/``sbox``), guarded edge deletion (``sab{psi|chi}``),
point removal (``rem``/``rbox``) and guarded point removal (``rem{psi}``).
Box-family operators are primitive, not abbreviations, so printed formulas
keep their dual shape.

Grammar (binary operators always need explicit parentheses)::

    formula ::= "true" | "false" | ident
              | "~" formula
              | "(" formula ("&" | "|" | "->") formula ")"
              | ("dia" | "box" | "sab" | "sbox" | "rem" | "rbox") formula
              | ("sab" | "sbox") "{" formula "|" formula "}" formula
              | ("rem" | "rbox") "{" formula "}" formula

Identifiers match ``[A-Za-z_@][A-Za-z0-9_@]*``; names starting with ``@``
are reserved for the world-tag atoms emitted by characteristic formulas.
"""

from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass


class Formula:
    """Base class of all AST nodes."""


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Dia(Formula):
    body: Formula


@dataclass(frozen=True)
class Box(Formula):
    body: Formula


@dataclass(frozen=True)
class Sab(Formula):
    """Some edge can be deleted so that the body holds at the same point."""

    body: Formula


@dataclass(frozen=True)
class SabBox(Formula):
    body: Formula


@dataclass(frozen=True)
class GSab(Formula):
    """Edge deletion guarded by formulas at the edge's source and target."""

    source: Formula
    target: Formula
    body: Formula


@dataclass(frozen=True)
class GSabBox(Formula):
    source: Formula
    target: Formula
    body: Formula


@dataclass(frozen=True)
class Rem(Formula):
    """Some world other than the current one can be removed."""

    body: Formula


@dataclass(frozen=True)
class RemBox(Formula):
    body: Formula


@dataclass(frozen=True)
class GRem(Formula):
    """Point removal guarded by a formula at the removed world."""

    guard: Formula
    body: Formula


@dataclass(frozen=True)
class GRemBox(Formula):
    guard: Formula
    body: Formula


class LanguageFragment(enum.Enum):
    MODAL = "modal"
    SML = "sml"
    GSML = "gsml"
    PSL = "psl"
    MLSR = "mlsr"


_BASE_NODES = (Top, Bot, Atom, Not, And, Or, Imp, Dia, Box)
_FRAGMENT_NODES = {
    LanguageFragment.MODAL: _BASE_NODES,
    LanguageFragment.SML: _BASE_NODES + (Sab, SabBox),
    LanguageFragment.GSML: _BASE_NODES + (Sab, SabBox, GSab, GSabBox),
    LanguageFragment.PSL: _BASE_NODES + (Rem, RemBox),
    LanguageFragment.MLSR: _BASE_NODES + (Rem, RemBox, GRem, GRemBox),
}


def in_fragment(f: Formula, fragment: LanguageFragment) -> bool:
    """Decide whether every constructor of ``f`` is allowed by the fragment."""
    allowed = _FRAGMENT_NODES[fragment]
    return all(isinstance(g, allowed) for g in walk(f))


def walk(f: Formula):
    """Yield every node of the formula tree, parents before children."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(_children(node)))


def _children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (Top, Bot, Atom)):
        return ()
    if isinstance(f, (Not, Dia, Box, Sab, SabBox, Rem, RemBox)):
        return (f.body,)
    if isinstance(f, (And, Or, Imp)):
        return (f.left, f.right)
    if isinstance(f, (GSab, GSabBox)):
        return (f.source, f.target, f.body)
    if isinstance(f, (GRem, GRemBox)):
        return (f.guard, f.body)
    raise TypeError(f"not a formula node: {f!r}")


def atoms(f: Formula) -> set[str]:
    return {g.name for g in walk(f) if isinstance(g, Atom)}


def modal_depth(f: Formula) -> int:
    """Deepest nesting of modal/deletion operators (guards included)."""
    if isinstance(f, (Top, Bot, Atom)):
        return 0
    kids = _children(f)
    inner = max(modal_depth(k) for k in kids)
    if isinstance(f, (Not, And, Or, Imp)):
        return inner
    return 1 + inner


# --- printer ---------------------------------------------------------------

_BINOP_TEXT = {And: "&", Or: "|", Imp: "->"}


def format_formula(f: Formula) -> str:
    """Canonical text form; ``parse_formula`` inverts it exactly."""
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return f"~{format_formula(f.body)}"
    if isinstance(f, (And, Or, Imp)):
        op = _BINOP_TEXT[type(f)]
        return f"({format_formula(f.left)} {op} {format_formula(f.right)})"
    if isinstance(f, Dia):
        return f"dia {format_formula(f.body)}"
    if isinstance(f, Box):
        return f"box {format_formula(f.body)}"
    if isinstance(f, Sab):
        return f"sab {format_formula(f.body)}"
    if isinstance(f, SabBox):
        return f"sbox {format_formula(f.body)}"
    if isinstance(f, GSab):
        return (
            f"sab{{{format_formula(f.source)}|{format_formula(f.target)}}} "
            f"{format_formula(f.body)}"
        )
    if isinstance(f, GSabBox):
        return (
            f"sbox{{{format_formula(f.source)}|{format_formula(f.target)}}} "
            f"{format_formula(f.body)}"
        )
    if isinstance(f, Rem):
        return f"rem {format_formula(f.body)}"
    if isinstance(f, RemBox):
        return f"rbox {format_formula(f.body)}"
    if isinstance(f, GRem):
        return f"rem{{{format_formula(f.guard)}}} {format_formula(f.body)}"
    if isinstance(f, GRemBox):
        return f"rbox{{{format_formula(f.guard)}}} {format_formula(f.body)}"
    raise TypeError(f"not a formula node: {f!r}")


# --- parser ----------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


_TOKEN_RE = re.compile(r"[A-Za-z_@][A-Za-z0-9_@]*|->|[~&|(){}]|\S")
_KEYWORDS = {"true", "false", "dia", "box", "sab", "sbox", "rem", "rbox"}
_PLAIN_UNARY = {
    "dia": Dia,
    "box": Box,
    "sab": Sab,
    "sbox": SabBox,
    "rem": Rem,
    "rbox": RemBox,
}
_GUARDED_EDGE = {"sab": GSab, "sbox": GSabBox}
_GUARDED_POINT = {"rem": GRem, "rbox": GRemBox}


class _Parser:
    def __init__(self, text: str):
        lines = text.splitlines() or [""]
        self.tokens: list[tuple[str, int, int]] = []
        for lineno, line in enumerate(lines, start=1):
            for m in _TOKEN_RE.finditer(line):
                self.tokens.append((m.group(), lineno, m.start() + 1))
        self.end = (len(lines), len(lines[-1]) + 1)
        self.pos = 0

    def error(self, message: str):
        if self.pos < len(self.tokens):
            _, line, col = self.tokens[self.pos]
        else:
            line, col = self.end
        raise ParseError(message, line, col)

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input" + (f", expected {expected!r}" if expected else ""))
        if expected is not None and tok != expected:
            self.error(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok

    def formula(self) -> Formula:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        if tok == "true":
            self.take()
            return Top()
        if tok == "false":
            self.take()
            return Bot()
        if tok == "~":
            self.take()
            return Not(self.formula())
        if tok == "(":
            self.take()
            left = self.formula()
            op = self.take()
            if op not in ("&", "|", "->"):
                self.pos -= 1
                self.error(f"expected a binary operator, found {op!r}")
            right = self.formula()
            self.take(")")
            if op == "&":
                return And(left, right)
            if op == "|":
                return Or(left, right)
            return Imp(left, right)
        if tok in ("sab", "sbox"):
            self.take()
            if self.peek() == "{":
                self.take("{")
                source = self.formula()
                self.take("|")
                target = self.formula()
                self.take("}")
                return _GUARDED_EDGE[tok](source, target, self.formula())
            return _PLAIN_UNARY[tok](self.formula())
        if tok in ("rem", "rbox"):
            self.take()
            if self.peek() == "{":
                self.take("{")
                guard = self.formula()
                self.take("}")
                return _GUARDED_POINT[tok](guard, self.formula())
            return _PLAIN_UNARY[tok](self.formula())
        if tok in ("dia", "box"):
            self.take()
            return _PLAIN_UNARY[tok](self.formula())
        if re.fullmatch(r"[A-Za-z_@][A-Za-z0-9_@]*", tok):
            self.take()
            return Atom(tok)
        self.error(f"unknown token {tok!r}")


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    f = parser.formula()
    if parser.peek() is not None:
        parser.error(f"trailing input {parser.peek()!r}")
    return f


# --- random generation -----------------------------------------------------


def random_formula(
    seed: int,
    fragment: LanguageFragment,
    max_depth: int,
    prop_pool: tuple[str, ...],
) -> Formula:
    """A deterministic random formula inside the fragment, depth-bounded.

    Never emits reserved ``@`` atoms.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    if not prop_pool:
        raise ValueError("prop_pool must be non-empty")
    rng = random.Random(seed)
    return _gen(rng, fragment, max_depth, tuple(prop_pool))


def _gen(rng: random.Random, fragment: LanguageFragment, budget: int, pool) -> Formula:
    if budget <= 1:
        roll = rng.random()
        if roll < 0.1:
            return Top() if rng.random() < 0.5 else Bot()
        atom = Atom(rng.choice(pool))
        return Not(atom) if roll < 0.4 else atom
    choices = ["leaf", "not", "and", "or", "imp", "dia", "box"]
    if fragment in (LanguageFragment.SML, LanguageFragment.GSML):
        choices += ["sab", "sbox"]
    if fragment is LanguageFragment.GSML:
        choices += ["gsab", "gsbox"]
    if fragment in (LanguageFragment.PSL, LanguageFragment.MLSR):
        choices += ["rem", "rbox"]
    if fragment is LanguageFragment.MLSR:
        choices += ["grem", "grbox"]
    kind = rng.choice(choices)
    sub = lambda: _gen(rng, fragment, budget - 1, pool)  # noqa: E731
    if kind == "leaf":
        return _gen(rng, fragment, 1, pool)
    if kind == "not":
        return Not(sub())
    if kind == "and":
        return And(sub(), sub())
    if kind == "or":
        return Or(sub(), sub())
    if kind == "imp":
        return Imp(sub(), sub())
    if kind == "dia":
        return Dia(sub())
    if kind == "box":
        return Box(sub())
    if kind == "sab":
        return Sab(sub())
    if kind == "sbox":
        return SabBox(sub())
    if kind == "gsab":
        return GSab(sub(), sub(), sub())
    if kind == "gsbox":
        return GSabBox(sub(), sub(), sub())
    if kind == "rem":
        return Rem(sub())
    if kind == "rbox":
        return RemBox(sub())
    if kind == "grem":
        return GRem(sub(), sub())
    return GRemBox(sub(), sub())
