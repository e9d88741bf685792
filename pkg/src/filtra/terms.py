"""Signatures, terms, equations, and rules.

Terms are written as S-expressions: ``(or x1 (neg x1))``.  Arity-0 symbols
(constants) appear as bare atoms.  Any other bare atom is kept as a variable;
whether it later resolves to a bound variable or to an element label of a
concrete algebra is decided at evaluation time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import ArityMismatch, TermSyntaxError, UnknownName


@dataclass(frozen=True)
class Signature:
    """A finite list of operation symbols with fixed arities."""

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.symbols]
        if len(names) != len(set(names)):
            raise TermSyntaxError("duplicate symbol names in signature")
        for name, arity in self.symbols:
            if arity < 0:
                raise TermSyntaxError(f"negative arity for {name}")

    @cached_property
    def _arities(self) -> dict[str, int]:
        return dict(self.symbols)

    def arity(self, name: str) -> int:
        try:
            return self._arities[name]
        except KeyError:
            raise UnknownName(f"symbol {name!r} not in signature") from None

    def __contains__(self, name: str) -> bool:
        return name in self._arities

    @property
    def constants(self) -> tuple[str, ...]:
        return tuple(name for name, arity in self.symbols if arity == 0)

    def extends(self, other: "Signature") -> bool:
        """True if every symbol of `other` appears here with the same arity."""
        return all(name in self and self.arity(name) == k for name, k in other.symbols)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple = ()


Term = Var | App


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{format_term(self.lhs)} = {format_term(self.rhs)}"


@dataclass(frozen=True)
class Rule:
    premises: tuple[Term, ...]
    conclusion: Term

    def __str__(self):
        prem = ", ".join(format_term(p) for p in self.premises)
        return f"{prem} |- {format_term(self.conclusion)}"


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _read(tokens: list[str], pos: int, sig: Signature):
    if pos >= len(tokens):
        raise TermSyntaxError("unexpected end of term")
    tok = tokens[pos]
    if tok == ")":
        raise TermSyntaxError("unexpected ')'")
    if tok == "(":
        if pos + 1 >= len(tokens):
            raise TermSyntaxError("unexpected end of term after '('")
        head = tokens[pos + 1]
        if head in ("(", ")"):
            raise TermSyntaxError("operator position must hold a symbol")
        if head not in sig:
            raise TermSyntaxError(f"unknown operation symbol {head!r}")
        args = []
        pos += 2
        while tokens[pos] != ")" if pos < len(tokens) else False:
            arg, pos = _read(tokens, pos, sig)
            args.append(arg)
        if pos >= len(tokens):
            raise TermSyntaxError("missing ')'")
        arity = sig.arity(head)
        if len(args) != arity:
            raise ArityMismatch(f"{head} expects {arity} arguments, got {len(args)}")
        return App(head, tuple(args)), pos + 1
    # bare atom: a constant if the signature says so, else a variable
    if tok in sig:
        if sig.arity(tok) != 0:
            raise ArityMismatch(f"symbol {tok!r} has arity {sig.arity(tok)}, write it applied")
        return App(tok, ()), pos + 1
    return Var(tok), pos + 1


def parse_term(text: str, sig: Signature) -> Term:
    tokens = _tokenize(text)
    if not tokens:
        raise TermSyntaxError("empty term")
    term, pos = _read(tokens, 0, sig)
    if pos != len(tokens):
        raise TermSyntaxError(f"trailing input after term: {' '.join(tokens[pos:])}")
    return term


def parse_equation(lhs: str, rhs: str, sig: Signature) -> Equation:
    return Equation(parse_term(lhs, sig), parse_term(rhs, sig))


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return t.symbol
    return "(" + " ".join([t.symbol] + [format_term(a) for a in t.args]) + ")"


def term_variables(t: Term) -> tuple[str, ...]:
    """Variable names in first-occurrence order."""
    out: list[str] = []

    def walk(u: Term):
        if isinstance(u, Var):
            if u.name not in out:
                out.append(u.name)
        else:
            for a in u.args:
                walk(a)

    walk(t)
    return tuple(out)


def equation_variables(eq: Equation) -> tuple[str, ...]:
    out = list(term_variables(eq.lhs))
    for v in term_variables(eq.rhs):
        if v not in out:
            out.append(v)
    return tuple(out)


def rule_variables(r: Rule) -> tuple[str, ...]:
    out: list[str] = []
    for t in r.premises + (r.conclusion,):
        for v in term_variables(t):
            if v not in out:
                out.append(v)
    return tuple(out)


def check_term(t: Term, sig: Signature) -> None:
    """Raise if some application does not match the signature."""
    if isinstance(t, Var):
        return
    if t.symbol not in sig:
        raise TermSyntaxError(f"unknown operation symbol {t.symbol!r}")
    if sig.arity(t.symbol) != len(t.args):
        raise ArityMismatch(
            f"{t.symbol} expects {sig.arity(t.symbol)} arguments, got {len(t.args)}"
        )
    for a in t.args:
        check_term(a, sig)
