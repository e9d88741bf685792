"""Finite algebras over an indexed carrier, with the structural constructions.

Carriers are always {0, ..., n-1}; element labels are display-only.  Operation
tables are stored flat in row-major order (first argument varies slowest), so
the value of f(a1, ..., ak) sits at index a1*n^(k-1) + ... + ak.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    ArityMismatch,
    InvalidSpec,
    NotACongruence,
    SizeBudgetExceeded,
    UnboundVariable,
    UnknownName,
)
from .terms import Equation, Signature, Term, Var, equation_variables

DEFAULT_BUDGET = 10_000_000


class Budget:
    """A mutable step counter that fails loudly instead of hanging."""

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.spent = 0

    def spend(self, n: int = 1) -> None:
        self.spent += n
        if self.spent > self.limit:
            raise SizeBudgetExceeded(
                f"computation exceeded {self.limit} elementary steps"
            )

    def check(self, estimate: int) -> None:
        if self.spent + estimate > self.limit:
            raise SizeBudgetExceeded(
                f"estimated {estimate} steps would exceed budget {self.limit}"
            )


def as_budget(budget: "Budget | int | None") -> Budget:
    if budget is None:
        return Budget()
    if isinstance(budget, int):
        return Budget(budget)
    return budget


@dataclass(frozen=True)
class FiniteAlgebra:
    """A total algebra on {0, ..., size-1} with one table per symbol."""

    name: str
    size: int
    signature: Signature
    tables: tuple[tuple[str, tuple[int, ...]], ...]
    labels: tuple[str, ...] | None = None

    @classmethod
    def make(
        cls,
        name: str,
        size: int,
        signature: Signature,
        tables: Mapping[str, Sequence[int]],
        labels: Sequence[str] | None = None,
    ) -> "FiniteAlgebra":
        if size <= 0:
            raise InvalidSpec(f"algebra {name!r} must have a positive carrier")
        if labels is not None and len(labels) != size:
            raise InvalidSpec(f"algebra {name!r}: {len(labels)} labels for {size} elements")
        normalized = []
        for sym, arity in signature.symbols:
            if sym not in tables:
                raise InvalidSpec(f"algebra {name!r}: no table for symbol {sym!r}")
            table = tuple(tables[sym])
            if len(table) != size**arity:
                raise InvalidSpec(
                    f"algebra {name!r}: table for {sym!r} has {len(table)} entries, "
                    f"expected {size**arity}"
                )
            if any(not (0 <= v < size) for v in table):
                raise InvalidSpec(f"algebra {name!r}: table entry out of range for {sym!r}")
            normalized.append((sym, table))
        extra = set(tables) - {sym for sym, _ in signature.symbols}
        if extra:
            raise InvalidSpec(f"algebra {name!r}: tables for unknown symbols {sorted(extra)}")
        return cls(name, size, signature, tuple(normalized), tuple(labels) if labels else None)

    @cached_property
    def _tmap(self) -> dict[str, tuple[int, ...]]:
        return dict(self.tables)

    def table(self, symbol: str) -> tuple[int, ...]:
        try:
            return self._tmap[symbol]
        except KeyError:
            raise UnknownName(f"no operation {symbol!r} on algebra {self.name!r}") from None

    def op(self, symbol: str, *args: int) -> int:
        table = self.table(symbol)
        arity = self.signature.arity(symbol)
        if len(args) != arity:
            raise ArityMismatch(f"{symbol} expects {arity} arguments, got {len(args)}")
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return table[idx]

    def elements(self) -> range:
        return range(self.size)

    def label(self, element: int) -> str:
        if self.labels is not None:
            return self.labels[element]
        return str(element)

    def element_index(self, token: str) -> int:
        """Resolve an element given as a label or as a decimal index."""
        if self.labels is not None and token in self.labels:
            return self.labels.index(token)
        try:
            idx = int(token)
        except ValueError:
            raise UnknownName(f"{token!r} is not an element of {self.name!r}") from None
        if not (0 <= idx < self.size):
            raise UnknownName(f"index {idx} out of range for {self.name!r}")
        return idx

    def describe(self, elements: Iterable[int]) -> str:
        return "{" + ", ".join(self.label(e) for e in sorted(elements)) + "}"


@dataclass(frozen=True)
class Matrix:
    """An algebra together with a set of designated elements."""

    algebra: FiniteAlgebra
    designated: frozenset[int]

    def __post_init__(self):
        if any(not (0 <= d < self.algebra.size) for d in self.designated):
            raise InvalidSpec("designated elements outside the carrier")


Valuation = Mapping[str, int]


def eval_term(t: Term, algebra: FiniteAlgebra, valuation: Valuation) -> int:
    """Evaluate by structural recursion on the tables.

    A variable resolves through the valuation first; failing that, an element
    label of the algebra counts as a literal.
    """
    if isinstance(t, Var):
        if t.name in valuation:
            return valuation[t.name]
        if algebra.labels is not None and t.name in algebra.labels:
            return algebra.labels.index(t.name)
        raise UnboundVariable(f"variable {t.name!r} is unbound")
    args = tuple(eval_term(a, algebra, valuation) for a in t.args)
    return algebra.op(t.symbol, *args)


def holds_equation(eq: Equation, algebra: FiniteAlgebra, valuation: Valuation) -> bool:
    return eval_term(eq.lhs, algebra, valuation) == eval_term(eq.rhs, algebra, valuation)


def _free_variables(eq: Equation, algebra: FiniteAlgebra) -> tuple[str, ...]:
    labels = set(algebra.labels or ())
    return tuple(v for v in equation_variables(eq) if v not in labels)


def holds_universally(eq: Equation, algebra: FiniteAlgebra, budget: Budget | int | None = None) -> bool:
    """True iff the equation holds under every assignment of its variables."""
    budget = as_budget(budget)
    variables = _free_variables(eq, algebra)
    budget.check(algebra.size ** len(variables))
    for values in itertools.product(algebra.elements(), repeat=len(variables)):
        budget.spend()
        if not holds_equation(eq, algebra, dict(zip(variables, values))):
            return False
    return True


@dataclass(frozen=True)
class Product:
    """A direct product together with its index codec and projections."""

    algebra: FiniteAlgebra
    factor_sizes: tuple[int, ...]

    def to_tuple(self, element: int) -> tuple[int, ...]:
        out = []
        for size in reversed(self.factor_sizes):
            out.append(element % size)
            element //= size
        return tuple(reversed(out))

    def from_tuple(self, coords: Sequence[int]) -> int:
        idx = 0
        for size, c in zip(self.factor_sizes, coords):
            if not (0 <= c < size):
                raise UnknownName(f"coordinate {c} out of range")
            idx = idx * size + c
        return idx

    def projection(self, i: int) -> tuple[int, ...]:
        """The i-th projection as an element map."""
        return tuple(self.to_tuple(e)[i] for e in range(self.algebra.size))


def trivial_algebra(signature: Signature, name: str = "1") -> FiniteAlgebra:
    tables = {sym: [0] * (1**arity) for sym, arity in signature.symbols}
    return FiniteAlgebra.make(name, 1, signature, tables, labels=["*"])


def direct_product(
    algebras: Sequence[FiniteAlgebra],
    name: str | None = None,
    budget: Budget | int | None = None,
    signature: Signature | None = None,
) -> Product:
    """Componentwise product; the empty product is the one-element algebra."""
    budget = as_budget(budget)
    if not algebras:
        if signature is None:
            raise InvalidSpec("the empty product needs an explicit signature")
        return Product(trivial_algebra(signature, name or "1"), ())
    sig = algebras[0].signature
    for a in algebras[1:]:
        if a.signature != sig:
            raise InvalidSpec("product factors must share a signature")
    sizes = tuple(a.size for a in algebras)
    total = 1
    for s in sizes:
        total *= s
    table_cells = sum(total**arity for _, arity in sig.symbols)
    budget.check(table_cells)

    prod_name = name or "x".join(a.name for a in algebras)
    labels = None
    if all(a.labels is not None for a in algebras):
        labels = []
        for idx in range(total):
            coords = []
            rest = idx
            for s in reversed(sizes):
                coords.append(rest % s)
                rest //= s
            coords.reverse()
            labels.append("(" + ",".join(a.labels[c] for a, c in zip(algebras, coords)) + ")")

    def decode(e: int) -> tuple[int, ...]:
        out = []
        for s in reversed(sizes):
            out.append(e % s)
            e //= s
        return tuple(reversed(out))

    tables = {}
    for sym, arity in sig.symbols:
        entries = []
        for args in itertools.product(range(total), repeat=arity):
            budget.spend()
            coords = [decode(a) for a in args]
            value_coords = [
                alg.op(sym, *(coords[j][i] for j in range(arity)))
                for i, alg in enumerate(algebras)
            ]
            idx = 0
            for s, c in zip(sizes, value_coords):
                idx = idx * s + c
            entries.append(idx)
        tables[sym] = entries
    algebra = FiniteAlgebra.make(prod_name, total, sig, tables, labels)
    return Product(algebra, sizes)


def subuniverse_generated(
    algebra: FiniteAlgebra, subset: Iterable[int], budget: Budget | int | None = None
) -> frozenset[int]:
    """Least subset containing the seed and all constants, closed under the tables.

    With no constants and an empty seed the result is empty.
    """
    budget = as_budget(budget)
    current = set(subset)
    for c in algebra.signature.constants:
        current.add(algebra.op(c))
    changed = True
    while changed:
        changed = False
        members = sorted(current)
        for sym, arity in algebra.signature.symbols:
            if arity == 0:
                continue
            for args in itertools.product(members, repeat=arity):
                budget.spend()
                v = algebra.op(sym, *args)
                if v not in current:
                    current.add(v)
                    changed = True
    return frozenset(current)


def is_subuniverse(algebra: FiniteAlgebra, subset: frozenset[int]) -> bool:
    for c in algebra.signature.constants:
        if algebra.op(c) not in subset:
            return False
    members = sorted(subset)
    for sym, arity in algebra.signature.symbols:
        if arity == 0:
            continue
        for args in itertools.product(members, repeat=arity):
            if algebra.op(sym, *args) not in subset:
                return False
    return True


def enumerate_subuniverses(
    algebra: FiniteAlgebra, budget: Budget | int | None = None
) -> list[frozenset[int]]:
    """All non-empty subuniverses containing the constants, smallest first.

    Computed by closing every subset of the carrier; fine at corpus sizes.
    """
    budget = as_budget(budget)
    budget.check(2**algebra.size)
    found: set[frozenset[int]] = set()
    elements = list(algebra.elements())
    for r in range(algebra.size + 1):
        for seed in itertools.combinations(elements, r):
            budget.spend()
            closed = subuniverse_generated(algebra, seed, budget)
            if closed:
                found.add(closed)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def induced_subalgebra(
    algebra: FiniteAlgebra, subuniverse: Iterable[int], name: str | None = None
) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """Restrict the tables to a subuniverse.

    Returns the subalgebra on a re-indexed carrier together with the inclusion
    map (sub index -> parent element), sorted ascending.
    """
    members = tuple(sorted(set(subuniverse)))
    if not members:
        raise InvalidSpec("a subalgebra needs a non-empty carrier")
    if not is_subuniverse(algebra, frozenset(members)):
        raise InvalidSpec(f"{algebra.describe(members)} is not a subuniverse of {algebra.name!r}")
    back = {e: i for i, e in enumerate(members)}
    tables = {}
    for sym, arity in algebra.signature.symbols:
        entries = []
        for args in itertools.product(members, repeat=arity):
            entries.append(back[algebra.op(sym, *args)])
        tables[sym] = entries
    labels = None
    if algebra.labels is not None:
        labels = [algebra.labels[e] for e in members]
    sub_name = name or f"{algebra.name}|{{{','.join(str(m) for m in members)}}}"
    return FiniteAlgebra.make(sub_name, len(members), algebra.signature, tables, labels), members


def quotient(
    algebra: FiniteAlgebra, partition: Sequence[int], name: str | None = None
) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """Quotient by a congruence given as a block-id array.

    Blocks are ordered by least member.  Raises NotACongruence when the tables
    are not well defined on representatives.
    """
    n = algebra.size
    if len(partition) != n:
        raise NotACongruence("partition length differs from carrier size")
    block_order: list[int] = []
    for e in range(n):
        if partition[e] not in block_order:
            block_order.append(partition[e])
    relabel = {b: i for i, b in enumerate(block_order)}
    proj = tuple(relabel[partition[e]] for e in range(n))
    nblocks = len(block_order)
    reps = [proj.index(b) for b in range(nblocks)]

    tables = {}
    for sym, arity in algebra.signature.symbols:
        entries = []
        for rep_args in itertools.product(reps, repeat=arity):
            entries.append(proj[algebra.op(sym, *rep_args)])
        tables[sym] = entries
    # well-definedness: every tuple must agree with its representative tuple
    for sym, arity in algebra.signature.symbols:
        for args in itertools.product(range(n), repeat=arity):
            rep_args = tuple(reps[proj[a]] for a in args)
            if proj[algebra.op(sym, *args)] != proj[algebra.op(sym, *rep_args)]:
                raise NotACongruence(
                    f"operation {sym!r} is not well defined on the blocks"
                )
    labels = None
    if algebra.labels is not None:
        blocks: dict[int, list[str]] = {}
        for e in range(n):
            blocks.setdefault(proj[e], []).append(algebra.labels[e])
        labels = ["[" + "|".join(blocks[b]) + "]" for b in range(nblocks)]
    qname = name or f"{algebra.name}/~"
    return FiniteAlgebra.make(qname, nblocks, algebra.signature, tables, labels), proj


def is_homomorphism(
    mapping: Sequence[int], dom: FiniteAlgebra, cod: FiniteAlgebra
) -> bool:
    if dom.signature != cod.signature:
        return False
    if len(mapping) != dom.size:
        return False
    if any(not (0 <= v < cod.size) for v in mapping):
        return False
    for sym, arity in dom.signature.symbols:
        for args in itertools.product(range(dom.size), repeat=arity):
            if mapping[dom.op(sym, *args)] != cod.op(sym, *(mapping[a] for a in args)):
                return False
    return True


def enumerate_homomorphisms(
    dom: FiniteAlgebra, cod: FiniteAlgebra, budget: Budget | int | None = None
) -> list[tuple[int, ...]]:
    """All homomorphisms dom -> cod in lexicographic order.

    Depth-first search assigning images of 0, 1, ... in turn; a partial map is
    pruned as soon as some fully-assigned operation instance disagrees.
    """
    budget = as_budget(budget)
    if dom.signature != cod.signature:
        raise InvalidSpec("homomorphisms need a shared signature")
    n = dom.size

    # for each element e, the op instances fully decided once 0..e are assigned
    instances_at: list[list[tuple[str, tuple[int, ...], int]]] = [[] for _ in range(n)]
    for sym, arity in dom.signature.symbols:
        for args in itertools.product(range(n), repeat=arity):
            value = dom.op(sym, *args)
            latest = max(args + (value,)) if args else value
            instances_at[latest].append((sym, args, value))

    out: list[tuple[int, ...]] = []
    image: list[int] = []

    def consistent(e: int) -> bool:
        for sym, args, value in instances_at[e]:
            if image[value] != cod.op(sym, *(image[a] for a in args)):
                return False
        return True

    def search(e: int) -> None:
        if e == n:
            out.append(tuple(image))
            return
        for v in range(cod.size):
            budget.spend()
            image.append(v)
            if consistent(e):
                search(e + 1)
            image.pop()

    search(0)
    return out
