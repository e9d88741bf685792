"""Congruences of finite algebras: generation, enumeration, and the Leibniz
congruence of a designated subset.

A congruence is stored canonically as a block-id array whose ids appear in
first-occurrence order, so equality of partitions is equality of tuples and
blocks listed by id are automatically sorted by least member.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebras import Budget, FiniteAlgebra, as_budget
from .errors import NotACongruence, SizeBudgetExceeded


def _canonical(partition: Sequence[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    out = []
    for b in partition:
        if b not in relabel:
            relabel[b] = len(relabel)
        out.append(relabel[b])
    return tuple(out)


@dataclass(frozen=True)
class Congruence:
    partition: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "partition", _canonical(self.partition))

    @classmethod
    def identity(cls, size: int) -> "Congruence":
        return cls(tuple(range(size)))

    @classmethod
    def total(cls, size: int) -> "Congruence":
        return cls((0,) * size)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], size: int) -> "Congruence":
        partition = [-1] * size
        for i, block in enumerate(blocks):
            for e in block:
                if partition[e] != -1:
                    raise NotACongruence(f"element {e} listed in two blocks")
                partition[e] = i
        if any(b == -1 for b in partition):
            raise NotACongruence("blocks do not cover the carrier")
        return cls(tuple(partition))

    @property
    def size(self) -> int:
        return len(self.partition)

    @property
    def num_blocks(self) -> int:
        return max(self.partition) + 1 if self.partition else 0

    def same(self, a: int, b: int) -> bool:
        return self.partition[a] == self.partition[b]

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for e, b in enumerate(self.partition):
            out[b].append(e)
        return out

    def pairs(self) -> list[tuple[int, int]]:
        """A generating set of pairs: consecutive members of each block."""
        out = []
        for block in self.blocks():
            for a, b in zip(block, block[1:]):
                out.append((a, b))
        return out

    def meet(self, other: "Congruence") -> "Congruence":
        pairs = {}
        out = []
        for key in zip(self.partition, other.partition):
            if key not in pairs:
                pairs[key] = len(pairs)
            out.append(pairs[key])
        return Congruence(tuple(out))

    def refines(self, other: "Congruence") -> bool:
        """True if every block of self sits inside a block of other."""
        seen: dict[int, int] = {}
        for e in range(self.size):
            mine, theirs = self.partition[e], other.partition[e]
            if mine in seen:
                if seen[mine] != theirs:
                    return False
            else:
                seen[mine] = theirs
        return True

    def __le__(self, other: "Congruence") -> bool:
        return self.refines(other)

    def is_identity(self) -> bool:
        return self.num_blocks == self.size

    def is_total(self) -> bool:
        return self.num_blocks <= 1

    def to_blocks_json(self) -> list[list[int]]:
        return self.blocks()


@dataclass(frozen=True)
class CongruenceSet:
    congruences: tuple[Congruence, ...]
    closed_under_meet: bool = True

    def __iter__(self):
        return iter(self.congruences)

    def __len__(self):
        return len(self.congruences)

    def __contains__(self, theta: Congruence) -> bool:
        return theta in self.congruences


def is_congruence(algebra: FiniteAlgebra, theta: Congruence) -> bool:
    """Exhaustive check of the substitution property."""
    if theta.size != algebra.size:
        return False
    part = theta.partition
    for sym, arity in algebra.signature.symbols:
        if arity == 0:
            continue
        for args in itertools.product(range(algebra.size), repeat=arity):
            for pos in range(arity):
                a = args[pos]
                for b in range(a + 1, algebra.size):
                    if part[a] != part[b]:
                        continue
                    other = args[:pos] + (b,) + args[pos + 1 :]
                    if part[algebra.op(sym, *args)] != part[algebra.op(sym, *other)]:
                        return False
    return True


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def cg_generated(
    algebra: FiniteAlgebra,
    pairs: Iterable[tuple[int, int]],
    budget: Budget | int | None = None,
) -> Congruence:
    """Least congruence containing the pairs.

    Union-find seeded with the pairs; whenever two elements merge, every
    operation instance differing only in that argument is merged as well,
    to fixpoint.
    """
    budget = as_budget(budget)
    n = algebra.size
    uf = _UnionFind(n)
    worklist = [p for p in pairs if uf.union(*p)]
    unary_contexts = []
    for sym, arity in algebra.signature.symbols:
        if arity == 0:
            continue
        for pos in range(arity):
            for rest in itertools.product(range(n), repeat=arity - 1):
                unary_contexts.append((sym, pos, rest))
    while worklist:
        a, b = worklist.pop()
        for sym, pos, rest in unary_contexts:
            budget.spend()
            args_a = rest[:pos] + (a,) + rest[pos:]
            args_b = rest[:pos] + (b,) + rest[pos:]
            va, vb = algebra.op(sym, *args_a), algebra.op(sym, *args_b)
            if uf.union(va, vb):
                worklist.append((va, vb))
    return Congruence(tuple(uf.find(e) for e in range(n)))


def join_congruences(
    algebra: FiniteAlgebra, t1: Congruence, t2: Congruence, budget: Budget | int | None = None
) -> Congruence:
    return cg_generated(algebra, t1.pairs() + t2.pairs(), budget)


def all_congruences(
    algebra: FiniteAlgebra, budget: Budget | int | None = None, size_cap: int = 12
) -> CongruenceSet:
    """The whole congruence lattice: principal congruences closed under joins.

    Every congruence is the join of the principal congruences below it, so the
    join closure of the principal ones plus the identity is complete.
    """
    budget = as_budget(budget)
    if algebra.size > size_cap:
        raise SizeBudgetExceeded(
            f"congruence enumeration capped at carrier size {size_cap}"
        )
    found: set[Congruence] = {Congruence.identity(algebra.size)}
    principals = set()
    for a in range(algebra.size):
        for b in range(a + 1, algebra.size):
            principals.add(cg_generated(algebra, [(a, b)], budget))
    found |= principals
    frontier = list(principals)
    while frontier:
        theta = frontier.pop()
        for other in list(found):
            budget.spend()
            joined = join_congruences(algebra, theta, other, budget)
            if joined not in found:
                found.add(joined)
                frontier.append(joined)
    # deterministic order: finer first, then lexicographic on the block array
    ordered = sorted(found, key=lambda t: (-t.num_blocks, t.partition))
    return CongruenceSet(tuple(ordered), closed_under_meet=True)


def is_compatible(theta: Congruence, subset: Iterable[int]) -> bool:
    """True iff the subset is a union of blocks."""
    members = set(subset)
    marked = {theta.partition[e] for e in members}
    return all((theta.partition[e] in marked) == (e in members) for e in range(theta.size))


@dataclass(frozen=True)
class UnaryPolynomialClone:
    """Unary maps obtained from the identity by plugging into one argument of
    a basic operation, all other arguments frozen at constants."""

    functions: frozenset[tuple[int, ...]]

    def __iter__(self):
        return iter(sorted(self.functions))

    def __len__(self):
        return len(self.functions)


def unary_polynomials(
    algebra: FiniteAlgebra, budget: Budget | int | None = None
) -> UnaryPolynomialClone:
    budget = as_budget(budget)
    n = algebra.size
    identity = tuple(range(n))
    found: set[tuple[int, ...]] = {identity}
    frontier = [identity]
    while frontier:
        p = frontier.pop()
        for sym, arity in algebra.signature.symbols:
            if arity == 0:
                continue
            for pos in range(arity):
                for rest in itertools.product(range(n), repeat=arity - 1):
                    budget.spend()
                    q = tuple(
                        algebra.op(sym, *(rest[:pos] + (p[x],) + rest[pos:]))
                        for x in range(n)
                    )
                    if q not in found:
                        found.add(q)
                        frontier.append(q)
    return UnaryPolynomialClone(frozenset(found))


def leibniz_congruence(
    algebra: FiniteAlgebra, subset: Iterable[int], budget: Budget | int | None = None
) -> Congruence:
    """Largest congruence compatible with the subset.

    Two elements are related iff no unary polynomial maps exactly one of them
    into the subset.  Chaining single-argument replacements shows the relation
    is a congruence, and any congruence compatible with the subset is forced
    below it.
    """
    budget = as_budget(budget)
    members = frozenset(subset)
    clone = unary_polynomials(algebra, budget)
    profiles: dict[tuple[bool, ...], list[int]] = {}
    polys = sorted(clone.functions)
    for e in range(algebra.size):
        profile = tuple((p[e] in members) for p in polys)
        profiles.setdefault(profile, []).append(e)
    partition = [0] * algebra.size
    for i, (_, block) in enumerate(sorted(profiles.items(), key=lambda kv: kv[1][0])):
        for e in block:
            partition[e] = i
    return Congruence(tuple(partition))
