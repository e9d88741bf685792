"""Decidable membership in classes of algebras and relative congruences.

Two kinds of class description are supported: a finite axiomatic presentation
by equations and quasiequations, and the quasivariety generated by finitely
many finite algebras.  For the latter, a finite algebra belongs iff every pair
of distinct elements is separated by a homomorphism into some generator, which
characterizes embeddability into a product of generators; at finite scale
ultraproducts contribute nothing further.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .algebras import (
    Budget,
    FiniteAlgebra,
    as_budget,
    enumerate_homomorphisms,
    holds_equation,
    holds_universally,
    quotient,
)
from .congruences import Congruence, CongruenceSet, all_congruences
from .errors import EmptyRelativeCongruenceSet, InvalidSpec
from .terms import Equation, equation_variables


@dataclass(frozen=True)
class Quasiequation:
    antecedents: tuple[Equation, ...]
    consequent: Equation

    def variables(self) -> tuple[str, ...]:
        out: list[str] = []
        for eq in self.antecedents + (self.consequent,):
            for v in equation_variables(eq):
                if v not in out:
                    out.append(v)
        return tuple(out)


@dataclass(frozen=True)
class Axiomatic:
    """The class of all algebras satisfying the listed (quasi)equations."""

    equations: tuple[Equation, ...] = ()
    quasiequations: tuple[Quasiequation, ...] = ()
    name: str = ""


@dataclass(frozen=True)
class GeneratedQuasivariety:
    """The quasivariety generated by finitely many finite algebras."""

    generators: tuple[FiniteAlgebra, ...]
    name: str = ""

    def __post_init__(self):
        if not self.generators:
            raise InvalidSpec("a generated quasivariety needs at least one generator")
        sig = self.generators[0].signature
        if any(g.signature != sig for g in self.generators):
            raise InvalidSpec("generators must share a signature")


ClassSpec = Axiomatic | GeneratedQuasivariety


def _holds_quasiequation(
    q: Quasiequation, algebra: FiniteAlgebra, budget: Budget
) -> bool:
    labels = set(algebra.labels or ())
    variables = tuple(v for v in q.variables() if v not in labels)
    budget.check(algebra.size ** len(variables))
    for values in itertools.product(algebra.elements(), repeat=len(variables)):
        budget.spend()
        v = dict(zip(variables, values))
        if all(holds_equation(eq, algebra, v) for eq in q.antecedents):
            if not holds_equation(q.consequent, algebra, v):
                return False
    return True


@lru_cache(maxsize=None)
def _all_homomorphisms(dom: FiniteAlgebra, cod: FiniteAlgebra) -> tuple[tuple[int, ...], ...]:
    return tuple(enumerate_homomorphisms(dom, cod))


def member(
    algebra: FiniteAlgebra, spec: ClassSpec, budget: Budget | int | None = None
) -> bool:
    budget = as_budget(budget)
    if isinstance(spec, Axiomatic):
        for eq in spec.equations:
            if not holds_universally(eq, algebra, budget):
                return False
        for q in spec.quasiequations:
            if not _holds_quasiequation(q, algebra, budget):
                return False
        return True
    for g in spec.generators:
        if g.signature != algebra.signature:
            raise InvalidSpec("membership test across different signatures")
    # separating-homomorphism criterion; homs are enumerated once per generator
    hom_sets = [_all_homomorphisms(algebra, g) for g in spec.generators]
    for a in range(algebra.size):
        for b in range(a + 1, algebra.size):
            budget.spend()
            if not any(h[a] != h[b] for homs in hom_sets for h in homs):
                return False
    return True


def k_congruences(
    algebra: FiniteAlgebra, spec: ClassSpec, budget: Budget | int | None = None
) -> CongruenceSet:
    """Congruences whose quotient lies in the class."""
    budget = as_budget(budget)
    keep = []
    for theta in all_congruences(algebra, budget):
        q, _ = quotient(algebra, theta.partition)
        if member(q, spec, budget):
            keep.append(theta)
    return CongruenceSet(tuple(keep), closed_under_meet=True)


def theta_k(
    algebra: FiniteAlgebra, spec: ClassSpec, budget: Budget | int | None = None
) -> Congruence:
    """The least congruence with quotient in the class."""
    relative = k_congruences(algebra, spec, budget)
    if not len(relative):
        raise EmptyRelativeCongruenceSet(
            f"no congruence of {algebra.name!r} has its quotient in the class"
        )
    out = None
    for theta in relative:
        out = theta if out is None else out.meet(theta)
    return out


def cg_k(
    algebra: FiniteAlgebra,
    spec: ClassSpec,
    pairs,
    budget: Budget | int | None = None,
) -> Congruence:
    """Least relative congruence containing the pairs."""
    relative = k_congruences(algebra, spec, budget)
    candidates = [
        theta for theta in relative if all(theta.same(a, b) for a, b in pairs)
    ]
    if not candidates:
        raise EmptyRelativeCongruenceSet(
            f"no relative congruence of {algebra.name!r} contains the given pairs"
        )
    out = candidates[0]
    for theta in candidates[1:]:
        out = out.meet(theta)
    return out
