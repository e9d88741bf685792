"""Shared fixtures and independent oracles.

The oracles here recompute expected values by brute force, independently of
the library's own algorithms: partitions are enumerated as restricted growth
strings, homomorphisms as raw function tables, and term forests by bounded
structural enumeration.
"""

import itertools

import pytest

from filtra import builtins as bi
from filtra.algebras import FiniteAlgebra, direct_product
from filtra.congruences import Congruence
from filtra.terms import App, Var


@pytest.fixture(scope="session")
def wk3():
    return bi.algebra("WK3")


@pytest.fixture(scope="session")
def k3():
    return bi.algebra("K3")


@pytest.fixture(scope="session")
def box5():
    return bi.algebra("box5")


@pytest.fixture(scope="session")
def m3():
    return bi.algebra("M3")


@pytest.fixture(scope="session")
def bool4():
    return bi.algebra("BOOL4")


@pytest.fixture(scope="session")
def wk3_sq(wk3):
    return direct_product([wk3, wk3])


@pytest.fixture(scope="session")
def k3_sq(k3):
    return direct_product([k3, k3])


@pytest.fixture(scope="session")
def pwk():
    return bi.logic("PWK")


@pytest.fixture(scope="session")
def kl():
    return bi.logic("KL")


@pytest.fixture(scope="session")
def lp():
    return bi.logic("LP")


@pytest.fixture(scope="session")
def one_logic():
    return bi.logic("ONE")


@pytest.fixture(scope="session")
def ord_logic():
    return bi.logic("ORD")


@pytest.fixture(scope="session")
def luk():
    return bi.logic("LUK")


@pytest.fixture(scope="session")
def kg():
    return bi.logic("KG")


@pytest.fixture(scope="session")
def id_logic():
    return bi.logic("ID")


# ---------------------------------------------------------------------------
# oracles


def all_partitions(n):
    """Every partition of {0..n-1} as a canonical block array (restricted
    growth strings)."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i, maxval):
        if i == n:
            yield tuple(rgs)
            return
        for v in range(maxval + 2):
            rgs[i] = v
            yield from rec(i + 1, max(maxval, v))

    yield from rec(1, 0)


def oracle_is_congruence(algebra: FiniteAlgebra, partition) -> bool:
    """Definition-level check: related tuples map to related values."""
    for sym, arity in algebra.signature.symbols:
        for args1 in itertools.product(range(algebra.size), repeat=arity):
            for args2 in itertools.product(range(algebra.size), repeat=arity):
                if all(partition[a] == partition[b] for a, b in zip(args1, args2)):
                    if partition[algebra.op(sym, *args1)] != partition[algebra.op(sym, *args2)]:
                        return False
    return True


def oracle_congruences(algebra: FiniteAlgebra) -> set[Congruence]:
    return {
        Congruence(p)
        for p in all_partitions(algebra.size)
        if oracle_is_congruence(algebra, p)
    }


def brute_homomorphisms(dom: FiniteAlgebra, cod: FiniteAlgebra):
    """All homomorphisms by sweeping every raw map (for tiny carriers)."""
    out = []
    for image in itertools.product(range(cod.size), repeat=dom.size):
        ok = True
        for sym, arity in dom.signature.symbols:
            for args in itertools.product(range(dom.size), repeat=arity):
                if image[dom.op(sym, *args)] != cod.op(sym, *(image[a] for a in args)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(image)
    return out


def terms_up_to_depth(signature, variables, depth):
    """All terms over the variables with nesting at most `depth`."""
    current = [Var(v) for v in variables] + [
        App(sym, ()) for sym, arity in signature.symbols if arity == 0
    ]
    seen = list(current)
    for _ in range(depth):
        new = []
        for sym, arity in signature.symbols:
            if arity == 0:
                continue
            for args in itertools.product(seen, repeat=arity):
                new.append(App(sym, args))
        seen = seen + new
        # bound the forest; enough variety for the structural properties
        if len(seen) > 4000:
            seen = seen[:4000]
            break
    return seen
