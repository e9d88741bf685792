import itertools

import pytest

from conftest import brute_homomorphisms, terms_up_to_depth

from filtra import builtins as bi
from filtra.algebras import (
    direct_product,
    enumerate_homomorphisms,
    enumerate_subuniverses,
    eval_term,
    holds_equation,
    holds_universally,
    induced_subalgebra,
    is_homomorphism,
    quotient,
    subuniverse_generated,
    trivial_algebra,
)
from filtra.congruences import Congruence
from filtra.errors import (
    ArityMismatch,
    InvalidSpec,
    NotACongruence,
    SizeBudgetExceeded,
    UnboundVariable,
)
from filtra.terms import Equation, Signature, parse_equation, parse_term


# --- evaluation ------------------------------------------------------------


def test_eval_negation_fixpoint(wk3):
    # the middle element is its own negation
    t = parse_term("(neg half)", wk3.signature)
    assert wk3.label(eval_term(t, wk3, {})) == "half"


def test_eval_variable_case(k3):
    t = parse_term("x1", k3.signature)
    for e in range(k3.size):
        assert eval_term(t, k3, {"x1": e}) == e


def test_eval_join_of_labels(wk3):
    # join in the chain 0 < 1 < half
    t = parse_term("(or 0 1)", wk3.signature)
    assert wk3.label(eval_term(t, wk3, {})) == "1"
    t = parse_term("(or 1 half)", wk3.signature)
    assert wk3.label(eval_term(t, wk3, {})) == "half"


def test_eval_unbound_variable(wk3):
    with pytest.raises(UnboundVariable):
        eval_term(parse_term("zz", wk3.signature), wk3, {})


def test_eval_is_deterministic(wk3):
    t = parse_term("(or x1 (neg x2))", wk3.signature)
    v = {"x1": 2, "x2": 0}
    assert eval_term(t, wk3, v) == eval_term(t, wk3, v)


def test_op_arity_mismatch(wk3):
    with pytest.raises(ArityMismatch):
        wk3.op("neg", 0, 1)


# --- equations -------------------------------------------------------------


def test_excluded_middle_is_its_own_fixpoint(wk3):
    # x | ~x equals (x | ~x) | ~(x | ~x) across the whole algebra
    eq = parse_equation("(or x (neg x))", "(or (or x (neg x)) (neg (or x (neg x))))", wk3.signature)
    assert holds_universally(eq, wk3)


def test_reflexivity_universal(k3):
    assert holds_universally(parse_equation("x", "x", k3.signature), k3)


def test_negation_not_identity_on_k3(k3):
    eq = parse_equation("(neg x)", "x", k3.signature)
    # oracle: sweep the three valuations directly
    expected = all(
        eval_term(eq.lhs, k3, {"x": e}) == eval_term(eq.rhs, k3, {"x": e})
        for e in range(3)
    )
    assert expected is False
    assert holds_universally(eq, k3) is False
    assert not holds_equation(eq, k3, {"x": 0})


# --- products --------------------------------------------------------------


def test_product_componentwise_negation(wk3):
    prod = direct_product([wk3, wk3])
    assert prod.algebra.size == 9
    e = prod.from_tuple((2, 0))  # (half, 0)
    neg = prod.algebra.op("neg", e)
    assert prod.to_tuple(neg) == (2, 1)  # (half, 1)


def test_singleton_product_is_the_factor(k3):
    prod = direct_product([k3])
    assert prod.algebra.size == k3.size
    for sym, table in k3.tables:
        assert prod.algebra.table(sym) == table


def test_empty_product_is_trivial(k3):
    prod = direct_product([], signature=k3.signature)
    assert prod.algebra.size == 1


def test_product_projections_commute_with_evaluation(wk3, k3):
    # projection of the product evaluation equals factorwise evaluation,
    # for a bounded forest of terms
    for base in (wk3, k3):
        prod = direct_product([base, base])
        terms = terms_up_to_depth(base.signature, ["x1", "x2"], 2)[:400]
        pairs = [(0, 1), (2, 0), (1, 2)]
        for t in terms:
            for v1, v2 in pairs:
                joint = eval_term(
                    t, prod.algebra,
                    {"x1": prod.from_tuple((v1, v1)), "x2": prod.from_tuple((v2, v2))},
                )
                for i in range(2):
                    assert prod.to_tuple(joint)[i] == eval_term(t, base, {"x1": v1, "x2": v2})


def test_product_budget():
    big = bi.algebra("mchain4")
    with pytest.raises(SizeBudgetExceeded):
        direct_product([big, big, big], budget=1000)


# --- subuniverses ----------------------------------------------------------


def test_subuniverse_closed_set_is_fixed(k3):
    assert subuniverse_generated(k3, {0, 2}) == {0, 2}


def test_subuniverse_of_carrier(k3):
    assert subuniverse_generated(k3, range(k3.size)) == frozenset(range(k3.size))


def test_subuniverse_empty_seed(wk3, k3):
    # no constants: the empty set is closed; with constants they appear
    assert subuniverse_generated(wk3, ()) == frozenset()
    assert subuniverse_generated(k3, ()) == {0, 2}


def test_subuniverse_generated_is_a_closure_operator(wk3, k3, bool4):
    for algebra in (wk3, k3, bool4, bi.algebra("box5")):
        elements = list(range(algebra.size))
        subsets = [
            frozenset(c) for r in range(algebra.size + 1) for c in itertools.combinations(elements, r)
        ]
        for x in subsets:
            cx = subuniverse_generated(algebra, x)
            assert x <= cx
            assert subuniverse_generated(algebra, cx) == cx  # idempotent
        for x in subsets[:16]:
            for y in subsets[:16]:
                if x <= y:
                    assert subuniverse_generated(algebra, x) <= subuniverse_generated(algebra, y)


def test_enumerate_subuniverses_wk3(wk3):
    subs = enumerate_subuniverses(wk3)
    as_sets = [set(s) for s in subs]
    assert {2} in as_sets  # the infectious element alone
    assert {0, 1} in as_sets
    assert {0, 1, 2} in as_sets
    assert len(subs) == 3


def test_induced_subalgebra_requires_closure(k3):
    with pytest.raises(InvalidSpec):
        induced_subalgebra(k3, {1})  # misses the constants
    sub, incl = induced_subalgebra(k3, {0, 2})
    assert sub.size == 2 and incl == (0, 2)


# --- quotients -------------------------------------------------------------


def test_quotient_by_identity(k3):
    q, proj = quotient(k3, list(range(k3.size)))
    assert q.size == k3.size
    assert list(proj) == list(range(k3.size))
    for sym, table in k3.tables:
        assert q.table(sym) == table


def test_quotient_by_total(k3):
    q, proj = quotient(k3, [0] * k3.size)
    assert q.size == 1
    assert set(proj) == {0}


def test_quotient_box5_collapses_all_box_values(box5):
    theta = Congruence.from_blocks([[0, 1], [2, 4], [3]], 5)
    q, proj = quotient(box5, theta.partition)
    assert q.size == 3
    block01 = proj[0]
    assert proj[1] == block01
    for x, y in itertools.product(range(3), repeat=2):
        assert q.op("box1", x, y) == block01
    for args in itertools.product(range(3), repeat=3):
        assert q.op("box2", *args) == block01


def test_quotient_rejects_non_congruence(k3):
    # merging 0 with half only is not compatible with negation
    with pytest.raises(NotACongruence):
        quotient(k3, [0, 0, 1])


def test_quotient_commutes_with_tables(wk3, box5):
    for algebra in (wk3, box5):
        from filtra.congruences import all_congruences

        for theta in all_congruences(algebra):
            q, proj = quotient(algebra, theta.partition)
            for sym, arity in algebra.signature.symbols:
                for args in itertools.product(range(algebra.size), repeat=arity):
                    assert proj[algebra.op(sym, *args)] == q.op(sym, *(proj[a] for a in args))


# --- homomorphisms ---------------------------------------------------------


def test_published_collapse_map_is_a_homomorphism(wk3, wk3_sq):
    # half absorbs, otherwise the second coordinate decides
    mapping = tuple(
        2 if 2 in wk3_sq.to_tuple(e) else wk3_sq.to_tuple(e)[1] for e in range(9)
    )
    assert is_homomorphism(mapping, wk3_sq.algebra, wk3)
    assert mapping in enumerate_homomorphisms(wk3_sq.algebra, wk3)


def test_identity_is_a_homomorphism(k3):
    assert is_homomorphism(tuple(range(k3.size)), k3, k3)


def test_constant_map_fails_on_constants(k3):
    assert not is_homomorphism((0, 0, 0), k3, k3)


def test_enumeration_matches_brute_force(wk3, k3):
    for dom, cod in [(wk3, wk3), (k3, k3), (wk3, bi.algebra("WK3"))]:
        assert enumerate_homomorphisms(dom, cod) == brute_homomorphisms(dom, cod)


def test_enumeration_is_lexicographic(wk3):
    homs = enumerate_homomorphisms(wk3, wk3)
    assert homs == sorted(homs)


def test_trivial_algebra_accepts_everything(k3):
    t = trivial_algebra(k3.signature)
    assert t.size == 1
    assert enumerate_homomorphisms(k3, t) == [(0, 0, 0)]
