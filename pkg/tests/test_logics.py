import itertools

import pytest

from filtra import builtins as bi
from filtra.algebras import (
    Matrix,
    direct_product,
    enumerate_homomorphisms,
    enumerate_subuniverses,
    induced_subalgebra,
)
from filtra.congruences import Congruence, all_congruences, is_compatible
from filtra.errors import InvalidSpec
from filtra.logics import (
    MatrixDetermined,
    RulePresented,
    all_filters,
    fg,
    fg_relative,
    fg_trace,
    filters_certified,
    has_theorem,
    is_filter,
    is_filter_certain,
    make_filter,
    rule_valid_in_matrix,
)
from filtra.terms import Rule, parse_term


def rule(sig, premises, conclusion):
    return Rule(tuple(parse_term(p, sig) for p in premises), parse_term(conclusion, sig))


# --- rule validity ----------------------------------------------------------


def test_detachment_valid_in_kleene_matrix(k3):
    m = Matrix(k3, frozenset({2}))
    r = rule(k3.signature, ["x", "(and x (or (neg x) y))"], "y")
    assert rule_valid_in_matrix(r, m)


def test_identity_rule_always_valid(k3, wk3):
    for algebra, designated in [(k3, {2}), (wk3, {1, 2})]:
        m = Matrix(algebra, frozenset(designated))
        assert rule_valid_in_matrix(rule(algebra.signature, ["x"], "x"), m)


def test_negation_introduction_invalid(k3):
    m = Matrix(k3, frozenset({2}))
    r = rule(k3.signature, ["x"], "(neg x)")
    # oracle: sweep the valuations by hand
    broken = any(
        e in m.designated and k3.op("neg", e) not in m.designated for e in range(3)
    )
    assert broken
    assert not rule_valid_in_matrix(r, m)


# --- filterhood --------------------------------------------------------------


def test_pwk_filters_on_wk3(wk3, pwk):
    assert is_filter(wk3, {1, 2}, pwk)
    assert not is_filter(wk3, {1}, pwk)  # misses half = half | ~half
    assert is_filter(wk3, {0, 1, 2}, pwk)


def test_total_filter_for_every_logic(wk3, k3, pwk, kl):
    assert is_filter(wk3, range(3), pwk)
    assert is_filter(k3, range(3), kl)


def test_kleene_matrix_filters_exact(k3, kl):
    families = [sorted(f.members) for f in all_filters(k3, kl)]
    assert families == [[2], [0, 1, 2]]
    assert filters_certified(k3, kl)
    assert is_filter(k3, {2}, kl) and is_filter_certain(k3, {2}, kl)
    assert not is_filter(k3, {1, 2}, kl)


def test_lp_matrix_filters_exact(k3, lp):
    families = [sorted(f.members) for f in all_filters(k3, lp)]
    assert families == [[1, 2], [0, 1, 2]]
    assert filters_certified(k3, lp)


def test_pwk_filter_lattice_on_wk3(wk3, pwk):
    families = [sorted(f.members) for f in all_filters(wk3, pwk)]
    assert families == [[1, 2], [0, 1, 2]]


def test_logic_without_rules_accepts_all_subsets(box5, id_logic):
    assert len(all_filters(box5, id_logic)) == 2**box5.size


def test_axiom_logic_filters_contain_the_constant(box5, one_logic):
    families = [set(f.members) for f in all_filters(box5, one_logic)]
    assert all(1 in f for f in families)
    assert len(families) == 2 ** (box5.size - 1)


def test_make_filter_checks(wk3, pwk):
    make_filter(wk3, {1, 2}, pwk)
    with pytest.raises(InvalidSpec):
        make_filter(wk3, {1}, pwk)


# --- generation ---------------------------------------------------------------


def test_fg_of_carrier(wk3, pwk):
    assert fg(wk3, range(3), pwk).members == frozenset(range(3))


def test_fg_empty_pwk(wk3, pwk):
    assert sorted(fg(wk3, (), pwk).members) == [1, 2]


def test_fg_trace_on_mv_chain(luk):
    l4 = bi.algebra("L4")
    stages = fg_trace(l4, [2], luk)  # two thirds
    assert stages[0] == frozenset({2})
    assert stages[-1] == frozenset(range(4))
    # successive powers 2/3, 1/3, 0 enter along the iteration
    assert any(1 in s for s in stages)
    assert stages[-1] >= {0, 1, 2, 3}


def test_fg_is_a_closure_operator(wk3, k3, pwk, kl, box5, one_logic):
    cases = [(wk3, pwk), (k3, kl), (box5, one_logic)]
    for algebra, logic in cases:
        elements = list(range(algebra.size))
        subsets = [
            frozenset(c)
            for r in range(3)
            for c in itertools.combinations(elements, r)
        ]
        for x in subsets:
            closed = fg(algebra, x, logic).members
            assert x <= closed
            assert fg(algebra, closed, logic).members == closed
            for y in subsets:
                if x <= y:
                    assert closed <= fg(algebra, y, logic).members


def test_fg_equals_intersection_of_filters(wk3, k3, pwk, kl, lp, one_logic, box5):
    for algebra, logic in [(wk3, pwk), (k3, kl), (k3, lp), (box5, one_logic)]:
        families = [f.members for f in all_filters(algebra, logic)]
        for r in range(3):
            for xs in itertools.combinations(range(algebra.size), r):
                x = frozenset(xs)
                inter = frozenset(range(algebra.size))
                for fam in families:
                    if x <= fam:
                        inter &= fam
                assert fg(algebra, x, logic).members == inter


def test_rule_and_matrix_presentations_agree(box5, one_logic):
    # the axiom logic of the constant, matrix-determined by every model of it
    # on the same algebra: both presentations must produce identical filters
    matrices = tuple(
        Matrix(box5, frozenset({1}) | frozenset(extra))
        for r in range(box5.size)
        for extra in itertools.combinations([0, 2, 3, 4], r)
    )
    matrix_logic = MatrixDetermined(matrices, name="ONE-matrix")
    assert filters_certified(box5, matrix_logic)
    assert [f.members for f in all_filters(box5, matrix_logic)] == [
        f.members for f in all_filters(box5, one_logic)
    ]
    for r in range(3):
        for xs in itertools.combinations(range(box5.size), r):
            by_rules = fg(box5, frozenset(xs), one_logic).members
            by_matrices = fg(box5, frozenset(xs), matrix_logic).members
            assert by_rules == by_matrices


def test_theoremless_logic_generates_empty(wk3, id_logic):
    assert fg(wk3, (), id_logic).members == frozenset()
    assert has_theorem(wk3, id_logic) is False


def test_matrix_logic_theorem_detection(k3, kl, lp):
    assert has_theorem(k3, kl) is True
    assert has_theorem(k3, lp) is True


# --- homomorphic preimages and products --------------------------------------


def test_filters_pull_back_along_homomorphisms(wk3, pwk, wk3_sq):
    square = wk3_sq.algebra
    filters_on_wk3 = [f.members for f in all_filters(wk3, pwk)]
    for h in enumerate_homomorphisms(square, wk3):
        for fam in filters_on_wk3:
            preimage = frozenset(a for a in range(square.size) if h[a] in fam)
            assert is_filter(square, preimage, pwk)


def test_fg_on_products_within_factor_product(wk3, k3, pwk, kl):
    for base, logic in [(wk3, pwk), (k3, kl)]:
        prod = direct_product([base, base])
        for x in range(prod.algebra.size):
            on_product = fg(prod.algebra, {x}, logic).members
            coords = prod.to_tuple(x)
            factor_filters = [fg(base, {coords[i]}, logic).members for i in range(2)]
            boxed = {
                e
                for e in range(prod.algebra.size)
                if all(prod.to_tuple(e)[i] in factor_filters[i] for i in range(2))
            }
            assert on_product <= boxed


# --- relative generation ------------------------------------------------------


def test_fg_relative_identity(wk3, pwk):
    delta = Congruence.identity(3)
    for r in range(3):
        for xs in itertools.combinations(range(3), r):
            assert fg_relative(wk3, delta, xs, pwk).members == fg(wk3, frozenset(xs), pwk).members


def test_fg_relative_total(wk3, pwk, id_logic):
    nabla = Congruence.total(3)
    # with a theorem the one-element quotient pulls back to the carrier
    assert fg_relative(wk3, nabla, (), pwk).members == frozenset(range(3))
    # without theorems the empty filter pulls back to the empty set
    assert fg_relative(wk3, nabla, (), id_logic).members == frozenset()


def test_fg_relative_box5(box5, one_logic):
    theta1 = Congruence.from_blocks([[0, 1], [2, 4], [3]], 5)
    grown = fg_relative(box5, theta1, [2, 3], one_logic).members
    assert 4 in grown  # b shares a block with a1


def test_fg_relative_is_least_compatible_filter(box5, one_logic, wk3, pwk):
    for algebra, logic in [(box5, one_logic), (wk3, pwk)]:
        families = [f.members for f in all_filters(algebra, logic)]
        for theta in all_congruences(algebra):
            for r in range(3):
                for xs in itertools.combinations(range(algebra.size), r):
                    got = fg_relative(algebra, theta, xs, logic).members
                    compatible = [
                        fam
                        for fam in families
                        if frozenset(xs) <= fam and is_compatible(theta, fam)
                    ]
                    least = frozenset(range(algebra.size))
                    for fam in compatible:
                        least &= fam
                    assert got == least


def test_fg_relative_monotone_in_theta(box5, one_logic):
    chain = [
        Congruence.identity(5),
        Congruence.from_blocks([[0, 1], [2], [3], [4]], 5),
        Congruence.from_blocks([[0, 1], [2, 4], [3]], 5),
        Congruence.total(5),
    ]
    for small, big in zip(chain, chain[1:]):
        assert small.refines(big)
        for xs in [(), (2,), (2, 3)]:
            assert (
                fg_relative(box5, small, xs, one_logic).members
                <= fg_relative(box5, big, xs, one_logic).members
            )


# --- certification on the shipped testbeds ------------------------------------


def test_matrix_filters_certified_across_k3_family(k3, kl, lp):
    square = direct_product([k3, k3]).algebra
    targets = [k3, square]
    for sub in enumerate_subuniverses(k3):
        targets.append(induced_subalgebra(k3, sub)[0])
    for algebra in targets:
        assert filters_certified(algebra, kl), algebra.name
        assert filters_certified(algebra, lp), algebra.name


def test_kl_filters_on_the_square_are_the_projection_preimages(k3, kl):
    square = direct_product([k3, k3])
    families = {f.members for f in all_filters(square.algebra, kl)}
    top = frozenset(range(9))
    pi1 = frozenset(e for e in range(9) if square.to_tuple(e)[0] == 2)
    pi2 = frozenset(e for e in range(9) if square.to_tuple(e)[1] == 2)
    assert families == {top, pi1, pi2, pi1 & pi2}
