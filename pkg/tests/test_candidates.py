import pytest

from filtra import builtins as bi
from filtra.candidates import (
    EDCFCandidate,
    boxed,
    fold_terms,
    kl_global,
    leq,
    lp_global,
    luk_global,
    luk_local,
    modal_global,
    modal_local,
    power,
    pwk_local,
    xvars,
)
from filtra.errors import InvalidSpec
from filtra.terms import App, Equation, Var, format_term


def test_fold_shapes():
    xs = xvars(3)
    assert format_term(fold_terms("and", xs)) == "(and (and x1 x2) x3)"
    assert format_term(fold_terms("and", [], empty=App("1"))) == "1"
    with pytest.raises(InvalidSpec):
        fold_terms("and", [])


def test_leq_forms():
    a, b = Var("a"), Var("b")
    assert leq(a, b, "meet") == Equation(App("and", (a, b)), a)
    assert leq(a, b, "join") == Equation(App("or", (a, b)), b)
    with pytest.raises(InvalidSpec):
        leq(a, b, "sideways")


def test_power_and_boxed():
    x = Var("x")
    assert format_term(power("odot", x, 1)) == "x"
    assert format_term(power("odot", x, 3)) == "(odot x (odot x x))"
    assert format_term(boxed(x, 0)) == "x"
    assert format_term(boxed(x, 2)) == "(and x (box (and x (box x))))"


def test_kl_global_materialization():
    c = kl_global(2)
    assert c.n_max == 2
    assert len(c.family(0)) == 1 and len(c.family(2)) == 1
    eq = c.family(2)[0][0]
    assert format_term(eq.lhs) == "(or (and x1 x2) (or (or (neg x1) (neg x2)) y))"
    assert format_term(eq.rhs) == "(or (or (neg x1) (neg x2)) y)"
    # the empty meet falls back to the top constant
    eq0 = c.family(0)[0][0]
    assert format_term(eq0.lhs) == "(or 1 y)"


def test_lp_global_base_case():
    c = lp_global(1)
    eq0 = c.family(0)[0][0]
    # negation of y below y
    assert format_term(eq0.lhs) == "(or (neg y) y)"
    assert format_term(eq0.rhs) == "y"


def test_pwk_local_family_sizes():
    c = pwk_local(3)
    # one fixpoint equation plus one set per non-empty generator subset
    assert [len(c.family(n)) for n in range(4)] == [1, 2, 4, 8]
    got = {format_term(th[0].lhs) for th in c.family(2)[1:]}
    assert "(or x1 y)" in got
    assert "(or (neg (or (neg x1) (neg x2))) y)" in got


def test_luk_local_family_and_folds():
    c_and = luk_local("and", k_max=4, n_max=2)
    c_odot = luk_local("odot", k_max=4, n_max=2)
    assert len(c_and.family(1)) == 4
    assert format_term(c_and.family(2)[1][0].lhs) == "(or (odot (and x1 x2) (and x1 x2)) y)"
    assert format_term(c_odot.family(2)[0][0].lhs) == "(or (odot x1 x2) y)"


def test_modal_families():
    local = modal_local(k_max=4, n_max=2)
    assert len(local.family(1)) == 5  # necessitation depths 0..4
    g1 = modal_global(1, n_max=1)
    eq = g1.family(1)[0][0]
    assert format_term(eq.lhs) == "(or (and x1 (box x1)) y)"


def test_variant_shapes():
    assert kl_global(1).matches_variant("global")
    assert kl_global(1).matches_variant("local")
    assert pwk_local(1).matches_variant("local")
    assert not pwk_local(1).matches_variant("global")
    with pytest.raises(InvalidSpec):
        pwk_local(1).matches_variant("sideways")


def test_variable_convention_enforced():
    eq = Equation(Var("x2"), Var("y"))
    with pytest.raises(InvalidSpec):
        EDCFCandidate("bad", 1, ((), ((eq,),)))  # x2 outside x1..x1
    # element literals are allowed, resolved against labels at run time
    EDCFCandidate("literal", 0, (((Equation(Var("y"), Var("1")),),),))


def test_family_out_of_range():
    c = kl_global(1)
    with pytest.raises(InvalidSpec):
        c.family(2)


def test_parameter_validation():
    eq = Equation(Var("z1"), Var("y"))
    c = EDCFCandidate("param", 0, (((eq,),),), param_count=1)
    assert c.matches_variant("parametrized")
    assert not c.matches_variant("global")
    with pytest.raises(InvalidSpec):
        EDCFCandidate("param-bad", 0, (((Equation(Var("z2"), Var("y")),),),), param_count=1)
