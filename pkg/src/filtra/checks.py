"""Property checkers over finite testbeds.

Every verdict is scoped to its inputs: "pass" means no violation was found on
this testbed, never a universal claim, while "fail" carries a witness that can
be replayed with the filter and equation primitives.  Checks whose filter
computations are not certified exact (see logics.filters_certified) degrade to
"inconclusive" rather than overclaim.

Sweeps are deterministic: testbed order, then generator count ascending, then
tuples lexicographically, then elements ascending.  The first witness found in
that order is the one reported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .algebras import (
    Budget,
    FiniteAlgebra,
    as_budget,
    direct_product,
    enumerate_homomorphisms,
    enumerate_subuniverses,
    eval_term,
    holds_equation,
    induced_subalgebra,
    quotient,
)
from .candidates import EDCFCandidate
from .classes import ClassSpec, k_congruences, theta_k
from .congruences import Congruence, leibniz_congruence
from .errors import InvalidSpec
from .logics import (
    LogicSpec,
    all_filters,
    fg,
    fg_certified,
    fg_relative,
)

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    outcome: str
    checker: str
    witness: Mapping | None = None
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out = {"outcome": self.outcome, "checker": self.checker}
        if self.witness is not None:
            out["witness"] = dict(self.witness)
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    @property
    def passed(self) -> bool:
        return self.outcome == PASS

    @property
    def failed(self) -> bool:
        return self.outcome == FAIL


@dataclass(frozen=True)
class Testbed:
    __test__ = False  # keep pytest from collecting this as a suite

    algebras: tuple[FiniteAlgebra, ...]
    provenance: tuple[str, ...] = ()
    class_spec: ClassSpec | None = None
    name: str = ""

    def __post_init__(self):
        if self.provenance and len(self.provenance) != len(self.algebras):
            raise InvalidSpec("provenance must be parallel to the algebra list")

    def __iter__(self):
        return iter(self.algebras)


def _isomorphic(a: FiniteAlgebra, b: FiniteAlgebra, budget: Budget) -> bool:
    """Bijective homomorphism search with injective pruning."""
    if a.size != b.size or a.signature != b.signature:
        return False
    n = a.size
    instances_at: list[list[tuple[str, tuple[int, ...], int]]] = [[] for _ in range(n)]
    for sym, arity in a.signature.symbols:
        for args in itertools.product(range(n), repeat=arity):
            value = a.op(sym, *args)
            latest = max(args + (value,)) if args else value
            instances_at[latest].append((sym, args, value))
    image: list[int] = []
    used = [False] * n

    def search(e: int) -> bool:
        if e == n:
            return True
        for v in range(n):
            if used[v]:
                continue
            budget.spend()
            image.append(v)
            used[v] = True
            ok = all(
                image[value] == b.op(sym, *(image[x] for x in args))
                for sym, args, value in instances_at[e]
            )
            if ok and search(e + 1):
                return True
            image.pop()
            used[v] = False
        return False

    return search(0)


def generate_testbed(
    generators: Sequence[FiniteAlgebra],
    max_product_arity: int = 1,
    include_subalgebras: bool = False,
    class_spec: ClassSpec | None = None,
    dedup: bool = True,
    budget: Budget | int | None = None,
    name: str = "",
) -> Testbed:
    """Generators, their products up to the arity bound, optionally all
    subalgebras, deduplicated up to isomorphism when sizes permit."""
    budget = as_budget(budget)
    algebras: list[FiniteAlgebra] = []
    provenance: list[str] = []

    def push(alg: FiniteAlgebra, source: str) -> None:
        if dedup:
            for seen in algebras:
                if seen.size == alg.size and seen.size <= 8 and _isomorphic(seen, alg, budget):
                    return
        algebras.append(alg)
        provenance.append(source)

    for g in generators:
        push(g, "generator")
    for r in range(2, max_product_arity + 1):
        for combo in itertools.combinations_with_replacement(generators, r):
            push(direct_product(list(combo), budget=budget).algebra, "product")
    if include_subalgebras:
        for alg in list(algebras):
            for sub in enumerate_subuniverses(alg, budget):
                if len(sub) == alg.size:
                    continue
                push(induced_subalgebra(alg, sub)[0], "subalgebra")
    return Testbed(tuple(algebras), tuple(provenance), class_spec, name)


# ---------------------------------------------------------------------------
# candidate satisfaction


def _satisfies_family(
    algebra: FiniteAlgebra,
    family: Sequence,
    xs: Sequence[int],
    b: int,
    param_count: int,
    budget: Budget,
) -> bool:
    """Existential over family members and parameter tuples."""
    base = {f"x{i + 1}": a for i, a in enumerate(xs)}
    base["y"] = b
    for theta in family:
        for params in itertools.product(range(algebra.size), repeat=param_count):
            budget.spend()
            v = dict(base)
            v.update({f"z{j + 1}": c for j, c in enumerate(params)})
            if all(holds_equation(eq, algebra, v) for eq in theta):
                return True
    return False


def _theta_subset_of(
    algebra: FiniteAlgebra,
    family: Sequence,
    xs: Sequence[int],
    b: int,
    param_count: int,
    theta: Congruence,
    budget: Budget,
) -> bool:
    """Existential form with equations read modulo a congruence."""
    base = {f"x{i + 1}": a for i, a in enumerate(xs)}
    base["y"] = b
    for eqs in family:
        for params in itertools.product(range(algebra.size), repeat=param_count):
            budget.spend()
            v = dict(base)
            v.update({f"z{j + 1}": c for j, c in enumerate(params)})
            if all(
                theta.same(eval_term(eq.lhs, algebra, v), eval_term(eq.rhs, algebra, v))
                for eq in eqs
            ):
                return True
    return False


def _labels(algebra: FiniteAlgebra, elems: Iterable[int]) -> list[str]:
    return [algebra.label(e) for e in elems]


def _uncertified(logic: LogicSpec, algebras: Iterable[FiniteAlgebra]) -> list[str]:
    return [a.name for a in algebras if not fg_certified(a, logic)]


def _note_uncertified(names: list[str]) -> tuple[str, ...]:
    if not names:
        return ()
    return (f"filter computations not certified exact on: {', '.join(names)}",)


def _resolve(outcome_fail: bool, witness, checker: str, uncertified: list[str]) -> Verdict:
    """Fold certification into the final verdict."""
    notes = _note_uncertified(uncertified)
    if outcome_fail:
        if uncertified and witness and witness.get("algebra") in uncertified:
            return Verdict(INCONCLUSIVE, checker, witness, notes + ("witness found on an uncertified algebra",))
        return Verdict(FAIL, checker, witness, notes)
    if uncertified:
        return Verdict(INCONCLUSIVE, checker, None, notes)
    return Verdict(PASS, checker)


# ---------------------------------------------------------------------------
# checkers


def check_edcf(
    logic: LogicSpec,
    testbed: Testbed,
    candidate: EDCFCandidate,
    variant: str = "local",
    n_max: int | None = None,
    budget: Budget | int | None = None,
) -> Verdict:
    """Compare filter membership with candidate satisfaction on every cell."""
    budget = as_budget(budget)
    if not candidate.matches_variant(variant):
        raise InvalidSpec(f"candidate {candidate.name!r} does not have the {variant} shape")
    top = candidate.n_max if n_max is None else min(n_max, candidate.n_max)
    uncertified = _uncertified(logic, testbed)
    for algebra in testbed:
        for n in range(top + 1):
            family = candidate.family(n)
            for xs in itertools.product(range(algebra.size), repeat=n):
                members = fg(algebra, frozenset(xs), logic, budget).members
                for b in range(algebra.size):
                    budget.spend()
                    in_fg = b in members
                    sat = _satisfies_family(algebra, family, xs, b, candidate.param_count, budget)
                    if in_fg != sat:
                        witness = {
                            "algebra": algebra.name,
                            "n": n,
                            "generators": list(xs),
                            "generator_labels": _labels(algebra, xs),
                            "element": b,
                            "element_label": algebra.label(b),
                            "in_fg": in_fg,
                            "satisfies_candidate": sat,
                            "candidate": candidate.name,
                        }
                        return _resolve(True, witness, "edcf", uncertified)
    return _resolve(False, None, "edcf", uncertified)


def check_edcf_theta_form(
    logic: LogicSpec,
    algebras: Sequence[FiniteAlgebra],
    class_spec: ClassSpec,
    candidate: EDCFCandidate,
    variant: str = "local",
    n_max: int | None = None,
    budget: Budget | int | None = None,
) -> Verdict:
    """Candidate equations tested for inclusion in the least relative
    congruence instead of outright satisfaction; algebras need not lie in the
    class."""
    budget = as_budget(budget)
    if not candidate.matches_variant(variant):
        raise InvalidSpec(f"candidate {candidate.name!r} does not have the {variant} shape")
    top = candidate.n_max if n_max is None else min(n_max, candidate.n_max)
    uncertified = _uncertified(logic, algebras)
    for algebra in algebras:
        theta = theta_k(algebra, class_spec, budget)
        for n in range(top + 1):
            family = candidate.family(n)
            for xs in itertools.product(range(algebra.size), repeat=n):
                members = fg(algebra, frozenset(xs), logic, budget).members
                for b in range(algebra.size):
                    budget.spend()
                    in_fg = b in members
                    sat = _theta_subset_of(
                        algebra, family, xs, b, candidate.param_count, theta, budget
                    )
                    if in_fg != sat:
                        witness = {
                            "algebra": algebra.name,
                            "n": n,
                            "generators": list(xs),
                            "generator_labels": _labels(algebra, xs),
                            "element": b,
                            "element_label": algebra.label(b),
                            "in_fg": in_fg,
                            "theta_blocks": theta.to_blocks_json(),
                            "satisfies_candidate_mod_theta": sat,
                            "candidate": candidate.name,
                        }
                        return _resolve(True, witness, "edcf-theta-form", uncertified)
    return _resolve(False, None, "edcf-theta-form", uncertified)


def compare_candidates(
    c1: EDCFCandidate,
    c2: EDCFCandidate,
    testbed: Testbed,
    n_max: int | None = None,
    budget: Budget | int | None = None,
) -> Verdict:
    """Mutual refinement: every member of one family is implied, across the
    testbed, by some member of the other, in both directions."""
    budget = as_budget(budget)
    top = min(c1.n_max, c2.n_max)
    if n_max is not None:
        top = min(top, n_max)

    def implied_on_testbed(first: EDCFCandidate, theta, second: EDCFCandidate, n: int):
        """Some member of second implied by theta everywhere; else a witness."""
        for other in second.family(n):
            ok = True
            for algebra in testbed:
                for xs in itertools.product(range(algebra.size), repeat=n):
                    for b in range(algebra.size):
                        budget.spend()
                        if _satisfies_family(algebra, [theta], xs, b, first.param_count, budget) and not _satisfies_family(
                            algebra, [other], xs, b, second.param_count, budget
                        ):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                return None
        # no match: report the last sweep position as a witness anchor
        return {"unmatched_candidate": first.name, "n": n}

    for n in range(top + 1):
        for i, theta in enumerate(c1.family(n)):
            w = implied_on_testbed(c1, theta, c2, n)
            if w is not None:
                w["direction"] = f"{c1.name} -> {c2.name}"
                w["member_index"] = i
                return Verdict(FAIL, "compare-candidates", w)
        for i, theta in enumerate(c2.family(n)):
            w = implied_on_testbed(c2, theta, c1, n)
            if w is not None:
                w["direction"] = f"{c2.name} -> {c1.name}"
                w["member_index"] = i
                return Verdict(FAIL, "compare-candidates", w)
    return Verdict(PASS, "compare-candidates")


def absolute_fep_check(
    logic: LogicSpec,
    testbed: Testbed,
    arity_cap: int = 3,
    budget: Budget | int | None = None,
) -> Verdict:
    """Generated filters on subalgebras against their traces from above."""
    budget = as_budget(budget)
    uncertified: list[str] = []
    for big in testbed:
        if not fg_certified(big, logic):
            uncertified.append(big.name)
        for sub in enumerate_subuniverses(big, budget):
            if len(sub) == big.size:
                continue
            small, inclusion = induced_subalgebra(big, sub)
            pair_certified = fg_certified(big, logic) and fg_certified(small, logic)
            if not fg_certified(small, logic):
                uncertified.append(small.name)
            for n in range(arity_cap + 1):
                for xs in itertools.product(range(small.size), repeat=n):
                    budget.spend()
                    inner = fg(small, frozenset(xs), logic, budget).members
                    outer = fg(
                        big, frozenset(inclusion[x] for x in xs), logic, budget
                    ).members
                    trace = frozenset(
                        i for i in range(small.size) if inclusion[i] in outer
                    )
                    if inner != trace:
                        witness = {
                            "algebra": big.name,
                            "subalgebra": sorted(sub),
                            "subalgebra_labels": _labels(big, sub),
                            "generators": [inclusion[x] for x in xs],
                            "generator_labels": _labels(big, (inclusion[x] for x in xs)),
                            "fg_in_subalgebra": sorted(inclusion[i] for i in inner),
                            "trace_from_extension": sorted(inclusion[i] for i in trace),
                        }
                        if pair_certified:
                            return Verdict(FAIL, "absolute-fep", witness)
                        return Verdict(
                            INCONCLUSIVE, "absolute-fep", witness,
                            ("witness involves an uncertified filter computation",),
                        )
    return _resolve(False, None, "absolute-fep", uncertified)


def fep_check(
    logic: LogicSpec,
    testbed: Testbed,
    budget: Budget | int | None = None,
) -> Verdict:
    """Filter extension over submatrices: every filter of the subalgebra above
    the trace of a base filter extends to a filter above the base filter."""
    budget = as_budget(budget)
    uncertified = []
    for big in testbed:
        if not fg_certified(big, logic):
            uncertified.append(big.name)
        big_filters = [f.members for f in all_filters(big, logic, budget)]
        for sub in enumerate_subuniverses(big, budget):
            if len(sub) == big.size:
                continue
            small, inclusion = induced_subalgebra(big, sub)
            if not fg_certified(small, logic):
                uncertified.append(small.name)
            small_filters = [f.members for f in all_filters(small, logic, budget)]
            for base in big_filters:
                trace = frozenset(i for i in range(small.size) if inclusion[i] in base)
                if trace not in small_filters:
                    continue  # the submatrix is then not a model pair for this base
                for ff in small_filters:
                    budget.spend()
                    if not (trace <= ff):
                        continue
                    extended = any(
                        base <= gg
                        and frozenset(i for i in range(small.size) if inclusion[i] in gg) == ff
                        for gg in big_filters
                    )
                    if not extended:
                        witness = {
                            "algebra": big.name,
                            "subalgebra": sorted(sub),
                            "base_filter": sorted(base),
                            "filter_without_extension": sorted(inclusion[i] for i in ff),
                        }
                        return _resolve(True, witness, "fep", uncertified)
    return _resolve(False, None, "fep", uncertified)


def factor_determined_check(
    logic: LogicSpec,
    testbed: Testbed,
    absolute: bool = True,
    max_product_arity: int = 2,
    generator_cap: int = 2,
    pinned_factors: Sequence[FiniteAlgebra] | None = None,
    pinned_generators: Sequence[Sequence[int]] | None = None,
    budget: Budget | int | None = None,
) -> Verdict:
    """Generated filters on finite products against products of factorwise
    generated filters; a necessary condition only, since only small index sets
    are swept."""
    budget = as_budget(budget)
    if pinned_factors is not None:
        factor_lists = [tuple(pinned_factors)]
    else:
        factor_lists = [
            combo
            for r in range(2, max_product_arity + 1)
            for combo in itertools.combinations_with_replacement(tuple(testbed), r)
        ]
    uncertified: list[str] = []
    for factors in factor_lists:
        prod = direct_product(list(factors), budget=budget)
        algebra = prod.algebra
        names = _uncertified(logic, (algebra,) + tuple(factors))
        uncertified.extend(n for n in names if n not in uncertified)
        if pinned_generators is not None:
            gens_sweep = [tuple(g) for g in pinned_generators]
        else:
            gens_sweep = [
                xs
                for n in range(generator_cap + 1)
                for xs in itertools.product(range(algebra.size), repeat=n)
            ]
        base_choices = [None]
        if not absolute:
            per_factor = [
                [f.members for f in all_filters(fac, logic, budget)] for fac in factors
            ]
            base_choices = list(itertools.product(*per_factor))
        for bases in base_choices:
            for xs in gens_sweep:
                budget.spend()
                coords = [prod.to_tuple(x) for x in xs]
                factor_fgs = []
                for i, fac in enumerate(factors):
                    seed = {c[i] for c in coords}
                    if bases is not None:
                        seed |= bases[i]
                    factor_fgs.append(fg(fac, frozenset(seed), logic, budget).members)
                seed_product = frozenset(xs)
                if bases is not None:
                    seed_product = seed_product | frozenset(
                        e
                        for e in range(algebra.size)
                        if all(prod.to_tuple(e)[i] in bases[i] for i in range(len(factors)))
                    )
                on_product = fg(algebra, seed_product, logic, budget).members
                boxed = frozenset(
                    e
                    for e in range(algebra.size)
                    if all(prod.to_tuple(e)[i] in factor_fgs[i] for i in range(len(factors)))
                )
                if on_product != boxed:
                    missing = sorted(boxed - on_product) or sorted(on_product - boxed)
                    witness = {
                        "algebra": algebra.name,
                        "factors": [f.name for f in factors],
                        "generators": list(xs),
                        "generator_labels": _labels(algebra, xs),
                        "element": missing[0],
                        "element_label": algebra.label(missing[0]),
                        "side": "product_of_factor_filters_minus_fg"
                        if boxed - on_product
                        else "fg_minus_product_of_factor_filters",
                    }
                    if bases is not None:
                        witness["base_filters"] = [sorted(b) for b in bases]
                    return _resolve(True, witness, "factor-determined", uncertified)
    return _resolve(False, None, "factor-determined", uncertified)


@lru_cache(maxsize=None)
def _homs_cached(dom: FiniteAlgebra, cod: FiniteAlgebra) -> tuple[tuple[int, ...], ...]:
    return tuple(enumerate_homomorphisms(dom, cod))


def test_algebra_check(
    logic: LogicSpec,
    testbed: Testbed,
    test_algebra: FiniteAlgebra,
    p_elements: Sequence[int],
    q_element: int,
    budget: Budget | int | None = None,
) -> Verdict:
    """Whether homomorphic images of the test elements characterize membership
    in generated filters across the testbed."""
    budget = as_budget(budget)
    n = len(p_elements)
    uncertified = _uncertified(logic, (test_algebra,) + tuple(testbed))
    if q_element not in fg(test_algebra, frozenset(p_elements), logic, budget).members:
        witness = {
            "algebra": test_algebra.name,
            "reason": "q outside the filter generated by the test elements",
            "p": list(p_elements),
            "q": q_element,
        }
        return _resolve(True, witness, "test-algebra", uncertified)
    for algebra in testbed:
        homs = _homs_cached(test_algebra, algebra)
        for xs in itertools.product(range(algebra.size), repeat=n):
            members = fg(algebra, frozenset(xs), logic, budget).members
            for b in sorted(members):
                budget.spend()
                matched = any(
                    all(h[p] == a for p, a in zip(p_elements, xs)) and h[q_element] == b
                    for h in homs
                )
                if not matched:
                    witness = {
                        "algebra": algebra.name,
                        "generators": list(xs),
                        "generator_labels": _labels(algebra, xs),
                        "element": b,
                        "element_label": algebra.label(b),
                        "reason": "no homomorphism maps the test elements onto this cell",
                    }
                    return _resolve(True, witness, "test-algebra", uncertified)
    return _resolve(False, None, "test-algebra", uncertified)


def smallest_relcong_check(
    logic: LogicSpec,
    algebra: FiniteAlgebra,
    class_spec: ClassSpec,
    arity_cap: int = 3,
    pinned_cells: Sequence[tuple[Sequence[int], int]] | None = None,
    budget: Budget | int | None = None,
) -> Verdict:
    """For each cell, the relative congruences putting the element into the
    relatively generated filter must have a least member."""
    budget = as_budget(budget)
    relative = list(k_congruences(algebra, class_spec, budget))
    if pinned_cells is not None:
        cells = [(tuple(xs), b) for xs, b in pinned_cells]
    else:
        cells = [
            (xs, b)
            for n in range(arity_cap + 1)
            for xs in itertools.product(range(algebra.size), repeat=n)
            for b in range(algebra.size)
        ]
    uncertified: set[str] = set()
    for theta in relative:
        q, _ = quotient(algebra, theta.partition)
        if not fg_certified(q, logic):
            uncertified.add(q.name)
    for xs, b in cells:
        hits = []
        for theta in relative:
            budget.spend()
            if b in fg_relative(algebra, theta, xs, logic, budget).members:
                hits.append(theta)
        if not hits:
            continue
        meet = hits[0]
        for theta in hits[1:]:
            meet = meet.meet(theta)
        if meet not in hits:
            minimal = [
                t for t in hits if not any(o != t and o.refines(t) for o in hits)
            ]
            witness = {
                "algebra": algebra.name,
                "generators": list(xs),
                "generator_labels": _labels(algebra, xs),
                "element": b,
                "element_label": algebra.label(b),
                "minimal_congruences": [t.to_blocks_json() for t in minimal],
                "meet_blocks": meet.to_blocks_json(),
            }
            return _resolve(True, witness, "smallest-relative-congruence", sorted(uncertified))
    return _resolve(False, None, "smallest-relative-congruence", sorted(uncertified))


def dually_brouwerian_check(
    logic: LogicSpec,
    algebra: FiniteAlgebra,
    budget: Budget | int | None = None,
) -> Verdict:
    """On a finite algebra every filter is compact: for each pair (F, G) the
    filters H with G inside the join of F and H must have a least member."""
    budget = as_budget(budget)
    uncertified = _uncertified(logic, [algebra])
    families = [f.members for f in all_filters(algebra, logic, budget)]
    for fm in families:
        for gm in families:
            budget.spend()
            candidates = [
                hm for hm in families if gm <= fg(algebra, fm | hm, logic, budget).members
            ]
            least = [h for h in candidates if all(h <= o for o in candidates)]
            if candidates and not least:
                minimal = [
                    h for h in candidates if not any(o < h for o in candidates)
                ]
                witness = {
                    "algebra": algebra.name,
                    "filter_f": sorted(fm),
                    "filter_g": sorted(gm),
                    "minimal_h": [sorted(h) for h in minimal],
                }
                return _resolve(True, witness, "dually-brouwerian", uncertified)
    return _resolve(False, None, "dually-brouwerian", uncertified)


def leibniz_probe(
    logic: LogicSpec,
    testbed: Testbed,
    mode: str = "monotone",
    budget: Budget | int | None = None,
) -> Verdict:
    """Refuter for order properties of the largest compatible congruence over
    the filters of each testbed algebra; a pass is not a proof."""
    budget = as_budget(budget)
    if mode not in ("monotone", "injective"):
        raise InvalidSpec(f"unknown probe mode {mode!r}")
    uncertified = _uncertified(logic, testbed)
    for algebra in testbed:
        families = [f.members for f in all_filters(algebra, logic, budget)]
        omegas = {fm: leibniz_congruence(algebra, fm, budget) for fm in families}
        for fm in families:
            for gm in families:
                budget.spend()
                if mode == "monotone":
                    if fm <= gm and not omegas[fm].refines(omegas[gm]):
                        witness = {
                            "algebra": algebra.name,
                            "filter_f": sorted(fm),
                            "filter_g": sorted(gm),
                            "omega_f": omegas[fm].to_blocks_json(),
                            "omega_g": omegas[gm].to_blocks_json(),
                        }
                        return _resolve(True, witness, "leibniz-monotone", uncertified)
                else:
                    if fm < gm and omegas[fm] == omegas[gm]:
                        witness = {
                            "algebra": algebra.name,
                            "filter_f": sorted(fm),
                            "filter_g": sorted(gm),
                            "omega_blocks": omegas[fm].to_blocks_json(),
                        }
                        return _resolve(True, witness, "leibniz-injective", uncertified)
    return _resolve(False, None, f"leibniz-{mode}", uncertified)


CHECKERS = {
    "edcf": check_edcf,
    "fdc": factor_determined_check,
    "absfep": absolute_fep_check,
    "fep": fep_check,
    "brouwer": dually_brouwerian_check,
    "minrelcong": smallest_relcong_check,
    "testalg": test_algebra_check,
    "leibniz": leibniz_probe,
    "compare": compare_candidates,
}


def search_counterexample(
    logic: LogicSpec,
    property_name: str,
    generators: Sequence[FiniteAlgebra],
    max_product_arity: int = 2,
    include_subalgebras: bool = True,
    checker_kwargs: Mapping | None = None,
    budget: Budget | int | None = None,
) -> Verdict:
    """Grow a testbed until the chosen checker fails, or give up."""
    budget = as_budget(budget)
    if not generators:
        return Verdict(INCONCLUSIVE, "search", notes=("empty generator set",))
    kwargs = dict(checker_kwargs or {})
    searchable = ("fdc", "edcf", "absfep", "fep", "brouwer", "leibniz")
    if property_name not in searchable:
        raise InvalidSpec(f"no searchable property {property_name!r}")
    for arity in range(1, max_product_arity + 1):
        if property_name == "fdc":
            # products are formed inside the checker; grow its arity instead
            bed = generate_testbed(
                generators, 1, include_subalgebras, budget=budget,
                name=f"search-arity-{arity}",
            )
            verdict = factor_determined_check(
                logic, bed, max_product_arity=arity, budget=budget, **kwargs
            )
        else:
            bed = generate_testbed(
                generators, arity, include_subalgebras, budget=budget,
                name=f"search-arity-{arity}",
            )
            if property_name == "edcf":
                verdict = check_edcf(logic, bed, budget=budget, **kwargs)
            elif property_name == "absfep":
                verdict = absolute_fep_check(logic, bed, budget=budget, **kwargs)
            elif property_name == "fep":
                verdict = fep_check(logic, bed, budget=budget, **kwargs)
            elif property_name == "brouwer":
                for algebra in bed:
                    verdict = dually_brouwerian_check(logic, algebra, budget=budget, **kwargs)
                    if verdict.failed:
                        break
            else:
                verdict = leibniz_probe(logic, bed, budget=budget, **kwargs)
        if verdict.failed:
            return Verdict(
                FAIL, f"search/{property_name}", verdict.witness,
                verdict.notes + (f"found at product arity {arity}",),
            )
    return Verdict(INCONCLUSIVE, f"search/{property_name}", notes=("budget exhausted without a counterexample",))
