"""Command-line front end.

Exit codes are the machine contract: 0 pass, 1 fail, 2 configuration error,
3 budget exceeded, 4 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import builtins as bi
from .algebras import Budget, FiniteAlgebra, enumerate_homomorphisms
from .checks import (
    INCONCLUSIVE,
    PASS,
    Testbed,
    Verdict,
    absolute_fep_check,
    check_edcf,
    compare_candidates,
    dually_brouwerian_check,
    factor_determined_check,
    fep_check,
    leibniz_probe,
    search_counterexample,
    smallest_relcong_check,
)
from .errors import FiltraError, SizeBudgetExceeded, UnknownExample, UnknownName
from .logics import all_filters, fg_trace, filters_certified
from .serialization import (
    algebra_from_json,
    candidate_from_json,
    class_from_json,
    logic_from_json,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_INCONCLUSIVE = 4


def _maybe_file(token: str):
    p = Path(token)
    if token.endswith(".json") and p.exists():
        with p.open() as fh:
            return json.load(fh)
    return None


def resolve_algebra(token: str) -> FiniteAlgebra:
    doc = _maybe_file(token)
    if doc is not None:
        return algebra_from_json(doc)
    return bi.algebra(token)


def resolve_logic(token: str):
    doc = _maybe_file(token)
    if doc is not None:
        return logic_from_json(doc, resolve_algebra)
    return bi.logic(token)


def resolve_class(token: str):
    doc = _maybe_file(token)
    if doc is not None:
        return class_from_json(doc, resolve_algebra)
    return bi.class_spec(token)


def resolve_candidate(token: str, algebra_for_signature: str | None = None):
    doc = _maybe_file(token)
    if doc is not None:
        if algebra_for_signature is None:
            raise UnknownName("candidate files need --algebra to supply the signature")
        sig = resolve_algebra(algebra_for_signature).signature
        return candidate_from_json(doc, sig)
    return bi.candidate(token)


def resolve_testbed(token: str) -> Testbed:
    return bi.testbed(token)


def parse_generators(algebra: FiniteAlgebra, text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    if text == "carrier":
        return list(range(algebra.size))
    return [algebra.element_index(tok.strip()) for tok in text.split(",")]


def _emit(payload: dict, fmt: str, text_lines: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=1))
    else:
        for line in text_lines:
            print(line)


def _verdict_exit(v: Verdict) -> int:
    if v.outcome == PASS:
        return EXIT_PASS
    if v.outcome == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_FAIL


def cmd_fg(args) -> int:
    algebra = resolve_algebra(args.algebra)
    logic = resolve_logic(args.logic)
    gens = parse_generators(algebra, args.gen)
    budget = Budget(args.budget)
    stages = fg_trace(algebra, gens, logic, budget)
    result = stages[-1]
    lines = []
    for i, stage in enumerate(stages[:-1]):
        lines.append(f"C_{i} = {algebra.describe(stage)}")
    lines.append(f"Fg = {algebra.describe(result)}")
    if not filters_certified(algebra, logic):
        lines.append("note: filter computation not certified exact at the current bound")
    payload = {
        "algebra": algebra.name,
        "generators": sorted(gens),
        "filter": sorted(result),
        "filter_labels": [algebra.label(e) for e in sorted(result)],
        "trace": [sorted(s) for s in stages],
        "certified": filters_certified(algebra, logic),
    }
    _emit(payload, args.format, lines)
    return EXIT_PASS


def cmd_check(args) -> int:
    budget = Budget(args.budget)
    name = args.checker
    if name == "edcf":
        logic = resolve_logic(args.logic)
        v = check_edcf(
            logic,
            resolve_testbed(args.testbed),
            resolve_candidate(args.candidate, args.algebra),
            args.variant,
            n_max=args.nmax,
            budget=budget,
        )
    elif name == "fdc":
        logic = resolve_logic(args.logic)
        gens = [resolve_algebra(tok) for tok in args.generators.split(",")]
        v = factor_determined_check(
            logic, Testbed(tuple(gens)), absolute=not args.relative,
            max_product_arity=args.arity, budget=budget,
        )
    elif name == "absfep":
        v = absolute_fep_check(resolve_logic(args.logic), resolve_testbed(args.testbed), budget=budget)
    elif name == "fep":
        v = fep_check(resolve_logic(args.logic), resolve_testbed(args.testbed), budget=budget)
    elif name == "brouwer":
        v = dually_brouwerian_check(resolve_logic(args.logic), resolve_algebra(args.algebra), budget=budget)
    elif name == "minrelcong":
        v = smallest_relcong_check(
            resolve_logic(args.logic), resolve_algebra(args.algebra),
            resolve_class(args.klass), arity_cap=args.arity, budget=budget,
        )
    elif name == "leibniz":
        v = leibniz_probe(resolve_logic(args.logic), resolve_testbed(args.testbed), mode=args.mode, budget=budget)
    elif name == "compare":
        v = compare_candidates(
            resolve_candidate(args.candidate, args.algebra),
            resolve_candidate(args.candidate2, args.algebra),
            resolve_testbed(args.testbed), budget=budget,
        )
    elif name == "search":
        gens = [resolve_algebra(tok) for tok in args.generators.split(",")] if args.generators else []
        kwargs = {}
        if args.property == "edcf":
            kwargs = {"candidate": resolve_candidate(args.candidate, args.algebra), "variant": args.variant}
        v = search_counterexample(
            resolve_logic(args.logic), args.property, gens,
            max_product_arity=args.arity, checker_kwargs=kwargs, budget=budget,
        )
    else:
        raise UnknownName(f"no checker {name!r}")
    lines = [f"checker: {v.checker}", f"outcome: {v.outcome}"]
    if v.witness:
        lines.append("witness: " + json.dumps(dict(v.witness)))
    for note in v.notes:
        lines.append(f"note: {note}")
    replay = _replay_command(args)
    lines.append(f"replay: {replay}")
    payload = v.to_json()
    payload["replay"] = replay
    _emit(payload, args.format, lines)
    return _verdict_exit(v)


def _replay_command(args) -> str:
    parts = ["filtra", "check", args.checker]
    for flag, attr in [
        ("--logic", "logic"), ("--algebra", "algebra"), ("--class", "klass"),
        ("--candidate", "candidate"), ("--candidate2", "candidate2"),
        ("--testbed", "testbed"), ("--generators", "generators"),
        ("--property", "property"),
    ]:
        value = getattr(args, attr, None)
        if value:
            parts.extend([flag, str(value)])
    parts.extend(["--variant", args.variant, "--mode", args.mode, "--arity", str(args.arity)])
    if args.nmax is not None:
        parts.extend(["--nmax", str(args.nmax)])
    if args.relative:
        parts.append("--relative")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# reproduce catalog


def _expect(results: list, label: str, verdict: Verdict, expected: str) -> None:
    results.append(
        {
            "step": label,
            "expected": expected,
            "got": verdict.outcome,
            "ok": verdict.outcome == expected,
            "verdict": verdict.to_json(),
        }
    )


def _reproduce_kleene_edcf(results):
    v = check_edcf(bi.logic("KL"), bi.testbed("k3-isp"), bi.candidate("kl-global"), "global")
    _expect(results, "kl-global passes on K3, K3^2 and subalgebras", v, PASS)


def _reproduce_lp_edcf(results):
    v = check_edcf(bi.logic("LP"), bi.testbed("k3-isp"), bi.candidate("lp-global"), "global")
    _expect(results, "lp-global passes on K3, K3^2 and subalgebras", v, PASS)


def _reproduce_pwk_local_edcf(results):
    bed = bi.testbed("wk3-isp")
    v = check_edcf(bi.logic("PWK"), bed, bi.candidate("pwk-local"), "local")
    _expect(results, "pwk-local passes on WK3, WK3^2 and subalgebras", v, PASS)
    v = absolute_fep_check(bi.logic("PWK"), bed)
    _expect(results, "filter extension from subalgebras holds on the same testbed", v, PASS)


def _reproduce_pwk_no_pedcf(results):
    wk3 = bi.algebra("WK3")
    v = factor_determined_check(
        bi.logic("PWK"), bi.testbed("wk3-isp"), absolute=True,
        pinned_factors=(wk3, wk3), pinned_generators=[(6,)],
    )
    _expect(results, "factor-determined filters fail on WK3 x WK3 at generator (half,0)", v, "fail")
    ok_witness = bool(v.witness) and v.witness.get("element_label") == "(1,0)"
    results.append(
        {
            "step": "witness element is (1,0)",
            "expected": "(1,0)",
            "got": (v.witness or {}).get("element_label"),
            "ok": ok_witness,
        }
    )
    from .algebras import direct_product

    prod = direct_product([wk3, wk3])
    published = tuple(
        2 if 2 in prod.to_tuple(e) else prod.to_tuple(e)[1] for e in range(9)
    )
    homs = enumerate_homomorphisms(prod.algebra, wk3)
    results.append(
        {
            "step": "the collapsing homomorphism WK3^2 -> WK3 is enumerated",
            "expected": "present",
            "got": "present" if published in homs else "absent",
            "ok": published in homs,
            "homomorphism": {
                prod.algebra.label(e): wk3.label(published[e]) for e in range(9)
            },
        }
    )


def _reproduce_box5_no_min(results):
    v = smallest_relcong_check(
        bi.logic("ONE"), bi.algebra("box5"), bi.class_spec("alpha12"),
        pinned_cells=[((2, 3), 4)],
    )
    _expect(results, "no least relative congruence witnesses b in Fg(a1,a2)", v, "fail")
    t1 = [[0, 1], [2, 4], [3]]
    t2 = [[0, 1], [2], [3, 4]]
    minimal = (v.witness or {}).get("minimal_congruences", [])
    ok = t1 in minimal and t2 in minimal
    results.append(
        {
            "step": "published incomparable pair among the minimal congruences",
            "expected": [t1, t2],
            "got": minimal,
            "ok": ok,
        }
    )
    meet_ok = (v.witness or {}).get("meet_blocks") == [[0, 1], [2], [3], [4]]
    results.append(
        {
            "step": "their meet collapses only {0,1}",
            "expected": [[0, 1], [2], [3], [4]],
            "got": (v.witness or {}).get("meet_blocks"),
            "ok": meet_ok,
        }
    )


def _reproduce_m3_not_brouwerian(results):
    v = dually_brouwerian_check(bi.logic("ORD"), bi.algebra("M3"))
    _expect(results, "no least complement filter on the modular lattice M3", v, "fail")
    v = dually_brouwerian_check(bi.logic("ORD"), bi.algebra("BOOL4"))
    _expect(results, "least complement filters exist on the Boolean 4-lattice", v, PASS)


def _reproduce_modal_local_only(results):
    v = check_edcf(bi.logic("KG"), bi.testbed("modal-chains"), bi.candidate("modal-local"), "local")
    _expect(results, "necessitation-bounded local family passes on chains of length <= 4", v, PASS)
    for k in range(4):
        fixture = bi.algebra(f"mchain{k + 2}")
        v = check_edcf(
            bi.logic("KG"), Testbed((fixture,)), bi.candidate(f"modal-global-k{k}"), "global"
        )
        _expect(results, f"fixed necessitation depth {k} fails on the {k + 2}-world chain", v, "fail")


def _reproduce_luk_local_only(results):
    v = check_edcf(bi.logic("LUK"), bi.testbed("mv-chains"), bi.candidate("luk-local-and"), "local")
    _expect(results, "bounded-power local family passes on L3, L4, L5", v, PASS)
    v = compare_candidates(
        bi.candidate("luk-local-and"), bi.candidate("luk-local-odot"), bi.testbed("mv-chains")
    )
    _expect(results, "lattice-meet fold and strong-conjunction fold are equivalent", v, PASS)
    for k in (1, 2, 3):
        fixture = bi.algebra(f"L{k + 2}")
        v = check_edcf(
            bi.logic("LUK"), Testbed((fixture,)), bi.candidate(f"luk-global-k{k}"), "global", n_max=1
        )
        _expect(results, f"fixed power {k} fails on the {k + 2}-element chain", v, "fail")


def _reproduce_kl_only_filter(results):
    k3 = bi.algebra("K3")
    families = [sorted(f.members) for f in all_filters(k3, bi.logic("KL"))]
    expected = [[2], [0, 1, 2]]
    results.append(
        {
            "step": "KL filters on K3 are exactly {1} and the carrier",
            "expected": expected,
            "got": families,
            "ok": families == expected and filters_certified(k3, bi.logic("KL")),
            "certified": filters_certified(k3, bi.logic("KL")),
        }
    )


CATALOG = {
    "kleene-edcf": _reproduce_kleene_edcf,
    "lp-edcf": _reproduce_lp_edcf,
    "pwk-local-edcf": _reproduce_pwk_local_edcf,
    "pwk-no-pedcf": _reproduce_pwk_no_pedcf,
    "box5-no-min": _reproduce_box5_no_min,
    "m3-not-brouwerian": _reproduce_m3_not_brouwerian,
    "modal-local-only": _reproduce_modal_local_only,
    "luk-local-only": _reproduce_luk_local_only,
    "kl-only-filter": _reproduce_kl_only_filter,
}


def cmd_reproduce(args) -> int:
    ids = list(CATALOG) if args.example == "all" else [args.example]
    for ex in ids:
        if ex not in CATALOG:
            raise UnknownExample(
                f"unknown example {ex!r}; catalog: {', '.join(sorted(CATALOG))}"
            )
    all_ok = True
    payload = []
    lines = []
    for ex in ids:
        results: list[dict] = []
        CATALOG[ex](results)
        ok = all(r["ok"] for r in results)
        all_ok = all_ok and ok
        payload.append({"example": ex, "ok": ok, "results": results})
        lines.append(f"[{'ok' if ok else 'MISMATCH'}] {ex}")
        for r in results:
            mark = "ok" if r["ok"] else "MISMATCH"
            lines.append(f"    [{mark}] {r['step']}: expected {r['expected']}, got {r['got']}")
            if not r["ok"]:
                lines.append(f"        detail: {json.dumps(r, default=str)}")
    _emit({"reproduce": payload, "ok": all_ok}, args.format, lines)
    return EXIT_PASS if all_ok else EXIT_FAIL


def cmd_list(args) -> int:
    kinds = {
        "algebras": bi.algebra_names,
        "logics": bi.logic_names,
        "classes": bi.class_names,
        "candidates": bi.candidate_names,
        "testbeds": bi.testbed_names,
        "examples": lambda: sorted(CATALOG),
    }
    if args.kind not in kinds:
        raise UnknownName(f"list expects one of {', '.join(sorted(kinds))}")
    names = kinds[args.kind]()
    _emit({args.kind: names}, args.format, names)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="filtra",
        description="Logical filters, congruences, and equational-definability checks on finite algebras.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--budget", type=int, default=10_000_000, help="elementary step budget")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized relabeling tests")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fg = sub.add_parser("fg", help="generate a filter and print the closure trace")
    p_fg.add_argument("--algebra", required=True)
    p_fg.add_argument("--logic", required=True)
    p_fg.add_argument("--gen", default="", help="comma-separated elements, '' or 'carrier'")
    p_fg.set_defaults(func=cmd_fg)

    p_check = sub.add_parser("check", help="run a property checker")
    p_check.add_argument(
        "checker",
        choices=("edcf", "fdc", "absfep", "fep", "brouwer", "minrelcong", "leibniz", "compare", "search"),
    )
    p_check.add_argument("--logic")
    p_check.add_argument("--algebra")
    p_check.add_argument("--class", dest="klass")
    p_check.add_argument("--candidate")
    p_check.add_argument("--candidate2")
    p_check.add_argument("--testbed")
    p_check.add_argument("--generators", help="comma-separated algebra names")
    p_check.add_argument("--variant", default="local", choices=("global", "local", "parametrized", "parametrized_local"))
    p_check.add_argument("--property", help="property name for search")
    p_check.add_argument("--mode", default="monotone", choices=("monotone", "injective"))
    p_check.add_argument("--arity", type=int, default=2)
    p_check.add_argument("--nmax", type=int, default=None)
    p_check.add_argument("--relative", action="store_true", help="factor check with base filters")
    p_check.set_defaults(func=cmd_check)

    p_rep = sub.add_parser("reproduce", help="replay a cataloged finite example")
    p_rep.add_argument("example")
    p_rep.set_defaults(func=cmd_reproduce)

    p_list = sub.add_parser("list", help="show built-in names")
    p_list.add_argument("kind")
    p_list.set_defaults(func=cmd_list)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeBudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UnknownName, UnknownExample) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FiltraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
