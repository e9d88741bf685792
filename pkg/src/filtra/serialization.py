"""JSON codecs for algebras, logics, classes, candidates, and congruences.

Document shapes:

algebra   {"name", "size", "element_labels"?, "signature": [{"name","arity"}...],
           "operations": {symbol: flat row-major table}}
logic     {"kind": "rules", "signature": <algebra name|null>,
           "rules": [{"premises": [...], "conclusion": "..."}]}
        | {"kind": "matrices", "matrices": [{"algebra": "K3", "designated": [2]}],
           "variable_bound": 3}
class     {"kind": "axioms", "equations": [["lhs","rhs"]...],
           "quasi": [{"if": [["l","r"]...], "then": ["l","r"]}...]}
        | {"kind": "generators", "algebras": ["name"...]}
candidate {"variant", "n_max", "param_count"?, "families": {"0": [[[lhs,rhs]...]...], ...},
           "template"?: {"fold": "and", "leq": "meet"|"join",
                         "empty": "<term>", "meet_symbol"?, "join_symbol"?}}
congruence: list of blocks sorted by least member, e.g. [[0,1],[2,4],[3]].

Candidate term strings may use the atom ``@fold`` for the fold of x1..xn under
the template's fold symbol (the template's ``empty`` term at n = 0), and
equations may be written as ["<=", lhs, rhs] to expand through the template's
order convention.
"""

from __future__ import annotations

from typing import Callable, Mapping

from .algebras import FiniteAlgebra, Matrix
from .candidates import EDCFCandidate, fold_terms
from .classes import Axiomatic, ClassSpec, GeneratedQuasivariety, Quasiequation
from .congruences import Congruence
from .errors import InvalidSpec
from .logics import LogicSpec, MatrixDetermined, RulePresented
from .terms import App, Equation, Rule, Signature, Term, Var, format_term, parse_term

Resolver = Callable[[str], FiniteAlgebra]


def signature_from_json(entries) -> Signature:
    return Signature(tuple((e["name"], int(e["arity"])) for e in entries))


def signature_to_json(sig: Signature) -> list[dict]:
    return [{"name": name, "arity": arity} for name, arity in sig.symbols]


def algebra_from_json(doc: Mapping) -> FiniteAlgebra:
    sig = signature_from_json(doc["signature"])
    return FiniteAlgebra.make(
        doc["name"], int(doc["size"]), sig, doc["operations"], doc.get("element_labels")
    )


def algebra_to_json(algebra: FiniteAlgebra) -> dict:
    doc = {
        "name": algebra.name,
        "size": algebra.size,
        "signature": signature_to_json(algebra.signature),
        "operations": {sym: list(table) for sym, table in algebra.tables},
    }
    if algebra.labels is not None:
        doc["element_labels"] = list(algebra.labels)
    return doc


def logic_from_json(doc: Mapping, resolve: Resolver) -> LogicSpec:
    kind = doc.get("kind")
    name = doc.get("name", "")
    if kind == "rules":
        sig_ref = doc.get("signature")
        if sig_ref is None:
            if doc["rules"]:
                raise InvalidSpec(f"logic {name!r}: rules need a signature reference")
            return RulePresented((), name=name)
        sig = resolve(sig_ref).signature
        rules = tuple(
            Rule(
                tuple(parse_term(p, sig) for p in r["premises"]),
                parse_term(r["conclusion"], sig),
            )
            for r in doc["rules"]
        )
        return RulePresented(rules, name=name)
    if kind == "matrices":
        matrices = tuple(
            Matrix(resolve(m["algebra"]), frozenset(int(d) for d in m["designated"]))
            for m in doc["matrices"]
        )
        return MatrixDetermined(matrices, doc.get("variable_bound"), name=name)
    raise InvalidSpec(f"logic {name!r}: kind must be 'rules' or 'matrices'")


def logic_to_json(logic: LogicSpec) -> dict:
    if isinstance(logic, RulePresented):
        return {
            "name": logic.name,
            "kind": "rules",
            "rules": [
                {
                    "premises": [format_term(p) for p in r.premises],
                    "conclusion": format_term(r.conclusion),
                }
                for r in logic.rules
            ],
        }
    doc = {
        "name": logic.name,
        "kind": "matrices",
        "matrices": [
            {"algebra": m.algebra.name, "designated": sorted(m.designated)}
            for m in logic.matrices
        ],
    }
    if logic.variable_bound is not None:
        doc["variable_bound"] = logic.variable_bound
    return doc


def class_from_json(doc: Mapping, resolve: Resolver) -> ClassSpec:
    kind = doc.get("kind")
    name = doc.get("name", "")
    if kind == "generators":
        return GeneratedQuasivariety(tuple(resolve(n) for n in doc["algebras"]), name=name)
    if kind == "axioms":
        sig_ref = doc.get("signature")
        if sig_ref is None:
            if doc.get("equations") or doc.get("quasi"):
                raise InvalidSpec(f"class {name!r}: axioms need a signature reference")
            return Axiomatic(name=name)
        sig = resolve(sig_ref).signature
        equations = tuple(
            Equation(parse_term(l, sig), parse_term(r, sig)) for l, r in doc.get("equations", [])
        )
        quasis = tuple(
            Quasiequation(
                tuple(Equation(parse_term(l, sig), parse_term(r, sig)) for l, r in q["if"]),
                Equation(parse_term(q["then"][0], sig), parse_term(q["then"][1], sig)),
            )
            for q in doc.get("quasi", [])
        )
        return Axiomatic(equations, quasis, name=name)
    raise InvalidSpec(f"class {name!r}: kind must be 'axioms' or 'generators'")


def _expand_candidate_term(text: str, sig: Signature, n: int, template: Mapping | None) -> Term:
    if template and "@fold" in text:
        fold_sym = template.get("fold")
        if fold_sym is None:
            raise InvalidSpec("term uses @fold but the template declares no fold symbol")
        empty = template.get("empty")
        if n == 0 and empty is None:
            raise InvalidSpec("@fold at n = 0 needs an 'empty' base term in the template")
        xs = [Var(f"x{i}") for i in range(1, n + 1)]
        folded = fold_terms(fold_sym, xs, empty=parse_term(empty, sig) if empty else None)
        text = text.replace("@fold", format_term(folded))
    return parse_term(text, sig)


def candidate_from_json(doc: Mapping, sig: Signature, name: str | None = None) -> EDCFCandidate:
    template = doc.get("template")
    n_max = int(doc["n_max"])
    param_count = int(doc.get("param_count", 0))
    families = []
    for n in range(n_max + 1):
        raw_family = doc["families"].get(str(n))
        if raw_family is None:
            raise InvalidSpec(f"candidate families missing arity {n}")
        family = []
        for raw_theta in raw_family:
            eqs = []
            for raw_eq in raw_theta:
                if len(raw_eq) == 3 and raw_eq[0] == "<=":
                    form = (template or {}).get("leq", "join")
                    meet_sym = (template or {}).get("meet_symbol", "and")
                    join_sym = (template or {}).get("join_symbol", "or")
                    lhs = _expand_candidate_term(raw_eq[1], sig, n, template)
                    rhs = _expand_candidate_term(raw_eq[2], sig, n, template)
                    if form == "meet":
                        eqs.append(Equation(App(meet_sym, (lhs, rhs)), lhs))
                    else:
                        eqs.append(Equation(App(join_sym, (lhs, rhs)), rhs))
                elif len(raw_eq) == 2:
                    eqs.append(
                        Equation(
                            _expand_candidate_term(raw_eq[0], sig, n, template),
                            _expand_candidate_term(raw_eq[1], sig, n, template),
                        )
                    )
                else:
                    raise InvalidSpec(f"equation entry {raw_eq!r} not understood")
            family.append(tuple(eqs))
        families.append(tuple(family))
    return EDCFCandidate(name or doc.get("name", "candidate"), n_max, tuple(families), param_count)


def candidate_to_json(candidate: EDCFCandidate, variant: str = "local") -> dict:
    return {
        "name": candidate.name,
        "variant": variant,
        "n_max": candidate.n_max,
        "param_count": candidate.param_count,
        "families": {
            str(n): [
                [[format_term(eq.lhs), format_term(eq.rhs)] for eq in theta]
                for theta in candidate.family(n)
            ]
            for n in range(candidate.n_max + 1)
        },
    }


def congruence_to_json(theta: Congruence) -> list[list[int]]:
    return theta.to_blocks_json()


def congruence_from_json(blocks, size: int) -> Congruence:
    return Congruence.from_blocks(blocks, size)
