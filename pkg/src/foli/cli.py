"""Batch command-line front end.

Subcommands: parse, eval, models, entails, intension, verify.  Everything
on stdout is deterministic for fixed inputs and seed (timing goes to
stderr); --json mirrors each report as one JSON object.

Exit codes: 0 success, 1 a check or entailment failed, 2 concrete-syntax
error, 3 semantic error (bad model data, guard exceeded, ...).

Consequence here is relative to one fixed finite signature and domain -
this tool enumerates interpretations, it does not do proof search, so a
reported entailment means "true in every interpretation of this size".
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
import time
from pathlib import Path

from .errors import FoliError, ModelFormatError, ParseError
from .intensional import (
    Extensionalization,
    concept_of,
    diamond_intension,
    intension,
    intensionally_equal,
    intensionally_equivalent,
    render_concept,
)
from .kripke import assignment_model, holds_at
from .parser import (
    Theory,
    format_interpretation,
    load_json_data,
    parse_formula,
    parse_interpretation,
    parse_signature,
    parse_theory,
    render,
)
from .relalg import Relation, format_relation, format_tuple
from .report import Report
from .syntax import Signature, free_var_tuple, variables
from .tarski import compile_to_algebra, evaluate_algebra, extension
from .verify import SUITES, domain_of_size
from .worlds import find_countermodel, guard_limit, models_of

SEMANTICS = ("tarski", "algebra", "kripke", "intensional")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        code = args.handler(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ModelFormatError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return 3
    except FoliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    finally:
        elapsed = time.perf_counter() - started
        print(f"[foli] {elapsed:.3f}s", file=sys.stderr)
    return code


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="foli",
        description="finite-model semantics workbench for first-order logic",
        epilog=(
            "entailment and intension commands quantify over every "
            "interpretation of one finite signature and domain; they are "
            "exact at that size and silent about larger domains"
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON on stdout")
    common.add_argument("--seed", type=int, default=7, help="PRNG seed")
    common.add_argument(
        "--domain-size", type=int, default=2, help="domain size when not declared"
    )
    common.add_argument(
        "--guard",
        type=int,
        default=None,
        help="enumeration guard (default 10^6; env FOLI_GUARD overrides)",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="echo the canonical core form")
    p.add_argument("--sig", help=".sig file with declarations")
    p.add_argument("formula")
    p.set_defaults(handler=cmd_parse)

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula in a model")
    p.add_argument("model", help=".model file (JSON)")
    p.add_argument("formula")
    p.add_argument("--sig", help=".sig file; otherwise inferred from the model")
    p.add_argument("--semantics", choices=SEMANTICS, default="tarski")
    p.add_argument(
        "--check-all",
        action="store_true",
        help="run all four semantics and require agreement",
    )
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("models", parents=[common], help="enumerate models of a theory")
    p.add_argument("sig", help=".sig file")
    p.add_argument("gamma", help=".fol theory file")
    p.add_argument("--dump", metavar="DIR", help="write each model as a .model file")
    p.set_defaults(handler=cmd_models)

    p = sub.add_parser("entails", parents=[common], help="finite-domain consequence")
    p.add_argument("sig", help=".sig file")
    p.add_argument("gamma", help=".fol theory file")
    p.add_argument("formula")
    p.set_defaults(handler=cmd_entails)

    p = sub.add_parser(
        "intension", parents=[common], help="per-world extension table"
    )
    p.add_argument("sig", help=".sig file")
    p.add_argument("gamma", help=".fol theory file")
    p.add_argument("formula")
    p.add_argument(
        "--diamond", action="store_true", help="print the world-union instead"
    )
    p.add_argument("--equal", metavar="FORMULA2", help="decide intensional equality")
    p.add_argument(
        "--equiv", metavar="FORMULA2", help="decide intensional equivalence"
    )
    p.set_defaults(handler=cmd_intension)

    p = sub.add_parser("verify", parents=[common], help="run a theorem suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--formulas", type=int, default=None)
    p.add_argument("--models", type=int, default=None)
    p.add_argument("--sentences", type=int, default=None)
    p.add_argument("--triples", type=int, default=None)
    p.add_argument("--relations", type=int, default=None)
    p.set_defaults(handler=cmd_verify)
    return top


def _load_signature(path: str | None) -> Signature:
    if path is None:
        return Signature.empty()
    return parse_signature(Path(path).read_text(encoding="utf-8"))


def _load_theory(sig_path: str, gamma_path: str) -> Theory:
    sig = _load_signature(sig_path)
    return parse_theory(Path(gamma_path).read_text(encoding="utf-8"), sig)


def _theory_domain(theory: Theory, args) -> tuple:
    if theory.domain is not None:
        if args.domain_size and len(theory.domain) != args.domain_size:
            raise ModelFormatError(
                f"theory declares a domain of size {len(theory.domain)}, "
                f"--domain-size says {args.domain_size}"
            )
        return theory.domain
    return domain_of_size(args.domain_size)


def _emit(args, report: Report) -> None:
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print(report.to_text())


# ---------------------------------------------------------------------------
# subcommands


def cmd_parse(args) -> int:
    sig = _load_signature(args.sig)
    phi = parse_formula(args.formula, sig)
    if args.json:
        print(
            json.dumps(
                {
                    "command": "parse",
                    "input": args.formula,
                    "canonical": render(phi),
                    "free_variables": list(free_var_tuple(phi)),
                },
                sort_keys=True,
            )
        )
    else:
        print(render(phi))
    return 0


def infer_signature(data: dict) -> Signature:
    """Guess declarations from model data; empty extensions need a .sig."""
    predicates: dict[str, int] = {}
    functions: dict[str, int] = {}
    for name, value in data.items():
        if name == "domain":
            continue
        if isinstance(value, str):
            functions[name] = 0
        elif isinstance(value, list):
            if not value:
                raise ModelFormatError(
                    f"cannot infer the arity of empty extension {name!r}; "
                    f"pass --sig"
                )
            predicates[name] = len(value[0])
        elif isinstance(value, dict):
            depth = 0
            node = value
            while isinstance(node, dict):
                depth += 1
                node = next(iter(node.values()))
            functions[name] = depth
        else:
            raise ModelFormatError(f"cannot interpret entry {name!r}")
    return Signature(predicates, functions)


def _load_model(args):
    data = load_json_data(Path(args.model).read_text(encoding="utf-8"))
    sig = (
        _load_signature(args.sig)
        if getattr(args, "sig", None)
        else infer_signature(data)
    )
    return parse_interpretation(data, sig), sig


def _eval_one(world, phi, semantics: str) -> Relation:
    if semantics == "tarski":
        return extension(world, phi)
    if semantics == "algebra":
        return evaluate_algebra(compile_to_algebra(phi), world)
    if semantics == "kripke":
        model = assignment_model(world, variables(phi))
        fv = free_var_tuple(phi)
        rows = set()
        for w in model.worlds():
            if holds_at(model, w, phi):
                rows.add(tuple(w[v] for v in fv))
        return Relation(len(fv), frozenset(rows))
    return Extensionalization(world).relation(concept_of(phi))


def cmd_eval(args) -> int:
    world, sig = _load_model(args)
    phi = parse_formula(args.formula, sig)
    results = {}
    routes = SEMANTICS if args.check_all else (args.semantics,)
    for semantics in routes:
        results[semantics] = _eval_one(world, phi, semantics)
    shown = results[routes[0]]
    agree = all(rel == shown for rel in results.values())
    if args.json:
        print(
            json.dumps(
                {
                    "command": "eval",
                    "formula": render(phi),
                    "semantics": list(routes),
                    "arity": shown.arity,
                    "value": format_relation(shown),
                    "tuples": [list(t) for t in shown.sorted_tuples()],
                    "agreement": agree,
                },
                sort_keys=True,
            )
        )
    else:
        if shown.arity == 0:
            print(format_relation(shown))
        else:
            for t in shown.sorted_tuples():
                print(format_tuple(t))
        if args.check_all:
            print("agreement: " + ("pass" if agree else "FAIL"))
            if not agree:
                for name in routes:
                    print(f"  {name}: {format_relation(results[name])}")
    return 0 if agree else 1


def cmd_models(args) -> int:
    theory = _load_theory(args.sig, args.gamma)
    domain = _theory_domain(theory, args)
    ws = models_of(
        theory.sentences, theory.signature, domain, guard=guard_limit(args.guard)
    )
    labels = [ws.label(i) for i in range(len(ws))]
    if args.dump:
        outdir = Path(args.dump)
        outdir.mkdir(parents=True, exist_ok=True)
        for label, world in zip(labels, ws.worlds):
            path = outdir / f"{label}.model"
            path.write_text(
                json.dumps(format_interpretation(world), indent=2, sort_keys=True)
                + "\n",
                encoding="utf-8",
            )
    if args.json:
        print(
            json.dumps(
                {
                    "command": "models",
                    "axioms": [name for name, _ in theory.axioms],
                    "domain": list(domain),
                    "models": len(ws),
                    "total": ws.total,
                    "worlds": labels,
                },
                sort_keys=True,
            )
        )
    else:
        print(f"{len(ws)} of {ws.total} worlds")
        if labels:
            print(" ".join(labels))
    return 0


def cmd_entails(args) -> int:
    theory = _load_theory(args.sig, args.gamma)
    domain = _theory_domain(theory, args)
    phi = parse_formula(args.formula, theory.signature)
    counter = find_countermodel(
        theory.sentences, phi, theory.signature, domain, guard=guard_limit(args.guard)
    )
    ok = counter is None
    if args.json:
        body = {
            "command": "entails",
            "formula": render(phi),
            "domain": list(domain),
            "entailed": ok,
        }
        if counter is not None:
            body["countermodel"] = f"w{counter[0]}"
            body["countermodel_tables"] = format_interpretation(counter[1])
        print(json.dumps(body, sort_keys=True))
    elif ok:
        print("pass: entailed at this domain size")
    else:
        print(f"fail: countermodel w{counter[0]}")
    return 0 if ok else 1


def cmd_intension(args) -> int:
    if args.equal and args.equiv:
        raise ModelFormatError("--equal and --equiv are mutually exclusive")
    theory = _load_theory(args.sig, args.gamma)
    domain = _theory_domain(theory, args)
    phi = parse_formula(args.formula, theory.signature)
    ws = models_of(
        theory.sentences, theory.signature, domain, guard=guard_limit(args.guard)
    )
    body: dict = {
        "command": "intension",
        "formula": render(phi),
        "worlds": len(ws),
    }
    lines: list[str] = []
    code = 0
    other = args.equal or args.equiv
    if other:
        psi = parse_formula(other, theory.signature)
        if args.equal:
            equal = intensionally_equal(phi, psi, ws)
            same = concept_of(phi) is concept_of(psi)
            body.update(
                other=render(psi),
                equal=equal,
                same_concept=same,
                concept=render_concept(concept_of(phi)),
                other_concept=render_concept(concept_of(psi)),
            )
            lines.append(f"equal: {str(equal).lower()}")
            lines.append(f"same-concept: {str(same).lower()}")
            lines.append(f"concept: {render_concept(concept_of(phi))}")
            lines.append(f"other-concept: {render_concept(concept_of(psi))}")
        else:
            equivalent = intensionally_equivalent(phi, psi, ws)
            body.update(other=render(psi), equivalent=equivalent)
            lines.append(f"equivalent: {str(equivalent).lower()}")
    elif args.diamond:
        union = diamond_intension(phi, ws)
        body["diamond"] = format_relation(union)
        lines.append(format_relation(union))
    else:
        table = intension(phi, ws)
        body["table"] = {f"w{k}": format_relation(v) for k, v in table.items()}
        for k in sorted(table):
            lines.append(f"w{k}: {format_relation(table[k])}")
    if args.json:
        print(json.dumps(body, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return code


def cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    overrides = {
        "formulas": args.formulas,
        "models": args.models,
        "sentences": args.sentences,
        "triples": args.triples,
        "relations": args.relations,
        "domain_size": args.domain_size,
    }
    all_ok = True
    outputs = []
    for name in names:
        suite = SUITES[name]
        accepted = inspect.signature(suite).parameters
        kwargs = {
            key: value
            for key, value in overrides.items()
            if value is not None and key in accepted
        }
        report = suite(seed=args.seed, **kwargs)
        all_ok &= report.ok()
        outputs.append((name, report))
    if args.json:
        print(
            json.dumps(
                {
                    "command": f"verify {args.suite}",
                    "ok": all_ok,
                    "suites": {name: rep.to_json() for name, rep in outputs},
                },
                sort_keys=True,
            )
        )
    else:
        for name, rep in outputs:
            print(f"== {name} (seed {args.seed}) ==")
            print(rep.to_text())
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
