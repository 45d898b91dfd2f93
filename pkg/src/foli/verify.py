"""The theorem suites: seeded random-corpus checks of every equivalence.

Each suite returns a deterministic Report.  Suite names (as exposed by the
CLI) and their default sizes match the acceptance configuration; all of
them run over desk-scale domains where enumeration is exact, so every
check is an exact equality, never a tolerance.
"""

from __future__ import annotations

import random
import string

from . import kripke
from .gen import FormulaGen, random_interpretation, random_relation
from .intensional import (
    Extensionalization,
    concept_of,
    diamond_intension,
    subconcept_extension,
)
from .kripke import (
    Diamond,
    KripkeFrame,
    accessibility,
    assignment_frame,
    assignment_model,
    enriched_world_relation,
    holds_at,
    holds_everywhere,
    quantifiers_as_diamonds,
    reduction_check,
    world_extension,
)
from .parser import render
from .relalg import (
    FALSE,
    Relation,
    TRUE,
    complement,
    identity_relation,
    leq,
    natural_join,
    project_out,
)
from .report import Report
from .syntax import (
    And,
    Atom,
    Eq,
    Exists,
    Not,
    Signature,
    TOP,
    Var,
    free_var_tuple,
    ground,
    variables,
)
from .tarski import (
    compile_to_algebra,
    evaluate_algebra,
    extension,
    join_spec_for,
    quantifier_position,
    truth,
)
from .worlds import models_of

#: Signature used by the diagram/homomorphism corpus.
DIAGRAM_SIGNATURE = Signature({"p": 1, "q": 2, "r": 0}, {"c": 0, "f": 1})

#: Signature used by the adequacy corpus.
ADEQUACY_SIGNATURE = Signature({"p": 1, "q": 2}, {})

#: Signature with two unary predicates (the bought/sold pair).
PAIR_SIGNATURE = Signature({"p1": 1, "p2": 1}, {})

#: Purely propositional signature for the reduction checks.
PROPOSITIONAL_SIGNATURE = Signature({"r1": 0, "r2": 0, "r3": 0}, {})


def domain_of_size(n: int) -> tuple:
    """Deterministic element names: a, b, ..., z, then e27, e28, ..."""
    if n < 1:
        raise ValueError("domain size must be positive")
    letters = list(string.ascii_lowercase[: min(n, 26)])
    letters += [f"e{i}" for i in range(27, n + 1)]
    return tuple(letters)


def _witness(phi, world_label=None, **extra) -> dict:
    data = {"formula": render(phi)}
    if world_label is not None:
        data["world"] = world_label
    data.update(extra)
    return data


def suite_diagram(
    seed: int = 7, formulas: int = 1000, models: int = 20, domain_size: int = 2
) -> Report:
    """Diagram commutation plus the three extensional homomorphism laws."""
    report = Report(command="verify diagram", seed=seed)
    rng = random.Random(seed)
    sig = DIAGRAM_SIGNATURE
    domain = domain_of_size(domain_size)
    gen = FormulaGen(rng, sig)
    sampled = [random_interpretation(rng, sig, domain) for _ in range(models)]
    maps = [Extensionalization(m) for m in sampled]

    commute_bad = law_bad = const_bad = 0
    first: dict[str, dict] = {}
    law_counts = {"and": 0, "not": 0, "exists": 0}

    for m_index, world in enumerate(sampled):
        ok_top = extension(world, TOP) == TRUE
        ok_bot = extension(world, Not(TOP)) == FALSE
        ok_id = extension(world, Eq(Var("x"), Var("y"))) == identity_relation(domain)
        if not (ok_top and ok_bot and ok_id):
            const_bad += 1
            first.setdefault("constants", {"model": m_index})

    corpus = [gen.formula() for _ in range(formulas)]
    for phi in corpus:
        for m_index, world in enumerate(sampled):
            direct = extension(world, phi)
            via = maps[m_index].relation(concept_of(phi))
            if via != direct:
                commute_bad += 1
                first.setdefault(
                    "commutation",
                    _witness(
                        phi,
                        model=m_index,
                        concept_route=str(via.sorted_tuples()),
                        direct=str(direct.sorted_tuples()),
                    ),
                )
            if isinstance(phi, And):
                law_counts["and"] += 1
                spec = join_spec_for(phi.left, phi.right)
                lhs = natural_join(
                    extension(world, phi.left), extension(world, phi.right), spec
                )
                if lhs != direct:
                    law_bad += 1
                    first.setdefault("law", _witness(phi, model=m_index, law="and"))
            elif isinstance(phi, Not):
                law_counts["not"] += 1
                if complement(extension(world, phi.sub), domain) != direct:
                    law_bad += 1
                    first.setdefault("law", _witness(phi, model=m_index, law="not"))
            elif isinstance(phi, Exists):
                law_counts["exists"] += 1
                pos = quantifier_position(phi.var, phi.body)
                if project_out(extension(world, phi.body), pos) != direct:
                    law_bad += 1
                    first.setdefault(
                        "law", _witness(phi, model=m_index, law="exists")
                    )
            # the compiled algebra route must agree as well
            if evaluate_algebra(compile_to_algebra(phi), world) != direct:
                law_bad += 1
                first.setdefault("law", _witness(phi, model=m_index, law="algebra"))

    pairs = formulas * models
    report.add(
        "diagram-commutation",
        commute_bad == 0,
        detail=f"{pairs} formula×model pairs, {commute_bad} failures",
        witness=first.get("commutation"),
    )
    report.add(
        "homomorphism-laws",
        law_bad == 0,
        detail=(
            f"roots and={law_counts['and']} not={law_counts['not']} "
            f"exists={law_counts['exists']}, plus full algebra route; "
            f"{law_bad} failures"
        ),
        witness=first.get("law"),
    )
    report.add(
        "distinguished-constants",
        const_bad == 0,
        detail=f"truth/contradiction/identity at {models} models",
        witness=first.get("constants"),
    )
    report.counts.update(formulas=formulas, models=models, domain=domain_size)
    return report


def suite_adequacy(
    seed: int = 7, sentences: int = 500, domain_size: int = 2
) -> Report:
    """Tarskian truth equals assignment-worlds truth on every interpretation."""
    report = Report(command="verify folk-adequacy", seed=seed)
    rng = random.Random(seed)
    sig = ADEQUACY_SIGNATURE
    domain = domain_of_size(domain_size)
    gen = FormulaGen(rng, sig)
    worlds = list(models_of([], sig, domain))

    bad = 0
    first = None
    corpus = [gen.sentence() for _ in range(sentences)]
    for phi in corpus:
        names = variables(phi)
        for world in worlds:
            model = assignment_model(world, names)
            if truth(world, phi) != holds_everywhere(model, phi):
                bad += 1
                if first is None:
                    first = _witness(phi)
    report.add(
        "truth-agreement",
        bad == 0,
        detail=f"{len(corpus)} sentences × {len(worlds)} interpretations, "
        f"{bad} failures",
        witness=first,
    )

    # accessibility relations are equivalence relations
    rel_bad = 0
    sample_model = assignment_model(worlds[0], ("x", "y", "z"))
    world_tuples = [
        tuple(w[v] for v in sample_model.variables) for w in sample_model.worlds()
    ]
    for var in sample_model.variables:
        rel = accessibility(sample_model, var)
        reflexive = all((w, w) in rel for w in world_tuples)
        symmetric = all((b, a) in rel for (a, b) in rel)
        transitive = all(
            (a, c) in rel
            for (a, b) in rel
            for (b2, c) in rel
            if b == b2
        )
        if not (reflexive and symmetric and transitive):
            rel_bad += 1
    report.add(
        "accessibility-equivalence",
        rel_bad == 0,
        detail=f"{len(sample_model.variables)} relations over "
        f"{len(world_tuples)} worlds",
    )

    # the generalized evaluator agrees on frame-encoded models
    coherence_bad = 0
    first_coherence = None
    for phi in corpus[: min(60, len(corpus))]:
        names = variables(phi)
        world = worlds[rng.randrange(len(worlds))]
        model = assignment_model(world, names)
        frame, tables = assignment_frame(model)
        modal = quantifiers_as_diamonds(phi)
        for world_name in frame.worlds:
            via_frame = kripke.frame_holds_at(frame, tables, world_name, {}, modal)
            assign = frame.assignments[world_name]
            direct = holds_at(model, assign, phi)
            if via_frame != direct:
                coherence_bad += 1
                if first_coherence is None:
                    first_coherence = _witness(phi, world_label=world_name)
    report.add(
        "projection-coherence",
        coherence_bad == 0,
        detail="generalized evaluator vs assignment-worlds evaluator",
        witness=first_coherence,
    )
    report.counts.update(
        sentences=sentences, interpretations=len(worlds), domain=domain_size
    )
    return report


def suite_constancy(
    seed: int = 7, formulas: int = 200, models: int = 5, domain_size: int = 2
) -> Report:
    """Per-world extensions are world-independent and Tarskian."""
    report = Report(command="verify folk-constancy", seed=seed)
    rng = random.Random(seed)
    sig = DIAGRAM_SIGNATURE
    domain = domain_of_size(domain_size)
    gen = FormulaGen(rng, sig)
    sampled = [random_interpretation(rng, sig, domain) for _ in range(models)]

    bad = 0
    first = None
    for _ in range(formulas):
        phi = gen.open_formula()
        world = sampled[rng.randrange(len(sampled))]
        model = assignment_model(world, variables(phi))
        expected = extension(world, phi)
        for w in model.worlds():
            got = world_extension(model, w, phi)
            if got != expected:
                bad += 1
                if first is None:
                    first = _witness(
                        phi,
                        world_label=str(sorted(w.items())),
                        got=str(got.sorted_tuples()),
                        expected=str(expected.sorted_tuples()),
                    )
                break
    report.add(
        "intension-constancy",
        bad == 0,
        detail=f"{formulas} open formulas, every assignment world; {bad} failures",
        witness=first,
    )
    report.counts.update(formulas=formulas, models=models, domain=domain_size)
    return report


def suite_enrichment(
    seed: int = 7, formulas: int = 60, domain_size: int = 2
) -> Report:
    """Modality-free formulas mean the same before and after enrichment."""
    report = Report(command="verify enrichment", seed=seed)
    rng = random.Random(seed)
    sig = ADEQUACY_SIGNATURE
    domain = domain_of_size(domain_size)
    gen = FormulaGen(rng, sig)

    gammas = [
        (),
        (Exists("x", Atom("p", (Var("x"),))),),
    ]
    bad = 0
    first = None
    checked = 0
    for gamma in gammas:
        ws = models_of(gamma, sig, domain)
        corpus = [gen.formula() for _ in range(formulas)]
        for phi in corpus:
            names = tuple(sorted(variables(phi)))
            for position in range(len(ws)):
                inner = assignment_model(ws.worlds[position], names)
                for g in inner.worlds():
                    checked += 1
                    enriched = kripke.enriched_holds_at(ws, position, g, phi)
                    plain = holds_at(inner, g, phi)
                    if enriched != plain:
                        bad += 1
                        if first is None:
                            first = _witness(phi, world_label=ws.label(position))
    report.add(
        "conservativity",
        bad == 0,
        detail=f"{checked} generalized-world checks, {bad} failures",
        witness=first,
    )
    report.counts.update(formulas=formulas, domain=domain_size)
    return report


def suite_subconcept(
    seed: int = 7, triples: int = 200, domain_size: int = 2
) -> Report:
    """Pinning a variable to a constant commutes with extensionalization."""
    report = Report(command="verify subconcept", seed=seed)
    rng = random.Random(seed)
    sig = DIAGRAM_SIGNATURE
    domain = domain_of_size(domain_size)
    gen = FormulaGen(rng, sig)

    bad = 0
    first = None
    for _ in range(triples):
        phi = gen.open_formula()
        fv = free_var_tuple(phi)
        position = rng.randint(1, len(fv))
        world = random_interpretation(rng, sig, domain)
        left, right, equal = subconcept_extension(phi, position, "c", world)
        if not equal:
            bad += 1
            if first is None:
                first = _witness(
                    phi,
                    position=position,
                    substituted=str(left.sorted_tuples()),
                    routed=str(right.sorted_tuples()),
                )
    report.add(
        "subconcept-clauses",
        bad == 0,
        detail=f"{triples} (formula, position, constant) triples; {bad} failures",
        witness=first,
    )

    # the sentence clause: grounding is membership
    sbad = 0
    sfirst = None
    from itertools import product as _product

    for _ in range(max(20, triples // 10)):
        phi = gen.open_formula()
        fv = free_var_tuple(phi)
        world = random_interpretation(rng, sig, domain)
        h = Extensionalization(world)
        base = h.relation(concept_of(phi))
        for values in _product(world.domain, repeat=len(fv)):
            grounded = ground(phi, dict(zip(fv, values)))
            lifted = h.relation(concept_of(grounded))
            member = values in base.tuples
            if (lifted == TRUE) != member:
                sbad += 1
                if sfirst is None:
                    sfirst = _witness(phi, values=str(values))
    report.add(
        "sentence-clause",
        sbad == 0,
        detail="grounded truth iff tuple membership",
        witness=sfirst,
    )
    report.counts.update(triples=triples, domain=domain_size)
    return report


def suite_diamond(
    seed: int = 7, formulas: int = 100, domain_size: int = 2
) -> Report:
    """The possibility operator's per-world value is the constant union."""
    report = Report(command="verify diamond", seed=seed)
    rng = random.Random(seed)
    sig = PAIR_SIGNATURE
    domain = domain_of_size(domain_size)
    gen = FormulaGen(rng, sig)
    ws = models_of([], sig, domain)

    bad = 0
    first = None
    for _ in range(formulas):
        phi = gen.formula()
        expected = diamond_intension(phi, ws)
        dia = Diamond("dia", phi)
        for position in range(len(ws)):
            got = enriched_world_relation(ws, position, dia)
            if got != expected:
                bad += 1
                if first is None:
                    first = _witness(
                        phi,
                        world_label=ws.label(position),
                        got=str(got.sorted_tuples()),
                        expected=str(expected.sorted_tuples()),
                    )
                break
    report.add(
        "diamond-constancy",
        bad == 0,
        detail=f"{formulas} formulas × {len(ws)} worlds; {bad} failures",
        witness=first,
    )
    report.counts.update(formulas=formulas, worlds=len(ws), domain=domain_size)
    return report


def suite_reductions(seed: int = 7, formulas: int = 100) -> Report:
    """Actual-world and empty-vocabulary collapses of the modal semantics."""
    report = Report(command="verify reductions", seed=seed)
    rng = random.Random(seed)
    sig = PROPOSITIONAL_SIGNATURE
    gen = FormulaGen(rng, sig)
    domain = domain_of_size(1)

    hub = "h"
    frame = KripkeFrame((hub,), {"m": frozenset({(hub, hub)})})
    world = random_interpretation(rng, sig, domain)
    corpus = [gen.propositional(diamonds=("m",)) for _ in range(formulas)]
    actual = reduction_check(
        "actual-world", corpus, frame=frame, tables={hub: world}
    )
    report.add(
        "actual-world",
        actual.ok(),
        detail=f"{formulas} propositional modal formulas",
    )

    world2 = random_interpretation(rng, sig, domain)
    corpus2 = [
        gen.propositional(vacuous_quantifiers=True) for _ in range(formulas)
    ]
    vocab = reduction_check("empty-vocabulary", corpus2, interp=world2)
    report.add(
        "empty-vocabulary",
        vocab.ok(),
        detail=f"{formulas} vacuously quantified formulas",
    )
    report.counts.update(formulas=formulas)
    return report


def suite_relalg(
    seed: int = 7, relations: int = 1000, domain_size: int = 2
) -> Report:
    """Algebra laws on random relations: involution, units, arities, order."""
    report = Report(command="verify relalg-laws", seed=seed)
    rng = random.Random(seed)
    domain = domain_of_size(domain_size)

    inv_bad = unit_bad = arity_bad = poset_bad = 0
    for _ in range(relations):
        rel = random_relation(rng, domain)
        if complement(complement(rel, domain), domain) != rel:
            inv_bad += 1
        if natural_join(rel, TRUE, frozenset()) != rel:
            unit_bad += 1
        if natural_join(rel, FALSE, frozenset()).tuples:
            unit_bad += 1
        other = random_relation(rng, domain)
        size = rng.randint(0, min(rel.arity, other.arity))
        firsts = rng.sample(range(1, rel.arity + 1), size)
        seconds = rng.sample(range(1, other.arity + 1), size)
        spec = frozenset(zip(firsts, seconds))
        joined = natural_join(rel, other, spec)
        if joined.arity != rel.arity + other.arity - len(spec):
            arity_bad += 1
        if not (
            leq(Relation.empty(rel.arity), rel)
            and leq(FALSE, rel)
            and leq(rel, TRUE)
        ):
            poset_bad += 1

    report.add("complement-involution", inv_bad == 0, detail=f"{relations} relations")
    report.add("join-unit-annihilator", unit_bad == 0, detail=f"{relations} relations")
    report.add("join-arity-arithmetic", arity_bad == 0, detail=f"{relations} joins")
    report.add("poset-bounds", poset_bad == 0, detail=f"{relations} relations")
    report.counts.update(relations=relations, domain=domain_size)
    return report


SUITES = {
    "diagram": suite_diagram,
    "folk-adequacy": suite_adequacy,
    "folk-constancy": suite_constancy,
    "enrichment": suite_enrichment,
    "subconcept": suite_subconcept,
    "diamond": suite_diamond,
    "reductions": suite_reductions,
    "relalg-laws": suite_relalg,
}
