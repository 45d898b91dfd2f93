"""Acceptance checks, one test per criterion, all exact (no tolerances).

Every check is an equality of finite objects computed along two independent
routes, so the only thresholds are corpus sizes and the one wall-clock
budget on the largest corpus.  Each test prints its own pass line (visible
with pytest -s).
"""

import time

import pytest

from foli.intensional import concept_of, intensionally_equal, intensionally_equivalent
from foli.parser import parse_formula, parse_signature
from foli.relalg import Relation
from foli.tarski import truth
from foli.verify import (
    suite_adequacy,
    suite_constancy,
    suite_diagram,
    suite_diamond,
    suite_enrichment,
    suite_reductions,
    suite_relalg,
    suite_subconcept,
)
from foli.worlds import entails, find_countermodel, models_of

D2 = ("a", "b")


def _announce(number: int, ok: bool, text: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion-{number}: {text}")
    assert ok


@pytest.fixture(scope="module")
def diagram_run():
    started = time.perf_counter()
    report = suite_diagram(seed=7, formulas=1000, models=20, domain_size=2)
    elapsed = time.perf_counter() - started
    return report, elapsed


def _check(report, name):
    return next(c for c in report.checks if c.name == name)


def test_criterion_1_diagram_commutation(diagram_run):
    report, elapsed = diagram_run
    check = _check(report, "diagram-commutation")
    assert elapsed < 60.0, f"diagram corpus took {elapsed:.1f}s"
    _announce(1, check.ok, f"{check.detail} in {elapsed:.1f}s")


def test_criterion_2_extensional_homomorphism(diagram_run):
    report, _ = diagram_run
    laws = _check(report, "homomorphism-laws")
    consts = _check(report, "distinguished-constants")
    _announce(2, laws.ok and consts.ok, f"{laws.detail}; {consts.detail}")


def test_criterion_3_kripke_adequacy():
    report = suite_adequacy(seed=7, sentences=500, domain_size=2)
    ok = report.ok()
    _announce(3, ok, "; ".join(c.detail for c in report.checks))


def test_criterion_4_intension_constancy():
    report = suite_constancy(seed=7, formulas=200, domain_size=2)
    _announce(4, report.ok(), report.checks[0].detail)


def test_criterion_5_enrichment_conservativity():
    report = suite_enrichment(seed=7, domain_size=2)
    _announce(5, report.ok(), report.checks[0].detail)


SIG_PQC = parse_signature("pred p/1; pred q/2; fn c/0;")

# (assumption texts, conclusion text, expected verdict)
ENTAILMENT_FIXTURES = [
    ((
        "forall x. (p(x) -> q(x,x))",
        "p(c)",
    ), "q(c,c)", True),
    ((), "x = x", True),
    ((), "true", True),
    ((), "~false", True),
    (("p(c)",), "exists x. p(x)", True),
    (("forall x. p(x)",), "p(c)", True),
    (("exists x. p(x)",), "exists x. p(x)", True),
    (("forall x. forall y. q(x,y)",), "q(c,c)", True),
    ((), "p(c) | ~p(c)", True),
    (("p(c)", "forall x. (p(x) -> q(x,x))"), "exists x. q(x,x)", True),
    ((), "forall x. x = x", True),
    (("exists x. ~p(x)", "forall x. p(x)"), "false", True),
    ((), "exists y. c = y", True),
    (("forall x. q(x,x)",), "q(c,c)", True),
    (("p(c)", "q(c,c)"), "q(c,c)", True),
    ((), "forall x. forall y. forall z. (x = y -> (x = z -> y = z))", True),
    (("forall x. (p(x) <-> ~q(x,x))", "q(c,c)"), "~p(c)", True),
    ((), "p(c)", False),
    ((), "exists x. p(x)", False),
    (("exists x. p(x)",), "forall x. p(x)", False),
    (("exists x. p(x)",), "p(c)", False),
    ((), "forall x. forall y. x = y", False),
    (("q(c,c)",), "forall x. q(x,x)", False),
    (("forall x. exists y. q(x,y)",), "exists y. forall x. q(x,y)", False),
    (("p(c)",), "forall x. p(x)", False),
]


def test_criterion_6_consequence_over_the_world_space():
    assert len(ENTAILMENT_FIXTURES) >= 20
    failures = []
    for gamma_texts, phi_text, expected in ENTAILMENT_FIXTURES:
        gamma = [parse_formula(t, SIG_PQC) for t in gamma_texts]
        phi = parse_formula(phi_text, SIG_PQC)
        got = entails(gamma, phi, SIG_PQC, D2)
        # by construction: the verdict must equal truth at every world
        ws = models_of(gamma, SIG_PQC, D2)
        explicit = all(truth(w, phi) for w in ws.worlds)
        if got != expected or got != explicit:
            failures.append(phi_text)
        if not expected:
            counter = find_countermodel(gamma, phi, SIG_PQC, D2)
            if counter is None:
                failures.append(f"no countermodel for {phi_text}")
    _announce(
        6,
        not failures,
        f"{len(ENTAILMENT_FIXTURES)} hand fixtures incl. countermodels"
        + (f"; failures: {failures}" if failures else ""),
    )


def test_criterion_7_bought_sold_separation():
    sig = parse_signature("pred p1/1; pred p2/1;")
    one = parse_formula("p1(x)", sig)
    two = parse_formula("p2(x)", sig)
    linked = models_of([parse_formula("forall x. (p1(x) <-> p2(x))", sig)], sig, D2)
    free = models_of([], sig, D2)
    full_domain = Relation.of(1, [("a",), ("b",)])

    ok = (
        intensionally_equal(one, two, linked)
        and concept_of(one) is not concept_of(two)
        and intensionally_equivalent(one, two, linked)
        and not intensionally_equal(one, two, free)
        and intensionally_equivalent(one, two, free)
    )
    from foli.intensional import diamond_intension

    ok = ok and diamond_intension(one, free) == full_domain
    ok = ok and diamond_intension(two, free) == full_domain
    _announce(
        7,
        ok,
        "linked: equal but distinct concepts; unlinked: inequal yet "
        "equivalent with full-domain unions",
    )


def test_criterion_8_diamond_constancy():
    report = suite_diamond(seed=7, formulas=100, domain_size=2)
    _announce(8, report.ok(), report.checks[0].detail)


def test_criterion_9_subconcept_proposition():
    report = suite_subconcept(seed=7, triples=200, domain_size=2)
    _announce(9, report.ok(), "; ".join(c.detail for c in report.checks))


def test_criterion_10_reduction_diagram():
    report = suite_reductions(seed=7, formulas=100)
    _announce(10, report.ok(), "; ".join(c.detail for c in report.checks))


def test_criterion_11_relational_algebra_laws():
    report = suite_relalg(seed=7, relations=1000, domain_size=2)
    _announce(
        11,
        report.ok(),
        "involution, join unit/annihilator, arity arithmetic, order bounds "
        "on 1000 random relations",
    )
