import pytest
from hypothesis import given, settings, strategies as st

from foli.errors import (
    PreconditionError,
    UndeclaredModalityError,
    VariableOutsideModelError,
)
from foli.gen import FormulaGen, random_interpretation
from foli.kripke import (
    Diamond,
    KripkeFrame,
    accessibility,
    assignment_frame,
    assignment_model,
    base_interpretation,
    box,
    enriched_holds_at,
    enriched_true,
    enriched_world_relation,
    frame_holds_at,
    holds_at,
    holds_everywhere,
    is_rigid,
    modal_free_var_tuple,
    quantifiers_as_diamonds,
    reduction_check,
    strip_modalities,
    world_extension,
)
from foli.relalg import FALSE, Relation, TRUE
from foli.syntax import (
    And,
    Atom,
    Exists,
    Not,
    Signature,
    TOP,
    Var,
    variables,
)
from foli.tarski import Interpretation, extension, satisfies, truth
from foli.worlds import models_of

SIG_PQ = Signature({"p": 1, "q": 2}, {})
D2 = ("a", "b")


def p(x):
    return Atom("p", (Var(x),))


class TestAssignmentModel:
    def test_worlds_and_round_trip(self, m1):
        model = assignment_model(m1, ["x"])
        worlds = list(model.worlds())
        assert worlds == [{"x": "a"}, {"x": "b"}]
        assert base_interpretation(model) == m1

    def test_empty_variable_set_is_single_world(self, m1):
        model = assignment_model(m1, [])
        assert list(model.worlds()) == [{}]
        assert model.world_count() == 1

    def test_accessibility_total_for_single_variable(self, m1):
        model = assignment_model(m1, ["x"])
        rel = accessibility(model, "x")
        assert rel == frozenset(
            {(("a",), ("a",)), (("a",), ("b",)), (("b",), ("a",)), (("b",), ("b",))}
        )

    def test_accessibility_equivalence_relation(self, m1):
        model = assignment_model(m1, ["x", "y", "z"])
        worlds = [tuple(w[v] for v in model.variables) for w in model.worlds()]
        assert len(worlds) == 8
        for var in model.variables:
            rel = accessibility(model, var)
            assert all((w, w) in rel for w in worlds)
            assert all((b, a) in rel for (a, b) in rel)
            assert all(
                (a, c) in rel
                for (a, b) in rel
                for (b2, c) in rel
                if b == b2
            )


class TestHoldsAt:
    def test_quantifier_reaches_accessible_world(self, m1):
        model = assignment_model(m1, ["x"])
        assert holds_at(model, {"x": "b"}, Exists("x", p("x")))

    def test_plain_atom_fails_at_bad_world(self, m1):
        model = assignment_model(m1, ["x"])
        assert not holds_at(model, {"x": "b"}, p("x"))

    def test_ground_sentences_world_independent(self, m1):
        model = assignment_model(m1, ["x"])
        phi = Exists("x", And(p("x"), Atom("q", (Var("x"), Var("x")))))
        values = {holds_at(model, w, phi) for w in model.worlds()}
        assert len(values) == 1

    def test_variable_outside_model(self, m1):
        model = assignment_model(m1, ["x"])
        with pytest.raises(VariableOutsideModelError):
            holds_at(model, {"x": "a"}, Atom("q", (Var("x"), Var("y"))))

    def test_truth_fixtures(self, m1):
        model = assignment_model(m1, ["x"])
        assert holds_everywhere(model, Exists("x", p("x")))
        assert not holds_everywhere(model, p("x"))
        assert holds_everywhere(model, TOP)


class TestAdequacy:
    @given(st.integers(0, 10**6))
    @settings(max_examples=80, deadline=None)
    def test_truth_matches_tarski(self, seed):
        gen = FormulaGen(seed, SIG_PQ)
        world = random_interpretation(seed + 1, SIG_PQ, D2)
        phi = gen.sentence()
        model = assignment_model(world, variables(phi))
        assert truth(world, phi) == holds_everywhere(model, phi)

    @given(st.integers(0, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_open_formula_satisfaction_matches(self, seed):
        gen = FormulaGen(seed, SIG_PQ)
        world = random_interpretation(seed + 1, SIG_PQ, D2)
        phi = gen.formula()
        model = assignment_model(world, variables(phi) | {"x", "y", "z"})
        for w in model.worlds():
            assert holds_at(model, w, phi) == satisfies(world, w, phi)


class TestIntensionConstancy:
    @given(st.integers(0, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_world_extension_is_constant_and_tarskian(self, seed):
        gen = FormulaGen(seed, SIG_PQ)
        world = random_interpretation(seed + 1, SIG_PQ, D2)
        phi = gen.open_formula()
        model = assignment_model(world, variables(phi))
        expected = extension(world, phi)
        for w in model.worlds():
            assert world_extension(model, w, phi) == expected


class TestGeneralizedFrames:
    def propositional_setup(self):
        sig = Signature({"s": 0}, {})
        true_here = Interpretation.make(
            ("a",), sig, predicates={"s": Relation.of(0, [()])}
        )
        false_here = Interpretation.make(
            ("a",), sig, predicates={"s": Relation.empty(0)}
        )
        return sig, true_here, false_here

    def test_one_step_diamond(self):
        _, true_here, false_here = self.propositional_setup()
        frame = KripkeFrame(("w1", "w2"), {"m": frozenset({("w2", "w1")})})
        tables = {"w1": true_here, "w2": false_here}
        phi = Diamond("m", Atom("s", ()))
        assert frame_holds_at(frame, tables, "w2", {}, phi)
        assert not frame_holds_at(frame, tables, "w1", {}, phi)

    def test_vacuous_box(self):
        _, true_here, false_here = self.propositional_setup()
        frame = KripkeFrame(("w1",), {"m": frozenset()})
        tables = {"w1": false_here}
        assert frame_holds_at(frame, tables, "w1", {}, box("m", Atom("s", ())))

    def test_nullary_extension_is_truth_value(self):
        _, true_here, false_here = self.propositional_setup()
        assert extension(true_here, Atom("s", ())) == TRUE
        assert extension(false_here, Atom("s", ())) == FALSE

    def test_undeclared_modality(self):
        _, true_here, _ = self.propositional_setup()
        frame = KripkeFrame(("w1",), {})
        with pytest.raises(UndeclaredModalityError):
            frame_holds_at(
                frame, {"w1": true_here}, "w1", {}, Diamond("m", TOP)
            )

    def test_raw_quantifier_rejected(self):
        _, true_here, _ = self.propositional_setup()
        frame = KripkeFrame(("w1",), {})
        with pytest.raises(PreconditionError):
            frame_holds_at(
                frame, {"w1": true_here}, "w1", {}, Exists("x", TOP)
            )

    def test_rigidity_predicate(self, m1):
        frame, tables = assignment_frame(assignment_model(m1, ["x"]))
        assert is_rigid(frame, tables)

    @given(st.integers(0, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_projection_coherence(self, seed):
        gen = FormulaGen(seed, SIG_PQ, max_depth=4)
        world = random_interpretation(seed + 1, SIG_PQ, D2)
        phi = gen.formula(3)
        model = assignment_model(world, variables(phi))
        frame, tables = assignment_frame(model)
        modal = quantifiers_as_diamonds(phi)
        for name in frame.worlds:
            direct = holds_at(model, frame.assignments[name], phi)
            assert frame_holds_at(frame, tables, name, {}, modal) == direct


class TestEnriched:
    def test_conservativity_fixture(self, m1):
        ws = models_of([], m1.signature, m1.domain, guard=10**6)
        phi = Exists("x", p("x"))
        for position in range(len(ws)):
            inner = assignment_model(ws.worlds[position], variables(phi))
            for g in inner.worlds():
                assert enriched_holds_at(ws, position, g, phi) == holds_at(
                    inner, g, phi
                )

    def test_diamond_reaches_other_worlds(self):
        sig = Signature({"p": 1}, {})
        ws = models_of([], sig, D2)
        phi = Diamond("dia", Exists("x", p("x")))
        # somewhere p is non-empty, so possibility holds at every world
        for position in range(len(ws)):
            assert enriched_holds_at(ws, position, {}, phi)

    def test_diamond_constant_across_worlds(self):
        sig = Signature({"p": 1}, {})
        ws = models_of([], sig, D2)
        dia = Diamond("dia", p("x"))
        values = {
            enriched_world_relation(ws, position, dia)
            for position in range(len(ws))
        }
        assert len(values) == 1
        assert values.pop() == Relation.of(1, [("a",), ("b",)])

    def test_vacuous_box_on_empty_world_set(self):
        sig = Signature({"p": 1}, {})
        ws = models_of([Not(TOP)], sig, D2)
        assert len(ws) == 0
        assert enriched_true(ws, box("dia", Exists("x", p("x"))))

    def test_undeclared_modality(self):
        sig = Signature({"p": 1}, {})
        ws = models_of([], sig, D2)
        with pytest.raises(UndeclaredModalityError):
            enriched_holds_at(ws, 0, {}, Diamond("nope", TOP))

    def test_modal_free_var_tuple(self):
        phi = Diamond("dia", And(Atom("q", (Var("y"), Var("x"))), Exists("y", p("y"))))
        assert modal_free_var_tuple(phi) == ("y", "x")

    def test_named_relations_from_frame_file(self):
        from foli.kripke import world_relations_from_frame
        from foli.parser import parse_frame

        sig = Signature({"p": 1}, {})
        ws = models_of([], sig, D2)
        text = (
            '{"worlds": ["w0", "w1", "w2", "w3"],'
            ' "relations": {"step": [["w0", "w1"], ["w1", "w2"]]}}'
        )
        frame, _ = parse_frame(text)
        relations = world_relations_from_frame(ws, frame)
        # w1 has p = {(a)}: reachable from w0 via one step
        stepped = Diamond("step", Exists("x", p("x")))
        assert enriched_holds_at(ws, 0, {}, stepped, relations)
        assert not enriched_holds_at(ws, 3, {}, stepped, relations)
        # the built-in total relation survives alongside
        assert enriched_holds_at(ws, 3, {}, Diamond("dia", Exists("x", p("x"))), relations)

    def test_frame_relation_with_foreign_label(self):
        from foli.kripke import world_relations_from_frame

        sig = Signature({"p": 1}, {})
        ws = models_of([Exists("x", p("x"))], sig, D2)  # labels w1 w2 w3
        frame = KripkeFrame(("w0", "w1"), {"step": frozenset({("w0", "w1")})})
        with pytest.raises(PreconditionError):
            world_relations_from_frame(ws, frame)


class TestReductions:
    def make_propositional(self):
        sig = Signature({"r1": 0, "r2": 0}, {})
        world = random_interpretation(11, sig, ("a",))
        return sig, world

    def test_actual_world_diamond_is_identity(self):
        sig, world = self.make_propositional()
        frame = KripkeFrame(("h",), {"m": frozenset({("h", "h")})})
        gen = FormulaGen(3, sig)
        corpus = [gen.propositional(diamonds=("m",)) for _ in range(40)]
        report = reduction_check(
            "actual-world", corpus, frame=frame, tables={"h": world}
        )
        assert report.ok()
        # and directly: diamond-p equals p at the hub
        for phi in corpus:
            assert frame_holds_at(frame, {"h": world}, "h", {}, phi) == satisfies(
                world, {}, strip_modalities(phi)
            )

    def test_empty_vocabulary_quantifiers_are_identity(self):
        sig, world = self.make_propositional()
        gen = FormulaGen(5, sig)
        corpus = [gen.propositional(vacuous_quantifiers=True) for _ in range(40)]
        report = reduction_check("empty-vocabulary", corpus, interp=world)
        assert report.ok()

    def test_empty_corpus_succeeds(self):
        sig, world = self.make_propositional()
        frame = KripkeFrame(("h",), {"m": frozenset({("h", "h")})})
        report = reduction_check(
            "actual-world", [], frame=frame, tables={"h": world}
        )
        assert report.ok()
        assert report.counts["formulas"] == 0

    def test_bad_frame_rejected(self):
        sig, world = self.make_propositional()
        frame = KripkeFrame(
            ("h", "g"), {"m": frozenset({("h", "g"), ("g", "g")})}
        )
        with pytest.raises(PreconditionError):
            reduction_check(
                "actual-world", [], frame=frame, tables={"h": world, "g": world}
            )

    def test_nonpropositional_signature_rejected(self, m1):
        with pytest.raises(PreconditionError):
            reduction_check("empty-vocabulary", [], interp=m1)

    def test_unknown_kind(self):
        with pytest.raises(PreconditionError):
            reduction_check("sideways", [])
