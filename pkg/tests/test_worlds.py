import pytest
from hypothesis import given, settings, strategies as st

from foli.errors import GuardExceededError, OpenFormulaError
from foli.gen import FormulaGen
from foli.relalg import Relation
from foli.syntax import (
    App,
    Atom,
    Exists,
    Not,
    Signature,
    TOP,
    Var,
    forall,
    implication,
)
from foli.tarski import Interpretation, truth
from foli.worlds import (
    enumerate_interpretations,
    entails,
    find_countermodel,
    locally_infers,
    models_of,
    space_size,
)

P1 = Signature({"p": 1}, {})
D2 = ("a", "b")


def exists_p():
    return Exists("x", Atom("p", (Var("x"),)))


class TestEnumeration:
    def test_counts(self):
        assert space_size(P1, D2) == 4
        assert len(list(enumerate_interpretations(P1, D2))) == 4
        with_const = Signature({"p": 1}, {"c": 0})
        assert space_size(with_const, D2) == 8
        assert len(list(enumerate_interpretations(with_const, D2))) == 8
        empty = Signature({}, {})
        assert len(list(enumerate_interpretations(empty, ("a",)))) == 1

    def test_canonical_order_is_a_binary_counter(self):
        worlds = list(enumerate_interpretations(P1, D2))
        extensions = [w.predicates["p"].tuples for w in worlds]
        assert extensions == [
            frozenset(),
            frozenset({("a",)}),
            frozenset({("b",)}),
            frozenset({("a",), ("b",)}),
        ]

    def test_deterministic_across_runs(self):
        sig = Signature({"p": 1, "q": 2}, {"c": 0})
        first = list(enumerate_interpretations(sig, D2))
        second = list(enumerate_interpretations(sig, D2))
        assert first == second

    def test_multi_symbol_order_first_declared_most_significant(self):
        sig = Signature({"p": 1, "q": 1}, {})
        worlds = list(enumerate_interpretations(sig, D2))
        assert len(worlds) == 16
        # q's counter varies fastest; p advances every 4 worlds
        assert worlds[0].predicates["p"].tuples == frozenset()
        assert worlds[1].predicates["p"].tuples == frozenset()
        assert worlds[1].predicates["q"].tuples == frozenset({("a",)})
        assert worlds[4].predicates["p"].tuples == frozenset({("a",)})
        assert worlds[4].predicates["q"].tuples == frozenset()

    def test_no_duplicates(self):
        sig = Signature({"p": 1}, {"c": 0, "f": 1})
        seen = []
        for world in enumerate_interpretations(sig, D2):
            key = (
                world.predicates["p"].tuples,
                world.functions["c"][()],
                tuple(sorted(world.functions["f"].items())),
            )
            assert key not in seen
            seen.append(key)
        assert len(seen) == space_size(sig, D2)

    def test_guard(self):
        sig = Signature({"q": 2}, {})
        with pytest.raises(GuardExceededError) as err:
            list(enumerate_interpretations(sig, D2, guard=10))
        assert err.value.count == 16

    def test_guard_env_override(self, monkeypatch):
        monkeypatch.setenv("FOLI_GUARD", "10")
        sig = Signature({"q": 2}, {})
        with pytest.raises(GuardExceededError):
            list(enumerate_interpretations(sig, D2))


class TestModelsOf:
    def test_filtering(self):
        ws = models_of([exists_p()], P1, D2)
        assert len(ws) == 3
        assert ws.total == 4
        assert ws.indices == (1, 2, 3)
        assert [ws.label(i) for i in range(3)] == ["w1", "w2", "w3"]

    def test_contradiction(self):
        assert len(models_of([Not(TOP)], P1, D2)) == 0

    def test_empty_gamma_keeps_all(self):
        assert len(models_of([], P1, D2)) == 4

    def test_open_formula_rejected(self):
        with pytest.raises(OpenFormulaError):
            models_of([Atom("p", (Var("x"),))], P1, D2)


SIG_PQC = Signature({"p": 1, "q": 2}, {"c": 0})


class TestEntails:
    def test_modus_ponens_with_quantifier(self):
        gamma = [
            forall("x", implication(Atom("p", (Var("x"),)), Atom("q", (Var("x"), Var("x"))))),
            Atom("p", (App("c"),)),
        ]
        assert entails(gamma, Atom("q", (App("c"), App("c"))), SIG_PQC, D2)

    def test_reflexivity_is_valid(self):
        from foli.syntax import Eq

        assert entails([], Eq(Var("x"), Var("x")), SIG_PQC, D2)

    def test_countermodel_for_unforced_atom(self):
        counter = find_countermodel([], Atom("p", (App("c"),)), SIG_PQC, D2)
        assert counter is not None
        index, world = counter
        assert not truth(world, Atom("p", (App("c"),)))

    @given(st.integers(0, 10**6))
    @settings(max_examples=25, deadline=None)
    def test_monotone_in_assumptions(self, seed):
        gen = FormulaGen(seed, P1, max_depth=3)
        gamma = [gen.sentence()]
        bigger = gamma + [gen.sentence()]
        phi = gen.sentence()
        small = models_of(gamma, P1, D2)
        large = models_of(bigger, P1, D2)
        assert set(large.indices) <= set(small.indices)
        if entails(gamma, phi, P1, D2):
            assert entails(bigger, phi, P1, D2)

    @given(st.integers(0, 10**6))
    @settings(max_examples=15, deadline=None)
    def test_global_equals_everywhere_local(self, seed):
        gen = FormulaGen(seed, P1, max_depth=3)
        gamma = [gen.sentence()]
        phi = gen.sentence()
        everywhere_local = all(
            locally_infers(gamma, phi, world)
            for world in enumerate_interpretations(P1, D2)
        )
        assert entails(gamma, phi, P1, D2) == everywhere_local


class TestLocallyInfers:
    def test_member_of_gamma(self, m1):
        assert locally_infers([exists_p()], exists_p(), m1)

    def test_fixture_constant(self, m1):
        # m1 has p = {(a)} and c = a
        assert locally_infers([], Atom("p", (App("c"),)), m1)

    def test_vacuous_when_gamma_fails(self):
        sig = Signature({"p": 1}, {"c": 0})
        world = Interpretation.make(
            D2,
            sig,
            predicates={"p": Relation.empty(1)},
            functions={"c": {(): "a"}},
        )
        impossible = Atom("p", (App("c"),))
        assert locally_infers([impossible], Not(TOP), world)
