import pytest

from foli.relalg import Relation
from foli.syntax import Signature
from foli.tarski import Interpretation


@pytest.fixture
def sig_m1() -> Signature:
    return Signature({"p": 1, "q": 2}, {"c": 0})


@pytest.fixture
def m1(sig_m1) -> Interpretation:
    """The small workhorse model: p={(a)}, q={(a,b),(b,b)}, c=a over {a,b}."""
    return Interpretation.make(
        ("a", "b"),
        sig_m1,
        predicates={
            "p": Relation.of(1, [("a",)]),
            "q": Relation.of(2, [("a", "b"), ("b", "b")]),
        },
        functions={"c": {(): "a"}},
    )
