"""foli: a finite-model semantics workbench for first-order logic.

Four interchangeable evaluation routes - direct Tarskian satisfaction, a
compiled relational-algebra expression, assignment-worlds Kripke models,
and a two-step concept algebra - plus exhaustive interpretation
enumeration, with the theorems connecting the routes checked mechanically
at desk scale.
"""

from .errors import FoliError
from .kernel import BACKEND
from .parser import parse_formula, parse_interpretation, parse_signature, render
from .relalg import FALSE, Relation, TRUE
from .syntax import Signature, free_var_tuple
from .tarski import Interpretation, extension, satisfies, truth
from .worlds import entails, models_of

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FALSE",
    "FoliError",
    "Interpretation",
    "Relation",
    "Signature",
    "TRUE",
    "entails",
    "extension",
    "free_var_tuple",
    "models_of",
    "parse_formula",
    "parse_interpretation",
    "parse_signature",
    "render",
    "satisfies",
    "truth",
    "__version__",
]
