"""Backend selection for the evaluation kernel.

The compiled extension is preferred when it built; the pure-Python twin is
the fallback.  Set FOLI_BACKEND=python (or =cython) to force one, e.g. for
the benchmark or for debugging a kernel discrepancy.
"""

from __future__ import annotations

import os

from . import _kernel_py
from ._lower import Program, Tables, lower_formula, lower_tables  # noqa: F401

try:
    from . import _kernel as _compiled
except ImportError:  # pragma: no cover - depends on build environment
    _compiled = None

_forced = os.environ.get("FOLI_BACKEND")
if _forced == "python" or (_compiled is None and _forced in (None, "")):
    _impl = _kernel_py
    BACKEND = "python"
elif _forced in (None, "", "cython"):
    if _compiled is None:
        raise ImportError(
            "FOLI_BACKEND=cython requested but the compiled kernel is missing"
        )
    _impl = _compiled
    BACKEND = "cython"
else:
    raise ImportError(f"unknown FOLI_BACKEND value {_forced!r}")


def available_backends() -> tuple[str, ...]:
    return ("python", "cython") if _compiled is not None else ("python",)


def eval_rows(program: Program, tables: Tables, impl=None) -> list[tuple]:
    """Satisfying assignments to the program's free slots, as index tuples."""
    mod = impl or _impl
    return mod.eval_rows(
        program.kinds,
        program.a,
        program.b,
        program.c,
        program.tkind,
        program.ta,
        program.targ_start,
        program.targ_len,
        program.targs,
        program.atom_args,
        program.root,
        program.nvars,
        program.free_slots,
        tables.domain_size,
        tables.pred_blob,
        tables.pred_off,
        tables.func_blob,
        tables.func_off,
    )


def backend_module(name: str):
    if name == "python":
        return _kernel_py
    if name == "cython" and _compiled is not None:
        return _compiled
    raise ImportError(f"backend {name!r} not available")
