"""Pure-Python evaluation kernel; same contract as the compiled twin.

eval_rows enumerates all assignments to the free-variable slots (odometer
order, first slot most significant) and returns the satisfying ones as
tuples of element indices.
"""

from __future__ import annotations

from itertools import product

N_TOP, N_ATOM, N_EQ, N_AND, N_NOT, N_EXISTS = 0, 1, 2, 3, 4, 5
T_VAR, T_FUNC, T_ELEM = 0, 1, 2


def eval_rows(
    kinds,
    a,
    b,
    c,
    tkind,
    ta,
    targ_start,
    targ_len,
    targs,
    atom_args,
    root,
    nvars,
    free_slots,
    n,
    pred_blob,
    pred_off,
    func_blob,
    func_off,
):
    env = [0] * nvars

    def term(ti):
        k = tkind[ti]
        if k == T_VAR:
            return env[ta[ti]]
        if k == T_ELEM:
            return ta[ti]
        idx = 0
        base = targ_start[ti]
        for u in range(targ_len[ti]):
            idx = idx * n + term(targs[base + u])
        return func_blob[func_off[ta[ti]] + idx]

    def node(ni):
        k = kinds[ni]
        if k == N_ATOM:
            idx = 0
            base = b[ni]
            for u in range(c[ni]):
                idx = idx * n + term(atom_args[base + u])
            return pred_blob[pred_off[a[ni]] + idx] != 0
        if k == N_AND:
            return node(a[ni]) and node(b[ni])
        if k == N_NOT:
            return not node(a[ni])
        if k == N_EXISTS:
            slot = a[ni]
            child = b[ni]
            saved = env[slot]
            for d in range(n):
                env[slot] = d
                if node(child):
                    env[slot] = saved
                    return True
            env[slot] = saved
            return False
        if k == N_EQ:
            return term(a[ni]) == term(b[ni])
        return True  # N_TOP

    rows = []
    if not len(free_slots):
        if node(root):
            rows.append(())
        return rows
    slots = list(free_slots)
    for combo in product(range(n), repeat=len(slots)):
        for s, v in zip(slots, combo):
            env[s] = v
        if node(root):
            rows.append(combo)
    return rows
