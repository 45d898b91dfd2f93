# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled evaluation kernel; same contract as the pure-Python twin."""

from array import array

cdef enum:
    N_TOP = 0
    N_ATOM = 1
    N_EQ = 2
    N_AND = 3
    N_NOT = 4
    N_EXISTS = 5
    T_VAR = 0
    T_FUNC = 1
    T_ELEM = 2

_SCRATCH_I = array("i", [0])
_SCRATCH_B = b"\x00"


cdef int _term(int ti, int n, int[:] env,
               int[:] tkind, int[:] ta, int[:] targ_start, int[:] targ_len,
               int[:] targs, int[:] func_blob, int[:] func_off) noexcept:
    cdef int k = tkind[ti]
    cdef int idx, u, base
    if k == T_VAR:
        return env[ta[ti]]
    if k == T_ELEM:
        return ta[ti]
    idx = 0
    base = targ_start[ti]
    for u in range(targ_len[ti]):
        idx = idx * n + _term(targs[base + u], n, env, tkind, ta,
                              targ_start, targ_len, targs, func_blob, func_off)
    return func_blob[func_off[ta[ti]] + idx]


cdef bint _node(int ni, int n, int[:] env,
                int[:] kinds, int[:] a, int[:] b, int[:] c,
                int[:] tkind, int[:] ta, int[:] targ_start, int[:] targ_len,
                int[:] targs, int[:] atom_args,
                const unsigned char[:] pred_blob, int[:] pred_off,
                int[:] func_blob, int[:] func_off) noexcept:
    cdef int k = kinds[ni]
    cdef int idx, u, base, slot, child, saved, d
    if k == N_ATOM:
        idx = 0
        base = b[ni]
        for u in range(c[ni]):
            idx = idx * n + _term(atom_args[base + u], n, env, tkind, ta,
                                  targ_start, targ_len, targs, func_blob, func_off)
        return pred_blob[pred_off[a[ni]] + idx] != 0
    if k == N_AND:
        if not _node(a[ni], n, env, kinds, a, b, c, tkind, ta, targ_start,
                     targ_len, targs, atom_args, pred_blob, pred_off,
                     func_blob, func_off):
            return False
        return _node(b[ni], n, env, kinds, a, b, c, tkind, ta, targ_start,
                     targ_len, targs, atom_args, pred_blob, pred_off,
                     func_blob, func_off)
    if k == N_NOT:
        return not _node(a[ni], n, env, kinds, a, b, c, tkind, ta, targ_start,
                         targ_len, targs, atom_args, pred_blob, pred_off,
                         func_blob, func_off)
    if k == N_EXISTS:
        slot = a[ni]
        child = b[ni]
        saved = env[slot]
        for d in range(n):
            env[slot] = d
            if _node(child, n, env, kinds, a, b, c, tkind, ta, targ_start,
                     targ_len, targs, atom_args, pred_blob, pred_off,
                     func_blob, func_off):
                env[slot] = saved
                return True
        env[slot] = saved
        return False
    if k == N_EQ:
        return _term(a[ni], n, env, tkind, ta, targ_start, targ_len, targs,
                     func_blob, func_off) == \
               _term(b[ni], n, env, tkind, ta, targ_start, targ_len, targs,
                     func_blob, func_off)
    return True  # N_TOP


def eval_rows(kinds, a, b, c, tkind, ta, targ_start, targ_len, targs,
              atom_args, root, nvars, free_slots, n,
              pred_blob, pred_off, func_blob, func_off):
    # Memoryviews of possibly-empty buffers are swapped for scratch; the
    # lowered indices never touch them when the source was empty.
    cdef int[:] v_kinds = kinds
    cdef int[:] v_a = a
    cdef int[:] v_b = b
    cdef int[:] v_c = c
    cdef int[:] v_tkind = tkind if len(tkind) else _SCRATCH_I
    cdef int[:] v_ta = ta if len(ta) else _SCRATCH_I
    cdef int[:] v_targ_start = targ_start if len(targ_start) else _SCRATCH_I
    cdef int[:] v_targ_len = targ_len if len(targ_len) else _SCRATCH_I
    cdef int[:] v_targs = targs if len(targs) else _SCRATCH_I
    cdef int[:] v_atom_args = atom_args if len(atom_args) else _SCRATCH_I
    cdef const unsigned char[:] v_pred_blob = pred_blob if len(pred_blob) else _SCRATCH_B
    cdef int[:] v_pred_off = pred_off if len(pred_off) else _SCRATCH_I
    cdef int[:] v_func_blob = func_blob if len(func_blob) else _SCRATCH_I
    cdef int[:] v_func_off = func_off if len(func_off) else _SCRATCH_I

    env_arr = array("i", [0]) * max(nvars, 1)
    cdef int[:] env = env_arr

    cdef int iroot = root
    cdef int idom = n
    cdef int m = len(free_slots)
    cdef int[:] v_free = free_slots if m else _SCRATCH_I

    rows = []
    cdef int i, j, carry
    if m == 0:
        if _node(iroot, idom, env, v_kinds, v_a, v_b, v_c, v_tkind, v_ta,
                 v_targ_start, v_targ_len, v_targs, v_atom_args,
                 v_pred_blob, v_pred_off, v_func_blob, v_func_off):
            rows.append(())
        return rows

    combo_arr = array("i", [0]) * m
    cdef int[:] combo = combo_arr
    while True:
        for i in range(m):
            env[v_free[i]] = combo[i]
        if _node(iroot, idom, env, v_kinds, v_a, v_b, v_c, v_tkind, v_ta,
                 v_targ_start, v_targ_len, v_targs, v_atom_args,
                 v_pred_blob, v_pred_off, v_func_blob, v_func_off):
            rows.append(tuple(combo_arr))
        # odometer: last slot varies fastest, matching itertools.product
        j = m - 1
        carry = 1
        while j >= 0 and carry:
            combo[j] += 1
            if combo[j] == idom:
                combo[j] = 0
                j -= 1
            else:
                carry = 0
        if carry:
            break
    return rows
