"""Counterexample search over colorings: the library's hot inner loop.

Verifies statements of the form "every c-coloring of N items makes some
target monochromatic" by depth-first search over colorings, pruning a branch
as soon as a fully colored target becomes monochromatic, and restricting to
colorings in canonical color order (color(i) <= 1 + max of earlier colors),
which is sound because monochromaticity is invariant under permuting colors.

Two implementations are provided: a numba ``@njit`` kernel (default) and a
pure-Python fallback.  Set ``STEINER_RAMSEY_PURE_PYTHON=1`` to force the
fallback; ``benchmarks/bench_coloring_search.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_PURE = os.environ.get("STEINER_RAMSEY_PURE_PYTHON", "") not in ("", "0")

try:  # pragma: no cover - exercised via the env flag in tests
    if _FORCE_PURE:
        raise ImportError("pure-python fallback forced by env flag")
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


def pack_targets(n_items, targets):
    """CSR-pack targets and group them by their largest member index.

    Returns (t_off, t_idx, bl_off, bl_ids) int32 arrays; a target becomes
    checkable exactly when its largest index is colored.
    """
    t_off = np.zeros(len(targets) + 1, dtype=np.int32)
    members = []
    by_last = [[] for _ in range(n_items)]
    for ti, tgt in enumerate(targets):
        tgt = sorted(tgt)
        if not tgt:
            raise ValueError("empty targets must be handled by the caller")
        members.extend(tgt)
        t_off[ti + 1] = len(members)
        by_last[tgt[-1]].append(ti)
    t_idx = np.asarray(members, dtype=np.int32)
    bl_off = np.zeros(n_items + 1, dtype=np.int32)
    bl_ids = []
    for i in range(n_items):
        bl_ids.extend(by_last[i])
        bl_off[i + 1] = len(bl_ids)
    return t_off, t_idx, bl_off, np.asarray(bl_ids, dtype=np.int32)


def _search_py(c, n, t_off, t_idx, bl_off, bl_ids, prefix, colors):
    plen = len(prefix)
    choice = [0] * n
    maxc = [0] * n
    pos = 0
    while pos >= 0:
        if pos < plen:
            lo = hi = int(prefix[pos])
        else:
            lo = 0
            hi = min(c - 1, (maxc[pos - 1] if pos else -1) + 1)
        if choice[pos] < lo:
            choice[pos] = lo
        if choice[pos] > hi:
            pos -= 1
            if pos >= 0:
                choice[pos] += 1
            continue
        col = choice[pos]
        colors[pos] = col
        prev = maxc[pos - 1] if pos else -1
        maxc[pos] = col if col > prev else prev
        pruned = False
        for k in range(bl_off[pos], bl_off[pos + 1]):
            ti = bl_ids[k]
            base = colors[t_idx[t_off[ti]]]
            mono = True
            for j in range(t_off[ti] + 1, t_off[ti + 1]):
                if colors[t_idx[j]] != base:
                    mono = False
                    break
            if mono:
                pruned = True
                break
        if pruned:
            choice[pos] += 1
            continue
        if pos == n - 1:
            return True
        pos += 1
        choice[pos] = 0
    return False


if HAS_NUMBA:

    @njit(cache=True, nogil=True)
    def _search_nb(c, n, t_off, t_idx, bl_off, bl_ids, prefix, colors):  # pragma: no cover - jitted
        plen = prefix.shape[0]
        choice = np.zeros(n, dtype=np.int8)
        maxc = np.zeros(n, dtype=np.int8)
        pos = 0
        while pos >= 0:
            if pos < plen:
                lo = prefix[pos]
                hi = prefix[pos]
            else:
                lo = 0
                prev = maxc[pos - 1] if pos > 0 else np.int8(-1)
                hi = prev + 1
                if hi > c - 1:
                    hi = c - 1
            if choice[pos] < lo:
                choice[pos] = lo
            if choice[pos] > hi:
                pos -= 1
                if pos >= 0:
                    choice[pos] += 1
                continue
            col = choice[pos]
            colors[pos] = col
            prev = maxc[pos - 1] if pos > 0 else np.int8(-1)
            maxc[pos] = col if col > prev else prev
            pruned = False
            for k in range(bl_off[pos], bl_off[pos + 1]):
                ti = bl_ids[k]
                base = colors[t_idx[t_off[ti]]]
                mono = True
                for j in range(t_off[ti] + 1, t_off[ti + 1]):
                    if colors[t_idx[j]] != base:
                        mono = False
                        break
                if mono:
                    pruned = True
                    break
            if pruned:
                choice[pos] += 1
                continue
            if pos == n - 1:
                return True
            pos += 1
            choice[pos] = 0
        return False


def backend_name():
    return "numba" if HAS_NUMBA else "pure-python"


def find_counterexample(c, n_items, targets, prefix=()):
    """Search for a c-coloring of 0..n_items-1 with no monochromatic target.

    Returns the coloring as a list, or None when every coloring (consistent
    with ``prefix`` on its first positions) makes some target monochromatic.
    Targets must be nonempty; an empty target would be monochromatic under
    every coloring, so callers short-circuit that case.
    """
    if n_items == 0:
        return [] if targets is not None and len(targets) == 0 else None
    if len(targets) == 0:
        return [0] * n_items
    t_off, t_idx, bl_off, bl_ids = pack_targets(n_items, targets)
    colors = np.zeros(n_items, dtype=np.int8)
    pre = np.asarray(list(prefix), dtype=np.int8)
    fn = _search_nb if HAS_NUMBA else _search_py
    found = fn(c, n_items, t_off, t_idx, bl_off, bl_ids, pre, colors)
    return [int(x) for x in colors] if found else None
