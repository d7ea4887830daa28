"""Ground-truth brute-force verifier for partition arrows.

Every [verified] flag elsewhere in the library is backed either by a
decided Hales-Jewett number or by a verdict from this module.  Verdicts are
computed by pruned depth-first search over colorings (see ``_kernel``) and
are independent of the enumeration order of the copy family.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from . import core
from ._kernel import find_counterexample
from .errors import SizeLimitExceeded

#: Largest copy family exhausted by default (c = 2 keeps this ~16M colorings
#: before pruning; in practice pruning cuts almost all of them).
DEFAULT_MAX_COPIES = 24


@dataclass(frozen=True)
class Verdict:
    """Outcome of an arrow check.

    ``family`` lists the colored copies (image sets, deterministic order);
    ``counterexample`` maps family index -> color when the arrow fails.
    """

    holds: bool
    family: tuple
    counterexample: Optional[tuple]

    def counterexample_by_image(self):
        if self.counterexample is None:
            return None
        return {img: col for img, col in zip(self.family, self.counterexample)}


def _canonical_prefixes(c, depth):
    """All canonical color prefixes of the given depth (first color is 0)."""
    out = [()]
    for _ in range(depth):
        nxt = []
        for p in out:
            hi = min(c - 1, (max(p) if p else -1) + 1)
            for col in range(hi + 1):
                nxt.append(p + (col,))
        out = nxt
    return out


def _search(c, n_items, targets, jobs=1):
    if jobs <= 1 or n_items < 4:
        return find_counterexample(c, n_items, targets)
    depth = 1
    while c ** depth < 4 * jobs and depth < n_items - 1:
        depth += 1
    prefixes = _canonical_prefixes(c, depth)
    results = [None] * len(prefixes)

    def run(i):
        results[i] = find_counterexample(c, n_items, targets, prefixes[i])

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        list(pool.map(run, range(len(prefixes))))
    for res in results:  # first prefix wins: deterministic output
        if res is not None:
            return res
    return None


def check_family_arrow(family, targets, c, jobs=1, max_copies=DEFAULT_MAX_COPIES):
    """Decide: does every c-coloring of ``family`` make some target mono?

    ``family`` is a sequence of hashable copy ids (images).  ``targets`` are
    iterables of family members; an empty target is monochromatic under
    every coloring, so any empty target makes the arrow hold trivially.
    """
    family = tuple(family)
    if len(family) > max_copies:
        raise SizeLimitExceeded(
            f"copy family of size {len(family)} exceeds cap {max_copies}",
            requested=len(family),
            cap=max_copies,
        )
    index = {img: i for i, img in enumerate(family)}
    idx_targets = []
    for tgt in targets:
        tgt = tuple(tgt)
        if len(tgt) == 0:
            return Verdict(True, family, None)
        idx_targets.append(tuple(index[m] for m in tgt))
    cex = _search(c, len(family), idx_targets, jobs=jobs)
    if cex is None:
        return Verdict(True, family, None)
    return Verdict(False, family, tuple(cex))


def arrows(host, target, pattern, c, kind_target=core.KIND_INDUCED,
           kind_pattern=core.KIND_INDUCED, ordered=False, jobs=1,
           max_copies=DEFAULT_MAX_COPIES):
    """Exhaustively decide host -> (target)^pattern_c.

    The colored family is the set of pattern copies of ``kind_pattern`` in
    the host; for each target copy the monochromatic requirement ranges over
    the pattern copies of the target *subsystem* (subobject semantics, so
    for kind "strong" the external-edge condition is taken relative to the
    target copy, not the host).
    """
    family_copies = core.enumerate_copies(pattern, host, kind_pattern, ordered)
    family = tuple(c0.image for c0 in family_copies)
    if len(family) > max_copies:
        raise SizeLimitExceeded(
            f"pattern family of size {len(family)} exceeds cap {max_copies}",
            requested=len(family),
            cap=max_copies,
        )
    index = {img: i for i, img in enumerate(family)}
    targets = []
    for gcopy in core.enumerate_copies(target, host, kind_target, ordered):
        sub = host.restrict(gcopy.image)
        inner = core.enumerate_copies(pattern, sub, kind_pattern, ordered)
        # subobject transitivity puts inner copies in the host family when
        # both kinds come from one class; mixed-kind calls only color the
        # members that the host family actually contains
        targets.append(tuple(ic.image for ic in inner if ic.image in index))
    if not targets:
        return Verdict(False, family, tuple([0] * len(family)))
    return check_family_arrow(family, targets, c, jobs=jobs, max_copies=max_copies)


def arrows_system(family, member_families, c, jobs=1,
                  max_copies=DEFAULT_MAX_COPIES):
    """Decide a system arrow: every c-coloring of ``family`` leaves some
    member's distinguished subfamily monochromatic.

    This is the form used by prelim/clean/theorem witnesses, where
    ``family`` plays the role of the host's distinguished copies and each
    member contributes the trace of its own copies.
    """
    member_families = [tuple(m) for m in member_families]
    if not member_families:
        fam = tuple(family)
        return Verdict(False, fam, tuple([0] * len(fam)))
    return check_family_arrow(family, member_families, c, jobs=jobs,
                              max_copies=max_copies)


def verify_counterexample(family, targets, coloring):
    """Independent re-check that ``coloring`` leaves no target mono."""
    colors = dict(zip(family, coloring))
    for tgt in targets:
        seen = {colors[m] for m in tgt}
        if len(seen) <= 1:
            return False
    return True


def exhaustive_colorings(n, c):
    """All c-colorings of range(n); intended for tiny independent checks."""
    return itertools.product(range(c), repeat=n)
