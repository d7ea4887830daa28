"""Counterexample colorings showing failure of the F-Ramsey property, and
the ordering-property search.

The ordered incomplete case colors a copy red exactly when it extends, with
itself in the designated role, to a copy of a one-edge extension pattern;
Steinerness makes the extending edge through the witness t-set unique, so
two extension patterns with different relative positions can never both
claim the same copy.  The unordered non-homogeneous case reduces to
coloring by inherited ordered version.  Both share ``verify_no_mono``.

The unordered weak incomplete case (the last negative ingredient) is the
same construction applied to an arbitrarily ordered host, so it shares
these operations rather than adding a third one.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Optional

from . import core
from .core import OrderedSteinerSystem, SteinerSystem, validate_steiner
from .errors import (
    NoTwoExtensions,
    PatternComplete,
    PatternHomogeneous,
    SearchInfeasible,
)

RED, BLUE = 0, 1


@dataclass(frozen=True)
class ExtensionPattern:
    """An ordered system obtained from the pattern by one new edge, with
    the original vertices designated.

    Two extension patterns count as isomorphic only when the monotone
    bijection also maps designated vertices onto designated vertices; the
    bare ordered systems may coincide (for example when the pattern is t
    isolated vertices) while the patterns differ.
    """

    system: SteinerSystem  # dense ordered
    f_positions: tuple  # positions of the original pattern vertices

    @property
    def new_positions(self):
        return tuple(
            p for p in range(self.system.num_vertices)
            if p not in set(self.f_positions)
        )

    def key(self):
        return (tuple(map(tuple, self.system.sorted_edges())), self.f_positions)


def uncovered_t_set(f):
    """Lexicographically first t-set not covered by any edge, or None."""
    for xs in itertools.combinations(f.sorted_vertices(), f.t):
        if not any(frozenset(xs) <= e for e in f.edges):
            return frozenset(xs)
    return None


def extension_patterns(f_ord: OrderedSteinerSystem, witness=None):
    """All distinct one-edge extension patterns of an incomplete pattern.

    The new edge goes through the witness t-set plus r - t fresh vertices;
    every way of interleaving the fresh vertices into the order is tried
    and the results are deduplicated as patterns.
    """
    f = f_ord.base
    if f.t >= f.r:
        raise PatternComplete("extensions need t < r")
    x = witness if witness is not None else uncovered_t_set(f)
    if x is None:
        raise PatternComplete("pattern is complete; nothing to extend")
    old = f.sorted_vertices()
    nv = f.r - f.t
    total = len(old) + nv
    seen = {}
    for new_pos in itertools.combinations(range(total), nv):
        new_pos = set(new_pos)
        mapping = {}
        it = iter(old)
        fresh = []
        for p in range(total):
            if p in new_pos:
                fresh.append(p)
            else:
                mapping[next(it)] = p
        edges = set(
            frozenset(mapping[v] for v in e) for e in f.edges
        )
        edges.add(frozenset(mapping[v] for v in x) | frozenset(fresh))
        system = validate_steiner((range(total), edges), f.r, f.t)
        pattern = ExtensionPattern(
            system,
            tuple(sorted(mapping[v] for v in old)),
        )
        seen.setdefault(pattern.key(), pattern)
    return x, tuple(seen[k] for k in sorted(seen))


def _pattern_copies(pattern: ExtensionPattern, host):
    """Images of the designated part over all ordered copies of the
    extension system in the host."""
    out = set()
    for copy in core.enumerate_copies(
        pattern.system, host, core.KIND_INDUCED, ordered=True
    ):
        m = copy.as_dict()
        out.add(frozenset(m[p] for p in pattern.f_positions))
    return out


def incomplete_coloring_ordered(f_ord: OrderedSteinerSystem,
                                h_ord: OrderedSteinerSystem):
    """Lemma-style 2-coloring blocking the disjoint union of two extension
    patterns.

    Returns (coloring by copy image, blocked target G, (F', F'')).  Red
    copies are those extending to the first pattern in the designated role;
    everything else, including copies extending only to the second pattern,
    is blue.
    """
    f, h = f_ord.base, h_ord.base
    if core.is_complete(f):
        raise PatternComplete("the pattern must be incomplete")
    x, patterns = extension_patterns(f_ord)
    if len(patterns) < 2:
        raise NoTwoExtensions(
            "fewer than two extension patterns exist; cannot occur for t < r"
        )
    first = next(
        p for p in patterns
        if p.f_positions == tuple(range(f.num_vertices))
    )
    last = next(
        p for p in patterns
        if p.f_positions
        == tuple(range(f.r - f.t, f.r - f.t + f.num_vertices))
    )
    red_images = _pattern_copies(first, h)
    coloring = {}
    for copy in core.enumerate_copies(f, h, core.KIND_INDUCED, ordered=True):
        coloring[copy.image] = RED if copy.image in red_images else BLUE
    target = disjoint_union_ordered(first.system, last.system)
    return coloring, target, (first, last)


def disjoint_union_ordered(a: SteinerSystem, b: SteinerSystem):
    """Ordered disjoint union: all of ``a`` before a shifted copy of ``b``."""
    shift = a.num_vertices
    verts = set(a.vertices) | {v + shift for v in b.vertices}
    edges = set(a.edges) | {
        frozenset(v + shift for v in e) for e in b.edges
    }
    return validate_steiner((verts, edges), a.r, a.t)


def ordered_versions(f):
    """The distinct ordered systems obtained by ordering V(f).

    There is exactly one iff f is homogeneous.
    """
    verts = f.sorted_vertices()
    seen = {}
    for perm in itertools.permutations(verts):
        mapping = {v: i for i, v in enumerate(perm)}
        sys = f.relabel(mapping)
        key = tuple(map(tuple, sys.sorted_edges()))
        seen.setdefault(key, sys)
    return tuple(seen[k] for k in sorted(seen))


def nonhomogeneous_coloring(f, h, budget=200, seed=0, verify_bound=8):
    """Prop-style 2-coloring for a non-homogeneous pattern.

    Colors each induced copy by its inherited ordered version (first
    version red, second blue, everything else blue) and returns the blocked
    target built from the ordering property of the two-version union.
    Raises SearchInfeasible when the ordering-property search fails, which
    is the expected outcome except at toy scale.
    """
    if core.is_homogeneous(f):
        raise PatternHomogeneous("the pattern must be non-homogeneous")
    versions = ordered_versions(f)
    first, second = versions[0], versions[1]
    k = disjoint_union_ordered(first, second)
    search = ordering_property_search(
        k, budget=budget, seed=seed, verify_bound=verify_bound
    )
    coloring = {}
    for copy in core.enumerate_copies(f, h, core.KIND_INDUCED, ordered=False):
        inherited = _inherited_version(h, copy.image)
        if inherited == first:
            coloring[copy.image] = RED
        elif inherited == second:
            coloring[copy.image] = BLUE
        else:
            coloring[copy.image] = BLUE
    return coloring, search, (first, second, k)


def _inherited_version(h, image):
    sub = h.restrict(image)
    mapping = {v: i for i, v in enumerate(sorted(image))}
    return sub.relabel(mapping)


@dataclass(frozen=True)
class OrderingCertificate:
    """Evidence for the ordering property of G with respect to K.

    ``exhaustive`` marks a full walk over every ordering of G; a sampled
    certificate is recorded but proves nothing.
    """

    g: SteinerSystem
    k: SteinerSystem
    exhaustive: bool
    orderings_checked: int
    versions: tuple
    seed: Optional[int]
    host_edges: Optional[tuple]


def probability_bound(m, n, e_h):
    """The union bound m * N! * ((m-1)/m)^{e_H} from the random insertion
    argument; existence is promised once it drops below one."""
    return m * math.factorial(n) * ((m - 1) / m) ** e_h


def greedy_linear_host(n, k):
    """A greedy maximal family of k-subsets of range(n) pairwise sharing at
    most one vertex: a Steiner (k, 2)-system host."""
    edges = []
    for cand in itertools.combinations(range(n), k):
        cset = frozenset(cand)
        if all(len(cset & e) <= 1 for e in edges):
            edges.append(cset)
    return validate_steiner((range(n), edges), k, 2)


def check_ordering_property(g, k, versions=None):
    """Exhaustively confirm: every ordering of g contains a strongly
    induced copy of every ordered version of k.  Returns the number of
    orderings walked (g must stay tiny)."""
    versions = versions if versions is not None else ordered_versions(k)
    count = 0
    for perm in itertools.permutations(g.sorted_vertices()):
        mapping = {v: i for i, v in enumerate(perm)}
        g_sigma = g.relabel(mapping)
        for kv in versions:
            found = core.enumerate_copies(
                kv, g_sigma, core.KIND_STRONG, ordered=True
            )
            if not found:
                return None
        count += 1
    return count


def ordering_property_search(k, budget=200, seed=0, verify_bound=8):
    """Find G such that every ordering of G contains every ordered version
    of K strongly induced.

    Homogeneous K: G = K immediately.  Otherwise: random insertion of
    ordered K-versions into the edges of a greedy linear host, certified by
    the exhaustive orderings walker; SearchInfeasible when the budget runs
    out (the probabilistic bound needs hosts far beyond desk scale).
    """
    versions = ordered_versions(k)
    if len(versions) == 1:
        checked = check_ordering_property(k, k, versions)
        if checked is None:
            raise SearchInfeasible("homogeneous certificate unexpectedly failed")
        return OrderingCertificate(
            g=k, k=k, exhaustive=True, orderings_checked=checked,
            versions=versions, seed=None, host_edges=None,
        )
    if k.num_vertices > 4:
        raise SearchInfeasible(
            f"ordering-property search supports v_K <= 4, got {k.num_vertices}"
        )
    rng = random.Random(seed)
    m = len(versions)
    for n in range(k.num_vertices, verify_bound + 1):
        host = greedy_linear_host(n, k.num_vertices)
        if not host.edges:
            continue
        for _ in range(budget):
            edges = set()
            for he in sorted(host.edges, key=sorted):
                version = versions[rng.randrange(m)]
                slot = sorted(he)
                for e in version.edges:
                    edges.add(frozenset(slot[p] for p in e))
            # insertions into a linear host cannot clash: distinct host
            # edges share at most one vertex, below any t
            g = validate_steiner((range(n), edges), k.r, k.t)
            checked = check_ordering_property(g, k, versions)
            if checked is not None:
                return OrderingCertificate(
                    g=g, k=k, exhaustive=True, orderings_checked=checked,
                    versions=versions, seed=seed,
                    host_edges=tuple(map(tuple, host.sorted_edges())),
                )
    raise SearchInfeasible(
        f"no ordering-property witness found within budget {budget} "
        f"and host bound {verify_bound}"
    )


def verify_no_mono(h, g, f, coloring, kind=core.KIND_INDUCED, ordered=False,
                   kind_pattern=core.KIND_INDUCED):
    """True iff no g-copy of the requested kind has a monochromatic
    pattern-copy family; otherwise (False, offending copy image).

    A g-copy without pattern copies counts as (vacuously) monochromatic,
    matching the oracle's reading of the partition symbol.
    """
    for gcopy in core.enumerate_copies(g, h, kind, ordered):
        sub = h.restrict(gcopy.image)
        inner = core.enumerate_copies(f, sub, kind_pattern, ordered)
        colors = {coloring[ic.image] for ic in inner}
        if len(colors) <= 1:
            return False, gcopy.image
    return True, None
