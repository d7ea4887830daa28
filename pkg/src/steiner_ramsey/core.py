"""Hypergraph types, Steiner predicates, copy enumeration, and the
F-Ramsey classifier.

Conventions used throughout the library:

- Vertices are non-negative integers.  An *ordered* system is ordered by the
  numeric order of its vertex ids; ordered isomorphism is therefore decided
  by the unique monotone bijection.
- Edges and copy images are ``frozenset`` values, so systems are hashable
  and safe to share between threads.
- A "copy" of a pattern is identified by its image subsystem.  For
  unordered patterns with automorphisms, one canonical embedding (the
  lexicographically least valid map) represents the copy; colorings in this
  library always color image subsystems, never individual embeddings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .errors import (
    EdgeArityError,
    NonInjectiveMap,
    ParameterMismatch,
    RangeError,
    SizeLimitExceeded,
    SteinerViolation,
)

KIND_INDUCED = "induced"
KIND_STRONG = "strong"
KIND_SEMI = "semi"

COPY_KINDS = (KIND_INDUCED, KIND_STRONG, KIND_SEMI)

#: Default vertex cap for exhaustive permutation searches.
ISO_SEARCH_BOUND = 10


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph; no Steiner condition is imposed."""

    r: int
    vertices: frozenset
    edges: frozenset

    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def num_edges(self):
        return len(self.edges)

    def sorted_vertices(self):
        return sorted(self.vertices)

    def sorted_edges(self):
        return sorted(sorted(e) for e in self.edges)

    def edges_within(self, subset):
        subset = frozenset(subset)
        return frozenset(e for e in self.edges if e <= subset)

    def restrict(self, subset):
        """Induced subhypergraph on ``subset``."""
        subset = frozenset(subset)
        return Hypergraph(self.r, subset, self.edges_within(subset))

    def relabel(self, mapping):
        verts = frozenset(mapping[v] for v in self.vertices)
        if len(verts) != len(self.vertices):
            raise NonInjectiveMap("relabeling map is not injective")
        edges = frozenset(frozenset(mapping[v] for v in e) for e in self.edges)
        return Hypergraph(self.r, verts, edges)


@dataclass(frozen=True)
class SteinerSystem:
    """An r-uniform hypergraph in which every t-set lies in at most one edge.

    Instances should be produced through :func:`validate_steiner`; direct
    construction skips the invariant checks.
    """

    r: int
    t: int
    vertices: frozenset
    edges: frozenset

    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def num_edges(self):
        return len(self.edges)

    def sorted_vertices(self):
        return sorted(self.vertices)

    def sorted_edges(self):
        return sorted(sorted(e) for e in self.edges)

    def edges_within(self, subset):
        subset = frozenset(subset)
        return frozenset(e for e in self.edges if e <= subset)

    def restrict(self, subset):
        """Induced subsystem on ``subset`` (always Steiner again)."""
        subset = frozenset(subset)
        return SteinerSystem(self.r, self.t, subset, self.edges_within(subset))

    def relabel(self, mapping):
        verts = frozenset(mapping[v] for v in self.vertices)
        if len(verts) != len(self.vertices):
            raise NonInjectiveMap("relabeling map is not injective")
        edges = frozenset(frozenset(mapping[v] for v in e) for e in self.edges)
        return SteinerSystem(self.r, self.t, verts, edges)

    def relabel_dense(self):
        """Relabel vertices to 0..n-1 preserving numeric order.

        Returns the relabeled system and the old-to-new map.
        """
        mapping = {v: i for i, v in enumerate(self.sorted_vertices())}
        return self.relabel(mapping), mapping

    def as_hypergraph(self):
        return Hypergraph(self.r, self.vertices, self.edges)


@dataclass(frozen=True)
class OrderedSteinerSystem:
    """A Steiner system with its vertices ordered by their numeric ids."""

    base: SteinerSystem

    @property
    def r(self):
        return self.base.r

    @property
    def t(self):
        return self.base.t

    @property
    def vertices(self):
        return self.base.vertices

    @property
    def edges(self):
        return self.base.edges

    @property
    def num_vertices(self):
        return self.base.num_vertices

    def order(self):
        return self.base.sorted_vertices()


@dataclass(frozen=True)
class CopyEmbedding:
    """An injective map realizing a copy of ``pattern`` inside some host.

    ``mapping`` is a tuple of (pattern vertex, host vertex) pairs sorted by
    pattern vertex.  ``kind`` is one of "induced", "strong", "semi".
    """

    pattern: object
    mapping: tuple
    kind: str
    ordered: bool

    @property
    def image(self):
        return frozenset(h for _, h in self.mapping)

    def as_dict(self):
        return dict(self.mapping)

    def apply(self, vertex):
        return dict(self.mapping)[vertex]

    def apply_set(self, subset):
        m = dict(self.mapping)
        return frozenset(m[v] for v in subset)


@dataclass(frozen=True)
class ClassTag:
    """One of the four Steiner classes: weak/strong x unordered/ordered."""

    ordered: bool
    strong: bool

    @property
    def token(self):
        return ("S" + ("b" if self.strong else "")) + ("<" if self.ordered else "")

    def describe(self):
        a = "strong" if self.strong else "weak"
        b = "ordered" if self.ordered else "unordered"
        return f"{a} {b}"


CLASS_WEAK_UNORDERED = ClassTag(ordered=False, strong=False)
CLASS_WEAK_ORDERED = ClassTag(ordered=True, strong=False)
CLASS_STRONG_UNORDERED = ClassTag(ordered=False, strong=True)
CLASS_STRONG_ORDERED = ClassTag(ordered=True, strong=True)

ALL_CLASSES = (
    CLASS_WEAK_UNORDERED,
    CLASS_WEAK_ORDERED,
    CLASS_STRONG_UNORDERED,
    CLASS_STRONG_ORDERED,
)

_CLASS_ALIASES = {
    "S": CLASS_WEAK_UNORDERED,
    "S<": CLASS_WEAK_ORDERED,
    "S◀": CLASS_STRONG_UNORDERED,
    "S◀<": CLASS_STRONG_ORDERED,
    "Sb": CLASS_STRONG_UNORDERED,
    "Sb<": CLASS_STRONG_ORDERED,
}


def parse_class_tag(token):
    try:
        return _CLASS_ALIASES[token]
    except KeyError:
        raise RangeError(
            f"unknown class token {token!r}; expected one of "
            + ", ".join(sorted(_CLASS_ALIASES))
        ) from None


def validate_steiner(raw, r, t):
    """Validate an r-uniform hypergraph as a Steiner (r, t)-system.

    ``raw`` may be a Hypergraph, a SteinerSystem, or a pair
    (vertices, edges).  Raises RangeError, EdgeArityError, or
    SteinerViolation; on success returns a SteinerSystem.
    """
    if not (2 <= t <= r):
        raise RangeError(f"need 2 <= t <= r, got r={r}, t={t}")
    if isinstance(raw, (Hypergraph, SteinerSystem)):
        vertices, edges = raw.vertices, raw.edges
    else:
        vertices, edges = raw
    vertices = frozenset(vertices)
    edges = frozenset(frozenset(e) for e in edges)
    for e in edges:
        if len(e) != r or not e <= vertices:
            raise EdgeArityError(e, r)
    ordered_edges = sorted(edges, key=sorted)
    for i, e1 in enumerate(ordered_edges):
        for e2 in ordered_edges[i + 1 :]:
            if len(e1 & e2) >= t:
                raise SteinerViolation(e1, e2, t)
    return SteinerSystem(r, t, vertices, edges)


def is_steiner(raw, r, t):
    """Boolean companion of :func:`validate_steiner`."""
    try:
        validate_steiner(raw, r, t)
        return True
    except (RangeError, EdgeArityError, SteinerViolation):
        return False


def _check_map(g, h, mapping):
    mapping = dict(mapping)
    if set(mapping) != set(g.vertices):
        raise NonInjectiveMap("witness map does not cover the pattern vertex set")
    if len(set(mapping.values())) != len(mapping):
        raise NonInjectiveMap("witness map repeats a host vertex")
    if not set(mapping.values()) <= set(h.vertices):
        raise NonInjectiveMap("witness map leaves the host vertex set")
    return mapping


def is_induced(g, h, mapping):
    """True iff ``mapping`` realizes g as an induced subsystem of h.

    The image edge set must equal exactly the host edges inside the image.
    """
    m = _check_map(g, h, mapping)
    image = frozenset(m.values())
    mapped = frozenset(frozenset(m[v] for v in e) for e in g.edges)
    return mapped == h.edges_within(image)


def is_semi(g, h, mapping):
    """True iff ``mapping`` sends every pattern edge to a host edge."""
    m = _check_map(g, h, mapping)
    return all(frozenset(m[v] for v in e) in h.edges for e in g.edges)


def is_strongly_induced(g, h, mapping):
    """True iff g is induced via ``mapping`` and every host edge outside the
    image meets it in fewer than t vertices.

    For r = t this coincides with is_induced: an external edge meeting the
    image in >= t = r vertices would lie inside the image.
    """
    if not is_induced(g, h, mapping):
        return False
    t = getattr(g, "t", None)
    if t is None:
        t = getattr(h, "t", None)
    if t is None:
        raise ParameterMismatch("strong inducedness needs a Steiner parameter t")
    m = dict(mapping)
    image = frozenset(m.values())
    image_edges = frozenset(frozenset(m[v] for v in e) for e in g.edges)
    for e in h.edges:
        if e in image_edges:
            continue
        if len(e & image) >= t:
            return False
    return True


def check_kind(g, h, mapping, kind):
    if kind == KIND_INDUCED:
        return is_induced(g, h, mapping)
    if kind == KIND_STRONG:
        return is_strongly_induced(g, h, mapping)
    if kind == KIND_SEMI:
        return is_semi(g, h, mapping)
    raise RangeError(f"unknown copy kind {kind!r}")


def _compatible(pattern, host):
    if pattern.r != host.r:
        raise ParameterMismatch(
            f"pattern has r={pattern.r} but host has r={host.r}"
        )
    pt, ht = getattr(pattern, "t", None), getattr(host, "t", None)
    if pt is not None and ht is not None and pt != ht:
        raise ParameterMismatch(f"pattern has t={pt} but host has t={ht}")


def _embeddings(pattern, host, kind, ordered, anchor_images=None):
    """Backtracking enumeration of all kind-embeddings, pattern order fixed.

    ``anchor_images`` optionally restricts the host image of the first
    pattern vertex; callers may split this set into ranges to parallelize.
    """
    pverts = sorted(pattern.vertices)
    hverts = sorted(host.vertices)
    if not pverts:
        yield ()
        return
    pedges = [frozenset(e) for e in pattern.edges]
    host_edges = host.edges
    # pattern edges fully determined once their last-placed vertex is mapped
    edges_by_last = {v: [] for v in pverts}
    pos = {v: i for i, v in enumerate(pverts)}
    for e in pedges:
        last = max(e, key=lambda v: pos[v])
        edges_by_last[last].append(e)

    anchors = None if anchor_images is None else frozenset(anchor_images)
    assignment = {}
    used = set()

    def candidates(i):
        v = pverts[i]
        if ordered:
            # monotone: image must exceed the previous image and leave room
            lo = assignment[pverts[i - 1]] if i else -1
            room = len(pverts) - i - 1
            for hv in hverts:
                if hv <= lo or hv in used:
                    continue
                if len([u for u in hverts if u > hv]) < room:
                    break
                yield hv
        else:
            for hv in hverts:
                if hv not in used:
                    yield hv

    def rec(i):
        if i == len(pverts):
            yield tuple((v, assignment[v]) for v in pverts)
            return
        v = pverts[i]
        for hv in candidates(i):
            if i == 0 and anchors is not None and hv not in anchors:
                continue
            assignment[v] = hv
            used.add(hv)
            ok = True
            for e in edges_by_last[v]:
                if frozenset(assignment[u] for u in e) not in host_edges:
                    ok = False
                    break
            if ok:
                yield from rec(i + 1)
            used.discard(hv)
            del assignment[v]

    yield from rec(0)


def enumerate_copies(pattern, host, kind=KIND_INDUCED, ordered=False,
                     anchor_images=None):
    """All copies of ``pattern`` in ``host`` of the requested kind.

    Copies are deduplicated by image: ordered enumeration yields the unique
    monotone embedding per image, unordered enumeration the
    lexicographically least valid embedding per image subsystem.  Output is
    sorted by image vertex set, so it is deterministic.
    """
    _compatible(pattern, host)
    by_image = {}
    for raw in _embeddings(pattern, host, kind, ordered, anchor_images):
        m = dict(raw)
        image = frozenset(m.values())
        if not _post_check(pattern, host, m, kind):
            continue
        key = image
        if key not in by_image or raw < by_image[key]:
            by_image[key] = raw
    out = [
        CopyEmbedding(pattern, mapping, kind, ordered)
        for mapping in by_image.values()
    ]
    out.sort(key=lambda c: sorted(c.image))
    return tuple(out)


def _post_check(pattern, host, m, kind):
    # edge->edge consistency was enforced during the search; finish the
    # induced / strong conditions on the completed image.
    image = frozenset(m.values())
    if kind == KIND_SEMI:
        return True
    mapped = frozenset(frozenset(m[v] for v in e) for e in pattern.edges)
    inside = host.edges_within(image)
    if mapped != inside:
        return False
    if kind == KIND_INDUCED:
        return True
    t = getattr(pattern, "t", None) or getattr(host, "t", None)
    if t is None:
        raise ParameterMismatch("strong enumeration needs a Steiner parameter t")
    for e in host.edges:
        if e in inside:
            continue
        if len(e & image) >= t:
            return False
    return True


def copy_images(pattern, host, kind=KIND_INDUCED, ordered=False):
    """Image sets of :func:`enumerate_copies` (frozen, deterministic order)."""
    return tuple(c.image for c in enumerate_copies(pattern, host, kind, ordered))


def strong_trace_ok(host, image, t):
    """No host edge outside ``image`` meets it in t or more vertices.

    Together with inducedness of the subsystem on ``image`` this is exactly
    strong inducedness, without needing an explicit embedding.
    """
    image = frozenset(image)
    for e in host.edges:
        if not e <= image and len(e & image) >= t:
            return False
    return True


def are_isomorphic(a, b, ordered=False, bound=ISO_SEARCH_BOUND):
    """Return an isomorphism a -> b as a dict, or None.

    Ordered systems are compared via the unique monotone bijection.
    Unordered comparison is an exhaustive permutation search with degree
    pruning, guarded by ``bound`` on the vertex count.
    """
    if a.r != b.r:
        return None
    at, bt = getattr(a, "t", None), getattr(b, "t", None)
    if at is not None and bt is not None and at != bt:
        return None
    if a.num_vertices != b.num_vertices or a.num_edges != b.num_edges:
        return None
    if ordered:
        mapping = dict(zip(a.sorted_vertices(), b.sorted_vertices()))
        mapped = frozenset(frozenset(mapping[v] for v in e) for e in a.edges)
        return mapping if mapped == b.edges else None
    if a.num_vertices > bound:
        raise SizeLimitExceeded(
            f"unordered isomorphism search beyond {bound} vertices",
            requested=a.num_vertices,
            cap=bound,
        )

    def degmap(h):
        d = {v: 0 for v in h.vertices}
        for e in h.edges:
            for v in e:
                d[v] += 1
        return d

    da, db = degmap(a), degmap(b)
    if sorted(da.values()) != sorted(db.values()):
        return None
    averts = sorted(a.vertices, key=lambda v: (-da[v], v))
    bverts = sorted(b.vertices)
    aedges = [frozenset(e) for e in a.edges]
    pos = {v: i for i, v in enumerate(averts)}
    edges_by_last = {v: [] for v in averts}
    for e in aedges:
        last = max(e, key=lambda v: pos[v])
        edges_by_last[last].append(e)
    assignment = {}
    used = set()

    def rec(i):
        if i == len(averts):
            mapped = frozenset(
                frozenset(assignment[v] for v in e) for e in a.edges
            )
            return dict(assignment) if mapped == b.edges else None
        v = averts[i]
        for w in bverts:
            if w in used or db[w] != da[v]:
                continue
            assignment[v] = w
            used.add(w)
            if all(
                frozenset(assignment[u] for u in e) in b.edges
                for e in edges_by_last[v]
            ):
                res = rec(i + 1)
                if res is not None:
                    return res
            used.discard(w)
            del assignment[v]
        return None

    return rec(0)


def is_homogeneous(f):
    """True iff every permutation of V(f) induces an automorphism.

    The edge-preserving permutations form a subgroup of the symmetric
    group, so it suffices to check the transpositions, which generate it.
    Equivalently, f is homogeneous iff it is edgeless or has every r-subset
    as an edge; both characterizations are exercised by the test suite.
    """
    verts = f.sorted_vertices()
    for i, u in enumerate(verts):
        for w in verts[i + 1 :]:
            swap = {v: v for v in verts}
            swap[u], swap[w] = w, u
            for e in f.edges:
                if frozenset(swap[v] for v in e) not in f.edges:
                    return False
    return True


def is_complete(f):
    """True iff every t-subset of V(f) lies in some edge.

    Systems with fewer than t vertices are complete vacuously.
    """
    for x in itertools.combinations(f.sorted_vertices(), f.t):
        if not any(frozenset(x) <= e for e in f.edges):
            return False
    return True


@dataclass(frozen=True)
class RamseyStatus:
    has_property: bool
    reason: str
    failed_clause: Optional[str]


def f_ramsey_status(class_tag, f):
    """Decide whether the given Steiner class has the F-Ramsey property.

    Two conditions are both necessary and sufficient:
    homogeneity of F for the unordered classes, and completeness of F for
    the weak classes when t < r.  The strong ordered class passes every F.
    """
    failures = []
    notes = []
    if not class_tag.ordered:
        if is_homogeneous(f):
            notes.append("F is homogeneous")
        else:
            failures.append(
                ("homogeneity", "unordered class requires a homogeneous F")
            )
    if not class_tag.strong and f.t < f.r:
        if is_complete(f):
            notes.append("F is a complete Steiner system")
        else:
            failures.append(
                ("completeness", "weak class with t < r requires a complete F")
            )
    if failures:
        clause, msg = failures[0]
        return RamseyStatus(False, msg, clause)
    if not notes:
        notes.append("no clause applies to this class")
    return RamseyStatus(True, "; ".join(notes), None)
