"""k-partite Steiner systems, class projections, and F-hypergraphs.

An F-hypergraph pairs a k-partite Steiner system X with a set of crossing
strongly induced copies of a pattern F on vertex set {0..k-1}; every edge of
X must project onto an edge of F.  Class indices are 0-based internally and
1-based in serialized/human-readable output.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import core
from .core import SteinerSystem
from .errors import (
    CopyNotCrossing,
    CopyNotStrong,
    InputError,
    NonCrossingEdge,
    ParameterMismatch,
    ProjectionNotEdge,
)


@dataclass(frozen=True)
class PartiteSystem:
    """A Steiner system with a distinguished partition into k classes.

    Every edge must be crossing: at most one vertex per class.
    """

    base: SteinerSystem
    classes: tuple  # of frozenset

    @property
    def k(self):
        return len(self.classes)

    @property
    def vertices(self):
        return self.base.vertices

    @property
    def edges(self):
        return self.base.edges

    @property
    def r(self):
        return self.base.r

    @property
    def t(self):
        return self.base.t

    def class_of(self):
        out = {}
        for i, cls in enumerate(self.classes):
            for v in cls:
                out[v] = i
        return out

    def projection(self):
        return Projection(self, self.class_of())

    def project_set(self, subset):
        cm = self.class_of()
        return frozenset(cm[v] for v in subset)


@dataclass(frozen=True)
class Projection:
    """The map psi sending vertices of class i to i."""

    source: PartiteSystem
    map: dict

    def __call__(self, vertex):
        return self.map[vertex]

    def image(self, subset):
        return frozenset(self.map[v] for v in subset)


def validate_partite(base, classes):
    """Check that ``classes`` partition V(base) and all edges are crossing."""
    classes = tuple(frozenset(c) for c in classes)
    union = set()
    total = 0
    for cls in classes:
        union |= cls
        total += len(cls)
    if union != set(base.vertices) or total != len(base.vertices):
        raise InputError("classes do not partition the vertex set")
    ps = PartiteSystem(base, classes)
    cm = ps.class_of()
    for e in base.edges:
        hits = [cm[v] for v in e]
        if len(set(hits)) != len(hits):
            dup = next(i for i in hits if hits.count(i) > 1)
            raise NonCrossingEdge(e, dup)
    return ps


@dataclass(frozen=True)
class FHypergraph:
    """A pair (X, Q): k-partite Steiner X plus distinguished crossing
    strongly induced F-copies, with every X-edge projecting into E(F)."""

    f: SteinerSystem
    x: PartiteSystem
    q: frozenset  # of frozenset: copy images, one vertex per class

    @property
    def k(self):
        return self.x.k

    def sorted_q(self):
        return sorted(self.q, key=sorted)

    def copy_map(self, image):
        """The embedding V(F) -> image determined by the class structure."""
        cm = self.x.class_of()
        return {cm[v]: v for v in image}


def _is_crossing_copy(x: PartiteSystem, image):
    cm = x.class_of()
    hits = [cm[v] for v in image]
    return len(set(hits)) == len(hits)


def _projection_isomorphic(f, x: PartiteSystem, image):
    """Is psi restricted to ``image`` an isomorphism onto f?"""
    cm = x.class_of()
    m = {}
    for v in image:
        i = cm[v]
        if i in m:
            return False
        m[i] = v
    if set(m) != set(f.vertices):
        return False
    fwd = {v: i for i, v in m.items()}
    sub_edges = x.base.edges_within(image)
    proj = frozenset(frozenset(fwd[v] for v in e) for e in sub_edges)
    return proj == f.edges


def crossing_copies(x: PartiteSystem, f):
    """All strongly induced copies of f in x whose projection is an
    isomorphism onto f (one vertex per class)."""
    if set(f.vertices) != set(range(x.k)):
        raise ParameterMismatch(
            "pattern vertex set must be {0..k-1} matching the class count"
        )
    if (f.r, f.t) != (x.r, x.t):
        raise ParameterMismatch("pattern and partite system disagree on (r, t)")
    out = []
    for copy in core.enumerate_copies(f, x.base, core.KIND_STRONG, ordered=False):
        img = copy.image
        if _is_crossing_copy(x, img) and _projection_isomorphic(f, x, img):
            out.append(img)
    return tuple(sorted(out, key=sorted))


def validate_fhypergraph(f, x, q):
    """Validate the full F-hypergraph contract; returns the FHypergraph.

    Checks, in order: partite/Steiner structure of x, edges projecting into
    E(F), and each distinguished copy being crossing, projection-isomorphic
    to f, and strongly induced.
    """
    if not isinstance(x, PartiteSystem):
        raise InputError("x must be a PartiteSystem")
    validate_partite(x.base, x.classes)
    cm = x.class_of()
    for e in x.base.edges:
        proj = frozenset(cm[v] for v in e)
        if proj not in f.edges:
            raise ProjectionNotEdge(e, proj)
    q = frozenset(frozenset(c) for c in q)
    for img in sorted(q, key=sorted):
        if not _is_crossing_copy(x, img) or not _projection_isomorphic(f, x, img):
            raise CopyNotCrossing(img)
        m = {cm[v]: v for v in img}
        if not core.is_strongly_induced(f, x.base, m):
            raise CopyNotStrong(img)
    return FHypergraph(f, x, q)


def fh_strongly_induced(a: FHypergraph, b: FHypergraph, mapping):
    """Is (a.x, a.q) strongly induced in (b.x, b.q) under ``mapping``?

    Requires the underlying systems to satisfy X strongly-induced-in Y and
    the trace equation a.q = (image over F)^x_strong  intersect  b.q.
    """
    if a.f != b.f:
        raise ParameterMismatch("F-hypergraphs have different patterns")
    m = dict(mapping)
    acm, bcm = a.x.class_of(), b.x.class_of()
    for v, w in m.items():
        if acm[v] != bcm[w]:
            return False
    if not core.is_strongly_induced(a.x.base, b.x.base, m):
        return False
    image = frozenset(m.values())
    sub = b.x.base.restrict(image)
    sub_partite = PartiteSystem(sub, tuple(c & image for c in b.x.classes))
    image_cross_strong = set(crossing_copies(sub_partite, a.f))
    # strong copies of the subsystem are strong in b.x as well once the
    # subsystem is strongly induced, so the trace is well defined
    trace = image_cross_strong & set(b.q)
    mapped_q = {frozenset(m[v] for v in img) for img in a.q}
    return mapped_q == trace


def fhypergraph_from_disjoint_copies(f, count, t=None):
    """An F-hypergraph made of ``count`` disjoint crossing copies of f,
    one vertex per class; the standard small fixture."""
    k = f.num_vertices
    fverts = f.sorted_vertices()
    classes = [set() for _ in range(k)]
    edges = []
    vid = 0
    ids = {}
    for cnum in range(count):
        for i, fv in enumerate(fverts):
            ids[(cnum, fv)] = vid
            classes[i].add(vid)
            vid += 1
        for e in f.edges:
            edges.append(frozenset(ids[(cnum, v)] for v in e))
    base = core.validate_steiner((range(vid), edges), f.r, f.t)
    x = validate_partite(base, classes)
    q = frozenset(
        frozenset(ids[(cnum, v)] for v in fverts) for cnum in range(count)
    )
    relabeled = f.relabel({v: i for i, v in enumerate(fverts)})
    return validate_fhypergraph(relabeled, x, q)
