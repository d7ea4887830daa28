"""The n-th power construction of an F-hypergraph and its line copies.

Given an F-hypergraph (X, Q) and c colors, the witness consists of the
power system Y (classes are n-th Cartesian powers, edges the crossing
r-sets whose n projections are all X-edges), the copy family R indexed by
Q^n, and one strongly induced copy of (X, Q) per combinatorial line of the
cube over alphabet Q.  Every n-coordinate vertex is rank-encoded to a dense
integer (mixed radix over class-local vertex indices); the rank map is kept
on the witness for traceability.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import core, halesjewett, oracle
from .core import SteinerSystem
from .errors import (
    ArrowRefuted,
    DimensionMismatch,
    PropertyIIViolation,
    SizeLimitExceeded,
)
from .partite import (
    FHypergraph,
    PartiteSystem,
    validate_fhypergraph,
    validate_partite,
)

MODE_VERIFIED = "verified-arrow"
MODE_ASSUMED = "assumed-arrow"

DEFAULT_MAX_VERTICES = 10_000
DEFAULT_HJ_BOUND = 3


@dataclass(frozen=True)
class LineCopy:
    """One combinatorial line realized as an embedding of (X, Q) into Y."""

    line: halesjewett.Line
    mapping: tuple  # ((x_vertex, y_vertex), ...) sorted
    trace: frozenset  # the copies lambda(eta(Q)) for Q in the alphabet

    @property
    def image(self):
        return frozenset(w for _, w in self.mapping)

    def as_dict(self):
        return dict(self.mapping)


@dataclass(frozen=True)
class PowerWitness:
    input: FHypergraph
    n: int
    output: FHypergraph
    lam: tuple  # ((copy_sequence, image), ...) in lexicographic order
    lines: tuple  # of LineCopy
    mode: str
    provenance: str
    rank_map: tuple  # ((dense_id, class_index, coordinate_tuple), ...)

    def alphabet(self):
        return tuple(sorted(self.input.q, key=sorted))

    def family(self):
        """The copy family R in its fixed enumeration order."""
        return tuple(img for _, img in self.lam)


def _copy_class_vertex(x: PartiteSystem, image, class_index):
    cm = x.class_of()
    for v in image:
        if cm[v] == class_index:
            return v
    raise DimensionMismatch(f"copy {sorted(image)} misses class {class_index}")


class _PowerEncoding:
    """Dense ids for class-local coordinate tuples."""

    def __init__(self, x: PartiteSystem, n):
        self.n = n
        self.class_locals = [sorted(cls) for cls in x.classes]
        self.offsets = []
        off = 0
        for loc in self.class_locals:
            self.offsets.append(off)
            off += len(loc) ** n if loc else 0
        self.total = off

    def encode(self, class_index, coords):
        loc = self.class_locals[class_index]
        pos = {v: i for i, v in enumerate(loc)}
        val = 0
        for v in coords:
            val = val * len(loc) + pos[v]
        return self.offsets[class_index] + val

    def rank_map(self):
        out = []
        for i, loc in enumerate(self.class_locals):
            for coords in itertools.product(loc, repeat=self.n):
                out.append((self.encode(i, coords), i, coords))
        return tuple(out)


def build_power_system(x: FHypergraph, n, max_vertices=DEFAULT_MAX_VERTICES):
    """The power F-hypergraph (Y, R) together with lambda and the encoding.

    Steinerness of Y is re-validated from scratch rather than trusted, and
    the output passes the full F-hypergraph validator.
    """
    if n < 1:
        raise DimensionMismatch("power dimension must be >= 1")
    enc = _PowerEncoding(x.x, n)
    if enc.total > max_vertices:
        raise SizeLimitExceeded(
            f"power system would have {enc.total} vertices",
            requested=enc.total,
            cap=max_vertices,
        )
    k = x.k
    classes = [set() for _ in range(k)]
    for i, loc in enumerate(enc.class_locals):
        for coords in itertools.product(loc, repeat=n):
            classes[i].add(enc.encode(i, coords))
    cm = x.x.class_of()
    edges_by_projection = {}
    for e in x.x.base.edges:
        j = frozenset(cm[v] for v in e)
        edges_by_projection.setdefault(j, []).append(e)
    edges = set()
    for j, group in edges_by_projection.items():
        jlist = sorted(j)
        for seq in itertools.product(group, repeat=n):
            edge = set()
            for i in jlist:
                coords = tuple(_copy_class_vertex_in_edge(eh, cm, i) for eh in seq)
                edge.add(enc.encode(i, coords))
            edges.add(frozenset(edge))
    vertices = frozenset(v for cls in classes for v in cls)
    base = core.validate_steiner((vertices, edges), x.x.r, x.x.t)
    y = validate_partite(base, classes)
    alphabet = tuple(sorted(x.q, key=sorted))
    lam = []
    for seq in itertools.product(alphabet, repeat=n):
        image = frozenset(
            enc.encode(
                i, tuple(_copy_class_vertex(x.x, f, i) for f in seq)
            )
            for i in range(k)
        )
        lam.append((seq, image))
    family = frozenset(img for _, img in lam)
    if len(family) != len(lam):
        raise PropertyIIViolation("lambda is not injective")
    output = validate_fhypergraph(x.f, y, family)
    return output, tuple(lam), enc


def _copy_class_vertex_in_edge(edge, class_map, class_index):
    for v in edge:
        if class_map[v] == class_index:
            return v
    raise DimensionMismatch("edge misses a projected class")


def build_line_copy(x: FHypergraph, output: FHypergraph, lam, enc, line):
    """Realize one line (C, g) as an embedding of (X, Q) into the power.

    Coordinate h of the image of v in class i is the class-i vertex of g(h)
    for constant h and v itself for moving h.
    """
    n = enc.n
    if line.n != n:
        raise DimensionMismatch("line dimension differs from the witness")
    fixed = dict(line.assignment)
    cm = x.x.class_of()
    mapping = []
    for v in sorted(x.x.vertices):
        i = cm[v]
        coords = tuple(
            _copy_class_vertex(x.x, fixed[h], i) if h in fixed else v
            for h in range(n)
        )
        mapping.append((v, enc.encode(i, coords)))
    lam_by_seq = dict(lam)
    alphabet = tuple(sorted(x.q, key=sorted))
    trace = frozenset(
        lam_by_seq[
            tuple(fixed[h] if h in fixed else q for h in range(n))
        ]
        for q in alphabet
    )
    return LineCopy(line, tuple(mapping), trace)


def check_line_strong_trace(x: FHypergraph, output: FHypergraph, line_copy):
    """Strong-trace property of a line copy: every Y-edge meeting the line
    image in >= t vertices is the image of an X-edge."""
    phi = line_copy.as_dict()
    image = line_copy.image
    mapped_edges = {frozenset(phi[v] for v in e) for e in x.x.base.edges}
    t = x.x.t
    for e in output.x.base.edges:
        if len(e & image) >= t and e not in mapped_edges:
            return False
    return True


def build_prelim_witness(x: FHypergraph, c, n=None, assume=False,
                         hj_bound=DEFAULT_HJ_BOUND,
                         max_vertices=DEFAULT_MAX_VERTICES,
                         max_copies=oracle.DEFAULT_MAX_COPIES,
                         jobs=1):
    """Power witness with the line system and a certified arrow.

    The dimension comes from one of three sources: a decided HJ number
    (arrow certified by the theorem), a caller-supplied ``n`` (arrow then
    verified a posteriori by the oracle), or caller-supplied ``n`` with
    ``assume=True`` which skips verification and marks the witness
    assumed-arrow.  Property (ii) of the witness is always checked.
    """
    if not x.q:
        identity = tuple((v, v) for v in sorted(x.x.vertices))
        witness = PowerWitness(
            input=x, n=0, output=x, lam=(),
            lines=(LineCopy(halesjewett.Line(1, ()), identity, frozenset()),),
            mode=MODE_VERIFIED,
            provenance="empty copy family: witness is the input itself",
            rank_map=(),
        )
        return witness
    provenance = None
    if n is None:
        if assume:
            raise DimensionMismatch("assume mode requires an explicit n")
        n = halesjewett.hj_number(len(x.q), c, hj_bound)
        if n is None:
            raise SizeLimitExceeded(
                f"HJ({len(x.q)}, {c}) undecided within bound {hj_bound}; "
                "supply n explicitly",
                cap=hj_bound,
            )
        provenance = f"n={n} from decided hj_number({len(x.q)}, {c})"
        mode = MODE_VERIFIED
    if len(x.q) ** n > max_copies and not assume:
        raise SizeLimitExceeded(
            f"copy family of size {len(x.q) ** n} exceeds cap {max_copies}",
            requested=len(x.q) ** n,
            cap=max_copies,
        )
    output, lam, enc = build_power_system(x, n, max_vertices=max_vertices)
    cube = halesjewett.HJCube(tuple(sorted(x.q, key=sorted)), n)
    lines = tuple(
        build_line_copy(x, output, lam, enc, line)
        for line in halesjewett.enumerate_lines(cube)
    )
    for lc in lines:
        if not _line_copy_valid(x, output, lc):
            raise PropertyIIViolation(
                f"line copy {lc.line} fails the strong-inducedness contract"
            )
    if provenance is None:
        if assume:
            mode = MODE_ASSUMED
            provenance = f"n={n} supplied, arrow assumed (not verified)"
        else:
            verdict = oracle.arrows_system(
                [img for _, img in lam],
                [sorted(lc.trace, key=sorted) for lc in lines],
                c, jobs=jobs, max_copies=max_copies,
            )
            if not verdict.holds:
                raise ArrowRefuted(
                    f"supplied n={n} does not certify the arrow",
                    coloring=verdict.counterexample_by_image(),
                )
            mode = MODE_VERIFIED
            provenance = f"n={n} supplied, arrow verified by oracle exhaustion"
    witness = PowerWitness(
        input=x, n=n, output=output, lam=lam, lines=lines,
        mode=mode, provenance=provenance, rank_map=enc.rank_map(),
    )
    ok, violation = verify_ppl_property_ii(witness)
    if not ok:
        raise PropertyIIViolation(
            "power witness violates property (ii)", triple=violation
        )
    return witness


def _line_copy_valid(x: FHypergraph, output: FHypergraph, lc):
    from .partite import fh_strongly_induced

    if not fh_strongly_induced(x, output, lc.mapping):
        return False
    return check_line_strong_trace(x, output, lc)


def verify_ppl_property_ii(witness: PowerWitness):
    """Check clause (ii): for every line copy, every member of the copy
    family, and every t-subset of their vertex intersection, some copy in
    the line's trace covers the subset.

    Returns (True, None) or (False, violating (line, member, t-set)).
    """
    if witness.n == 0:
        return True, None
    t = witness.input.x.t
    for lc in witness.lines:
        limage = lc.image
        for _, fimage in witness.lam:
            shared = limage & fimage
            if len(shared) < t:
                continue
            for xs in itertools.combinations(sorted(shared), t):
                xset = frozenset(xs)
                if not any(xset <= cov for cov in lc.trace):
                    return False, (lc.line, fimage, xset)
    return True, None


def witness_record(witness: PowerWitness):
    """Serializable summary of a power witness (maps as integer lists)."""
    from . import serialize

    def fh_record(fh):
        dense, m = fh.x.base.relabel_dense()
        classes = [sorted(m[v] for v in cls) for cls in fh.x.classes]
        rec = serialize.system_record(dense, classes)
        rec["copies"] = sorted(sorted(m[v] for v in img) for img in fh.q)
        return rec

    return {
        "format_version": serialize.FORMAT_VERSION,
        "kind": "power-witness",
        "n": witness.n,
        "mode": witness.mode,
        "provenance": witness.provenance,
        "input": fh_record(witness.input),
        "output": fh_record(witness.output),
        "lines": [
            {
                "constant": sorted(
                    (h, sorted(img)) for h, img in lc.line.assignment
                ),
                "embedding": [[v, w] for v, w in lc.mapping],
                "trace": sorted(sorted(img) for img in lc.trace),
            }
            for lc in witness.lines
        ],
    }
