"""Pictures, picture zero, partite amalgamation, and monochromatic
extraction: the generic state machine of the partite construction.

A picture is an m-partite hypergraph over a host F-system (Y, R) with
V(Y) = {0..m-1}, a family S of crossing induced F-copies projecting into R,
and a family of good copies of the input system (X, Q), each
projection-isomorphic to a member of the semi-induced witness system.  The
hypergraphs here are not required to be Steiner; the applications in
``pipelines`` maintain and re-verify Steinerness separately.

Enumerations of R and of the witness members are fixed lexicographically by
image vertex set, so runs are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from . import core
from .core import Hypergraph, SteinerSystem
from .errors import (
    ArrowRefuted,
    IndexOutOfRange,
    InputError,
    NonCrossingEdge,
    ProjectionNotEdge,
    SizeLimitExceeded,
    WitnessShapeMismatch,
)

DEFAULT_MAX_PICTURE_VERTICES = 10_000
DEFAULT_MAX_WITNESS_COPIES = 5_000


@dataclass(frozen=True)
class FSystem:
    """A hypergraph with a distinguished family of induced F-copies."""

    f: SteinerSystem
    x: Hypergraph
    q: frozenset  # of frozenset: copy images

    def sorted_q(self):
        return sorted(self.q, key=sorted)

    def validate(self):
        for img in self.sorted_q():
            sub = self.x.restrict(img)
            if core.are_isomorphic(self.f, sub) is None:
                raise InputError(
                    f"distinguished copy on {sorted(img)} is not a copy of the pattern"
                )
        return self


@dataclass(frozen=True)
class PartiteFSystem:
    """A k-partite F-system; the shape of restrictions and witness hosts."""

    f: SteinerSystem
    classes: tuple  # of frozenset
    x: Hypergraph
    q: frozenset

    @property
    def k(self):
        return len(self.classes)

    def class_of(self):
        out = {}
        for i, cls in enumerate(self.classes):
            for v in cls:
                out[v] = i
        return out

    def sorted_q(self):
        return sorted(self.q, key=sorted)


@dataclass(frozen=True)
class YMember:
    """A semi-induced copy of (X, Q) in (Y, R), stored as its embedding."""

    mapping: tuple  # ((x_vertex, y_vertex), ...) sorted by x vertex

    @property
    def image(self):
        return frozenset(w for _, w in self.mapping)

    def as_dict(self):
        return dict(self.mapping)

    def q_images(self, pattern_q):
        m = dict(self.mapping)
        return frozenset(frozenset(m[v] for v in img) for img in pattern_q)


@dataclass(frozen=True)
class ArrowInput:
    """Everything the partite construction consumes: the pattern f, the
    input system (X, Q), the senkrecht host (Y, R) on vertices {0..m-1},
    and a system of semi-induced copies whose arrow is recorded as verified
    or assumed."""

    f: SteinerSystem
    pattern_system: FSystem
    host: FSystem
    members: tuple  # of YMember
    arrow_mode: str  # "verified" | "assumed"
    provenance: str

    @property
    def m(self):
        return self.host.x.num_vertices

    def enumerated_r(self):
        return tuple(sorted(self.host.q, key=sorted))

    def validate(self):
        if set(self.host.x.vertices) != set(range(self.m)):
            raise InputError("host vertex set must be dense {0..m-1}")
        self.pattern_system.validate()
        self.host.validate()
        x, q = self.pattern_system.x, self.pattern_system.q
        for mem in self.members:
            md = mem.as_dict()
            if set(md) != set(x.vertices):
                raise WitnessShapeMismatch("member map does not cover V(X)")
            if not core.is_induced(x, self.host.x, md):
                raise WitnessShapeMismatch("member is not an induced copy of X")
            if not mem.q_images(q) <= self.host.q:
                raise WitnessShapeMismatch(
                    "member distinguished copies leave the host family"
                )
        return self


@dataclass(frozen=True)
class GoodCopy:
    """A good copy of (X, Q): which witness member it projects to, plus its
    image vertex set (one vertex per projected class)."""

    y: int
    image: frozenset


@dataclass(frozen=True)
class Picture:
    host: FSystem
    classes: tuple  # m vertex classes of Z
    z: Hypergraph
    s: frozenset  # F-copy images
    good: frozenset  # of GoodCopy

    @property
    def m(self):
        return len(self.classes)

    def class_of(self):
        out = {}
        for i, cls in enumerate(self.classes):
            for v in cls:
                out[v] = i
        return out

    def sorted_s(self):
        return sorted(self.s, key=sorted)

    def sorted_good(self):
        return sorted(self.good, key=lambda g: (g.y, sorted(g.image)))


@dataclass(frozen=True)
class WitnessCopy:
    """A k-partite induced copy of a restriction inside a provider witness."""

    mapping: tuple

    @property
    def image(self):
        return frozenset(w for _, w in self.mapping)

    def as_dict(self):
        return dict(self.mapping)


@dataclass(frozen=True)
class ProviderWitness:
    """(W, P) plus a copy system with the arrow W-system -> restriction."""

    w: PartiteFSystem
    copies: tuple  # of WitnessCopy
    arrow_mode: str
    provenance: str


@dataclass(frozen=True)
class StepRecord:
    rho: int  # 1-based index into the R enumeration
    restriction: PartiteFSystem
    witness: ProviderWitness
    copy_maps: tuple  # per witness copy: ((old_vertex, new_vertex), ...)
    spine_map: tuple  # ((w_vertex, new_vertex), ...)


@dataclass
class ConstructionRun:
    input: ArrowInput
    pictures: list
    steps: list

    @property
    def final(self):
        return self.pictures[-1]


def validate_picture(picture: Picture, input: ArrowInput):
    """Full picture contract: the (Y, R)-hypergraph clauses plus goodness
    of every distinguished input copy."""
    host = picture.host
    cm = picture.class_of()
    if set(cm) != set(picture.z.vertices):
        raise InputError("classes do not partition the picture vertex set")
    for e in picture.z.edges:
        hits = [cm[v] for v in e]
        if len(set(hits)) != len(hits):
            raise NonCrossingEdge(e, next(i for i in hits if hits.count(i) > 1))
        proj = frozenset(hits)
        if proj not in host.x.edges:
            raise ProjectionNotEdge(e, proj)
    r_images = set(host.q)
    for img in picture.sorted_s():
        hits = [cm[v] for v in img]
        if len(set(hits)) != len(hits):
            raise InputError(f"S-copy {sorted(img)} is not crossing")
        sub = picture.z.restrict(img)
        if core.are_isomorphic(input.f, sub) is None:
            raise InputError(f"S-copy {sorted(img)} is not an induced F-copy")
        if frozenset(hits) not in r_images:
            raise InputError(
                f"S-copy {sorted(img)} projects outside the host family"
            )
    for g in picture.sorted_good():
        _validate_good_copy(picture, input, g)
    return picture


def good_copy_map(picture: Picture, input: ArrowInput, g: GoodCopy):
    """The embedding V(X) -> V(Z) realized by a good copy.

    The member's map lands in [m]; the good copy has exactly one vertex in
    each of those classes, so composition through psi is forced.
    """
    cm = picture.class_of()
    by_class = {}
    for v in g.image:
        j = cm[v]
        if j in by_class:
            raise InputError(f"good copy {sorted(g.image)} is not crossing")
        by_class[j] = v
    member = input.members[g.y]
    md = member.as_dict()
    if set(md.values()) != set(by_class):
        raise InputError(
            f"good copy {sorted(g.image)} occupies the wrong classes for "
            f"member {g.y}"
        )
    return {v: by_class[md[v]] for v in md}


def _validate_good_copy(picture: Picture, input: ArrowInput, g: GoodCopy):
    if not 0 <= g.y < len(input.members):
        raise IndexOutOfRange(f"good copy references member {g.y}")
    x = input.pattern_system.x
    emb = good_copy_map(picture, input, g)
    if not core.is_induced(x, picture.z, emb):
        raise InputError(
            f"good copy {sorted(g.image)} is not induced in the picture"
        )
    # induced F-subsystem trace: the S-members inside the image must be
    # exactly the embedded distinguished copies of the member
    inside = {img for img in picture.s if img <= g.image}
    expected = {
        frozenset(emb[v] for v in img) for img in input.pattern_system.q
    }
    if inside != expected:
        raise InputError(
            f"good copy {sorted(g.image)} has trace {sorted(map(sorted, inside))}"
            f" but expects {sorted(map(sorted, expected))}"
        )


def build_picture_zero(input: ArrowInput):
    """One vertex-disjoint good copy per witness member, placed so that the
    projection restricted to the copy is an isomorphism onto the member."""
    input.validate()
    x = input.pattern_system.x
    ids = {}
    nxt = 0
    edges = set()
    s = set()
    good = set()
    for y, mem in enumerate(input.members):
        md = mem.as_dict()
        for v in sorted(x.vertices):
            ids[(y, v)] = nxt
            nxt += 1
        for e in x.edges:
            edges.add(frozenset(ids[(y, v)] for v in e))
        for img in input.pattern_system.q:
            s.add(frozenset(ids[(y, v)] for v in img))
        good.add(GoodCopy(y, frozenset(ids[(y, v)] for v in x.vertices)))
    classes = [set() for _ in range(input.m)]
    for (y, v), vid in ids.items():
        classes[input.members[y].as_dict()[v]].add(vid)
    z = Hypergraph(x.r, frozenset(range(nxt)), frozenset(edges))
    pic = Picture(
        host=input.host,
        classes=tuple(frozenset(c) for c in classes),
        z=z,
        s=frozenset(s),
        good=frozenset(good),
    )
    return validate_picture(pic, input)


def restrict_to_rho(picture: Picture, input: ArrowInput, rho):
    """The k-partite F-system living over the rho-th host copy.

    Classes are the picture classes indexed by the copy's vertices in
    increasing order; vertex ids are retained from the picture, making the
    result an induced F-subsystem.
    """
    renum = input.enumerated_r()
    if not 1 <= rho <= len(renum):
        raise IndexOutOfRange(f"rho={rho} outside 1..{len(renum)}")
    f_rho = renum[rho - 1]
    spine = sorted(f_rho)
    cm = picture.class_of()
    classes = tuple(picture.classes[j] for j in spine)
    vertices = frozenset(v for cls in classes for v in cls)
    f_rho_edges = {e for e in input.host.x.edges if e <= f_rho}
    edges = frozenset(
        e for e in picture.z.edges if frozenset(cm[v] for v in e) in f_rho_edges
    )
    q = frozenset(
        img for img in picture.s if frozenset(cm[v] for v in img) == f_rho
    )
    return PartiteFSystem(
        f=input.f,
        classes=classes,
        x=Hypergraph(picture.z.r, vertices, edges),
        q=q,
    )


def validate_witness(restriction: PartiteFSystem, witness: ProviderWitness,
                     strong=False):
    """A witness must be a system of k-partite induced F-subsystem copies
    of the restriction; ``strong`` additionally demands strongly induced
    underlying copies (what the Steiner-maintaining pipelines need)."""
    w = witness.w
    if not witness.copies:
        raise WitnessShapeMismatch("witness must carry at least one copy")
    if w.k != restriction.k:
        raise WitnessShapeMismatch("witness class count differs")
    wcm = w.class_of()
    rcm = restriction.class_of()
    for wc in witness.copies:
        md = wc.as_dict()
        if set(md) != set(restriction.x.vertices):
            raise WitnessShapeMismatch("copy map does not cover the restriction")
        for v, im in md.items():
            if rcm[v] != wcm[im]:
                raise WitnessShapeMismatch("copy map is not class-respecting")
        if strong:
            ok = core.is_strongly_induced(restriction.x, w.x, md)
        else:
            ok = core.is_induced(restriction.x, w.x, md)
        if not ok:
            raise WitnessShapeMismatch(
                "copy is not an induced copy of the restriction"
            )
        mapped_q = {frozenset(md[v] for v in img) for img in restriction.q}
        if not mapped_q <= w.q:
            raise WitnessShapeMismatch("copy trace leaves the witness family")
        image = wc.image
        inside = {img for img in w.q if img <= image}
        if inside != mapped_q:
            raise WitnessShapeMismatch(
                "copy trace is not induced (extra witness copies inside image)"
            )
    return witness


def amalgamate(picture: Picture, input: ArrowInput, rho,
               witness: ProviderWitness,
               max_vertices=DEFAULT_MAX_PICTURE_VERTICES):
    """Glue one copy of the picture onto every witness copy over the rho-th
    spine, sharing only spine vertices; returns the new picture and the
    step record carrying all embedding maps."""
    restriction = restrict_to_rho(picture, input, rho)
    validate_witness(restriction, witness)
    spine_classes = sorted(sorted(input.enumerated_r()[rho - 1]))
    cm = picture.class_of()
    wcm = witness.w.class_of()
    n_copies = len(witness.copies)

    new_ids = {}
    classes = [set() for _ in range(picture.m)]
    nxt = 0
    for j in range(picture.m):
        if j in spine_classes:
            i = spine_classes.index(j)
            for wv in sorted(witness.w.classes[i]):
                new_ids[("s", wv)] = nxt
                classes[j].add(nxt)
                nxt += 1
        else:
            for v in sorted(picture.classes[j]):
                for widx in range(n_copies):
                    new_ids[("o", v, widx)] = nxt
                    classes[j].add(nxt)
                    nxt += 1
    if nxt > max_vertices:
        raise SizeLimitExceeded(
            f"amalgamated picture would have {nxt} vertices",
            requested=nxt,
            cap=max_vertices,
        )

    copy_maps = []
    for widx, wc in enumerate(witness.copies):
        wd = wc.as_dict()
        phi = {}
        for v in picture.z.vertices:
            if cm[v] in spine_classes:
                phi[v] = new_ids[("s", wd[v])]
            else:
                phi[v] = new_ids[("o", v, widx)]
        copy_maps.append(phi)

    edges = set()
    s = set()
    good = set()
    for phi in copy_maps:
        for e in picture.z.edges:
            edges.add(frozenset(phi[v] for v in e))
        for img in picture.s:
            s.add(frozenset(phi[v] for v in img))
        for g in picture.good:
            good.add(GoodCopy(g.y, frozenset(phi[v] for v in g.image)))

    new_pic = Picture(
        host=input.host,
        classes=tuple(frozenset(c) for c in classes),
        z=Hypergraph(picture.z.r, frozenset(range(nxt)), frozenset(edges)),
        s=frozenset(s),
        good=frozenset(good),
    )
    record = StepRecord(
        rho=rho,
        restriction=restriction,
        witness=witness,
        copy_maps=tuple(
            tuple(sorted(phi.items())) for phi in copy_maps
        ),
        spine_map=tuple(
            sorted((wv, nid) for (tag, wv), nid in
                   ((k, v) for k, v in new_ids.items() if k[0] == "s"))
        ),
    )
    return new_pic, record


def check_canonical_copy_induced(old: Picture, new: Picture, phi):
    """Eq. part-ind: the image of the previous picture under one canonical
    embedding is an induced sub-picture of the amalgamation."""
    phi = dict(phi)
    image_vertices = frozenset(phi.values())
    old_cm = old.class_of()
    new_cm = new.class_of()
    for v, w in phi.items():
        if not old_cm[v] == new_cm[w]:
            return False
    mapped_edges = {frozenset(phi[v] for v in e) for e in old.z.edges}
    if mapped_edges != new.z.edges_within(image_vertices):
        return False
    mapped_s = {frozenset(phi[v] for v in img) for img in old.s}
    inside_s = {img for img in new.s if img <= image_vertices}
    if mapped_s != inside_s:
        return False
    mapped_good = {
        (g.y, frozenset(phi[v] for v in g.image)) for g in old.good
    }
    inside_good = {
        (g.y, g.image) for g in new.good if g.image <= image_vertices
    }
    return mapped_good == inside_good


def run_partite_construction(input: ArrowInput, provider: Callable,
                             max_vertices=DEFAULT_MAX_PICTURE_VERTICES,
                             max_witness_copies=DEFAULT_MAX_WITNESS_COPIES,
                             validate_each=True):
    """Run all |R| amalgamation steps starting from picture zero.

    ``provider`` maps (restriction, step index) to a ProviderWitness; each
    output picture is re-validated and every canonical copy is checked to
    be an induced sub-picture.
    """
    pic = build_picture_zero(input)
    run = ConstructionRun(input=input, pictures=[pic], steps=[])
    for rho in range(1, len(input.enumerated_r()) + 1):
        restriction = restrict_to_rho(pic, input, rho)
        witness = provider(restriction, rho)
        if len(witness.copies) > max_witness_copies:
            raise SizeLimitExceeded(
                f"witness at step {rho} has {len(witness.copies)} copies",
                requested=len(witness.copies),
                cap=max_witness_copies,
            )
        new_pic, record = amalgamate(
            pic, input, rho, witness, max_vertices=max_vertices
        )
        if validate_each:
            validate_picture(new_pic, input)
            for phi in record.copy_maps:
                if not check_canonical_copy_induced(pic, new_pic, phi):
                    raise InputError(
                        f"canonical copy at step {rho} is not induced"
                    )
        run.pictures.append(new_pic)
        run.steps.append(record)
        pic = new_pic
    return run


def picture_record(picture: Picture):
    """Serializable snapshot: the partite hypergraph, the copy family, and
    the good-copy family."""
    return {
        "vertex_count": picture.z.num_vertices,
        "r": picture.z.r,
        "classes": [sorted(c) for c in picture.classes],
        "edges": picture.z.sorted_edges(),
        "copies": [sorted(img) for img in picture.sorted_s()],
        "good_copies": [
            {"member": g.y, "image": sorted(g.image)}
            for g in picture.sorted_good()
        ],
    }


def run_manifest(run: ConstructionRun):
    """Provenance manifest: one entry per step with the witness hash."""
    from . import serialize

    steps = []
    for step in run.steps:
        witness_rec = {
            "classes": [sorted(c) for c in step.witness.w.classes],
            "edges": step.witness.w.x.sorted_edges(),
            "copies": [
                [[v, w] for v, w in wc.mapping]
                for wc in step.witness.copies
            ],
        }
        steps.append({
            "rho": step.rho,
            "arrow_mode": step.witness.arrow_mode,
            "provenance": step.witness.provenance,
            "witness_hash": serialize.record_hash(witness_rec),
            "witness_copies": len(step.witness.copies),
        })
    return {
        "base_provenance": run.input.provenance,
        "base_arrow_mode": run.input.arrow_mode,
        "steps": steps,
        "final_picture": picture_record(run.final),
    }


@dataclass(frozen=True)
class ExtractedCopy:
    y: int
    image: frozenset
    q_images: tuple
    color: int
    step_choices: tuple  # chosen canonical copy index per step, last first


def extract_monochromatic(run: ConstructionRun, coloring):
    """Replay the partition argument on a concrete coloring of S(final).

    Walks the steps backwards, at each choosing a canonical copy of the
    previous picture whose copies over the current spine are monochromatic,
    then applies the base arrow to the accumulated color pattern.  The
    returned good copy is re-checked to be monochromatic; a failure at any
    stage raises ArrowRefuted carrying the offending induced coloring.
    """
    input = run.input
    renum = input.enumerated_r()
    final = run.final
    gamma = {frozenset(img): coloring[img] for img in final.s}
    if set(gamma) != set(final.s):
        raise InputError("coloring must be total on the final copy family")
    phi_of_rho = {}
    choices = []
    current = gamma
    for step, prev_pic in zip(reversed(run.steps), reversed(run.pictures[:-1])):
        spine_family = step.restriction.sorted_q()
        chosen = None
        for widx, phi in enumerate(step.copy_maps):
            pm = dict(phi)
            seen = {current[frozenset(pm[v] for v in img)] for img in spine_family}
            if len(seen) <= 1:
                chosen = widx
                phi_of_rho[step.rho] = seen.pop() if seen else 0
                break
        if chosen is None:
            induced = {
                tuple(sorted(img)): {
                    widx: current[frozenset(dict(phi)[v] for v in img)]
                    for widx, phi in enumerate(step.copy_maps)
                }
                for img in spine_family
            }
            raise ArrowRefuted(
                f"no canonical copy at step {step.rho} is monochromatic "
                f"(witness arrow mode: {step.witness.arrow_mode})",
                coloring=induced,
            )
        choices.append(chosen)
        pm = dict(step.copy_maps[chosen])
        current = {
            img: current[frozenset(pm[v] for v in img)] for img in prev_pic.s
        }
    # base arrow on the color pattern rho -> phi(rho)
    x_q = input.pattern_system.q
    selected = None
    for y, mem in enumerate(input.members):
        colors = {
            phi_of_rho[renum.index(img) + 1]
            for img in mem.q_images(x_q)
        }
        if len(colors) <= 1:
            selected = (y, colors.pop() if colors else 0)
            break
    if selected is None:
        raise ArrowRefuted(
            "the base arrow fails on the extracted color pattern "
            f"(mode: {input.arrow_mode})",
            coloring={sorted(img): phi_of_rho[i + 1]
                      for i, img in enumerate(renum)},
        )
    y, color = selected
    zero = run.pictures[0]
    zero_copy = next(g for g in zero.good if g.y == y)
    emb = good_copy_map(zero, input, zero_copy)
    for choice, step in zip(reversed(choices), run.steps):
        pm = dict(step.copy_maps[choice])
        emb = {v: pm[w] for v, w in emb.items()}
    image = frozenset(emb.values())
    q_images = tuple(
        frozenset(emb[v] for v in img)
        for img in sorted(x_q, key=sorted)
    )
    seen = {gamma[img] for img in q_images}
    if len(seen) > 1:
        raise ArrowRefuted(
            "extracted copy is not monochromatic (construction bug or "
            "assumed arrow refuted)",
            coloring={tuple(sorted(img)): gamma[img] for img in q_images},
        )
    if GoodCopy(y, image) not in run.final.good:
        raise ArrowRefuted("extracted copy left the good-copy family")
    if seen:
        color = seen.pop()
    return ExtractedCopy(
        y=y, image=image, q_images=q_images, color=color,
        step_choices=tuple(choices),
    )
