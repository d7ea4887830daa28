import itertools

import pytest

from steiner_ramsey import core, fixtures, oracle, pictures
from steiner_ramsey.core import Hypergraph
from steiner_ramsey.errors import (
    ArrowRefuted,
    IndexOutOfRange,
    InputError,
    ProjectionNotEdge,
    WitnessShapeMismatch,
)


def vertex_pattern():
    return fixtures.single_vertex(r=3, t=2)


def hand_input(n_host, member_pairs, r_vertices, q_on=("v0",)):
    """F = single vertex; X = two isolated vertices; configurable host."""
    f = vertex_pattern()
    X = Hypergraph(3, frozenset({0, 1}), frozenset())
    q = frozenset(
        frozenset({0 if name == "v0" else 1}) for name in q_on
    )
    pattern = pictures.FSystem(f=f, x=X, q=q)
    Y = Hypergraph(3, frozenset(range(n_host)), frozenset())
    host = pictures.FSystem(
        f=f, x=Y, q=frozenset(frozenset({v}) for v in r_vertices)
    )
    members = tuple(
        pictures.YMember(((0, a), (1, b))) for a, b in member_pairs
    )
    return pictures.ArrowInput(
        f=f, pattern_system=pattern, host=host, members=members,
        arrow_mode="verified", provenance="hand fixture",
    )


def fan_input():
    """Three members sharing the single distinguished class vertex 0."""
    return hand_input(4, [(0, 1), (0, 2), (0, 3)], r_vertices=[0])


def chain_input():
    """F = X = a single vertex placed on each host vertex."""
    f = vertex_pattern()
    X = Hypergraph(3, frozenset({0}), frozenset())
    pattern = pictures.FSystem(f=f, x=X, q=frozenset({frozenset({0})}))
    Y = Hypergraph(3, frozenset(range(3)), frozenset())
    host = pictures.FSystem(
        f=f, x=Y, q=frozenset(frozenset({v}) for v in range(3))
    )
    members = tuple(pictures.YMember(((0, v),)) for v in range(3))
    return pictures.ArrowInput(
        f=f, pattern_system=pattern, host=host, members=members,
        arrow_mode="verified", provenance="hand fixture",
    )


def edge_input():
    """F = X = one crossing 3-edge; everything is a single identity copy."""
    f = fixtures.edge(3, 2)
    X = Hypergraph(3, frozenset(range(3)), frozenset({frozenset(range(3))}))
    pattern = pictures.FSystem(f=f, x=X, q=frozenset({frozenset(range(3))}))
    host = pictures.FSystem(
        f=f, x=X, q=frozenset({frozenset(range(3))})
    )
    members = (pictures.YMember(((0, 0), (1, 1), (2, 2))),)
    return pictures.ArrowInput(
        f=f, pattern_system=pattern, host=host, members=members,
        arrow_mode="verified", provenance="identity fixture",
    )


def fano_provider(restriction, rho):
    f = restriction.f
    W = Hypergraph(f.r, frozenset(range(7)), frozenset())
    wsys = pictures.PartiteFSystem(
        f=f, classes=(frozenset(range(7)),), x=W,
        q=frozenset(frozenset({v}) for v in range(7)),
    )
    rverts = sorted(restriction.x.vertices)
    copies = tuple(
        pictures.WitnessCopy(tuple(zip(rverts, sorted(line))))
        for line in fixtures.FANO_LINES
    )
    return pictures.ProviderWitness(
        w=wsys, copies=copies, arrow_mode="verified",
        provenance="fano pigeonhole",
    )


def identity_provider(restriction, rho):
    ident = tuple((v, v) for v in sorted(restriction.x.vertices))
    return pictures.ProviderWitness(
        w=restriction, copies=(pictures.WitnessCopy(ident),),
        arrow_mode="verified", provenance="identity",
    )


class TestPictureZero:
    def test_disjoint_copies_and_counts(self):
        inp = fan_input()
        pz = pictures.build_picture_zero(inp)
        assert pz.z.num_vertices == 2 * len(inp.members)
        images = [g.image for g in pz.sorted_good()]
        for a, b in itertools.combinations(images, 2):
            assert not (a & b)

    def test_overlapping_members_become_disjoint(self):
        # members share host vertex 0, copies must still be disjoint
        inp = fan_input()
        pz = pictures.build_picture_zero(inp)
        assert len(pz.classes[0]) == 3

    def test_s_union(self):
        inp = chain_input()
        pz = pictures.build_picture_zero(inp)
        assert len(pz.s) == 3
        assert len(pz.good) == 3

    def test_edge_fixture_projects(self):
        inp = edge_input()
        pz = pictures.build_picture_zero(inp)
        assert pz.z.num_edges == 1
        pictures.validate_picture(pz, inp)


class TestValidatePicture:
    def test_rejects_non_projecting_edge(self):
        inp = edge_input()
        pz = pictures.build_picture_zero(inp)
        bad = pictures.Picture(
            host=pictures.FSystem(
                f=inp.f,
                x=Hypergraph(3, inp.host.x.vertices, frozenset()),
                q=inp.host.q,
            ),
            classes=pz.classes, z=pz.z, s=pz.s, good=pz.good,
        )
        with pytest.raises(ProjectionNotEdge):
            pictures.validate_picture(bad, inp)

    def test_rejects_foreign_s_copy(self):
        inp = chain_input()
        pz = pictures.build_picture_zero(inp)
        # an S-copy projecting outside R
        bad_s = pz.s | {frozenset({sorted(pz.classes[0])[0]})}
        bad = pictures.Picture(
            host=pictures.FSystem(
                f=inp.f, x=inp.host.x,
                q=frozenset(list(inp.host.q)[:2]),
            ),
            classes=pz.classes, z=pz.z, s=bad_s, good=frozenset(),
        )
        with pytest.raises(InputError):
            pictures.validate_picture(bad, inp)


class TestRestrict:
    def test_restriction_shape(self):
        inp = fan_input()
        pz = pictures.build_picture_zero(inp)
        r1 = pictures.restrict_to_rho(pz, inp, 1)
        assert r1.k == 1
        assert len(r1.x.vertices) == 3
        assert len(r1.q) == 3

    def test_no_copies_projecting(self):
        inp = hand_input(4, [(1, 2)], r_vertices=[0, 1])
        pz = pictures.build_picture_zero(inp)
        # rho = 1 is host vertex 0; the only member sits on {1, 2}
        r1 = pictures.restrict_to_rho(pz, inp, 1)
        assert len(r1.q) == 0
        assert len(r1.x.vertices) == 0

    def test_edgeless_spine(self):
        inp = chain_input()
        pz = pictures.build_picture_zero(inp)
        r = pictures.restrict_to_rho(pz, inp, 2)
        assert not r.x.edges

    def test_index_out_of_range(self):
        inp = chain_input()
        pz = pictures.build_picture_zero(inp)
        with pytest.raises(IndexOutOfRange):
            pictures.restrict_to_rho(pz, inp, 4)


class TestAmalgamate:
    def test_identity_witness_preserves_shape(self):
        inp = edge_input()
        pz = pictures.build_picture_zero(inp)
        new, record = pictures.amalgamate(
            pz, inp, 1, identity_provider(
                pictures.restrict_to_rho(pz, inp, 1), 1
            )
        )
        assert new.z.num_vertices == pz.z.num_vertices
        assert new.z.num_edges == pz.z.num_edges
        assert core.are_isomorphic(
            core.SteinerSystem(3, 2, pz.z.vertices, pz.z.edges),
            core.SteinerSystem(3, 2, new.z.vertices, new.z.edges),
        ) is not None

    def test_off_spine_class_scaling(self):
        inp = fan_input()
        pz = pictures.build_picture_zero(inp)
        r1 = pictures.restrict_to_rho(pz, inp, 1)
        wit = fano_provider(r1, 1)
        new, record = pictures.amalgamate(pz, inp, 1, wit)
        # spine class becomes the witness pool, off-spine classes multiply
        assert len(new.classes[0]) == 7
        for j in (1, 2, 3):
            assert len(new.classes[j]) == len(pz.classes[j]) * 7

    def test_canonical_copies_share_only_spine(self):
        inp = fan_input()
        pz = pictures.build_picture_zero(inp)
        r1 = pictures.restrict_to_rho(pz, inp, 1)
        new, record = pictures.amalgamate(pz, inp, 1, fano_provider(r1, 1))
        images = [frozenset(dict(phi).values()) for phi in record.copy_maps]
        spine = new.classes[0]
        for a, b in itertools.combinations(images, 2):
            assert (a & b) <= spine
        # fano lines pairwise share exactly one point
        shares = {len(a & b) for a, b in itertools.combinations(images, 2)}
        assert shares == {1}

    def test_part_ind_on_every_canonical_copy(self):
        inp = fan_input()
        pz = pictures.build_picture_zero(inp)
        r1 = pictures.restrict_to_rho(pz, inp, 1)
        new, record = pictures.amalgamate(pz, inp, 1, fano_provider(r1, 1))
        for phi in record.copy_maps:
            assert pictures.check_canonical_copy_induced(pz, new, phi)

    def test_witness_shape_mismatch(self):
        inp = fan_input()
        pz = pictures.build_picture_zero(inp)
        r1 = pictures.restrict_to_rho(pz, inp, 1)
        wit = fano_provider(r1, 1)
        # break one copy map: drop a vertex
        broken = pictures.ProviderWitness(
            w=wit.w,
            copies=(pictures.WitnessCopy(wit.copies[0].mapping[:-1]),),
            arrow_mode="verified", provenance="broken",
        )
        with pytest.raises(WitnessShapeMismatch):
            pictures.amalgamate(pz, inp, 1, broken)


class TestConstructionAndExtraction:
    def test_zero_steps_when_r_empty(self):
        f = vertex_pattern()
        X = Hypergraph(3, frozenset({0}), frozenset())
        pattern = pictures.FSystem(f=f, x=X, q=frozenset())
        host = pictures.FSystem(
            f=f, x=Hypergraph(3, frozenset({0}), frozenset()), q=frozenset()
        )
        inp = pictures.ArrowInput(
            f=f, pattern_system=pattern, host=host,
            members=(pictures.YMember(((0, 0),)),),
            arrow_mode="verified", provenance="empty R",
        )
        run = pictures.run_partite_construction(inp, identity_provider)
        assert len(run.pictures) == 1 and not run.steps

    def test_chain_all_colorings_extract(self):
        inp = chain_input()
        run = pictures.run_partite_construction(inp, identity_provider)
        assert len(run.pictures) == 4
        final = run.final
        S = final.sorted_s()
        for cols in itertools.product(range(2), repeat=len(S)):
            coloring = dict(zip(S, cols))
            ex = pictures.extract_monochromatic(run, coloring)
            assert {coloring[img] for img in ex.q_images} <= {ex.color}

    def test_fan_all_colorings_extract(self):
        inp = fan_input()
        run = pictures.run_partite_construction(inp, fano_provider)
        final = run.final
        assert final.z.num_vertices == 28
        S = final.sorted_s()
        assert len(S) == 7
        count = 0
        for cols in itertools.product(range(2), repeat=7):
            coloring = dict(zip(S, cols))
            ex = pictures.extract_monochromatic(run, coloring)
            count += 1
            assert pictures.GoodCopy(ex.y, ex.image) in final.good
        assert count == 128

    def test_extraction_deterministic(self):
        inp = fan_input()
        run = pictures.run_partite_construction(inp, fano_provider)
        S = run.final.sorted_s()
        coloring = {img: i % 2 for i, img in enumerate(S)}
        a = pictures.extract_monochromatic(run, coloring)
        b = pictures.extract_monochromatic(run, coloring)
        assert a == b

    def test_refuted_witness_surfaces(self):
        # two members on one class vertex: restriction s = 2; give a witness
        # of two disjoint pairs, whose arrow is false, marked assumed
        inp = hand_input(3, [(0, 1), (0, 2)], r_vertices=[0])

        def bad_provider(restriction, rho):
            f = restriction.f
            W = Hypergraph(f.r, frozenset(range(4)), frozenset())
            wsys = pictures.PartiteFSystem(
                f=f, classes=(frozenset(range(4)),), x=W,
                q=frozenset(frozenset({v}) for v in range(4)),
            )
            rverts = sorted(restriction.x.vertices)
            copies = (
                pictures.WitnessCopy(tuple(zip(rverts, (0, 1)))),
                pictures.WitnessCopy(tuple(zip(rverts, (2, 3)))),
            )
            return pictures.ProviderWitness(
                w=wsys, copies=copies, arrow_mode="assumed",
                provenance="deliberately refutable",
            )

        run = pictures.run_partite_construction(inp, bad_provider)
        S = run.final.sorted_s()
        assert len(S) == 4
        # color the two pairs bichromatically: extraction must refute
        coloring = {img: min(img) % 2 for img in S}
        with pytest.raises(ArrowRefuted):
            pictures.extract_monochromatic(run, coloring)

    def test_constant_coloring_returns_first_path(self):
        inp = fan_input()
        run = pictures.run_partite_construction(inp, fano_provider)
        S = run.final.sorted_s()
        ex = pictures.extract_monochromatic(run, {img: 1 for img in S})
        assert ex.color == 1
