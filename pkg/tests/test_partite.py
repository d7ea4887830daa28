import pytest

from steiner_ramsey import core, fixtures, partite
from steiner_ramsey.core import validate_steiner
from steiner_ramsey.errors import (
    CopyNotCrossing,
    InputError,
    NonCrossingEdge,
    ParameterMismatch,
    ProjectionNotEdge,
)


def one_edge_fh():
    """A single crossing 3-edge across three singleton classes."""
    f = fixtures.edge(3, 2)
    return partite.fhypergraph_from_disjoint_copies(f, 1)


class TestValidatePartite:
    def test_crossing_ok(self):
        fh = one_edge_fh()
        assert fh.x.k == 3
        assert all(len(c) == 1 for c in fh.x.classes)

    def test_non_crossing_edge_rejected(self):
        base = validate_steiner((range(3), [(0, 1, 2)]), 3, 2)
        with pytest.raises(NonCrossingEdge):
            partite.validate_partite(base, [{0, 1}, {2}])

    def test_classes_must_partition(self):
        base = validate_steiner((range(3), []), 3, 2)
        with pytest.raises(InputError):
            partite.validate_partite(base, [{0}, {1}])
        with pytest.raises(InputError):
            partite.validate_partite(base, [{0, 1}, {1, 2}])

    def test_empty_classes_allowed(self):
        base = validate_steiner((range(2), []), 3, 2)
        ps = partite.validate_partite(base, [{0}, set(), {1}])
        assert ps.k == 3

    def test_projection(self):
        fh = one_edge_fh()
        psi = fh.x.projection()
        assert {psi(v) for v in fh.x.vertices} == {0, 1, 2}


class TestCrossingCopies:
    def test_single_disjoint_copy(self):
        fh = one_edge_fh()
        assert len(partite.crossing_copies(fh.x, fh.f)) == 1

    def test_two_disjoint_copies(self):
        f = fixtures.edge(3, 2)
        fh = partite.fhypergraph_from_disjoint_copies(f, 2)
        copies = partite.crossing_copies(fh.x, fh.f)
        assert len(copies) == 2
        assert set(copies) == set(fh.q)

    def test_wrong_pattern_vertices(self):
        fh = one_edge_fh()
        shifted = fh.f.relabel({v: v + 1 for v in fh.f.vertices})
        with pytest.raises(ParameterMismatch):
            partite.crossing_copies(fh.x, shifted)


class TestValidateFHypergraph:
    def test_roundtrip(self):
        fh = one_edge_fh()
        again = partite.validate_fhypergraph(fh.f, fh.x, fh.q)
        assert again.q == fh.q

    def test_non_crossing_copy_rejected(self):
        f = fixtures.edge(3, 2)
        fh = partite.fhypergraph_from_disjoint_copies(f, 2)
        # a vertex set straddling copies is not projection-isomorphic
        bad = frozenset(list(sorted(fh.x.classes[0])) + [
            sorted(fh.x.classes[1])[1], sorted(fh.x.classes[2])[1]
        ])
        with pytest.raises(CopyNotCrossing):
            partite.validate_fhypergraph(fh.f, fh.x, fh.q | {bad})

    def test_projection_non_edge_rejected(self):
        # edge projecting onto a non-edge of the pattern: pattern has no
        # edge at all, so any crossing edge must be rejected
        f = fixtures.discrete(3, 3, 2)
        base = validate_steiner((range(3), [(0, 1, 2)]), 3, 2)
        ps = partite.validate_partite(base, [{0}, {1}, {2}])
        with pytest.raises(ProjectionNotEdge):
            partite.validate_fhypergraph(f, ps, frozenset())


class TestFhStronglyInduced:
    def test_identity(self):
        fh = one_edge_fh()
        ident = tuple((v, v) for v in sorted(fh.x.vertices))
        assert partite.fh_strongly_induced(fh, fh, ident)

    def test_strict_subfamily_fails_trace(self):
        f = fixtures.edge(3, 2)
        fh2 = partite.fhypergraph_from_disjoint_copies(f, 2)
        one_copy = partite.FHypergraph(fh2.f, fh2.x, frozenset(list(fh2.q)[:1]))
        ident = tuple((v, v) for v in sorted(fh2.x.vertices))
        # identity embedding of the full system into itself, but with a
        # strict subfamily: the trace equation fails
        assert not partite.fh_strongly_induced(one_copy, fh2, ident)

    def test_every_invariant_copy_meets_classes_once(self):
        f = fixtures.edge(3, 2)
        fh = partite.fhypergraph_from_disjoint_copies(f, 2)
        cm = fh.x.class_of()
        for img in fh.q:
            assert sorted(cm[v] for v in img) == [0, 1, 2]
