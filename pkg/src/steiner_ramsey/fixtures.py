"""Named test systems shared by every module's tests and the CLI docs."""

from __future__ import annotations

import itertools

from .core import OrderedSteinerSystem, SteinerSystem, validate_steiner


def h5():
    """Five vertices, edges {0,1,2} and {2,3,4}; r=3, t=2."""
    return validate_steiner((range(5), [{0, 1, 2}, {2, 3, 4}]), 3, 2)


def g3():
    """Restriction of h5 to {0,1,2}: a single 3-edge."""
    return h5().restrict({0, 1, 2})


def g4():
    """Restriction of h5 to {0,1,2,3}: one edge plus an extra vertex."""
    return h5().restrict({0, 1, 2, 3})


FANO_LINES = (
    (0, 1, 2),
    (0, 3, 4),
    (0, 5, 6),
    (1, 3, 5),
    (1, 4, 6),
    (2, 3, 6),
    (2, 4, 5),
)


def fano():
    """The Fano plane: 7 points, 7 lines, r=3, t=2; a complete system."""
    return validate_steiner((range(7), FANO_LINES), 3, 2)


def edge(r, t=None):
    """A single r-edge on vertices 0..r-1."""
    return validate_steiner((range(r), [tuple(range(r))]), r, t if t else r)


def p3():
    """The path 0-1-2 with r=t=2."""
    return validate_steiner((range(3), [(0, 1), (1, 2)]), 2, 2)


def clique(n):
    """K_n as a Steiner (2,2)-system."""
    return validate_steiner(
        (range(n), itertools.combinations(range(n), 2)), 2, 2
    )


def discrete(n, r=3, t=2):
    """n isolated vertices."""
    return validate_steiner((range(n), []), r, t)


def single_vertex(r=3, t=2):
    return discrete(1, r, t)


def two_disjoint_edges(r=3, t=2):
    """Two vertex-disjoint r-edges."""
    return validate_steiner(
        (range(2 * r), [tuple(range(r)), tuple(range(r, 2 * r))]), r, t
    )


def ordered(system):
    return OrderedSteinerSystem(system)


def catalog():
    """Name -> system map used by parametrized tests."""
    return {
        "H5": h5(),
        "G3": g3(),
        "G4": g4(),
        "FANO": fano(),
        "EDGE3": edge(3, 2),
        "EDGE2": edge(2),
        "P3": p3(),
        "K3": clique(3),
        "K4": clique(4),
        "DISCRETE2": discrete(2),
        "DISCRETE3": discrete(3),
        "VERTEX": single_vertex(),
        "TWO_EDGES": two_disjoint_edges(),
    }
