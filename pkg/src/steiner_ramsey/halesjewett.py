"""Hales-Jewett cubes, combinatorial lines, and tiny-scale HJ numbers.

Points of the cube over alphabet Q with dimension n are tuples in Q^n,
ranked lexicographically by letter index (mixed radix), so coloring
certificates stored as arrays are portable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from ._kernel import find_counterexample
from .errors import LetterNotInAlphabet, RangeError, SizeLimitExceeded

#: Refuse to materialize cubes with more points than this.
DEFAULT_POINT_CAP = 4096


@dataclass(frozen=True)
class HJCube:
    """The cube Q^n; points are never materialized beyond the cap."""

    alphabet: tuple
    n: int

    def __post_init__(self):
        if len(self.alphabet) < 1 or self.n < 1:
            raise RangeError("need a nonempty alphabet and n >= 1")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise RangeError("alphabet letters must be distinct")

    @property
    def q(self):
        return len(self.alphabet)

    @property
    def num_points(self):
        return self.q ** self.n

    def points(self, cap=DEFAULT_POINT_CAP):
        if self.num_points > cap:
            raise SizeLimitExceeded(
                f"cube has {self.num_points} points, cap is {cap}",
                requested=self.num_points,
                cap=cap,
            )
        return list(itertools.product(self.alphabet, repeat=self.n))

    def rank(self, point):
        letter_index = {a: i for i, a in enumerate(self.alphabet)}
        val = 0
        for x in point:
            val = val * self.q + letter_index[x]
        return val


@dataclass(frozen=True)
class Line:
    """A combinatorial line: constant coordinates with their letters, the
    rest moving together.  Coordinates are 0-based positions in [0, n)."""

    n: int
    assignment: tuple  # ((coord, letter), ...) sorted by coord

    def __post_init__(self):
        coords = [c for c, _ in self.assignment]
        if len(set(coords)) != len(coords):
            raise RangeError("constant coordinates repeat")
        if len(coords) >= self.n:
            raise RangeError("moving coordinate set must be nonempty")

    @property
    def constant_coords(self):
        return frozenset(c for c, _ in self.assignment)

    @property
    def moving_coords(self):
        return frozenset(range(self.n)) - self.constant_coords


def embed_line(line, letter, cube):
    """The point of the line at the given alphabet letter."""
    if letter not in cube.alphabet:
        raise LetterNotInAlphabet(f"{letter!r} is not in the alphabet")
    if line.n != cube.n:
        raise RangeError("line and cube dimensions differ")
    fixed = dict(line.assignment)
    return tuple(fixed.get(h, letter) for h in range(cube.n))


def line_points(line, cube):
    return [embed_line(line, a, cube) for a in cube.alphabet]


def enumerate_lines(cube, cap=DEFAULT_POINT_CAP):
    """All lines of the cube in a fixed deterministic order.

    The count is (q+1)^n - q^n.  Constant sets are ordered by bitmask, the
    assignments lexicographically by letter index.
    """
    if (cube.q + 1) ** cube.n - cube.num_points > cap * (cube.q + 1):
        raise SizeLimitExceeded("line family too large", cap=cap)
    out = []
    coords = list(range(cube.n))
    for mask in range(2 ** cube.n - 1):  # all proper subsets as constants
        cset = [h for h in coords if mask >> h & 1]
        for letters in itertools.product(cube.alphabet, repeat=len(cset)):
            out.append(Line(cube.n, tuple(zip(cset, letters))))
    return out


def find_monochromatic_line(cube, coloring, cap=DEFAULT_POINT_CAP):
    """First line (in enumerate_lines order) whose points share a color.

    ``coloring`` is a callable on points; returns (line, color) or None.
    """
    for line in enumerate_lines(cube, cap=cap):
        colors = {coloring(p) for p in line_points(line, cube)}
        if len(colors) == 1:
            return line, colors.pop()
    return None


def _lines_as_rank_targets(cube):
    pts = cube.points()
    rank = {p: i for i, p in enumerate(pts)}
    return [
        tuple(sorted(rank[p] for p in line_points(line, cube)))
        for line in enumerate_lines(cube)
    ]


def check_hj_property(q, c, n, point_cap=DEFAULT_POINT_CAP, jobs=1):
    """Does every c-coloring of Q^n contain a monochromatic line?

    Returns (verdict, counterexample-coloring-or-None); the counterexample
    is indexed by point rank.  Decided by pruned DFS over colorings.
    """
    cube = HJCube(tuple(range(q)), n)
    if cube.num_points > point_cap:
        raise SizeLimitExceeded(
            f"{cube.num_points} points exceed cap {point_cap}",
            requested=cube.num_points,
            cap=point_cap,
        )
    targets = _lines_as_rank_targets(cube)
    cex = find_counterexample(c, cube.num_points, targets)
    return (cex is None), cex


def hj_number(q, c, bound, point_cap=DEFAULT_POINT_CAP):
    """Least n <= bound with the HJ property for (q, c), or None.

    None means the search was undecided within the bound (either every
    tested n has a line-free coloring, or the cube got too large to
    exhaust); it never means the HJ number does not exist.
    """
    if q < 1 or c < 1:
        raise RangeError("need q >= 1 and c >= 1")
    for n in range(1, bound + 1):
        try:
            holds, _ = check_hj_property(q, c, n, point_cap=point_cap)
        except SizeLimitExceeded:
            return None
        if holds:
            return n
    return None


def hj_certificate(q, c, n, verdict, counterexample):
    return {
        "q": q,
        "c": c,
        "n": n,
        "verdict": "holds" if verdict else "refuted",
        "counterexample_coloring": (
            list(counterexample) if counterexample is not None else None
        ),
    }
