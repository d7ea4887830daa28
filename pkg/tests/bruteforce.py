"""Independent brute-force re-implementations used as oracles by the tests.

Everything here is written from the definitions with flat enumeration and
no pruning, deliberately sharing no code with the library paths it checks.
"""

import itertools
import random


def bf_steiner_ok(vertices, edges, r, t):
    vertices = set(vertices)
    edges = [frozenset(e) for e in edges]
    if not 2 <= t <= r:
        return False
    for e in edges:
        if len(e) != r or not e <= vertices:
            return False
    for e1, e2 in itertools.combinations(edges, 2):
        if len(e1 & e2) >= t:
            return False
    return True


def bf_is_induced(g, h, mapping):
    mapping = dict(mapping)
    image = set(mapping.values())
    mapped = {frozenset(mapping[v] for v in e) for e in g.edges}
    inside = {e for e in h.edges if set(e) <= image}
    return mapped == inside


def bf_is_strong(g, h, mapping, t):
    if not bf_is_induced(g, h, mapping):
        return False
    mapping = dict(mapping)
    image = set(mapping.values())
    mapped = {frozenset(mapping[v] for v in e) for e in g.edges}
    for e in h.edges:
        if e not in mapped and len(set(e) & image) >= t:
            return False
    return True


def bf_is_homogeneous(f):
    verts = sorted(f.vertices)
    for perm in itertools.permutations(verts):
        m = dict(zip(verts, perm))
        if {frozenset(m[v] for v in e) for e in f.edges} != set(f.edges):
            return False
    return True


def bf_is_complete(f):
    for xs in itertools.combinations(sorted(f.vertices), f.t):
        if not any(set(xs) <= e for e in f.edges):
            return False
    return True


def bf_all_embeddings(pattern, host, predicate):
    """Every injective map passing ``predicate``; flat and unpruned."""
    pv = sorted(pattern.vertices)
    out = []
    for combo in itertools.permutations(sorted(host.vertices), len(pv)):
        m = dict(zip(pv, combo))
        if predicate(m):
            out.append(m)
    return out


def bf_copy_images(pattern, host, kind, ordered, t=None):
    """Image sets of all copies, straight from the definitions."""
    def pred(m):
        if ordered:
            vals = [m[v] for v in sorted(pattern.vertices)]
            if vals != sorted(vals):
                return False
        if kind == "semi":
            return all(
                frozenset(m[v] for v in e) in host.edges for e in pattern.edges
            )
        if kind == "induced":
            return bf_is_induced(pattern, host, m)
        return bf_is_strong(pattern, host, m, t)

    return {frozenset(m.values()) for m in bf_all_embeddings(pattern, host, pred)}


def bf_arrow_holds(family, targets, c):
    """Flat enumeration over all c^len(family) colorings."""
    family = list(family)
    idx = {img: i for i, img in enumerate(family)}
    tsets = [[idx[m] for m in tgt] for tgt in targets]
    for coloring in itertools.product(range(c), repeat=len(family)):
        if not any(
            len({coloring[i] for i in tgt}) <= 1 for tgt in tsets
        ):
            return False, coloring
    return True, None


def random_valid_system(rng: random.Random, max_vertices=8):
    """Greedy random Steiner system: valid by construction."""
    n = rng.randint(1, max_vertices)
    r = rng.randint(2, max(2, min(4, n)))
    t = rng.randint(2, r)
    candidates = list(itertools.combinations(range(n), r))
    rng.shuffle(candidates)
    edges = []
    for cand in candidates:
        cset = frozenset(cand)
        if all(len(cset & e) < t for e in edges):
            if rng.random() < 0.7:
                edges.append(cset)
    return n, r, t, edges


def random_raw_hypergraph(rng: random.Random, max_vertices=8):
    """Random r-uniform edge set; frequently violates the Steiner condition."""
    n = rng.randint(2, max_vertices)
    r = rng.randint(2, max(2, min(4, n)))
    t = rng.randint(2, r)
    candidates = list(itertools.combinations(range(n), r))
    rng.shuffle(candidates)
    edges = [frozenset(c) for c in candidates[: rng.randint(0, len(candidates))]]
    return n, r, t, edges
