"""Shared exact text format for systems, copies, and witness manifests.

A system is the record::

    {"format_version": 1, "r": r, "t": t, "vertex_count": n,
     "edges": [[...], ...],              # sorted lists of sorted ints
     "classes": [[...], ...]}            # optional, in class order

Vertex ids must be dense (0..n-1); ordered systems use vertex id order.
Class lists appear in class order; in human-readable CLI output classes are
numbered starting from 1.  A copy serializes as
``{"pattern_hash": ..., "image": sorted list, "kind": ...}``.
"""

from __future__ import annotations

import hashlib
import json

from .core import (
    CopyEmbedding,
    Hypergraph,
    OrderedSteinerSystem,
    SteinerSystem,
    validate_steiner,
)
from .errors import InputError

FORMAT_VERSION = 1


def system_record(system, classes=None):
    verts = system.sorted_vertices()
    if verts != list(range(len(verts))):
        raise InputError(
            "serialization requires dense vertex ids 0..n-1; "
            "use relabel_dense() first"
        )
    rec = {
        "format_version": FORMAT_VERSION,
        "r": system.r,
        "t": getattr(system, "t", None),
        "vertex_count": len(verts),
        "edges": system.sorted_edges(),
    }
    if classes is not None:
        rec["classes"] = [sorted(c) for c in classes]
    return rec


def system_from_record(rec, require_steiner=True):
    if rec.get("format_version") != FORMAT_VERSION:
        raise InputError(f"unsupported format_version {rec.get('format_version')!r}")
    try:
        r = int(rec["r"])
        n = int(rec["vertex_count"])
        edges = [frozenset(map(int, e)) for e in rec["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed system record: {exc}") from exc
    t = rec.get("t")
    vertices = frozenset(range(n))
    if t is None:
        if require_steiner:
            raise InputError("record has no Steiner parameter t")
        for e in edges:
            if len(e) != r or not e <= vertices:
                raise InputError(f"edge {sorted(e)} is not an {r}-subset")
        return Hypergraph(r, vertices, frozenset(edges))
    return validate_steiner((vertices, edges), r, int(t))


def classes_from_record(rec):
    if "classes" not in rec:
        return None
    return tuple(frozenset(map(int, c)) for c in rec["classes"])


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def record_hash(rec):
    return hashlib.sha256(canonical_json(rec).encode()).hexdigest()


def system_hash(system, classes=None):
    return record_hash(system_record(system, classes))


def copy_record(copy: CopyEmbedding):
    pattern = copy.pattern
    if isinstance(pattern, OrderedSteinerSystem):
        pattern = pattern.base
    dense, _ = (
        pattern.relabel_dense()
        if isinstance(pattern, SteinerSystem)
        else (pattern, None)
    )
    return {
        "pattern_hash": system_hash(dense),
        "image": sorted(copy.image),
        "kind": copy.kind,
    }


def dump(path, rec):
    with open(path, "w") as fh:
        json.dump(rec, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read record from {path}: {exc}") from exc
