"""Constructive Ramsey machinery for Steiner systems.

Submodules mirror the conceptual layers: ``core`` (systems and predicates),
``partite`` (F-hypergraphs), ``halesjewett`` (cubes and lines), ``prelim``
(power witnesses), ``pictures`` (partite construction), ``pipelines``
(clean lemma and the end-to-end theorem run), ``negative`` (counterexample
colorings), ``oracle`` (brute-force arrow verdicts), and ``cli``.
"""

from . import (
    core,
    errors,
    fixtures,
    halesjewett,
    negative,
    oracle,
    partite,
    pictures,
    pipelines,
    prelim,
    serialize,
)

__all__ = [
    "core",
    "errors",
    "fixtures",
    "halesjewett",
    "negative",
    "oracle",
    "partite",
    "pictures",
    "pipelines",
    "prelim",
    "serialize",
]
__version__ = "0.1.0"
