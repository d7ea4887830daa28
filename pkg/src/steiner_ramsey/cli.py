"""Command-line surface: predicates, classifier, copies, Hales-Jewett
certificates, constructions, arrow verdicts, and negative demos.

Exit codes: 0 success, 1 property refuted (a certificate is printed),
2 infeasible at the configured scale, 3 input error.
"""

from __future__ import annotations

import json
import sys

import click

from . import (
    core,
    halesjewett,
    negative,
    oracle,
    pictures,
    pipelines,
    prelim,
    serialize,
)
from .core import OrderedSteinerSystem


def pictures_manifest(tw):
    return pictures.run_manifest(tw.run)
from .errors import (
    ArrowRefuted,
    InputError,
    SearchInfeasible,
    SizeLimitExceeded,
    SteinerRamseyError,
)
from .partite import FHypergraph, validate_fhypergraph, validate_partite
from .pipelines import Caps

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INFEASIBLE = 2
EXIT_INPUT = 3


def _emit(record):
    click.echo(json.dumps(record, indent=2, sort_keys=True))


def _load_system(path, require_steiner=True):
    return serialize.system_from_record(serialize.load(path), require_steiner)


def _load_fhypergraph(path):
    rec = serialize.load(path)
    try:
        pattern = serialize.system_from_record(rec["pattern"])
        system = serialize.system_from_record(rec["system"])
        classes = serialize.classes_from_record(rec["system"])
        copies = frozenset(
            frozenset(map(int, img)) for img in rec.get("copies", [])
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed F-hypergraph record: {exc}") from exc
    if classes is None:
        raise InputError("F-hypergraph record needs a classes field")
    ps = validate_partite(system, classes)
    return validate_fhypergraph(pattern, ps, copies)


def _parse_map(text, pattern, host):
    if text is None:
        pv, hv = pattern.sorted_vertices(), host.sorted_vertices()
        if len(pv) > len(hv):
            raise InputError("pattern larger than host and no map given")
        return dict(zip(pv, hv))
    try:
        pairs = [p.split(":") for p in text.split(",")]
        return {int(a): int(b) for a, b in pairs}
    except ValueError as exc:
        raise InputError(f"cannot parse map {text!r}: {exc}") from exc


def _run(fn):
    try:
        code = fn()
        sys.exit(EXIT_OK if code is None else code)
    except (SearchInfeasible, SizeLimitExceeded) as exc:
        _emit({"error": "infeasible", "detail": str(exc)})
        sys.exit(EXIT_INFEASIBLE)
    except ArrowRefuted as exc:
        _emit({
            "error": "refuted",
            "detail": str(exc),
            "counterexample": _jsonable(exc.coloring),
        })
        sys.exit(EXIT_REFUTED)
    except InputError as exc:
        _emit({"error": "input", "detail": str(exc)})
        sys.exit(EXIT_INPUT)
    except SteinerRamseyError as exc:
        _emit({"error": "input", "detail": str(exc)})
        sys.exit(EXIT_INPUT)


def _jsonable(value):
    if isinstance(value, dict):
        return {
            json.dumps(sorted(k)) if isinstance(k, (frozenset, tuple, set))
            else str(k): _jsonable(v)
            for k, v in value.items()
        }
    if isinstance(value, (frozenset, set, tuple, list)):
        return [_jsonable(v) for v in value]
    return value


@click.group()
def main():
    """Constructive Ramsey machinery for Steiner systems."""


@main.command()
@click.argument("predicate",
                type=click.Choice(["steiner", "homogeneous", "complete",
                                   "strong"]))
@click.option("--in", "infile", required=True, type=click.Path(exists=True))
@click.option("--r", "r", type=int, default=None)
@click.option("--t", "t", type=int, default=None)
@click.option("--host", "hostfile", type=click.Path(exists=True),
              help="host system (predicate 'strong' only)")
@click.option("--map", "maptext", default=None,
              help="pattern:host vertex pairs, e.g. 0:3,1:4")
def check(predicate, infile, r, t, hostfile, maptext):
    """Predicate verdicts on a serialized system."""

    def go():
        rec = serialize.load(infile)
        if predicate == "steiner":
            rr = r if r is not None else rec.get("r")
            tt = t if t is not None else rec.get("t")
            if rr is None or tt is None:
                raise InputError("steiner check needs r and t")
            raw = serialize.system_from_record(
                {**rec, "t": None}, require_steiner=False
            )
            try:
                core.validate_steiner(raw, int(rr), int(tt))
            except SteinerRamseyError as exc:
                _emit({"predicate": "steiner", "holds": False,
                       "certificate": str(exc)})
                return EXIT_REFUTED
            _emit({"predicate": "steiner", "holds": True})
            return EXIT_OK
        system = serialize.system_from_record(rec)
        if predicate == "homogeneous":
            holds = core.is_homogeneous(system)
        elif predicate == "complete":
            holds = core.is_complete(system)
        else:
            if hostfile is None:
                raise InputError("strong check needs --host")
            host = _load_system(hostfile)
            mapping = _parse_map(maptext, system, host)
            holds = core.is_strongly_induced(system, host, mapping)
        _emit({"predicate": predicate, "holds": bool(holds)})
        return EXIT_OK if holds else EXIT_REFUTED

    _run(go)


@main.command()
@click.option("--class", "class_token", required=True)
@click.option("--pattern", "patternfile", required=True,
              type=click.Path(exists=True))
def status(class_token, patternfile):
    """F-Ramsey status of a pattern in one of the four classes."""

    def go():
        tag = core.parse_class_tag(class_token)
        pattern = _load_system(patternfile)
        st = core.f_ramsey_status(tag, pattern)
        _emit({
            "class": tag.token,
            "class_description": tag.describe(),
            "has_property": st.has_property,
            "reason": st.reason,
            "failed_clause": st.failed_clause,
        })
        return EXIT_OK if st.has_property else EXIT_REFUTED

    _run(go)


@main.command()
@click.option("--pattern", "patternfile", required=True,
              type=click.Path(exists=True))
@click.option("--host", "hostfile", required=True,
              type=click.Path(exists=True))
@click.option("--kind", type=click.Choice(["induced", "strong", "semi"]),
              default="induced")
@click.option("--ordered", is_flag=True, default=False)
def copies(patternfile, hostfile, kind, ordered):
    """List pattern copies in a host."""

    def go():
        pattern = _load_system(patternfile)
        host = _load_system(hostfile)
        found = core.enumerate_copies(pattern, host, kind, ordered)
        _emit({
            "count": len(found),
            "copies": [serialize.copy_record(c) for c in found],
        })

    _run(go)


@main.group()
def hj():
    """Hales-Jewett searches and certificates."""


@hj.command("search")
@click.option("--q", type=int, required=True)
@click.option("--c", "colors", type=int, required=True)
@click.option("--bound", type=int, default=3)
def hj_search(q, colors, bound):
    def go():
        n = halesjewett.hj_number(q, colors, bound)
        if n is None:
            _emit({"q": q, "c": colors, "bound": bound, "verdict": "undecided"})
            return EXIT_INFEASIBLE
        _emit(halesjewett.hj_certificate(q, colors, n, True, None))

    _run(go)


@hj.command("verify")
@click.option("--q", type=int, required=True)
@click.option("--c", "colors", type=int, required=True)
@click.option("--n", type=int, required=True)
def hj_verify(q, colors, n):
    def go():
        holds, cex = halesjewett.check_hj_property(q, colors, n)
        _emit(halesjewett.hj_certificate(q, colors, n, holds, cex))
        return EXIT_OK if holds else EXIT_REFUTED

    _run(go)


@main.group()
def construct():
    """Witness constructions (prelim / clean / theorem)."""


def _caps_options(fn):
    fn = click.option("--max-vertices", type=int,
                      default=pipelines.DEFAULT_CAPS.max_vertices)(fn)
    fn = click.option("--max-copies", type=int,
                      default=pipelines.DEFAULT_CAPS.max_witness_copies)(fn)
    fn = click.option("--jobs", type=int, default=1)(fn)
    return fn


@construct.command("prelim")
@click.option("--x", "xfile", required=True, type=click.Path(exists=True),
              help="F-hypergraph record")
@click.option("--c", "colors", type=int, required=True)
@click.option("--n", type=int, default=None)
@click.option("--assume-hj", is_flag=True, default=False)
@click.option("--out", "outfile", type=click.Path(), default=None)
@_caps_options
def construct_prelim(xfile, colors, n, assume_hj, outfile, max_vertices,
                     max_copies, jobs):
    def go():
        fh = _load_fhypergraph(xfile)
        witness = prelim.build_prelim_witness(
            fh, colors, n=n, assume=assume_hj,
            max_vertices=max_vertices, jobs=jobs,
        )
        rec = prelim.witness_record(witness)
        rec["hash"] = serialize.record_hash(rec)
        if outfile:
            serialize.dump(outfile, rec)
        _emit({"kind": "prelim", "mode": witness.mode, "n": witness.n,
               "lines": len(witness.lines), "family": len(witness.lam),
               "hash": rec["hash"], "out": outfile})

    _run(go)


@construct.command("clean")
@click.option("--x", "xfile", required=True, type=click.Path(exists=True))
@click.option("--c", "colors", type=int, required=True)
@click.option("--out", "outfile", type=click.Path(), default=None)
@_caps_options
def construct_clean(xfile, colors, outfile, max_vertices, max_copies, jobs):
    def go():
        fh = _load_fhypergraph(xfile)
        caps = pipelines.caps_from_env(
            Caps(max_vertices=max_vertices, max_witness_copies=max_copies)
        )
        witness = pipelines.build_clean_witness(fh, colors, caps=caps,
                                                jobs=jobs)
        ok, cert = pipelines.verify_intersection_property(witness)
        dense, m = witness.output.x.base.relabel_dense()
        rec = {
            "kind": "clean",
            "mode": witness.mode,
            "provenance": witness.provenance,
            "output": serialize.system_record(
                dense,
                [sorted(m[v] for v in cls) for cls in witness.output.x.classes],
            ),
            "copies": [
                sorted(m[w] for w in cc.image) for cc in witness.copies
            ],
            "intersection_property": cert,
            "manifest": (
                pictures.run_manifest(witness.run)
                if witness.run is not None else None
            ),
        }
        rec["hash"] = serialize.record_hash(rec)
        if outfile:
            serialize.dump(outfile, rec)
        _emit({"kind": "clean", "mode": witness.mode,
               "copies": len(witness.copies),
               "intersection_ok": ok, "hash": rec["hash"], "out": outfile})

    _run(go)


@construct.command("theorem")
@click.option("--pattern", "patternfile", required=True,
              type=click.Path(exists=True))
@click.option("--target", "targetfile", required=True,
              type=click.Path(exists=True))
@click.option("--c", "colors", type=int, required=True)
@click.option("--base",
              type=click.Choice(["auto", "classical", "exhaustive", "user"]),
              default="auto")
@click.option("--base-host", type=click.Path(exists=True), default=None)
@click.option("--out", "outfile", type=click.Path(), default=None)
@_caps_options
def construct_theorem(patternfile, targetfile, colors, base, base_host,
                      outfile, max_vertices, max_copies, jobs):
    def go():
        f = OrderedSteinerSystem(_load_system(patternfile))
        x = OrderedSteinerSystem(_load_system(targetfile))
        caps = pipelines.caps_from_env(
            Caps(max_vertices=max_vertices, max_witness_copies=max_copies)
        )
        host_record = serialize.load(base_host) if base_host else None
        tw = pipelines.build_theorem_witness(
            f, x, colors, base_strategy=base, host_record=host_record,
            caps=caps, jobs=jobs,
        )
        report = pipelines.verify_strong_arrow(tw)
        rec = {
            "kind": "theorem",
            "mode": tw.mode,
            "base": tw.base.provenance,
            "steps": [
                {"rho": ch.rho, "provider": ch.provider,
                 "arrow_mode": ch.arrow_mode,
                 "boxtimes": ch.boxtimes}
                for ch in tw.checks
            ],
            "output": serialize.system_record(tw.output),
            "arrow_report": report,
            "manifest": pictures_manifest(tw),
        }
        rec["hash"] = serialize.record_hash(rec)
        if outfile:
            serialize.dump(outfile, rec)
        _emit({"kind": "theorem", "mode": tw.mode,
               "vertices": tw.output.num_vertices,
               "arrow_report": report, "hash": rec["hash"], "out": outfile})

    _run(go)


@main.group()
def verify():
    """Brute-force arrow verdicts."""


@verify.command("arrows")
@click.option("--host", "hostfile", required=True, type=click.Path(exists=True))
@click.option("--target", "targetfile", required=True,
              type=click.Path(exists=True))
@click.option("--pattern", "patternfile", required=True,
              type=click.Path(exists=True))
@click.option("--c", "colors", type=int, required=True)
@click.option("--kind-target", type=click.Choice(["induced", "strong", "semi"]),
              default="induced")
@click.option("--kind-pattern", type=click.Choice(["induced", "strong", "semi"]),
              default="induced")
@click.option("--ordered", is_flag=True, default=False)
@click.option("--max-copies", type=int, default=oracle.DEFAULT_MAX_COPIES)
@click.option("--jobs", type=int, default=1)
def verify_arrows(hostfile, targetfile, patternfile, colors, kind_target,
                  kind_pattern, ordered, max_copies, jobs):
    def go():
        host = _load_system(hostfile)
        target = _load_system(targetfile)
        pattern = _load_system(patternfile)
        verdict = oracle.arrows(
            host, target, pattern, colors,
            kind_target=kind_target, kind_pattern=kind_pattern,
            ordered=ordered, jobs=jobs, max_copies=max_copies,
        )
        rec = {
            "holds": verdict.holds,
            "family": [sorted(img) for img in verdict.family],
            "counterexample": (
                None if verdict.counterexample is None
                else [
                    {"image": sorted(img), "color": col}
                    for img, col in zip(verdict.family, verdict.counterexample)
                ]
            ),
        }
        _emit(rec)
        return EXIT_OK if verdict.holds else EXIT_REFUTED

    _run(go)


@main.group()
def negative_cmd():
    """Counterexample colorings (negative results)."""


main.add_command(negative_cmd, name="negative")


@negative_cmd.command("demo")
@click.option("--mode",
              type=click.Choice(["incomplete", "nonhomogeneous", "ordering"]),
              required=True)
@click.option("--pattern", "patternfile", required=True,
              type=click.Path(exists=True))
@click.option("--host", "hostfile", type=click.Path(exists=True), default=None)
@click.option("--seed", type=int, default=0)
@click.option("--budget", type=int, default=200)
def negative_demo(mode, patternfile, hostfile, seed, budget):
    def go():
        pattern = _load_system(patternfile)
        if mode == "incomplete":
            if hostfile is None:
                raise InputError("incomplete demo needs --host")
            host = _load_system(hostfile)
            coloring, target, (fp, lp) = negative.incomplete_coloring_ordered(
                OrderedSteinerSystem(pattern), OrderedSteinerSystem(host)
            )
            ok, cert = negative.verify_no_mono(
                host, target, pattern, coloring, ordered=True
            )
            _emit({
                "mode": mode,
                "no_monochromatic_target": ok,
                "target_edges": target.sorted_edges(),
                "coloring": [
                    {"image": sorted(img), "color": col}
                    for img, col in sorted(
                        coloring.items(), key=lambda kv: sorted(kv[0])
                    )
                ],
                "violating_copy": sorted(cert) if cert else None,
            })
            return EXIT_OK if ok else EXIT_REFUTED
        if mode == "nonhomogeneous":
            if hostfile is None:
                raise InputError("nonhomogeneous demo needs --host")
            host = _load_system(hostfile)
            coloring, search, (fv, sv, k) = negative.nonhomogeneous_coloring(
                pattern, host, budget=budget, seed=seed
            )
            _emit({
                "mode": mode,
                "blocked_target_edges": search.g.sorted_edges(),
                "ordering_certificate_exhaustive": search.exhaustive,
                "coloring": [
                    {"image": sorted(img), "color": col}
                    for img, col in sorted(
                        coloring.items(), key=lambda kv: sorted(kv[0])
                    )
                ],
            })
            return EXIT_OK
        cert = negative.ordering_property_search(
            pattern, budget=budget, seed=seed
        )
        _emit({
            "mode": mode,
            "g_edges": cert.g.sorted_edges(),
            "exhaustive": cert.exhaustive,
            "orderings_checked": cert.orderings_checked,
            "seed": cert.seed,
        })

    _run(go)


if __name__ == "__main__":
    main()
