"""Command-line interface: verify, limitset, dimension, topology, pants, render.

Configs and reports are JSON.  Config schema:

    {"rank": int, "intervals": [[a, b], ...],
     "tolerance": float (optional), "reversing": [bool, ...] (optional)}

Raw generator files (counter-example testing) use:

    {"generators": [[a, b, c, d], ...], "tolerance": float (optional)}

Reports carry "schema_version": 1 and are serialized with sorted keys and a
fixed indent, so identical inputs give byte-identical files.  Exit codes:
0 all checks passed, 1 a check or estimation failed, 2 bad input or schema.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import limitset, mobius, schottky, surface, words
from .errors import (
    DepthOverflowError,
    FunnelGroupError,
    InvalidConfigError,
    NoBracketError,
    RankTooSmallError,
    SchemaError,
)
from .render import render_svg

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


@dataclass(frozen=True)
class RunConfig:
    rank: int
    intervals: tuple[tuple[float, float], ...]
    tolerance: float
    reversing: tuple[bool, ...] | None

    def schottky_config(self) -> schottky.SchottkyConfig:
        return schottky.SchottkyConfig.from_pairs(self.intervals)

    def as_dict(self) -> dict:
        out = {
            "rank": self.rank,
            "intervals": [list(p) for p in self.intervals],
            "tolerance": self.tolerance,
        }
        if self.reversing is not None:
            out["reversing"] = list(self.reversing)
        return out


_CONFIG_KEYS = {"rank", "intervals", "tolerance", "reversing"}


def load_config(path: str) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SchemaError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("config must be a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise SchemaError(f"unknown config keys: {sorted(unknown)}")
    rank = data.get("rank")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise SchemaError("'rank' must be a positive integer")
    intervals = data.get("intervals")
    if (
        not isinstance(intervals, list)
        or len(intervals) != rank
        or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(v, (int, float)) for v in p)
            for p in intervals
        )
    ):
        raise SchemaError("'intervals' must be a list of rank [a, b] number pairs")
    tolerance = data.get("tolerance", mobius.DEFAULT_EPS)
    if not isinstance(tolerance, (int, float)) or isinstance(tolerance, bool) or tolerance <= 0:
        raise SchemaError("'tolerance' must be a positive number")
    reversing = data.get("reversing")
    if reversing is not None:
        if (
            not isinstance(reversing, list)
            or len(reversing) != rank
            or not all(isinstance(f, bool) for f in reversing)
        ):
            raise SchemaError("'reversing' must be a list of rank booleans")
        reversing = tuple(reversing)
    return RunConfig(
        rank=rank,
        intervals=tuple((float(a), float(b)) for a, b in intervals),
        tolerance=float(tolerance),
        reversing=reversing,
    )


def load_raw_generators(path: str) -> tuple[tuple[mobius.ExtendedMobiusMap, ...], float]:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SchemaError(f"cannot read generator file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"generator file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "generators" not in data:
        raise SchemaError("raw generator file must be an object with a 'generators' list")
    quads = data["generators"]
    if (
        not isinstance(quads, list)
        or not quads
        or not all(
            isinstance(q, list) and len(q) == 4 and all(isinstance(v, (int, float)) for v in q)
            for q in quads
        )
    ):
        raise SchemaError("'generators' must be a nonempty list of [a, b, c, d] quadruples")
    tolerance = data.get("tolerance", mobius.DEFAULT_EPS)
    if not isinstance(tolerance, (int, float)) or tolerance <= 0:
        raise SchemaError("'tolerance' must be a positive number")
    try:
        gens = tuple(mobius.normalize(*map(float, q)) for q in quads)
    except ValueError as exc:
        raise SchemaError(f"bad generator record: {exc}") from exc
    return gens, float(tolerance)


def dump_report(report: dict, path: str | None) -> str:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if path:
        Path(path).write_text(text)
    return text


def _word_or_none(word: words.Word | None):
    return None if word is None else list(word.letters)


def _verify_payload(group: schottky.SchottkyGroup, eps: float, depth: int, freeness_depth: int) -> dict:
    vr = schottky.verify_schottky_condition(group, eps)
    hyp = words.purely_hyperbolic_sample(group, depth, eps)
    free = words.freeness_sample(group, freeness_depth, eps)
    cls = schottky.is_fuchsian_schottky(group, depth, eps=eps)
    return {
        "checks": {
            "disjoint": {"passed": vr.disjoint, "min_gap": vr.min_gap},
            "non_tangency": {
                "passed": vr.non_tangency,
                "margin": vr.min_gap,
                "tolerance": vr.tolerance,
            },
            "nesting": {
                "passed": vr.nesting_ok,
                "failures": [
                    {
                        "letter": f.letter,
                        "moved": [f.moved_interval.lo, f.moved_interval.hi],
                        "image": None if f.image is None else [f.image.lo, f.image.hi],
                        "target": [f.target.lo, f.target.hi],
                    }
                    for f in vr.nesting_failures
                ],
            },
            "purely_hyperbolic": {
                "passed": hyp.all_hyperbolic,
                "depth": depth,
                "offending_word": _word_or_none(hyp.offending_word),
            },
            "freeness": {
                "passed": free.passed,
                "depth": freeness_depth,
                "min_identity_deviation": free.min_identity_deviation,
                "closest_word": _word_or_none(free.closest_word),
            },
        },
        "classification": _classification_payload(cls),
        "passed": vr.passed and hyp.all_hyperbolic and free.passed and cls.verdict is True,
    }


def _classification_payload(cls: schottky.ClassificationReport) -> dict:
    return {
        "purely_hyperbolic_sample": cls.purely_hyperbolic_sample,
        "offending_word": _word_or_none(cls.offending_word),
        "sample_depth": cls.sample_depth,
        "disjoint_semicircles": cls.disjoint_semicircles,
        "dimension_value": cls.dimension_value,
        "dimension_at_most_half": cls.dimension_at_most_half,
        "is_fuchsian_schottky": cls.verdict,
        "note": cls.note,
    }


def cmd_verify(args) -> int:
    if args.raw_generators:
        gens, eps = load_raw_generators(args.raw_generators)
        hyp = words.purely_hyperbolic_sample(gens, args.depth, eps)
        free = words.freeness_sample(gens, args.freeness_depth, eps)
        cls = schottky.is_fuchsian_schottky(gens, args.depth, eps=eps)
        passed = hyp.all_hyperbolic and free.passed and cls.verdict is True
        report = {
            "schema_version": SCHEMA_VERSION,
            "mode": "raw-generators",
            "generators": [list(g.coefficients()) for g in gens],
            "checks": {
                "purely_hyperbolic": {
                    "passed": hyp.all_hyperbolic,
                    "depth": args.depth,
                    "offending_word": _word_or_none(hyp.offending_word),
                },
                "freeness": {
                    "passed": free.passed,
                    "depth": args.freeness_depth,
                    "min_identity_deviation": free.min_identity_deviation,
                    "closest_word": _word_or_none(free.closest_word),
                },
            },
            "classification": _classification_payload(cls),
            "passed": passed,
        }
    else:
        run = load_config(args.config)
        group = schottky.build_group(run.schottky_config())
        payload = _verify_payload(group, run.tolerance, args.depth, args.freeness_depth)
        report = {
            "schema_version": SCHEMA_VERSION,
            "mode": "config",
            "config": run.as_dict(),
            **payload,
        }
        if run.reversing is not None and any(run.reversing):
            ext = schottky.build_extended_group(run.schottky_config(), run.reversing)
            report["extended"] = {
                "generator_classes": [
                    mobius.classify(g, run.tolerance).value for g in ext.generators
                ],
                "orientation_subgroup_index": ext.orientation_subgroup.index,
                "reversing_generators": list(ext.orientation_subgroup.reversing_generators),
            }
        passed = report["passed"]
    text = dump_report(report, args.out)
    sys.stdout.write(text if args.out is None else f"report written to {args.out}\n")
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _base_group(run: RunConfig) -> schottky.SchottkyGroup:
    """Geometry commands work on the orientation-preserving pairing only."""
    if run.reversing is not None and any(run.reversing):
        raise SchemaError(
            "this command handles orientation-preserving configurations; "
            "drop the 'reversing' flags (verify reports on extended groups)"
        )
    return schottky.build_group(run.schottky_config())


def cmd_limitset(args) -> int:
    run = load_config(args.config)
    group = _base_group(run)
    vr = schottky.verify_schottky_condition(group, run.tolerance)
    if not vr.passed:
        sys.stderr.write("configuration fails verification; refinement refused\n")
        return EXIT_CHECK_FAILED
    layers = []
    for k in range(1, args.depth + 1):
        layer = limitset.refine(group, k, run.tolerance)
        layers.append(
            {
                "depth": k,
                "cells": layer.cell_count,
                "total_length": layer.total_length,
                "max_cell_length": layer.max_cell_length,
            }
        )
    totals = [entry["total_length"] for entry in layers]
    report = {
        "schema_version": SCHEMA_VERSION,
        "config": run.as_dict(),
        "depth": args.depth,
        "layers": layers,
        "total_length_sequence": totals,
        "contraction_ratios": [b / a for a, b in zip(totals, totals[1:])],
        "sample_point_count": layers[-1]["cells"],
    }
    text = dump_report(report, args.out)
    if args.svg:
        Path(args.svg).write_text(render_svg(group, args.depth, run.tolerance))
    sys.stdout.write(text if args.out is None else f"report written to {args.out}\n")
    return EXIT_OK


def _estimate_payload(est: limitset.DimensionEstimate) -> dict:
    out = {
        "value": est.value,
        "method": est.method.value,
        "bracket": list(est.bracket),
    }
    if est.resolution is not None:
        out["resolution"] = est.resolution
    if est.depth is not None:
        out["depth"] = est.depth
    if est.layer_table is not None:
        out["layers"] = [
            {"depth": d, "log_count": y, "log_inv_eps": x} for d, y, x in est.layer_table
        ]
    return out


def cmd_dimension(args) -> int:
    run = load_config(args.config)
    group = _base_group(run)
    report = {
        "schema_version": SCHEMA_VERSION,
        "config": run.as_dict(),
        "method": args.method,
    }
    pressure = boxcount = None
    if args.method in ("pressure", "both"):
        pressure = limitset.estimate_dimension_pressure(group, args.resolution)
        report["pressure"] = _estimate_payload(pressure)
    if args.method in ("boxcount", "both"):
        boxcount = limitset.estimate_dimension_boxcount(group, args.depth, run.tolerance)
        report["boxcount"] = _estimate_payload(boxcount)
    if pressure is not None and boxcount is not None:
        report["cross_method_gap"] = abs(pressure.value - boxcount.value)
    primary = pressure if pressure is not None else boxcount
    conv = limitset.convergence_type_report(primary)
    report["convergence_type"] = conv.convergence_type
    report["dimension_at_most_half"] = conv.dimension_at_most_half
    text = dump_report(report, args.out)
    sys.stdout.write(text if args.out is None else f"report written to {args.out}\n")
    return EXIT_OK


def _resolve_rank(args) -> int:
    if args.rank is not None:
        return args.rank
    if args.config is not None:
        return load_config(args.config).rank
    raise SchemaError("provide --rank or a config file")


def cmd_topology(args) -> int:
    rank = _resolve_rank(args)
    if rank < 1:
        raise SchemaError("rank must be at least 1")
    topo = surface.fuchsian_topology(rank)
    classical = surface.classical_funnels(rank)
    report = {
        "schema_version": SCHEMA_VERSION,
        "rank": rank,
        "fuchsian": {
            "genus": topo.genus,
            "funnels": topo.funnels,
            "cusps": topo.cusps,
            "euler": topo.euler,
            "surface": topo.surface_name,
        },
        "classical": {
            "genus": classical.genus,
            "options": [
                {
                    "divisor": opt.divisor,
                    "funnels": opt.funnels,
                    "relation_rank_eq_2g_plus_f_minus_1": opt.relation_holds,
                }
                for opt in classical.options
            ],
        },
    }
    if rank >= 2:
        row = surface.funnel_bound_comparison([rank]).rows[0]
        report["comparison"] = {
            "fuchsian_funnels": row.fuchsian_funnels,
            "classical_min": row.classical_min,
            "classical_max": row.classical_max,
            "min_matches_fuchsian_max": row.min_matches_fuchsian_max,
            "prime": row.prime,
        }
    if args.config is not None:
        run = load_config(args.config)
        group = schottky.build_group(run.schottky_config())
        ends = surface.end_decomposition(group, topo)
        report["ends"] = {
            "funnels": ends.funnels,
            "cusps": ends.cusps,
            "convex_cocompact": ends.convex_cocompact,
            "core_curves": [{"label": c.label, "length": c.length} for c in ends.core_curves],
            "note": ends.note,
        }
    text = dump_report(report, args.out)
    sys.stdout.write(text if args.out is None else f"report written to {args.out}\n")
    return EXIT_OK


def cmd_pants(args) -> int:
    rank = _resolve_rank(args)
    group = None
    if args.config is not None:
        run = load_config(args.config)
        group = schottky.build_group(run.schottky_config())
    try:
        rep = surface.pants_report(rank, group)
    except RankTooSmallError as exc:
        raise SchemaError(str(exc)) from exc
    report = {
        "schema_version": SCHEMA_VERSION,
        "rank": rep.rank,
        "num_pants": rep.num_pants,
        "twist_count": rep.twist_count,
        "signature": list(rep.signature),
        "fn_length_count": rep.fn_length_count,
        "fn_twist_count": rep.fn_twist_count,
        "bers_bound": rep.bers_bound,
        "euler": rep.euler,
        "gluing_graph": {
            "pieces": list(rep.pieces),
            "edges": [
                {
                    "pieces": [e.piece_a, e.piece_b],
                    "boundaries": [e.boundary_a, e.boundary_b],
                    "twist": e.twist,
                }
                for e in rep.edges
            ],
            "free_boundaries": list(rep.free_boundaries),
        },
        "consistency_flags": list(rep.consistency_flags),
    }
    if rep.curve_lengths is not None:
        report["curve_lengths"] = dict(sorted(rep.curve_lengths.items()))
    text = dump_report(report, args.out)
    sys.stdout.write(text if args.out is None else f"report written to {args.out}\n")
    return EXIT_OK


def cmd_render(args) -> int:
    run = load_config(args.config)
    group = _base_group(run)
    svg = render_svg(group, args.depth, run.tolerance)
    Path(args.out).write_text(svg)
    sys.stdout.write(f"svg written to {args.out}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="funnelgroup",
        description="Fuchsian Schottky groups: verification, limit sets, dimension, topology",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the defining conditions of a configuration")
    p.add_argument("config", nargs="?", help="JSON configuration file")
    p.add_argument("--raw-generators", help="JSON file of [a,b,c,d] generator quadruples")
    p.add_argument("--depth", type=int, default=6, help="hyperbolicity sampling depth")
    p.add_argument("--freeness-depth", type=int, default=8, help="identity-proximity sampling depth")
    p.add_argument("--out", help="report path (default: print to stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("limitset", help="refinement layers and limit-set sample")
    p.add_argument("config")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--svg", help="also write an SVG rendering here")
    p.add_argument("--out", help="report path (default: print to stdout)")
    p.set_defaults(func=cmd_limitset)

    p = sub.add_parser("dimension", help="Hausdorff-dimension estimates")
    p.add_argument("config")
    p.add_argument("--method", choices=["pressure", "boxcount", "both"], default="both")
    p.add_argument("--depth", type=int, default=6, help="box-counting refinement depth")
    p.add_argument("--resolution", type=float, default=1e-4, help="bisection resolution")
    p.add_argument("--out", help="report path (default: print to stdout)")
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("topology", help="quotient-surface topology and funnel options")
    p.add_argument("config", nargs="?")
    p.add_argument("--rank", type=int)
    p.add_argument("--out", help="report path (default: print to stdout)")
    p.set_defaults(func=cmd_topology)

    p = sub.add_parser("pants", help="pants decomposition report")
    p.add_argument("config", nargs="?")
    p.add_argument("--rank", type=int)
    p.add_argument("--out", help="report path (default: print to stdout)")
    p.set_defaults(func=cmd_pants)

    p = sub.add_parser("render", help="SVG of semicircles, cells, and limit points")
    p.add_argument("config")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--out", default="limitset.svg")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and bool(args.config) == bool(args.raw_generators):
        sys.stderr.write("verify needs exactly one of: config file, --raw-generators\n")
        return EXIT_BAD_INPUT
    try:
        return args.func(args)
    except (SchemaError, InvalidConfigError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_BAD_INPUT
    except (NoBracketError, DepthOverflowError) as exc:
        sys.stderr.write(f"estimation failed: {exc}\n")
        return EXIT_CHECK_FAILED
    except FunnelGroupError as exc:
        sys.stderr.write(f"check failed: {exc}\n")
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
