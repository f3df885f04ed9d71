"""Command-line interface.

Every command prints one JSON report on stdout.  Exit codes:
0 certified / consistent, 1 valid run with a negative answer,
2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from cuspgauge import bounds, filling, lattice, surfaces, torus_metric
from cuspgauge.catalog import load_catalog
from cuspgauge.config import tolerances
from cuspgauge.errors import CuspGaugeError, Infeasible, InvalidInput, NumericalInconsistency
from cuspgauge.report import ReportEnvelope, rows_to_csv

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2, 3

PROFILE_COLUMNS = ("r", "f", "df", "d2f", "g", "dg", "d2g")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(f"{self.prog}: {message}")


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two numbers, got {text!r}") from None


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _lattice_args(p: argparse.ArgumentParser):
    p.add_argument("--v1", type=_pair, help="first lattice vector 'x,y'")
    p.add_argument("--v2", type=_pair, help="second lattice vector 'x,y'")
    p.add_argument("--maximal", action="store_true", help="the lattice is claimed to come from a maximal cusp")
    p.add_argument("--catalog", type=Path, help="catalog JSON file instead of --v1/--v2")
    p.add_argument("--record", help="record name in the catalog (default: first record)")
    p.add_argument("--cusp", type=int, default=0, help="cusp index within the record")
    p.add_argument("--strict", action="store_true", help="fail on any invalid catalog record")


def _lattices_from(args) -> tuple[list[lattice.CuspLattice], list[str]]:
    if args.catalog is not None:
        records, diagnostics = load_catalog(args.catalog, strict=args.strict)
        if not records:
            raise InvalidInput("catalog has no valid records")
        if args.record is None:
            rec = records[0]
        else:
            matches = [r for r in records if r.name == args.record]
            if not matches:
                raise InvalidInput(f"no valid record named {args.record!r}")
            rec = matches[0]
        args._record = rec
        return list(rec.cusps), diagnostics
    if args.v1 is None or args.v2 is None:
        raise InvalidInput("give --v1 and --v2, or --catalog")
    return [lattice.CuspLattice.from_lists(args.v1, args.v2, args.maximal)], []


def _one_lattice(args) -> tuple[lattice.CuspLattice, list[str]]:
    lats, diagnostics = _lattices_from(args)
    if not 0 <= args.cusp < len(lats):
        raise InvalidInput(f"cusp index {args.cusp} out of range (record has {len(lats)})")
    return lats[args.cusp], diagnostics


def _measurement(m: lattice.SlopeMeasurement) -> dict:
    return {"slope": str(m.slope), "p": m.slope.p, "q": m.slope.q, "translation": list(m.translation), "length": m.length}


def _verdict(ok: bool) -> str:
    return "certified" if ok else "not-certified"


# -- command handlers: each returns (results, verdict, diagnostics) -----------


def cmd_cusp_analyze(args):
    lat, diag = _one_lattice(args)
    failures = lattice.maximality_failures(lat)
    minimal = lattice.minimal_slope(lat)
    results = {
        "v1": list(lat.v1),
        "v2": list(lat.v2),
        "claimed_maximal": lat.claimed_maximal,
        "area": lattice.lattice_area(lat),
        "cusp_volume": bounds.cusp_volume(lat),
        "minimal_slope": _measurement(minimal),
        "maximality_failures": failures,
        "basis_lengths": [lattice.slope_length(lat, lattice.Slope(1, 0)).length,
                          lattice.slope_length(lat, lattice.Slope(0, 1)).length],
    }
    return results, _verdict(not failures), diag


def cmd_cusp_slopes(args):
    lat, diag = _one_lattice(args)
    slopes = lattice.enumerate_slopes(lat, args.max_length)
    return {"max_length": args.max_length, "count": len(slopes), "slopes": [_measurement(m) for m in slopes]}, "certified", diag


def cmd_cusp_census(args):
    lat, diag = _one_lattice(args)
    census = filling.short_slope_census(lat)
    results = {
        "count": census["count"],
        "limit": census["limit"],
        "within_limit": census["within_limit"],
        "slopes": [_measurement(m) for m in census["slopes"]],
    }
    return results, _verdict(census["within_limit"]), diag


def cmd_fill_certify(args):
    lats, diag = _lattices_from(args)
    slopes = [lattice.parse_slope(s) for s in args.slope]
    spec = filling.filling_spec_from_lattices(lats, slopes, args.epsilon)
    cert = filling.certify_two_pi(spec)
    return cert.as_dict(), cert.verdict, diag


def cmd_fill_audit(args):
    lat, diag = _one_lattice(args)
    report = filling.distance_criterion_audit(lat, lattice.parse_slope(args.slope), lattice.parse_slope(args.reference))
    return report, _verdict(report["hypothesis_holds"] and report["bound_consistent"]), diag


def cmd_fill_fraction(args):
    text = args.fraction
    if "/" not in text:
        raise InvalidInput(f"expected P/Q, got {text!r}")
    a, _, b = text.partition("/")
    try:
        p, q = int(a), int(b)
    except ValueError:
        raise InvalidInput(f"expected integers P/Q, got {text!r}") from None
    report = filling.surgery_fraction_check(p, q)
    report["distance_threshold"] = filling.distance_threshold()
    report["outcome"] = "certified-threshold" if report["satisfied"] else "below-threshold"
    return report, _verdict(report["satisfied"]), []


def cmd_cover_certify(args):
    meridians = args.meridian if args.meridian else [1.0] * len(args.index)
    spec = filling.BranchedCoverSpec(args.degree, tuple(args.index), tuple(meridians), args.base_volume)
    report = filling.certify_branched_cover(spec)
    return report, report["verdict"], []


def cmd_metric_build(args):
    t = args.t
    notes = []
    if t is None:
        est = torus_metric.alpha_estimate(args.l1, torus_metric.SearchOptions(grid=torus_metric.GridOptions(args.samples)))
        t = est.t_star
        notes.append("t chosen to maximize the certified constant")
    profile = torus_metric.build_profile(args.l1, args.l2, t, torus_metric.GridOptions(args.samples))
    if args.collar:
        profile = torus_metric.attach_collar(profile, args.collar)
    cert = torus_metric.pinch_certificate(profile)
    if args.csv:
        args.csv.write_text(rows_to_csv(profile.to_rows(), PROFILE_COLUMNS), encoding="utf-8")
    results = {
        "profile": {
            "l1": profile.l1,
            "l2": profile.l2,
            "t": t,
            "r0": profile.r0,
            "r_outer": profile.r_outer,
            "switch": profile.switch,
            "breakpoints": profile.breakpoints,
            "cone_slope": profile.cone_slope,
            "samples": int(profile.s.size),
        },
        "curvature": cert.curvature.summary(),
        "volume": torus_metric.volume(profile),
        "certificate": cert.as_dict(),
        "notes": notes,
    }
    return results, _verdict(cert.valid), []


def cmd_metric_curve(args):
    opts = torus_metric.SearchOptions(grid=torus_metric.GridOptions(args.samples))
    rows = torus_metric.alpha_curve(args.grid, opts)
    if args.csv:
        args.csv.write_text(rows_to_csv(rows, torus_metric.CURVE_COLUMNS), encoding="utf-8")
    ok = all(r["status"] == "ok" for r in rows)
    return {"rows": rows}, "certified" if ok else "infeasible", []


def cmd_bounds_propagate(args):
    report = bounds.propagate_filling_bounds(args.volume, args.length, args.alpha)
    return report.as_dict(), "certified", []


def cmd_bounds_gromov(args):
    interval = bounds.gromov_interval(args.norm_filled, args.length, args.alpha)
    return interval.as_dict(), _verdict(interval.hi > interval.lo), []


def cmd_surface_audit(args):
    surface = surfaces.SurfaceData(args.genus, args.boundary, not args.non_orientable)
    report = surfaces.boundary_area_audit(args.length, args.curves, surface)
    return report, _verdict(report["consistent"]), []


def cmd_surface_tradeoff(args):
    return surfaces.genus_slope_tradeoff(genus=args.genus, q=args.q), "certified", []


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cuspgauge", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    cusp = groups.add_parser("cusp", help="cusp lattice geometry").add_subparsers(dest="action", required=True)
    p = cusp.add_parser("analyze", help="area, minimal slope and maximality checks")
    _lattice_args(p)
    p.set_defaults(func=cmd_cusp_analyze)
    p = cusp.add_parser("slopes", help="list slopes up to a length")
    _lattice_args(p)
    p.add_argument("--max-length", type=float, required=True)
    p.set_defaults(func=cmd_cusp_slopes)
    p = cusp.add_parser("short-census", help="slopes of length <= 2pi on a maximal cusp")
    _lattice_args(p)
    p.set_defaults(func=cmd_cusp_census)

    fill = groups.add_parser("fill", help="filling certificates").add_subparsers(dest="action", required=True)
    p = fill.add_parser("certify", help="every slope longer than 2pi + epsilon?")
    _lattice_args(p)
    p.add_argument("--slope", action="append", required=True, help="'p,q', one per cusp in order")
    p.add_argument("--epsilon", type=float, default=0.0)
    p.set_defaults(func=cmd_fill_certify)
    p = fill.add_parser("audit-distance", help="intersection-number criteria against a reference slope")
    _lattice_args(p)
    p.add_argument("--slope", required=True)
    p.add_argument("--reference", required=True)
    p.set_defaults(func=cmd_fill_audit)
    p = fill.add_parser("fraction", help="p/q surgery on a knot in S^3: is |q| > 22?")
    p.add_argument("fraction")
    p.set_defaults(func=cmd_fill_fraction)

    cover = groups.add_parser("cover", help="branched covers").add_subparsers(dest="action", required=True)
    p = cover.add_parser("certify", help="lifted meridian lengths >= 7?")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--index", type=int, action="append", required=True, help="branching index, one per lift")
    p.add_argument("--meridian", type=float, action="append", help="base meridian length per lift (default 1)")
    p.add_argument("--base-volume", type=float)
    p.set_defaults(func=cmd_cover_certify)

    metric = groups.add_parser("metric", help="solid-torus filling metrics").add_subparsers(dest="action", required=True)
    p = metric.add_parser("build", help="build and certify one profile")
    p.add_argument("--l1", type=float, required=True)
    p.add_argument("--l2", type=float, default=1.0)
    p.add_argument("--t", type=float, help="target pinching (default: best certified)")
    p.add_argument("--collar", type=float, help="attach a hyperbolic collar of this width")
    p.add_argument("--samples", type=int, default=torus_metric.DEFAULT_SAMPLES)
    p.add_argument("--csv", type=Path, help="write the sampled profile here")
    p.set_defaults(func=cmd_metric_build)
    p = metric.add_parser("alpha-curve", help="certified constant over a grid of meridian lengths")
    p.add_argument("--grid", type=_floats, required=True, help="comma-separated l1 values")
    p.add_argument("--samples", type=int, default=torus_metric.DEFAULT_SAMPLES)
    p.add_argument("--csv", type=Path, help="write the table here")
    p.set_defaults(func=cmd_metric_curve)

    bnd = groups.add_parser("bounds", help="volume and Gromov-norm bounds").add_subparsers(dest="action", required=True)
    p = bnd.add_parser("propagate", help="volume and curvature of the filled manifold")
    p.add_argument("--volume", type=float, required=True, help="hyperbolic volume of the unfilled manifold")
    p.add_argument("--length", type=float, required=True, help="shortest filling slope length")
    p.add_argument("--alpha", type=float, help="pinching constant (default: estimated)")
    p.set_defaults(func=cmd_bounds_propagate)
    p = bnd.add_parser("gromov", help="Gromov-norm interval of the unfilled manifold")
    p.add_argument("--norm-filled", type=float, required=True)
    p.add_argument("--length", type=float, required=True)
    p.add_argument("--alpha", type=float)
    p.set_defaults(func=cmd_bounds_gromov)

    surf = groups.add_parser("surface", help="boundary-slope inequalities").add_subparsers(dest="action", required=True)
    p = surf.add_parser("audit", help="check l(s) |boundary curves| < -2pi chi")
    p.add_argument("--length", type=float, required=True)
    p.add_argument("--curves", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--boundary", type=int, required=True)
    p.add_argument("--non-orientable", action="store_true")
    p.set_defaults(func=cmd_surface_audit)
    p = surf.add_parser("tradeoff", help="genus versus boundary-slope denominator")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--genus", type=int)
    which.add_argument("--q", type=int)
    p.set_defaults(func=cmd_surface_tradeoff)
    return parser


def _echo(args) -> dict:
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(args).items())
            if k not in ("func", "_record") and v is not None}


def run_command(argv: list[str] | None = None) -> tuple[int, ReportEnvelope]:
    """Parse ``argv`` and run one command, never raising for user-facing failures."""
    argv = list(sys.argv[1:] if argv is None else argv)
    command = " ".join(a for a in argv[:2] if not a.startswith("-"))
    inputs: dict = {"argv": argv}
    try:
        tol = tolerances().as_dict()
    except InvalidInput as exc:
        return EXIT_INVALID, ReportEnvelope(command, inputs, {}, "invalid-input", {}, error=str(exc))
    try:
        args = build_parser().parse_args(argv)
        inputs = _echo(args)
        results, verdict, diagnostics = args.func(args)
    except InvalidInput as exc:
        return EXIT_INVALID, ReportEnvelope(command, inputs, {}, "invalid-input", tol, error=str(exc))
    except Infeasible as exc:
        return EXIT_NEGATIVE, ReportEnvelope(command, inputs, {}, "infeasible", tol, error=str(exc))
    except NumericalInconsistency as exc:
        return EXIT_NUMERICAL, ReportEnvelope(command, inputs, {}, "not-certified", tol, error=str(exc))
    except CuspGaugeError as exc:
        return exc.exit_code, ReportEnvelope(command, inputs, {}, "not-certified", tol, error=str(exc))
    code = EXIT_OK if verdict == "certified" else EXIT_NEGATIVE
    return code, ReportEnvelope(command, inputs, results, verdict, tol, diagnostics=diagnostics)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help") or "-h" in argv or "--help" in argv:
        try:
            build_parser().parse_args(argv or ["--help"])
        except SystemExit as exc:
            return int(exc.code or 0)
    code, envelope = run_command(argv)
    sys.stdout.write(envelope.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
