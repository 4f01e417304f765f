"""Command line surface: parse fixtures, run the pipeline, emit reports."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from .bundles import picard_basis
from .cohomology import (
    cohomology_dims,
    divisor_coeffs,
    psi_from_theta,
    restriction_degrees,
    verify_winding_theorem,
)
from .ext_chains import build_a2d_example, verify_a2d_configuration
from .io import InputDocument, InputError, TwistingSet, parse_input, report_bytes
from .lattice import LatticeError
from .polytope import interior_edge_keys
from .smoothing import MollifierParams, check_hessian_definiteness
from .spheres import (
    gamma_curve,
    theta_from_twisting,
    twisting,
    validate_twisting,
)
from .svg import render_svg
from .tropical import BoundedRegion, bounded_regions, tropical_curve
from .winding import winding_table


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropcoh",
        description="Exact combinatorics of tropical curves dual to subdivided lattice polygons.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, needs_input: bool):
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("--input", required=True, help="input document path")
        p.add_argument("--out", help="directory for emitted artifacts (default: stdout)")
        p.add_argument(
            "--format", choices=("json", "svg"), default="json", help="artifact format"
        )
        p.add_argument("--seed", type=int, help="recorded in the report envelope")
        p.add_argument("--threads", type=int, default=1, help="worker threads for enumerations")
        return p

    add("validate", "parse and validate an input document", True)
    add("tropical", "dual tropical curve of the subdivision", True)
    add("picard", "kernel basis of the region boundary map", True)

    for name, help_text in (
        ("sphere", "validate twisting numbers and build the support function"),
        ("winding", "winding-number table of the glued boundary curve"),
        ("cohomology", "toric line bundle cohomology from the support function"),
        ("verify-winding-theorem", "compare winding counts with cohomology dimensions"),
    ):
        p = add(name, help_text, True)
        p.add_argument("--region", help="bounded region: index or interior vertex 'x,y'")
        p.add_argument("--ell", help="twisting numbers: named set or comma list")

    p = add("a2d", "build and verify the spherical chain example", False)
    p.add_argument("--d", type=int, required=True, help="chain half-length, d >= 1")

    p = add("smooth-check", "sampled Hessian and gradient checks of the smoothed support", True)
    p.add_argument("--region", help="bounded region: index or interior vertex 'x,y'")
    p.add_argument("--ell", help="twisting numbers: named set or comma list")
    p.add_argument("--samples", type=int, default=24, help="Hessian sample count")
    p.add_argument("--epsilon", type=float, help="mollifier radius")
    p.add_argument("--order", type=int, help="quadrature order")
    return parser


def _load(args) -> InputDocument:
    path = Path(args.input)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse_input(data)


def _resolve_ell(doc: InputDocument, flag: Optional[str]) -> TwistingSet:
    if flag is None:
        raise InputError("--ell is required for this command")
    if flag in doc.twisting_sets:
        return doc.twisting_sets[flag]
    try:
        values = tuple(int(part) for part in flag.split(","))
    except ValueError as exc:
        raise InputError(
            f"--ell {flag!r} is neither a named twisting set nor a comma list of integers"
        ) from exc
    return TwistingSet(values)


def _resolve_region(curve, flag: Optional[str], tset: Optional[TwistingSet]) -> BoundedRegion:
    regions = bounded_regions(curve)
    if not regions:
        raise InputError("the input has no bounded region")
    if flag is None:
        if tset is not None and tset.region is not None:
            flag = f"{tset.region[0]},{tset.region[1]}"
        else:
            return regions[0]
    try:
        return regions[int(flag)]
    except IndexError as exc:
        raise InputError(f"region index {flag} out of range") from exc
    except ValueError:
        pass
    parts = flag.split(",")
    if len(parts) != 2:
        raise InputError(f"--region {flag!r} is neither an index nor a vertex 'x,y'")
    try:
        vertex = (int(parts[0]), int(parts[1]))
    except ValueError as exc:
        raise InputError(f"--region {flag!r} is neither an index nor a vertex 'x,y'") from exc
    for region in regions:
        if region.dual_vertex == vertex:
            return region
    raise InputError(f"{vertex} is not the dual vertex of a bounded region")


def _emit(args, payload: bytes, ext: str) -> None:
    if args.out:
        directory = Path(args.out)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / f"{args.command.replace('-', '_')}.{ext}").write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))


def _theta_pipeline(args):
    """Shared resolution: document -> region -> validated twisting -> theta."""
    doc = _load(args)
    curve = tropical_curve(doc.subdivision())
    tset = None
    if args.ell is not None and args.ell in doc.twisting_sets:
        tset = doc.twisting_sets[args.ell]
    region = _resolve_region(curve, args.region, tset)
    ell = _resolve_ell(doc, args.ell)
    tw = twisting(region, ell.values)
    return doc, curve, region, theta_from_twisting(tw)


def _edge_key_json(key):
    return [list(key[0]), list(key[1])]


def _cmd_validate(args) -> int:
    doc = _load(args)
    sub = doc.subdivision()
    curve = tropical_curve(sub)
    result = {
        "ok": True,
        "points": len(doc.points),
        "triangles": len(doc.triangles),
        "interior_edges": len(interior_edge_keys(sub)),
        "bounded_regions": len(bounded_regions(curve)),
        "twisting_sets": sorted(doc.twisting_sets),
        "kink_sets": sorted(doc.kink_sets),
    }
    _emit(args, report_bytes(args.command, result, args.seed), "json")
    return 0


def _cmd_tropical(args) -> int:
    doc = _load(args)
    curve = tropical_curve(doc.subdivision())
    if args.format == "svg":
        _emit(args, render_svg(curve), "svg")
        return 0
    result = {
        "vertices": [
            {"triangle": t, "position": list(v)} for t, v in enumerate(curve.vertices)
        ],
        "bounded_edges": [
            {
                "dual_edge": _edge_key_json(e.key),
                "endpoints": [list(e.p_plus), list(e.p_minus)],
                "tangent": list(e.n_e),
            }
            for e in sorted(curve.bounded, key=lambda e: e.key)
        ],
        "rays": [
            {
                "dual_edge": _edge_key_json(r.key),
                "origin": list(r.origin),
                "direction": list(r.direction),
            }
            for r in sorted(curve.rays, key=lambda r: r.key)
        ],
    }
    _emit(args, report_bytes(args.command, result, args.seed), "json")
    return 0


def _cmd_picard(args) -> int:
    doc = _load(args)
    sub = doc.subdivision()
    curve = tropical_curve(sub)
    keys = interior_edge_keys(sub)
    basis = picard_basis(curve)
    result = {
        "rank": len(basis),
        "edge_order": [_edge_key_json(k) for k in keys],
        "basis": [[vec.get(k, 0) for k in keys] for vec in basis],
    }
    _emit(args, report_bytes(args.command, result, args.seed), "json")
    return 0


def _cmd_sphere(args) -> int:
    doc = _load(args)
    curve = tropical_curve(doc.subdivision())
    tset = doc.twisting_sets.get(args.ell) if args.ell else None
    region = _resolve_region(curve, args.region, tset)
    ell = _resolve_ell(doc, args.ell)
    report = validate_twisting(ell.values, region)
    if not report.ok:
        raise InputError(
            "invalid twisting numbers: "
            + "; ".join(f"{i.code}: {i.message}" for i in report.issues)
        )
    theta = theta_from_twisting(twisting(region, ell.values))
    gamma = gamma_curve(theta)
    if args.format == "svg":
        _emit(args, render_svg(gamma), "svg")
        return 0
    result = {
        "region": list(region.dual_vertex),
        "ell": list(ell.values),
        "thetas": [list(t) for t in theta.thetas],
        "gamma": [list(v) for v in gamma.vertices],
    }
    _emit(args, report_bytes(args.command, result, args.seed), "json")
    return 0


def _cmd_winding(args) -> int:
    doc, curve, region, theta = _theta_pipeline(args)
    table = winding_table(theta, threads=max(1, args.threads))
    if args.format == "svg":
        _emit(args, render_svg(gamma_curve(theta), table), "svg")
        return 0
    even, odd = table.h_even_odd()
    result = {
        "region": list(region.dual_vertex),
        "bounds": list(table.bounds),
        "entries": [[p[0], p[1], w] for p, w in sorted(table.entries.items())],
        "h_even": even,
        "h_odd": odd,
    }
    _emit(args, report_bytes(args.command, result, args.seed), "json")
    return 0


def _cmd_cohomology(args) -> int:
    doc, curve, region, theta = _theta_pipeline(args)
    psi = psi_from_theta(theta)
    dims = cohomology_dims(psi, margin=doc.options.margin)
    result = {
        "region": list(region.dual_vertex),
        "rays": [list(u) for u in psi.fan.rays],
        "psi_parts": [list(m) for m in psi.parts],
        "divisor_coeffs": list(divisor_coeffs(psi)),
        "restriction_degrees": list(restriction_degrees(psi)),
        "dims": list(dims.as_tuple()),
    }
    _emit(args, report_bytes(args.command, result, args.seed), "json")
    return 0


def _cmd_verify_winding(args) -> int:
    doc, curve, region, theta = _theta_pipeline(args)
    rep = verify_winding_theorem(theta)
    result = {
        "region": list(region.dual_vertex),
        "h_even": rep.h_even,
        "h_odd": rep.h_odd,
        "dims": list(rep.dims.as_tuple()),
        "ok": rep.ok,
    }
    _emit(args, report_bytes(args.command, result, args.seed), "json")
    return 0 if rep.ok else 1


def _cmd_a2d(args) -> int:
    if args.d < 1:
        raise InputError("--d must be positive")
    example = build_a2d_example(args.d)
    report = verify_a2d_configuration(example)
    result = {
        "d": args.d,
        "ok": report.ok,
        "chain": list(example.chain),
        "checks": [
            {
                "left": c.left,
                "right": c.right,
                "kind": c.kind,
                "dims": list(c.dims),
                "ok": c.ok,
                "detail": c.detail,
            }
            for c in report.checks
        ],
        "failures": list(report.failures),
        "assumptions": list(report.assumptions),
    }
    _emit(args, report_bytes(args.command, result, args.seed), "json")
    return 0 if report.ok else 1


def _cmd_smooth_check(args) -> int:
    doc, curve, region, theta = _theta_pipeline(args)
    epsilon = args.epsilon or doc.options.epsilon or 0.25
    order = args.order or doc.options.quadrature_order
    params = (
        MollifierParams(epsilon=epsilon)
        if order is None
        else MollifierParams(epsilon=epsilon, quadrature_order=order)
    )
    rep = check_hessian_definiteness(theta, params, args.samples)
    result = {
        "region": list(region.dual_vertex),
        "convexity": rep.convexity,
        "epsilon": epsilon,
        "quadrature_order": params.quadrature_order,
        "hessian_samples": rep.hessian_samples,
        "hessian_failures": rep.hessian_failures,
        "min_abs_eigenvalue": rep.min_abs_eigenvalue,
        "gamma_samples": rep.gamma_samples,
        "max_gamma_distance": rep.max_gamma_distance,
        "grad_samples": rep.grad_samples,
        "max_hull_excess": rep.max_hull_excess,
        "ok": rep.ok,
    }
    _emit(args, report_bytes(args.command, result, args.seed), "json")
    return 0 if rep.ok else 1


_HANDLERS = {
    "validate": _cmd_validate,
    "tropical": _cmd_tropical,
    "picard": _cmd_picard,
    "sphere": _cmd_sphere,
    "winding": _cmd_winding,
    "cohomology": _cmd_cohomology,
    "verify-winding-theorem": _cmd_verify_winding,
    "a2d": _cmd_a2d,
    "smooth-check": _cmd_smooth_check,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except (InputError, LatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
