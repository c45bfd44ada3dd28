"""Command-line front door.

Subcommands: list, volume, pi, verify, mesh, check, screw, steiner.  Every
command takes --json for machine-readable output; default output is aligned
text.  Exit codes: 0 success, 1 domain error or failed validation, 2 usage.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import exhaustion, printcheck, solids, stl_io, verify
from .mesh import add_struts, make_screw, mesh_stats, pack_mesh, steiner_chain, tessellate
from .stl_io import StlFormatError


def _parse_params(pairs: list[str] | None) -> dict[str, float]:
    params: dict[str, float] = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep:
            raise ValueError(f"--param expects k=v, got {pair!r}")
        try:
            params[key] = float(value)
        except ValueError:
            raise ValueError(f"--param {key}: {value!r} is not a number") from None
    return params


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2) if args.json else text)


def _write_stl(path: str, mesh, encoding: str, name: str) -> int:
    if encoding == "ascii":
        data = stl_io.write_ascii(mesh, name).encode("ascii")
    else:
        data = stl_io.write_binary(mesh)
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)


def _cmd_list(args) -> int:
    schemas = {kind: solids.param_schema(kind) for kind in solids.CONSTRUCTORS}
    if args.json:
        print(json.dumps(schemas, indent=2))
        return 0
    print(f"{'kind':22s} parameters (defaults)")
    for kind, schema in schemas.items():
        params = ", ".join(f"{k}={v}" for k, v in schema.items())
        print(f"{kind:22s} {params}")
    return 0


def _cmd_volume(args) -> int:
    spec = solids.make_solid(args.kind, **_parse_params(args.param))
    payload: dict = {"kind": args.kind, "params": spec.params, "method": args.method}
    if args.method == "exact":
        if spec.exact_volume is None:
            raise ValueError(f"{args.kind} has no closed-form volume")
        payload["volume"] = spec.exact_volume
        text = f"{spec.exact_volume:.6f}"
    elif args.method == "sum":
        value = exhaustion.archimedes_sum(spec.cross_section, spec.support, args.slices)
        payload.update(volume=value, slices=args.slices)
        text = f"{value:.6f}  (right-endpoint sum, {args.slices} slices)"
    elif args.method == "bounds":
        pair = exhaustion.riemann_bounds(
            spec.cross_section, spec.support, args.slices, args.probes
        )
        payload.update(lower=pair.lower, upper=pair.upper, slices=args.slices)
        text = (
            f"lower {pair.lower:.6f}\nupper {pair.upper:.6f}\n"
            f"gap   {pair.gap:.6f}  ({args.slices} cells)"
        )
    else:  # mc
        est, se = exhaustion.monte_carlo_volume(spec, args.samples, args.seed)
        payload.update(estimate=est, std_error=se, samples=args.samples, seed=args.seed)
        text = f"{est:.6f} +/- {se:.6f}  ({args.samples} samples, seed {args.seed})"
    _emit(args, payload, text)
    return 0


def _cmd_pi(args) -> int:
    rows = []
    n = args.sides
    for _ in range(args.doublings + 1):
        s = exhaustion.polygon_sandwich(n, 1.0)
        rows.append(
            {"n": n, "inner": s.inner_circumference, "outer": s.outer_circumference, "gap": s.gap}
        )
        n *= 2
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'n':>6s} {'inner':>12s} {'outer':>12s} {'gap':>12s}")
    for row in rows:
        print(f"{row['n']:6d} {row['inner']:12.6f} {row['outer']:12.6f} {row['gap']:12.6f}")
    return 0


def _cmd_verify(args) -> int:
    kind = None if args.all else args.kind
    checks = verify.run_checks(kind)
    ok_all = all(ok for _, ok, _ in checks)
    if args.json:
        print(
            json.dumps(
                {
                    "ok": ok_all,
                    "checks": [
                        {"name": n, "ok": ok, "detail": d} for n, ok, d in checks
                    ],
                },
                indent=2,
            )
        )
    else:
        width = max(len(n) for n, _, _ in checks)
        for name, ok, detail in checks:
            print(f"{name:{width}s}  {'pass' if ok else 'FAIL'}  {detail}")
        print(f"{sum(ok for _, ok, _ in checks)}/{len(checks)} checks passed")
    return 0 if ok_all else 1


def _cmd_mesh(args) -> int:
    spec = solids.make_solid(args.kind, **_parse_params(args.param))
    if args.kind == "steiner_pack":
        raise ValueError("use the steiner subcommand for sphere packs")
    mesh = tessellate(spec, args.resolution, args.resolution)
    if args.units == "inch":
        mesh = stl_io.scale_mesh(mesh, units=("inch", "mm"))
    size = _write_stl(args.out, mesh, args.format, args.kind)
    st = mesh_stats(mesh)
    payload = {
        "kind": args.kind,
        "file": args.out,
        "format": args.format,
        "bytes": size,
        "triangles": st.triangle_count,
        "signedVolume": st.signed_volume,
        "surfaceArea": st.surface_area,
        "watertight": st.watertight,
        "eulerCharacteristic": st.euler_characteristic,
    }
    text = (
        f"wrote {args.out} ({args.format}, {size} bytes)\n"
        f"triangles  {st.triangle_count}\n"
        f"volume     {st.signed_volume:.6f} mm^3\n"
        f"area       {st.surface_area:.6f} mm^2\n"
        f"watertight {st.watertight}"
    )
    _emit(args, payload, text)
    return 0


def _profile_from_file(path: str) -> dict:
    values: dict = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"profile line {line!r} is not key=value")
            key = key.strip()
            value = value.strip()
            if key == "max_bbox_mm":
                parts = [float(v) for v in value.split(",")]
                values[key] = tuple(parts * 3 if len(parts) == 1 else parts)
            else:
                values[key] = float(value)
    return values


def _cmd_check(args) -> int:
    with open(args.file, "rb") as fh:
        doc = stl_io.read_stl(fh.read())
    mesh = doc.to_mesh()
    values = _profile_from_file(args.profile) if args.profile else {}
    if args.min_wall is not None:
        values["min_wall_mm"] = args.min_wall
    if args.cost_base is not None:
        values["cost_base"] = args.cost_base
    if args.cost_per_cm3 is not None:
        values["cost_per_cm3"] = args.cost_per_cm3
    if args.max_bbox is not None:
        values["max_bbox_mm"] = (args.max_bbox,) * 3
    report = printcheck.validate(mesh, printcheck.PrintProfile(**values))
    print(report.to_json())
    return 1 if report.verdict == "fail" else 0


def _cmd_screw(args) -> int:
    tube, rotor = make_screw(
        args.shaft, args.blade, args.pitch, args.turns, args.resolution
    )
    height = args.pitch * args.turns
    thickness = args.pitch / 8.0
    tube_inner = args.blade + 1.0
    contacts = []
    for j in range(args.struts):
        frac = j / args.struts
        theta = 2.0 * math.pi * args.turns * frac
        z = 0.5 * thickness + (height - thickness) * frac
        c, s = math.cos(theta), math.sin(theta)
        contacts.append(
            ((args.blade * c, args.blade * s, z), (tube_inner * c, tube_inner * s, z))
        )
    combined = add_struts([tube, rotor], contacts, args.strut_radius)
    size = _write_stl(args.out, combined, args.format, "screw")
    strut_state = printcheck.check_struts(
        [tube, rotor], [args.strut_radius] * args.struts
    )
    st = mesh_stats(combined)
    payload = {
        "file": args.out,
        "bytes": size,
        "parts": 2,
        "struts": args.struts,
        "strutChecks": strut_state,
        "tubeWatertight": mesh_stats(tube).watertight,
        "rotorWatertight": mesh_stats(rotor).watertight,
        "triangles": st.triangle_count,
    }
    text = (
        f"wrote {args.out} ({size} bytes)\n"
        f"tube watertight  {mesh_stats(tube).watertight}\n"
        f"rotor watertight {mesh_stats(rotor).watertight}\n"
        f"struts           {args.struts} x r={args.strut_radius} mm -> {strut_state}"
    )
    _emit(args, payload, text)
    return 0


def _cmd_steiner(args) -> int:
    pack = steiner_chain(args.n, r_outer=args.r_outer, mobius_a=args.mobius)
    mesh = pack_mesh(pack, args.resolution)
    size = _write_stl(args.out, mesh, args.format, "steiner")
    payload = {
        "file": args.out,
        "bytes": size,
        "spheres": len(pack.spheres),
        "radii": [r for _, r in pack.spheres],
        "maxTangencyResidual": pack.max_tangency_residual(),
    }
    radii = " ".join(f"{r:.3f}" for _, r in pack.spheres)
    text = (
        f"wrote {args.out} ({size} bytes)\n"
        f"spheres {len(pack.spheres)}: radii {radii}\n"
        f"max tangency residual {pack.max_tangency_residual():.2e}"
    )
    _emit(args, payload, text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="archimedes",
        description="Classical solids: exhaustion volumes, meshes, STL, print checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, helptext):
        p = sub.add_parser(name, help=helptext)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    add("list", _cmd_list, "catalog kinds and parameter schemas")

    p = add("volume", _cmd_volume, "compute a solid volume")
    p.add_argument("kind")
    p.add_argument("--param", action="append", metavar="K=V")
    p.add_argument("--method", choices=("exact", "sum", "bounds", "mc"), default="exact")
    p.add_argument("--slices", type=int, default=10_000)
    p.add_argument("--probes", type=int, default=8)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)

    p = add("pi", _cmd_pi, "polygon sandwich bracketing pi")
    p.add_argument("--sides", type=int, required=True)
    p.add_argument("--doublings", type=int, default=0, help="extra rows, doubling n")

    p = add("verify", _cmd_verify, "run the invariant suite")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--kind")
    g.add_argument("--all", action="store_true")

    p = add("mesh", _cmd_mesh, "tessellate a solid and write STL")
    p.add_argument("kind")
    p.add_argument("--param", action="append", metavar="K=V")
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("ascii", "binary"), default="binary")
    p.add_argument("--units", choices=("mm", "inch"), default="mm")

    p = add("check", _cmd_check, "printability report for an STL file")
    p.add_argument("file")
    p.add_argument("--profile", help="key=value file with profile overrides")
    p.add_argument("--min-wall", type=float, dest="min_wall")
    p.add_argument("--cost-base", type=float, dest="cost_base")
    p.add_argument("--cost-per-cm3", type=float, dest="cost_per_cm3")
    p.add_argument("--max-bbox", type=float, dest="max_bbox")

    p = add("screw", _cmd_screw, "water screw assembly with breakaway struts")
    p.add_argument("--shaft", type=float, default=4.0)
    p.add_argument("--blade", type=float, default=10.0)
    p.add_argument("--pitch", type=float, default=20.0)
    p.add_argument("--turns", type=float, default=3.0)
    p.add_argument("--struts", type=int, default=4)
    p.add_argument("--strut-radius", type=float, default=1.5, dest="strut_radius")
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--format", choices=("ascii", "binary"), default="binary")
    p.add_argument("--out", required=True)

    p = add("steiner", _cmd_steiner, "Soddy sphere pack STL")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--mobius", type=float, default=0.0)
    p.add_argument("--r-outer", type=float, default=30.0, dest="r_outer")
    p.add_argument("--resolution", type=int, default=48)
    p.add_argument("--format", choices=("ascii", "binary"), default="binary")
    p.add_argument("--out", required=True)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse argv and execute; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, StlFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
