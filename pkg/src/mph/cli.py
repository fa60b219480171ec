"""Command-line surface: diagrams, slices, distances, demos, mesh dumps.

Exit codes: 0 success, 1 I/O or parse failure, 2 validation failure,
3 demo check failure.  All floating-point output is printed with 12
significant digits so repeated runs are byte-identical.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import distance, foliation, persistence, shapes
from .foliation import default_offset_radius, make_admissible, pair_through, slice_grid
from .simplicial import FormatError, ParameterPoint, dump_pair, load_pair

PRECISION = 12

CAVEAT = "lower bound of D (sampled); finitely many slices never certify the supremum"


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return f"{x:.{PRECISION}g}"


def _json_ready(obj):
    if isinstance(obj, float):
        return "inf" if math.isinf(obj) else float(f"{obj:.{PRECISION}g}")
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_json_ready(v) for v in obj]
    return obj


def _dumps(obj) -> str:
    return json.dumps(_json_ready(obj), indent=2) + "\n"


def _parse_vector(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"malformed vector {text!r}; expected comma-separated numbers") from None


def _parse_degrees(text: str) -> range:
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
    else:
        lo_text = hi_text = text
    try:
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise ValueError(f"malformed degree range {text!r}; expected 'a..b' or 'k'") from None
    if lo < 0 or hi < lo:
        raise ValueError(f"empty or negative degree range {text!r}")
    return range(lo, hi + 1)


def _load_file(path: str):
    return load_pair(Path(path).read_text())


def _pair_from_args(args, dimension: int):
    if args.l is not None:
        direction = _parse_vector(args.l)
        offset = _parse_vector(args.b) if args.b is not None else (0.0,) * len(direction)
        pair = make_admissible(direction, offset)
        if pair.dimension != dimension:
            raise ValueError(
                f"pair dimension {pair.dimension} does not match input dimension {dimension}"
            )
        return pair
    if args.b is not None:
        raise ValueError("--b requires --l")
    if dimension == 1:
        return make_admissible((1.0,), (0.0,))
    raise ValueError("input has dimension > 1; provide --l (and optionally --b)")


def _compute_diagrams(args):
    K, f = _load_file(args.input)
    pair = _pair_from_args(args, f.dimension)
    g = foliation.reduce(f, pair)
    degrees = _parse_degrees(args.degrees)
    computed = persistence.diagram(
        K, g, max_degree=min(degrees.stop - 1, K.dim), field_prime=args.field_prime
    ) if K.simplices else []
    by_degree = {d.degree: d for d in computed}
    return [
        by_degree.get(i, persistence.PersistenceDiagram(i, ())) for i in degrees
    ]


def cmd_diagram(args) -> int:
    diagrams = _compute_diagrams(args)
    if args.format == "csv":
        text = persistence.diagrams_to_csv(diagrams, precision=PRECISION)
        if args.output:
            Path(f"{args.output}.csv").write_text(text)
        else:
            sys.stdout.write(text)
        return 0
    if args.output:
        for d in diagrams:
            path = Path(f"{args.output}.deg{d.degree}.json")
            path.write_text(_dumps(persistence.diagram_to_json(d)))
    else:
        sys.stdout.write(_dumps([persistence.diagram_to_json(d) for d in diagrams]))
    return 0


def cmd_slice(args) -> int:
    point = ParameterPoint(_parse_vector(args.u), _parse_vector(args.v))
    sp = pair_through(point)
    sys.stdout.write(_dumps({
        "l": list(sp.pair.direction),
        "b": list(sp.pair.offset),
        "s": sp.lo,
        "t": sp.hi,
    }))
    return 0


def cmd_bottleneck(args) -> int:
    d1 = persistence.diagram_from_json(json.loads(Path(args.d1).read_text()))
    d2 = persistence.diagram_from_json(json.loads(Path(args.d2).read_text()))
    sys.stdout.write(_fmt(distance.bottleneck(d1, d2)) + "\n")
    return 0


def cmd_multidist(args) -> int:
    KX, fX = _load_file(args.input_x)
    KY, fY = _load_file(args.input_y)
    radius = args.offset_radius
    if radius is None:
        radius = default_offset_radius(fX, fY)
    pairs = slice_grid(fX.dimension, args.directions, args.offsets, radius)
    estimate = distance.multidim_distance(
        KX, fX, KY, fY, args.degree, pairs,
        field_prime=args.field_prime, jobs=args.jobs,
    )
    if args.format == "csv":
        text = estimate.to_csv(precision=PRECISION)
    else:
        text = _dumps(estimate.to_json())
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"lower_bound {_fmt(estimate.lower_bound)} ({CAVEAT})", file=sys.stderr)
    return 0


def cmd_critical(args) -> int:
    diagrams = _compute_diagrams(args)
    values = persistence.homological_critical_values(diagrams)
    payload = [{"value": v, "degrees": list(ds)} for v, ds in values]
    if args.output:
        Path(args.output).write_text(_dumps(payload))
    else:
        sys.stdout.write(_dumps(payload))
    return 0


def cmd_shapes_dump(args) -> int:
    spec = shapes.ShapeSpec(args.kind, args.resolution)
    K, coords = shapes.generate(spec)
    f = shapes.measuring(args.measuring, coords)
    text = dump_pair(K, f)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# Demos
# ---------------------------------------------------------------------------

def _check(name, computed, expected, tolerance):
    ok = math.isfinite(computed) and abs(computed - expected) <= tolerance
    return {"name": name, "computed": computed, "expected": expected,
            "tolerance": tolerance, "ok": ok}


def _check_exact(name, computed, expected):
    return {"name": name, "computed": computed, "expected": expected,
            "tolerance": 0, "ok": computed == expected}


def _demo_cube_sphere() -> list[dict]:
    checks = []
    KC, cc = shapes.generate(shapes.ShapeSpec("cube_boundary"))
    fC = shapes.measuring("abs_uv", cc)
    KS, cs = shapes.generate(shapes.ShapeSpec("sphere"))
    fS = shapes.measuring("abs_uv", cs)
    central = make_admissible((1.0, 1.0), (0.0, 0.0))
    dC = persistence.diagram(KC, foliation.reduce(fC, central), max_degree=2)
    dS = persistence.diagram(KS, foliation.reduce(fS, central), max_degree=2)
    root2 = math.sqrt(2.0)
    expected = {0: root2 - 1.0, 1: (root2 - 1.0) / 2.0, 2: 0.0}
    tolerance = {0: 0.02, 1: 0.02, 2: 1e-9}
    slice_distances = {}
    for i in range(3):
        b = distance.bottleneck(dC[i], dS[i])
        slice_distances[i] = b
        checks.append(_check(f"slice distance, degree {i}", b, expected[i], tolerance[i]))
    weight = central.weight
    for i in (0, 1):
        checks.append(_check(
            f"weighted slice distance, degree {i}",
            weight * slice_distances[i], weight * expected[i], 0.02,
        ))
    near = [
        p for p in dS[1].points
        if abs(p.birth - 1.0) <= 0.02 and abs(p.death - root2) <= 0.02
    ]
    checks.append(_check_exact(
        "sphere degree-1 multiplicity near (1, sqrt2)",
        sum(p.multiplicity for p in near), 3,
    ))
    for j in (1, 2):
        for i in range(3):
            cd = distance.component_distance(KC, fC, KS, fS, i, j)
            checks.append(_check(f"component {j} distance, degree {i}", cd, 0.0, 0.02))
    return checks


def _demo_ellipse() -> list[dict]:
    checks = []
    K, coords = shapes.generate(shapes.ShapeSpec("ellipse"))
    phi = shapes.measuring("ellipse_phi", coords)
    psi = shapes.measuring("ellipse_psi", coords)
    for j in (1, 2):
        cd = distance.component_distance(K, phi, K, psi, 0, j)
        checks.append(_check(f"component {j} distance, degree 0", cd, 0.0, 0.02))
    point = ParameterPoint((0.6, 0.9), (0.8, 0.95))
    rank_phi = persistence.multidim_rank(K, phi, point, 0)
    rank_psi = persistence.multidim_rank(K, psi, point, 0)
    checks.append(_check_exact("degree-0 rank of (x, z) at the test point", rank_phi, 2))
    checks.append({
        "name": "degree-0 rank of (y, z) at the test point",
        "computed": rank_psi, "expected": "<= 1", "tolerance": 0,
        "ok": rank_psi <= 1,
    })
    return checks


def _demo_torus() -> list[dict]:
    checks = []
    K, coords = shapes.generate(shapes.ShapeSpec("torus"))
    f = shapes.measuring("z_negz", coords)
    height = f.component(0)
    depth = f.component(1)
    unrestricted = persistence.diagram(K, height, max_degree=2)
    births = [p.birth for p in unrestricted[1].points]
    nearest = min(births, key=lambda b: abs(b - 2.0)) if births else math.inf
    checks.append(_check("degree-1 birth of the height function", nearest, 2.0, 0.05))
    restricted = persistence.restricted_diagram(K, height, depth, 1.0, max_degree=0)
    finite = [p for p in restricted[0].points if not p.essential]
    best = min(
        finite,
        key=lambda p: max(abs(p.birth + 1.0), abs(p.death - 2.0)),
        default=None,
    )
    checks.append(_check(
        "restricted degree-0 cornerpoint birth",
        best.birth if best else math.inf, -1.0, 0.05,
    ))
    checks.append(_check(
        "restricted degree-0 cornerpoint death",
        best.death if best else math.inf, 2.0, 0.05,
    ))
    return checks


DEMOS = {
    "cube_sphere": _demo_cube_sphere,
    "ellipse": _demo_ellipse,
    "torus": _demo_torus,
}


def _cell(value) -> str:
    if isinstance(value, float):
        return _fmt(value)
    return str(value)


def cmd_demo(args) -> int:
    checks = DEMOS[args.example]()
    width = max(len(c["name"]) for c in checks)
    for c in checks:
        status = "ok" if c["ok"] else "FAIL"
        print(
            f"{c['name']:<{width}}  computed {_cell(c['computed']):>16}  "
            f"expected {_cell(c['expected']):>16}  tol {_cell(c['tolerance']):>8}  {status}"
        )
    passed = all(c["ok"] for c in checks)
    print(f"{'all checks passed' if passed else 'some checks FAILED'}")
    if args.output:
        Path(args.output).write_text(_dumps({
            "example": args.example,
            "checks": checks,
            "pass": passed,
        }))
    return 0 if passed else 3


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mph",
        description="Persistent homology of vector-valued sublevel filtrations "
                    "via half-plane slicing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram", help="persistence diagrams of one slice")
    p.add_argument("--input", required=True, help="complex file")
    p.add_argument("--l", help="slice direction, comma-separated")
    p.add_argument("--b", help="slice offset, comma-separated (default zero)")
    p.add_argument("--degrees", default="0..2", help="degree range a..b (default 0..2)")
    p.add_argument("--field-prime", type=int, default=2, dest="field_prime")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", help="output path prefix (per-degree files for json)")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("slice", help="the unique leaf through a parameter point")
    p.add_argument("--u", required=True, help="lower point, comma-separated")
    p.add_argument("--v", required=True, help="upper point, comma-separated")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("bottleneck", help="matching distance of two diagram files")
    p.add_argument("--d1", required=True)
    p.add_argument("--d2", required=True)
    p.set_defaults(func=cmd_bottleneck)

    p = sub.add_parser("multidist", help="sampled lower bound of the global distance")
    p.add_argument("--input-x", required=True, dest="input_x")
    p.add_argument("--input-y", required=True, dest="input_y")
    p.add_argument("--degree", type=int, default=0)
    p.add_argument("--directions", type=int, default=4)
    p.add_argument("--offsets", type=int, default=3)
    p.add_argument("--offset-radius", type=float, default=None, dest="offset_radius",
                   help="default: half the largest per-component data range")
    p.add_argument("--field-prime", type=int, default=2, dest="field_prime")
    p.add_argument("--jobs", type=int, default=1, help="parallel slice evaluations")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output")
    p.set_defaults(func=cmd_multidist)

    p = sub.add_parser("critical", help="homological critical values of one slice")
    p.add_argument("--input", required=True)
    p.add_argument("--l")
    p.add_argument("--b")
    p.add_argument("--degrees", default="0..2")
    p.add_argument("--field-prime", type=int, default=2, dest="field_prime")
    p.add_argument("--output")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("demo", help="run a built-in example end to end")
    p.add_argument("example", choices=sorted(DEMOS))
    p.add_argument("--output", help="JSON report path")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("shapes", help="mesh generators")
    shapes_sub = p.add_subparsers(dest="shapes_command", required=True)
    d = shapes_sub.add_parser("dump", help="write a generated mesh as a complex file")
    d.add_argument("--kind", required=True, choices=shapes.KINDS)
    d.add_argument("--resolution", type=int, default=None)
    d.add_argument("--measuring", required=True, choices=shapes.MEASURING_KINDS)
    d.add_argument("--output")
    d.set_defaults(func=cmd_shapes_dump)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
