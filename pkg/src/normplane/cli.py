"""Command-line interface: ``normplane <command> --norm <preset|file> ...``.

Exit status: 0 on success, 1 on a computation error or a failed check,
2 on invalid input (bad arguments, unreadable or malformed norm files).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import constants as C
from .errors import ComputationError, InvalidInput, NormPlaneError, NotExact
from .iso import aset_arc, iso_partner
from .norms import NormModel, Vec2, gauge
from .report import Quantity, build_report, curves_csv, fmt, format_checks, run_checks
from .specfile import load_norm
from .svg import Overlay, pairs_overlay, render_svg

EXACT_TOL = 1e-9
# Commands whose text output is the bare value.
SCALAR_COMMANDS = {"gauge", "partner", "beta", "james", "schaffer"}
COMMANDS = ("gauge", "partner", "beta", "james", "schaffer", "modulus", "aset", "attain", "check", "report", "plot")


class Output:
    """Collects (label, value) rows and renders them as text or JSON."""

    def __init__(self, command: str, norm: NormModel, mode: str):
        self.command, self.norm, self.mode = command, norm, mode
        self.rows: list[tuple[str, object]] = []

    def add(self, label: str, value) -> None:
        self.rows.append((label, value))

    def text(self) -> str:
        if len(self.rows) == 1 and self.command in SCALAR_COMMANDS:
            return f"{_show(self.rows[0][1])}\n"
        return "".join(f"{label} {_show(v)}\n" for label, v in self.rows)

    def json(self) -> str:
        doc = {"command": self.command, "mode": self.mode, "norm": self.norm.to_document()}
        doc["results"] = {label: _jsonable(v) for label, v in self.rows}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _show(v) -> str:
    if isinstance(v, Vec2):
        return f"({_show(v.x)}, {_show(v.y)})"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return fmt(v)
    if isinstance(v, Quantity):
        return str(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_show(x) for x in v) + "]"
    return str(v)


def _jsonable(v):
    if isinstance(v, Vec2):
        return [_jsonable(v.x), _jsonable(v.y)]
    if isinstance(v, Fraction):
        return Quantity.of(v).to_dict()
    if isinstance(v, Quantity):
        return v.to_dict()
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------


def parse_point(text: str) -> Vec2:
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidInput(f"--point expects 'x,y', got {text!r}")
    try:
        return Vec2(Fraction(parts[0].strip()), Fraction(parts[1].strip()))
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"--point coordinates must be numbers or p/q, got {text!r}") from None


def _need(args, name: str):
    val = getattr(args, name)
    if val is None:
        raise InvalidInput(f"--{name.replace('_', '-')} is required for '{args.command}'")
    return val


def _exact_poly(norm: NormModel):
    from .exact import exact_norm

    try:
        return exact_norm(norm)
    except NotExact as exc:
        raise InvalidInput(f"--exact needs a polygon with rational vertices: {exc}") from None


def _agree(label: str, exact_value, float_value: float) -> None:
    if abs(float(exact_value) - float(float_value)) > EXACT_TOL:
        raise ComputationError(f"{label}: float {fmt(float_value)} and exact {exact_value} differ beyond {EXACT_TOL:g}")


def _unit_point(args, norm: NormModel) -> Vec2:
    """--point scaled onto S_X (exactly when --exact)."""
    x = _need(args, "point")
    if x.is_zero:
        raise InvalidInput("--point must be nonzero")
    if args.exact:
        from .exact import exact_gauge

        n = exact_gauge(_exact_poly(norm), x)
    else:
        n = gauge(norm, x)
        x = x.to_float()
    if n != 1:
        print(f"note: --point has norm {_show(n)}; using x/‖x‖", file=sys.stderr)
        x = x / n
    return x


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_gauge(args, norm, out: Output):
    x = _need(args, "point")
    g = gauge(norm, x)
    if args.exact:
        from .exact import exact_gauge

        q = exact_gauge(_exact_poly(norm), x)
        _agree("gauge", q, g)
        out.add("gauge", q)
    else:
        out.add("gauge", g)


def cmd_partner(args, norm, out: Output):
    x = _need(args, "point")
    if args.exact:
        from .exact import exact_iso_partner

        if args.radius != 1:
            raise InvalidInput("--exact partners are computed on the unit sphere only")
        x = _unit_point(args, norm)
        y = exact_iso_partner(_exact_poly(norm), x)
        res = iso_partner(norm, x.to_float(), 1.0)
        _agree("partner x", y.x, res.primary.x)
        _agree("partner y", y.y, res.primary.y)
        out.add("partner", y)
        return
    res = iso_partner(norm, x.to_float(), args.radius)
    out.add("partner", res.primary)
    if res.has_plateau:
        out.add("plateau_angles", list(res.plateau))
        out.add("plateau_endpoints", list(res.plateau_points))


def cmd_beta(args, norm, out: Output):
    x = _unit_point(args, norm)
    if args.lambda_ is not None:
        if args.exact:
            raise InvalidInput("--exact is not available with --lambda")
        out.add("beta_lambda", C.beta_lambda(norm, x.to_float(), args.lambda_))
        return
    b = C.beta(norm, x.to_float())
    if args.exact:
        from .exact import exact_beta

        q = exact_beta(_exact_poly(norm), x)
        _agree("beta", q, b)
        out.add("beta", q)
    else:
        out.add("beta", b)


def cmd_james(args, norm, out: Output):
    if args.lambda_ is not None:
        if args.exact:
            raise InvalidInput("--exact is not available with --lambda")
        out.add("james_generalized", C.james_generalized(norm, args.lambda_))
        return
    j = C.james(norm)
    if args.exact:
        from .exact import exact_james

        q = exact_james(_exact_poly(norm))
        _agree("james", q, j)
        out.add("james", q)
    else:
        out.add("james", j)


def cmd_schaffer(args, norm, out: Output):
    out.add("schaffer", C.schaffer(norm))


def _curve(norm, n: int):
    eps = C.epsilon_grid(n)
    return eps, [C.delta(norm, e) for e in eps], [C.rho(norm, e) for e in eps], [C.rho_prime(norm, e) for e in eps]


def cmd_modulus(args, norm, out: Output):
    if args.epsilon is None:
        eps, d, r, rp = _curve(norm, args.grid)
        if args.format == "csv":
            return curves_csv(eps, d, r, rp)
        out.add("epsilon", eps)
        out.add("delta", d)
        out.add("rho", r)
        out.add("rho_prime", rp)
        return
    e = args.epsilon
    if e < 2:
        out.add("delta", C.delta(norm, e))
    out.add("rho", C.rho(norm, e))
    out.add("rho_prime", C.rho_prime(norm, e))
    if args.format == "csv":
        vals = dict(out.rows)
        return curves_csv([e], [vals.get("delta", float("nan"))], [vals["rho"]], [vals["rho_prime"]])


def cmd_aset(args, norm, out: Output):
    x = _unit_point(args, norm).to_float()
    arc = aset_arc(norm, x, _need(args, "epsilon"))
    out.add("anchor", arc.anchor)
    out.add("endpoint_right", arc.endpoint_right)
    out.add("endpoint_left", arc.endpoint_left)
    out.add("theta_right", arc.theta_right)
    out.add("theta_left", arc.theta_left)
    out.add("t_right", arc.t_right)
    out.add("t_left", arc.t_left)
    out.add("width", arc.width)


def cmd_attain(args, norm, out: Output):
    if args.epsilon is not None:
        pairs = C.delta_attainment(norm, args.epsilon, args.tol)
    else:
        pairs = C.james_attainment(norm, args.tol)
    for i, p in enumerate(pairs):
        row = [p.x, p.y, p.value, p.iso_defect]
        if p.approx_epsilon is not None:
            row.append(p.approx_epsilon)
        out.add(f"pair{i}", row)


def cmd_check(args, norm, out: Output):
    checks = run_checks(norm)
    if args.format == "json":
        doc = {"command": "check", "norm": norm.to_document(), "checks": [c.__dict__ for c in checks]}
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        text = format_checks(checks)
    failed = sum(not c.passed for c in checks)
    return text, (1 if failed else 0)


def cmd_report(args, norm, out: Output):
    if args.exact:
        _exact_poly(norm)
    doc = build_report(norm, exact=args.exact, n_eps=args.grid, tol=args.tol)
    if args.format == "json":
        return doc.to_json()
    if args.format == "csv":
        return doc.to_csv()
    return doc.to_text()


def cmd_plot(args, norm, out: Output):
    overlay = Overlay(pairs=pairs_overlay(C.james_attainment(norm, args.tol)))
    if args.point is not None:
        x = _unit_point(args, norm).to_float()
        overlay.chords.append((x.to_array(), iso_partner(norm, x).primary.to_array()))
        if args.epsilon is not None:
            overlay.arcs.append(aset_arc(norm, x, args.epsilon))
    return render_svg(norm, overlay)


HANDLERS: dict[str, Callable] = {
    "gauge": cmd_gauge,
    "partner": cmd_partner,
    "beta": cmd_beta,
    "james": cmd_james,
    "schaffer": cmd_schaffer,
    "modulus": cmd_modulus,
    "aset": cmd_aset,
    "attain": cmd_attain,
    "check": cmd_check,
    "report": cmd_report,
    "plot": cmd_plot,
}

HELP = {
    "gauge": "norm of --point",
    "partner": "isosceles partner y of --point (cross(x, y) > 0) on the sphere of radius --radius",
    "beta": "local James constant at --point (with --lambda: the generalized one)",
    "james": "James constant J (with --lambda: J(lambda))",
    "schaffer": "Schaffer constant S",
    "modulus": "delta, rho and rho' at --epsilon, or curves over --grid values",
    "aset": "arc D with A(x, eps) = D u -D for x = --point and --epsilon",
    "attain": "attainment pairs of J (or of delta at --epsilon)",
    "check": "run the invariant suite; exit 1 on any failure",
    "report": "full constants report",
    "plot": "SVG of the unit sphere with overlays",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--norm", required=True, help="preset name (octagon-max, hexagon-paper, square, euclidean) or JSON spec file")
    common.add_argument("--point", type=str, help="x,y (numbers or p/q); write --point=-1,0 when x is negative")
    common.add_argument("--lambda", dest="lambda_", type=float, help="lambda in (0, 1)")
    common.add_argument("--epsilon", type=float, help="epsilon")
    common.add_argument("--radius", type=float, default=1.0, help="partner radius r (default 1)")
    common.add_argument("--grid", type=int, default=20, help="number of epsilon values for curves (default 20)")
    common.add_argument("--tol", type=float, default=1e-9, help="attainment tolerance (default 1e-9)")
    common.add_argument("--exact", action="store_true", help="exact rational kernel (rational polygons), cross-checked against float")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")

    parser = argparse.ArgumentParser(prog="normplane", description="Isosceles orthogonality and geometric constants of normed planes.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=HELP[name], description=HELP[name])
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str | None]:
    """Execute a command; returns (exit status, emitted text, --out path)."""
    args = build_parser().parse_args(argv)
    if args.point is not None:
        args.point = parse_point(args.point)
    if args.grid < 1:
        raise InvalidInput("--grid must be >= 1")
    if args.format == "csv" and args.command not in ("modulus", "report"):
        raise InvalidInput("--format csv is available for 'modulus' and 'report'")
    norm = load_norm(args.norm)
    out = Output(args.command, norm, "both" if args.exact else "float")
    result = HANDLERS[args.command](args, norm, out)
    status = 0
    if isinstance(result, tuple):
        result, status = result
    if result is None:
        result = out.json() if args.format == "json" else out.text()
    return status, result, args.out


def main(argv: Sequence[str] | None = None) -> int:
    try:
        status, text, out_path = run(argv)
        if out_path:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return status
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ComputationError, NormPlaneError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
