"""Invariant checks and the serializable constants report."""

from __future__ import annotations

import dataclasses
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from ._numerics import DEFAULT_CONFIG, SolverConfig
from .constants import (
    CheckResult,
    beta_points,
    beta_lambda_points,
    delta,
    epsilon_grid,
    james,
    james_attainment,
    james_from_delta,
    james_generalized,
    rho,
    rho_prime,
    schaffer,
    schaffer_from_rho,
)
from .iso import partner_angles
from .norms import NormModel, sphere_points
from .oracle import GridSpec, oracle_james

SQRT2 = math.sqrt(2.0)

# Stated accuracy of each float quantity.
TOLERANCES = {
    "james_polygon": 1e-9,
    "james": 1e-6,
    "schaffer": 1e-6,
    "james_generalized": 1e-6,
    "delta": 1e-6,
    "rho": 1e-6,
    "rho_prime": 1e-6,
    "attainment": 1e-8,
}


def fmt(x: float) -> str:
    """Fixed 15-significant-digit rendering used by every text and CSV output."""
    s = format(float(x), ".15g")
    return "0" if s == "-0" else s


# ---------------------------------------------------------------------------
# Quantities with provenance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Quantity:
    """A number with its provenance: an exact rational or a float with a tolerance."""

    value: float
    tol: float | None = None
    exact: str | None = None

    @classmethod
    def of(cls, v, tol: float | None = None) -> "Quantity":
        if isinstance(v, Fraction):
            return cls(float(v), None, str(v))
        return cls(float(v), tol)

    def to_dict(self) -> dict:
        if self.exact is not None:
            return {"exact": self.exact, "value": self.value}
        return {"value": self.value, "tol": self.tol}

    @classmethod
    def from_dict(cls, d: dict) -> "Quantity":
        return cls(float(d["value"]), d.get("tol"), d.get("exact"))

    def __str__(self) -> str:
        return self.exact if self.exact is not None else fmt(self.value)


@dataclass(frozen=True)
class PairRecord:
    x: tuple[Quantity, Quantity]
    y: tuple[Quantity, Quantity]
    value: Quantity
    iso_defect: Quantity
    approx_epsilon: Quantity | None = None

    def to_dict(self) -> dict:
        return {
            "x": [q.to_dict() for q in self.x],
            "y": [q.to_dict() for q in self.y],
            "value": self.value.to_dict(),
            "iso_defect": self.iso_defect.to_dict(),
            "approx_epsilon": None if self.approx_epsilon is None else self.approx_epsilon.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PairRecord":
        eps0 = d.get("approx_epsilon")
        return cls(
            tuple(Quantity.from_dict(q) for q in d["x"]),
            tuple(Quantity.from_dict(q) for q in d["y"]),
            Quantity.from_dict(d["value"]),
            Quantity.from_dict(d["iso_defect"]),
            None if eps0 is None else Quantity.from_dict(eps0),
        )

    @classmethod
    def from_attainment(cls, p, tol: float) -> "PairRecord":
        eps0 = getattr(p, "approx_epsilon", None)
        return cls(
            (Quantity.of(p.x.x, tol), Quantity.of(p.x.y, tol)),
            (Quantity.of(p.y.x, tol), Quantity.of(p.y.y, tol)),
            Quantity.of(p.value, tol),
            Quantity.of(p.iso_defect, tol),
            None if eps0 is None else Quantity.of(eps0, tol),
        )


def _check_to_dict(c: CheckResult) -> dict:
    return dataclasses.asdict(c)


def _check_from_dict(d: dict) -> CheckResult:
    return CheckResult(d["name"], bool(d["passed"]), float(d["residual"]), float(d["tolerance"]), d.get("detail", ""))


@dataclass
class ReportDocument:
    norm: dict
    mode: str
    configuration: dict
    james: Quantity
    schaffer: Quantity
    james_generalized: list[tuple[float, Quantity]]
    epsilon: list[float]
    delta: list[Quantity]
    rho: list[Quantity]
    rho_prime: list[Quantity]
    attainment: list[PairRecord]
    checks: list[CheckResult] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "norm": self.norm,
            "configuration": self.configuration,
            "constants": {
                "james": self.james.to_dict(),
                "schaffer": self.schaffer.to_dict(),
                "james_generalized": [{"lambda": l, "value": q.to_dict()} for l, q in self.james_generalized],
            },
            "curves": {
                "epsilon": list(self.epsilon),
                "delta": [q.to_dict() for q in self.delta],
                "rho": [q.to_dict() for q in self.rho],
                "rho_prime": [q.to_dict() for q in self.rho_prime],
            },
            "attainment": [p.to_dict() for p in self.attainment],
            "checks": [_check_to_dict(c) for c in self.checks],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        c, cv = d["constants"], d["curves"]
        return cls(
            norm=d["norm"],
            mode=d["mode"],
            configuration=d["configuration"],
            james=Quantity.from_dict(c["james"]),
            schaffer=Quantity.from_dict(c["schaffer"]),
            james_generalized=[(float(e["lambda"]), Quantity.from_dict(e["value"])) for e in c["james_generalized"]],
            epsilon=[float(e) for e in cv["epsilon"]],
            delta=[Quantity.from_dict(q) for q in cv["delta"]],
            rho=[Quantity.from_dict(q) for q in cv["rho"]],
            rho_prime=[Quantity.from_dict(q) for q in cv["rho_prime"]],
            attainment=[PairRecord.from_dict(p) for p in d["attainment"]],
            checks=[_check_from_dict(x) for x in d["checks"]],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        return curves_csv(self.epsilon, [q.value for q in self.delta], [q.value for q in self.rho], [q.value for q in self.rho_prime])

    def to_text(self) -> str:
        lines = [f"norm      {json.dumps(self.norm, sort_keys=True)}", f"mode      {self.mode}"]
        lines.append(f"J         {self.james}")
        lines.append(f"S         {self.schaffer}")
        for lam, q in self.james_generalized:
            lines.append(f"J({fmt(lam)})   {q}")
        lines.append("epsilon  delta  rho  rho_prime")
        for e, a, b, c in zip(self.epsilon, self.delta, self.rho, self.rho_prime):
            lines.append(f"{fmt(e)}  {a}  {b}  {c}")
        lines.append(f"attainment pairs: {len(self.attainment)}")
        for p in self.attainment:
            lines.append(f"  x=({p.x[0]}, {p.x[1]})  y=({p.y[0]}, {p.y[1]})  value={p.value}  defect={p.iso_defect}")
        lines.extend(format_checks(self.checks).splitlines())
        return "\n".join(lines) + "\n"


def curves_csv(eps: Sequence[float], d: Sequence[float], r: Sequence[float], rp: Sequence[float]) -> str:
    buf = io.StringIO()
    buf.write("epsilon,delta,rho,rho_prime\n")
    for row in zip(eps, d, r, rp):
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def format_checks(checks: Sequence[CheckResult]) -> str:
    out = []
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        extra = f"  {c.detail}" if c.detail else ""
        out.append(f"{status}  {c.name}  residual={fmt(c.residual)}  tol={fmt(c.tolerance)}{extra}")
    return "\n".join(out) + ("\n" if out else "")


# ---------------------------------------------------------------------------
# Invariant suite
# ---------------------------------------------------------------------------


def _check(name: str, residual: float, tol: float, detail: str = "") -> CheckResult:
    residual = float(residual)
    return CheckResult(name, bool(residual <= tol), residual, tol, detail)


def _exact_checks(norm: NormModel, config: SolverConfig) -> list[CheckResult]:
    from .exact import exact_beta, exact_gauge, exact_iso_partner, exact_james

    poly = norm.polygon
    out = []
    vert_res = max(abs(exact_gauge(poly, v) - 1) for v in poly.vertices)
    out.append(_check("exact: gauge of every extreme point is 1", float(vert_res), 0.0))
    X = np.array([[float(v.x), float(v.y)] for v in poly.half_vertices])
    theta, *_ = partner_angles(norm, X, 1.0, config)
    Y = sphere_points(norm, theta)
    worst_p = worst_b = 0.0
    defect = Fraction(0)
    for i, v in enumerate(poly.half_vertices):
        w = exact_iso_partner(poly, v)
        defect = max(defect, abs(exact_gauge(poly, v + w) - exact_gauge(poly, v - w)))
        worst_p = max(worst_p, abs(float(w.x) - Y[i, 0]), abs(float(w.y) - Y[i, 1]))
        worst_b = max(worst_b, abs(float(exact_beta(poly, v)) - norm.gauge_array(X[i] + Y[i])))
    out.append(_check("exact: partners are isosceles orthogonal with zero defect", float(defect), 0.0))
    out.append(_check("exact vs float: partners", worst_p, 1e-9))
    out.append(_check("exact vs float: beta at extreme points", worst_b, 1e-9))
    out.append(_check("exact vs float: J", abs(float(exact_james(poly)) - james(norm, config)), 1e-9))
    return out


def run_checks(norm: NormModel, config: SolverConfig = DEFAULT_CONFIG, *, seed: int = 0, oracle_grid: int = 4096) -> list[CheckResult]:
    """Evaluate the invariant suite on ``norm``; each check carries its residual."""
    rng = np.random.default_rng(seed)
    checks: list[CheckResult] = []
    g = norm.gauge_array

    # norm_core
    v = rng.normal(size=(500, 2))
    t = rng.uniform(-5, 5, size=500)
    gv = g(v)
    checks.append(_check("homogeneity ‖tv‖ = |t|‖v‖ (relative)", np.max(np.abs(g(t[:, None] * v) - np.abs(t) * gv) / (np.abs(t) * gv)), 1e-12))
    u = rng.normal(size=(500, 2))
    checks.append(_check("triangle inequality", max(0.0, float(np.max(g(u + v) - g(u) - gv))), 1e-12))
    checks.append(_check("symmetry ‖-v‖ = ‖v‖", np.max(np.abs(g(-v) - gv)), 1e-15))
    ang = rng.uniform(0, 2 * math.pi, 500)
    S = sphere_points(norm, ang)
    back = np.mod(np.arctan2(S[:, 1], S[:, 0]), 2 * math.pi)
    dang = np.abs(back - ang)
    dang = np.minimum(dang, 2 * math.pi - dang)
    checks.append(_check("sphere points have gauge 1", np.max(np.abs(g(S) - 1.0)), 1e-12))
    checks.append(_check("sphere points keep their direction", np.max(dang), 1e-12))
    if norm.is_polyhedral:
        checks.append(_check("extreme points have gauge 1", np.max(np.abs(g(norm.polygon.vertex_array) - 1.0)), 1e-12))

    # iso
    xs = sphere_points(norm, rng.uniform(0, 2 * math.pi, 200))
    theta, _, _, plateau = partner_angles(norm, xs, 1.0, config)
    Y = sphere_points(norm, theta)
    crosses = xs[:, 0] * Y[:, 1] - xs[:, 1] * Y[:, 0]
    checks.append(_check("partner defect ‖x+y‖ - ‖x-y‖ vanishes", np.max(np.abs(g(xs + Y) - g(xs - Y))), 1e-9))
    checks.append(_check("partner lies on S_X", np.max(np.abs(g(Y) - 1.0)), 1e-12))
    checks.append(_check("partner is oriented x ≺ y", max(0.0, -float(np.min(crosses))), 0.0))
    checks.append(_check("no plateau at radius 1", float(np.sum(plateau)), 0.0))
    # Partners keep orientation: v1 ≺ v2 (counterclockwise within a half turn) gives w1 ≺ w2.
    a1 = rng.uniform(0, 2 * math.pi, 200)
    a2 = a1 + rng.uniform(1e-3, math.pi - 1e-3, 200)
    th1, *_ = partner_angles(norm, sphere_points(norm, a1), 1.0, config)
    th2, *_ = partner_angles(norm, sphere_points(norm, a2), 1.0, config)
    W1, W2 = sphere_points(norm, th1), sphere_points(norm, th2)
    worst = float(np.min(W1[:, 0] * W2[:, 1] - W1[:, 1] * W2[:, 0]))
    checks.append(_check("orientation: v1 ≺ v2 implies w1 ≺ w2", max(0.0, -worst), 0.0))

    # constants
    J = james(norm, config)
    S_ = schaffer(norm, config)
    checks.append(_check("sqrt2 <= J <= 2", max(SQRT2 - J, J - 2.0, 0.0), 1e-9, f"J={fmt(J)}"))
    checks.append(_check("S <= J", max(S_ - J, 0.0), 1e-9, f"S={fmt(S_)}"))
    checks.append(_check("1 <= S <= sqrt2", max(1.0 - S_, S_ - SQRT2, 0.0), 1e-6))
    att = james_attainment(norm, 1e-9, config)
    checks.append(_check("J attainment pairs are isosceles orthogonal", max(abs(float(p.iso_defect)) for p in att), 1e-8, f"{len(att)} pair(s)"))
    b = beta_points(norm, xs, config)
    b_half = beta_lambda_points(norm, xs, 0.5, config)
    checks.append(_check("beta(1/2, x) = beta(x)/2", np.max(np.abs(b_half - b / 2)), 1e-10))
    checks.append(_check("J(1/2) = J/2", abs(james_generalized(norm, 0.5, config) - J / 2), 1e-9))
    eps = [0.1 * k for k in range(20)]
    dl = [delta(norm, e, config) for e in eps]
    rh = [rho(norm, e, config) for e in eps]
    rp = [rho_prime(norm, e, config) for e in eps]
    checks.append(_check("delta(0) = 0 and delta nondecreasing", max([abs(dl[0])] + [max(0.0, dl[i] - dl[i + 1]) for i in range(len(dl) - 1)]), 1e-9))
    checks.append(_check("rho >= delta", max(max(0.0, a - r) for a, r in zip(dl, rh)), 1e-9))
    checks.append(_check("0 <= rho_prime(eps) <= eps", max(max(0.0, p - e, -p) for p, e in zip(rp, eps)), 1e-12))
    checks.append(_check("J from delta matches J", abs(james_from_delta(norm, config=config) - J), 2e-3))
    checks.append(_check("S from rho matches S", abs(schaffer_from_rho(norm, config=config) - S_), 2e-3))
    checks.append(_check("oracle J matches J", abs(oracle_james(norm, GridSpec(n_directions=oracle_grid)) - J), 5e-3))

    if norm.is_polyhedral and getattr(norm, "is_rational", False):
        checks.extend(_exact_checks(norm, config))
    return checks


# ---------------------------------------------------------------------------
# Report assembly
# ---------------------------------------------------------------------------


def config_echo(config: SolverConfig, **extra: Any) -> dict:
    out = dataclasses.asdict(config)
    out.update(extra)
    return out


def build_report(
    norm: NormModel,
    *,
    exact: bool = False,
    n_eps: int = 20,
    lambdas: Sequence[float] = (0.25, 0.5, 0.75),
    tol: float = 1e-9,
    config: SolverConfig = DEFAULT_CONFIG,
    checks: bool = True,
) -> ReportDocument:
    """Compute every constant, curve and attainment set of ``norm``.

    With ``exact`` (rational polygons only) J and the attainment pairs are
    the exact rationals, after the float value is checked against them.
    """
    J_float = james(norm, config)
    j_tol = TOLERANCES["james_polygon"] if norm.is_polyhedral else TOLERANCES["james"]
    J = Quantity.of(J_float, j_tol)
    mode = "float"
    if exact:
        from .exact import exact_james, exact_norm

        poly = exact_norm(norm)
        Jx = exact_james(poly)
        if abs(float(Jx) - J_float) > 1e-9:
            from .errors import ComputationError

            raise ComputationError(f"float J {fmt(J_float)} disagrees with exact J {Jx} beyond 1e-9")
        J = Quantity.of(Jx)
        mode = "both"
    eps = epsilon_grid(n_eps)
    att_tol = TOLERANCES["attainment"]
    doc = ReportDocument(
        norm=norm.to_document(),
        mode=mode,
        configuration=config_echo(config, epsilon_grid=n_eps, lambdas=[float(l) for l in lambdas], attainment_tol=tol, tolerances=dict(TOLERANCES)),
        james=J,
        schaffer=Quantity.of(schaffer(norm, config), TOLERANCES["schaffer"]),
        james_generalized=[(float(l), Quantity.of(james_generalized(norm, l, config), TOLERANCES["james_generalized"])) for l in lambdas],
        epsilon=eps,
        delta=[Quantity.of(delta(norm, e, config), TOLERANCES["delta"]) for e in eps],
        rho=[Quantity.of(rho(norm, e, config), TOLERANCES["rho"]) for e in eps],
        rho_prime=[Quantity.of(rho_prime(norm, e, config), TOLERANCES["rho_prime"]) for e in eps],
        attainment=[PairRecord.from_attainment(p, att_tol) for p in james_attainment(norm, tol, config)],
    )
    if checks:
        doc.checks = run_checks(norm, config)
    return doc
