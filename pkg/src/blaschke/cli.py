"""Command-line driver: sweeps, curvature tables, reducibility, geodesics, counterexample.

Exit codes: 0 success, 1 asserted invariant violated, 2 bad input.
"""

import argparse
import cmath
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from .core import BlaschkeProduct, evaluate
from .errors import BlaschkeError
from .geometry import curvature, curvature_bounds, eccentricity, eccentricity_literal
from .interp import InterleavedSpec, build_interpolant, default_spec, pairwise_distances
from .poncelet import blaschke3_ellipse, blaschke4_ellipse, power_circles, sweep
from .reducible import conjugate_power, is_reducible, opposite_pair_geodesics

_SPLIT = re.compile(r"(?<![eE])[+-]")


DEFAULT_TOLERANCES = {
    "spread": 1e-8,  # sweep: spread / mean for an invariance verdict
    "closed_form": 1e-8,  # sweep: |mean - closed form| / (1 + closed form)
    "reduce": 1e-8,  # reduce: tolerance for the four conditions
}


class UsageError(Exception):
    pass


def _signed(text):
    """Float from a term that may carry stacked signs, as in the ``+-`` of ``0.4+-0.3i``."""
    body = text.lstrip("+-")
    sign = -1.0 if text[: len(text) - len(body)].count("-") % 2 else 1.0
    return sign * (float(body) if body else 1.0)


def _parse(text):
    if not text.endswith("i"):
        # float() accepts "1e+3" but a bare "+" past the sign means a missing "i"
        if _SPLIT.search(text.lstrip("+-")):
            raise ValueError(text)
        return complex(float(text), 0.0)
    body = text[:-1]
    cut = [m.start() for m in _SPLIT.finditer(body) if m.start() > 0 and body[m.start() - 1] not in "+-"]
    if not cut:
        return complex(0.0, _signed(body))
    k = cut[-1]
    return complex(float(body[:k]), _signed(body[k:]))


def parse_complex(token):
    """Parse ``re+imi`` literals: ``0.2+0.3i``, ``-0.5``, ``0.3i``, ``-i``, ``0.4+-0.3i``."""
    try:
        value = _parse(token.strip())
    except ValueError:
        value = None
    if value is None or not cmath.isfinite(value):
        raise UsageError(f"cannot parse complex number {token!r}")
    return value


def parse_complex_list(text):
    if text is None:
        return None
    return [parse_complex(t) for t in text.split(",") if t.strip()]


def fmt(x):
    return format(float(x), ".17g")


def to_json(obj):
    """JSON text with every float written to 17 significant digits."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        return fmt(x)
    if isinstance(obj, complex):
        return to_json([obj.real, obj.imag])
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{to_json(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class RunConfig:
    subcommand: str
    zeros: list = None
    mu: complex = 1.0 + 0j
    samples: int = 1000
    seed: int = 42
    out_format: str = None
    out_path: str = None
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    assert_invariant: bool = False
    ellipse4: complex = None
    a: complex = None
    n: int = None
    zs: list = None
    ws: list = None

    @classmethod
    def from_args(cls, ns):
        tolerances = dict(DEFAULT_TOLERANCES)
        for item in ns.tol or []:
            name, _, value = item.partition("=")
            if name not in tolerances or not value:
                raise UsageError(f"unknown tolerance override {item!r}; known: {sorted(tolerances)}")
            try:
                tolerances[name] = float(value)
            except ValueError:
                raise UsageError(f"tolerance {name} needs a number, got {value!r}") from None
        cfg = cls(
            subcommand=ns.command,
            zeros=parse_complex_list(ns.zeros),
            mu=parse_complex(ns.mu),
            samples=ns.samples,
            seed=ns.seed,
            out_format=ns.format,
            out_path=ns.out,
            tolerances=tolerances,
            assert_invariant=getattr(ns, "assert_invariant", False),
            ellipse4=parse_complex(ns.ellipse4) if getattr(ns, "ellipse4", None) else None,
            a=parse_complex(ns.a) if getattr(ns, "a", None) else None,
            n=getattr(ns, "n", None),
            zs=parse_complex_list(getattr(ns, "zs", None)),
            ws=parse_complex_list(getattr(ns, "ws", None)),
        )
        if cfg.samples < 1:
            raise UsageError("--samples must be at least 1")
        for z in cfg.zeros or []:
            if not abs(z) < 1.0:
                raise UsageError(f"zero {z} is not inside the unit disk")
        return cfg

    def product(self):
        if not self.zeros:
            raise UsageError("--zeros is required")
        if abs(abs(self.mu) - 1.0) > 1e-6:
            raise UsageError(f"--mu must be unimodular, got modulus {abs(self.mu)}")
        return BlaschkeProduct(tuple(self.zeros), self.mu / abs(self.mu))


def worker_count():
    raw = os.environ.get("PONCELET_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"PONCELET_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise UsageError("PONCELET_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def _csv(header, rows, comments=()):
    lines = [",".join(header)]
    lines += [",".join(v if isinstance(v, str) else fmt(v) for v in row) for row in rows]
    lines += [f"# {c}" for c in comments]
    return "\n".join(lines) + "\n"


def _format(cfg, default, allowed=("csv", "json")):
    f = cfg.out_format or default
    if f not in allowed:
        raise UsageError(f"{cfg.subcommand} supports --format {'/'.join(allowed)} only")
    return f


SWEEP_COLUMNS = ["lambda_arg", "z1_re", "z1_im", "z2_re", "z2_im", "z3_re", "z3_im", "r1", "r2", "r3", "total_area"]


def cmd_sweep(cfg):
    B = cfg.product()
    if B.degree != 3:
        raise UsageError("sweep needs exactly three zeros")
    fmt_ = _format(cfg, "csv")
    report = sweep(B, cfg.samples, cfg.seed, workers=worker_count(), keep_triangles=True)
    rows = []
    for theta, T in zip(report.angles, report.triangles):
        z = T.vertices
        r = power_circles(T).radii
        area = power_circles(T).total_area
        rows.append([theta, z[0].real, z[0].imag, z[1].real, z[1].imag, z[2].real, z[2].imag, *r, area])

    tol = cfg.tolerances
    invariant = report.spread <= tol["spread"] * report.mean
    cf = report.closed_form
    if cf is not None and invariant:
        agrees = abs(report.mean - cf) <= tol["closed_form"] * (1.0 + cf)
        verdict = "invariant (closed form)" if agrees else "closed form mismatch"
    elif invariant:
        verdict = "invariant (no closed form)"
    else:
        verdict = "variable"
    summary = {
        "samples": report.samples,
        "skipped": report.skipped,
        "min": report.min,
        "max": report.max,
        "mean": report.mean,
        "spread": report.spread,
        "closed_form": cf,
        "verdict": verdict,
    }
    if fmt_ == "csv":
        comments = [f"{k}={v if isinstance(v, str) else ('none' if v is None else fmt(v))}" for k, v in summary.items()]
        text = _csv(SWEEP_COLUMNS, rows, comments)
    else:
        text = to_json({"columns": SWEEP_COLUMNS, "rows": rows, "summary": summary}) + "\n"
    ok = verdict.startswith("invariant")
    return text, (1 if cfg.assert_invariant and not ok else 0)


def _ellipse_for(cfg):
    zeros = cfg.zeros or []
    if len(zeros) != 3:
        raise UsageError("curvature needs exactly three zeros")
    if cfg.ellipse4 is not None:
        idx = min(range(3), key=lambda i: abs(zeros[i] - cfg.ellipse4))
        if abs(zeros[idx] - cfg.ellipse4) > 1e-9:
            raise UsageError("--ellipse4 must name one of the zeros")
        b, c = zeros[:idx] + zeros[idx + 1:]
        return "ellipse4", blaschke4_ellipse(zeros[idx], b, c).ellipse
    for i, z in enumerate(zeros):
        if abs(z) <= 1e-9:
            a, b = zeros[:i] + zeros[i + 1:]
            return "ellipse3", blaschke3_ellipse(a, b).ellipse
    raise UsageError("a Blaschke 3-ellipse needs one zero at the origin (or pass --ellipse4)")


def cmd_curvature(cfg):
    kind, E = _ellipse_for(cfg)
    fmt_ = _format(cfg, "csv")
    t = 2.0 * math.pi * np.arange(cfg.samples) / cfg.samples
    k = curvature(E, t)
    k = np.atleast_1d(k)
    lo, hi = curvature_bounds(E)
    header = {
        "kind": kind,
        "focus1": E.focus1,
        "focus2": E.focus2,
        "M": E.major,
        "m": E.minor,
        "theta": E.theta,
        "kappa_lower_bound": lo,
        "kappa_upper_bound": hi,
        "kappa_min": float(k.min()),
        "kappa_max": float(k.max()),
        "eccentricity": eccentricity(E),
        "eccentricity_literal": eccentricity_literal(E),
    }
    if fmt_ == "json":
        return to_json({"ellipse": header, "rows": [[a, b] for a, b in zip(t, k)]}) + "\n", 0

    def show(v):
        if isinstance(v, str):
            return v
        if isinstance(v, complex):
            return f"{fmt(v.real)}{'+' if v.imag >= 0 else '-'}{fmt(abs(v.imag))}i"
        return fmt(v)

    lines = [f"# {name}={show(v)}" for name, v in header.items()]
    return "\n".join(lines) + "\n" + _csv(["t", "kappa"], zip(t, k)), 0


def cmd_reduce(cfg):
    _format(cfg, "json", allowed=("json",))
    B = cfg.product()
    if B.degree < 2:
        raise UsageError("reduce needs degree >= 2")
    v = is_reducible(B, tol=cfg.tolerances["reduce"])
    doc = {
        "degree": B.degree,
        "reducible": v.reducible,
        "conjugate_point": v.conjugate_point,
        "failed_conditions": list(v.failed_conditions),
        "delta": v.delta,
        "critical_points": list(v.critical_points),
        "value_at_1": evaluate(B, 1.0),
    }
    return to_json(doc) + "\n", 0


GEODESIC_COLUMNS = ["kind", "center_re", "center_im", "radius", "dir_re", "dir_im", "p_re", "p_im", "q_re", "q_im"]


def cmd_geodesics(cfg):
    if cfg.a is None or cfg.n is None:
        raise UsageError("geodesics needs --a and --n")
    if cfg.n < 2 or cfg.n % 2:
        raise UsageError("--n must be an even integer >= 2")
    if not abs(cfg.a) < 1.0:
        raise UsageError("--a must lie inside the unit disk")
    if cfg.a == 0:
        raise UsageError("a = 0 gives z^n, whose zeros all coincide; no geodesics are defined")
    fmt_ = _format(cfg, "csv")
    B = conjugate_power(cfg.a, cfg.n)
    bundle = opposite_pair_geodesics(B, cfg.a)
    rows = []
    for g, (p, q) in zip(bundle.geodesics, bundle.pairs):
        if g.kind == "diameter":
            rows.append(["diameter", "", "", "", fmt(g.direction.real), fmt(g.direction.imag)])
        else:
            rows.append(["arc", fmt(g.center.real), fmt(g.center.imag), fmt(g.radius), "", ""])
        rows[-1] += [fmt(p.real), fmt(p.imag), fmt(q.real), fmt(q.imag)]
    X = bundle.intersection
    if fmt_ == "json":
        doc = {
            "a": cfg.a,
            "n": cfg.n,
            "geodesics": [dict(zip(GEODESIC_COLUMNS, r)) for r in rows],
            "intersection": X,
            "max_deviation": bundle.max_deviation,
        }
        return to_json(doc) + "\n", 0
    comments = [
        "intersection=" + ("none" if X is None else f"{fmt(X.real)},{fmt(X.imag)}"),
        f"expected={fmt(-cfg.a.real)},{fmt(-cfg.a.imag)}",
        f"max_deviation={fmt(bundle.max_deviation)}",
    ]
    return _csv(GEODESIC_COLUMNS, rows, comments), 0


def cmd_counterexample(cfg):
    _format(cfg, "json", allowed=("json",))
    if (cfg.zs is None) != (cfg.ws is None):
        raise UsageError("--zs and --ws must be given together")
    spec = default_spec() if cfg.zs is None else InterleavedSpec(tuple(cfg.zs), tuple(cfg.ws))
    B = build_interpolant(spec)
    bz = [B(z) for z in spec.zs]
    bw = [B(w) for w in spec.ws]
    cube_z = [z**3 for z in spec.zs]
    cube_w = [w**3 for w in spec.ws]
    doc = {
        "zs": list(spec.zs),
        "ws": list(spec.ws),
        "f_zeros": list(B.f_zeros),
        "f_poles": list(B.f_poles),
        "B_images_zs": bz,
        "B_images_ws": bw,
        "B_pairwise_zs": pairwise_distances(bz),
        "B_pairwise_ws": pairwise_distances(bw),
        "cube_images_zs": cube_z,
        "cube_images_ws": cube_w,
        "cube_pairwise_zs": pairwise_distances(cube_z),
        "cube_pairwise_ws": pairwise_distances(cube_w),
        "abs_B0": abs(B(0.0)),
    }
    return to_json(doc) + "\n", 0


COMMANDS = {
    "sweep": cmd_sweep,
    "curvature": cmd_curvature,
    "reduce": cmd_reduce,
    "geodesics": cmd_geodesics,
    "counterexample": cmd_counterexample,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--zeros", help="comma-separated zeros, e.g. 0,0.5,-0.5 or 0.2+0.3i")
    common.add_argument("--mu", default="1", help="unimodular constant (default 1)")
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--out", help="write data here instead of standard output")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--tol", action="append", metavar="NAME=VALUE", help="tolerance override; repeatable")

    parser = argparse.ArgumentParser(prog="poncelet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("sweep", parents=[common], help="total power-circle area over many fibers")
    p.add_argument("--assert-invariant", action="store_true", help="exit 1 unless the area is invariant")
    p = sub.add_parser("curvature", parents=[common], help="curvature table of a Blaschke ellipse")
    p.add_argument("--ellipse4", metavar="A", help="use the degree-4 ellipse with designated zero A")
    sub.add_parser("reduce", parents=[common], help="reducibility verdict as JSON")
    p = sub.add_parser("geodesics", parents=[common], help="opposite-pair geodesics of a reducible product")
    p.add_argument("--a", help="conjugate point")
    p.add_argument("--n", type=int, help="even degree")
    p = sub.add_parser("counterexample", parents=[common], help="interleaved-triple interpolation report")
    p.add_argument("--zs")
    p.add_argument("--ws")
    return parser


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        text, code = COMMANDS[cfg.subcommand](cfg)
    except (UsageError, BlaschkeError) as exc:
        print(f"poncelet {ns.command}: {exc}", file=sys.stderr)
        return 2
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
