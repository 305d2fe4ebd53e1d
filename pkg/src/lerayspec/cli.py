"""Command-line front end: sweeps, spectra, duality, admissibility tables.

Domain and measure inputs are JSON, either inline or as a file path:

    domain:  {"kind": "pball", "p": 4, "a1": 1, "a2": 1}
             {"kind": "generator", "b1": 1, "b2": 1,
              "profile": {"type": "constant", "p": 3}}
    measure: {"type": "order_q", "q": 0.5} | {"type": "surface"}
             | {"type": "fefferman"} | {"type": "mu0"}

Profile types: constant, tabulated (s_grid/p_values/endpoint_regularity),
example1, example2 (nu), example3, and "dual:<type>" for polars.  Exit
codes: 0 success, 2 spec error, 3 non-admissible measure, 4 class
violation, 5 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import domain as dom
from .errors import (DivergentIntegralError, DomainSpecError,
                     InconclusiveClassificationError, LeraySpecError,
                     NearSingularityError, NonAdmissibleMeasureError,
                     QuadratureError, UnsupportedClassError)
from .duality import dual_pair, polar, verify_duality
from .leray import InteriorPoint, leray_kernel_density
from .measure import (Admissibility, BoundaryMeasure, admissibility_threshold,
                      fefferman_measure, flat_measure, is_admissible,
                      order_q_measure, surface_measure)
from .spectrum import (DEFAULT_TOL, essential_spectrum, ks_piece_norm,
                       piece_norm)

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_NON_ADMISSIBLE = 3
EXIT_CLASS = 4
EXIT_NUMERICAL = 5

_SWEEP_COLUMNS = ("n", "m", "norm_sq", "ks_norm", "logI_m1", "logI_0", "logI_p1")


def _fmt(x: float) -> str:
    """17 significant digits: doubles round-trip exactly."""
    return format(float(x), ".17g")


def _load_json(arg: str) -> dict:
    text = arg.strip()
    if not text.startswith("{"):
        path = Path(arg)
        if not path.exists():
            raise DomainSpecError(f"spec file not found: {arg}")
        text = path.read_text()
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainSpecError(f"invalid JSON spec: {exc}") from exc
    if not isinstance(spec, dict):
        raise DomainSpecError("spec must be a JSON object")
    return spec


def parse_profile(spec: dict) -> dom.GeneratorProfile:
    kind = spec.get("type")
    if not isinstance(kind, str):
        raise DomainSpecError("profile needs a 'type' field")
    if kind.startswith("dual:"):
        inner = dict(spec)
        inner["type"] = kind[len("dual:"):]
        return parse_profile(inner).conjugate()
    if kind == "constant":
        return dom.ConstantProfile(float(spec["p"]))
    if kind == "tabulated":
        regs = spec.get("endpoint_regularity", ["unknown", "unknown"])
        return dom.TabulatedProfile(
            np.asarray(spec["s_grid"], dtype=float),
            np.asarray(spec["p_values"], dtype=float),
            dom.EndpointRegularity(regs[0]),
            dom.EndpointRegularity(regs[1]))
    if kind == "example1":
        kwargs = {}
        if "curvature" in spec:
            kwargs["curvature"] = float(spec["curvature"])
        if "blend" in spec:
            kwargs["blend"] = tuple(float(x) for x in spec["blend"])
        return dom.example1_profile(**kwargs)
    if kind == "example2":
        if "nu" not in spec:
            raise DomainSpecError("example2 profile needs 'nu'")
        return dom.example2_profile(float(spec["nu"]))
    if kind == "example3":
        return dom.example3_profile()
    raise DomainSpecError(f"unknown profile type {kind!r}")


_EXAMPLE_SCALES = {
    "example1": (1.0, 1.0),
    "example2": (1.0, 1.0),
    "example3": (math.sqrt(math.log(10.0)), 1.0),
}


def parse_domain(spec: dict) -> dom.DomainModel:
    kind = spec.get("kind")
    if kind == "pball":
        try:
            return dom.from_pball(float(spec["p"]), float(spec["a1"]),
                                  float(spec["a2"]))
        except KeyError as exc:
            raise DomainSpecError(f"pball spec missing field {exc}") from exc
    if kind == "generator":
        if "profile" not in spec:
            raise DomainSpecError("generator spec needs a 'profile'")
        profile = parse_profile(spec["profile"])
        ptype = spec["profile"].get("type", "")
        default = _EXAMPLE_SCALES.get(ptype)
        if default is not None:
            b1 = float(spec.get("b1", default[0]))
            b2 = float(spec.get("b2", default[1]))
        else:
            try:
                b1, b2 = float(spec["b1"]), float(spec["b2"])
            except KeyError as exc:
                raise DomainSpecError(f"generator spec missing {exc}") from exc
        return dom.from_generator(profile, b1, b2)
    raise DomainSpecError(f"domain 'kind' must be pball or generator, got {kind!r}")


def parse_measure(spec: dict, d: dom.DomainModel) -> BoundaryMeasure:
    kind = spec.get("type")
    if kind == "order_q":
        if "q" not in spec:
            raise DomainSpecError("order_q measure needs 'q'")
        return order_q_measure(d, float(spec["q"]))
    if kind == "surface":
        return surface_measure(d)
    if kind == "fefferman":
        return fefferman_measure(d)
    if kind == "mu0":
        return flat_measure(d)
    raise DomainSpecError(
        f"measure 'type' must be order_q/surface/fefferman/mu0, got {kind!r}")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _config_echo(args, domain_spec, measure_spec=None) -> dict:
    cfg = {"command": args.command, "domain": domain_spec}
    if measure_spec is not None:
        cfg["measure"] = measure_spec
    for key in ("n_max", "report_n", "kind", "tol", "format"):
        if hasattr(args, key.replace("-", "_")):
            cfg[key] = getattr(args, key.replace("-", "_"))
    return cfg


def cmd_domain_info(args) -> int:
    spec = _load_json(args.domain)
    d = parse_domain(spec)
    p0, p1 = d.endpoint_p
    ss = np.linspace(1e-4, 1.0 - 1e-4, 513)
    kappa3 = []
    for s in ss:
        kappa3.append(d.curvatures(float(s)).kappa3)
    p_interior = d.p_values(ss)
    notes = []
    if d.class_tag is dom.ClassTag.TILDE_R:
        if not (math.isfinite(p0) and p0 > 1.0) or not (math.isfinite(p1) and p1 > 1.0):
            notes.append("R-membership fails: conjugate exponent p* unbounded "
                         "at an endpoint")
        else:
            notes.append("R-membership fails: Dini integral divergent at an endpoint")
    report = {
        "config": _config_echo(args, spec),
        "class": d.class_tag.value,
        "b1": d.b1,
        "b2": d.b2,
        "endpoint_p": [p0, p1],
        "p_range_interior": [float(np.min(p_interior)), float(np.max(p_interior))],
        "kappa3_range_sampled": [float(np.min(kappa3)), float(np.max(kappa3))],
        "notes": notes,
    }
    _emit(json.dumps(report, indent=2, default=str) + "\n", args.out)
    return EXIT_OK


def _sweep_rows(d, mu, n_max: int, tol: float):
    rows = []
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            pn = piece_norm(d, mu, n, m, tol)
            rows.append((n, m, pn.norm_sq, ks_piece_norm(pn),
                         pn.logI_minus1.log_magnitude,
                         pn.logI_0.log_magnitude,
                         pn.logI_plus1.log_magnitude))
    return rows


def cmd_piece_norms(args) -> int:
    dspec = _load_json(args.domain)
    mspec = _load_json(args.measure)
    d = parse_domain(dspec)
    mu = parse_measure(mspec, d)
    if is_admissible(mu) is Admissibility.NOT_ADMISSIBLE:
        raise NonAdmissibleMeasureError(
            f"measure {mu.label} is not admissible on this domain")
    rows = _sweep_rows(d, mu, args.n_max, args.tol)
    cfg = _config_echo(args, dspec, mspec)
    if args.format == "json":
        payload = {"config": cfg, "columns": list(_SWEEP_COLUMNS),
                   "rows": [list(r) for r in rows]}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
        return EXIT_OK
    lines = [f"# config: {json.dumps(cfg, sort_keys=True)}",
             ",".join(_SWEEP_COLUMNS)]
    for n, m, norm_sq, ks, lm1, l0, lp1 in rows:
        lines.append(",".join([str(n), str(m), _fmt(norm_sq), _fmt(ks),
                               _fmt(lm1), _fmt(l0), _fmt(lp1)]))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    dspec = _load_json(args.domain)
    mspec = _load_json(args.measure)
    d = parse_domain(dspec)
    mu = parse_measure(mspec, d)
    kind = {"lstarl": "lstarl", "ks": "ks"}[args.kind]
    report = essential_spectrum(d, mu, kind, args.report_n)
    payload = {"config": _config_echo(args, dspec, mspec)}
    payload.update(report.as_dict())
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_dual(args) -> int:
    dspec = _load_json(args.domain)
    d = parse_domain(dspec)
    if args.measure:
        mu = parse_measure(_load_json(args.measure), d)
    else:
        mu = flat_measure(d)
    pair = dual_pair(d, mu)
    grid = [(n, m) for n in range(0, args.n_max + 1, 2)
            for m in range(0, args.n_max + 1, 2)]
    rep = verify_duality(pair, grid, args.tol)
    payload = {
        "config": _config_echo(args, dspec),
        "polar_domain": pair.polar.spec_dict(),
        "verification": {
            "grid_points": len(grid),
            "max_discrepancy": rep.max_discrepancy,
            "arg_max": list(rep.arg_max),
            "threshold": rep.threshold,
            "passed": rep.passed,
        },
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK if rep.passed else EXIT_NUMERICAL


def cmd_admissible(args) -> int:
    dspec = _load_json(args.domain)
    d = parse_domain(dspec)
    qs = [float(x) for x in args.q_values.split(",")] if args.q_values else \
        [-2.5, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 2.5]
    threshold = admissibility_threshold(d) if d.class_tag in (
        dom.ClassTag.P, dom.ClassTag.R) else None
    rows = []
    for q in qs:
        verdict = is_admissible(order_q_measure(d, q))
        boundary = threshold is not None and math.isfinite(threshold) \
            and abs(abs(q) - threshold) < 1e-12
        rows.append({"q": q, "verdict": verdict.value,
                     "boundary_case": bool(boundary)})
    payload = {
        "config": _config_echo(args, dspec),
        "class": d.class_tag.value,
        "order_threshold": threshold,
        "rows": rows,
    }
    if args.format == "csv":
        lines = [f"# config: {json.dumps(payload['config'], sort_keys=True)}",
                 "q,verdict,boundary_case"]
        for r in rows:
            lines.append(f"{_fmt(r['q'])},{r['verdict']},{int(r['boundary_case'])}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise DomainSpecError(f"cannot parse complex number {text!r}") from exc


def cmd_kernel_eval(args) -> int:
    dspec = _load_json(args.domain)
    d = parse_domain(dspec)
    w = InteriorPoint(_parse_complex(args.w1), _parse_complex(args.w2))
    w.validate_interior(d)
    val = leray_kernel_density(d, args.s, args.theta1, args.theta2, w)
    payload = {
        "config": _config_echo(args, dspec),
        "s": args.s, "theta1": args.theta1, "theta2": args.theta2,
        "w1": str(w.w1), "w2": str(w.w2),
        "density": {"re": val.real, "im": val.imag},
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lerayspec",
        description="Spectral data of the Leray transform on convex "
                    "Reinhardt domains in C^2.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, measure=True):
        p.add_argument("--domain", required=True,
                       help="domain spec: inline JSON or a file path")
        if measure:
            p.add_argument("--measure", required=measure == "required",
                           help="measure spec: inline JSON or a file path")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="quadrature relative tolerance")

    p = sub.add_parser("domain-info", help="class tag, scales, curvature ranges")
    common(p, measure=False)
    p.set_defaults(func=cmd_domain_info, format="json")

    p = sub.add_parser("piece-norms", help="sweep ||L_nm||^2 over [0, n_max]^2")
    common(p, measure="required")
    p.add_argument("--n-max", type=int, default=10, dest="n_max")
    p.set_defaults(func=cmd_piece_norms)

    p = sub.add_parser("spectrum", help="essential spectrum report")
    common(p, measure="required")
    p.add_argument("--kind", choices=("lstarl", "ks"), default="lstarl")
    p.add_argument("--report-n", type=int, default=32, dest="report_n",
                   help="discrete eigenvalues per family")
    p.set_defaults(func=cmd_spectrum, format="json")

    p = sub.add_parser("dual", help="polar domain spec plus duality verification")
    common(p)
    p.add_argument("--n-max", type=int, default=10, dest="n_max")
    p.set_defaults(func=cmd_dual, format="json")

    p = sub.add_parser("admissible", help="order-q admissibility table")
    common(p, measure=False)
    p.add_argument("--q-values", default=None,
                   help="comma-separated q values to test")
    p.set_defaults(func=cmd_admissible, format="json")

    p = sub.add_parser("kernel-eval", help="evaluate the kernel density")
    common(p, measure=False)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--theta1", type=float, default=0.0)
    p.add_argument("--theta2", type=float, default=0.0)
    p.add_argument("--w1", required=True, help="complex, e.g. '0.3+0.1j'")
    p.add_argument("--w2", required=True)
    p.set_defaults(func=cmd_kernel_eval, format="json")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainSpecError, KeyError) as exc:
        print(f"error: invalid spec: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except NonAdmissibleMeasureError as exc:
        print(f"error: non-admissible measure: {exc}", file=sys.stderr)
        return EXIT_NON_ADMISSIBLE
    except UnsupportedClassError as exc:
        print(f"error: unsupported domain class: {exc}", file=sys.stderr)
        return EXIT_CLASS
    except (QuadratureError, DivergentIntegralError, NearSingularityError,
            InconclusiveClassificationError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except LeraySpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
