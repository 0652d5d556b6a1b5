"""Command-line front end.

Subcommands
    profile   construct a closed-form family, sample it, write CSV/JSON
    classify  weak/strong existence verdicts for a family at a point
    solve     shooting computation of a numeric compacton
    verify    weak-form residual battery for closed-form or numeric profiles
    table1    full existence table of the fourteen families
    region    admissibility verdicts over a sweep of the free power

Exit codes: 0 success, 2 invalid parameters, 3 procedure rejection
(sign/concavity/existence), 4 verification failure.

The environment variable COMPACTONS_OUTPUT_DIR sets the default output
directory; a config file of key=value lines (--config) supplies defaults
that explicit flags override.  All files are written atomically.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from functools import partial

from . import catalog, existence, shooting, weakform
from .elliptic import DomainError
from .params import EquationParams, InvalidParameters, ProcedureRejection, WaveSpec

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_REJECTED = 3
EXIT_VERIFY_FAILED = 4

ENV_OUTPUT_DIR = "COMPACTONS_OUTPUT_DIR"

_FAMILY_CHOICES = [f.value for f in catalog.FamilyId]


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _resolve_output(path: str | None) -> str | None:
    if path is None:
        return None
    base = os.environ.get(ENV_OUTPUT_DIR)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _load_config(path: str) -> dict[str, str]:
    """key=value lines; blank lines and #-comments ignored."""
    out: dict[str, str] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InvalidParameters(
                    f"{path}:{lineno}: expected key=value, got {line!r}"
                )
            key, _, value = line.partition("=")
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _wave_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--c", type=float, default=None,
                     help="wave speed (K equation; sets g = c)")
    sub.add_argument("--g", type=float, default=None,
                     help="effective wave constant directly")
    sub.add_argument("--mu", type=float, default=None,
                     help="transverse slope (KP)")
    sub.add_argument("--nu", type=float, default=None,
                     help="wave speed (KP)")
    sub.add_argument("--sigma", type=int, default=None, choices=(-1, 1),
                     help="transverse sign (KP)")


def _wave_spec(args) -> WaveSpec:
    has_c = args.c is not None
    has_kp = args.mu is not None or args.nu is not None
    if has_c and has_kp:
        raise InvalidParameters("give either --c or (--mu, --nu, --sigma), not both")
    if has_kp:
        if args.mu is None or args.nu is None or args.sigma is None:
            raise InvalidParameters("KP waves need all of --mu, --nu, --sigma")
        spec = WaveSpec.for_KP(args.mu, args.nu, args.sigma)
        if args.g is not None and args.g != spec.g:
            raise InvalidParameters(
                f"--g {args.g} contradicts nu - sigma*mu**2 = {spec.g}"
            )
        return spec
    if has_c:
        if args.g is not None and args.g != args.c:
            raise InvalidParameters(f"--g {args.g} contradicts --c {args.c}")
        return WaveSpec.for_K(args.c)
    return WaveSpec.for_K(args.g if args.g is not None else 1.0)


def _emit(text: str, output: str | None) -> None:
    path = _resolve_output(output)
    if path is None:
        sys.stdout.write(text)
    else:
        _atomic_write(path, text)
        print(f"wrote {path}")


# ---------------------------------------------------------------------------
# subcommands

def cmd_profile(args) -> int:
    spec = _wave_spec(args)
    kind = spec.kind
    prof = catalog.construct(
        catalog.FamilyId(args.family), n=args.n, a=args.a, b=args.b,
        g=spec.g, m=args.m, kind=kind,
        sigma=args.sigma if kind == "KP" else None,
    )
    sampled = catalog.sample(prof, args.count)
    text = sampled.to_json() if args.format == "json" else sampled.to_csv()
    output = args.output
    if output is None:
        output = f"profile_{args.family}.{args.format}"
    print(f"family={prof.family.value} m={prof.params.m:g} n={prof.params.n:g} "
          f"g={prof.g:g}")
    print(f"alpha={prof.alpha!r} beta={prof.beta!r}")
    print(f"L={prof.L!r} p={prof.p:g}")
    _emit(text, output)
    return EXIT_OK


def cmd_classify(args) -> int:
    family = catalog.FamilyId(args.family)
    rep = existence.classify_family(family, n=args.n, m=args.m,
                                    a=args.a, b=args.b, g=args.g)
    payload = {
        "family": family.value,
        "p": rep.p,
        "weak_K": rep.weak_K,
        "strong_K": rep.strong_K,
        "weak_KP_case": rep.weak_KP,
        "weak_KP": rep.weak_KP is not None,
        "strong_KP": rep.strong_KP,
        "U0_constraint": rep.U0_constraint,
        "reasons": list(rep.reasons),
    }
    if args.format == "json":
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
    else:
        def mark(flag):
            return "yes" if flag else "no"
        lines = [
            f"family      {family.value}",
            f"p           {rep.p:g}",
            f"weak K      {mark(rep.weak_K)}",
            f"strong K    {mark(rep.strong_K)}",
            f"weak KP     {mark(rep.weak_KP is not None)}"
            + (f" (condition {rep.weak_KP})" if rep.weak_KP is not None else ""),
            f"strong KP   {mark(rep.strong_KP)}",
        ]
        for reason in rep.reasons:
            lines.append(f"  - {reason}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_solve(args) -> int:
    spec = _wave_spec(args)
    params = EquationParams(
        m=args.m, n=args.n, a=args.a, b=args.b, kind=spec.kind,
        sigma=args.sigma if spec.kind == "KP" else None,
    )
    tol = shooting.ShootTolerances(rtol=args.rtol, grid_points=args.grid_points)
    nc = shooting.shoot(params, spec.g, tolerances=tol)
    print(f"V0={nc.V0!r}")
    print(f"L_quadrature={nc.L_quadrature!r} L_shoot={nc.L_shoot!r}")
    print(f"energy_residual_max={nc.energy_residual_max:.3e}")
    print("cutoff_residuals="
          + ",".join(f"{r:.3e}" for r in nc.cutoff_residuals))
    text = nc.to_json() if args.format == "json" else nc.to_csv()
    output = args.output
    if output is None:
        output = f"solve_m{args.m:g}_n{args.n:g}.{args.format}"
    _emit(text, output)
    return EXIT_OK


def _numeric_callable(nc: shooting.NumericCompacton):
    from scipy.interpolate import PchipInterpolator

    import numpy as np

    interp = PchipInterpolator(nc.grid, nc.U, extrapolate=False)

    def u_eval(x):
        x = np.asarray(x, dtype=float)
        vals = interp(x)
        return np.where(np.isnan(vals), 0.0, np.maximum(vals, 0.0))

    return u_eval


def cmd_verify(args) -> int:
    spec = _wave_spec(args)
    if args.numeric:
        if args.m is None or args.n is None:
            raise InvalidParameters("--numeric verification needs --m and --n")
        params = EquationParams(m=args.m, n=args.n, a=args.a, b=args.b,
                                kind=spec.kind,
                                sigma=args.sigma if spec.kind == "KP" else None)
        nc = shooting.shoot(params, spec.g)
        u_eval, L = _numeric_callable(nc), nc.L_shoot
        label = f"numeric m={args.m:g} n={args.n:g}"
    else:
        if args.family is None:
            raise InvalidParameters("verify needs --family or --numeric")
        prof = catalog.construct(
            catalog.FamilyId(args.family), n=args.n, a=args.a, b=args.b,
            g=spec.g, m=args.m, kind=spec.kind,
            sigma=args.sigma if spec.kind == "KP" else None,
        )
        params, u_eval, L = prof.params, partial(catalog.evaluate, prof), prof.L
        label = prof.family.value
    equations = ("K", "KP") if args.equation == "both" else (args.equation,)
    reports = {}
    failed = False
    for eq in equations:
        rep = weakform.verify_weak(u_eval, params, spec.g, L, eq)
        ok = rep.max_abs_scaled < args.threshold
        failed = failed or not ok
        reports[eq] = rep
        print(f"{label} [{eq}] max scaled residual {rep.max_abs_scaled:.3e} "
              f"(threshold {args.threshold:g}) -> {'pass' if ok else 'FAIL'}")
    bq = weakform.boundary_quantities(u_eval, params, spec.g, L)
    pfit = weakform.endpoint_power_fit(u_eval, L)
    print("boundary A1..A4: " + ", ".join(f"{q:.3e}" for q in bq))
    print(f"endpoint power fit: {pfit:.4f}")
    if args.output is not None:
        payload = {
            "profile": label,
            "threshold": args.threshold,
            "passed": not failed,
            "boundary_quantities": list(bq),
            "endpoint_power_fit": pfit,
            "reports": {eq: json.loads(rep.to_json())
                        for eq, rep in reports.items()},
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def _table1_rows(families) -> list[dict]:
    rows = []
    for fam in families:
        iv = existence.table1_intervals(fam)
        rows.append({
            "family": fam.value,
            "param": iv["param"],
            "weak_K": str(iv["weak_K"]),
            "strong_K": str(iv["strong_K"]),
            "weak_KP": str(iv["weak_KP"]),
            "strong_KP": str(iv["strong_KP"]),
        })
    return rows


def cmd_table1(args) -> int:
    families = ([catalog.FamilyId(args.family)] if args.family
                else list(catalog.FamilyId))
    rows = _table1_rows(families)
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "param", "weak_K", "strong_K",
                    "weak_KP", "strong_KP"])
        for r in rows:
            w.writerow([r["family"], r["param"], r["weak_K"],
                        r["strong_K"], r["weak_KP"], r["strong_KP"]])
        text = buf.getvalue()
    _emit(text, args.output)
    return EXIT_OK


def cmd_region(args) -> int:
    rows = existence.region_grid(catalog.FamilyId(args.family),
                                 args.n_min, args.n_max, args.steps)
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        text = existence.region_grid_csv(rows)
    output = args.output
    if output is None:
        output = f"region_{args.family}.{args.format}"
    _emit(text, output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compactons",
        description="Compacton construction, classification, and verification "
                    "for the K(m,n) and KP(m,n) equations.",
    )
    parser.add_argument("--config", default=None,
                        help="key=value file of defaults (flags override)")
    cfg_parent = argparse.ArgumentParser(add_help=False)
    cfg_parent.add_argument("--config", default=None,
                            help="key=value file of defaults (flags override)")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=lambda **kw: argparse.ArgumentParser(
                                    parents=[cfg_parent], **kw))

    def common(p, family_required=True):
        if family_required:
            p.add_argument("--family", required=True, choices=_FAMILY_CHOICES)
        p.add_argument("--n", type=float, default=None)
        p.add_argument("--m", type=float, default=None)
        p.add_argument("--a", type=float, default=1.0)
        p.add_argument("--b", type=float, default=1.0)
        p.add_argument("--output", "-o", default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("profile", help="construct and sample a closed-form family")
    common(p)
    _wave_flags(p)
    p.add_argument("--count", type=int, default=401,
                   help="samples across the support (default 401)")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("classify", help="existence verdicts at one point")
    common(p)
    p.add_argument("--g", type=float, default=1.0)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="shooting computation of a numeric compacton")
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--rtol", type=float, default=1e-10)
    p.add_argument("--grid-points", type=int, default=801)
    _wave_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="weak-form residual battery")
    common(p, family_required=False)
    p.add_argument("--family", choices=_FAMILY_CHOICES, default=None)
    p.add_argument("--numeric", action="store_true",
                   help="verify the shooting solution at (--m, --n) instead "
                        "of a closed-form family")
    p.add_argument("--equation", choices=("K", "KP", "both"), default="K")
    p.add_argument("--threshold", type=float, default=1e-7)
    _wave_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table1", help="existence table of all families")
    p.add_argument("--family", choices=_FAMILY_CHOICES, default=None)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("region", help="verdict sweep over the free power")
    p.add_argument("--family", required=True, choices=_FAMILY_CHOICES)
    p.add_argument("--n-min", type=float, required=True)
    p.add_argument("--n-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_region)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    # pre-scan for --config so its values become defaults that flags override
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config", default=None)
    pre_args, _ = pre.parse_known_args(argv)
    try:
        if pre_args.config:
            defaults = _load_config(pre_args.config)
            for sp in parser._subparsers._group_actions[0].choices.values():
                converted = {}
                for act in sp._actions:
                    if act.dest in defaults:
                        raw = defaults[act.dest]
                        converted[act.dest] = act.type(raw) if act.type else raw
                sp.set_defaults(**converted)
        args = parser.parse_args(argv)
        return args.func(args)
    except (InvalidParameters, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ProcedureRejection as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED


if __name__ == "__main__":
    sys.exit(main())
