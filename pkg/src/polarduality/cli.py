"""Command-line front end: one subcommand per check, JSON or CSV reports.

Exit codes: 0 when every requested verdict passes, 1 when a verdict fails,
2 on bad arguments, malformed input or a violated precondition (including
an odd state handed to an even-state check, whose report is still written).

Reports go to ``--output`` when given, otherwise to
``$POLARDUALITY_OUTPUT_DIR/<subcommand>.<ext>`` when that variable is set,
otherwise to standard output.  Grid files written by ``fourier`` and
``wigner`` go to ``--output`` (their JSON summary then goes to standard
output) or to ``$POLARDUALITY_OUTPUT_DIR/<subcommand>.pdgrid``; one of the
two is required.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import geometry as geo
from . import symplectic as sym
from . import volumes as vol
from .errors import PolarDualityError
from .harmonic import checks, grid, transforms

OUTPUT_ENV = "POLARDUALITY_OUTPUT_DIR"
DEFAULT_SEED = 0
GRID_COMMANDS = ("fourier", "wigner")
TRADEOFF_HEADER = "n,hbar,half_width,epsilon,eta,sum,lower_bound,pass"


# -- argument parsing helpers -----------------------------------------------


def parse_matrix(text: str) -> np.ndarray:
    """``"4"`` -> [[4]], ``"2,0.5"`` -> diag(2, 0.5), ``"2,1;1,3"`` -> rows."""
    rows = [r for r in text.split(";") if r.strip()]
    values = [[float(v) for v in r.split(",")] for r in rows]
    if len(values) == 1 and len(values[0]) > 1:
        return np.diag(values[0])
    M = np.array(values, dtype=float)
    if M.ndim != 2:
        raise PolarDualityError(f"malformed matrix {text!r}")
    return M


def parse_vector(text: str) -> np.ndarray:
    return np.array([float(v) for v in text.split(",")], dtype=float)


def _body_options(p: argparse.ArgumentParser, prefix: str = "", label: str = "body"):
    dash = f"--{prefix}" if prefix else "--"
    g = p.add_argument_group(f"{label} (one of)")
    g.add_argument(f"{dash}body", dest=f"{prefix}body", metavar="FILE", help="JSON body description")
    g.add_argument(f"{dash}box", dest=f"{prefix}box", metavar="A1,A2,..", help="centered box half-widths")
    g.add_argument(f"{dash}ball", dest=f"{prefix}ball", type=float, metavar="R", help="centered ball radius")
    g.add_argument(f"{dash}ellipsoid", dest=f"{prefix}ellipsoid", metavar="MATRIX", help="ellipsoid {Ax.x <= hbar}")


def _get_body(args, prefix: str = "", dim: int | None = None, required: bool = True):
    body = getattr(args, f"{prefix}body")
    given = [k for k in ("body", "box", "ball", "ellipsoid") if getattr(args, f"{prefix}{k}") is not None]
    if len(given) > 1:
        raise PolarDualityError(f"give only one of the {prefix or ''}body options, got {given}")
    if not given:
        if required:
            raise PolarDualityError(f"a {prefix}body is required (--{prefix}body, --{prefix}box, ...)")
        return None
    if body is not None:
        with open(body, encoding="utf-8") as fh:
            spec = json.load(fh)
        spec.setdefault("hbar", args.hbar)
        return geo.make_body(spec)
    if getattr(args, f"{prefix}box") is not None:
        return geo.box(parse_vector(getattr(args, f"{prefix}box")), args.hbar)
    if getattr(args, f"{prefix}ball") is not None:
        return geo.ball(getattr(args, f"{prefix}ball"), dim or args.dim, args.hbar)
    return geo.ellipsoid(parse_matrix(getattr(args, f"{prefix}ellipsoid")), args.hbar)


def _state_options(p: argparse.ArgumentParser):
    g = p.add_argument_group("state")
    g.add_argument("--state", default="gaussian", choices=("gaussian", "cat", "hermite1", "file"))
    g.add_argument("--A", dest="A", metavar="MATRIX", help="Gaussian matrix (default identity)")
    g.add_argument("--offset", type=float, default=1.0, help="cat-state displacement in units of sqrt(hbar)")
    g.add_argument("--state-file", metavar="FILE", help="grid file for --state file")
    g.add_argument("--N", type=int, help="samples per axis")
    g.add_argument("--L", type=float, help="grid half-extent")


def _get_state(args, wigner_grid: bool = False) -> grid.SampledFunction:
    h = args.hbar
    if args.state == "file":
        if not args.state_file:
            raise PolarDualityError("--state file needs --state-file")
        f = grid.load(args.state_file)
        if not isinstance(f, grid.SampledFunction):
            raise PolarDualityError("state file does not hold a sampled function")
        return f
    A = parse_matrix(args.A) if args.A else np.eye(args.dim)
    n = A.shape[0]
    N0, L0 = (grid.default_wigner_grid if wigner_grid else grid.default_grid)(n, h)
    N, L = args.N or N0, args.L or L0
    if args.state == "gaussian":
        return transforms.gaussian_state(A, N, L, h)
    base = transforms.gaussian_state(A, N, L, h)
    x = base.points()
    if args.state == "hermite1":
        vals = base.values.ravel() * x[:, 0]
    else:
        shift = np.zeros(n)
        shift[0] = args.offset * math.sqrt(h)
        q = lambda y: np.einsum("ij,jk,ik->i", y, A, y)
        vals = np.exp(-q(x - shift) / (2 * h)) + np.exp(-q(x + shift) / (2 * h))
    f = grid.SampledFunction(np.reshape(vals, base.values.shape), L, h)
    return grid.SampledFunction(f.values / f.norm(), L, h)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def _flatten(d, prefix=""):
    for k in sorted(d):
        v = d[k]
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        else:
            yield key, json.dumps(v) if isinstance(v, list) else v


def render(report: dict, fmt: str) -> str:
    report = _jsonable(report)
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, allow_nan=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in _flatten(report):
        w.writerow([k, _csv_value(v)])
    return buf.getvalue()


def _csv_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else v


def _destination(args, ext: str) -> str | None:
    if args.output:
        return args.output
    out_dir = os.environ.get(OUTPUT_ENV)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        return os.path.join(out_dir, f"{args.command}.{ext}")
    return None


def _emit(args, text: str, ext: str):
    path = _destination(args, ext)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _exit_code(report: dict) -> int:
    if report.get("applicable") is False:
        return 2
    return 0 if report.get("pass", True) else 1


# -- subcommands --------------------------------------------------------------


def cmd_dual(args):
    X = _get_body(args)
    D = geo.polar_dual_about(X, parse_vector(args.about)) if args.about else geo.polar_dual(X)
    return geo.body_to_dict(D)


def cmd_volume(args):
    X = _get_body(args)
    v = vol.volume(X, args.method, args.samples or 1_000_000, args.seed, args.threads)
    return {"body": geo.body_to_dict(X), "volume": v.to_dict()}


def cmd_mahler(args):
    X = _get_body(args)
    r = vol.check_bounds(X, args.method, args.samples or 1_000_000, args.seed, args.threads)
    return r.to_dict()


def cmd_bounds(args):
    X = _get_body(args, required=False)
    if X is None:
        return vol.bounds(args.n, args.hbar).to_dict()
    return vol.check_bounds(X, args.method, args.samples or 1_000_000, args.seed, args.threads).to_dict()


def cmd_blob(args):
    A = parse_matrix(args.A) if args.A else np.eye(args.dim)
    qb = sym.quantum_blob(A, args.hbar)
    violations = sym.blob_violations(A, args.hbar, args.samples or 100_000, args.seed)
    symplectic = sym.is_symplectic(qb.S.S)
    d = qb.to_dict()
    d.update(
        is_symplectic=symplectic,
        containment_samples=args.samples or 100_000,
        containment_violations=violations,
        blob_volume=qb.blob.volume(),
        ball_volume=vol.ball_volume(2 * A.shape[0], math.sqrt(args.hbar)),
        inequality="quantum blob inside X x X^hbar",
    )
    d["pass"] = symplectic and violations == 0
    return d


def cmd_lagrangian_dual(args):
    C = _get_body(args)
    n = C.dim
    L1 = sym.LagrangianFrame(parse_matrix(args.frame)) if args.frame else sym.LagrangianFrame.x_plane(n)
    L2 = sym.LagrangianFrame(parse_matrix(args.frame2)) if args.frame2 else sym.LagrangianFrame.p_plane(n)
    return geo.body_to_dict(sym.lagrangian_polar_dual(L1, L2, C))


def cmd_gromov1d(args):
    w = sym.gromov_width_1d(args.a, args.hbar)
    return {"a": args.a, "hbar": args.hbar, "width": w, "expected": 4 * args.hbar}


def cmd_santalo(args):
    X = _get_body(args)
    x = geo.santalo_point(X, mc_samples=args.samples or 20000, seed=args.seed)
    return {"body": geo.body_to_dict(X), "santalo_point": x.tolist()}


def _write_grid(args, obj, summary):
    path = _destination(args, "pdgrid")
    if path is None:
        raise PolarDualityError(f"{args.command} writes a binary grid: give --output or set {OUTPUT_ENV}")
    grid.save(obj, path)
    summary["file"] = path
    summary["header"] = obj.header()
    return summary


def cmd_fourier(args):
    f = _get_state(args)
    F = transforms.hbar_fourier(f, args.direction)
    return _write_grid(args, F, {"norm_in": f.norm(), "norm_out": F.norm()})


def cmd_wigner(args):
    f = _get_state(args, wigner_grid=True)
    W = transforms.wigner(f, args.mode, args.size)
    return _write_grid(args, W, {"mode": args.mode, "meta": W.meta})


def _report(r):
    return r.to_dict()


def cmd_concentration(args):
    f = _get_state(args)
    if args.space == "momentum":
        f = transforms.hbar_fourier(f)
    X = _get_body(args, dim=f.n)
    eps, err = checks.concentration_with_error(f, X)
    return {"body": geo.body_to_dict(X), "space": args.space, "epsilon_star": eps, "quadrature_error": err}


def cmd_ds_check(args):
    f = _get_state(args)
    X = _get_body(args, dim=f.n)
    P = _get_body(args, "p-", dim=f.n, required=False) or X
    return _report(checks.donoho_stark_check(f, X, P, args.samples or 1_000_000, args.seed))


def cmd_hardy(args):
    A, B = parse_matrix(args.A), parse_matrix(args.B)
    return _report(checks.hardy_check(A, B, args.hbar, args.samples or 2000, args.seed))


def cmd_corollary(args):
    f = _get_state(args, wigner_grid=True)
    X = _get_body(args, dim=2 * f.n, required=False)
    return _report(checks.wigner_ball_concentration(f, X, args.size, args.samples or 1_000_000, args.seed))


def cmd_tradeoff(args):
    f = _get_state(args)
    X = _get_body(args, dim=f.n)
    return _report(checks.tradeoff_check(f, X, args.samples or 1_000_000, args.seed))


def cmd_sweep(args):
    rows = vol.sweep_rows(
        args.nmax, args.hbar, args.sweep_body, args.method, args.samples or 1_000_000, args.seed, args.threads
    )
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    buf.write(vol.SWEEP_HEADER + "\n")
    ok = True
    for r in rows:
        ok &= r[-1] and r[-2]
        w.writerow([_csv_value(v) for v in r])
    buf.write("\n" + TRADEOFF_HEADER + "\n")
    for n in range(1, min(args.nmax, 2) + 1):
        a = math.sqrt(args.hbar)
        f = transforms.gaussian_state(np.eye(n), *grid.default_grid(n, args.hbar), args.hbar)
        r = checks.tradeoff_check(f, geo.box(np.full(n, a), args.hbar), args.samples or 1_000_000, args.seed)
        ok &= r.passed
        w.writerow([n, args.hbar, a, r.epsilon_star, r.eta_star, r.lhs, r.rhs, _csv_value(r.passed)])
    return buf.getvalue(), ok


COMMANDS = {
    "dual": (cmd_dual, "polar dual of a body (about --about when given)"),
    "volume": (cmd_volume, "exact or Monte Carlo volume"),
    "mahler": (cmd_mahler, "Mahler volume with the Blaschke-Santalo / Kuperberg verdicts"),
    "bounds": (cmd_bounds, "bound values for dimension --n, or the bound check for a body"),
    "blob": (cmd_blob, "quantum blob of ellipsoid(A) and its containment check"),
    "lagrangian-dual": (cmd_lagrangian_dual, "polar dual across a pair of Lagrangian frames"),
    "gromov1d": (cmd_gromov1d, "area of [-a, a] x its polar dual"),
    "santalo": (cmd_santalo, "Santalo point of a body"),
    "fourier": (cmd_fourier, "hbar-Fourier transform of a state, written as a grid file"),
    "wigner": (cmd_wigner, "Wigner or ambiguity table, written as a grid file"),
    "concentration": (cmd_concentration, "minimal concentration of a state in a body"),
    "ds-check": (cmd_ds_check, "Donoho-Stark uncertainty principle"),
    "hardy": (cmd_hardy, "Hardy criterion: eigenvalues versus containment sampling"),
    "corollary": (cmd_corollary, "Wigner concentration in the quantum ball"),
    "tradeoff": (cmd_tradeoff, "position/momentum concentration trade-off"),
    "sweep": (cmd_sweep, "bound suite CSV for n = 1..nmax plus trade-off rows"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--hbar", type=float, default=1.0)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, help="Monte Carlo samples (per-command default)")
    common.add_argument("--threads", type=int, default=1, help="Monte Carlo worker threads (results unchanged)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", metavar="PATH")
    common.add_argument("--dim", type=int, default=1, help="dimension for --ball and identity defaults")
    common.add_argument("--method", choices=("auto", "exact", "mc"), default="auto")

    parser = argparse.ArgumentParser(prog="polarduality", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name in ("dual", "volume", "mahler", "bounds", "lagrangian-dual", "santalo", "concentration",
                    "ds-check", "corollary", "tradeoff"):
            _body_options(p)
        if name in ("fourier", "wigner", "concentration", "ds-check", "corollary", "tradeoff"):
            _state_options(p)
        if name == "dual":
            p.add_argument("--about", metavar="X1,X2,..", help="interior point to dualise about")
        elif name == "bounds":
            p.add_argument("--n", type=int, default=1)
        elif name == "blob":
            p.add_argument("--A", dest="A", metavar="MATRIX")
        elif name == "lagrangian-dual":
            p.add_argument("--frame", metavar="MATRIX", help="2n x n frame of the first plane")
            p.add_argument("--frame2", metavar="MATRIX", help="2n x n frame of the second plane")
        elif name == "gromov1d":
            p.add_argument("--a", type=float, required=True)
        elif name == "fourier":
            p.add_argument("--direction", choices=("forward", "inverse"), default="forward")
        elif name in ("wigner", "corollary"):
            p.add_argument("--size", type=int, help="phase-space table nodes per axis")
            if name == "wigner":
                p.add_argument("--mode", choices=("wigner", "ambiguity"), default="wigner")
        elif name == "concentration":
            p.add_argument("--space", choices=("position", "momentum"), default="position")
        elif name == "ds-check":
            _body_options(p, "p-", "momentum body P (default: same as X)")
        elif name == "hardy":
            p.add_argument("--A", dest="A", metavar="MATRIX", required=True)
            p.add_argument("--B", dest="B", metavar="MATRIX", required=True)
        elif name == "sweep":
            p.add_argument("--nmax", type=int, required=True)
            p.add_argument("--sweep-body", choices=("box", "ball"), default="box")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        if args.command == "sweep":
            text, ok = func(args)
            _emit(args, text, "csv")
            return 0 if ok else 1
        report = func(args)
        code = _exit_code(report)
        if args.command in GRID_COMMANDS and args.output:
            # --output names the grid file; the summary goes to stdout
            sys.stdout.write(render(report, args.format))
        else:
            _emit(args, render(report, args.format), args.format)
        return code
    except (PolarDualityError, ValueError, OSError, KeyError, json.JSONDecodeError, np.linalg.LinAlgError) as exc:
        print(f"polarduality {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
