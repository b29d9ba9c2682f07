"""Command-line front end: ``fockcalc verify | symbol | report``.

Complex scalars are written ``re,im`` (or a plain real); several complex
values are separated by ``;`` or given by repeating the flag.  Real grids
(``--t``, ``--theta``) are comma-separated.  Vectors for ``--xi``/``--eta``
are comma-separated components, each parsed by Python's ``complex``.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .chaos import eval_at, random_chaos
from .fockop import (
    FockOperator,
    SymbolTailError,
    adjoint,
    exp_lowering,
    gross_laplacian,
    number_op,
    operator_symbol,
)
from .quadrature import InsufficientOrderError, gh_grid, mehler_oracle
from .suites import SUITES, RunConfig, run_suites
from .transforms import (
    GroupParams,
    fourier_gauss,
    fourier_mehler_adjoint,
    fourier_op,
    group_P,
    scaling,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TAIL = 0, 1, 2, 3

_VALUE_FLAGS = ("--a", "--b", "--t", "--theta", "--a2", "--lam", "--xi", "--eta", "--seed")
SYMBOL_OPS = ("identity", "number", "laplacian", "fourier-gauss", "scaling", "fourier", "fourier-mehler", "mehler")


def parse_complex(token: str) -> complex:
    token = token.strip()
    if "," in token:
        re_, im_ = token.split(",")
        return complex(float(re_), float(im_))
    return complex(token.replace(" ", ""))


def parse_complex_list(values) -> tuple:
    out = []
    for v in values:
        out.extend(parse_complex(tok) for tok in v.split(";") if tok.strip())
    return tuple(out)


def parse_real_list(values) -> tuple:
    out = []
    for v in values:
        out.extend(float(tok) for tok in v.split(",") if tok.strip())
    return tuple(out)


def parse_vector(text: str) -> np.ndarray:
    return np.array([complex(tok.strip()) for tok in text.split(",") if tok.strip()], dtype=complex)


def _glue_negative_values(argv):
    """Turn ``--b -1,0`` into ``--b=-1,0`` so argparse does not read a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _common(p: argparse.ArgumentParser):
    p.add_argument("--dim", type=int, default=None, help="ambient dimension d (default 2)")
    p.add_argument("--nmax", type=int, default=10, help="truncation degree (default 10)")
    p.add_argument("--quad-order", type=int, default=16, help="Gauss-Hermite nodes per axis (default 16)")
    p.add_argument("--tol-exact", type=float, default=1e-11, help="tolerance for exact identities")
    p.add_argument("--tol-oracle", type=float, default=1e-9, help="tolerance for oracle comparisons")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a", action="append", default=None, help="complex a values, 're,im' separated by ';'")
    p.add_argument("--b", action="append", default=None, help="complex b values, 're,im' separated by ';'")
    p.add_argument("--t", action="append", default=None, help="comma-separated real t grid")
    p.add_argument("--theta", action="append", default=None, help="comma-separated real theta grid")
    p.add_argument("--json", metavar="PATH", default=None, help="write the JSON report here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fockcalc", description="Verify Wick/Fock operator identities numerically.")
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run a property suite")
    pv.add_argument("suite_pos", nargs="?", metavar="SUITE", help=f"one of {', '.join(SUITES + ('all',))}")
    pv.add_argument("--suite", default=None)
    _common(pv)

    ps = sub.add_parser("symbol", help="operator symbol with a truncation tail estimate")
    ps.add_argument("op", choices=SYMBOL_OPS)
    ps.add_argument("--xi", required=True, help="comma-separated components")
    ps.add_argument("--eta", required=True, help="comma-separated components")
    ps.add_argument("--a2", default=None, help="square of the Gaussian scale (fourier-gauss)")
    ps.add_argument("--lam", default=None, help="scaling factor (scaling)")
    _common(ps)

    pr = sub.add_parser("report", help="aggregate suites and parameter sweeps into JSON")
    pr.add_argument("--suite", default="all")
    _common(pr)
    return parser


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(
        dim=args.dim if args.dim is not None else 2,
        nmax=args.nmax,
        quad_order=args.quad_order,
        tol_exact=args.tol_exact,
        tol_oracle=args.tol_oracle,
        seed=args.seed,
    )
    if args.a is not None:
        cfg.a = parse_complex_list(args.a)
    if args.b is not None:
        cfg.b = parse_complex_list(args.b)
    if args.t is not None:
        cfg.t = parse_real_list(args.t)
    if args.theta is not None:
        cfg.theta = parse_real_list(args.theta)
    return cfg.validate()


def _write_json(doc: dict, path: str | None):
    text = json.dumps(doc, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _print_entries(entries):
    for e in entries:
        flag = "PASS" if e.passed else "FAIL"
        print(f"{flag}  {e.suite:<10} {e.invariant:<66} {e.max_residual:10.3e} <= {e.tolerance:.1e}")
    n_pass = sum(e.passed for e in entries)
    print(f"{n_pass}/{len(entries)} invariants passed")


def cmd_verify(args) -> int:
    suite = args.suite or args.suite_pos or "all"
    if suite not in SUITES + ("all",):
        print(f"error: unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}", file=sys.stderr)
        return EXIT_USAGE
    cfg = config_from_args(args)
    entries = run_suites(suite, cfg)
    _print_entries(entries)
    if args.json:
        _write_json({"config": cfg.to_dict(), "suite": suite, "entries": [e.to_dict() for e in entries]}, args.json)
    return EXIT_OK if all(e.passed for e in entries) else EXIT_FAIL


def _first(values, default):
    return values[0] if values else default


def _symbol_target(args, cfg: RunConfig, xi, eta):
    """Operator and closed-form symbol for the requested operator name."""
    d, N = cfg.dim, cfg.nmax
    xx, xy, yy = xi @ xi, xi @ eta, eta @ eta
    op = args.op
    if op == "identity":
        return FockOperator.identity(d, N), np.exp(xy)
    if op == "number":
        return number_op(d, N), xy * np.exp(xy)
    if op == "laplacian":
        return gross_laplacian(d, N), xx * np.exp(xy)
    if op == "fourier-gauss":
        a2 = parse_complex(args.a2) if args.a2 is not None else 0.0
        b = _first(cfg.b, 1.0) if args.b is not None else 1.0
        return fourier_gauss(a2, b, d, N), np.exp(0.5 * (a2 + b * b - 1) * xx + b * xy)
    if op == "scaling":
        lam = parse_complex(args.lam) if args.lam is not None else 1.0
        return scaling(lam, d, N), np.exp(0.5 * (lam * lam - 1) * xx + lam * xy)
    if op == "fourier":
        return fourier_op(d, N), np.exp(-1j * xy - 0.5 * yy)
    if op == "fourier-mehler":
        th = _first(cfg.theta, 0.0) if args.theta is not None else 0.0
        e = np.exp(1j * th)
        # the transform itself is the adjoint of the renormalized second quantization
        return adjoint(fourier_mehler_adjoint(th, d, N)), np.exp(e * xy + 0.5j * e * np.sin(th) * yy)
    if op == "mehler":
        a = _first(cfg.a, 0.0) if args.a is not None else 0.0
        b = _first(cfg.b, -1.0) if args.b is not None else -1.0
        t = _first(cfg.t, 0.0) if args.t is not None else 0.0
        p = GroupParams(a, b, t)
        m = p.multiplier()
        return group_P(a, b, t, d, N), np.exp(0.5 * (p.scale_sq() + m * m - 1) * xx + m * xy)
    raise ValueError(op)


def cmd_symbol(args) -> int:
    xi, eta = parse_vector(args.xi), parse_vector(args.eta)
    if len(xi) != len(eta):
        print("error: --xi and --eta must have the same length", file=sys.stderr)
        return EXIT_USAGE
    if args.dim is not None and args.dim != len(xi):
        print(f"error: --xi has {len(xi)} components but --dim is {args.dim}", file=sys.stderr)
        return EXIT_USAGE
    args.dim = len(xi)
    cfg = config_from_args(args)
    op, ref = _symbol_target(args, cfg, xi, eta)
    try:
        sv = operator_symbol(op, xi, eta, tol=cfg.tol_oracle)
    except SymbolTailError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TAIL
    resid = abs(sv.value - ref)
    print(f"operator  {args.op}")
    print(f"symbol    {sv.value.real:.15g} {sv.value.imag:+.15g}i")
    print(f"tail      {sv.tail:.3e}")
    print(f"closed    {complex(ref).real:.15g} {complex(ref).imag:+.15g}i")
    print(f"residual  {resid:.3e}")
    doc = {"operator": args.op, "xi": [[z.real, z.imag] for z in xi], "eta": [[z.real, z.imag] for z in eta],
           "nmax": cfg.nmax, "value": [sv.value.real, sv.value.imag], "tail": sv.tail,
           "closed_form": [complex(ref).real, complex(ref).imag], "residual": resid}
    if args.json:
        _write_json(doc, args.json)
    ok = resid <= sv.tail + cfg.tol_oracle * max(1.0, abs(ref))
    return EXIT_OK if ok else EXIT_FAIL


def parameter_cases(cfg: RunConfig) -> list[dict]:
    """One record per grid point: Mehler group vs quadrature, Fourier-Mehler closed form."""
    rng = np.random.default_rng([cfg.seed, len(SUITES)])
    d, N = cfg.dim, cfg.nmax
    grid = gh_grid(cfg.quad_order, d)
    cases = []
    for a, b in cfg.pairs():
        for t in cfg.t:
            phi = random_chaos(rng, d, N, degree=min(6, N))
            y = rng.standard_normal(d)
            try:
                q = mehler_oracle(phi, a, b, t, y, grid)
                v = eval_at(group_P(a, b, t, d, N) @ phi, y)
                r = abs(v - q) / max(abs(q), 1e-300)
            except InsufficientOrderError:
                r = float("inf")
            cases.append({"kind": "mehler", "a": [a.real, a.imag], "b": [b.real, b.imag], "t": float(t),
                          "residual": r if np.isfinite(r) else None, "tolerance": cfg.tol_oracle,
                          "pass": bool(r <= cfg.tol_oracle)})
    for th in cfg.theta:
        G = fourier_mehler_adjoint(th, d, N)
        rot = FockOperator.diagonal(d, N, lambda n: np.exp(1j * th * n))
        closed = rot @ exp_lowering(gross_laplacian(d, N), 0.5j * np.exp(1j * th) * np.sin(th))
        r = G.fock_rel_diff(closed)
        cases.append({"kind": "fourier-mehler", "theta": float(th), "residual": r, "tolerance": cfg.tol_exact,
                      "pass": bool(r <= cfg.tol_exact)})
    return cases


def cmd_report(args) -> int:
    if args.suite not in SUITES + ("all",):
        print(f"error: unknown suite {args.suite!r}", file=sys.stderr)
        return EXIT_USAGE
    cfg = config_from_args(args)
    entries = run_suites(args.suite, cfg)
    cases = parameter_cases(cfg)
    ok = all(e.passed for e in entries) and all(c["pass"] for c in cases)
    doc = {
        "config": cfg.to_dict(),
        "suite": args.suite,
        "entries": [e.to_dict() for e in entries],
        "cases": cases,
        "summary": {
            "entries": len(entries),
            "entries_passed": sum(e.passed for e in entries),
            "cases": len(cases),
            "cases_passed": sum(c["pass"] for c in cases),
            "pass": ok,
        },
    }
    _write_json(doc, args.json)
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "symbol":
            return cmd_symbol(args)
        return cmd_report(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
