"""Command-line entry point: ``mdprolate {spectrum,figure,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from contextlib import contextmanager

from . import __version__
from .errors import ProlateError
from .figures import FIGURES, SPECTRA_VS_N_DEFAULT
from .prolate import ProlateParams
from .series import FigureSeries, dump_json, make_metadata
from .spectral import spectrum_md
from .verify import CHECKS, build_grid, make_report, run_checks

log = logging.getLogger("mdprolate")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers, got {text!r}")


def _add_axes(p: argparse.ArgumentParser, required: bool):
    p.add_argument("--n", type=_int_list, action="extend", required=required,
                   help="ambient length N (repeat once per axis, or comma-separate)")
    p.add_argument("--m", type=_int_list, action="extend", required=required,
                   help="time-limit width M per axis")
    p.add_argument("--k", type=_int_list, action="extend", required=required,
                   help="band half-width K per axis")


def _add_output(p: argparse.ArgumentParser, formats=True):
    if formats:
        p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", metavar="PATH", help="write here instead of standard output")


@contextmanager
def _open_out(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _emit_series(series: FigureSeries, args):
    with _open_out(args.out) as fh:
        if args.format == "json":
            series.to_json(fh)
        else:
            series.to_csv(fh)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mdprolate", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="eigenvalues of a (product) prolate matrix")
    _add_axes(sp, required=True)
    sp.add_argument("--d", type=int, default=None,
                    help="replicate a single (N, M, K) triple over d axes")
    _add_output(sp)

    fp = sub.add_parser("figure", help="regenerate the data behind a figure")
    fp.add_argument("name", choices=sorted(FIGURES))
    fp.add_argument("--tbw", type=float, help="target time-bandwidth product 2MW")
    fp.add_argument("--n-list", type=_int_list, help="ambient lengths for N sweeps")
    fp.add_argument("--w-list", type=_float_list, help="target bandwidths paired with --n-list")
    fp.add_argument("--n", type=int)
    fp.add_argument("--m", type=int)
    fp.add_argument("--k", type=int)
    fp.add_argument("--k-max", type=int, help="largest eigenvalue index in eig-vs-mw")
    fp.add_argument("--band-max", type=int, help="largest band half-width K swept in eig-vs-mw")
    fp.add_argument("--band-step", type=int, default=1)
    fp.add_argument("--n-eig", type=int, help="keep only the leading eigenvalues")
    fp.add_argument("--tol", type=float, default=1e-12, help="relative grouping tolerance")
    _add_output(fp)

    vp = sub.add_parser("verify", help="run verification sweeps and write a JSON report")
    vp.add_argument("--which", choices=("all",) + CHECKS, default="all")
    vp.add_argument("--grid", choices=("default",), default="default",
                    help="built-in 1D sweep used when --n is not given")
    _add_axes(vp, required=False)
    vp.add_argument("--k-all", action="store_true", help="every valid K for each N")
    vp.add_argument("--eps", type=_float_list, help="thresholds (comma-separated)")
    vp.add_argument("--gamma", type=_float_list, help="thresholds for prop1d")
    vp.add_argument("--d", type=int, default=2, help="dimension for main-theorem")
    vp.add_argument("--seed", type=int, default=0, help="seed for random-vector oracle checks")
    _add_output(vp, formats=False)
    return parser


def _axes_params(args) -> ProlateParams:
    n, m, k = args.n or [], args.m or [], args.k or []
    if not (len(n) == len(m) == len(k)):
        raise ProlateError(f"need one --n/--m/--k triple per axis, got {len(n)}/{len(m)}/{len(k)}")
    if args.d is not None:
        if len(n) != 1:
            raise ProlateError("--d replicates a single (N, M, K) triple; give exactly one")
        return ProlateParams.isotropic(n[0], m[0], k[0], args.d)
    return ProlateParams(tuple(n), tuple(m), tuple(k))


def cmd_spectrum(args) -> int:
    params = _axes_params(args)
    spec = spectrum_md(params)
    meta = make_metadata(params.as_dict(), source=spec.source, total=spec.total,
                         tbw_product=params.tbw_product, clamp=spec.clamp, deflation=spec.deflation)
    series = FigureSeries("spectrum", {"index": list(range(len(spec))),
                                       "eigenvalue": [float(v) for v in spec.eigenvalues]}, meta)
    _emit_series(series, args)
    return 0


def cmd_figure(args) -> int:
    name = args.name
    kw: dict = {}
    if name == "fixed-tbw-vs-N":
        kw = {"tbw": args.tbw if args.tbw is not None else 5.0,
              "n_list": args.n_list or (64, 128, 256, 512),
              "n_eig": args.n_eig if args.n_eig is not None else 100}
    elif name == "spectra-vs-N":
        configs = SPECTRA_VS_N_DEFAULT
        if args.n_list or args.w_list:
            if not (args.n_list and args.w_list and len(args.n_list) == len(args.w_list)):
                raise ProlateError("--n-list and --w-list must be given together with equal lengths")
            configs = tuple(zip(args.n_list, args.w_list))
        kw = {"tbw": args.tbw if args.tbw is not None else 270.0, "configs": configs, "n_eig": args.n_eig}
    elif name == "eig-vs-mw":
        kw = {"n": args.n or 1000, "m": args.m or 800,
              "k_max": args.k_max if args.k_max is not None else 199,
              "band_max": args.band_max, "band_step": args.band_step}
    elif name == "tensor-multiplicity":
        kw = {"n": args.n or 64, "m": args.m or 16, "k": args.k if args.k is not None else 4,
              "tol": args.tol}
    _emit_series(FIGURES[name](**kw), args)
    return 0


def cmd_verify(args) -> int:
    grid = build_grid(args.n or (), args.m or (), args.k or (), k_all=args.k_all)
    main_grid = None
    if args.n and args.which in ("main-theorem", "all"):
        main_grid = [ProlateParams.isotropic(p.n[0], p.m[0], p.k[0], args.d) for p in grid]
    results = run_checks(args.which, grid, eps=args.eps, gammas=args.gamma, d=args.d,
                         seed=args.seed, main_grid=main_grid)
    params = {"which": args.which, "grid": "explicit" if args.n else args.grid,
              "n": args.n, "m": args.m, "k": args.k, "k_all": args.k_all, "eps": args.eps,
              "gamma": args.gamma, "d": args.d, "seed": args.seed, "instances": len(grid)}
    report = make_report(params, results)
    with _open_out(args.out) as fh:
        dump_json(report, fh)
    if report["verdict"] == "fail":
        first = next(r for r in report["results"] if r["status"] == "fail")
        print(f"verification failed: {first['check']} at {first['params']}", file=sys.stderr)
        return 1
    return 0


COMMANDS = {"spectrum": cmd_spectrum, "figure": cmd_figure, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ProlateError as exc:
        print(f"mdprolate: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
