"""Command-line interface.

Subcommands: ``gaps`` (spectrum of one instance), ``slab`` (embedded-lattice
view with candidate vectors), ``search`` (randomized/exhaustive sweep),
``verify`` (self-check suites).

Exit codes: 0 success, 1 usage or input error, 2 a proven bound was violated
(a falsification signal, never expected on correct code).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, search as search_mod, slab, verify
from .gaps import (
    KroneckerInstance,
    Lattice,
    Metric,
    check_gap_bound,
    gap_spectrum,
    spectrum_to_csv,
    spectrum_to_json,
)
from .ratlin import parse_mat, parse_vec

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BOUND_VIOLATION = 2


class CliError(Exception):
    """Usage or input problem; message goes to stderr, exit code 1."""


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # Accept flag values that begin with a negative rational, e.g.
        # "--alpha -157/10000,-742/3125,-23/400" without requiring "=".
        self._negative_number_matcher = re.compile(r"^-\d[\d/.,;-]*$")

    def error(self, message: str):  # noqa: D102 - argparse hook
        raise CliError(message)


def _parse_lattice(text: str | None, dim: int) -> Lattice:
    if text is None or text.strip() in ("I", "i"):
        return Lattice.identity(dim)
    lat = Lattice(parse_mat(text))
    if lat.dim != dim:
        raise CliError(f"lattice is {lat.dim}x{lat.dim} but alpha has {dim} components")
    return lat


def _parse_n_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise CliError(f"bad N range {text!r}")
    return lo, hi


def _instance_from_args(args: argparse.Namespace) -> KroneckerInstance:
    try:
        alpha = parse_vec(args.alpha)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad --alpha: {exc}") from exc
    lattice = _parse_lattice(args.lattice, len(alpha))
    if args.N < 1:
        raise CliError("--N must be >= 1")
    return KroneckerInstance(alpha, lattice, args.N)


# ---------------------------------------------------------------------------
# gaps


def cmd_gaps(args: argparse.Namespace) -> int:
    inst = _instance_from_args(args)
    metric = Metric(args.metric)
    sp = gap_spectrum(inst, metric)
    bc = check_gap_bound(sp)

    if args.format == "json":
        out = spectrum_to_json(sp)
        out["bound"] = bc.bound
        out["bound_ok"] = bc.ok
        print(json.dumps(out, sort_keys=True))
    elif args.format == "csv":
        print(spectrum_to_csv(sp), end="")
    else:
        label = "delta^2" if metric.squared else "delta"
        print(f"alpha = ({', '.join(str(a) for a in inst.alpha)})  N = {inst.N}  "
              f"metric = {metric.value}")
        if metric.squared:
            print("values are squared distances")
        for n, v in enumerate(sp.gaps, start=1):
            print(f"  {label}_{n} = {v}")
        print(f"distinct: {', '.join(str(v) for v in sp.distinct)}")
        if bc.ok is None:
            print(f"g = {sp.g} (no bound asserted)")
        elif bc.ok:
            print(f"g = {sp.g} (bound {bc.bound}: OK)")
        else:
            print(f"g = {sp.g} (bound {bc.bound}: VIOLATED)")
    if bc.ok is False:
        print(bc.message, file=sys.stderr)
        return EXIT_BOUND_VIOLATION
    return EXIT_OK


# ---------------------------------------------------------------------------
# slab


def cmd_slab(args: argparse.Namespace) -> int:
    inst = _instance_from_args(args)
    if not inst.lattice.unimodular:
        raise CliError("slab view requires a unimodular lattice")
    sp = gap_spectrum(inst, Metric.MAX)
    points = slab.slab_points(inst)
    counts = slab.slab_gap_counts(inst)
    cand = slab.candidate_set(inst, points)
    identity_ok = sorted(slab.window_values(inst, points)) == sorted(sp.gaps)
    bound = 2**inst.dim + 1
    bound_ok = sp.g == counts.g_window <= counts.g_total <= bound

    if args.format == "json":
        out = slab.candidate_set_to_json(cand)
        out.update(
            g=counts.g_window,
            G=counts.g_total,
            bound=bound,
            identity_ok=identity_ok,
            bound_ok=bound_ok,
        )
        print(json.dumps(out, sort_keys=True))
    elif args.format == "csv":
        dim = inst.dim
        header = "k," + ",".join(f"v{j + 1}" for j in range(dim)) + ",vnorm,signature"
        print(header)
        for p in cand.points:
            coords = ",".join(str(c) for c in p.v)
            print(f"{p.k},{coords},{p.vnorm},{slab.orthant_signature(p)}")
    else:
        print(f"alpha = ({', '.join(str(a) for a in inst.alpha)})  N = {inst.N}")
        print("candidate vectors (k, v, |v|_inf, orthant):")
        for p in cand.points:
            coords = ", ".join(str(c) for c in p.v)
            print(f"  k={p.k:>4}  v=({coords})  |v|={p.vnorm}  "
                  f"{slab.orthant_signature(p)}")
        print(f"g = {counts.g_window}, G = {counts.g_total}, "
              f"identity {'OK' if identity_ok else 'MISMATCH'}")
        print(f"bound chain g <= G <= {bound}: {'OK' if bound_ok else 'VIOLATED'}")
    if not (identity_ok and bound_ok):
        print("bound or identity check failed", file=sys.stderr)
        return EXIT_BOUND_VIOLATION
    return EXIT_OK


# ---------------------------------------------------------------------------
# search


def _search_config_from_args(args: argparse.Namespace) -> search_mod.SearchConfig:
    alphas = None
    if args.alpha:
        alphas = tuple(parse_vec(a) for a in args.alpha)
        dim = len(alphas[0])
        if args.d is not None and args.d != dim:
            raise CliError("--d disagrees with pinned --alpha dimension")
    elif args.d is None:
        raise CliError("--d is required unless --alpha pins the rotation vectors")
    dim = len(alphas[0]) if alphas else args.d
    lattice = None
    if args.lattice and args.lattice.strip() not in ("I", "i"):
        lattice = _parse_lattice(args.lattice, dim)
    return search_mod.SearchConfig(
        d=dim,
        N_range=_parse_n_range(args.N),
        mode=search_mod.Mode(args.mode),
        denominator_cap=args.den_cap,
        metric=Metric(args.metric),
        sample_count=args.samples,
        seed=args.seed,
        target_g=args.target_g,
        lattice=lattice,
        alphas=alphas,
        max_evaluations=args.max_evals,
    )


def cmd_search(args: argparse.Namespace) -> int:
    cfg = _search_config_from_args(args)
    try:
        cfg.validate()
    except ValueError as exc:
        raise CliError(str(exc)) from exc

    out_dir = Path(args.out_dir or os.environ.get("TORUSGAPS_OUT_DIR", "runs"))
    out_dir.mkdir(parents=True, exist_ok=True)
    tag = hashlib.sha256(
        json.dumps(search_mod.config_to_json(cfg), sort_keys=True).encode()
    ).hexdigest()[:12]
    records_path = out_dir / f"search-{tag}.jsonl"
    manifest_path = out_dir / f"search-{tag}.manifest.json"
    records_path.unlink(missing_ok=True)

    def on_record(rec: search_mod.SearchRecord) -> None:
        line = json.dumps(search_mod.record_to_json(rec), sort_keys=True)
        print(line)
        search_mod.append_record_jsonl(records_path, rec)

    started = datetime.now(timezone.utc).isoformat(timespec="seconds")
    result = search_mod.search(cfg, on_record)
    finished = datetime.now(timezone.utc).isoformat(timespec="seconds")
    search_mod.write_manifest(manifest_path, cfg, started, finished, result)

    print(f"evaluated {result.evaluated} instances; max g = {result.max_g}; "
          f"records: {records_path}")
    if result.violations:
        print(f"BOUND VIOLATION found; reproducer in {records_path}", file=sys.stderr)
        return EXIT_BOUND_VIOLATION
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite == "paper":
        report = verify.run_extremal_suite()
    elif args.suite == "properties":
        report = verify.run_properties_suite(seed=args.seed)
    else:
        report = verify.run_d1_exhaustive_suite()
    for line in report.lines:
        print(line)
    print(f"{report.name}: {'PASS' if report.ok else 'FAIL'}")
    return EXIT_OK if report.ok else EXIT_USAGE


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="torusgaps", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_gaps = sub.add_parser("gaps", help="gap spectrum of one instance")
    p_gaps.add_argument("--alpha", required=True,
                        help="comma-separated rationals, e.g. 157/500,-23/200")
    p_gaps.add_argument("--N", type=int, required=True)
    p_gaps.add_argument("--lattice", default=None,
                        help="'I' for Z^d or rows like '1,0;1/2,1'")
    p_gaps.add_argument("--metric", choices=[m.value for m in Metric],
                        default=Metric.MAX.value)
    p_gaps.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p_gaps.set_defaults(func=cmd_gaps)

    p_slab = sub.add_parser("slab", help="slab view: candidate vectors and counts")
    p_slab.add_argument("--alpha", required=True)
    p_slab.add_argument("--N", type=int, required=True)
    p_slab.add_argument("--lattice", default=None)
    p_slab.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p_slab.set_defaults(func=cmd_slab)

    p_search = sub.add_parser("search", help="search for instances with many gaps")
    p_search.add_argument("--d", type=int, default=None)
    p_search.add_argument("--N", required=True, help="single value or range a..b")
    p_search.add_argument("--mode", choices=[m.value for m in search_mod.Mode],
                          default=search_mod.Mode.RANDOM.value)
    p_search.add_argument("--den-cap", type=int, default=10000)
    p_search.add_argument("--metric", choices=[m.value for m in Metric],
                          default=Metric.MAX.value)
    p_search.add_argument("--samples", type=int, default=1000)
    p_search.add_argument("--seed", type=int, default=0)
    p_search.add_argument("--target-g", type=int, default=None)
    p_search.add_argument("--lattice", default=None)
    p_search.add_argument("--alpha", action="append", default=None,
                          help="pin a rotation vector (repeatable); overrides sampling")
    p_search.add_argument("--max-evals", type=int, default=None)
    p_search.add_argument("--out-dir", default=None,
                          help="output directory (default $TORUSGAPS_OUT_DIR or ./runs)")
    p_search.set_defaults(func=cmd_search)

    p_verify = sub.add_parser("verify", help="run a self-check suite")
    p_verify.add_argument("--suite", choices=["paper", "properties", "d1-exhaustive"],
                          required=True)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
