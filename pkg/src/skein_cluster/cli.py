"""Command-line front end.  Every command prints JSON (or CSV) to stdout.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

from . import checks
from .partitions import partitions_upto
from .quantum_cluster import CSeed, auto_series, cvec_sequence, is_sign_coherent
from .torus_skein import det, pentagon_check
from .wavefunction import wavefunction_framed

SCHEMA = "1"


class UsageError(Exception):
    pass


def _vec(text: str):
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers separated by commas, got {text!r}")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two integers, got {text!r}")
    return tuple(parts)


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers separated by commas, got {text!r}")


def _emit(obj: dict) -> None:
    obj = dict(obj)
    obj["schema"] = SCHEMA
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def cmd_vertex(args) -> int:
    # the framing-p vertex is Q_{(p+1,1)}(a^{-p-1}) . 1
    psi = wavefunction_framed(args.framing + 1, args.max_boxes)
    rows = [(lam, psi[lam]) for lam in partitions_upto(args.max_boxes)]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["partition", "coeff"])
        for lam, c in rows:
            w.writerow([" ".join(map(str, lam)), str(c)])
        sys.stdout.write(buf.getvalue())
    else:
        _emit({"framing": args.framing, "maxBoxes": args.max_boxes,
               "rows": [{"partition": list(lam), "coeff": c.to_json()} for lam, c in rows]})
    return 0


def cmd_pentagon(args) -> int:
    if det(args.x, args.y) != 1:
        raise UsageError("the pentagon needs det(x|y) = 1")
    rep = pentagon_check(args.x, args.y, args.order, args.form)
    _emit(dict(rep))
    return 0 if rep["pass"] else 1


def _load_seed(args) -> CSeed:
    if args.seed_file:
        with open(args.seed_file) as fh:
            return CSeed.from_json(json.load(fh))
    from .finite_rank import loc_quiver_seed
    return loc_quiver_seed()


def cmd_mutate(args) -> int:
    seed = _load_seed(args)
    for k in args.sequence:
        if not 1 <= k <= seed.rank:
            raise UsageError(f"vertex {k} out of range for rank {seed.rank}")
    ks = [k - 1 for k in args.sequence]
    final, steps, cvecs = cvec_sequence(seed, ks, right_to_left=not args.left_to_right)
    out = {
        "seed": final.to_json(),
        "steps": [{"vertex": k + 1, "sign": e, "f": list(f)} for k, e, f in steps],
        "cvectors": [list(c) for c in cvecs],
        "signCoherent": is_sign_coherent(final),
    }
    order = args.order
    if order is None and args.emit == "series":
        order = 5
    if order is not None:
        series = auto_series(seed, ks, order, right_to_left=not args.left_to_right)
        out["series"] = series.to_json()
    _emit(out)
    return 0 if out["signCoherent"] else 1


_FINITE = {
    "macdonald": "macdonald",
    "charvar": "charvar",
    "qde": "qde",
    "whittaker": "whittaker",
    "uv-pentagon": "uv-pentagon",
    "cvec-pentagon": "cvec-pentagon",
}


def cmd_finite_rank(args) -> int:
    if args.N != 2 and args.check in ("charvar", "whittaker", "uv-pentagon", "cvec-pentagon"):
        raise UsageError(f"--check {args.check} is only defined for N = 2")
    if args.check == "qde":
        from .finite_rank import face_qde_residual
        res = face_qde_residual(args.N, args.order)
        rep = {"check": "qde", "N": args.N, "order": args.order, "pass": res.is_zero()}
    elif args.check == "macdonald":
        from .finite_rank import commutator_check_N, macdonald_eigen_check
        ok = macdonald_eigen_check(args.N, args.order) and commutator_check_N(args.N, min(args.order, 4))
        rep = {"check": "macdonald", "N": args.N, "order": args.order, "pass": ok}
    else:
        rep = checks.run_check(_FINITE[args.check], args.order, args.rng_seed)
        rep["N"] = args.N
    _emit(rep)
    return 0 if rep["pass"] else 1


def _run_one(job):
    name, order, seed = job
    return checks.run_check(name, order, seed)


def cmd_verify(args) -> int:
    names = sorted(checks.REGISTRY) if args.check == "all" else [args.check]
    jobs = [(n, args.order, args.rng_seed) for n in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    failed = [r["check"] for r in results if not r["pass"]]
    _emit({"pass": not failed, "failed": failed, "results": results,
           "order": args.order, "rngSeed": args.rng_seed})
    return 1 if failed else 0


def cmd_list_checks(args) -> int:
    _emit({"checks": [{"name": n, "summary": s} for n, (_, s) in sorted(checks.REGISTRY.items())]})
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skein-cluster", description=__doc__.splitlines()[0])
    p.add_argument("--rng-seed", type=int, default=0, help="seed for randomised checks")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for verify")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("vertex", help="one-leg vertex coefficients in a given framing")
    v.add_argument("--framing", type=int, required=True)
    v.add_argument("--max-boxes", type=int, required=True)
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.set_defaults(func=cmd_vertex)

    pe = sub.add_parser("pentagon", help="Baxter pentagon in the torus skein algebra")
    pe.add_argument("--x", type=_vec, required=True)
    pe.add_argument("--y", type=_vec, required=True)
    pe.add_argument("--order", type=int, default=4)
    pe.add_argument("--form", choices=("consistent", "printed", "swapped"), default="consistent")
    pe.add_argument("--json", action="store_true", help="accepted for compatibility; output is always JSON")
    pe.set_defaults(func=cmd_pentagon)

    m = sub.add_parser("mutate", help="c-vector mutation along a sequence")
    m.add_argument("--seed-file", "--seed", dest="seed_file",
                   help="seed JSON (defaults to the bundled five-vertex seed)")
    m.add_argument("--sequence", type=_int_list, required=True,
                   help="1-based vertices, written as a composition (rightmost first)")
    m.add_argument("--left-to-right", action="store_true", help="apply the listed vertices in reading order")
    m.add_argument("--emit", choices=("cvectors", "series"), default="cvectors",
                   help="series also expands the dilogarithm product (order 5 unless --order is given)")
    m.add_argument("--order", type=int, help="expand the dilogarithm product to this order")
    m.set_defaults(func=cmd_mutate)

    f = sub.add_parser("finite-rank", help="rank-N checks")
    f.add_argument("--check", choices=sorted(_FINITE), required=True)
    f.add_argument("--N", type=int, default=2)
    f.add_argument("--order", type=int, default=5)
    f.set_defaults(func=cmd_finite_rank)

    ve = sub.add_parser("verify", help="run named checks")
    ve.add_argument("--check", choices=["all"] + sorted(checks.REGISTRY), default="all")
    ve.add_argument("--order", type=int, default=4)
    ve.set_defaults(func=cmd_verify)

    lc = sub.add_parser("list-checks", help="list the available checks")
    lc.set_defaults(func=cmd_list_checks)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("order", "max_boxes", "N"):
        if getattr(args, name, None) is not None and getattr(args, name) < (1 if name == "N" else 0):
            parser.error(f"--{name.replace('_', '-')} is out of range")
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"{parser.prog}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
