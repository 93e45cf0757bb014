"""Command line interface.

Subcommands: gen, verify, stopping-distance, simulate, bounds,
reconcile-demo.  Quantitative output is CSV; simulate and bounds can also
render a PNG next to it via --plot.  Exit codes: 0 ok / property holds,
1 property refuted or listing failed, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import bounds as bounds_mod
from . import constructions, simulate
from .iblt import HashedMapping, Iblt, MatrixMapping
from .matrix import ConstructionSpec, MatrixError, read_matrix, write_matrix
from .oracle import is_d_decodable, is_d_decodable_sampled, stopping_distance


def _add_construction_flags(sub):
    sub.add_argument("--construction", choices=constructions.CATALOG)
    sub.add_argument("--n", type=int)
    sub.add_argument("--d", type=int)
    sub.add_argument("--k", type=int)
    sub.add_argument("--q", type=int, help="field/prime parameter")
    sub.add_argument("--ell", type=int, help="GF(2^ell) exponent")
    sub.add_argument("--gen-seed", type=int, default=0,
                     help="seed for randomized constructions")
    sub.add_argument("--force-i", type=int,
                     help="pin the split arity of recursive-a")
    sub.add_argument("--max-retries", type=int, default=32)


def _spec_from_args(args) -> ConstructionSpec:
    kind = args.construction
    if kind is None:
        raise SystemExit2("--construction is required")
    extras = {}
    if kind in ("array-code", "inversive-plane"):
        if args.q is None:
            raise SystemExit2(f"{kind} needs --q")
        extras["q"] = args.q
    if kind == "bch-complement":
        if args.ell is None:
            raise SystemExit2(f"{kind} needs --ell")
        extras["ell"] = args.ell
    if kind == "covering-array-random":
        extras["seed"] = args.gen_seed
        extras["max_retries"] = args.max_retries
    if kind == "recursive-a" and args.force_i is not None:
        extras["force_i"] = args.force_i
    n = args.n
    if n is None:
        if kind == "array-code":
            n = args.q * args.q
        elif kind == "inversive-plane":
            n = args.q ** 3 + args.q
        elif kind == "bch-complement":
            n = (1 << args.ell) - 1
        else:
            raise SystemExit2(f"{kind} needs --n")
    return ConstructionSpec.make(kind, n, args.d, args.k, **extras)


class SystemExit2(Exception):
    """Usage error; mapped to exit code 2."""


def _load_matrix(args):
    if getattr(args, "matrix", None):
        return read_matrix(args.matrix)
    return constructions.build(_spec_from_args(args))


def _parse_sizes(text: str) -> list:
    out = []
    for part in text.split(","):
        if "-" in part:
            a, b = part.split("-")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def _open_out(path):
    return sys.stdout if path in (None, "-") else open(path, "w", newline="")


def cmd_gen(args) -> int:
    matrix = constructions.build(_spec_from_args(args))
    write_matrix(matrix, args.out, fmt=args.format)
    print(f"wrote {matrix.m}x{matrix.n} matrix to {args.out}")
    return 0


def cmd_verify(args) -> int:
    matrix = _load_matrix(args)
    if args.samples:
        verdict = is_d_decodable_sampled(matrix, args.d, args.samples,
                                         args.seed)
        if verdict.ok:
            print(f"sampled: no stopping set of size <= {args.d} in "
                  f"{verdict.trials} trials (not a proof)")
            return 0
        print(f"refuted: stopping set {set(verdict.witness)} "
              f"after {verdict.trials} trials")
        return 1
    ok, witness = is_d_decodable(matrix, args.d, budget=args.budget)
    if ok:
        print(f"verified: {args.d}-decodable ({matrix.m}x{matrix.n})")
        return 0
    print(f"refuted: stopping set {set(witness)} of size {len(witness)}")
    return 1


def cmd_stopping_distance(args) -> int:
    matrix = _load_matrix(args)
    report = stopping_distance(matrix, max_d=args.max_d, budget=args.budget)
    if report.found:
        print(f"stopping distance {report.distance}, "
              f"witness {set(report.witness)}")
    else:
        print(f"no stopping set of size <= {report.checked_bound} "
              f"(sentinel {report.distance})")
    return 0


def cmd_simulate(args) -> int:
    if args.hashed_m:
        if args.n is None:
            raise SystemExit2("--hashed-m needs --n")
        mapping = HashedMapping(args.hashed_m, args.hashed_k, args.n,
                                args.gen_seed)
        label = f"hashed m={args.hashed_m} k={args.hashed_k}"
    else:
        matrix = _load_matrix(args)
        mapping = MatrixMapping(matrix)
        label = (matrix.spec.describe() if matrix.spec
                 else f"matrix {matrix.m}x{matrix.n}")
    sizes = _parse_sizes(args.sizes)
    results = simulate.run_simulation(mapping, sizes, trials=args.trials,
                                      seed=args.seed, workers=args.workers)
    out = _open_out(args.csv)
    writer = csv.writer(out)
    writer.writerow(["N", "success_rate"])
    for res in results:
        writer.writerow([res.size, repr(res.rate)])
    if out is not sys.stdout:
        out.close()
    if args.plot:
        _plot_simulation(args.plot, label, results)
        print(f"wrote plot to {args.plot}", file=sys.stderr)
    return 0


def _plot_simulation(path, label, results):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot([r.size for r in results], [r.rate for r in results],
            marker="o", label=label)
    ax.set_xlabel("subset size N")
    ax.set_ylabel("listing success rate")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="lower left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def cmd_bounds(args) -> int:
    ns = [int(x) for x in args.n_list.split(",")]
    rows = [bounds_mod.upper_bound_table(n, args.d, args.k) for n in ns]
    names = sorted({name for row in rows for name in row.entries})
    out = _open_out(args.csv)
    writer = csv.writer(out)
    writer.writerow(["n", "d", "k", "lower", "lower_tag"] + names + ["best"])
    for row in rows:
        cells = [row.n, row.d, row.k if row.k is not None else "",
                 row.lower, row.lower_tag]
        for name in names:
            entry = row.entries.get(name)
            if entry is None:
                cells.append("")
            else:
                suffix = "" if entry.constructive else "*"
                cells.append(f"{entry.rows}{suffix}")
        cells.append(row.best or "")
        writer.writerow(cells)
    if out is not sys.stdout:
        out.close()
    if args.plot:
        _plot_bounds(args.plot, rows, names)
        print(f"wrote plot to {args.plot}", file=sys.stderr)
    return 0


def _plot_bounds(path, rows, names):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    ns = [row.n for row in rows]
    for name in names:
        ys = [row.entries[name].rows if name in row.entries else None
          for row in rows]
        pts = [(n, y) for n, y in zip(ns, ys) if y is not None]
        if pts:
            ax.plot(*zip(*pts), marker=".", label=name)
    ax.plot(ns, [row.lower for row in rows], "k--", label="lower bound")
    ax.set_xscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("rows m")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _read_key_file(path) -> list:
    with open(path) as fh:
        return [int(tok) for tok in fh.read().split()]


def cmd_reconcile_demo(args) -> int:
    matrix = _load_matrix(args)
    set_a = _read_key_file(args.set_a)
    set_b = _read_key_file(args.set_b)
    table_a = Iblt.for_matrix(matrix)
    table_b = Iblt.for_matrix(matrix)
    table_a.insert_all(set_a)
    table_b.insert_all(set_b)
    outcome = table_a.subtract(table_b).list_entries()
    if not outcome.success:
        print(f"listing failed; {len(outcome.residual)} cells undecoded")
        return 1
    print(f"only in A: {sorted(outcome.positive)}")
    print(f"only in B: {sorted(outcome.negative)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iblt-lffz",
        description="d-decodable IBLT mapping matrices with guaranteed "
                    "listing for small differences")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("gen", help="build a matrix and write it to a file")
    _add_construction_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("dense", "sparse"), default="dense")
    p.set_defaults(func=cmd_gen)

    p = subs.add_parser("verify", help="certify or refute d-decodability")
    _add_construction_flags(p)
    p.add_argument("--matrix", help="matrix file (instead of --construction)")
    p.add_argument("--samples", type=int, default=0,
                   help="sampled mode with this many trials")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10 ** 8)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("stopping-distance", help="exhaustive s(M) search")
    _add_construction_flags(p)
    p.add_argument("--matrix")
    p.add_argument("--max-d", type=int, default=None)
    p.add_argument("--budget", type=int, default=10 ** 8)
    p.set_defaults(func=cmd_stopping_distance)

    p = subs.add_parser("simulate", help="listing success rate vs subset size")
    _add_construction_flags(p)
    p.add_argument("--matrix")
    p.add_argument("--hashed-m", type=int,
                   help="baseline: hashed table with this many cells")
    p.add_argument("--hashed-k", type=int, default=3)
    p.add_argument("--sizes", default="1-5", help="e.g. 1-8 or 1,3,5")
    p.add_argument("--trials", type=int, default=simulate.DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", help="output CSV path (default stdout)")
    p.add_argument("--plot", help="also render a PNG here")
    p.set_defaults(func=cmd_simulate)

    p = subs.add_parser("bounds", help="lower bound and per-construction rows")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--n-list", required=True, help="comma separated n values")
    p.add_argument("--csv")
    p.add_argument("--plot")
    p.set_defaults(func=cmd_bounds)

    p = subs.add_parser("reconcile-demo",
                        help="set reconciliation via subtract + list")
    _add_construction_flags(p)
    p.add_argument("--matrix")
    p.add_argument("--set-a", required=True)
    p.add_argument("--set-b", required=True)
    p.set_defaults(func=cmd_reconcile_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MatrixError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
