"""Command-line front end.

Exit codes: 0 success, 1 internal error, 2 invalid input or configuration.
``MINDIST_WORKERS`` and ``MINDIST_MEMORY_CAP`` (bytes) override the default
worker count and saved-table memory cap.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import codeconstruct as cc
from . import cost as costmod
from .engines import ALGORITHMS, ALIASES, DEFAULT_MEMORY_CAP, EngineConfig, min_weight
from .f2core import BitMatrix, rank
from .parallel import MODES, PREFIX_ORDERS, ScheduleConfig

log = logging.getLogger("mindist")

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID = 0, 1, 2


class MatrixParseError(ValueError):
    def __init__(self, source: str, line: int, col: int, msg: str):
        super().__init__(f"{source}:{line}:{col}: {msg}")
        self.line, self.col = line, col


# -- matrix files -----------------------------------------------------------

def parse_matrix(text: str, source: str = "<input>") -> BitMatrix:
    """Header ``n k`` then ``k`` rows of ``n`` symbols from ``{0,1}``; ``#`` starts a comment."""
    header = None
    rows: list[list[int]] = []
    last = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        last = lineno
        if header is None:
            parts = stripped.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise MatrixParseError(source, lineno, 1, "expected header 'n k'")
            header = int(parts[0]), int(parts[1])
            if header[0] < 1 or header[1] < 1:
                raise MatrixParseError(source, lineno, 1, "n and k must be positive")
            continue
        n, k = header
        if len(rows) == k:
            raise MatrixParseError(source, lineno, 1, f"more than {k} rows")
        row = []
        col0 = len(line) - len(line.lstrip()) + 1
        for j, ch in enumerate(stripped):
            if ch not in "01":
                raise MatrixParseError(source, lineno, col0 + j, f"unexpected symbol {ch!r}")
            row.append(ord(ch) - 48)
        if len(row) != n:
            raise MatrixParseError(source, lineno, col0 + min(len(row), n),
                                   f"row has {len(row)} symbols, expected {n}")
        rows.append(row)
    if header is None:
        raise MatrixParseError(source, 1, 1, "empty matrix file")
    if len(rows) != header[1]:
        raise MatrixParseError(source, last + 1, 1,
                               f"found {len(rows)} rows, header promises {header[1]}")
    return BitMatrix.from_bits(np.array(rows, dtype=np.uint8))


def serialize_matrix(G: BitMatrix, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"{G.cols} {G.rows}")
    out.extend("".join(map(str, r)) for r in G.to_bits())
    return "\n".join(out) + "\n"


def read_matrix(path: str) -> BitMatrix:
    if path == "-":
        return parse_matrix(sys.stdin.read(), "<stdin>")
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise MatrixParseError(path, 0, 0, exc.strerror or str(exc)) from None
    return parse_matrix(text, path)


def random_full_rank(n: int, k: int, seed: int) -> BitMatrix:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    rng = np.random.Generator(np.random.PCG64(seed))
    while True:
        bits = rng.integers(0, 2, size=(k, n), dtype=np.uint8)
        if rank(bits) == k:
            return BitMatrix.from_bits(bits)


# -- results ---------------------------------------------------------------

RESULT_KEYS = ("d", "n", "k", "algorithm", "m", "k_last", "g_final", "row_additions",
               "combinations", "wall_seconds", "seed", "workers")


@dataclass
class ResultRecord:
    d: int
    n: int
    k: int
    algorithm: str
    m: int | None
    k_last: int | None
    g_final: int
    row_additions: int
    combinations: int
    wall_seconds: float
    seed: int
    workers: int

    def to_json(self) -> str:
        return json.dumps({key: getattr(self, key) for key in RESULT_KEYS})

    def to_text(self) -> str:
        width = max(map(len, RESULT_KEYS))
        return "\n".join(f"{key.ljust(width)}  {getattr(self, key)}" for key in RESULT_KEYS) + "\n"


# -- commands ----------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def cmd_mindist(args) -> int:
    G = read_matrix(args.path)
    seed = args.seed
    if seed is None:
        seed = random.SystemRandom().randrange(1 << 32)
        log.info("no --seed given; using seed %d", seed)
    workers = args.workers if args.workers is not None else _env_int("MINDIST_WORKERS", 1)
    schedule = None
    if args.schedule != "serial":
        schedule = ScheduleConfig(mode=args.schedule, order=args.order,
                                  prefix_size=args.prefix, workers=workers)
    config = EngineConfig(algorithm=args.algorithm, s=args.s, unroll=args.unroll,
                          permutation_trials=args.trials, seed=seed, workers=workers,
                          brute_cap=args.brute_cap,
                          memory_cap=_env_int("MINDIST_MEMORY_CAP", DEFAULT_MEMORY_CAP),
                          schedule=schedule)
    t0 = time.perf_counter()
    d, stats, summary = min_weight(G, config)
    wall = time.perf_counter() - t0
    rec = ResultRecord(d=d, n=summary["n"], k=summary["k"], algorithm=config.algorithm,
                       m=summary.get("m"), k_last=summary.get("k_last"),
                       g_final=stats.g_final, row_additions=stats.row_additions,
                       combinations=stats.combinations, wall_seconds=round(wall, 6),
                       seed=seed, workers=workers)
    sys.stdout.write(rec.to_text() if args.pretty else rec.to_json() + "\n")
    return EXIT_OK


def cmd_cost(args) -> int:
    table = costmod.cost_table(args.k, args.g, s=args.s, n=args.n)
    sys.stdout.write(costmod.render_csv(table) if args.csv else costmod.render_text(table, args.exact))
    return EXIT_OK


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "cyclic":
        f = cc.BinPoly.from_exponents(args.poly)
        G = cc.cyclic_generator_matrix(f, args.m)
        note = f"cyclic code of length {args.m}, generator exponents {args.poly}"
    elif kind == "mpu":
        if args.fixture:
            fx = cc.load_fixture(args.fixture)
            G = fx.build()
            note = f"matrix-product code from fixture {args.fixture}"
        else:
            if args.m is None or args.f1 is None or args.f2 is None:
                raise ValueError("mpu needs --fixture or all of --m, --f1, --f2")
            m = args.m
            f1 = cc.BinPoly.from_exponents(args.f1)
            f2 = cc.BinPoly.from_exponents(args.f2)
            p = cc.BinPoly.from_exponents(args.p).mod_cyclic(m)
            G = cc.matrix_product_unit(cc.cyclic_generator_matrix(f1, m),
                                       cc.cyclic_generator_matrix(f2, m), p, m, f1, f2,
                                       require_nested=not args.no_nesting_check)
            note = f"matrix-product code of length {2 * m}"
    elif kind == "extend":
        G = cc.extend_code(read_matrix(args.path))
        note = "extended by an overall parity column"
    else:
        G0 = read_matrix(args.path)
        G = cc.puncture_code(G0, args.positions)
        note = f"punctured at {args.positions}"
        if G.rows < G0.rows:
            log.warning("dimension dropped from %d to %d", G0.rows, G.rows)
    sys.stdout.write(serialize_matrix(G, note))
    return EXIT_OK


def cmd_random(args) -> int:
    G = random_full_rank(args.n, args.k, args.seed)
    sys.stdout.write(serialize_matrix(G, f"random full-rank code, seed {args.seed}"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mindist", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mindist", aliases=["distance"], help="minimum distance of a code")
    p.add_argument("path", help="matrix file, or - for stdin")
    p.add_argument("--algorithm", default="saved", choices=list(ALGORITHMS) + list(ALIASES))
    p.add_argument("--s", type=int, default=5, help="saved-table depth")
    p.add_argument("--unroll", type=int, default=2)
    p.add_argument("--trials", type=int, default=10, help="random column permutations")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--schedule", default="serial", choices=MODES)
    p.add_argument("--prefix", type=int, help="prefix size (relative for static schedules)")
    p.add_argument("--order", default="lex", choices=PREFIX_ORDERS)
    p.add_argument("--brute-cap", type=int, default=40)
    p.add_argument("--pretty", action="store_true", help="aligned text instead of JSON")
    p.set_defaults(func=cmd_mindist)

    p = sub.add_parser("cost", help="closed-form addition counts")
    p.add_argument("--k", type=_int_list, default=[50])
    p.add_argument("--g", type=_int_list, default=[7, 10, 15, 20])
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--s", type=int, default=5)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--exact", action="store_true", help="integer counts instead of billions")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("construct", help="build a generator matrix")
    csub = p.add_subparsers(dest="kind", required=True)
    q = csub.add_parser("cyclic")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--poly", required=True, help="exponent list, e.g. 3,1,0")
    q = csub.add_parser("mpu")
    q.add_argument("--fixture")
    q.add_argument("--m", type=int)
    q.add_argument("--f1")
    q.add_argument("--f2")
    q.add_argument("--p", default="0")
    q.add_argument("--no-nesting-check", action="store_true")
    q = csub.add_parser("extend")
    q.add_argument("path")
    q = csub.add_parser("puncture")
    q.add_argument("path")
    q.add_argument("--positions", type=_int_list, required=True, help="1-based columns")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("random", help="random full-rank generator matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_random)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    if args.command in ("mindist", "distance") and args.seed is None:
        level = min(level, logging.INFO)
    logging.basicConfig(level=level, format="mindist: %(levelname)s: %(message)s",
                        stream=sys.stderr)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"mindist: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except MemoryError as exc:
        print(f"mindist: error: MemoryError: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # anything else is a bug
        print(f"mindist: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
