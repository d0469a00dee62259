"""Command-line front end: matching runs, input ingestion and benchmark mode."""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

import numpy as np

from .sequences import Sequence, brute_force_cpm
from .solver import SolverConfig, solve, solve_anchor_sweep

ALGORITHM_NAMES = {
    "naive": "naive",
    "anchor": "anchor_sweep",
    "sample": "sample_k4",
    "auto": "auto",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's default 2
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    p = _Parser(
        prog="circmatch",
        description="Report every text position where some rotation of the "
        "pattern occurs with at most k mismatches. Positions are 0-based.",
    )
    pat = p.add_mutually_exclusive_group()
    pat.add_argument("--pattern", help="pattern given literally")
    pat.add_argument("--pattern-file", help="read the pattern from this file")
    txt = p.add_mutually_exclusive_group()
    txt.add_argument("--text", help="text given literally")
    txt.add_argument("--text-file", help="read the text from this file")
    p.add_argument("-k", type=int, default=0, help="mismatch budget (default 0)")
    p.add_argument(
        "--algorithm",
        choices=sorted(ALGORITHM_NAMES),
        default="auto",
        help="solver selection (default auto)",
    )
    p.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    p.add_argument(
        "--witness",
        action="store_true",
        help="also report a witness rotation and its mismatch count per position",
    )
    p.add_argument(
        "--fasta",
        action="store_true",
        help="parse file inputs as FASTA (headers skipped, letters uppercased)",
    )
    p.add_argument(
        "--parallel", action="store_true", help="process text windows in parallel"
    )
    p.add_argument("--benchmark", action="store_true", help="run benchmark mode")
    p.add_argument("--bench-n", default="65536", help="comma list of text lengths")
    p.add_argument("--bench-m", default="4096", help="comma list of pattern lengths")
    p.add_argument("--bench-k", default="4", help="comma list of mismatch budgets")
    p.add_argument(
        "--bench-algorithms",
        default="anchor,sample",
        help="comma list from naive,anchor,sample",
    )
    p.add_argument("--bench-reps", type=int, default=5, help="runs per row (median)")
    p.add_argument("--seed", type=int, default=0, help="benchmark input seed")
    return p


def ingest(path: str, fasta: bool = False) -> Sequence:
    """Read a sequence file: raw bytes, or FASTA when asked."""
    with open(path, "rb") as fh:
        data = fh.read()
    if fasta:
        letters = []
        for line in data.decode("ascii", "replace").splitlines():
            if line.startswith(">"):
                continue
            letters.append(line.strip().upper())
        seq = "".join(letters).encode("ascii")
    else:
        # raw means raw: strip exactly one trailing newline byte, nothing else
        seq = data[:-1] if data.endswith(b"\n") else data
    return Sequence.from_bytes(seq)


def _load(literal: str | None, path: str | None, fasta: bool, what: str) -> Sequence:
    if literal is not None:
        return Sequence.from_bytes(literal.encode("utf-8"))
    if path is None:
        raise UsageError(f"missing {what}: pass --{what} or --{what}-file")
    return ingest(path, fasta)


class UsageError(Exception):
    pass


def _emit_text(report, witness, out):
    for i, pos in enumerate(report.positions):
        if witness:
            out.write(f"{pos}\t{report.rotations[i]}\t{report.mismatches[i]}\n")
        else:
            out.write(f"{pos}\n")


def _emit_json(report, witness, params, elapsed_ms, out):
    doc = {"positions": report.positions}
    if witness:
        doc["witnesses"] = [
            {"pos": p, "rot": r, "dist": d}
            for p, r, d in zip(report.positions, report.rotations, report.mismatches)
        ]
    doc["parameters"] = params
    doc["timing_ms"] = elapsed_ms
    out.write(json.dumps(doc) + "\n")


def synthesize(n: int, m: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic benchmark inputs: a random half plus a defect-sprinkled
    periodic half, with a pattern that is half periodic and half random."""
    rng = np.random.default_rng((seed * 1_000_003 + n * 13 + m) & 0x7FFFFFFF)
    t = rng.integers(0, 2, size=n, dtype=np.int32)
    half = n // 2
    t[half:] = np.arange(n - half, dtype=np.int32) & 1
    step = max(m // 4, 2)
    t[half + step // 2 :: step] ^= 1  # misperiods along the periodic stretch
    p = rng.integers(0, 2, size=m, dtype=np.int32)
    p[: m // 2] = np.arange(m // 2, dtype=np.int32) & 1
    if m >= 8:
        p[m // 4] ^= 1
    return t, p


def benchmark(
    ns, ms, ks, algorithms, reps: int = 5, seed: int = 0, out=None
) -> list[dict]:
    """Time each requested combination; emits CSV when given a stream."""
    rows = []
    if out is not None:
        out.write("n,m,k,algorithm,median_ms\n")
    for n in ns:
        for m in ms:
            if m > n:
                continue
            t, p = synthesize(n, m, seed)
            for k in ks:
                for alg in algorithms:
                    times = []
                    for _ in range(max(reps, 1)):
                        t0 = time.perf_counter()
                        if alg == "naive":
                            brute_force_cpm(t, p, k)
                        elif alg == "anchor":
                            solve_anchor_sweep(t, p, k)
                        else:
                            solve(t, p, k, SolverConfig("sample_k4"))
                        times.append((time.perf_counter() - t0) * 1000.0)
                    row = {
                        "n": n,
                        "m": m,
                        "k": k,
                        "algorithm": alg,
                        "median_ms": statistics.median(times),
                    }
                    rows.append(row)
                    if out is not None:
                        out.write(
                            f"{n},{m},{k},{alg},{row['median_ms']:.3f}\n"
                        )
                        out.flush()
    return rows


def _csv_ints(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def run(args, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if args.benchmark:
        algorithms = [a.strip() for a in args.bench_algorithms.split(",") if a.strip()]
        bad = [a for a in algorithms if a not in ("naive", "anchor", "sample")]
        if bad:
            err.write(f"circmatch: error: unknown benchmark algorithm {bad[0]!r}\n")
            return 1
        try:
            benchmark(
                _csv_ints(args.bench_n),
                _csv_ints(args.bench_m),
                _csv_ints(args.bench_k),
                algorithms,
                args.bench_reps,
                args.seed,
                out,
            )
        except ValueError as exc:
            err.write(f"circmatch: error: {exc}\n")
            return 1
        return 0
    try:
        pattern = _load(args.pattern, args.pattern_file, args.fasta, "pattern")
        text = _load(args.text, args.text_file, args.fasta, "text")
    except UsageError as exc:
        err.write(f"circmatch: error: {exc}\n")
        return 1
    except OSError as exc:
        err.write(f"circmatch: error: {exc}\n")
        return 2
    if len(pattern) == 0 or len(text) == 0:
        err.write("circmatch: error: empty input sequence\n")
        return 1
    if args.k < 0:
        err.write("circmatch: error: k must be non-negative\n")
        return 1
    config = SolverConfig(
        ALGORITHM_NAMES[args.algorithm],
        want_witness=args.witness,
        parallel_windows=args.parallel,
    )
    t0 = time.perf_counter()
    report = solve(text, pattern, args.k, config)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    if args.format == "json":
        params = {
            "n": len(text),
            "m": len(pattern),
            "k": args.k,
            "algorithm": args.algorithm,
        }
        _emit_json(report, args.witness, params, elapsed_ms, out)
    else:
        _emit_text(report, args.witness, out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
