#!/usr/bin/env python3
"""
🧮 Exact Jordan-Chevalley Toolkit
Decompose, verify, cross-check and batch-test S + N over the rationals.
"""

import argparse
import re
import sys
from pathlib import Path
from typing import List, Optional, Tuple

QUIET = False


def status(message: str):
    """Status line on stderr; stdout carries JSON only."""
    if not QUIET:
        print(message, file=sys.stderr)


def print_banner():
    """Print application banner."""
    status("🧮 JC_D exact Jordan-Chevalley toolkit")
    status("=" * 50)


def check_requirements() -> bool:
    """Check if required dependencies are installed."""
    missing_deps = []

    try:
        import numpy
    except ImportError:
        missing_deps.append("numpy")

    try:
        import sympy
    except ImportError:
        missing_deps.append("sympy")

    try:
        import pydantic
    except ImportError:
        missing_deps.append("pydantic")

    try:
        import dotenv
    except ImportError:
        missing_deps.append("python-dotenv")

    if missing_deps:
        print(f"❌ Missing dependencies: {', '.join(missing_deps)}", file=sys.stderr)
        print("💡 Install with: pip install -r requirements.txt", file=sys.stderr)
        return False

    return True


def emit(text: str):
    print(text)


def read_input(path: str) -> Tuple[str, str]:
    """(text, source name); "-" reads standard input."""
    from errors import ParseError

    if path == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        return Path(path).read_text(encoding="utf-8"), path
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f"cannot read {path}: {e}")


def load_instance(path: str):
    from formats import InstanceFile, parse_model

    text, source = read_input(path)
    return parse_model(InstanceFile, text, source)


def trace_records(result, full: bool):
    from formats import TraceRecord, grid

    records = []
    for step in result.trace.steps:
        records.append(
            TraceRecord(
                gamma=list(step.gamma.counts),
                values=[str(v) for v in step.decomposition.values()],
                chosen_eigenvalue=None
                if step.chosen_eigenvalue is None
                else str(step.chosen_eigenvalue),
                chosen_band=step.chosen_band,
                S=grid(step.S) if full else None,
                N=grid(step.N) if full else None,
            )
        )
    return records


def result_file(result, checks=None, trace: Optional[str] = None, metadata=None):
    from formats import ResultFile, grid

    return ResultFile(
        n=result.S_prime.n,
        S_prime=grid(result.S_prime),
        N_prime=grid(result.N_prime),
        loops=result.trace.loops,
        gamma_trace=[list(g.counts) for g in result.trace.gammas()],
        checks=checks or {},
        trace=trace_records(result, trace == "full") if trace else None,
        metadata=metadata or {},
    )


def cmd_decompose(args, settings) -> int:
    """Run JC_D on an instance file and print the result file."""
    from formats import dump_model
    from jcd import jc_d

    instance = load_instance(args.input)
    s, n_mat = instance.matrices()
    pick = args.pick or settings.pick
    via = args.via or settings.via

    trace = "full" if args.trace_full else ("summary" if args.trace else None)

    result = jc_d(s, n_mat, pick, via)
    status(f"✅ Decomposed n={s.n} in {result.trace.loops} loops (pick={pick}, via={via})")
    emit(
        dump_model(
            result_file(result, trace=trace, metadata={"pick": pick, "via": via})
        )
    )
    return 0


def cmd_verify(args, settings) -> int:
    """Run JC_D plus every check; exit 1 when any check fails."""
    from checks import failed_checks, run_checks
    from errors import CheckFailure
    from formats import ResultFile, dump_model, load_model

    instance = load_instance(args.input)
    s, n_mat = instance.matrices()
    pick = args.pick or settings.pick
    via = args.via or settings.via
    expected = load_model(ResultFile, args.expect).matrices() if args.expect else None

    result, checks = run_checks(s, n_mat, expected, pick, via)
    emit(dump_model(result_file(result, checks, metadata={"pick": pick, "via": via})))

    for name, ok in checks.items():
        status(f"{'✅' if ok else '❌'} {name}")
    failed = failed_checks(checks)
    if failed:
        raise CheckFailure(failed)
    status(f"📊 {len(checks)}/{len(checks)} checks passed")
    return 0


def load_oracle_input(path: str):
    """A single-matrix file, or an instance file whose S + N is taken."""
    from errors import ParseError
    from formats import InstanceFile, MatrixFile, parse_model

    text, source = read_input(path)
    try:
        return parse_model(MatrixFile, text, source).matrix()
    except ParseError as first:
        try:
            s, n_mat = parse_model(InstanceFile, text, source).matrices()
        except ParseError:
            raise first
        return s + n_mat


def cmd_oracle(args, settings) -> int:
    """Classical Jordan-Chevalley decomposition of any square matrix."""
    from formats import ResultFile, dump_model, grid
    from oracle import chevalley_jcd, newton_steps

    a = load_oracle_input(args.input)
    s_prime, n_prime = chevalley_jcd(a)
    steps = newton_steps(a)
    status(f"✅ Oracle decomposition of n={a.n} after {steps} Newton steps")
    emit(
        dump_model(
            ResultFile(
                n=a.n,
                S_prime=grid(s_prime),
                N_prime=grid(n_prime),
                metadata={"method": "oracle", "newton_steps": steps},
            )
        )
    )
    return 0


def cmd_gen(args, settings) -> int:
    """Emit seeded random instances as JSON lines or files."""
    from pydantic import ValidationError

    from errors import ConfigError
    from formats import InstanceFile, dump_model
    from gen import GENERATOR_ID, GenConfig, gen_commuting_instance, gen_instance

    make = gen_commuting_instance if args.commuting else gen_instance
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)

    for seed in range(args.seed, args.seed + args.count):
        try:
            cfg = GenConfig(
                n=args.n,
                seed=seed,
                multiplicity=args.multiplicity,
                diag_range=args.diag_range or settings.diag_range,
                entry_range=args.entry_range or settings.entry_range,
            )
        except ValidationError as e:
            raise ConfigError(f"gen: {e.errors()[0]['loc'][0]}: {e.errors()[0]['msg']}")
        s, n_mat = make(cfg)
        instance = InstanceFile.from_matrices(
            s,
            n_mat,
            {
                "generator": GENERATOR_ID,
                "seed": seed,
                "commuting": args.commuting,
                "multiplicity": args.multiplicity,
            },
        )
        if out_dir:
            (out_dir / f"instance_{seed}.json").write_text(
                dump_model(instance) + "\n", encoding="utf-8"
            )
        else:
            emit(dump_model(instance, indent=None))

    where = f" into {out_dir}" if out_dir else ""
    status(f"✅ Generated {args.count} instances of n={args.n}{where}")
    return 0


_SEEDS_RE = re.compile(r"^(\d+)\.\.(\d+)$")


def seed_range(text: str) -> range:
    """'a..b' inclusive; b < a is the empty range."""
    match = _SEEDS_RE.match(text.strip())
    if not match:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    a, b = int(match.group(1)), int(match.group(2))
    return range(a, b + 1)


def _batch_worker(job):
    from checks import batch_row

    return batch_row(*job)


def summary_table(rows, dims: List[int]) -> List[str]:
    from jcd import gamma_entry_bound, loop_bound

    lines = [
        f"{'n':>3} {'instances':>9} {'passed':>6} {'max loops':>9} {'bound':>5} "
        f"{'max γ1':>6} {'bound':>5}",
        "-" * 52,
    ]
    for n in dims:
        group = [r for r in rows if r.n == n]
        if not group:
            continue
        lines.append(
            f"{n:>3} {len(group):>9} {sum(r.passed for r in group):>6} "
            f"{max(r.loops for r in group):>9} {loop_bound(n):>5} "
            f"{max(r.max_gamma1 for r in group):>6} {gamma_entry_bound(n):>5}"
        )
    lines.append(f"{sum(r.passed for r in rows)}/{len(rows)} passed")
    return lines


def cmd_batch(args, settings) -> int:
    """Generate and verify instances over dimensions and a seed range."""
    from concurrent.futures import ProcessPoolExecutor

    from errors import CheckFailure, ConfigError

    dims = sorted(set(args.n))
    if dims and dims[0] < 1:
        raise ConfigError(f"dimensions must be positive, got {dims[0]}")
    pick = args.pick or settings.pick
    via = args.via or settings.via
    workers = args.workers or settings.workers
    jobs = [
        (n, seed, args.spectrum, pick, via, settings.diag_range, settings.entry_range)
        for n in dims
        for seed in args.seeds
    ]

    status(f"🔄 Verifying {len(jobs)} instances with {workers} worker(s)")
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_batch_worker, jobs))
    else:
        rows = [_batch_worker(job) for job in jobs]

    for line in summary_table(rows, dims):
        emit(line)

    failures = [r for r in rows if not r.passed]
    for r in failures:
        reason = r.error or ", ".join(r.failed)
        status(f"❌ n={r.n} seed={r.seed}: {reason}")
    if failures:
        raise CheckFailure([f"n={r.n} seed={r.seed}" for r in failures])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact Jordan-Chevalley decomposition of S + N",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python run.py gen --n 4 --seed 7 --out instances/   # Write instance_7.json
  python run.py decompose instances/instance_7.json   # S', N' and gamma trace
  python run.py decompose in.json --trace-full        # Per-loop S and N as well
  python run.py verify in.json                        # All checks, exit 1 on failure
  python run.py oracle matrix.json                    # Classical decomposition
  python run.py batch --n 2 3 4 --seeds 0..99         # Generated acceptance run

Exit codes: 0 ok, 1 check failure, 2 parse/config error, 3 precondition error
        """,
    )
    parser.add_argument("--config", help="Settings file (default: jcd.env if present)")
    parser.add_argument("--quiet", action="store_true", help="Suppress status lines")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_strategy_flags(p):
        p.add_argument("--pick", choices=["lowest-band", "first"], help="Pick strategy")
        p.add_argument("--via", choices=["neweigm", "decomp"], help="Re-decomposition path")

    p = sub.add_parser("decompose", help="Run JC_D on an instance file")
    p.add_argument("input", help="Instance file, or - for standard input")
    p.add_argument("--trace", action="store_true", help="Include the per-loop trace")
    p.add_argument(
        "--trace-full", action="store_true", help="Per-loop trace with S and N of every loop"
    )
    add_strategy_flags(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="Run JC_D and every check")
    p.add_argument("input", help="Instance file, or - for standard input")
    p.add_argument("--expect", help="Result file whose S' and N' must match")
    add_strategy_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="Classical decomposition of one matrix")
    p.add_argument("input", help="Matrix or instance file, or - for standard input")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="Generate seeded instances")
    p.add_argument("--n", type=int, required=True, help="Matrix dimension")
    p.add_argument("--seed", type=int, default=0, help="First seed (default: 0)")
    p.add_argument("--count", type=int, default=1, help="Number of instances (default: 1)")
    p.add_argument("--commuting", action="store_true", help="Draw N with [S, N] = 0")
    p.add_argument("--multiplicity", action="store_true", help="Allow repeated eigenvalues")
    p.add_argument("--diag-range", type=int, help="Eigenvalues drawn from [-r, r]")
    p.add_argument("--entry-range", type=int, help="Off-diagonal entries from [-e, e]")
    p.add_argument("--out", help="Directory for instance_<seed>.json files")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("batch", help="Verify a generated suite")
    p.add_argument("--n", type=int, nargs="+", required=True, help="Dimensions")
    p.add_argument("--seeds", type=seed_range, default=range(0, 100), help="Seed range a..b")
    p.add_argument(
        "--spectrum",
        choices=["mixed", "distinct", "repeated"],
        default="mixed",
        help="Eigenvalue multiplicity (mixed alternates by seed)",
    )
    p.add_argument("--workers", type=int, help="Worker processes")
    add_strategy_flags(p)
    p.set_defaults(func=cmd_batch)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point with command line arguments."""
    global QUIET

    args = build_parser().parse_args(argv)
    QUIET = args.quiet

    print_banner()

    if not check_requirements():
        return 1

    from config import load_settings
    from errors import JcdError, PreconditionError

    try:
        settings = load_settings(args.config)
        return args.func(args, settings)
    except PreconditionError as e:
        print(f"❌ {e.predicate}: {e.detail}", file=sys.stderr)
        return e.exit_code
    except JcdError as e:
        print(f"❌ {type(e).__name__}: {e.detail}", file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        print("\n👋 Interrupted!", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.stdout.reconfigure(encoding="utf-8")
    sys.stderr.reconfigure(encoding="utf-8")
    sys.exit(main())
