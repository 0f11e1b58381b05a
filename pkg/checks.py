#!/usr/bin/env python3
"""
Verification Engine
Runs JC_D on one instance and evaluates every claim made about it: the JCD
properties, gamma monotonicity and bookkeeping, the loop bound, membership in
the generated Lie algebra, agreement with the classical oracle,
commutation with the direct-sum representation and independence from the
pick strategy and the re-decomposition path.
"""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel

from eigendecomp import EigPair, EigSeq, decomp, decomp_vandermonde
from errors import JcdError
from gen import GenConfig, gen_instance
from jcd import (
    DEFAULT_PICK,
    DEFAULT_VIA,
    PICK_STRATEGIES,
    VIA_PATHS,
    JcdResult,
    JcdTrace,
    gamma_entry_bound,
    jc_d,
    loop_bound,
    trace_bookkeeping_holds,
)
from liealg import direct_sum_rep, is_solvable, lie_closure
from neweigm import new_eig_m
from oracle import chevalley_jcd
from ratmat import Mat, bracket, is_diagonalizable, is_nilpotent

SPECTRUM_MODES = ("mixed", "distinct", "repeated")


def neweigm_commutes_with_rep(trace: JcdTrace, copies: int = 2) -> bool:
    """At every loop, NewEigM on pi(pairs) returns pi of NewEigM on pairs,
    up to zero matrices, for pi = direct_sum_rep(., copies)."""

    def pi(m: Mat) -> Mat:
        return direct_sum_rep(m, copies)

    for step in trace.steps[:-1]:
        rest = step.decomposition.without(step.chosen_index)
        x_mat = -step.chosen_matrix
        mu = step.chosen_eigenvalue
        plain = new_eig_m(rest, x_mat, mu, step.S)
        lifted = new_eig_m(
            EigSeq(tuple(EigPair(pi(p.matrix), p.eigenvalue) for p in rest)),
            pi(x_mat),
            mu,
            pi(step.S),
        )
        expected = {pi(m) for m in plain.matrices() if not m.is_zero()}
        if {m for m in lifted.matrices() if not m.is_zero()} != expected:
            return False
    return True


def _same(a: JcdResult, b: JcdResult) -> bool:
    return a.S_prime == b.S_prime and a.N_prime == b.N_prime


def run_checks(
    s: Mat,
    n_mat: Mat,
    expected: Optional[Tuple[Mat, Mat]] = None,
    pick: str = DEFAULT_PICK,
    via: str = DEFAULT_VIA,
) -> Tuple[JcdResult, Dict[str, bool]]:
    """JC_D result plus a verdict per named check."""
    result = jc_d(s, n_mat, pick, via)
    s_prime, n_prime = result.S_prime, result.N_prime
    steps = result.trace.steps
    gammas = result.trace.gammas()
    n = s.n
    total = s + n_mat

    checks: Dict[str, bool] = {}
    checks["sum_conservation"] = all(step.S + step.N == total for step in steps)
    checks["outputs_commute"] = bracket(s_prime, n_prime).is_zero()
    checks["s_prime_diagonalizable"] = all(is_diagonalizable(step.S) for step in steps)
    checks["n_prime_nilpotent"] = all(is_nilpotent(step.N) for step in steps)
    checks["gamma_decreasing"] = all(b < a for a, b in zip(gammas, gammas[1:]))
    checks["band_bookkeeping"] = trace_bookkeeping_holds(result.trace)
    checks["loop_bound"] = result.trace.loops <= loop_bound(n)
    checks["gamma_entry_bound"] = all(
        c <= gamma_entry_bound(n) for g in gammas for c in g.counts
    )

    closure = lie_closure([s, n_mat])
    checks["closure_membership"] = closure.contains(s_prime) and closure.contains(n_prime)
    checks["closure_solvable"] = is_solvable(closure)

    oracle_s, oracle_n = chevalley_jcd(total)
    checks["oracle_agreement"] = oracle_s == s_prime and oracle_n == n_prime

    lifted = jc_d(direct_sum_rep(s), direct_sum_rep(n_mat), pick, via)
    checks["representation_commutation"] = (
        lifted.S_prime == direct_sum_rep(s_prime)
        and lifted.N_prime == direct_sum_rep(n_prime)
    )
    checks["neweigm_representation"] = neweigm_commutes_with_rep(result.trace)

    checks["pick_independence"] = all(
        _same(result, jc_d(s, n_mat, other, via)) for other in PICK_STRATEGIES if other != pick
    )
    checks["via_independence"] = all(
        _same(result, jc_d(s, n_mat, pick, other)) for other in VIA_PATHS if other != via
    )
    checks["vandermonde_agreement"] = decomp_vandermonde(s, n_mat) == decomp(s, n_mat)

    if expected is not None:
        checks["expected_result"] = expected[0] == s_prime and expected[1] == n_prime
    return result, checks


def failed_checks(checks: Dict[str, bool]) -> List[str]:
    return [name for name, ok in checks.items() if not ok]


class BatchRow(BaseModel):
    n: int
    seed: int
    multiplicity: bool
    passed: bool
    loops: int = 0
    max_gamma1: int = 0
    failed: List[str] = []
    error: Optional[str] = None


def spectrum_multiplicity(mode: str, seed: int) -> bool:
    """Whether seed `seed` draws a spectrum with repeats under `mode`."""
    if mode == "mixed":
        return seed % 2 == 1
    return mode == "repeated"


def batch_row(
    n: int,
    seed: int,
    spectrum: str = "mixed",
    pick: str = DEFAULT_PICK,
    via: str = DEFAULT_VIA,
    diag_range: int = 3,
    entry_range: int = 3,
) -> BatchRow:
    """Generate instance (n, seed) and verify it."""
    multiplicity = spectrum_multiplicity(spectrum, seed)
    cfg = GenConfig(
        n=n,
        seed=seed,
        multiplicity=multiplicity,
        diag_range=diag_range,
        entry_range=entry_range,
    )
    s, n_mat = gen_instance(cfg)
    try:
        result, checks = run_checks(s, n_mat, pick=pick, via=via)
    except JcdError as e:
        return BatchRow(
            n=n, seed=seed, multiplicity=multiplicity, passed=False, error=e.detail
        )
    failed = failed_checks(checks)
    return BatchRow(
        n=n,
        seed=seed,
        multiplicity=multiplicity,
        passed=not failed,
        loops=result.trace.loops,
        max_gamma1=max((g.c(1) for g in result.trace.gammas()), default=0) if n > 1 else 0,
        failed=failed,
    )
