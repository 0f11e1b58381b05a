#!/usr/bin/env python3
"""
NewEigM
Given the eigenmatrix decomposition of N under ad(S) and an eigenmatrix X
of ad(S) with nonzero eigenvalue mu, produce the decomposition of N under
ad(S - X).

Each loop shifts every pending pair with exp(mu^-1 ad(X)) into the ad(S - X)
pile and pushes the leftover terms -(mu^-j / j!) ad(X)^j(N_i), eigenvalue
lambda_i + j*mu, back onto the pending pile. The leftovers sit in strictly
higher bands, so the pending pile empties after at most n loops.
"""

from dataclasses import dataclass
from typing import List, Tuple

from eigendecomp import (
    EigPair,
    EigSeq,
    check_shift,
    collect,
    juxtapose,
    shift_terms,
)
from errors import InvariantViolation, PreconditionError
from ratmat import Mat, to_rational, zeros


@dataclass(frozen=True)
class NewEigMState:
    """Snapshot taken after a loop (loop_count 0: nothing to shift).

    eigm_S holds the collected residuals, still eigenmatrices of ad(S) and
    pending for the next loop; eigm_SmX the accumulated eigenmatrices of
    ad(S - X). Together they always sum to the input N.
    """

    eigm_S: EigSeq
    eigm_SmX: EigSeq
    loop_count: int


def _check_input(seq: EigSeq, s: Mat):
    values = seq.values()
    if len(set(values)) != len(values):
        raise PreconditionError("distinct_eigenvalues", "input eigenvalues repeat")
    for pair in seq:
        if pair.matrix.n != s.n:
            raise PreconditionError("pair_is_eigenmatrix", "pair dimension differs from S")
        if not pair.is_eigen_for(s):
            raise PreconditionError("pair_is_eigenmatrix", "[S, N_i] != lambda_i N_i")


def new_eig_m_traced(
    n_seq: EigSeq, x_mat: Mat, mu, s: Mat, check: bool = True
) -> Tuple[EigSeq, List[NewEigMState]]:
    """NewEigM with one recorded state per loop."""
    if check:
        _check_input(n_seq, s)
    empty = EigSeq()

    if x_mat.is_zero():
        result = collect(n_seq)
        return result, [NewEigMState(empty, result, 0)]

    mu = to_rational(mu)
    if check:
        check_shift(x_mat, mu, s)

    pending = n_seq
    shifted = empty
    trace: List[NewEigMState] = []
    if not pending:
        return empty, [NewEigMState(empty, empty, 0)]

    while pending:
        if len(trace) >= s.n:
            raise InvariantViolation(f"NewEigM did not finish within {s.n} loops")
        moved = []
        residuals = []
        for pair in pending:
            terms = shift_terms(x_mat, mu, pair.matrix)
            total = zeros(s.n)
            for t in terms:
                total = total + t
            moved.append(EigPair(total, pair.eigenvalue))
            for j, t in enumerate(terms[1:], start=1):
                residuals.append(EigPair(-t, pair.eigenvalue + j * mu))
        shifted = collect(juxtapose(shifted, EigSeq(tuple(moved))))
        residual_seq = collect(EigSeq(tuple(residuals)))
        trace.append(NewEigMState(residual_seq, shifted, len(trace) + 1))
        pending = residual_seq

    return shifted, trace


def new_eig_m(n_seq: EigSeq, x_mat: Mat, mu, s: Mat, check: bool = True) -> EigSeq:
    """Decomposition of sum(n_seq) into eigenmatrices of ad(S - X)."""
    result, _ = new_eig_m_traced(n_seq, x_mat, mu, s, check=check)
    return result
