#!/usr/bin/env python3
"""
JC_D: Jordan-Chevalley decomposition of S + N
S upper triangular and diagonalizable, N upper triangular and nilpotent,
[S, N] = 0 not assumed.

Every loop picks a component N_i0 of N with nonzero ad(S)-eigenvalue,
moves it from N into S and re-decomposes what is left of N under the new S.
The count vector gamma strictly decreases lexicographically, which bounds
the number of loops by n(n-1)^2/2.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

from eigendecomp import EigSeq, decomp
from errors import ConfigError, InvariantViolation
from neweigm import new_eig_m
from ratmat import Mat, has_band, lowest_band

PickStrategy = Callable[[EigSeq], int]

VIA_PATHS = ("neweigm", "decomp")
DEFAULT_PICK = "lowest-band"
DEFAULT_VIA = "neweigm"


@dataclass(frozen=True, order=True)
class GammaVector:
    """(c_1, ..., c_{n-1}); compared lexicographically."""

    counts: Tuple[int, ...]

    def c(self, k: int) -> int:
        """c_k for k >= 1; c_0 is always 0."""
        return self.counts[k - 1] if k >= 1 else 0

    def is_zero(self) -> bool:
        return not any(self.counts)


def loop_bound(n: int) -> int:
    return n * (n - 1) ** 2 // 2


def gamma_entry_bound(n: int) -> int:
    return n * (n - 1) // 2


def gamma_of(seq: EigSeq, n: int) -> GammaVector:
    """gamma from a known decomposition: per band k, the number of parts
    with nonzero eigenvalue and nonzero k-band."""
    counts = [0] * (n - 1)
    for pair in seq:
        if pair.eigenvalue == 0:
            continue
        for k in range(1, n):
            if has_band(pair.matrix, k):
                counts[k - 1] += 1
    return GammaVector(tuple(counts))


def gamma(s: Mat, n_mat: Mat) -> GammaVector:
    return gamma_of(decomp(s, n_mat), s.n)


def _nonzero_indices(seq: EigSeq) -> List[int]:
    return [i for i, pair in enumerate(seq) if pair.eigenvalue != 0]


def pick_first(seq: EigSeq) -> int:
    """First nonzero-eigenvalue part in collect order."""
    return _nonzero_indices(seq)[0]


def pick_lowest_band(seq: EigSeq) -> int:
    """Nonzero-eigenvalue part with the lowest nonzero band, ties broken by
    the smaller eigenvalue."""
    return min(
        _nonzero_indices(seq),
        key=lambda i: (lowest_band(seq[i].matrix), seq[i].eigenvalue),
    )


PICK_STRATEGIES: Dict[str, PickStrategy] = {
    "first": pick_first,
    "lowest-band": pick_lowest_band,
}


def resolve_pick(pick: Union[str, PickStrategy]) -> PickStrategy:
    if callable(pick):
        return pick
    try:
        return PICK_STRATEGIES[pick]
    except KeyError:
        raise ConfigError(
            f"unknown pick strategy {pick!r}; choose from {sorted(PICK_STRATEGIES)}"
        )


@dataclass(frozen=True)
class JcdStep:
    S: Mat
    N: Mat
    gamma: GammaVector
    decomposition: EigSeq
    chosen_index: Optional[int] = None
    chosen_eigenvalue: Optional[Fraction] = None
    chosen_matrix: Optional[Mat] = None
    chosen_band: Optional[int] = None


@dataclass(frozen=True)
class JcdTrace:
    steps: Tuple[JcdStep, ...]

    @property
    def loops(self) -> int:
        return len(self.steps) - 1

    def gammas(self) -> List[GammaVector]:
        return [step.gamma for step in self.steps]


@dataclass(frozen=True)
class JcdResult:
    S_prime: Mat
    N_prime: Mat
    trace: JcdTrace


def jc_d(
    s: Mat,
    n_mat: Mat,
    pick: Union[str, PickStrategy] = DEFAULT_PICK,
    via: str = DEFAULT_VIA,
) -> JcdResult:
    """Jordan-Chevalley decomposition of S + N with both parts in the Lie
    algebra generated by S and N."""
    strategy = resolve_pick(pick)
    if via not in VIA_PATHS:
        raise ConfigError(f"unknown path {via!r}; choose from {list(VIA_PATHS)}")

    seq = decomp(s, n_mat)
    n = s.n
    bound = loop_bound(n)
    steps: List[JcdStep] = []
    s_cur, n_cur = s, n_mat

    while True:
        g = gamma_of(seq, n)
        if steps and not g < steps[-1].gamma:
            raise InvariantViolation(
                f"gamma did not decrease: {steps[-1].gamma.counts} -> {g.counts}"
            )
        if all(v == 0 for v in seq.values()):
            steps.append(JcdStep(s_cur, n_cur, g, seq))
            break
        if len(steps) >= bound:
            raise InvariantViolation(f"more than {bound} loops")

        idx = strategy(seq)
        if not 0 <= idx < len(seq) or seq[idx].eigenvalue == 0:
            raise InvariantViolation(f"pick strategy returned invalid index {idx}")
        chosen = seq[idx]
        steps.append(
            JcdStep(
                s_cur,
                n_cur,
                g,
                seq,
                idx,
                chosen.eigenvalue,
                chosen.matrix,
                lowest_band(chosen.matrix),
            )
        )

        s_next = s_cur + chosen.matrix
        n_next = n_cur - chosen.matrix
        if via == "neweigm":
            # the parts of seq are ad(S_cur)-eigenmatrices and -N_i0 is a
            # strictly upper eigenmatrix for its nonzero eigenvalue
            seq = new_eig_m(
                seq.without(idx), -chosen.matrix, chosen.eigenvalue, s_cur, check=False
            )
        else:
            seq = decomp(s_next, n_next)
        s_cur, n_cur = s_next, n_next

    return JcdResult(s_cur, n_cur, JcdTrace(tuple(steps)))


def band_bookkeeping_holds(seq: EigSeq, idx: int, next_seq: EigSeq, n: int) -> bool:
    """With k0 the lowest band of the removed part N_i0:
    c_{S,k}(N - N_i0) equals c_{S,k}(N) below k0 and drops by one at k0,
    and c_{S + N_i0,k}(N - N_i0) = c_{S,k}(N - N_i0) for k <= k0."""
    k0 = lowest_band(seq[idx].matrix)
    if k0 is None or k0 < 1:
        return False
    before = gamma_of(seq, n)
    removed = gamma_of(seq.without(idx), n)
    after = gamma_of(next_seq, n)
    if any(removed.c(k) != before.c(k) for k in range(1, k0)):
        return False
    if removed.c(k0) != before.c(k0) - 1:
        return False
    return all(after.c(k) == removed.c(k) for k in range(1, k0 + 1))


def trace_bookkeeping_holds(trace: JcdTrace) -> bool:
    n = trace.steps[0].S.n
    return all(
        band_bookkeeping_holds(
            step.decomposition, step.chosen_index, nxt.decomposition, n
        )
        for step, nxt in zip(trace.steps, trace.steps[1:])
    )
