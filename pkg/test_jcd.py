#!/usr/bin/env python3
"""
JC_D Tests
Worked examples, degenerate inputs, termination and choice independence.
"""

import pytest
from hypothesis import given, settings, strategies as st

import neweigm
from eigendecomp import EigSeq, decomp
from errors import ConfigError, InvariantViolation, PreconditionError
from gen import GenConfig, gen_commuting_instance, gen_instance
from jcd import (
    PICK_STRATEGIES,
    VIA_PATHS,
    GammaVector,
    gamma,
    gamma_entry_bound,
    gamma_of,
    jc_d,
    loop_bound,
    pick_first,
    pick_lowest_band,
    trace_bookkeeping_holds,
)
from oracle import chevalley_jcd
from ratmat import (
    Mat,
    bracket,
    diag,
    elementary,
    identity,
    is_diagonalizable,
    is_nilpotent,
    zeros,
)


def E(n, i, j):
    return elementary(n, i - 1, j - 1)


def test_bounds():
    assert loop_bound(2) == 1
    assert loop_bound(4) == 18
    assert gamma_entry_bound(4) == 6
    assert loop_bound(1) == 0


def test_gamma_vector_order_is_lexicographic():
    assert GammaVector((0, 5)) < GammaVector((1, 0))
    assert GammaVector((1, 0)) < GammaVector((1, 1))
    assert GammaVector((0, 0)).is_zero()


def test_gamma_examples():
    assert gamma(diag([1, 2]), E(2, 1, 2)).counts == (1,)
    assert gamma(diag([3, 3]), E(2, 1, 2)).counts == (0,)
    g = gamma(diag([1, 2, 4]), E(3, 1, 2) + E(3, 2, 3) + E(3, 1, 3))
    assert g.counts == (2, 1)


def test_pick_strategies():
    seq = EigSeq.of((E(3, 1, 3), -3), (E(3, 1, 2), -1), (E(3, 2, 3), 0))
    assert pick_first(seq) == 0
    assert pick_lowest_band(seq) == 1


def test_two_by_two_example():
    s = Mat([[0, 1], [0, 1]])
    result = jc_d(s, E(2, 1, 2))
    assert result.S_prime == Mat([[0, 2], [0, 1]])
    assert result.N_prime.is_zero()
    assert result.trace.loops == 1
    assert [g.counts for g in result.trace.gammas()] == [(1,), (0,)]
    assert result.trace.steps[0].chosen_eigenvalue == -1


def test_commuting_input_is_returned_unchanged():
    s = diag([2, 2, 5])
    n_mat = E(3, 1, 2) * 3
    result = jc_d(s, n_mat)
    assert result.S_prime == s
    assert result.N_prime == n_mat
    assert result.trace.loops == 0


def test_zero_nilpotent_part():
    s = Mat([[1, 4], [0, 3]])
    result = jc_d(s, zeros(2))
    assert result.S_prime == s and result.N_prime.is_zero()
    assert result.trace.loops == 0


def test_one_by_one():
    result = jc_d(Mat([[7]]), zeros(1))
    assert result.S_prime == Mat([[7]])
    assert result.trace.loops == 0
    assert result.trace.gammas() == [GammaVector(())]


def test_non_diagonalizable_s_rejected():
    with pytest.raises(PreconditionError) as err:
        jc_d(Mat([[1, 1], [0, 1]]), zeros(2))
    assert err.value.predicate == "is_diagonalizable"


def test_non_nilpotent_n_rejected():
    with pytest.raises(PreconditionError) as err:
        jc_d(identity(2), identity(2))
    assert err.value.predicate == "is_nilpotent"


def test_unknown_pick_or_path():
    with pytest.raises(ConfigError):
        jc_d(identity(2), zeros(2), pick="random")
    with pytest.raises(ConfigError):
        jc_d(identity(2), zeros(2), via="shortcut")


def test_pick_returning_zero_eigenvalue_is_an_invariant_violation():
    with pytest.raises(InvariantViolation):
        jc_d(diag([1, 1, 2]), E(3, 1, 2) + E(3, 2, 3), pick=lambda seq: seq.values().index(0))


def test_three_by_three_all_paths_agree():
    s = diag([1, 2, 4])
    n_mat = E(3, 1, 2) + E(3, 2, 3) + E(3, 1, 3)
    results = {
        (pick, via): jc_d(s, n_mat, pick, via) for pick in PICK_STRATEGIES for via in VIA_PATHS
    }
    expected = chevalley_jcd(s + n_mat)
    for result in results.values():
        assert (result.S_prime, result.N_prime) == expected
        assert result.N_prime.is_zero()


instances = st.tuples(
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=0, max_value=100_000),
    st.booleans(),
)


@settings(max_examples=30, deadline=None)
@given(instances)
def test_jcd_properties(params):
    n, seed, multiplicity = params
    s, n_mat = gen_instance(GenConfig(n=n, seed=seed, multiplicity=multiplicity))
    result = jc_d(s, n_mat)
    s_prime, n_prime = result.S_prime, result.N_prime

    assert s_prime + n_prime == s + n_mat
    assert bracket(s_prime, n_prime).is_zero()
    assert is_diagonalizable(s_prime)
    assert is_nilpotent(n_prime)
    assert result.trace.loops <= loop_bound(n)

    gammas = result.trace.gammas()
    assert all(b < a for a, b in zip(gammas, gammas[1:]))
    assert gammas[-1].is_zero()
    assert all(c <= gamma_entry_bound(n) for g in gammas for c in g.counts)
    assert trace_bookkeeping_holds(result.trace)

    for step in result.trace.steps:
        assert step.S + step.N == s + n_mat
        assert is_diagonalizable(step.S)
        assert is_nilpotent(step.N)
        assert gamma_of(decomp(step.S, step.N), n) == step.gamma
        assert step.decomposition.total(n) == step.N
        assert step.decomposition.is_eigen_for(step.S)


@settings(max_examples=20, deadline=None)
@given(instances)
def test_jcd_is_independent_of_choices(params):
    n, seed, multiplicity = params
    s, n_mat = gen_instance(GenConfig(n=n, seed=seed, multiplicity=multiplicity))
    outcomes = {
        (r.S_prime, r.N_prime)
        for r in (jc_d(s, n_mat, pick, via) for pick in PICK_STRATEGIES for via in VIA_PATHS)
    }
    assert len(outcomes) == 1


@settings(max_examples=20, deadline=None)
@given(instances)
def test_commuting_instances_take_zero_loops(params):
    n, seed, multiplicity = params
    s, n_mat = gen_commuting_instance(GenConfig(n=n, seed=seed, multiplicity=multiplicity))
    result = jc_d(s, n_mat)
    assert result.trace.loops == 0
    assert (result.S_prime, result.N_prime) == (s, n_mat)


def test_loop_redecomposition_skips_input_validation(monkeypatch):
    s = diag([1, 2, 4, 7, 11])
    n_mat = E(5, 1, 2) + E(5, 2, 3) + E(5, 3, 4) + E(5, 4, 5) + E(5, 1, 3) * 2
    expected = jc_d(s, n_mat, via="decomp")
    calls = []

    def refuse(*args):
        calls.append(args)
        raise AssertionError("validated inside the loop")

    monkeypatch.setattr(neweigm, "_check_input", refuse)
    monkeypatch.setattr(neweigm, "check_shift", refuse)
    result = jc_d(s, n_mat, via="neweigm")
    assert calls == []
    assert (result.S_prime, result.N_prime) == (expected.S_prime, expected.N_prime)
    assert result.trace.loops >= 1


def test_invalid_input_is_still_rejected_once_at_entry():
    with pytest.raises(PreconditionError) as err:
        jc_d(diag([1, 2]), E(2, 2, 1))
    assert err.value.predicate == "is_upper_triangular"
