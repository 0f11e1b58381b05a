#!/usr/bin/env python3
"""
Lie Algebra Tests
Spans, closure, derived series, membership, representations and
triangularization.
"""

import pytest
from hypothesis import given, settings, strategies as st

from errors import PreconditionError, StructuralError, UnsupportedFieldError
from gen import GenConfig, gen_instance
from jcd import jc_d
from liealg import (
    MatSubspace,
    bracket_space,
    conjugate,
    contains,
    derived_series,
    direct_sum_rep,
    is_bracket_closed,
    is_solvable,
    lie_closure,
    span,
    triangularize,
)
from ratmat import (
    Mat,
    bracket,
    diag,
    elementary,
    identity,
    inverse,
    is_upper_triangular,
    rref,
    zeros,
)


def E(n, i, j):
    return elementary(n, i - 1, j - 1)


def upper_triangular_algebra(n):
    return span([E(n, i, j) for i in range(1, n + 1) for j in range(i, n + 1)])


def test_span_is_canonical():
    a = span([E(2, 1, 2), E(2, 1, 1)])
    b = span([E(2, 1, 1) + E(2, 1, 2), E(2, 1, 1) * 3, zeros(2)])
    assert a == b
    assert a.dim == 2


def test_span_membership():
    v = span([E(2, 1, 1), E(2, 2, 2)])
    assert contains(v, diag([3, -1]))
    assert not contains(v, E(2, 1, 2))


def test_empty_span_needs_dimension():
    with pytest.raises(StructuralError):
        span([])
    assert span([], 3).dim == 0


def test_subspace_dimension_mismatch():
    with pytest.raises(StructuralError):
        MatSubspace(2).add(identity(3))


def test_closure_of_sl2_generators():
    closure = lie_closure([E(2, 1, 2), E(2, 2, 1)])
    assert closure.dim == 3
    assert contains(closure, E(2, 1, 1) - E(2, 2, 2))
    assert not is_solvable(closure)


def test_closure_of_empty_generator_list():
    assert lie_closure([], 2).dim == 0


def test_derived_series_of_upper_triangular_algebra():
    series = derived_series(upper_triangular_algebra(2))
    assert [v.dim for v in series] == [3, 1, 0]
    assert is_solvable(series[0])


def test_derived_series_of_three_by_three_upper_triangular():
    series = derived_series(upper_triangular_algebra(3))
    assert [v.dim for v in series] == [6, 3, 1, 0]


def test_derived_series_requires_subalgebra():
    with pytest.raises(PreconditionError) as err:
        derived_series(span([E(2, 1, 2), E(2, 2, 1)]))
    assert err.value.predicate == "bracket_closed"


def test_bracket_space():
    v = upper_triangular_algebra(2)
    assert bracket_space(v, v) == span([E(2, 1, 2)])
    assert is_bracket_closed(v)


def test_direct_sum_rep_is_a_homomorphism():
    a = Mat([[1, 2], [0, 3]])
    b = E(2, 1, 2)
    assert direct_sum_rep(a).n == 4
    assert direct_sum_rep(bracket(a, b)) == bracket(direct_sum_rep(a), direct_sum_rep(b))
    assert direct_sum_rep(a, 1) == a
    with pytest.raises(StructuralError):
        direct_sum_rep(a, 0)


def test_triangularize_upper_triangular_is_identity():
    p, images = triangularize([diag([1, 2]), E(2, 1, 2)])
    assert p == identity(2)
    assert images == [diag([1, 2]), E(2, 1, 2)]


def test_triangularize_lower_triangular_pair():
    gens = [diag([1, 2]), E(2, 2, 1)]
    p, images = triangularize(gens)
    assert all(is_upper_triangular(m) for m in images)
    assert [conjugate(p, g) for g in gens] == images


def test_triangularize_conjugated_algebra():
    u = Mat([[1, 0, 0], [2, 1, 0], [-1, 3, 1]])
    u_inv = Mat([[1, 0, 0], [-2, 1, 0], [7, -3, 1]])
    assert u @ u_inv == identity(3)
    gens = [u @ diag([1, 2, 2]) @ u_inv, u @ (E(3, 1, 2) + E(3, 2, 3)) @ u_inv]
    p, images = triangularize(gens)
    assert all(is_upper_triangular(m) for m in images)


def test_triangularize_rejects_non_solvable():
    with pytest.raises(PreconditionError) as err:
        triangularize([E(2, 1, 2), E(2, 2, 1)])
    assert err.value.predicate == "is_solvable"


def test_triangularize_needs_rational_eigenvalues():
    with pytest.raises(UnsupportedFieldError):
        triangularize([Mat([[0, 2], [1, 0]])])


@settings(max_examples=15, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=3),
    seed=st.integers(min_value=0, max_value=10_000),
    multiplicity=st.booleans(),
)
def test_jcd_outputs_stay_in_generated_algebra(n, seed, multiplicity):
    s, n_mat = gen_instance(GenConfig(n=n, seed=seed, multiplicity=multiplicity))
    result = jc_d(s, n_mat)
    closure = lie_closure([s, n_mat])
    assert contains(closure, result.S_prime)
    assert contains(closure, result.N_prime)
    assert is_solvable(closure)


def test_span_dimension_matches_rank():
    mats = [E(3, 1, 2) + E(3, 2, 3), E(3, 1, 2) * 2, E(3, 2, 3), diag([1, 0, -1]), zeros(3)]
    v = span(mats)
    reduced, pivots = rref([m.entries() for m in mats])
    assert v.dim == len(pivots) == 3
    assert [b.entries() for b in v.basis] == [tuple(row) for row in reduced]
    assert not contains(v, E(3, 1, 3))


@settings(max_examples=20, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=4),
    seed=st.integers(min_value=0, max_value=10_000),
    multiplicity=st.booleans(),
)
def test_lie_closure_is_idempotent_and_monotone(n, seed, multiplicity):
    s, n_mat = gen_instance(GenConfig(n=n, seed=seed, multiplicity=multiplicity))
    closure = lie_closure([s, n_mat])
    assert lie_closure(closure.basis, n) == closure
    assert span([s, n_mat]).is_subspace_of(closure)
    assert lie_closure([s], n).is_subspace_of(closure)
    assert lie_closure([n_mat], n).is_subspace_of(closure)
    wider = lie_closure([s, n_mat, E(n, 1, n)])
    assert closure.is_subspace_of(wider)
    assert is_bracket_closed(closure)


U3 = Mat([[1, 0, 0], [2, 1, 0], [-1, 3, 1]])
U3_INV = Mat([[1, 0, 0], [-2, 1, 0], [7, -3, 1]])


@settings(max_examples=10, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=10_000),
    multiplicity=st.booleans(),
)
def test_triangularize_maps_jcd_components_by_conjugation(seed, multiplicity):
    s, n_mat = gen_instance(GenConfig(n=3, seed=seed, multiplicity=multiplicity))
    gens = [U3 @ s @ U3_INV, U3 @ n_mat @ U3_INV]
    p, (s_img, n_img) = triangularize(gens)
    assert is_upper_triangular(s_img) and is_upper_triangular(n_img)
    upstairs = jc_d(s_img, n_img)
    original = jc_d(s, n_mat)
    p_inv = inverse(p)
    # components of S + N, carried to the conjugated frame and back
    assert p @ upstairs.S_prime @ p_inv == U3 @ original.S_prime @ U3_INV
    assert p @ upstairs.N_prime @ p_inv == U3 @ original.N_prime @ U3_INV
    assert conjugate(p, U3 @ original.S_prime @ U3_INV) == upstairs.S_prime
