#!/usr/bin/env python3
"""
Lie Algebras of Matrices
Linear spans in canonical echelon form, Lie closure, derived series and
solvability, membership, the direct-sum representation and constructive
triangularization of solvable algebras with rational spectra.
"""

from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from errors import PreconditionError, StructuralError, UnsupportedFieldError
from ratmat import (
    Mat,
    block_diag,
    bracket,
    flatten,
    from_nonzero,
    identity,
    inverse,
    is_upper_triangular,
    kernel,
    minimal_polynomial,
    trailing_block,
    unflatten,
)


class MatSubspace:
    """Subspace of n×n matrices, stored as the reduced row echelon form of
    the flattened spanning matrices. Equal subspaces have equal bases."""

    def __init__(self, n: int):
        if n < 1:
            raise StructuralError(f"dimension must be positive, got {n}")
        self.n = n
        self._echelon = DomainMatrix.zeros((0, n * n), QQ)
        self._pivots: Tuple[int, ...] = ()

    def _residual(self, m: Mat) -> DomainMatrix:
        if m.n != self.n:
            raise StructuralError(f"dimension mismatch: {m.n} vs {self.n}")
        vec = flatten(m)
        if not self._pivots:
            return vec
        # RREF rows are unit vectors on the pivot columns
        coeffs = vec.extract([0], list(self._pivots))
        return vec - coeffs * self._echelon

    def add(self, m: Mat) -> bool:
        """Extend the span by m. Returns False when m was already inside."""
        residual = self._residual(m)
        if residual.is_zero_matrix:
            return False
        echelon, pivots = self._echelon.vstack(residual).rref()
        self._echelon, self._pivots = echelon, tuple(pivots)
        return True

    @property
    def dim(self) -> int:
        return len(self._pivots)

    @property
    def basis(self) -> List[Mat]:
        rows = self._echelon.to_dod()
        return [unflatten(rows.get(i, {}), self.n) for i in range(self.dim)]

    def contains(self, m: Mat) -> bool:
        return self._residual(m).is_zero_matrix

    def is_subspace_of(self, other: "MatSubspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatSubspace)
            and self.n == other.n
            and self._pivots == other._pivots
            and (self._echelon - other._echelon).is_zero_matrix
        )

    def __repr__(self) -> str:
        return f"MatSubspace(n={self.n}, dim={self.dim})"


def span(mats: Sequence[Mat], n: Optional[int] = None) -> MatSubspace:
    """Canonical span; `n` is required when `mats` is empty."""
    if not mats and n is None:
        raise StructuralError("span of no matrices needs the ambient dimension")
    space = MatSubspace(n if n is not None else mats[0].n)
    for m in mats:
        space.add(m)
    return space


def contains(space: MatSubspace, m: Mat) -> bool:
    return space.contains(m)


def lie_closure(gens: Sequence[Mat], n: Optional[int] = None) -> MatSubspace:
    """Smallest bracket-closed subspace containing gens. Each round brackets
    only the newly added matrices against everything seen so far."""
    space = span([], n if n is not None else (gens[0].n if gens else None))
    members: List[Mat] = []
    frontier: List[Mat] = []
    for g in gens:
        if space.add(g):
            members.append(g)
            frontier.append(g)
    while frontier:
        fresh = []
        for a in frontier:
            for b in members:
                c = bracket(a, b)
                if space.add(c):
                    fresh.append(c)
        members.extend(fresh)
        frontier = fresh
    return space


def bracket_space(v: MatSubspace, w: MatSubspace) -> MatSubspace:
    """[V, W]: span of brackets of basis pairs."""
    result = MatSubspace(v.n)
    left, right = v.basis, w.basis
    for i, a in enumerate(left):
        # [b, a] = -[a, b]: for V = W each unordered pair once
        for b in right[i + 1:] if v is w else right:
            result.add(bracket(a, b))
    return result


def is_bracket_closed(v: MatSubspace) -> bool:
    return bracket_space(v, v).is_subspace_of(v)


def derived_series(v: MatSubspace) -> List[MatSubspace]:
    """V ⊇ [V, V] ⊇ ... until the series stops shrinking."""
    if not is_bracket_closed(v):
        raise PreconditionError("bracket_closed", "subspace is not a Lie subalgebra")
    series = [v]
    while series[-1].dim:
        nxt = bracket_space(series[-1], series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def is_solvable(v: MatSubspace) -> bool:
    return derived_series(v)[-1].dim == 0


def direct_sum_rep(m: Mat, copies: int = 2) -> Mat:
    """Block-diagonal M ⊕ ... ⊕ M."""
    if copies < 1:
        raise StructuralError("copies must be at least 1")
    return block_diag([m] * copies)


def conjugate(p: Mat, m: Mat) -> Mat:
    """P^-1 M P."""
    return inverse(p) @ m @ p


# Triangularization


def _common_eigenvector(basis: List[Mat], derived: List[Mat], n: int) -> Dict[int, object]:
    """A common eigenvector of a solvable algebra with the given basis, as
    its nonzero {row: entry} map.

    The derived algebra acts nilpotently, so its common kernel U is nonzero
    and invariant; on U the algebra acts by commuting operators, whose joint
    eigenspaces are refined one basis element at a time.
    """
    if derived:
        stacked = derived[0].domain_matrix.vstack(*(d.domain_matrix for d in derived[1:]))
        space = kernel(stacked).transpose()
    else:
        space = DomainMatrix.eye(n, QQ)
    if space.shape[1] == 0:
        raise PreconditionError("is_solvable", "derived algebra has no common kernel")
    for b in basis:
        image = b.domain_matrix * space
        roots = minimal_polynomial(b).ground_roots()
        for lam in sorted(QQ.from_sympy(r) for r in roots):
            # (B - lam) W a = 0 for coordinates a of W
            coords = kernel(image - space.scalarmul(lam))
            if coords.shape[0]:
                space = space * coords.transpose()
                image = b.domain_matrix * space
                break
        else:
            raise UnsupportedFieldError(
                "rational_spectrum", "no rational common eigenvalue; an extension field is needed"
            )
    return {i: row[0] for i, row in space.to_dod().items() if 0 in row}


def _triangularizing_basis(gens: List[Mat]) -> Mat:
    n = gens[0].n
    if n == 1:
        return identity(1)
    closure = lie_closure(gens)
    if not is_solvable(closure):
        raise PreconditionError("is_solvable", "generated Lie algebra is not solvable")
    basis = closure.basis
    derived = bracket_space(closure, closure).basis
    v = _common_eigenvector(basis, derived, n)
    lead = min(v)
    # columns: v, then the unit vectors other than e_lead
    dod = {i: {0: value} for i, value in v.items()}
    others = [j for j in range(n) if j != lead]
    for c, j in enumerate(others, start=1):
        dod.setdefault(j, {})[c] = QQ.one
    p = from_nonzero(dod, n)
    p_inv = inverse(p)
    # lower-right blocks carry the action on the quotient by span(v)
    blocks = [trailing_block(p_inv @ g @ p, 1) for g in basis]
    q = _triangularizing_basis(blocks)
    return p @ block_diag([identity(1), q])


def triangularize(gens: Sequence[Mat]) -> Tuple[Mat, List[Mat]]:
    """(P, [P^-1 g P]) with every element of the Lie closure of gens upper
    triangular after conjugation by P."""
    gens = list(gens)
    if not gens:
        raise StructuralError("triangularize needs at least one generator")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise StructuralError("generators differ in dimension")
    if all(is_upper_triangular(g) for g in gens):
        return identity(n), gens
    p = _triangularizing_basis(gens)
    return p, [conjugate(p, g) for g in gens]
