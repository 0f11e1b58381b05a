#!/usr/bin/env python3
"""
Eigenmatrix Decomposition
The adjoint operator ad(S), the splitting of N into eigenmatrices of ad(S),
the exponential shift that turns an eigenmatrix of ad(S) into one of
ad(S - X), and the Collect / juxtaposition calculus on eigenmatrix sequences.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Sequence, Tuple

from errors import PreconditionError, StructuralError
from ratmat import (
    Mat,
    bracket,
    inverse,
    is_diagonalizable,
    is_nilpotent,
    is_strictly_upper,
    is_upper_triangular,
    to_rational,
    zeros,
)


@dataclass(frozen=True)
class EigPair:
    matrix: Mat
    eigenvalue: Fraction

    def is_eigen_for(self, s: Mat) -> bool:
        """[S, M] = eigenvalue * M."""
        return bracket(s, self.matrix) == self.matrix * self.eigenvalue


@dataclass(frozen=True)
class EigSeq:
    """Ordered sequence of (matrix, eigenvalue) pairs."""

    pairs: Tuple[EigPair, ...] = ()

    @classmethod
    def of(cls, *pairs) -> "EigSeq":
        """EigSeq.of((M, 1), (K, 2)) with eigenvalues coerced to Fractions."""
        return cls(tuple(EigPair(m, to_rational(v)) for m, v in pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[EigPair]:
        return iter(self.pairs)

    def __getitem__(self, i: int) -> EigPair:
        return self.pairs[i]

    def matrices(self) -> List[Mat]:
        return [p.matrix for p in self.pairs]

    def values(self) -> List[Fraction]:
        return [p.eigenvalue for p in self.pairs]

    def total(self, n: int) -> Mat:
        """Sum of all matrices (the zero matrix of size n when empty)."""
        result = zeros(n)
        for p in self.pairs:
            result = result + p.matrix
        return result

    def is_eigen_for(self, s: Mat) -> bool:
        return all(p.is_eigen_for(s) for p in self.pairs)

    def without(self, index: int) -> "EigSeq":
        return EigSeq(self.pairs[:index] + self.pairs[index + 1:])


def ad_apply(s: Mat, y: Mat) -> Mat:
    """ad(S)(Y) = [S, Y]."""
    return bracket(s, y)


def adjoint_spectrum(s: Mat) -> List[Fraction]:
    """Sorted distinct d_i(S) - d_j(S), i < j: the eigenvalues ad(S) can
    take on strictly upper triangular matrices."""
    d = [s[i, i] for i in range(s.n)]
    return sorted({d[i] - d[j] for i in range(s.n) for j in range(i + 1, s.n)})


def _check_decomp_input(s: Mat, n_mat: Mat):
    if s.n != n_mat.n:
        raise StructuralError(f"dimension mismatch: {s.n} vs {n_mat.n}")
    if not (is_upper_triangular(s) and is_upper_triangular(n_mat)):
        raise PreconditionError("is_upper_triangular")
    if not is_diagonalizable(s):
        raise PreconditionError("is_diagonalizable", "S is not diagonalizable")
    if not is_nilpotent(n_mat):
        raise PreconditionError("is_nilpotent", "N is not nilpotent")


def _krylov(s: Mat, n_mat: Mat, length: int) -> List[Mat]:
    """N, ad(S)N, ..., ad(S)^(length-1) N."""
    seq = [n_mat]
    for _ in range(length - 1):
        seq.append(ad_apply(s, seq[-1]))
    return seq


def _lagrange_coeffs(nodes: Sequence[Fraction], index: int) -> List[Fraction]:
    """Coefficients (degree 0 upwards) of prod_{k != index}(t - x_k)/(x_i - x_k)."""
    coeffs = [Fraction(1)]
    xi = nodes[index]
    for k, xk in enumerate(nodes):
        if k == index:
            continue
        denom = xi - xk
        shifted = [Fraction(0)] + coeffs
        scaled = [c * xk for c in coeffs] + [Fraction(0)]
        coeffs = [(a - b) / denom for a, b in zip(shifted, scaled)]
    return coeffs


def _combine(coeffs: Sequence[Fraction], mats: Sequence[Mat]) -> Mat:
    result = zeros(mats[0].n)
    for c, m in zip(coeffs, mats):
        if c:
            result = result + m * c
    return result


def decomp(s: Mat, n_mat: Mat) -> EigSeq:
    """Split N into eigenmatrices of ad(S) with pairwise distinct
    eigenvalues, via the Lagrange spectral projectors of ad(S)."""
    _check_decomp_input(s, n_mat)
    if n_mat.is_zero():
        return EigSeq()
    spectrum = adjoint_spectrum(s)
    krylov = _krylov(s, n_mat, len(spectrum))
    pairs = []
    for idx, lam in enumerate(spectrum):
        part = _combine(_lagrange_coeffs(spectrum, idx), krylov)
        if not part.is_zero():
            pairs.append(EigPair(part, lam))
    return EigSeq(tuple(pairs))


def decomp_vandermonde(s: Mat, n_mat: Mat) -> EigSeq:
    """Same result as decomp, obtained by inverting the Vandermonde system
    ad(S)^k(N) = sum_l l^k N_l, k = 0..m-1."""
    _check_decomp_input(s, n_mat)
    if n_mat.is_zero():
        return EigSeq()
    spectrum = adjoint_spectrum(s)
    krylov = _krylov(s, n_mat, len(spectrum))
    vander = Mat([[lam ** k for lam in spectrum] for k in range(len(spectrum))])
    solve = inverse(vander)
    pairs = []
    for idx, lam in enumerate(spectrum):
        part = _combine(solve.rows()[idx], krylov)
        if not part.is_zero():
            pairs.append(EigPair(part, lam))
    return EigSeq(tuple(pairs))


def shift_terms(x_mat: Mat, mu: Fraction, m: Mat) -> List[Mat]:
    """Nonzero terms mu^-j / j! * ad(X)^j(M), j = 0, 1, ...; stops at the
    first vanishing power (at the latest j = n - 1 inside the triangular
    algebra)."""
    terms = []
    current = m
    for j in range(m.n):
        if current.is_zero():
            break
        terms.append(current * (Fraction(1) / (mu ** j * factorial(j))))
        current = ad_apply(x_mat, current)
    return terms


def check_shift(x_mat: Mat, mu: Fraction, s: Mat):
    """Preconditions on (X, mu) shared by exp_shift and new_eig_m."""
    if mu == 0:
        raise PreconditionError("mu_nonzero", "mu must be nonzero")
    if not is_strictly_upper(x_mat):
        raise PreconditionError("is_strictly_upper", "X must be strictly upper triangular")
    if bracket(s, x_mat) != x_mat * mu:
        raise PreconditionError("x_is_mu_eigenmatrix", "[S, X] != mu X")


def exp_shift(x_mat: Mat, mu, pair: EigPair, s: Mat) -> EigPair:
    """exp(mu^-1 ad(X))(M), an eigenmatrix of ad(S - X) with M's eigenvalue."""
    mu = to_rational(mu)
    check_shift(x_mat, mu, s)
    if not pair.is_eigen_for(s):
        raise PreconditionError("pair_is_eigenmatrix", "[S, M] != lambda M")
    terms = shift_terms(x_mat, mu, pair.matrix)
    total = zeros(s.n)
    for t in terms:
        total = total + t
    return EigPair(total, pair.eigenvalue)


def collect(seq: EigSeq) -> EigSeq:
    """Merge pairs sharing an eigenvalue, drop zero sums, sort ascending."""
    groups: Dict[Fraction, Mat] = {}
    for p in seq:
        if p.eigenvalue in groups:
            groups[p.eigenvalue] = groups[p.eigenvalue] + p.matrix
        else:
            groups[p.eigenvalue] = p.matrix
    return EigSeq(
        tuple(
            EigPair(m, lam)
            for lam, m in sorted(groups.items(), key=lambda item: item[0])
            if not m.is_zero()
        )
    )


def juxtapose(a: EigSeq, b: EigSeq) -> EigSeq:
    """a ∨ b."""
    return EigSeq(a.pairs + b.pairs)
