#!/usr/bin/env python3
"""
Exact Rational Matrices
n×n matrices over the rationals, diagonal bands, triangularity and
nilpotency predicates, minimal polynomial and the diagonalizability test.

A Mat wraps a sparse sympy DomainMatrix over QQ, so arithmetic, inversion
and row reduction run on sympy's exact kernels. Entries come back out as
`fractions.Fraction`; a Mat is never mutated after construction.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Poly, QQ, Rational as SymRational, Symbol
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from errors import InvariantViolation, PreconditionError, StructuralError

Rational = Fraction
RatPoly = Poly

# Indeterminate of every RatPoly in the toolkit.
x = Symbol("x")

_RATIONAL_RE = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def to_rational(value: Union[int, str, Fraction]) -> Fraction:
    """Convert an int, Fraction, QQ element or "p/q" string to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise StructuralError(f"not an exact rational: {value!r}")
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise StructuralError(f"malformed rational: {value!r}")
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise StructuralError(f"zero denominator: {value!r}")
    if QQ.of_type(value):
        return _fraction(value)
    # sympy Integer / Rational
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    raise StructuralError(f"not an exact rational: {value!r}")


def _qq(value):
    c = to_rational(value)
    return QQ(c.numerator, c.denominator)


def _fraction(element) -> Fraction:
    return Fraction(int(QQ.numer(element)), int(QQ.denom(element)))


class Mat:
    """Immutable square matrix over QQ."""

    __slots__ = ("_dm", "_rows")

    def __init__(self, rows: Iterable[Iterable]):
        rows = [list(row) for row in rows]
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise StructuralError("matrix must be square and non-empty")
        dod: Dict[int, Dict[int, object]] = {}
        for i, row in enumerate(rows):
            entries = {j: q for j, q in ((j, _qq(v)) for j, v in enumerate(row)) if q}
            if entries:
                dod[i] = entries
        self._dm = DomainMatrix.from_dod(dod, (n, n), QQ)
        self._rows = None

    @classmethod
    def _wrap(cls, dm: DomainMatrix) -> "Mat":
        obj = object.__new__(cls)
        obj._dm = dm if dm.rep.fmt == "sparse" else dm.to_sparse()
        obj._rows = None
        return obj

    @property
    def n(self) -> int:
        return self._dm.shape[0]

    @property
    def domain_matrix(self) -> DomainMatrix:
        """The backing sparse DomainMatrix over QQ. Treat as read-only."""
        return self._dm

    def nonzero(self) -> Dict[int, Dict[int, object]]:
        """Row -> {column: QQ entry} for the nonzero entries only."""
        return self._dm.to_dod()

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows()[i][j]

    def rows(self) -> Tuple[Tuple[Fraction, ...], ...]:
        if self._rows is None:
            self._rows = tuple(
                tuple(_fraction(v) for v in row) for row in self._dm.to_list()
            )
        return self._rows

    def entries(self) -> Tuple[Fraction, ...]:
        """Row-major flattening; the vector a Mat stands for in subspaces."""
        return tuple(v for row in self.rows() for v in row)

    def is_zero(self) -> bool:
        return not any(self._dm.to_dod().values())

    def _check(self, other: "Mat"):
        if not isinstance(other, Mat):
            raise StructuralError(f"expected Mat, got {type(other).__name__}")
        if other.n != self.n:
            raise StructuralError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat._wrap(self._dm.add(other._dm))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat._wrap(self._dm.sub(other._dm))

    def __neg__(self) -> "Mat":
        return Mat._wrap(self._dm.neg())

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat._wrap(self._dm.matmul(other._dm))

    def __mul__(self, c) -> "Mat":
        return Mat._wrap(self._dm.scalarmul(_qq(c)))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat) or other.n != self.n:
            return False
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash(self.entries())

    def __repr__(self) -> str:
        body = ", ".join(
            "[" + ", ".join(str(v) for v in row) + "]" for row in self.rows()
        )
        return f"Mat([{body}])"


# Constructors


def from_nonzero(dod: Dict[int, Dict[int, object]], n: int) -> Mat:
    """n×n Mat from a row -> {column: QQ entry} map, as returned by Mat.nonzero."""
    return Mat._wrap(DomainMatrix.from_dod(dod, (n, n), QQ))


def zeros(n: int) -> Mat:
    if n < 1:
        raise StructuralError(f"dimension must be positive, got {n}")
    return Mat._wrap(DomainMatrix.zeros((n, n), QQ))


def identity(n: int) -> Mat:
    if n < 1:
        raise StructuralError(f"dimension must be positive, got {n}")
    return Mat._wrap(DomainMatrix.eye(n, QQ))


def diag(values: Sequence) -> Mat:
    n = len(values)
    if n < 1:
        raise StructuralError("diag needs at least one value")
    dod = {}
    for i, value in enumerate(values):
        q = _qq(value)
        if q:
            dod[i] = {i: q}
    return from_nonzero(dod, n)


def elementary(n: int, i: int, j: int) -> Mat:
    """E_ij with zero-based indices: 1 at (i, j), 0 elsewhere."""
    if not (0 <= i < n and 0 <= j < n):
        raise StructuralError(f"index ({i}, {j}) outside {n}x{n}")
    return from_nonzero({i: {j: QQ.one}}, n)


def block_diag(blocks: Sequence[Mat]) -> Mat:
    """Block-diagonal matrix with the given blocks down the diagonal."""
    if not blocks:
        raise StructuralError("block_diag needs at least one block")
    dod: Dict[int, Dict[int, object]] = {}
    offset = 0
    for b in blocks:
        for i, row in b.nonzero().items():
            dod[offset + i] = {offset + j: v for j, v in row.items()}
        offset += b.n
    return from_nonzero(dod, offset)


def trailing_block(a: Mat, start: int) -> Mat:
    """Lower-right block of A from row and column `start` on."""
    if not 0 <= start < a.n:
        raise StructuralError(f"block start {start} outside 0..{a.n - 1}")
    keep = list(range(start, a.n))
    return Mat._wrap(a.domain_matrix.extract(keep, keep))


# Arithmetic


def add(a: Mat, b: Mat) -> Mat:
    return a + b


def sub(a: Mat, b: Mat) -> Mat:
    return a - b


def mul(a: Mat, b: Mat) -> Mat:
    return a @ b


def scale(c, a: Mat) -> Mat:
    return a * c


def bracket(a: Mat, b: Mat) -> Mat:
    """[a, b] = ab - ba."""
    return a @ b - b @ a


def power(a: Mat, k: int) -> Mat:
    if k < 0:
        raise StructuralError("negative matrix power")
    return Mat._wrap(a.domain_matrix ** k)


def inverse(a: Mat) -> Mat:
    try:
        return Mat._wrap(a.domain_matrix.inv())
    except (DMNonInvertibleMatrixError, ZeroDivisionError):
        raise StructuralError("matrix is not invertible")


# Bands and predicates


@dataclass(frozen=True)
class DiagonalBand:
    k: int
    band: Mat


def is_upper_triangular(a: Mat) -> bool:
    return a.domain_matrix.is_upper


def is_strictly_upper(a: Mat) -> bool:
    return all(j > i for i, row in a.nonzero().items() for j in row)


def diagonal_band(a: Mat, k: int) -> DiagonalBand:
    """The k-th band d_k(A): entries (i, j) with j - i = k."""
    if not 0 <= k < a.n:
        raise StructuralError(f"band index {k} outside 0..{a.n - 1}")
    if not is_upper_triangular(a):
        raise PreconditionError("is_upper_triangular")
    dod = {i: {i + k: row[i + k]} for i, row in a.nonzero().items() if i + k in row}
    return DiagonalBand(k, from_nonzero(dod, a.n))


def has_band(a: Mat, k: int) -> bool:
    """True when d_k(A) is nonzero."""
    return any(i + k in row for i, row in a.nonzero().items())


def lowest_band(a: Mat) -> Optional[int]:
    """Least k with d_k(A) != 0, None for the zero matrix."""
    offsets = [j - i for i, row in a.nonzero().items() for j in row if j >= i]
    return min(offsets) if offsets else None


def is_nilpotent(a: Mat) -> bool:
    return power(a, a.n).is_zero()


# Polynomials


def rat_poly(coeffs: Sequence) -> Poly:
    """Build a RatPoly from coefficients listed from degree 0 upwards."""
    terms = [to_rational(c) for c in coeffs]
    return Poly(
        [SymRational(c.numerator, c.denominator) for c in reversed(terms)] or [0],
        x,
        domain=QQ,
    )


def poly_coeffs(p: Poly) -> List[Fraction]:
    """Coefficients from degree 0 upwards, as Fractions."""
    return [to_rational(c) for c in reversed(p.all_coeffs())]


def poly_at(p: Poly, a: Mat) -> Mat:
    """p(A), Horner on the DomainMatrix."""
    coeffs = [QQ.from_sympy(c) for c in p.all_coeffs()]
    return Mat._wrap(a.domain_matrix.eval_poly(coeffs))


def flatten(a: Mat) -> DomainMatrix:
    """A as a 1×n² row vector, row-major."""
    n = a.n
    row = {i * n + j: v for i, r in a.nonzero().items() for j, v in r.items()}
    return DomainMatrix.from_dod({0: row} if row else {}, (1, n * n), QQ)


def unflatten(entries: Dict[int, object], n: int) -> Mat:
    """Inverse of flatten, from the {index: entry} map of a row vector."""
    dod: Dict[int, Dict[int, object]] = {}
    for k, v in entries.items():
        dod.setdefault(k // n, {})[k % n] = v
    return from_nonzero(dod, n)


def minimal_polynomial(a: Mat) -> Poly:
    """Monic m of least degree with m(A) = 0.

    The columns vec(I), vec(A), ..., vec(A^n) are row reduced; the first
    non-pivot column is the first power that depends on the lower ones,
    and its RREF column holds the coefficients of that dependency.
    """
    n = a.n
    cols: Dict[int, Dict[int, object]] = {}
    current = identity(n)
    for k in range(n + 1):
        for i, row in current.nonzero().items():
            for j, v in row.items():
                cols.setdefault(i * n + j, {})[k] = v
        current = current @ a
    reduced, pivots = DomainMatrix.from_dod(cols, (n * n, n + 1), QQ).rref()
    degree = next((k for k in range(n + 1) if k >= len(pivots) or pivots[k] != k), None)
    if degree is None:
        raise InvariantViolation("no dependency among the first n+1 powers")
    dependency = reduced.to_dod()
    lower = [-_fraction(dependency.get(i, {}).get(degree, QQ.zero)) for i in range(degree)]
    return rat_poly(lower + [1])


def is_diagonalizable(a: Mat) -> bool:
    """Square-free minimal polynomial, i.e. gcd(m, m') constant."""
    m = minimal_polynomial(a)
    return m.gcd(m.diff(x)).degree() == 0


# Rational row systems


def rows_to_domain_matrix(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    dod = {}
    for i, row in enumerate(rows):
        entries = {j: q for j, q in ((j, _qq(v)) for j, v in enumerate(row)) if q}
        if entries:
            dod[i] = entries
    return DomainMatrix.from_dod(dod, (len(rows), ncols), QQ)


def kernel(m: DomainMatrix) -> DomainMatrix:
    """Rows spanning {v : M v = 0}, read off the RREF of M."""
    if m.shape[0] == 0:
        return DomainMatrix.eye(m.shape[1], QQ)
    reduced, pivots = m.rref()
    return reduced.nullspace_from_rref(pivots)


def rref(rows: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form; zero rows dropped. Returns (rows, pivots)."""
    if not rows:
        return [], []
    reduced, pivots = rows_to_domain_matrix(rows, len(rows[0])).rref()
    out = [[_fraction(v) for v in row] for row in reduced.to_list()[: len(pivots)]]
    return out, list(pivots)


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of {v : row·v = 0 for every row}."""
    basis = kernel(rows_to_domain_matrix(rows, ncols))
    return [[_fraction(v) for v in row] for row in basis.to_list()]
