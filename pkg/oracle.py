#!/usr/bin/env python3
"""
Classical Jordan-Chevalley Oracle
Independent JCD of any rational matrix: square-free part of the minimal
polynomial plus Newton iteration in Q[x]/(m). Used as ground truth.
"""

from typing import Tuple

from sympy import Poly, QQ

from errors import InvariantViolation, PreconditionError
from ratmat import Mat, RatPoly, minimal_polynomial, poly_at, x, zeros


def squarefree_part(m: RatPoly) -> RatPoly:
    """m / gcd(m, m'), monic: same roots, each simple."""
    if m.is_zero:
        raise PreconditionError("nonzero_polynomial", "zero polynomial has no square-free part")
    return m.exquo(m.gcd(m.diff(x))).monic()


def _newton(p: RatPoly, m: RatPoly) -> Tuple[RatPoly, int]:
    """Root s of p in Q[x]/(m) with s - x nilpotent, by Newton's method
    s <- s - p(s) / p'(s) mod m."""
    s = Poly(x, x, domain=QQ)
    dp = p.diff(x)
    limit = m.degree().bit_length() + 1
    steps = 0
    while not p.compose(s).rem(m).is_zero:
        if steps >= limit:
            raise InvariantViolation("Newton iteration did not converge")
        inv = dp.compose(s).rem(m).invert(m)
        s = (s - p.compose(s) * inv).rem(m)
        steps += 1
    return s, steps


def _semisimple_poly(a: Mat) -> Tuple[RatPoly, int]:
    m = minimal_polynomial(a)
    p = squarefree_part(m)
    if p.degree() == m.degree():
        return Poly(x, x, domain=QQ), 0
    return _newton(p, m)


def chevalley_jcd(a: Mat) -> Tuple[Mat, Mat]:
    """(S', N') with S' semisimple, N' nilpotent, [S', N'] = 0, S' + N' = A,
    S' a polynomial in A."""
    s_poly, steps = _semisimple_poly(a)
    if steps == 0:
        return a, zeros(a.n)
    s_prime = poly_at(s_poly, a)
    return s_prime, a - s_prime


def newton_steps(a: Mat) -> int:
    """Number of Newton iterations chevalley_jcd takes on A."""
    return _semisimple_poly(a)[1]
