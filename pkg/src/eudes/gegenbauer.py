"""Gegenbauer kernels Q_{n,l} with Q_l(1) = dim Harm_l(R^n), and sphere moments."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Sequence

from .scalar import Quad, Scalar, as_scalar

__all__ = [
    "GegenbauerTable", "harm_dim", "gegenbauer_coeffs", "gegenbauer_table",
    "gegenbauer_eval", "sphere_moment", "double_factorial",
]


def harm_dim(n: int, l: int) -> int:
    """Dimension of the space of harmonic homogeneous polynomials of degree l on R^n."""
    if n < 2 or l < 0:
        raise ValueError("harm_dim needs n >= 2 and l >= 0")
    lower = comb(n + l - 3, l - 2) if l >= 2 else 0
    return comb(n + l - 1, l) - lower


def _mul_x(c: list[Fraction]) -> list[Fraction]:
    return [Fraction(0)] + c


@lru_cache(maxsize=None)
def _unit_polys(n: int, max_degree: int) -> tuple[tuple[Fraction, ...], ...]:
    # P_l with P_l(1) = 1:  (l+n-2) P_{l+1} = (2l+n-2) x P_l - l P_{l-1}
    polys = [[Fraction(1)], [Fraction(0), Fraction(1)]]
    for l in range(1, max_degree):
        xp = _mul_x(polys[l])
        prev = polys[l - 1] + [Fraction(0)] * (len(xp) - len(polys[l - 1]))
        den = l + n - 2
        polys.append([((2 * l + n - 2) * a - l * b) / den for a, b in zip(xp, prev)])
    return tuple(tuple(p) for p in polys[: max_degree + 1])


def gegenbauer_coeffs(n: int, l: int) -> list[Fraction]:
    """Monomial coefficients (constant term first) of Q_{n,l}."""
    if n < 2 or l < 0:
        raise ValueError("gegenbauer_coeffs needs n >= 2 and l >= 0")
    h = harm_dim(n, l)
    return [h * c for c in _unit_polys(n, max(l, 1))[l]]


@dataclass(frozen=True)
class GegenbauerTable:
    n: int
    max_degree: int
    coeffs: tuple[tuple[Fraction, ...], ...]
    h: tuple[int, ...]

    def __call__(self, l: int, x) -> Scalar:
        return gegenbauer_eval(self, l, x)


@lru_cache(maxsize=None)
def gegenbauer_table(n: int, max_degree: int = 6) -> GegenbauerTable:
    coeffs = tuple(tuple(gegenbauer_coeffs(n, l)) for l in range(max_degree + 1))
    h = tuple(harm_dim(n, l) for l in range(max_degree + 1))
    return GegenbauerTable(n, max_degree, coeffs, h)


def gegenbauer_eval(table: GegenbauerTable, l: int, x) -> Scalar:
    if l > table.max_degree:
        raise ValueError(f"degree {l} exceeds table maximum {table.max_degree}")
    x = as_scalar(x)
    acc: Scalar = Quad(0)
    for c in reversed(table.coeffs[l]):
        acc = acc * x + c
    return acc


def double_factorial(m: int) -> int:
    if m <= 0:
        return 1
    return prod(range(m, 0, -2))


def sphere_moment(exponents: Sequence[int]) -> Fraction:
    """Average of prod x_i^{a_i} over the unit sphere S^{n-1}, n = len(exponents)."""
    n = len(exponents)
    if n < 2:
        raise ValueError("sphere_moment needs n >= 2")
    if any(a < 0 for a in exponents):
        raise ValueError("exponents must be nonnegative")
    if any(a % 2 for a in exponents):
        return Fraction(0)
    total = sum(exponents)
    num = prod(double_factorial(a - 1) for a in exponents)
    den = prod(range(n, n + total - 1, 2)) if total else 1
    return Fraction(num, den)
