"""Polynomials in monomial or Chebyshev basis, plus the scalar helpers
h, g, g-hat and log-domain factorials used by the closed-form formulas.

Monomial coefficients above degree 30 are rejected: double precision
conditioning of the monomial basis is not trusted beyond that, and every
higher-degree computation in this package works in the Chebyshev basis or
in the log domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from numpy.polynomial import chebyshev as _cheb
from numpy.polynomial import polynomial as _poly

MONOMIAL_DEGREE_CAP = 30


class Basis(Enum):
    MONOMIAL = "monomial"
    CHEBYSHEV = "chebyshev"


def _trim(coeffs: np.ndarray) -> np.ndarray:
    """Drop trailing (near-)zero coefficients, keeping at least one entry."""
    nz = np.nonzero(coeffs)[0]
    if len(nz) == 0:
        return coeffs[:1]
    return coeffs[: nz[-1] + 1]


@dataclass(frozen=True)
class Polynomial:
    """Immutable polynomial; ``coeffs[j]`` multiplies basis element j."""

    coeffs: np.ndarray
    basis: Basis = Basis.MONOMIAL

    def __post_init__(self) -> None:
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        c = _trim(c)
        object.__setattr__(self, "coeffs", c)
        if self.basis is Basis.MONOMIAL and self.degree > MONOMIAL_DEGREE_CAP:
            raise ValueError(
                f"monomial basis capped at degree {MONOMIAL_DEGREE_CAP}, "
                f"got {self.degree}"
            )

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return bool(np.all(self.coeffs == 0))

    def to_basis(self, basis: Basis) -> "Polynomial":
        if basis is self.basis:
            return self
        if self.degree > MONOMIAL_DEGREE_CAP:
            raise ValueError(
                f"basis conversion capped at degree {MONOMIAL_DEGREE_CAP}"
            )
        if basis is Basis.MONOMIAL:
            return Polynomial(_cheb.cheb2poly(self.coeffs), Basis.MONOMIAL)
        return Polynomial(_cheb.poly2cheb(self.coeffs), Basis.CHEBYSHEV)

    def __call__(self, z: complex | np.ndarray) -> complex | np.ndarray:
        return eval_poly(self, z)


def from_monomial(coeffs: Sequence[complex]) -> Polynomial:
    return Polynomial(np.asarray(coeffs, dtype=complex), Basis.MONOMIAL)


def from_chebyshev(coeffs: Sequence[complex]) -> Polynomial:
    return Polynomial(np.asarray(coeffs, dtype=complex), Basis.CHEBYSHEV)


def eval_poly(p: Polynomial, z):
    """Evaluate p at z (Horner for monomial, Clenshaw for Chebyshev)."""
    if p.basis is Basis.MONOMIAL:
        return _poly.polyval(z, p.coeffs)
    return _cheb.chebval(z, p.coeffs)


def derivative(p: Polynomial, k: int = 1) -> Polynomial:
    """k-th derivative; k beyond the degree yields the zero polynomial."""
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    if k == 0:
        return p
    if k > p.degree:
        return Polynomial(np.zeros(1), p.basis)
    if p.basis is Basis.MONOMIAL:
        return Polynomial(_poly.polyder(p.coeffs, k), Basis.MONOMIAL)
    return Polynomial(_cheb.chebder(p.coeffs, k), Basis.CHEBYSHEV)


def chebyshev_T(n: int) -> Polynomial:
    """Chebyshev polynomial of the first kind T_n, in Chebyshev basis."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    c = np.zeros(n + 1, dtype=complex)
    c[n] = 1.0
    return Polynomial(c, Basis.CHEBYSHEV)


def chebyshev_deriv_at_one_log(n: int, k: int) -> float:
    """log T_n^{(k)}(1) = sum_{j<k} [log(n^2 - j^2) - log(2j + 1)].

    The classical V. Markov closed form; valid for 0 <= k <= n, n >= 1.
    """
    if not (0 <= k <= n):
        raise ValueError("need 0 <= k <= n")
    if k == 0:
        return 0.0
    return float(
        sum(math.log(n * n - j * j) - math.log(2 * j + 1) for j in range(k))
    )


def chebyshev_deriv_at_one(n: int, k: int) -> float:
    """T_n^{(k)}(1), exact product form (overflows only for very large n)."""
    if not (0 <= k <= n):
        raise ValueError("need 0 <= k <= n")
    val = 1.0
    for j in range(k):
        val *= (n * n - j * j) / (2 * j + 1)
    return val


# -- scalar helpers -----------------------------------------------------------

def h(t: float) -> float:
    """h(t) = t + sqrt(t^2 - 1), the inverse of g on [1, inf)."""
    if t < 1.0:
        raise ValueError(f"h requires t >= 1, got {t}")
    return t + math.sqrt(t * t - 1.0)


def g(t: float) -> float:
    """g(t) = (t + 1/t) / 2."""
    if t < 1.0:
        raise ValueError(f"g requires t >= 1, got {t}")
    return 0.5 * (t + 1.0 / t)


def g_hat(t: float) -> float:
    """g-hat(t) = (t - 1/t) / 2, so that g^2 - g_hat^2 = 1."""
    if t < 1.0:
        raise ValueError(f"g_hat requires t >= 1, got {t}")
    return 0.5 * (t - 1.0 / t)


def log_h(t: float) -> float:
    return math.log(h(t))


_EXACT_FACT_MAX = 20


def log_factorial(n: int) -> float:
    """log n!; exact table for n <= 20, summation of logs beyond."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= _EXACT_FACT_MAX:
        return math.log(math.factorial(n))
    return float(np.log(np.arange(2, n + 1, dtype=float)).sum())


def log_binomial(n: int, k: int) -> float:
    """log C(n, k)."""
    if not (0 <= k <= n):
        raise ValueError("need 0 <= k <= n")
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k)
