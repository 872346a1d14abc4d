"""Homogeneous extremal function Psi for the real Euclidean sphere in C^2.

For the quadratic-form family q_m(x) = x_1^{2m} + x_2^{2m} restricted to
the real sphere S = {x real, |x| = 1}, the degree-2m extremal value at a
complex point z = (z_1, z_2) factors through the roots of t^{2m} = -1:

    Psi_m(z)^{2m} = prod_j (|z_1|^2 - 2 a_j Re(z_1 conj(z_2))
                           + |z_2|^2 + 2 |b_j Im(z_1 conj(z_2))|)

with a_j + i b_j = exp(i pi (2j-1) / (2m)), j = 1..m, the upper-half-plane
roots.  Two independent numerical routes are provided: a Poisson-integral
representation and a direct homogeneous LP.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
from scipy.integrate import quad

from .lp import LinearProgram, solve_lp
from .sets import UnsupportedVariantError


def _roots_upper(m: int) -> np.ndarray:
    j = np.arange(1, m + 1)
    return np.exp(1j * np.pi * (2 * j - 1) / (2 * m))


def psi_product(z1: complex, z2: complex, m: int) -> float:
    """Closed product form of Psi_m(z1, z2) (the 2m-th root of the product)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    s = abs(z1) ** 2 + abs(z2) ** 2
    cross = z1 * np.conj(z2)
    re_c, im_c = cross.real, cross.imag
    log_prod = 0.0
    for zeta in _roots_upper(m):
        a, b = zeta.real, zeta.imag
        term = s - 2.0 * a * re_c + 2.0 * abs(b * im_c)
        if term <= 0.0:
            # only possible through rounding at real points on the sphere
            term = max(term, 1e-300)
        log_prod += math.log(term)
    return math.exp(log_prod / (2 * m))


class QuadratureError(RuntimeError):
    """Raised when the Poisson quadrature cannot reach its tolerance."""


def sphere_boundary_log(m: int):
    """u(t) = log Psi on the real line for the q_m = x1^{2m} + x2^{2m}
    sphere, in the z2/z1 = t chart: u(t) = (1/2m) log(1 + t^{2m})."""

    def u(t: float) -> float:
        return math.log1p(abs(t) ** (2 * m)) / (2 * m)

    return u


def psi_poisson(u, z1: complex, z2: complex, *, tol: float = 1e-6) -> float:
    """Poisson-integral route: Psi(z) = |z1| exp P[u](z2/z1), where P[u]
    is the harmonic extension to the upper half plane of the real-line
    boundary data u(t) = log Psi(1, t).

    `u` must be even and grow at most logarithmically faster than log|t|.
    Requires z1 != 0; points with negative imaginary part are conjugated
    into the upper half plane (Psi is conjugation-symmetric for even u).
    """
    if z1 == 0:
        raise ValueError("psi_poisson requires z1 != 0")
    w = complex(z2) / complex(z1)
    if w.imag < 0:
        w = w.conjugate()
    if w.imag == 0:
        return abs(z1) * math.exp(u(w.real))

    x0, y0 = w.real, w.imag

    def integrand(t: float) -> float:
        return u(t) * y0 / ((t - x0) ** 2 + y0 * y0) / math.pi

    val, err = quad(integrand, -np.inf, np.inf, epsabs=tol * 0.1,
                    epsrel=tol * 0.1, limit=500)
    if err > tol:
        raise QuadratureError(
            f"Poisson integral error estimate {err:.2e} exceeds {tol:.0e}"
        )
    return abs(z1) * math.exp(val)


def psi_homogeneous_lp(
    z1: complex,
    z2: complex,
    n: int,
    *,
    grid_points: int = 192,
    constraint_angles: int = 16,
    objective_angles: int = 24,
) -> float:
    """Direct LP estimate of the degree-n homogeneous extremal value:

        sup { |H(z)|^{1/n} : H homogeneous of degree n,
              |H(x)| <= 1 on the real unit sphere of R^2 }.

    Scales as O(grid_points * angles) constraint rows; n is capped at 12.
    """
    if n < 1 or n > 12:
        raise ValueError("n must be in 1..12")
    phis = np.pi * (np.arange(grid_points) + 0.5) / grid_points
    x1, x2 = np.cos(phis), np.sin(phis)  # +-H covered by the angle grid
    k = np.arange(n + 1)
    vander = (x1[:, None].astype(complex) ** (n - k)[None, :]) * (
        x2[:, None].astype(complex) ** k[None, :]
    )
    thetas = 2.0 * np.pi * np.arange(constraint_angles) / constraint_angles
    blocks = []
    for th in thetas:
        rot = np.exp(1j * th) * vander
        blocks.append(np.hstack([rot.real, -rot.imag]))
    rows = np.vstack(blocks)
    rhs = np.ones(rows.shape[0])
    f = (complex(z1) ** (n - k)) * (complex(z2) ** k)
    fscale = float(np.max(np.abs(f)))
    if fscale == 0.0:
        return 0.0
    f = f / fscale
    best = -np.inf
    for th in np.pi * np.arange(objective_angles) / objective_angles:
        rot = np.exp(1j * th) * f
        for sign in (1.0, -1.0):
            c = sign * np.concatenate([rot.real, -rot.imag])
            sol = solve_lp(LinearProgram(objective=c, rows_ub=rows, rhs_ub=rhs))
            if sol.status.value != "optimal":
                raise UnsupportedVariantError("homogeneous LP failed")
            best = max(best, sol.value)
    return (best * fscale) ** (1.0 / n)
