"""Scaled radial extremal functionals and their constants.

All functionals here are built from the limit radial profile
rho(r) = log phi(E, r) (phi = sup_n phi_n^{1/n}):

*  P_m(E, r)   = sup_n phi(r / n^m)^n
*  B_m(E, r)   = sup_{n,k} phi(r (k/n)^m)^{n/k}
*  B*_m(E, r)  = sup_{s>0} phi(r s^m)^{1/s} = exp(A_m r^{1/m})
*  A_m = B(1/m),  B(gamma) = sup_r rho(r) / r^gamma
*  H_gamma(E)  = 1 / (B(gamma) gamma e)^{1/gamma}
*  C_P(E,m) = sup_t t / P_m(E,t);  C_B(E,m) = H_{1/m}(E)
*  R_k(q, r)   = sup_n phi(r (k!/M_n(q,k))^{1/k})^{n/k}

Profiles use the closed-form registry when a closed phi exists;
otherwise phi is approximated from below by phi_n^{1/n} at a fixed
degree and the profile is flagged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .engine import MarkovTable
from .poly import log_factorial
from .sets import CompactSet, closed_log_phi, has_closed_phi, set_to_dict

SUP_GRID_POINTS = 961


def _exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf
SUP_GRID_LO = 1e-6
SUP_GRID_HI = 1e6


class SupResult(NamedTuple):
    """Value of a truncated/discretized supremum plus diagnostics."""

    value: float
    arg: tuple
    truncation: tuple
    flagged: bool = False

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class RadialProfile:
    """rho(r) = log phi(E, r), vectorized over r >= 0."""

    name: str
    rho: Callable[[np.ndarray], np.ndarray]
    closed: bool
    source: dict

    def phi(self, r):
        return np.exp(self.rho(np.asarray(r, dtype=float)))

    def rho_scalar(self, r: float) -> float:
        return float(self.rho(np.array([r]))[0])


def profile_for(cs: CompactSet, *, nmax: int = 32) -> RadialProfile:
    """Radial profile of a compact set; closed form when registered, else
    the flagged under-estimate phi_nmax^{1/nmax} (phi_n^{1/n} increases
    to phi)."""
    if has_closed_phi(cs):
        return RadialProfile(
            type(cs).__name__,
            lambda r: closed_log_phi(cs, r),
            True,
            set_to_dict(cs),
        )

    from .engine import phi_n_radial

    def rho(r: np.ndarray) -> np.ndarray:
        return np.array(
            [math.log(phi_n_radial(cs, nmax, ri)) / nmax for ri in r]
        )

    return RadialProfile(
        f"{type(cs).__name__}(phi_{nmax}^(1/{nmax}), under-estimate)",
        rho,
        False,
        set_to_dict(cs),
    )


# -- truncated suprema over integer indices -----------------------------------

def plesniak_P(profile: RadialProfile, m: float, r: float,
               nmax: int = 256) -> SupResult:
    """P_m(E, r) = sup_{n <= nmax} phi(r / n^m)^n."""
    if r < 0 or m < 1:
        raise ValueError("need r >= 0 and m >= 1")
    if r == 0:
        return SupResult(1.0, (1,), (nmax,))
    n = np.arange(1, nmax + 1, dtype=float)
    logs = n * profile.rho(r / n**m)
    i = int(np.argmax(logs))
    return SupResult(_exp(float(logs[i])), (i + 1,), (nmax,),
                     flagged=(i == nmax - 1))


def plesniak_B(profile: RadialProfile, m: float, r: float,
               nmax: int = 256, kmax: int = 256) -> SupResult:
    """B_m(E, r) = sup_{n <= nmax, k <= kmax} phi(r (k/n)^m)^{n/k}."""
    if r < 0 or m < 1:
        raise ValueError("need r >= 0 and m >= 1")
    if r == 0:
        return SupResult(1.0, (1, 1), (nmax, kmax))
    n = np.arange(1, nmax + 1, dtype=float)[:, None]
    k = np.arange(1, kmax + 1, dtype=float)[None, :]
    args = r * (k / n) ** m
    logs = (n / k) * profile.rho(args.ravel()).reshape(args.shape)
    i, j = np.unravel_index(int(np.argmax(logs)), logs.shape)
    return SupResult(
        _exp(float(logs[i, j])), (i + 1, j + 1), (nmax, kmax),
        flagged=(i == nmax - 1 or j == kmax - 1),
    )


# -- continuous suprema on log-spaced grids ------------------------------------

def _grid_sup(fn: Callable[[np.ndarray], np.ndarray],
              lo: float = SUP_GRID_LO, hi: float = SUP_GRID_HI,
              points: int = SUP_GRID_POINTS) -> SupResult:
    """sup of fn over a log-spaced grid with one refinement pass; the
    result is flagged when a second refinement still moves it by >0.5%
    or the argmax sits on the grid boundary."""
    x = np.exp(np.linspace(math.log(lo), math.log(hi), points))
    v = fn(x)
    i = int(np.nanargmax(v))
    boundary = i in (0, points - 1)
    lo2, hi2 = x[max(i - 1, 0)], x[min(i + 1, points - 1)]
    x2 = np.exp(np.linspace(math.log(lo2), math.log(hi2), 101))
    v2 = fn(x2)
    j = int(np.nanargmax(v2))
    lo3, hi3 = x2[max(j - 1, 0)], x2[min(j + 1, 100)]
    x3 = np.exp(np.linspace(math.log(lo3), math.log(hi3), 101))
    v3 = fn(x3)
    best2 = max(float(v[i]), float(v2[j]))
    best3 = max(best2, float(np.nanmax(v3)))
    moved = abs(best3 - best2) > 0.005 * max(abs(best2), 1e-300)
    arg = float(x3[int(np.nanargmax(v3))]) if best3 > best2 else float(x2[j])
    return SupResult(best3, (arg,), (points,), flagged=boundary or moved)


def B_gamma(profile: RadialProfile, gamma: float) -> SupResult:
    """B(gamma) = sup_{r>0} rho(r) / r^gamma."""
    if not 0.0 < gamma <= 1.0:
        raise ValueError("gamma must lie in (0, 1]")

    def fn(r: np.ndarray) -> np.ndarray:
        return profile.rho(r) / r**gamma

    return _grid_sup(fn)


def A_const(profile: RadialProfile, m: float) -> SupResult:
    """A_m = sup_{s>0} rho(s) / s^{1/m} = B(1/m)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return B_gamma(profile, 1.0 / m)


def B_star(profile: RadialProfile, m: float, r: float) -> SupResult:
    """B*_m(E, r) = sup_{s>0} phi(r s^m)^{1/s}; equals exp(A_m r^{1/m})."""
    if r < 0 or m < 1:
        raise ValueError("need r >= 0 and m >= 1")
    if r == 0:
        return SupResult(1.0, (0.0,), (SUP_GRID_POINTS,))

    def fn(s: np.ndarray) -> np.ndarray:
        return profile.rho(r * s**m) / s

    res = _grid_sup(fn)
    return SupResult(math.exp(res.value), res.arg, res.truncation, res.flagged)


def P_star(profile: RadialProfile, m: float, r: float) -> SupResult:
    """P*_m(E, r) = sup_{n >= 1 integer} phi(r / n^m)^n (the limit form
    equals exp(A_m r^{1/m}) when the limit exists)."""
    return plesniak_P(profile, m, r, nmax=4096)


def H_gamma(profile: RadialProfile, gamma: float) -> SupResult:
    """H_gamma(E) = 1 / (B(gamma) gamma e)^{1/gamma}."""
    b = B_gamma(profile, gamma)
    val = (b.value * gamma * math.e) ** (-1.0 / gamma)
    return SupResult(val, b.arg, b.truncation, b.flagged)


def C_P_const(profile: RadialProfile, m: float, *, nmax: int = 256) -> SupResult:
    """C_P(E, m) = sup_{t>0} t / P_m(E, t)."""

    def fn(t: np.ndarray) -> np.ndarray:
        return np.array(
            [ti / plesniak_P(profile, m, ti, nmax).value for ti in t]
        )

    return _grid_sup(fn, points=241)


def C_B_const(profile: RadialProfile, m: float) -> SupResult:
    """C_B(E, m) = H_{1/m}(E) (through B*_m = exp(A_m r^{1/m}))."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return H_gamma(profile, 1.0 / m)


@dataclass(frozen=True)
class PlesniakConstants:
    m: float
    A_m: float
    H: float
    C_P: float
    C_B: float
    truncation: tuple
    flagged: bool

    def __post_init__(self):
        if self.C_B > self.C_P + 1e-9:
            raise ValueError("C_B must not exceed C_P")


def plesniak_constants(profile: RadialProfile, m: float) -> PlesniakConstants:
    a = A_const(profile, m)
    hg = H_gamma(profile, 1.0 / m)
    cp = C_P_const(profile, m)
    cb = C_B_const(profile, m)
    return PlesniakConstants(
        m, a.value, hg.value, cp.value, cb.value,
        (a.truncation, cp.truncation),
        a.flagged or hg.flagged or cp.flagged or cb.flagged,
    )


# -- Markov-scaled radial functionals ------------------------------------------

def R_k(profile: RadialProfile, table: MarkovTable, k: int, r: float,
        nmax: int | None = None) -> SupResult:
    """R_k(q, r) = sup_{n >= k} phi(r (k!/M_n(q,k))^{1/k})^{n/k}."""
    nmax = nmax or table.nmax
    if nmax > table.nmax:
        raise ValueError("Markov table does not cover nmax")
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return SupResult(1.0, (k,), (nmax,))
    best, arg = -np.inf, k
    for n in range(k, nmax + 1):
        scale = math.exp((log_factorial(k) - table.log_value(n, k)) / k)
        val = (n / k) * profile.rho_scalar(r * scale)
        if val > best:
            best, arg = val, n
    return SupResult(math.exp(best), (arg,), (nmax,), flagged=(arg == nmax))


def R_all(profile: RadialProfile, table: MarkovTable, r: float,
          nmax: int | None = None) -> SupResult:
    """R(q, r) = sup_{1 <= k <= n <= nmax} of the R_k objective."""
    nmax = nmax or table.nmax
    best, arg = -np.inf, (1, 1)
    for k in range(1, nmax + 1):
        res = R_k(profile, table, k, r, nmax)
        if res.value > 0 and math.log(res.value) > best:
            best, arg = math.log(res.value), (k, res.arg[0])
    return SupResult(math.exp(best), arg, (nmax,),
                     flagged=(arg[1] == nmax))


def markov_ratio_bound(table: MarkovTable) -> float:
    """a(q) = sup_{n} sup_{1<=k,l<=n} (M_n(q,l))^{1/l} / (M_n(q,k))^{1/k};
    when finite, R(q, r) <= exp(a(q) r)."""
    best = -np.inf
    for n in range(1, table.nmax + 1):
        roots = [table.log_value(n, k) / k for k in range(1, n + 1)]
        best = max(best, max(roots) - min(roots))
    return math.exp(best)


def theorem_scaling_check(profile: RadialProfile, m: float,
                          r_grid, k_grid, *, nmax: int = 512) -> dict:
    """Check P*_m(E, r k^m)^{1/k} <= max(sup_{s>=1} phi(r s)^{1/s^{1/m}},
    phi(r) P*_m(E, r)) pointwise; reports the worst relative violation."""
    worst = -np.inf
    worst_at = None
    for r in np.asarray(r_grid, dtype=float):
        if r == 0:
            continue

        def fn(s: np.ndarray) -> np.ndarray:
            return profile.rho(r * s) / s ** (1.0 / m)

        sup_term = math.exp(_grid_sup(fn, lo=1.0, hi=SUP_GRID_HI).value)
        p_star = plesniak_P(profile, m, r, nmax).value
        rhs = max(sup_term, math.exp(profile.rho_scalar(r)) * p_star)
        for k in k_grid:
            lhs = plesniak_P(profile, m, r * k**m, nmax).value ** (1.0 / k)
            viol = (lhs - rhs) / rhs
            if viol > worst:
                worst, worst_at = viol, (float(r), int(k))
    return {
        "max_relative_violation": float(worst),
        "at": worst_at,
        "passed": bool(worst <= 0.01),
        "nmax": nmax,
    }


# -- numerical verification of the radial Laplacian ----------------------------

def laplacian_verify(cs: CompactSet, *, s_points: int = 50) -> dict:
    """Compare the central-difference radial Laplacian f'' + f'/s of
    f(s) = log phi(E, s) with the registered closed form on s in
    [0.1, 10] (relative steps h = 1e-3 s)."""
    from .sets import closed_laplacian

    s_grid = np.exp(np.linspace(math.log(0.1), math.log(10.0), s_points))
    max_rel = 0.0
    skipped = []
    for s in s_grid:
        h_step = 1e-3 * s
        f = lambda x: float(closed_log_phi(cs, np.array([x]))[0])
        f0, fp, fm = f(s), f(s + h_step), f(s - h_step)
        d1 = (fp - fm) / (2 * h_step)
        d2 = (fp - 2 * f0 + fm) / h_step**2
        if abs(d1) < 1e-12:
            skipped.append(float(s))
            continue
        num = d2 + d1 / s
        closed = closed_laplacian(cs, s)
        denom = max(abs(closed), 1e-12)
        max_rel = max(max_rel, abs(num - closed) / denom)
    return {
        "set": type(cs).__name__,
        "max_relative_error": float(max_rel),
        "skipped_points": skipped,
        "passed": bool(max_rel <= 1e-3),
    }


def monn_limit_verify(cs: CompactSet, *, t_probes=(8.0, 10.0, 12.0)) -> dict:
    """Probe e^t u''(t)/u'(t) for u(t) = log phi(E, e^t) at large t and
    compare with the registered limit; errors must be <= 1% and decreasing."""
    from .sets import closed_laplacian_limit

    limit = closed_laplacian_limit(cs)
    errs = []
    for t in t_probes:
        h_step = 1e-2  # large enough to keep e^t * (roundoff / h^2) small
        f = lambda x: float(closed_log_phi(cs, np.array([math.exp(x)]))[0])
        f0, fp, fm = f(t), f(t + h_step), f(t - h_step)
        d1 = (fp - fm) / (2 * h_step)
        d2 = (fp - 2 * f0 + fm) / h_step**2
        est = math.exp(t) * d2 / d1
        errs.append(abs(est - limit) / abs(limit))
    decreasing = all(errs[i + 1] <= errs[i] + 1e-12 for i in range(len(errs) - 1))
    return {
        "set": type(cs).__name__,
        "limit": float(limit),
        "relative_errors": [float(e) for e in errs],
        "passed": bool(max(errs) <= 1e-2 and decreasing),
    }
