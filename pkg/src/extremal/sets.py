"""Compact sets in the plane, discretization grids, polynomial norms, and
the registry of closed-form radial extremal formulas attached to each set
variant.

Capacity normalization: C(disk of radius R) = R and C([a,b]) = (b-a)/4,
i.e. the constants c = 1/R and c = 2/(b-a) appearing in the closed-form
Laplacians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np
from numpy.polynomial import legendre as _leg

from .poly import (
    Basis,
    Polynomial,
    eval_poly,
    g,
    g_hat,
    h,
    log_factorial,
)


class UnsupportedVariantError(ValueError):
    """Raised when a closed form or grid is not defined for a set variant."""


# -- compact set variants -----------------------------------------------------

@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self) -> None:
        if not self.a < self.b:
            raise ValueError(f"interval requires a < b, got [{self.a}, {self.b}]")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    @property
    def halfwidth(self) -> float:
        return 0.5 * (self.b - self.a)


@dataclass(frozen=True)
class Disk:
    radius: float = 1.0

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise ValueError("disk radius must be positive")


@dataclass(frozen=True)
class GreenLevelSet:
    """E_R = {z : Phi([-1,1], z) <= R}, the filled Chebyshev-ellipse."""

    R: float

    def __post_init__(self) -> None:
        if self.R <= 1:
            raise ValueError("GreenLevelSet requires R > 1")


@dataclass(frozen=True)
class DiskWithPoint:
    """Closed disk of the given radius together with one outside point z0."""

    radius: float = 1.0
    z0: complex = 2.0 + 0.0j

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise ValueError("disk radius must be positive")
        if abs(self.z0) <= self.radius:
            raise ValueError("z0 must lie outside the disk")


@dataclass(frozen=True)
class ProductIntervalDisk:
    """[-1,1] x closed disk of radius R; closed-form u''/u' only, no grid."""

    R: float

    def __post_init__(self) -> None:
        if self.R <= 0:
            raise ValueError("R must be positive")


CompactSet = Union[Interval, Disk, GreenLevelSet, DiskWithPoint, ProductIntervalDisk]


# -- grids --------------------------------------------------------------------

@dataclass(frozen=True)
class Grid:
    nodes: np.ndarray
    parent: CompactSet
    density: int

    def __len__(self) -> int:
        return len(self.nodes)


def _segment_count(density: int) -> int:
    # density=1 -> 64 segments (65 interval nodes / 64 disk angles),
    # density=2 -> 128, doubling with each level.
    return 32 * (2 ** density)


def discretize(cs: CompactSet, density: int = 2) -> Grid:
    """Boundary grid of the set: Chebyshev nodes on intervals, uniform
    angles on circles, Joukowski image of a circle for Green level sets."""
    if density < 1:
        raise ValueError("density must be >= 1")
    m = _segment_count(density)
    if isinstance(cs, Interval):
        j = np.arange(m + 1)
        nodes = cs.midpoint + cs.halfwidth * np.cos(j * np.pi / m)
        return Grid(nodes.astype(complex), cs, density)
    if isinstance(cs, Disk):
        theta = 2.0 * np.pi * np.arange(m) / m
        return Grid(cs.radius * np.exp(1j * theta), cs, density)
    if isinstance(cs, GreenLevelSet):
        theta = 2.0 * np.pi * np.arange(m) / m
        w = cs.R * np.exp(1j * theta)
        return Grid(0.5 * (w + 1.0 / w), cs, density)
    if isinstance(cs, DiskWithPoint):
        theta = 2.0 * np.pi * np.arange(m) / m
        nodes = np.concatenate(
            [cs.radius * np.exp(1j * theta), [complex(cs.z0)]]
        )
        return Grid(nodes, cs, density)
    raise UnsupportedVariantError(
        f"{type(cs).__name__} has no grid (closed-form-only variant)"
    )


def grid_for_degree(cs: CompactSet, n: int) -> Grid:
    """Smallest grid meeting the sampling rule: >= max(4 n^2, 129) nodes."""
    need = max(4 * n * n, 129)
    density = 1
    while _segment_count(density) < need:
        density += 1
    return discretize(cs, density)


# -- norms --------------------------------------------------------------------

@dataclass(frozen=True)
class SupNorm:
    """Sup norm over a compact set, evaluated on a boundary grid."""

    set: CompactSet
    density: int = 2

    def grid(self, degree: int | None = None) -> Grid:
        if degree is None:
            return discretize(self.set, self.density)
        base = grid_for_degree(self.set, degree)
        if base.density >= self.density:
            return base
        return discretize(self.set, self.density)


@dataclass(frozen=True)
class CoeffNorm:
    """||P|| = sum_j (1/j!)^(m-1) |a_j| tau^j over monomial coefficients."""

    m: float = 1.0
    tau: float = 1.0

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError("m must be >= 0")
        if self.tau <= 0:
            raise ValueError("tau must be positive")


@dataclass(frozen=True)
class IntegralNorm:
    """q_p(P) = ((1/(b-a)) * integral_a^b |P|^p dx)^(1/p), Gauss-Legendre."""

    p: float = 2.0
    interval: Interval = field(default_factory=lambda: Interval(-1.0, 1.0))

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError("p must be >= 1")

    def quadrature(self, degree: int) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights; exact for |P|^2 at the working degree, padded."""
        order = math.ceil(self.p * degree / 2) + 8
        x, w = _leg.leggauss(order)
        iv = self.interval
        nodes = iv.midpoint + iv.halfwidth * x
        weights = w / 2.0  # normalized measure: weights sum to 1
        return nodes, weights


NormSpec = Union[SupNorm, CoeffNorm, IntegralNorm]


def norm_eval(q: NormSpec, p: Polynomial) -> float:
    """Evaluate the norm of a polynomial."""
    if p.is_zero:
        return 0.0
    if isinstance(q, SupNorm):
        grid = q.grid(p.degree)
        return float(np.max(np.abs(eval_poly(p, grid.nodes))))
    if isinstance(q, CoeffNorm):
        mono = p.to_basis(Basis.MONOMIAL)
        total = 0.0
        for j, a in enumerate(mono.coeffs):
            if a == 0:
                continue
            log_w = (1.0 - q.m) * log_factorial(j) + j * math.log(q.tau)
            total += abs(a) * math.exp(log_w)
        return total
    if isinstance(q, IntegralNorm):
        nodes, weights = q.quadrature(p.degree)
        vals = np.abs(eval_poly(p, nodes.astype(complex)))
        return float((weights @ vals**q.p) ** (1.0 / q.p))
    raise TypeError(f"unknown norm spec {type(q).__name__}")


# -- closed-form registry -----------------------------------------------------

def capacity(cs: CompactSet) -> float:
    """L-capacity C(E) for the variants with a known closed form."""
    if isinstance(cs, Disk):
        return cs.radius
    if isinstance(cs, Interval):
        return (cs.b - cs.a) / 4.0
    if isinstance(cs, GreenLevelSet):
        # E_R is the image of the disk of radius R under the Joukowski map;
        # phi(E_R, r) = h(g(R) + r)/R gives phi(r)/r -> 2/R, so C = R/2.
        return cs.R / 2.0
    if isinstance(cs, DiskWithPoint):
        # phi(E, r) = |z0| + r for r > 0, so r/phi -> 1 and C = 1... scaled
        # by nothing: phi(E,r)/r decreases to 1 = 1/C(E).
        return 1.0
    raise UnsupportedVariantError(f"no capacity formula for {type(cs).__name__}")


def closed_phi(cs: CompactSet, r: float) -> float:
    """The paper-registered closed form of phi(E, r)."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if isinstance(cs, Disk):
        return 1.0 + r / cs.radius
    if isinstance(cs, Interval):
        return h(1.0 + r / (2.0 * capacity(cs)))
    if isinstance(cs, GreenLevelSet):
        return h(g(cs.R) + r) / cs.R
    if isinstance(cs, DiskWithPoint):
        if r == 0:
            return 1.0
        return abs(cs.z0) + r
    raise UnsupportedVariantError(f"no phi closed form for {type(cs).__name__}")


def closed_log_phi(cs: CompactSet, r) -> np.ndarray:
    """Vectorized log phi(E, r) for log-domain sweeps."""
    r = np.asarray(r, dtype=float)
    if isinstance(cs, Disk):
        return np.log1p(r / cs.radius)
    if isinstance(cs, Interval):
        t = 1.0 + r / (2.0 * capacity(cs))
        return np.log(t + np.sqrt(t * t - 1.0))
    if isinstance(cs, GreenLevelSet):
        t = g(cs.R) + r
        return np.log(t + np.sqrt(t * t - 1.0)) - math.log(cs.R)
    if isinstance(cs, DiskWithPoint):
        out = np.log(abs(cs.z0) + r)
        return np.where(r == 0, 0.0, out)
    raise UnsupportedVariantError(f"no phi closed form for {type(cs).__name__}")


def closed_laplacian(cs: CompactSet, s: float) -> float:
    """Closed form of the radial Laplacian (Delta log phi)(E, |z|) at |z|=s."""
    if s <= 0:
        raise ValueError("s must be positive")
    if isinstance(cs, Disk):
        c = 1.0 / cs.radius
        return c / (s * (1.0 + c * s) ** 2)
    if isinstance(cs, Interval):
        c = 2.0 / (cs.b - cs.a)
        return c * c / (((1.0 + c * s) ** 2 - 1.0) ** 1.5)
    if isinstance(cs, GreenLevelSet):
        gr, ghr = g(cs.R), g_hat(cs.R)
        return (ghr * ghr + gr * s) / (s * ((gr + s) ** 2 - 1.0) ** 1.5)
    if isinstance(cs, DiskWithPoint):
        a = abs(cs.z0)
        return (1.0 / a) / (s * (1.0 + s / a) ** 2)
    raise UnsupportedVariantError(f"no Laplacian form for {type(cs).__name__}")


def closed_laplacian_limit(cs: CompactSet) -> float:
    """lim |z|^3 * Delta log phi(E, |z|) as |z| -> infinity."""
    if isinstance(cs, Disk):
        return cs.radius  # 1/c with c = 1/R
    if isinstance(cs, Interval):
        return (cs.b - cs.a) / 2.0  # 1/c with c = 2/(b-a)
    if isinstance(cs, GreenLevelSet):
        return g(cs.R)
    if isinstance(cs, DiskWithPoint):
        return abs(cs.z0)
    raise UnsupportedVariantError(f"no Laplacian limit for {type(cs).__name__}")


def closed_u_ratio(cs: CompactSet, t: float) -> float:
    """u''(t)/u'(t) for u(t) = log phi(E, e^t), in closed form."""
    et = math.exp(t)
    if isinstance(cs, Disk):
        c = 1.0 / cs.radius
        return 1.0 / (1.0 + c * et)
    if isinstance(cs, Interval):
        c = 2.0 / (cs.b - cs.a)
        return 1.0 / (2.0 + c * et)
    if isinstance(cs, GreenLevelSet):
        gr = g(cs.R)
        return 0.5 * (gr + 1.0) / (gr + 1.0 + et) + 0.5 * (gr - 1.0) / (
            gr - 1.0 + et
        )
    if isinstance(cs, DiskWithPoint):
        a = abs(cs.z0)
        return a / (a + et)
    if isinstance(cs, ProductIntervalDisk):
        # Piecewise form of the product set [-1,1] x D_R, implemented exactly
        # as displayed (the first two branches coincide; kept as written).
        R = cs.R
        if R >= 0.5:
            return 1.0 / (2.0 + et)
        t_star = math.log(2.0 / ((1.0 / R - 1.0) ** 2 - 1.0))
        if t < t_star:
            return 1.0 / (2.0 + et)
        return 1.0 / (1.0 + et / R)
    raise UnsupportedVariantError(f"no u-ratio form for {type(cs).__name__}")


def has_closed_phi(cs: CompactSet) -> bool:
    return isinstance(cs, (Disk, Interval, GreenLevelSet, DiskWithPoint))


# -- JSON descriptors ---------------------------------------------------------

_SET_KINDS = {
    "interval": (Interval, {"a", "b"}),
    "disk": (Disk, {"radius"}),
    "green_level": (GreenLevelSet, {"R"}),
    "disk_with_point": (DiskWithPoint, {"radius", "z0"}),
    "product_interval_disk": (ProductIntervalDisk, {"R"}),
}


def set_from_dict(d: dict) -> CompactSet:
    """Build a compact set from a JSON-style descriptor; unknown keys rejected."""
    d = dict(d)
    kind = d.pop("kind", None)
    if kind not in _SET_KINDS:
        raise ValueError(f"unknown set kind {kind!r}")
    cls, allowed = _SET_KINDS[kind]
    extra = set(d) - allowed
    if extra:
        raise ValueError(f"unknown keys for set {kind!r}: {sorted(extra)}")
    if "z0" in d and isinstance(d["z0"], (list, tuple)):
        d["z0"] = complex(d["z0"][0], d["z0"][1])
    return cls(**d)


def set_to_dict(cs: CompactSet) -> dict:
    if isinstance(cs, Interval):
        return {"kind": "interval", "a": cs.a, "b": cs.b}
    if isinstance(cs, Disk):
        return {"kind": "disk", "radius": cs.radius}
    if isinstance(cs, GreenLevelSet):
        return {"kind": "green_level", "R": cs.R}
    if isinstance(cs, DiskWithPoint):
        return {
            "kind": "disk_with_point",
            "radius": cs.radius,
            "z0": [cs.z0.real, cs.z0.imag],
        }
    if isinstance(cs, ProductIntervalDisk):
        return {"kind": "product_interval_disk", "R": cs.R}
    raise TypeError(type(cs).__name__)


def norm_from_dict(d: dict) -> NormSpec:
    """Build a norm from a JSON-style descriptor; unknown keys rejected."""
    d = dict(d)
    kind = d.pop("kind", None)
    if kind == "sup":
        set_desc = d.pop("set", {"kind": "interval", "a": -1.0, "b": 1.0})
        density = d.pop("density", 2)
        if d:
            raise ValueError(f"unknown keys for norm 'sup': {sorted(d)}")
        return SupNorm(set_from_dict(set_desc), density=density)
    if kind == "coeff":
        m = d.pop("m", 1.0)
        tau = d.pop("tau", 1.0)
        if d:
            raise ValueError(f"unknown keys for norm 'coeff': {sorted(d)}")
        return CoeffNorm(m=float(m), tau=float(tau))
    if kind == "integral":
        p = d.pop("p", 2.0)
        a = d.pop("a", -1.0)
        b = d.pop("b", 1.0)
        if d:
            raise ValueError(f"unknown keys for norm 'integral': {sorted(d)}")
        return IntegralNorm(p=float(p), interval=Interval(float(a), float(b)))
    raise ValueError(f"unknown norm kind {kind!r}")


def norm_to_dict(q: NormSpec) -> dict:
    if isinstance(q, SupNorm):
        return {"kind": "sup", "set": set_to_dict(q.set), "density": q.density}
    if isinstance(q, CoeffNorm):
        return {"kind": "coeff", "m": q.m, "tau": q.tau}
    if isinstance(q, IntegralNorm):
        return {
            "kind": "integral",
            "p": q.p,
            "a": q.interval.a,
            "b": q.interval.b,
        }
    raise TypeError(type(q).__name__)
