"""Analytic closed boundary curves and their Nystrom samplings.

A cavity boundary is a counterclockwise 2pi-periodic parameterization
t -> x(t) with analytic first and second derivatives.  Counterclockwise
orientation is what makes nu = (x2', -x1') / |x'| the *outward* normal;
``signed_area`` guards it.

Presets (centered at the origin before the rigid modifiers are applied):

  circle             r (cos t, sin t)
  ellipse            (a cos t, b sin t)
  rounded_rectangle  1.5 (cos^10 t + sin^10 t)^(1/10) (cos t, sin t)
  pear               (1 + amp cos 3t) (cos t, sin t)
  kite               (cos t + 0.65 cos 2t - 0.65, 1.5 sin t)

``center`` translates and ``scale`` dilates about the preset's own origin,
so scale=3 triples the diameter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .quadrature import nodes as uniform_nodes
from .quadrature import trapezoid_weight


class DegenerateCurveError(ValueError):
    """Parameterization speed fell below tolerance at a node."""


class BoundaryToleranceError(ValueError):
    """Query point too close to the boundary polyline to classify."""


@dataclass(frozen=True)
class NodeSet:
    """Uniform trapezoidal nodes t_i = 2 pi i / n with weight 2 pi / n."""

    n: int

    def __post_init__(self):
        if self.n < 2 or self.n % 2 != 0:
            raise ValueError("node count must be a positive even integer")

    @property
    def t(self) -> np.ndarray:
        return uniform_nodes(self.n)

    @property
    def weight(self) -> float:
        return trapezoid_weight(self.n)


@dataclass(frozen=True)
class BoundaryCurve:
    """Closed analytic curve with derivative maps and rigid modifiers."""

    preset: str
    params: dict
    center: tuple[float, float]
    scale: float
    _base: Callable[[np.ndarray], tuple] = field(repr=False)

    def position(self, t) -> np.ndarray:
        x, _, _ = self._base(np.asarray(t, dtype=float))
        return self.scale * x + np.asarray(self.center)

    def velocity(self, t) -> np.ndarray:
        _, dx, _ = self._base(np.asarray(t, dtype=float))
        return self.scale * dx

    def acceleration(self, t) -> np.ndarray:
        _, _, ddx = self._base(np.asarray(t, dtype=float))
        return self.scale * ddx


@dataclass(frozen=True)
class CurveSamples:
    """Per-node geometric data of one curve on a NodeSet.

    Arrays are (n, 2) except jac, which is (n,).  nu is the unit outward
    normal (dx2, -dx1)/jac; tau the unit tangent dx/jac.
    """

    t: np.ndarray
    x: np.ndarray
    dx: np.ndarray
    ddx: np.ndarray
    jac: np.ndarray
    nu: np.ndarray
    tau: np.ndarray

    @property
    def n(self) -> int:
        return self.t.size


def _radial(rho, drho, ddrho):
    """Curve x(t) = rho(t) (cos t, sin t) with derivative maps."""

    def base(t):
        c, s = np.cos(t), np.sin(t)
        r, dr, ddr = rho(t), drho(t), ddrho(t)
        e = np.stack([c, s], axis=-1)
        de = np.stack([-s, c], axis=-1)
        x = r[..., None] * e
        dx = dr[..., None] * e + r[..., None] * de
        ddx = (ddr - r)[..., None] * e + (2.0 * dr)[..., None] * de
        return x, dx, ddx

    return base


def _rounded_rectangle_base():
    def g(t):
        return np.cos(t) ** 10 + np.sin(t) ** 10

    def dg(t):
        return 10.0 * np.sin(t) * np.cos(t) * (np.sin(t) ** 8 - np.cos(t) ** 8)

    def ddg(t):
        c, s = np.cos(t), np.sin(t)
        return 10.0 * (
            (c * c - s * s) * (s**8 - c**8) + 8.0 * s * s * c * c * (s**6 + c**6)
        )

    def rho(t):
        return 1.5 * g(t) ** 0.1

    def drho(t):
        return 0.15 * g(t) ** (-0.9) * dg(t)

    def ddrho(t):
        gt = g(t)
        return 0.15 * (ddg(t) * gt ** (-0.9) - 0.9 * gt ** (-1.9) * dg(t) ** 2)

    return _radial(rho, drho, ddrho)


def _kite_base():
    def base(t):
        x = np.stack(
            [np.cos(t) + 0.65 * np.cos(2 * t) - 0.65, 1.5 * np.sin(t)], axis=-1
        )
        dx = np.stack([-np.sin(t) - 1.3 * np.sin(2 * t), 1.5 * np.cos(t)], axis=-1)
        ddx = np.stack([-np.cos(t) - 2.6 * np.cos(2 * t), -1.5 * np.sin(t)], axis=-1)
        return x, dx, ddx

    return base


def make_preset(name, params=None, center=(0.0, 0.0), scale=1.0) -> BoundaryCurve:
    """Build a preset curve; see the module docstring for the formulas."""
    if scale <= 0.0:
        raise ValueError("scale must be positive")
    params = dict(params or {})
    if name == "circle":
        r = float(params.setdefault("radius", 1.0))
        if r <= 0.0:
            raise ValueError("circle radius must be positive")
        base = _radial(
            lambda t: np.full_like(t, r),
            lambda t: np.zeros_like(t),
            lambda t: np.zeros_like(t),
        )
    elif name == "ellipse":
        a = float(params.setdefault("a", 1.5))
        b = float(params.setdefault("b", 1.0))
        if a <= 0.0 or b <= 0.0:
            raise ValueError("ellipse semi-axes must be positive")

        def base(t, a=a, b=b):
            x = np.stack([a * np.cos(t), b * np.sin(t)], axis=-1)
            dx = np.stack([-a * np.sin(t), b * np.cos(t)], axis=-1)
            ddx = -x
            return x, dx, ddx

    elif name == "rounded_rectangle":
        base = _rounded_rectangle_base()
    elif name == "pear":
        amp = float(params.setdefault("amplitude", 0.15))
        base = _radial(
            lambda t: 1.0 + amp * np.cos(3 * t),
            lambda t: -3.0 * amp * np.sin(3 * t),
            lambda t: -9.0 * amp * np.cos(3 * t),
        )
    elif name == "kite":
        base = _kite_base()
    else:
        raise ValueError(f"unknown preset {name!r}")
    return BoundaryCurve(name, params, (float(center[0]), float(center[1])), float(scale), base)


PRESET_NAMES = ("circle", "ellipse", "rounded_rectangle", "pear", "kite")


def sample(curve: BoundaryCurve, nodeset: NodeSet) -> CurveSamples:
    """Evaluate position, derivatives, Jacobian, normal, tangent at the nodes."""
    t = nodeset.t
    x = curve.position(t)
    dx = curve.velocity(t)
    ddx = curve.acceleration(t)
    jac = np.hypot(dx[:, 0], dx[:, 1])
    if np.any(jac < 1e-12):
        raise DegenerateCurveError("parameterization speed below 1e-12 at a node")
    nu = np.stack([dx[:, 1], -dx[:, 0]], axis=-1) / jac[:, None]
    tau = dx / jac[:, None]
    return CurveSamples(t, x, dx, ddx, jac, nu, tau)


def signed_area(curve: BoundaryCurve, nodeset: NodeSet) -> float:
    """Enclosed area via (1/2) int (x1 x2' - x2 x1') dt; positive iff ccw."""
    if nodeset.n < 16:
        raise ValueError("signed_area needs at least 16 nodes")
    s = sample(curve, nodeset)
    integrand = s.x[:, 0] * s.dx[:, 1] - s.x[:, 1] * s.dx[:, 0]
    return 0.5 * nodeset.weight * float(np.sum(integrand))


def point_in_cavity(point, curve: BoundaryCurve, nodeset: NodeSet | None = None) -> bool:
    """Winding-number inside test against the sampled polygon.

    Uses at least 512 polygon vertices.  Points within 1e-9 of the polyline
    are refused (classification is indeterminate there).
    """
    n = max(nodeset.n if nodeset is not None else 0, 512)
    s = sample(curve, NodeSet(n))
    p = np.asarray(point, dtype=float)
    d = polyline_distance(p, s.x)
    if d < 1e-9:
        raise BoundaryToleranceError("point within 1e-9 of the boundary polyline")
    v = s.x - p
    ang = np.arctan2(v[:, 1], v[:, 0])
    dang = np.diff(np.concatenate([ang, ang[:1]]))
    dang = (dang + np.pi) % (2.0 * np.pi) - np.pi
    return abs(np.sum(dang)) > np.pi


def polyline_distance(points, vertices: np.ndarray) -> np.ndarray:
    """Distance from point(s) to the closed polyline through ``vertices``."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    a = vertices
    b = np.roll(vertices, -1, axis=0)
    ab = b - a
    denom = np.einsum("ij,ij->i", ab, ab)
    ap = p[:, None, :] - a[None, :, :]
    s = np.clip(np.einsum("pij,ij->pi", ap, ab) / denom, 0.0, 1.0)
    closest = a[None, :, :] + s[:, :, None] * ab[None, :, :]
    d = np.min(np.linalg.norm(p[:, None, :] - closest, axis=2), axis=1)
    return d if np.asarray(points).ndim > 1 else float(d[0])


@dataclass(frozen=True)
class Scene:
    """Ordered list of disjoint cavities sampled on a shared NodeSet."""

    curves: tuple[BoundaryCurve, ...]
    nodeset: NodeSet

    def __post_init__(self):
        if not self.curves:
            raise ValueError("scene needs at least one curve")

    @property
    def samples(self) -> tuple[CurveSamples, ...]:
        return tuple(sample(c, self.nodeset) for c in self.curves)

    @property
    def total_nodes(self) -> int:
        return self.nodeset.n * len(self.curves)

    def contains(self, point) -> bool:
        return any(point_in_cavity(point, c, self.nodeset) for c in self.curves)
