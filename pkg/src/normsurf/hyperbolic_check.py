"""Trigonometry of the rotation of a regular hyperbolic ``4g``-gon.

The polygon has corner angle ``2*pi/4g``; gluing opposite sides gives a
closed genus ``g`` surface, and the rotation by ``2*pi/4g`` about the
centre ``O`` induces a periodic map of it.  A geodesic ``gamma`` passing
within ``R/2`` of ``O`` (``R`` the circumradius) subtends a visual
angle ``theta`` with ``cosh(L) = 1/sin(theta/2)`` at distance ``L``.
If every such angle exceeds the rotation angle, the rotated lift meets
the original and the map moves no essential curve off itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def _check_genus(g):
    if not isinstance(g, int) or g < 2:
        raise ValueError(f"genus must be an integer >= 2, got {g!r}")


def rotation_angle(g: int) -> float:
    _check_genus(g)
    return 2 * math.pi / (4 * g)


def cosh_circumradius(g: int) -> float:
    """``cot^2(pi/4g)``."""
    _check_genus(g)
    return 1.0 / math.tan(math.pi / (4 * g)) ** 2


def circumradius(g: int) -> float:
    return math.acosh(cosh_circumradius(g))


def visual_angle(L: float) -> float:
    """Angle subtended at a point by a complete geodesic at distance ``L``."""
    if L < 0 or math.isnan(L):
        raise ValueError(f"distance must be nonnegative, got {L!r}")
    return 2 * math.asin(1.0 / math.cosh(L))


@dataclass(frozen=True)
class PolygonGeometry:
    g: int
    corner_angle: float
    R: float
    rotation_angle: float

    @classmethod
    def regular(cls, g):
        angle = rotation_angle(g)
        return cls(g, angle, circumradius(g), angle)


@dataclass(frozen=True)
class Certificate:
    g: int
    R: float
    theta_at_half_R: float
    threshold: float
    margin: float
    passed: bool

    def line(self):
        status = "pass" if self.passed else "FAIL"
        return (f"g={self.g} R={self.R:.12f} theta*={self.theta_at_half_R:.12f} "
                f"threshold={self.threshold:.12f} margin={self.margin:.3e} {status}")


def verify_rotation_bound(g: int, min_margin: float = 0.0) -> Certificate:
    """Check ``visual_angle(R/2) > 2*pi/4g``.

    The visual angle decreases with distance, so the value at ``R/2`` is
    the smallest over all geodesics within ``R/2`` of the centre.
    """
    geom = PolygonGeometry.regular(g)
    theta = visual_angle(geom.R / 2)
    margin = theta - geom.rotation_angle
    return Certificate(g, geom.R, theta, geom.rotation_angle, margin, margin > min_margin)


def sweep(g_min: int = 2, g_max: int = 64, min_margin: float = 0.0):
    return [verify_rotation_bound(g, min_margin) for g in range(g_min, g_max + 1)]
