"""Upper half-plane geometry: points, boundary-centered circles, inversions,
Gromov products and the disk-model transfer.

Purely rational operations (inversions, circle images, cosh-arguments,
chord lengths) stay inside the scalar backend of their inputs; transcendental
steps (acosh, log) are evaluated as certified enclosures in an
:class:`~schottkydim.scalars.IntervalContext`, or in plain floats when the
inputs are floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .scalars import IntervalContext, default_context, lower, midpoint


class DegenerateInversionError(ValueError):
    """Raised when a circle passes through the inversion center (image is a line)."""


@dataclass(frozen=True)
class HPoint:
    """Point of the upper half-plane; y must be positive."""

    x: object
    y: object

    def __post_init__(self):
        if lower(self.y) <= 0 and not isinstance(self.y, float):
            raise ValueError(f"HPoint needs y > 0, got y = {self.y}")
        if isinstance(self.y, float) and self.y <= 0:
            raise ValueError(f"HPoint needs y > 0, got y = {self.y}")

    def as_complex(self) -> complex:
        return complex(float(midpoint(self.x)), float(midpoint(self.y)))


@dataclass(frozen=True)
class BoundaryPoint:
    """Point of the ideal boundary: a finite real, or the point at infinity."""

    value: object = None
    infinite: bool = False

    @staticmethod
    def at(value) -> "BoundaryPoint":
        return BoundaryPoint(value=value, infinite=False)

    @staticmethod
    def infinity() -> "BoundaryPoint":
        return BoundaryPoint(value=None, infinite=True)

    @property
    def is_infinity(self) -> bool:
        return self.infinite


@dataclass(frozen=True)
class Circle:
    """Boundary-centered circle: its upper semicircle is a hyperbolic geodesic.

    ``bounded_image`` records inversive orientation bookkeeping: for every
    configuration produced here the image of a disk not containing the
    inversion center is again a bounded disk, and the flag stays True.
    """

    center: object
    radius: object
    bounded_image: bool = True

    def __post_init__(self):
        if lower(self.radius) <= 0 and not isinstance(self.radius, float):
            raise ValueError("circle radius must be positive")
        if isinstance(self.radius, float) and self.radius <= 0:
            raise ValueError("circle radius must be positive")


@dataclass(frozen=True)
class DiskPoint:
    """Point of the unit-disk model (image of the half-plane under the Cayley map)."""

    re: object
    im: object


# ---------------------------------------------------------------------------
# distances and Gromov products
# ---------------------------------------------------------------------------

def cosh_distance(p: HPoint, q: HPoint):
    """cosh of the hyperbolic distance: 1 + |p-q|^2 / (2 y_p y_q).

    Rational-closed, so exact on Fraction inputs.  Monotone in the distance,
    which makes it the right quantity for exact comparisons.
    """
    dx = p.x - q.x
    dy = p.y - q.y
    return 1 + (dx * dx + dy * dy) / (2 * p.y * q.y)


def hyp_distance(p: HPoint, q: HPoint, ctx: Optional[IntervalContext] = None):
    """Hyperbolic distance in the upper half-plane.

    Returns a float for float inputs, otherwise a certified enclosure.
    """
    u = cosh_distance(p, q)
    if isinstance(u, float):
        return math.acosh(max(u, 1.0))
    ctx = ctx or default_context()
    if isinstance(u, (int, Fraction)) and u == 1:
        return ctx.zero
    return ctx.acosh(u)


def hyp_distance_float(p: complex, q: complex) -> float:
    """Overflow-hardened float distance for diagnostic numerics."""
    num = (p.real - q.real) ** 2 + (p.imag - q.imag) ** 2
    den = 2.0 * p.imag * q.imag
    if den <= 0.0:
        return math.inf
    ratio = num / den
    if math.isinf(ratio) or ratio > 1e15:
        # acosh(1 + r) ~ log(2r) for large r
        if math.isinf(ratio):
            return math.log(num) - math.log(den) + math.log(2.0)
        return math.log(2.0 * ratio)
    return math.acosh(1.0 + ratio)


def gromov_product(x: HPoint, y: HPoint, w: HPoint,
                   ctx: Optional[IntervalContext] = None):
    """(x|y)_w = (d(x,w) + d(y,w) - d(x,y)) / 2."""
    dxw = hyp_distance(x, w, ctx)
    dyw = hyp_distance(y, w, ctx)
    dxy = hyp_distance(x, y, ctx)
    return (dxw + dyw - dxy) / 2


# ---------------------------------------------------------------------------
# circle inversions
# ---------------------------------------------------------------------------

def circle_invert_point(circle: Circle, z):
    """Inversion in the boundary circle: z -> c + r^2/(conj(z) - c).

    Accepts and returns either a BoundaryPoint or an HPoint.  The center maps
    to infinity and infinity to the center; both are representable.
    """
    c = circle.center
    r2 = circle.radius * circle.radius
    if isinstance(z, BoundaryPoint):
        if z.is_infinity:
            return BoundaryPoint.at(c)
        d = z.value - c
        if d == 0:
            return BoundaryPoint.infinity()
        return BoundaryPoint.at(c + r2 / d)
    if isinstance(z, HPoint):
        dx = z.x - c
        denom = dx * dx + z.y * z.y
        return HPoint(c + r2 * dx / denom, r2 * z.y / denom)
    raise TypeError(f"cannot invert {z!r}")


def circle_invert_circle(circle: Circle, other: Circle) -> Circle:
    """Image of the disk bounded by ``other`` under inversion in ``circle``.

    With u = center(other) - center(circle):
        center' = center + r^2 u / (u^2 - rho^2),   radius' = r^2 rho / |u^2 - rho^2|
    where r, rho are the two radii.  Degenerate only when ``other`` passes
    through the inversion center, which admissible schedules never produce.
    """
    u = other.center - circle.center
    r2 = circle.radius * circle.radius
    rho = other.radius
    denom = u * u - rho * rho
    if denom == 0:
        raise DegenerateInversionError(
            "circle passes through the inversion center; image is a line")
    new_center = circle.center + r2 * u / denom
    new_radius = r2 * rho / denom
    if lower(new_radius) < 0 or (isinstance(new_radius, float) and new_radius < 0):
        new_radius = -new_radius
    return Circle(new_center, new_radius, bounded_image=True)


# ---------------------------------------------------------------------------
# disk model transfer and boundary Gromov products
# ---------------------------------------------------------------------------

def disk_from_half_plane(z) -> DiskPoint:
    """Cayley transfer w = (z - i)/(z + i); i -> 0, boundary -> unit circle, oo -> 1."""
    if isinstance(z, BoundaryPoint):
        if z.is_infinity:
            return DiskPoint(1, 0)
        x = z.value
        d = x * x + 1
        return DiskPoint((x * x - 1) / d, (2 * x) / d)
    if isinstance(z, HPoint):
        x, y = z.x, z.y
        d = x * x + (y + 1) * (y + 1)
        return DiskPoint((x * x + y * y - 1) / d, (2 * x) / d)
    raise TypeError(f"cannot transfer {z!r}")


def _to_base(z, o: HPoint):
    """Isometry z -> (z - x_o)/y_o moving the basepoint o to i."""
    if isinstance(z, BoundaryPoint):
        if z.is_infinity:
            return z
        return BoundaryPoint.at((z.value - o.x) / o.y)
    return HPoint((z.x - o.x) / o.y, z.y / o.y)


def boundary_chord_sq(a: BoundaryPoint, b: BoundaryPoint, o: HPoint):
    """Squared Euclidean chord |w_a - w_b|^2 between the disk-model transfers,
    after conjugating the basepoint o to the disk center.  Rational-closed."""
    wa = disk_from_half_plane(_to_base(a, o))
    wb = disk_from_half_plane(_to_base(b, o))
    dre = wa.re - wb.re
    dim = wa.im - wb.im
    return dre * dre + dim * dim


def boundary_gromov_product(a: BoundaryPoint, b: BoundaryPoint, o: HPoint,
                            ctx: Optional[IntervalContext] = None):
    """(a|b)_o through the identity e^{-(a|b)_o} = sin(theta/2) = chord/2.

    The chord of two unit-circle points subtending the angle theta at the
    center has length 2 sin(theta/2), so the product is -log(chord/2).
    Returns math.inf when the two boundary points coincide.
    """
    chord_sq = boundary_chord_sq(a, b, o)
    if chord_sq == 0:
        return math.inf
    if isinstance(chord_sq, float):
        return -0.5 * math.log(chord_sq / 4.0)
    ctx = ctx or default_context()
    return -ctx.log(ctx.convert(Fraction(chord_sq) / 4
                                if isinstance(chord_sq, (int, Fraction))
                                else chord_sq / 4)) / 2


def chain_metric(sample: Sequence[BoundaryPoint], o: HPoint, eps: float):
    """Chain-infimum boundary metric on a finite sample.

    On a finite sample the infimum over chains through sample points is a
    shortest path in the complete graph with edge weights
    e^{-eps (x_i|x_j)_o} = (chord/2)^eps; solved exactly by Floyd-Warshall.
    Returns a dense table of floats (the table is a diagnostic object, not a
    certification quantity).
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    n = len(sample)
    dist = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            chord_sq = boundary_chord_sq(sample[i], sample[j], o)
            if not isinstance(chord_sq, float):
                chord_sq = float(midpoint(chord_sq))
            w = chord_sq ** (eps / 2.0) / (2.0 ** eps) if chord_sq else 0.0
            dist[i][j] = dist[j][i] = w
    for k in range(n):
        row_k = dist[k]
        for i in range(n):
            dik = dist[i][k]
            row_i = dist[i]
            for j in range(n):
                alt = dik + row_k[j]
                if alt < row_i[j]:
                    row_i[j] = alt
    return dist
