"""Limit points from infinite reduced words and ray diagnostics.

Limit-point estimates come from the exact nested-disk machinery.  The
conicality, depth, Dirichlet and Jorgensen diagnostics sample geodesic rays
against finite word balls; because interesting offsets sit many orders of
magnitude below the disk centers, all ray arithmetic runs in a dedicated
high-precision real context rather than machine floats.  The verdicts remain
labelled heuristics: finite data cannot decide conicality, so every profile
records the (horizon, ball, step) provenance it was computed with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from mpmath import ctx_mp

from .hyperbolic import BoundaryPoint
from .schedule import GeneratorSchedule
from .words import ReducedWord, word_disk

# slimness constant for hyperbolic-plane triangles: 2 arccosh(sqrt(2))
DELTA_0 = 2.0 * math.acosh(math.sqrt(2.0))

ESCAPING = "escaping (nonconical-consistent)"
RECURRENT = "recurrent (conical-consistent)"
EMPTY = "empty profile"

# Ray numerics context.  300 bits keeps sub-ulp offsets around centers like
# 2114 meaningful down to the depth-4 disk scales the diagnostics probe.
_MP = ctx_mp.MPContext()
_MP.prec = 300


def _num(x):
    """Convert int/float/Fraction into the high-precision context exactly."""
    if isinstance(x, Fraction):
        return _MP.mpf(x.numerator) / _MP.mpf(x.denominator)
    return _MP.mpf(x)


def _point(x, y) -> Tuple[object, object]:
    return (_num(x), _num(y))


def _hyp_dist(p, q) -> float:
    px, py = p
    qx, qy = q
    dx = px - qx
    dy = py - qy
    u = 1 + (dx * dx + dy * dy) / (2 * py * qy)
    return float(_MP.acosh(u))


@dataclass
class WordPath:
    """Lazily extensible reduced index sequence naming an infinite word."""

    generator: Callable[[int], int]
    description: str

    def prefix(self, n: int) -> Tuple[int, ...]:
        letters = tuple(self.generator(j) for j in range(n))
        for a, b in zip(letters, letters[1:]):
            if a == b:
                raise ValueError(f"path is not reduced at prefix {letters}")
        return letters

    @staticmethod
    def periodic(block: Sequence[int]) -> "WordPath":
        block = tuple(block)
        if len(block) >= 2 and block[0] == block[-1]:
            raise ValueError("periodic block repeats its boundary letter")
        return WordPath(lambda j: block[j % len(block)],
                        description=f"periodic({','.join(map(str, block))})")

    @staticmethod
    def escalating(start: Sequence[int]) -> "WordPath":
        start = tuple(start)
        last = start[-1] if start else 0

        def gen(j: int) -> int:
            if j < len(start):
                return start[j]
            return last + (j - len(start) + 1)

        return WordPath(gen, description=f"escalating({','.join(map(str, start))})")

    @staticmethod
    def finite(letters: Sequence[int]) -> "WordPath":
        letters = tuple(letters)

        def gen(j: int) -> int:
            if j >= len(letters):
                raise IndexError("finite path exhausted")
            return letters[j]

        return WordPath(gen, description=f"finite({','.join(map(str, letters))})")


def limit_point(schedule: GeneratorSchedule, path: WordPath,
                depth: int) -> Tuple[BoundaryPoint, Fraction]:
    """Depth-n limit point estimate: center of the depth-n nested disk,
    with the disk radius as a certified error bound (nesting)."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    word = ReducedWord(path.prefix(depth))
    disk = word_disk(schedule, word)
    return BoundaryPoint.at(disk.center), Fraction(disk.radius)


def default_basepoint(schedule: GeneratorSchedule,
                      first_letter: int) -> Tuple[Fraction, Fraction]:
    """Basepoint just above the apex of the first letter's mirror circle.

    Sitting near the route of the word avoids starting the ray a long detour
    away from the region the diagnostics are about; the factor 2 keeps the
    point off the mirror itself (trivial stabilizer).
    """
    e = schedule.entry(first_letter)
    return (Fraction(e.center), 2 * Fraction(e.radius))


# ---------------------------------------------------------------------------
# geodesic rays
# ---------------------------------------------------------------------------

def geodesic_ray_point(p, target, t: float):
    """Unit-speed point at time t on the ray from p toward the boundary target
    (None means the point at infinity, i.e. the vertical ray).

    p is an (x, y) pair; coordinates may be Fractions, floats or
    high-precision reals.  Conjugating by z -> -1/(z - target) turns the ray
    into the vertical one, which has the closed-form parameterization.
    """
    if t < 0:
        raise ValueError("ray time must be nonnegative")
    px, py = (_num(p[0]), _num(p[1]))
    if target is None:
        return (px, py * _MP.exp(_num(t)))
    lam = _num(target)
    # w = -1/(p - lam) with p - lam = dx + i y
    dx = px - lam
    denom = dx * dx + py * py
    wx = -dx / denom
    wy = py / denom
    wy_t = wy * _MP.exp(_num(t))
    # back: z = lam - 1/w_t = lam - (wx - i wy_t)/|w_t|^2
    denom_t = wx * wx + wy_t * wy_t
    zx = lam - wx / denom_t
    zy = wy_t / denom_t
    return (zx, zy)


# ---------------------------------------------------------------------------
# orbit balls
# ---------------------------------------------------------------------------

@dataclass
class OrbitBall:
    """Orbit of a basepoint under all reduced words of length <= n.

    Closed under inversion (the reversal of a reduced word is reduced), so
    min-distance queries against the ball double as quotient-distance
    proxies in either argument.
    """

    basepoint: Tuple[object, object]
    radius: int
    alphabet: Tuple[int, ...]
    points: List[Tuple[Tuple[int, ...], Tuple[object, object]]] = \
        field(default_factory=list)

    @staticmethod
    def build(schedule: GeneratorSchedule, p, radius: int,
              alphabet: Sequence[int]) -> "OrbitBall":
        alphabet = tuple(alphabet)
        base = _point(p[0], p[1]) if isinstance(p, tuple) else \
            _point(p.real, p.imag)
        pts = [((), base)]
        frontier = [((), base)]
        mirrors = {i: (_num(Fraction(schedule.entry(i).center)),
                       _num(Fraction(schedule.entry(i).radius)))
                   for i in alphabet}
        for _ in range(radius):
            new_frontier = []
            for word, (zx, zy) in frontier:
                for letter in alphabet:
                    if word and word[0] == letter:
                        continue
                    # prepend: images h_letter(w(p)) enumerate length+1 words
                    c, r = mirrors[letter]
                    dx = zx - c
                    denom = dx * dx + zy * zy
                    r2 = r * r
                    image = (c + r2 * dx / denom, r2 * zy / denom)
                    new_frontier.append(((letter,) + word, image))
            pts.extend(new_frontier)
            frontier = new_frontier
        return OrbitBall(basepoint=base, radius=radius, alphabet=alphabet,
                         points=pts)

    def __len__(self):
        return len(self.points)


def orbit_distance(z, ball: OrbitBall) -> float:
    """Minimum hyperbolic distance from z to the orbit points; a finite-ball
    proxy for the quotient distance."""
    if not ball.points:
        raise ValueError("orbit ball is empty")
    if not isinstance(z, tuple):
        z = (z.real, z.imag)
    z = _point(z[0], z[1])
    return min(_hyp_dist(z, q) for _, q in ball.points)


# ---------------------------------------------------------------------------
# ray profiles and classifications
# ---------------------------------------------------------------------------

@dataclass
class RayProfile:
    basepoint: Tuple[object, object]
    target: Optional[object]
    horizon: float
    ball_radius: int
    step: float
    samples: List[Tuple[float, float]] = field(default_factory=list)
    classification: str = EMPTY
    threshold: float = 2.0 * DELTA_0

    @property
    def empty(self) -> bool:
        return not self.samples

    def min_d(self) -> float:
        return min(d for _, d in self.samples)

    def final_d(self) -> float:
        return self.samples[-1][1]

    def to_csv(self) -> str:
        lines = ["t,D_t,ball_n"]
        for t, d in self.samples:
            lines.append(f"{t!r},{d!r},{self.ball_radius}")
        return "\n".join(lines) + "\n"

    def summary_dict(self) -> dict:
        return {
            "classification": self.classification,
            "heuristic": True,
            "horizon": self.horizon,
            "ball_radius": self.ball_radius,
            "step": self.step,
            "threshold": self.threshold,
            "min_D": self.min_d() if self.samples else None,
            "final_D": self.final_d() if self.samples else None,
            "beta_proxy": beta_depth(self) if self.samples else None,
        }


def conicality_profile(schedule: GeneratorSchedule, p, target,
                       horizon: float, ball_radius: int, step: float,
                       alphabet: Optional[Sequence[int]] = None) -> RayProfile:
    """Sample the quotient-distance proxy D(t) = min over the word ball of
    d(ray(t), w(p)) and classify the trend.

    Classification is heuristic: "recurrent" as soon as D dips below twice
    the slimness constant somewhere in the last half of the horizon,
    otherwise "escaping".  The basepoint may be a complex number or an
    (x, y) pair of exact rationals; the target a real, a Fraction, or None
    for the point at infinity.
    """
    if not isinstance(p, tuple):
        p = (p.real, p.imag)
    profile = RayProfile(basepoint=_point(p[0], p[1]), target=target,
                         horizon=horizon, ball_radius=ball_radius, step=step)
    if horizon <= 0:
        return profile
    if alphabet is None:
        alphabet = schedule.indices[:min(4, len(schedule.indices))]
    ball = OrbitBall.build(schedule, p, ball_radius, alphabet)
    t = 0.0
    while t <= horizon + 1e-12:
        z = geodesic_ray_point(p, target, t)
        profile.samples.append((t, orbit_distance(z, ball)))
        t += step
    threshold = profile.threshold
    last_half = [d for t, d in profile.samples if t >= 0.5 * horizon]
    if last_half and min(last_half) <= threshold:
        # the ray came back near the orbit late in the horizon
        profile.classification = RECURRENT
    else:
        profile.classification = ESCAPING
    return profile


def beta_depth(profile: RayProfile, tail_fraction: float = 0.5) -> float:
    """Finite-horizon proxy for the linear escape rate: the minimum of
    D(t)/t over the sampled tail, clamped to [0, 1]."""
    if profile.empty:
        raise ValueError("profile has no samples")
    cutoff = (1.0 - tail_fraction) * profile.horizon
    ratios = [d / t for t, d in profile.samples if t > max(cutoff, 0.0)]
    if not ratios:
        ratios = [d / t for t, d in profile.samples if t > 0]
    if not ratios:
        return 0.0
    return min(1.0, max(0.0, min(ratios)))


# ---------------------------------------------------------------------------
# Dirichlet membership and Jorgensen rays
# ---------------------------------------------------------------------------

def dirichlet_membership(x, ball: OrbitBall,
                         rel_tol: float = 1e-9) -> Tuple[bool, bool]:
    """Window approximation of membership in the Dirichlet domain centered at
    the ball's basepoint.

    Returns (inside, boundary_flag).  True means x is at least as close to
    the basepoint as to every orbit point in the ball -- a superset claim for
    the true domain, so only False is conclusive.  Equality within tolerance
    sets the flag.
    """
    if not isinstance(x, tuple):
        x = (x.real, x.imag)
    x = _point(x[0], x[1])
    d_p = _hyp_dist(x, ball.basepoint)
    boundary = False
    for word, q in ball.points:
        if not word:
            continue
        d_q = _hyp_dist(x, q)
        if math.isclose(d_p, d_q, rel_tol=rel_tol, abs_tol=1e-12):
            boundary = True
            continue
        if d_q < d_p:
            return False, False
    return True, boundary


@dataclass
class JorgensenResult:
    consistent: bool
    vacuous: bool
    first_failure_t: Optional[float] = None


def jorgensen_check(schedule: GeneratorSchedule, p, target, horizon: float,
                    ball_radius: int, step: float,
                    alphabet: Optional[Sequence[int]] = None) -> JorgensenResult:
    """Window approximation of the contained-in-a-Dirichlet-domain property:
    every sampled ray point must pass Dirichlet membership for the ball.
    True may be falsified by larger balls or horizons; False is conclusive.
    """
    if horizon <= 0:
        return JorgensenResult(consistent=True, vacuous=True)
    if not isinstance(p, tuple):
        p = (p.real, p.imag)
    if alphabet is None:
        alphabet = schedule.indices[:min(4, len(schedule.indices))]
    ball = OrbitBall.build(schedule, p, ball_radius, alphabet)
    t = 0.0
    while t <= horizon + 1e-12:
        z = geodesic_ray_point(p, target, t)
        inside, _ = dirichlet_membership(z, ball)
        if not inside:
            return JorgensenResult(consistent=False, vacuous=False,
                                   first_failure_t=t)
        t += step
    return JorgensenResult(consistent=True, vacuous=False)
