"""Problem 4: sampled pentagon configurations and numeric concyclicity certificates.

Configurations are built constructively around T = (0, 0):

* B and C are drawn in polar coordinates; D and E are B and C rotated about T
  by the same angle theta, which gives TB = TD, TC = TE and BC = DE;
* A is the intersection of the ray from B making angle alpha with BT and
  the ray from E making angle alpha with ET, on the interior side, so that
  angle ABT = angle TEA = alpha.

Convexity, T inside, and the two collinear orderings are then enforced by
rejection, together with a conditioning band: draws whose intersection
points land more than ``MAX_SPREAD`` scales from T are discarded.  All
residuals are relative to the configuration's scale (largest pairwise
distance among A..E and T).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import NamedTuple

TAU_HYP = 1e-9
TAU_ANGLE = 1e-9
CONCYCLIC_TOL = 1e-6
EPS_DET = 1e-9
# derived points farther than this many scales from T are too ill-conditioned to certify
MAX_SPREAD = 100.0


class DegenerateError(ValueError):
    pass


class IllConditionedError(ValueError):
    """Two lines that should meet are (nearly) parallel."""


class Point(NamedTuple):
    x: float
    y: float

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def scaled(self, s: float) -> "Point":
        return Point(self.x * s, self.y * s)

    def rotated(self, angle: float) -> "Point":
        c, s = math.cos(angle), math.sin(angle)
        return Point(c * self.x - s * self.y, s * self.x + c * self.y)


def polar(r: float, angle: float) -> Point:
    return Point(r * math.cos(angle), r * math.sin(angle))


def dist(p: Point, q: Point) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def cross(u: Point, v: Point) -> float:
    return u.x * v.y - u.y * v.x


def angle_at(a: Point, vertex: Point, b: Point) -> float:
    """Unsigned angle a-vertex-b in [0, pi]."""
    u, v = a - vertex, b - vertex
    return math.atan2(abs(cross(u, v)), u.x * v.x + u.y * v.y)


@dataclass(frozen=True)
class PentagonConfig:
    A: Point
    B: Point
    C: Point
    D: Point
    E: Point
    T: Point
    theta: float
    scale: float

    def __post_init__(self):
        for name in "ABCDET":
            p = getattr(self, name)
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise ValueError(f"point {name} is not finite: {p}")

    @classmethod
    def from_points(cls, A, B, C, D, E, T, theta: float = float("nan")) -> "PentagonConfig":
        pts = [Point(*p) for p in (A, B, C, D, E, T)]
        scale = max(dist(p, q) for i, p in enumerate(pts) for q in pts[i + 1 :])
        return cls(*pts, theta=theta, scale=scale)

    @property
    def pentagon(self) -> tuple[Point, ...]:
        return (self.A, self.B, self.C, self.D, self.E)

    def transformed(self, fn, theta=None) -> "PentagonConfig":
        pts = [fn(p) for p in (*self.pentagon, self.T)]
        return PentagonConfig.from_points(*pts, theta=self.theta if theta is None else theta)

    def mirrored(self) -> "PentagonConfig":
        return self.transformed(lambda p: Point(-p.x, p.y), theta=-self.theta)

    def to_dict(self) -> dict:
        d = {name: list(getattr(self, name)) for name in "ABCDET"}
        d.update(theta=self.theta, scale=self.scale)
        return d


class DerivedPoints(NamedTuple):
    P: Point
    Q: Point
    R: Point
    S: Point
    # positions along A->B (P, Q) and A->E (R, S), with A at 0 and B or E at 1
    t_P: float
    t_Q: float
    t_R: float
    t_S: float

    @property
    def order_pbaq(self) -> bool:
        return self.t_P > 1.0 and self.t_Q < 0.0

    @property
    def order_reas(self) -> bool:
        return self.t_R > 1.0 and self.t_S < 0.0


def intersect(a: Point, b: Point, c: Point, d: Point, scale: float) -> tuple[Point, float]:
    """Intersection of lines ab and cd, with its parameter t along a->b."""
    d1, d2 = b - a, d - c
    det = cross(d1, d2)
    if abs(det) < EPS_DET * scale * scale:
        raise IllConditionedError(f"lines are nearly parallel (det={det:.3g})")
    t = cross(c - a, d2) / det
    return a + d1.scaled(t), t


def derive_points(config: PentagonConfig) -> DerivedPoints:
    """P = AB∩CD, Q = AB∩CT, R = AE∩CD, S = AE∩DT."""
    c = config
    P, tP = intersect(c.A, c.B, c.C, c.D, c.scale)
    Q, tQ = intersect(c.A, c.B, c.C, c.T, c.scale)
    R, tR = intersect(c.A, c.E, c.C, c.D, c.scale)
    S, tS = intersect(c.A, c.E, c.D, c.T, c.scale)
    return DerivedPoints(P, Q, R, S, tP, tQ, tR, tS)


def _convex_orientation(poly) -> int:
    """+1 / -1 for a strictly convex polygon in CCW / CW order, 0 otherwise."""
    m = len(poly)
    edges = [poly[(i + 1) % m] - poly[i] for i in range(m)]
    turns = [cross(edges[i], edges[(i + 1) % m]) for i in range(m)]
    if all(t > 0 for t in turns):
        sign = 1
    elif all(t < 0 for t in turns):
        sign = -1
    else:
        return 0
    # a pentagram turns consistently too, but winds twice
    winding = sum(
        math.atan2(cross(u, v), u.x * v.x + u.y * v.y)
        for u, v in zip(edges, edges[1:] + edges[:1])
    )
    return sign if abs(abs(winding) - 2 * math.pi) < 1e-6 else 0


def _strictly_inside(poly, p: Point, orientation: int) -> bool:
    m = len(poly)
    return all(orientation * cross(poly[(i + 1) % m] - poly[i], p - poly[i]) > 0 for i in range(m))


@dataclass(frozen=True)
class HypothesisReport:
    residuals: dict[str, float]
    convex: bool
    t_inside: bool
    order_pbaq: bool
    order_reas: bool
    tau_hyp: float
    tau_angle: float

    @property
    def equalities_hold(self) -> bool:
        r = self.residuals
        return (
            r["TB=TD"] <= self.tau_hyp
            and r["TC=TE"] <= self.tau_hyp
            and r["BC=DE"] <= self.tau_hyp
            and r["ABT=TEA"] <= self.tau_angle
        )

    @property
    def passed(self) -> bool:
        return self.equalities_hold and self.convex and self.t_inside and self.order_pbaq and self.order_reas

    def failed(self) -> list[str]:
        out = [k for k, v in self.residuals.items() if v > (self.tau_angle if k == "ABT=TEA" else self.tau_hyp)]
        for name in ("convex", "t_inside", "order_pbaq", "order_reas"):
            if not getattr(self, name):
                out.append(name)
        return out


def hypothesis_check(config: PentagonConfig, tau_hyp: float = TAU_HYP, tau_angle: float = TAU_ANGLE) -> HypothesisReport:
    c = config
    floor = 1e-12 * c.scale
    segments = {
        "AB": (c.A, c.B), "BC": (c.B, c.C), "CD": (c.C, c.D), "DE": (c.D, c.E), "EA": (c.E, c.A),
        "TB": (c.T, c.B), "TC": (c.T, c.C), "TD": (c.T, c.D), "TE": (c.T, c.E),
    }
    for name, (p, q) in segments.items():
        if c.scale == 0 or dist(p, q) <= floor:
            raise DegenerateError(f"segment {name} has zero length")
    residuals = {
        "TB=TD": abs(dist(c.T, c.B) - dist(c.T, c.D)) / c.scale,
        "TC=TE": abs(dist(c.T, c.C) - dist(c.T, c.E)) / c.scale,
        "BC=DE": abs(dist(c.B, c.C) - dist(c.D, c.E)) / c.scale,
        "ABT=TEA": abs(angle_at(c.A, c.B, c.T) - angle_at(c.T, c.E, c.A)),
    }
    orientation = _convex_orientation(c.pentagon)
    inside = orientation != 0 and _strictly_inside(c.pentagon, c.T, orientation)
    try:
        derived = derive_points(c)
        pbaq, reas = derived.order_pbaq, derived.order_reas
    except IllConditionedError:
        pbaq = reas = False
    return HypothesisReport(residuals, orientation != 0, inside, pbaq, reas, tau_hyp, tau_angle)


def construct_config(r1: float, beta: float, r2: float, gamma: float, theta: float, alpha: float) -> PentagonConfig | None:
    """Build the configuration for one parameter draw, or None if A does not exist."""
    T = Point(0.0, 0.0)
    B, C = polar(r1, beta), polar(r2, gamma)
    D, E = B.rotated(theta), C.rotated(theta)
    # orientation of the would-be pentagon, read off the turn from B to C around T
    s = 1.0 if cross(B, C) > 0 else -1.0
    u = (T - B).rotated(s * alpha)
    v = (T - E).rotated(-s * alpha)
    det = cross(u, v)
    if abs(det) < 1e-12:
        return None
    w = E - B
    t1, t2 = cross(w, v) / det, cross(w, u) / det
    if t1 <= 0 or t2 <= 0:
        return None
    A = B + u.scaled(t1)
    return PentagonConfig.from_points(A, B, C, D, E, T, theta=theta)


def attempt_rng(seed: int, attempt: int) -> random.Random:
    """Independent stream per (seed, attempt); string seeding is stable across runs."""
    return random.Random(f"pentagon:{seed}:{attempt}")


def draw_parameters(rng: random.Random) -> tuple[float, ...]:
    r1 = rng.uniform(0.5, 2.0)
    beta = rng.uniform(0.0, 2 * math.pi)
    r2 = rng.uniform(0.5, 2.0)
    gamma = rng.uniform(0.0, 2 * math.pi)
    theta = rng.uniform(0.2, 2.9)
    alpha = rng.uniform(0.05, math.pi - 0.05)
    return r1, beta, r2, gamma, theta, alpha


def sample_config(seed: int, attempts: int = 1000, tau_hyp: float = TAU_HYP, tau_angle: float = TAU_ANGLE) -> PentagonConfig | None:
    """First accepted configuration among ``attempts`` draws for this seed."""
    if attempts < 1:
        raise ValueError("attempts must be >= 1")
    for attempt in range(attempts):
        config = construct_config(*draw_parameters(attempt_rng(seed, attempt)))
        if config is None:
            continue
        try:
            if hypothesis_check(config, tau_hyp, tau_angle).passed and well_conditioned(config):
                return config
        except (DegenerateError, IllConditionedError):
            continue
    return None


def well_conditioned(config: PentagonConfig, max_spread: float = MAX_SPREAD) -> bool:
    d = derive_points(config)
    return all(dist(config.T, p) <= max_spread * config.scale for p in (d.P, d.Q, d.R, d.S))


def power_residual(config: PentagonConfig, derived: DerivedPoints) -> float:
    """|TQ*TC - TS*TD| / scale^2."""
    c = config
    lhs = dist(c.T, derived.Q) * dist(c.T, c.C)
    rhs = dist(c.T, derived.S) * dist(c.T, c.D)
    return abs(lhs - rhs) / c.scale**2


def concyclic_residual(p1, p2, p3, p4, scale: float | None = None) -> float:
    """|det [x, y, x^2+y^2, 1]| / scale^4 for four points.

    Subtracting the fourth row and then the linear part of the squared
    column reduces the 4x4 determinant exactly to a 3x3 one in relative
    coordinates, which keeps it translation-invariant in floating point.
    ``scale`` defaults to the largest pairwise distance among the points.
    """
    pts = [Point(*p) for p in (p1, p2, p3, p4)]
    if scale is None:
        scale = max(dist(p, q) for i, p in enumerate(pts) for q in pts[i + 1 :])
    if scale == 0:
        return 0.0
    o = pts[3]
    rows = []
    for p in pts[:3]:
        u, v = p.x - o.x, p.y - o.y
        rows.append((u, v, u * u + v * v))
    (a, b, c), (d, e, f), (g, h, i) = rows
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return abs(det) / scale**4


@dataclass(frozen=True)
class Certificate:
    power: float
    cdqs: float
    psqr: float

    def worst(self) -> float:
        return max(self.power, self.cdqs, self.psqr)

    def as_dict(self) -> dict[str, float]:
        return {"power": self.power, "cdqs": self.cdqs, "psqr": self.psqr}


def certify(config: PentagonConfig) -> Certificate:
    d = derive_points(config)
    return Certificate(
        power=power_residual(config, d),
        cdqs=concyclic_residual(config.C, config.D, d.Q, d.S, config.scale),
        psqr=concyclic_residual(d.P, d.S, d.Q, d.R, config.scale),
    )


def perturb_c(config: PentagonConfig, rng: random.Random, magnitude: float = 0.05) -> PentagonConfig:
    """Move C by ``magnitude * scale`` in a random direction, breaking BC = DE and TC = TE."""
    phi = rng.uniform(0.0, 2 * math.pi)
    c = config
    return PentagonConfig.from_points(c.A, c.B, c.C + polar(magnitude * c.scale, phi), c.D, c.E, c.T, c.theta)


def symmetric_config() -> PentagonConfig:
    """Regular pentagon around T; it is mirror-symmetric, so TQ = TS and TC = TD."""
    angles = [90, 162, 234, 306, 18]
    A, B, C, D, E = (polar(1.0, math.radians(a)) for a in angles)
    return PentagonConfig.from_points(A, B, C, D, E, (0.0, 0.0), theta=math.radians(144))
