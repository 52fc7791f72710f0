"""Geometry of the model plane of constant curvature k.

The model plane is realized through canonical unit quadrics: the unit sphere
in R^3 for k > 0, the Euclidean plane for k = 0, and the unit hyperboloid
(t > 0 sheet of <x,x> = 1 with the Minkowski form t^2 - x^2 - y^2) for k < 0.
Points live on the unit quadric; the 1/sqrt(|k|) length scale enters only in
distance, exponential and triangle formulas. Angles are scale-free and are
computed directly on the quadric.

All values are immutable and every function is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AmbiguousGeodesic, InvalidInput

# Below this magnitude a curvature is treated as flat: the reduced sides
# k*len^2 are beyond double precision anyway.
_FLAT_EPS = 1e-14

_CLAMP_TOL = 1e-12
_ANTIPODAL_TOL = 1e-9


@dataclass(frozen=True)
class Curvature:
    """Sectional curvature of the model plane, units 1/length^2."""

    k: float

    def __post_init__(self):
        if not math.isfinite(self.k):
            raise InvalidInput(f"curvature must be finite, got {self.k}")

    @property
    def sign(self) -> int:
        if self.k > _FLAT_EPS:
            return 1
        if self.k < -_FLAT_EPS:
            return -1
        return 0

    @property
    def sqrt_abs(self) -> float:
        return math.sqrt(abs(self.k))

    @property
    def diameter_bound(self) -> float:
        """pi/sqrt(k) for k > 0, infinity otherwise."""
        if self.sign > 0:
            return math.pi / self.sqrt_abs
        return math.inf


FLAT = Curvature(0.0)


@dataclass(frozen=True)
class ModelPoint:
    """A point of the model plane in canonical embedding coordinates."""

    curvature: Curvature
    coords: tuple

    def __post_init__(self):
        c = tuple(float(x) for x in self.coords)
        object.__setattr__(self, "coords", c)
        s = self.curvature.sign
        if s == 0:
            if len(c) != 2:
                raise InvalidInput("flat model point needs 2 coordinates")
        else:
            if len(c) != 3:
                raise InvalidInput("curved model point needs 3 coordinates")
            q = _quadric_form(s, c, c)
            if abs(q - 1.0) > 1e-12:
                raise InvalidInput(
                    f"embedding constraint violated: <x,x> = {q!r}, expected 1"
                )
            if s < 0 and c[0] <= 0:
                raise InvalidInput("hyperboloid point must lie on the t > 0 sheet")

    @property
    def vec(self) -> np.ndarray:
        return np.asarray(self.coords)

    def tolist(self) -> list:
        return list(self.coords)


def _quadric_form(sign: int, x, y) -> float:
    if sign > 0:
        return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
    return x[0] * y[0] - x[1] * y[1] - x[2] * y[2]


def _require_same(curv: Curvature, *points: ModelPoint):
    for p in points:
        if abs(p.curvature.k - curv.k) > 0:
            raise InvalidInput(
                f"curvature mismatch: point has k={p.curvature.k}, expected k={curv.k}"
            )


def _clamp_unit(x: float, tol: float = _CLAMP_TOL) -> float:
    """Clamp a would-be cosine into [-1, 1]; excursions beyond tol are bugs."""
    if x > 1.0:
        if x - 1.0 > tol:
            raise InvalidInput(f"cosine argument {x!r} exceeds 1 beyond tolerance")
        return 1.0
    if x < -1.0:
        if -1.0 - x > tol:
            raise InvalidInput(f"cosine argument {x!r} below -1 beyond tolerance")
        return -1.0
    return x


def model_origin(curv: Curvature) -> ModelPoint:
    s = curv.sign
    if s == 0:
        return ModelPoint(curv, (0.0, 0.0))
    if s > 0:
        return ModelPoint(curv, (0.0, 0.0, 1.0))
    return ModelPoint(curv, (1.0, 0.0, 0.0))


# ---------------------------------------------------------------------------
# scalar trigonometry
# ---------------------------------------------------------------------------

def rho_k(curv: Curvature, x: float) -> float:
    """Modified distance potential: rho''(x) = 1 - k*rho(x), rho(0) = 0.

    Equal to (1 - cos(sqrt(k) x))/k for k > 0, x^2/2 for k = 0, and
    (1 - cosh(sqrt(-k) x))/k for k < 0.
    """
    if x < 0:
        raise InvalidInput(f"rho_k needs x >= 0, got {x}")
    s = curv.sign
    if s == 0:
        return 0.5 * x * x
    r = curv.sqrt_abs
    if s > 0:
        if x > 2.0 * math.pi / r + _CLAMP_TOL:
            raise InvalidInput(f"rho_k argument {x} exceeds 2*pi/sqrt(k)")
        return (1.0 - math.cos(r * x)) / curv.k
    return (1.0 - math.cosh(r * x)) / curv.k


def _check_side(curv: Curvature, name: str, v: float):
    if v < -_CLAMP_TOL:
        raise InvalidInput(f"side {name} must be nonnegative, got {v}")
    if curv.sign > 0 and v > curv.diameter_bound + _CLAMP_TOL:
        raise InvalidInput(
            f"side {name}={v} exceeds the diameter bound pi/sqrt(k)="
            f"{curv.diameter_bound}"
        )


def side_from_sas(curv: Curvature, a: float, b: float, gamma: float) -> float:
    """Side opposite the angle gamma enclosed by sides a and b.

    Uses half-angle forms (stable near degenerate triangles):
      k = 0:  c^2 = (a-b)^2 + 4ab sin^2(g/2)
      k > 0:  sin^2(c'/2) = sin^2((a'-b')/2) + sin a' sin b' sin^2(g/2)
      k < 0:  sinh^2(c'/2) = sinh^2((a'-b')/2) + sinh a' sinh b' sin^2(g/2)
    with primes denoting sides scaled by sqrt(|k|).
    """
    _check_side(curv, "a", a)
    _check_side(curv, "b", b)
    if gamma < -_CLAMP_TOL or gamma > math.pi + _CLAMP_TOL:
        raise InvalidInput(f"angle gamma must lie in [0, pi], got {gamma}")
    gamma = min(max(gamma, 0.0), math.pi)
    a = max(a, 0.0)
    b = max(b, 0.0)
    sg = math.sin(0.5 * gamma)
    s = curv.sign
    if s == 0:
        return math.hypot(a - b, 2.0 * math.sqrt(a * b) * sg)
    r = curv.sqrt_abs
    ar, br = a * r, b * r
    if s > 0:
        h = math.sin(0.5 * (ar - br)) ** 2 + math.sin(ar) * math.sin(br) * sg * sg
        h = _clamp_unit(math.sqrt(max(h, 0.0)))
        return 2.0 * math.asin(h) / r
    h = math.sinh(0.5 * (ar - br)) ** 2 + math.sinh(ar) * math.sinh(br) * sg * sg
    return 2.0 * math.asinh(math.sqrt(max(h, 0.0))) / r


def angle_from_sss(curv: Curvature, a: float, b: float, c: float) -> float:
    """Angle opposite side c in the triangle with sides (a, b, c).

    Half-angle form: tan^2(g/2) = f(s-a) f(s-b) / (f(s) f(s-c)) with
    f = sin, sinh or the identity depending on the sign of k and
    s the semiperimeter (in reduced units for k != 0).
    """
    _check_side(curv, "a", a)
    _check_side(curv, "b", b)
    _check_side(curv, "c", c)
    scale = max(a + b + c, 1.0)
    tol = _CLAMP_TOL * scale
    if a + b < c - tol or a + c < b - tol or b + c < a - tol:
        raise InvalidInput(f"triangle inequality violated for sides ({a}, {b}, {c})")
    if a <= tol or b <= tol:
        raise InvalidInput("angle undefined when an adjacent side vanishes")
    s = curv.sign
    if s > 0:
        if a + b + c >= 2.0 * curv.diameter_bound - _CLAMP_TOL:
            raise InvalidInput(
                f"perimeter {a + b + c} must stay below 2*pi/sqrt(k) for k > 0"
            )

    if s == 0:
        f = lambda x: x
        ra, rb, rc = a, b, c
    else:
        r = curv.sqrt_abs
        ra, rb, rc = a * r, b * r, c * r
        f = math.sin if s > 0 else math.sinh
    sp = 0.5 * (ra + rb + rc)
    rtol = _CLAMP_TOL * max(sp, 1.0)
    # exact degenerate triangles: snap to 0 or pi instead of amplifying
    # roundoff through the square root
    if sp - rc <= rtol:
        return math.pi
    if sp - ra <= rtol or sp - rb <= rtol:
        return 0.0
    num = f(sp - ra) * f(sp - rb)
    den = f(sp) * f(sp - rc)
    if den <= 0.0:
        return math.pi
    if num < 0.0:
        num = 0.0
    return 2.0 * math.atan2(math.sqrt(num), math.sqrt(den))


# ---------------------------------------------------------------------------
# points, tangents, exponential map
# ---------------------------------------------------------------------------

def dist_k(curv: Curvature, p: ModelPoint, q: ModelPoint) -> float:
    """Geodesic distance between two model points."""
    _require_same(curv, p, q)
    s = curv.sign
    if s == 0:
        return math.hypot(p.coords[0] - q.coords[0], p.coords[1] - q.coords[1])
    if s > 0:
        u, v = p.vec, q.vec
        cr = np.cross(u, v)
        return math.atan2(float(np.linalg.norm(cr)), float(np.dot(u, v))) / curv.sqrt_abs
    d = tuple(p.coords[i] - q.coords[i] for i in range(3))
    qd = -_quadric_form(-1, d, d)  # = 4 sinh^2(d'/2), nonnegative
    return 2.0 * math.asinh(0.5 * math.sqrt(max(qd, 0.0))) / curv.sqrt_abs


def tangent_dot(p: ModelPoint, w1, w2) -> float:
    """Riemannian inner product of tangent vectors at p (embedding coords)."""
    s = p.curvature.sign
    if s == 0:
        return w1[0] * w2[0] + w1[1] * w2[1]
    if s > 0:
        return w1[0] * w2[0] + w1[1] * w2[1] + w1[2] * w2[2]
    return -_quadric_form(-1, w1, w2)


def direction(p: ModelPoint, q: ModelPoint):
    """Unit tangent vector at p pointing along the geodesic toward q."""
    _require_same(p.curvature, q)
    s = p.curvature.sign
    if s == 0:
        dx = (q.coords[0] - p.coords[0], q.coords[1] - p.coords[1])
        n = math.hypot(*dx)
        if n < 1e-15:
            raise InvalidInput("direction undefined for coincident points")
        return (dx[0] / n, dx[1] / n)
    u, v = p.vec, q.vec
    if s > 0:
        w = v - float(np.dot(u, v)) * u
    else:
        w = v - _quadric_form(-1, u, v) * u
    n2 = tangent_dot(p, w, w)
    if n2 < 1e-30:
        raise InvalidInput("direction undefined for coincident or antipodal points")
    w = w / math.sqrt(n2)
    return tuple(float(x) for x in w)


def exp_point(p: ModelPoint, w, t: float) -> ModelPoint:
    """Point at arclength t along the geodesic from p with unit tangent w."""
    curv = p.curvature
    s = curv.sign
    if s == 0:
        return ModelPoint(curv, (p.coords[0] + t * w[0], p.coords[1] + t * w[1]))
    r = curv.sqrt_abs
    u = p.vec
    wv = np.asarray(w)
    if s > 0:
        x = math.cos(t * r) * u + math.sin(t * r) * wv
        x = x / np.linalg.norm(x)
    else:
        x = math.cosh(t * r) * u + math.sinh(t * r) * wv
        x = x / math.sqrt(max(_quadric_form(-1, x, x), 1e-300))
    return ModelPoint(curv, tuple(float(v) for v in x))


def geodesic_point(curv: Curvature, p: ModelPoint, q: ModelPoint, t: float) -> ModelPoint:
    """Point at arclength t from p along the minimal geodesic [pq]."""
    _require_same(curv, p, q)
    d = dist_k(curv, p, q)
    if t < -_CLAMP_TOL or t > d + _CLAMP_TOL:
        raise InvalidInput(f"parameter t={t} outside [0, {d}]")
    if curv.sign > 0 and d >= curv.diameter_bound - _ANTIPODAL_TOL:
        raise AmbiguousGeodesic(
            f"endpoints at distance {d} are within {_ANTIPODAL_TOL} of antipodal"
        )
    t = min(max(t, 0.0), d)
    if d < 1e-15 or t == 0.0:
        return p
    return exp_point(p, direction(p, q), t)


def _oriented_area(p: ModelPoint, w1, w2) -> float:
    s = p.curvature.sign
    if s == 0:
        return w1[0] * w2[1] - w1[1] * w2[0]
    m = np.array([p.coords, w1, w2])
    return float(np.linalg.det(m))


def signed_angle(p: ModelPoint, w1, w2) -> float:
    """Signed angle from tangent w1 to tangent w2 at p, in (-pi, pi]."""
    return math.atan2(_oriented_area(p, w1, w2), tangent_dot(p, w1, w2))


def angle_at(p: ModelPoint, q: ModelPoint, r: ModelPoint) -> float:
    """Unsigned angle at vertex p between the geodesics [pq] and [pr]."""
    return abs(signed_angle(p, direction(p, q), direction(p, r)))


def left_normal(p: ModelPoint, w):
    """Unit tangent at p obtained by rotating w a quarter turn, positively."""
    s = p.curvature.sign
    if s == 0:
        return (-w[1], w[0])
    n = np.cross(p.vec, np.asarray(w))
    if s < 0:
        n = -np.array([n[0], -n[1], -n[2]])  # -G(u x w)
        n2 = tangent_dot(p, n, n)
        n = n / math.sqrt(n2)
    return tuple(float(x) for x in n)


def polar_frame(p: ModelPoint):
    """Deterministic orthonormal tangent frame (e1, e2) at p, e2 = left_normal(e1)."""
    s = p.curvature.sign
    if s == 0:
        return (1.0, 0.0), (0.0, 1.0)
    if s > 0:
        u = p.vec
        seed = np.array([0.0, 0.0, 1.0]) if abs(u[2]) < 1.0 - 1e-9 else np.array([1.0, 0.0, 0.0])
        w = seed - float(np.dot(u, seed)) * u
    else:
        u = p.vec
        seed = np.array([0.0, 1.0, 0.0])
        w = seed - _quadric_form(-1, u, seed) * u
        if tangent_dot(p, w, w) < 1e-18:
            seed = np.array([0.0, 0.0, 1.0])
            w = seed - _quadric_form(-1, u, seed) * u
    w = w / math.sqrt(tangent_dot(p, w, w))
    e1 = tuple(float(x) for x in w)
    return e1, left_normal(p, e1)


def exp_polar(pole: ModelPoint, r: float, phi: float) -> ModelPoint:
    """Point at distance r from pole at bearing phi in the pole's polar frame."""
    if r < 0:
        raise InvalidInput(f"radius must be nonnegative, got {r}")
    if r == 0.0:
        return pole
    e1, e2 = polar_frame(pole)
    w = tuple(math.cos(phi) * a + math.sin(phi) * b for a, b in zip(e1, e2))
    return exp_point(pole, w, r)


def to_polar(pole: ModelPoint, x: ModelPoint):
    """Inverse of exp_polar: (r, phi) of x in the pole's polar frame."""
    r = dist_k(pole.curvature, pole, x)
    if r < 1e-15:
        return 0.0, 0.0
    e1, e2 = polar_frame(pole)
    w = direction(pole, x)
    return r, math.atan2(tangent_dot(pole, w, e2), tangent_dot(pole, w, e1))


def place_sas(
    curv: Curvature,
    pole: ModelPoint,
    foot: ModelPoint,
    radial_dist: float,
    angle_at_foot: float,
    side: str = "left",
) -> ModelPoint:
    """Place the point x with |foot x| = radial_dist making the prescribed
    angle at foot with [foot pole], on the requested side of the directed
    line pole -> foot.
    """
    _require_same(curv, pole, foot)
    if side not in ("left", "right"):
        raise InvalidInput(f"side must be 'left' or 'right', got {side!r}")
    if dist_k(curv, pole, foot) < 1e-12:
        raise InvalidInput("pole and foot coincide; the configuration is degenerate")
    if angle_at_foot < -_CLAMP_TOL or angle_at_foot > math.pi + _CLAMP_TOL:
        raise InvalidInput(f"angle_at_foot must lie in [0, pi], got {angle_at_foot}")
    if radial_dist < 0:
        raise InvalidInput(f"radial_dist must be nonnegative, got {radial_dist}")
    if curv.sign > 0 and radial_dist >= curv.diameter_bound - _ANTIPODAL_TOL:
        raise AmbiguousGeodesic(
            f"radial_dist {radial_dist} within {_ANTIPODAL_TOL} of the antipodal range"
        )
    angle_at_foot = min(max(angle_at_foot, 0.0), math.pi)
    w_pole = direction(foot, pole)
    # 'left' is taken relative to the directed line pole -> foot
    line_dir = tuple(-x for x in w_pole)
    n = left_normal(foot, line_dir)
    sg = 1.0 if side == "left" else -1.0
    w = tuple(
        math.cos(angle_at_foot) * a + math.sin(angle_at_foot) * sg * b
        for a, b in zip(w_pole, n)
    )
    return exp_point(foot, w, radial_dist)


# ---------------------------------------------------------------------------
# segments and triangles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelSegment:
    """A minimal geodesic segment between two model points."""

    start: ModelPoint
    end: ModelPoint
    length: float

    def __post_init__(self):
        curv = self.start.curvature
        d = dist_k(curv, self.start, self.end)
        if abs(d - self.length) > 1e-10:
            raise InvalidInput(f"segment length {self.length} != distance {d}")
        if curv.sign > 0 and self.length > curv.diameter_bound + _CLAMP_TOL:
            raise InvalidInput("segment longer than pi/sqrt(k)")

    @classmethod
    def between(cls, curv: Curvature, p: ModelPoint, q: ModelPoint) -> "ModelSegment":
        _require_same(curv, p, q)
        return cls(p, q, dist_k(curv, p, q))

    def point_at(self, t: float) -> ModelPoint:
        return geodesic_point(self.start.curvature, self.start, self.end, t)


@dataclass(frozen=True)
class ModelTriangle:
    """Geodesic triangle in the model plane; sides[i] is opposite vertices[i]."""

    vertices: tuple
    sides: tuple
    angles: tuple

    @classmethod
    def from_sides(cls, curv: Curvature, a: float, b: float, c: float) -> "ModelTriangle":
        """Realize the triangle with |v1 v2| = a, |v0 v2| = b, |v0 v1| = c."""
        alpha = angle_from_sss(curv, b, c, a)  # angle at v0
        beta = angle_from_sss(curv, a, c, b)   # angle at v1
        gamma = angle_from_sss(curv, a, b, c)  # angle at v2
        v0 = model_origin(curv)
        v1 = exp_polar(v0, c, 0.0)
        v2 = exp_polar(v0, b, alpha)
        return cls((v0, v1, v2), (a, b, c), (alpha, beta, gamma))

    @property
    def perimeter(self) -> float:
        return sum(self.sides)

    def tolist(self) -> list:
        return [v.tolist() for v in self.vertices]


# ---------------------------------------------------------------------------
# convexity and perimeter of closed geodesic polygons
# ---------------------------------------------------------------------------

def polygon_turnings(points):
    """Signed turning angles at each vertex of a closed geodesic polygon."""
    n = len(points)
    if n < 3:
        raise InvalidInput("polygon needs at least 3 vertices")
    turns = []
    for i in range(n):
        prev_p = points[(i - 1) % n]
        v = points[i]
        next_p = points[(i + 1) % n]
        t_in = tuple(-x for x in direction(v, prev_p))
        t_out = direction(v, next_p)
        turns.append(signed_angle(v, t_in, t_out))
    return turns


@dataclass(frozen=True)
class PerimeterReport:
    perimeter: float
    bound: float
    bound_satisfied: bool
    equality_flag: bool
    turnings: tuple = field(repr=False, default=())


def convex_polygon_perimeter_check(curv: Curvature, polygon) -> PerimeterReport:
    """Check the total-perimeter bound 2*pi/sqrt(k) for a closed convex
    geodesic polygon on the sphere of curvature k > 0.

    The equality case is the degenerate polygon lying on a single great
    circle (a union of two half great circles).
    """
    if curv.sign <= 0:
        raise InvalidInput("the perimeter bound applies to k > 0 only")
    pts = list(polygon)
    _require_same(curv, *pts)
    for i, p in enumerate(pts):
        d = dist_k(curv, p, pts[(i + 1) % len(pts)])
        if d >= curv.diameter_bound - _ANTIPODAL_TOL:
            raise InvalidInput(f"side after vertex {i} is antipodal; subdivide it")
    turns = polygon_turnings(pts)
    ref = max(turns, key=abs)
    sgn = 1.0 if ref >= 0 else -1.0
    for i, t in enumerate(turns):
        if t * sgn < -1e-9:
            raise InvalidInput(f"polygon is not convex: turning flips sign at vertex {i}")
    peri = sum(dist_k(curv, pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts)))
    bound = 2.0 * math.pi / curv.sqrt_abs
    return PerimeterReport(
        perimeter=peri,
        bound=bound,
        bound_satisfied=peri <= bound + 1e-9,
        equality_flag=abs(peri - bound) <= 1e-9,
        turnings=tuple(turns),
    )


# ---------------------------------------------------------------------------
# distance-sum monotonicity along rays from an interior point
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonotoneReport:
    t: tuple
    total: tuple
    monotone: bool


def sum_dist_monotone_check(
    curv: Curvature,
    p1: ModelPoint,
    p2: ModelPoint,
    q: ModelPoint,
    ray: ModelSegment,
    n: int = 100,
) -> MonotoneReport:
    """Sample |p1 c(t)| + |p2 c(t)| along the ray c issued from a point q
    interior to [p1 p2] and check that it increases strictly.

    Strictness is relaxed by 1e-10 at t = 0, where the derivative can vanish
    (perpendicular ray) and the growth is second order.
    """
    _require_same(curv, p1, p2, q)
    d12 = dist_k(curv, p1, p2)
    d1q = dist_k(curv, p1, q)
    d2q = dist_k(curv, p2, q)
    if abs(d1q + d2q - d12) > 1e-9:
        raise InvalidInput("q does not lie on [p1 p2]")
    if min(d1q, d2q) < 1e-9:
        raise InvalidInput("q must be strictly interior to [p1 p2]")
    if curv.sign > 0:
        if d12 >= curv.diameter_bound:
            raise InvalidInput("|p1 p2| must stay below pi/sqrt(k)")
        if ray.length > curv.diameter_bound + _CLAMP_TOL:
            raise InvalidInput("ray longer than pi/sqrt(k)")
    if dist_k(curv, ray.start, q) > 1e-9:
        raise InvalidInput("ray must start at q")
    ts = [ray.length * i / n for i in range(n + 1)]
    totals = []
    for t in ts:
        c = ray.point_at(t)
        totals.append(dist_k(curv, p1, c) + dist_k(curv, p2, c))
    diffs = [totals[i + 1] - totals[i] for i in range(n)]
    monotone = all(d > -1e-10 for d in diffs[:1]) and all(d > 0 for d in diffs[1:])
    return MonotoneReport(t=tuple(ts), total=tuple(totals), monotone=monotone)


# ---------------------------------------------------------------------------
# the two-triangle gluing criterion (Alexandrov's lemma)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GluingReport:
    angle_sum_at_q: float
    angle_prq: float
    angle_psq: float
    comparison_angle_r: float
    comparison_angle_s: float
    sum_le_pi: bool
    sum_ge_pi: bool
    angles_ge: bool
    angles_le: bool
    consistent: bool


def alexandrov_lemma(
    curv: Curvature,
    pq: float,
    pr: float,
    ps: float,
    qr: float,
    qs: float,
    tol: float = 1e-9,
) -> GluingReport:
    """Evaluate both directions of the gluing criterion for two triangles
    (p,q,r) and (p,q,s) joined exterior-to-exterior along [pq]:

        angle(pqr) + angle(pqs) <= pi  iff
        angle(prq) >= angle(abc) and angle(psq) >= angle(acb),

    (and the same with every inequality reversed), where (a,b,c) is the
    triangle with |ab| = |pr|, |ac| = |ps|, |bc| = |qr| + |qs|.
    """
    bc = qr + qs
    scale = max(pq + pr + ps + bc, 1.0)
    if pr + ps < bc - _CLAMP_TOL * scale or abs(pr - ps) > bc + _CLAMP_TOL * scale:
        raise InvalidInput("comparison triangle (pr, ps, qr+qs) is unrealizable")
    if curv.sign > 0 and pr + ps + bc >= 2.0 * curv.diameter_bound:
        raise InvalidInput("comparison triangle perimeter exceeds 2*pi/sqrt(k)")
    angle_sum = angle_from_sss(curv, pq, qr, pr) + angle_from_sss(curv, pq, qs, ps)
    angle_prq = angle_from_sss(curv, pr, qr, pq)
    angle_psq = angle_from_sss(curv, ps, qs, pq)
    comp_r = angle_from_sss(curv, pr, bc, ps)  # angle at b
    comp_s = angle_from_sss(curv, ps, bc, pr)  # angle at c
    sum_le = angle_sum <= math.pi + tol
    sum_ge = angle_sum >= math.pi - tol
    angles_ge = angle_prq >= comp_r - tol and angle_psq >= comp_s - tol
    angles_le = angle_prq <= comp_r + tol and angle_psq <= comp_s + tol
    consistent = True
    if angle_sum < math.pi - tol:
        consistent = consistent and angles_ge
    if angle_sum > math.pi + tol:
        consistent = consistent and angles_le
    if angle_prq > comp_r + tol and angle_psq > comp_s + tol:
        consistent = consistent and sum_le
    if angle_prq < comp_r - tol and angle_psq < comp_s - tol:
        consistent = consistent and sum_ge
    return GluingReport(
        angle_sum_at_q=angle_sum,
        angle_prq=angle_prq,
        angle_psq=angle_psq,
        comparison_angle_r=comp_r,
        comparison_angle_s=comp_s,
        sum_le_pi=sum_le,
        sum_ge_pi=sum_ge,
        angles_ge=angles_ge,
        angles_le=angles_le,
        consistent=consistent,
    )
