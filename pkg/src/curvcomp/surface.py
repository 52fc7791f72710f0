"""Parametric 2D Riemannian surface testbed.

Charts carry a vectorized metric evaluator plus optional analytic curvature
and Christoffel evaluators (central-difference fallbacks otherwise). On top
of that sit a fixed-step fourth-order geodesic integrator, a shooting-based
distance solver with a discrete curve-shortening fallback, scalar Jacobi
fields, and index forms.

Charts are immutable and all solvers are pure functions of their inputs.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import optimize
from scipy.interpolate import CubicHermiteSpline, CubicSpline
from scipy.integrate import simpson

from .errors import HypothesisViolation, InvalidInput, SearchFailure
from . import model_space as ms

_FD_REL_STEP = 1e-4


@dataclass(frozen=True)
class SurfacePoint:
    u: float
    v: float

    @property
    def xy(self):
        return np.array([self.u, self.v])


@dataclass(frozen=True)
class SurfaceVector:
    du: float
    dv: float

    @property
    def xy(self):
        return np.array([self.du, self.dv])


def _aspoint(p):
    if isinstance(p, SurfacePoint):
        return np.array([p.u, p.v], dtype=float)
    return np.asarray(p, dtype=float)


def _asvec(w):
    if isinstance(w, SurfaceVector):
        return np.array([w.du, w.dv], dtype=float)
    return np.asarray(w, dtype=float)


@dataclass(frozen=True)
class SurfaceChart:
    """A coordinate chart with metric g(u, v), shape (..., 2, 2)."""

    name: str
    metric: callable
    domain: tuple
    curvature: callable = None
    christoffel: callable = None
    v_period: float = None
    to_model: callable = None
    from_model: callable = None
    model_curvature: ms.Curvature = None
    params: dict = field(default_factory=dict)

    def in_domain(self, u, v):
        (u0, u1), (v0, v1) = self.domain
        return (u0 <= u <= u1) and (v0 <= v <= v1)

    @property
    def scale(self):
        (u0, u1), (v0, v1) = self.domain
        return max(u1 - u0, v1 - v0)


def metric_at(chart: SurfaceChart, u, v):
    g = np.asarray(chart.metric(u, v), dtype=float)
    return g


def _metric_derivs(chart, u, v, h):
    dg_du = (metric_at(chart, u + h, v) - metric_at(chart, u - h, v)) / (2 * h)
    dg_dv = (metric_at(chart, u, v + h) - metric_at(chart, u, v - h)) / (2 * h)
    return dg_du, dg_dv


def christoffel_at(chart: SurfaceChart, u, v):
    """Christoffel symbols Gamma[i, j, k] at (u, v); broadcasting over arrays.

    Analytic when the chart provides them, otherwise central differences of
    the metric with step 1e-4 of the domain scale.
    """
    if chart.christoffel is not None:
        return np.asarray(chart.christoffel(u, v), dtype=float)
    h = _FD_REL_STEP * min(chart.scale, 10.0)
    g = metric_at(chart, u, v)
    # D[a, b, c] = d_a g_{bc}
    D = np.stack(_metric_derivs(chart, u, v, h), axis=-3)
    ginv = np.linalg.inv(g)
    # Gamma^i_{jk} = 1/2 g^{il} (d_j g_{kl} + d_k g_{jl} - d_l g_{jk})
    dj_gkl = D                                  # [j, k, l]
    dk_gjl = np.swapaxes(D, -3, -2)             # [j, k, l] = D[k, j, l]
    dl_gjk = np.moveaxis(D, -3, -1)             # [j, k, l] = D[l, j, k]
    sym = dj_gkl + dk_gjl - dl_gjk
    return 0.5 * np.einsum("...il,...jkl->...ijk", ginv, sym)


def g_dot(chart, p, w1, w2):
    g = metric_at(chart, p[0], p[1])
    return float(w1 @ g @ w2)


def g_norm(chart, p, w):
    return math.sqrt(max(g_dot(chart, p, w, w), 0.0))


def orthonormal_frame(chart, p):
    """Gram-Schmidt frame (e1, e2) at p, positively oriented in chart coords."""
    p = _aspoint(p)
    g = metric_at(chart, p[0], p[1])
    e1 = np.array([1.0, 0.0]) / math.sqrt(g[0, 0])
    b2 = np.array([0.0, 1.0])
    b2 = b2 - (e1 @ g @ b2) * e1
    e2 = b2 / math.sqrt(b2 @ g @ b2)
    return e1, e2


# ---------------------------------------------------------------------------
# built-in charts
# ---------------------------------------------------------------------------

def _conformal_chart(k: float, name: str, extent: float) -> SurfaceChart:
    """Constant-curvature conformal (stereographic) chart g = lam^2 I with
    lam = 2 / (1 + k r^2)."""

    flat = k == 0.0

    def lam(u, v):
        if flat:
            return np.ones_like(np.asarray(u, dtype=float))
        return 2.0 / (1.0 + k * (u * u + v * v))

    def metric(u, v):
        l2 = lam(u, v) ** 2
        z = np.zeros_like(np.asarray(u, dtype=float))
        return np.stack(
            [np.stack([l2 + z, z], axis=-1), np.stack([z, l2 + z], axis=-1)], axis=-2
        )

    def curvature(u, v):
        return np.full_like(np.asarray(u, dtype=float), k)

    def christoffel(u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        denom = 1.0 + k * (u * u + v * v)
        su = -2.0 * k * u / denom  # d(log lam)/du
        sv = -2.0 * k * v / denom
        z = np.zeros_like(u)
        gam = np.empty(u.shape + (2, 2, 2))
        gam[..., 0, 0, 0] = su
        gam[..., 0, 0, 1] = sv
        gam[..., 0, 1, 0] = sv
        gam[..., 0, 1, 1] = -su
        gam[..., 1, 0, 0] = -sv
        gam[..., 1, 0, 1] = su
        gam[..., 1, 1, 0] = su
        gam[..., 1, 1, 1] = sv + z
        return gam

    curv = ms.Curvature(k)
    to_model = from_model = None
    if k > 0:
        rk = math.sqrt(k)

        def to_model(p):
            pu, pv = rk * p[0], rk * p[1]
            rr = pu * pu + pv * pv
            return ms.ModelPoint(
                curv, (2 * pu / (1 + rr), 2 * pv / (1 + rr), (1 - rr) / (1 + rr))
            )

        def from_model(mp):
            x, y, z = mp.coords
            return np.array([x / (1 + z), y / (1 + z)]) / rk

        extent = min(extent, 6.0 / rk)
    elif k < 0:
        rk = math.sqrt(-k)

        def to_model(p):
            pu, pv = rk * p[0], rk * p[1]
            rr = pu * pu + pv * pv
            return ms.ModelPoint(
                curv, ((1 + rr) / (1 - rr), 2 * pu / (1 - rr), 2 * pv / (1 - rr))
            )

        def from_model(mp):
            t, x, y = mp.coords
            return np.array([x / (1 + t), y / (1 + t)]) / rk

        extent = min(extent, 0.999 / rk)
    else:

        def to_model(p):
            return ms.ModelPoint(curv, (p[0], p[1]))

        def from_model(mp):
            return np.array(mp.coords)

    box = ((-extent, extent), (-extent, extent))
    return SurfaceChart(
        name=name,
        metric=metric,
        domain=box,
        curvature=curvature,
        christoffel=christoffel,
        to_model=to_model,
        from_model=from_model,
        model_curvature=curv,
        params={"k": k},
    )


def plane_chart(extent: float = 50.0) -> SurfaceChart:
    return _conformal_chart(0.0, "plane", extent)


def sphere_chart(R: float = 1.0) -> SurfaceChart:
    """Round sphere of radius R in a stereographic conformal chart."""
    c = _conformal_chart(1.0 / (R * R), "sphere", 1e9)
    return replace(c, params={"R": R})


def hyperbolic_chart(k: float = -1.0) -> SurfaceChart:
    if k >= 0:
        raise InvalidInput("hyperbolic chart needs k < 0")
    c = _conformal_chart(k, "hyperbolic", 1e9)
    return replace(c, params={"k": k})


def cylinder_chart(circumference: float = 2 * math.pi, extent: float = 50.0) -> SurfaceChart:
    def metric(u, v):
        z = np.zeros_like(np.asarray(u, dtype=float))
        one = np.ones_like(z)
        return np.stack(
            [np.stack([one, z], axis=-1), np.stack([z, one], axis=-1)], axis=-2
        )

    def curvature(u, v):
        return np.zeros_like(np.asarray(u, dtype=float))

    def christoffel(u, v):
        u = np.asarray(u, dtype=float)
        return np.zeros(u.shape + (2, 2, 2))

    return SurfaceChart(
        name="cylinder",
        metric=metric,
        domain=((-extent, extent), (-1e9, 1e9)),
        curvature=curvature,
        christoffel=christoffel,
        v_period=circumference,
        params={"circumference": circumference},
    )


def sphere_polar_chart(R: float = 1.0) -> SurfaceChart:
    """Colatitude/longitude chart of the round sphere (u = theta, v = phi)."""

    def metric(u, v):
        u = np.asarray(u, dtype=float)
        z = np.zeros_like(u)
        return np.stack(
            [
                np.stack([R * R + z, z], axis=-1),
                np.stack([z, R * R * np.sin(u) ** 2], axis=-1),
            ],
            axis=-2,
        )

    def curvature(u, v):
        return np.full_like(np.asarray(u, dtype=float), 1.0 / (R * R))

    def christoffel(u, v):
        u = np.asarray(u, dtype=float)
        gam = np.zeros(u.shape + (2, 2, 2))
        gam[..., 0, 1, 1] = -np.sin(u) * np.cos(u)
        gam[..., 1, 0, 1] = np.cos(u) / np.sin(u)
        gam[..., 1, 1, 0] = gam[..., 1, 0, 1]
        return gam

    curv = ms.Curvature(1.0 / (R * R))

    def to_model(p):
        th, ph = p[0], p[1]
        return ms.ModelPoint(
            curv,
            (math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)),
        )

    return SurfaceChart(
        name="sphere_polar",
        metric=metric,
        domain=((0.02, math.pi - 0.02), (-1e9, 1e9)),
        curvature=curvature,
        christoffel=christoffel,
        v_period=2 * math.pi,
        to_model=to_model,
        model_curvature=curv,
        params={"R": R},
    )


_REVOLUTION_PROFILES = {
    # r(t), r'(t), r''(t) for the metric dt^2 + r(t)^2 dphi^2
    "cosine_bump": (
        lambda t: 1.0 + 0.25 * np.cos(t),
        lambda t: -0.25 * np.sin(t),
        lambda t: -0.25 * np.cos(t),
    ),
    "catenary": (np.cosh, np.sinh, np.cosh),
}


def revolution_chart(profile: str = "cosine_bump", extent: float = 6.0) -> SurfaceChart:
    """Surface of revolution with arclength meridian: g = diag(1, r(t)^2)."""
    if profile not in _REVOLUTION_PROFILES:
        raise InvalidInput(f"unknown revolution profile {profile!r}")
    r, rp, rpp = _REVOLUTION_PROFILES[profile]

    def metric(u, v):
        u = np.asarray(u, dtype=float)
        z = np.zeros_like(u)
        one = np.ones_like(u)
        return np.stack(
            [np.stack([one, z], axis=-1), np.stack([z, r(u) ** 2], axis=-1)], axis=-2
        )

    def curvature(u, v):
        u = np.asarray(u, dtype=float)
        return -rpp(u) / r(u)

    def christoffel(u, v):
        u = np.asarray(u, dtype=float)
        gam = np.zeros(u.shape + (2, 2, 2))
        gam[..., 0, 1, 1] = -r(u) * rp(u)
        gam[..., 1, 0, 1] = rp(u) / r(u)
        gam[..., 1, 1, 0] = gam[..., 1, 0, 1]
        return gam

    return SurfaceChart(
        name="revolution",
        metric=metric,
        domain=((-extent, extent), (-1e9, 1e9)),
        curvature=curvature,
        christoffel=christoffel,
        v_period=2 * math.pi,
        params={"profile": profile},
    )


def paraboloid_chart(extent: float = 4.0) -> SurfaceChart:
    """Monge patch z = (u^2 + v^2) / 2; analytic K = (1 + u^2 + v^2)^-2."""

    def metric(u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return np.stack(
            [
                np.stack([1.0 + u * u, u * v], axis=-1),
                np.stack([u * v, 1.0 + v * v], axis=-1),
            ],
            axis=-2,
        )

    def curvature(u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return (1.0 + u * u + v * v) ** -2

    def christoffel(u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        w = 1.0 + u * u + v * v
        gam = np.zeros(u.shape + (2, 2, 2))
        gam[..., 0, 0, 0] = u / w
        gam[..., 0, 1, 1] = u / w
        gam[..., 1, 0, 0] = v / w
        gam[..., 1, 1, 1] = v / w
        return gam

    return SurfaceChart(
        name="paraboloid",
        metric=metric,
        domain=((-extent, extent), (-extent, extent)),
        curvature=curvature,
        christoffel=christoffel,
        params={},
    )


_CHART_FACTORIES = {
    "plane": plane_chart,
    "sphere": sphere_chart,
    "sphere_polar": sphere_polar_chart,
    "hyperbolic": hyperbolic_chart,
    "cylinder": cylinder_chart,
    "revolution": revolution_chart,
    "paraboloid": paraboloid_chart,
    "model": lambda k=0.0: _conformal_chart(float(k), "model", 1e9),
}


def make_chart(name: str, **params) -> SurfaceChart:
    if name not in _CHART_FACTORIES:
        raise InvalidInput(f"unknown chart {name!r}; known: {sorted(_CHART_FACTORIES)}")
    return _CHART_FACTORIES[name](**params)


def parse_chart_spec(spec: str) -> SurfaceChart:
    """Parse 'name' or 'name:key=value,key=value' into a chart."""
    name, _, rest = spec.partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, _, val = item.partition("=")
            try:
                params[key.strip()] = float(val)
            except ValueError:
                params[key.strip()] = val.strip()
    return make_chart(name.strip(), **params)


# ---------------------------------------------------------------------------
# geodesic integration
# ---------------------------------------------------------------------------

def _rhs(chart, y):
    """Geodesic equation RHS for states y = (..., [u, v, du, dv])."""
    gam = christoffel_at(chart, y[..., 0], y[..., 1])
    vel = y[..., 2:]
    acc = -np.einsum("...ijk,...j,...k->...i", gam, vel, vel)
    return np.concatenate([vel, acc], axis=-1)


def _rk4_batch(chart, y0, length, step, record=True):
    """Fixed-step RK4 for a batch of geodesics, unit-speed initial data.

    `length` may be a per-row array when record=False (rows advance with
    their own step size, equal node count). Returns (s_nodes, states) with
    states shape (n_nodes, m, 4) when record=True (shared scalar length),
    else the final states only.
    """
    y0 = np.atleast_2d(np.asarray(y0, dtype=float))
    length_arr = np.asarray(length, dtype=float)
    n = max(int(math.ceil(float(np.max(length_arr)) / step)), 8)
    if record:
        if length_arr.ndim != 0:
            raise InvalidInput("recorded integration needs a shared scalar length")
        h = float(length_arr) / n
    else:
        h = (length_arr / n)
        if h.ndim > 0:
            h = h[:, None]
    y = y0.copy()
    if record:
        out = np.empty((n + 1,) + y.shape)
        out[0] = y
    for i in range(n):
        k1 = _rhs(chart, y)
        k2 = _rhs(chart, y + 0.5 * h * k1)
        k3 = _rhs(chart, y + 0.5 * h * k2)
        k4 = _rhs(chart, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if record:
            out[i + 1] = y
    if record:
        return np.linspace(0.0, float(length_arr), n + 1), out
    return None, y


@dataclass(frozen=True)
class GeodesicPath:
    """Recorded geodesic trajectory: nodes s, states (n, 4)."""

    chart: SurfaceChart
    s: np.ndarray
    states: np.ndarray
    exit_reason: str = None

    @property
    def length(self):
        return float(self.s[-1])

    def _splines(self):
        pos = CubicHermiteSpline(self.s, self.states[:, :2], self.states[:, 2:])
        return pos

    def point_at(self, t):
        return self._splines()(t)

    def tangent_at(self, t):
        return self._splines()(t, 1)

    @property
    def start(self):
        return self.states[0, :2].copy()

    @property
    def end(self):
        return self.states[-1, :2].copy()

    def truncated(self, t):
        """Path restricted to [0, t], resampled at the original step."""
        n = max(int(round(t / (self.s[1] - self.s[0]))), 2)
        s = np.linspace(0.0, t, n + 1)
        spl = self._splines()
        pos = spl(s)
        vel = spl(s, 1)
        return GeodesicPath(self.chart, s, np.hstack([pos, vel]))


def unit_vector(chart, p, w):
    p = _aspoint(p)
    w = _asvec(w)
    n = g_norm(chart, p, w)
    if n < 1e-15:
        raise InvalidInput("zero direction vector")
    return w / n


def bearing_vector(chart, p, alpha):
    e1, e2 = orthonormal_frame(chart, p)
    return math.cos(alpha) * e1 + math.sin(alpha) * e2


def integrate_geodesic(chart, start, direction, length, step=1e-3) -> GeodesicPath:
    """Unit-speed geodesic from `start` along `direction`, fourth order.

    Leaves a partial path with an exit diagnostic if the trajectory exits
    the chart domain.
    """
    p = _aspoint(start)
    w = unit_vector(chart, p, direction)
    y0 = np.array([[p[0], p[1], w[0], w[1]]])
    s, states = _rk4_batch(chart, y0, length, step)
    states = states[:, 0, :]
    (u0, u1), (v0, v1) = chart.domain
    inside = (
        (states[:, 0] >= u0)
        & (states[:, 0] <= u1)
        & (states[:, 1] >= v0)
        & (states[:, 1] <= v1)
    )
    if not inside.all():
        cut = int(np.argmin(inside))
        if cut < 2:
            raise InvalidInput("geodesic exits the chart domain immediately")
        return GeodesicPath(
            chart, s[:cut], states[:cut], exit_reason=f"domain exit at s={s[cut - 1]:.6g}"
        )
    return GeodesicPath(chart, s, states)


# ---------------------------------------------------------------------------
# distance by shooting (with curve-shortening fallback)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceResult:
    distance: float
    geodesic: GeodesicPath
    multiplicity_flag: bool
    method: str
    candidates: tuple = ()


def _approach_stats(chart, s, traj, target, scan_limit=None):
    """(t*, miss, side) of a trajectory's closest approach to target.

    Quadratic fit of the squared distance around the best node; near the
    converged bearing d^2(t) is miss^2 + (t - t*)^2 up to higher order, so
    the fit is sharp. side is the lateral sign at the nearest node and
    at_end marks minima sitting on the trajectory end (under-shot length).
    """
    g = metric_at(chart, target[0], target[1])
    diff = traj[:, :2] - target
    d2 = np.einsum("ni,ij,nj->n", diff, g, diff)
    d2 = np.where(np.isfinite(d2), d2, np.inf)
    n = len(s) if scan_limit is None else min(scan_limit, len(s))
    i = int(np.argmin(d2[:n]))
    at_end = i == 0 or i >= n - 1
    if at_end:
        t_star, dmin2 = float(s[i]), float(d2[i])
    else:
        denom = d2[i - 1] - 2.0 * d2[i] + d2[i + 1]
        if denom <= 0:
            t_star, dmin2 = float(s[i]), float(d2[i])
        else:
            delta = 0.5 * (d2[i - 1] - d2[i + 1]) / denom
            delta = min(max(delta, -1.0), 1.0)
            t_star = float(s[i] + delta * (s[1] - s[0]))
            dmin2 = float(d2[i] - 0.125 * (d2[i - 1] - d2[i + 1]) ** 2 / denom)
    dvec = traj[i, :2] - target
    tvec = traj[i, 2:]
    side = float(np.sign(tvec[0] * dvec[1] - tvec[1] * dvec[0]))
    return t_star, math.sqrt(max(dmin2, 0.0)), side, at_end


def _bearing_hint(chart, p, q):
    """Closed-form initial bearing toward q, for charts that support one."""
    if chart.name == "cylinder":
        delta = q - p
        return math.atan2(delta[1], delta[0]), float(np.linalg.norm(delta))
    if chart.to_model is None:
        return None
    mp = chart.to_model(p)
    mq = chart.to_model(q)
    d = ms.dist_k(chart.model_curvature, mp, mq)
    if d < 1e-12:
        return None
    eps = min(1e-6, 0.5 * d)
    m2 = ms.exp_point(mp, ms.direction(mp, mq), eps)
    delta = chart.from_model(m2) - p
    gp = metric_at(chart, p[0], p[1])
    e1, e2 = orthonormal_frame(chart, p)
    return math.atan2(float(delta @ gp @ e2), float(delta @ gp @ e1)), d


def _chart_line_length(chart, p, q, n=32):
    ts = np.linspace(0, 1, n + 1)
    pts = p[None, :] * (1 - ts[:, None]) + q[None, :] * ts[:, None]
    mids = 0.5 * (pts[1:] + pts[:-1])
    seg = pts[1:] - pts[:-1]
    g = metric_at(chart, mids[:, 0], mids[:, 1])
    val = np.einsum("ni,nij,nj->n", seg, g, seg)
    if not np.all(np.isfinite(val)):
        return math.inf
    return float(np.sum(np.sqrt(np.maximum(val, 0.0))))


def _representatives(chart, p, q):
    if chart.v_period is None:
        return [q]
    per = chart.v_period
    k0 = round((p[1] - q[1]) / per)
    return [q + np.array([0.0, (k0 + j) * per]) for j in (-1, 0, 1)]


def _shoot_batch(chart, p, bearings, length, step):
    e1, e2 = orthonormal_frame(chart, p)
    bearings = np.atleast_1d(bearings)
    dirs = np.outer(np.cos(bearings), e1) + np.outer(np.sin(bearings), e2)
    y0 = np.hstack([np.tile(p, (len(bearings), 1)), dirs])
    return _rk4_batch(chart, y0, length, step)


class _BearingProblem:
    """Refine one bracketed bearing toward one target by regula falsi on the
    signed lateral miss; terminates once the miss is small enough that the
    along-track arclength is second-order exact."""

    __slots__ = ("target", "lo", "ylo", "hi", "yhi", "best", "done", "length")

    def __init__(self, target, lo, ylo, hi, yhi, length):
        self.target = target
        self.lo, self.ylo = lo, ylo
        self.hi, self.yhi = hi, yhi
        self.best = None  # (t*, miss, bearing)
        self.done = False
        self.length = length

    def propose(self):
        t = self.ylo / (self.ylo - self.yhi)
        t = min(max(t, 0.12), 0.88)
        return self.lo + t * (self.hi - self.lo)

    def update(self, alpha, t_star, miss, side, at_end):
        if at_end:
            self.length *= 1.6
            return
        if self.best is None or miss < self.best[1]:
            self.best = (t_star, miss, alpha)
        y = side * miss
        if self.ylo * y <= 0:
            self.hi, self.yhi = alpha, y
        else:
            self.lo, self.ylo = alpha, y
        if miss < 2e-5 or abs(self.hi - self.lo) < 1e-13:
            self.done = True


def _refine_brackets(chart, p, problems, step, max_iter=14):
    for _ in range(max_iter):
        live = [pb for pb in problems if not pb.done]
        if not live:
            break
        alphas = np.array([pb.propose() for pb in live])
        length = max(pb.length for pb in live)
        s, states = _shoot_batch(chart, p, alphas, length, step)
        for i, pb in enumerate(live):
            limit = int(min(pb.length, length) / (s[1] - s[0])) + 2
            t_star, miss, side, at_end = _approach_stats(
                chart, s, states[:, i, :], pb.target, scan_limit=limit
            )
            pb.update(alphas[i], t_star, miss, side, at_end)
    return [pb for pb in problems if pb.best is not None]


def _make_brackets(target, bearings, stats, est, search_step, length, wrap):
    brackets = []
    m = len(bearings)
    for i in range(m if wrap else m - 1):
        j = (i + 1) % m
        ti, di, yi, endi = stats[i]
        tj, dj, yj, endj = stats[j]
        if endi or endj:
            continue
        cap = 0.75 * est + 20 * search_step
        if yi * yj < 0 and min(di, dj) < cap:
            brackets.append(
                _BearingProblem(target, bearings[i], yi * di, bearings[j], yj * dj, length)
            )
        elif di < 1e-9:
            pb = _BearingProblem(target, bearings[i], -di, bearings[j], di, length)
            pb.best = (ti, di, bearings[i])
            pb.done = True
            brackets.append(pb)
    return brackets


def _initial_brackets(chart, p, target, hint, search_step, n_grid):
    """Scan a bearing fan and return sign-change brackets toward target."""
    est = _chart_line_length(chart, p, target)
    if hint is not None:
        alpha0, hint_d = hint
        est = min(est, hint_d)
        bearings = alpha0 + np.linspace(-0.4, 0.4, 17)
        wrap = False
    else:
        bearings = np.linspace(-math.pi, math.pi, n_grid, endpoint=False)
        wrap = True
    length = 1.35 * est + 10 * search_step
    for _ in range(6):
        s, states = _shoot_batch(chart, p, bearings, length, search_step)
        stats = [
            _approach_stats(chart, s, states[:, i, :], target)
            for i in range(len(bearings))
        ]
        miss = np.array([st[1] for st in stats])
        ends = [st[3] for st in stats]
        if ends[int(np.argmin(miss))]:
            length *= 1.6
            continue
        break
    return _make_brackets(target, bearings, stats, est, search_step, length, wrap)


def _path_for(chart, p, alpha, length, step):
    s, states = _shoot_batch(chart, p, np.array([alpha]), length * (1 + 1e-9) + 2 * step, step)
    path = GeodesicPath(chart, s, states[:, 0, :])
    return path.truncated(length)


def surface_distance(chart, p, q, step=2e-3, search_step=None, n_grid=720) -> DistanceResult:
    """Distance and minimal geodesic between chart points, by shooting.

    The target bearing is bracketed on an angular fan (narrowed around the
    chart's closed-form bearing hint when available, a 720-point full circle
    otherwise), refined by regula falsi at a coarse integration step, then
    the winning geodesic is reintegrated at the fine step. Discrete
    curve-shortening is the fallback when no bracket is found. Near-ties
    from distinct bearings or wrappings set multiplicity_flag (cut-locus
    proximity indicator).
    """
    p = _aspoint(p)
    q = _aspoint(q)
    if not (chart.in_domain(p[0], p[1]) and chart.in_domain(q[0], q[1])):
        raise InvalidInput("points must lie inside the chart domain")
    if np.allclose(p, q, atol=1e-14):
        states = np.array([[p[0], p[1], 1.0, 0.0], [p[0], p[1], 1.0, 0.0]])
        path = GeodesicPath(chart, np.array([0.0, 0.0]), states)
        return DistanceResult(0.0, path, False, "trivial")
    if search_step is None:
        search_step = max(step, 8e-3)

    problems = []
    for rep in _representatives(chart, p, q):
        hint = _bearing_hint(chart, p, rep)
        found = _initial_brackets(chart, p, rep, hint, search_step, n_grid)
        if not found and hint is not None:
            found = _initial_brackets(chart, p, rep, None, search_step, n_grid)
        problems.extend(found)

    solved = _refine_brackets(chart, p, problems, search_step)
    if not solved:
        return _shortening_distance(chart, p, q)

    candidates = []
    for pb in solved:
        t_coarse, _, alpha = pb.best
        fine = _path_for(chart, p, alpha, t_coarse * 1.02 + 10 * step, step)
        t_fine, miss, _, _ = _approach_stats(chart, fine.s, fine.states, pb.target)
        candidates.append((t_fine + miss, alpha, pb.target))
    candidates.sort(key=lambda c: c[0])
    best_len, best_alpha, best_rep = candidates[0]
    multiplicity = any(
        (abs(c[0] - best_len) < 1e-5)
        and (abs(c[1] - best_alpha) > 1e-3 or not np.allclose(c[2], best_rep))
        for c in candidates[1:]
    )
    path = _path_for(chart, p, best_alpha, best_len, step)
    return DistanceResult(
        float(best_len),
        path,
        bool(multiplicity),
        "shooting",
        candidates=tuple((float(c[0]), float(c[1])) for c in candidates[:4]),
    )


def _shortening_distance(chart, p, q, n=65):
    ts = np.linspace(0, 1, n)
    init = p[None, :] * (1 - ts[:, None]) + q[None, :] * ts[:, None]

    def length_of(flat):
        pts = np.vstack([p, flat.reshape(-1, 2), q])
        mids = 0.5 * (pts[1:] + pts[:-1])
        seg = pts[1:] - pts[:-1]
        g = metric_at(chart, mids[:, 0], mids[:, 1])
        return float(np.sum(np.sqrt(np.einsum("ni,nij,nj->n", seg, g, seg))))

    res = optimize.minimize(
        length_of, init[1:-1].ravel(), method="L-BFGS-B",
        options={"maxiter": 500, "ftol": 1e-14, "gtol": 1e-12},
    )
    pts = np.vstack([p, res.x.reshape(-1, 2), q])
    seg = pts[1:] - pts[:-1]
    s = np.concatenate([[0.0], np.cumsum(np.linalg.norm(seg, axis=1))])
    vel = np.gradient(pts, s, axis=0, edge_order=2)
    states = np.hstack([pts, vel])
    total = length_of(res.x)
    path = GeodesicPath(chart, s * (total / s[-1]), states)
    return DistanceResult(total, path, False, "shortening")


def distances_from(chart, p, targets, step=2e-3, search_step=None, n_grid=720,
                   return_paths=False):
    """Distances from one source to many targets, batching the integrations.

    Hinted targets share one combined bearing fan and the bearing refinement
    runs in lockstep across all open brackets, so the per-target cost is a
    handful of vectorized integration passes rather than independent solves.
    """
    p = _aspoint(p)
    targets = [_aspoint(t) for t in targets]
    if search_step is None:
        search_step = max(step, 8e-3)

    jobs = []
    trivial = {}
    for ti, q in enumerate(targets):
        if np.allclose(p, q, atol=1e-14):
            states = np.array([[p[0], p[1], 1.0, 0.0], [p[0], p[1], 1.0, 0.0]])
            trivial[ti] = DistanceResult(
                0.0, GeodesicPath(chart, np.array([0.0, 0.0]), states), False, "trivial"
            )
            continue
        for rep in _representatives(chart, p, q):
            jobs.append((ti, rep, _bearing_hint(chart, p, rep)))

    problems = {ti: [] for ti in range(len(targets))}
    hinted = [j for j in jobs if j[2] is not None]
    hintless = [j for j in jobs if j[2] is None]

    if hinted:
        blocks, lengths, ests = [], [], []
        for ti, rep, hint in hinted:
            alpha0, hd = hint
            est = min(_chart_line_length(chart, p, rep), hd)
            blocks.append(alpha0 + np.linspace(-0.4, 0.4, 17))
            ests.append(est)
            lengths.append(1.35 * est + 10 * search_step)
        total_len = max(lengths)
        bearings = np.concatenate(blocks)
        s, states = _shoot_batch(chart, p, bearings, total_len, search_step)
        h = s[1] - s[0]
        retries = []
        for bi, (ti, rep, hint) in enumerate(hinted):
            sl = slice(17 * bi, 17 * (bi + 1))
            limit = int(lengths[bi] / h) + 2
            stats = [
                _approach_stats(chart, s, states[:, i, :], rep, scan_limit=limit)
                for i in range(sl.start, sl.stop)
            ]
            if stats[int(np.argmin([st[1] for st in stats]))][3]:
                retries.append((ti, rep, hint))
                continue
            problems[ti].extend(
                _make_brackets(rep, blocks[bi], stats, ests[bi], search_step,
                               lengths[bi], wrap=False)
            )
        for ti, rep, hint in retries:
            problems[ti].extend(_initial_brackets(chart, p, rep, hint, search_step, n_grid))

    for ti, rep, _ in hintless:
        problems[ti].extend(_initial_brackets(chart, p, rep, None, search_step, n_grid))
    for ti in problems:
        if not problems[ti] and ti not in trivial:
            hint_jobs = [j for j in jobs if j[0] == ti and j[2] is not None]
            for _, rep, _hint in hint_jobs:
                problems[ti].extend(_initial_brackets(chart, p, rep, None, search_step, n_grid))

    _refine_brackets(chart, p, [pb for plist in problems.values() for pb in plist],
                     search_step)

    # one fine pass for every solved bracket, batched
    flat = [
        (ti, pb) for ti, plist in problems.items() for pb in plist if pb.best is not None
    ]
    results = [None] * len(targets)
    if flat:
        alphas = np.array([pb.best[2] for _, pb in flat])
        lens = np.array([pb.best[0] for _, pb in flat])
        fine_len = float(np.max(lens)) * 1.02 + 10 * step
        s, states = _shoot_batch(chart, p, alphas, fine_len, step)
        h = s[1] - s[0]
        fine = {}
        for i, (ti, pb) in enumerate(flat):
            limit = int((lens[i] * 1.02 + 6 * step) / h) + 2
            t_f, miss, _, _ = _approach_stats(
                chart, s, states[:, i, :], pb.target, scan_limit=limit
            )
            fine.setdefault(ti, []).append((t_f + miss, float(alphas[i]), pb.target, i))
        for ti, cands in fine.items():
            cands.sort(key=lambda c: c[0])
            best_len, best_alpha, best_rep, col = cands[0]
            multiplicity = any(
                (abs(c[0] - best_len) < 1e-5)
                and (abs(c[1] - best_alpha) > 1e-3 or not np.allclose(c[2], best_rep))
                for c in cands[1:]
            )
            if return_paths:
                path = GeodesicPath(chart, s, states[:, col, :]).truncated(best_len)
            else:
                path = None
            results[ti] = DistanceResult(
                float(best_len), path, bool(multiplicity), "shooting",
                candidates=tuple((float(c[0]), float(c[1])) for c in cands[:4]),
            )
    for ti, res in trivial.items():
        results[ti] = res
    for ti in range(len(targets)):
        if results[ti] is None:
            results[ti] = _shortening_distance(chart, p, targets[ti])
    return results


def shorten_curve(chart, points, max_moves=1):
    """One curve-shortening relaxation of an open chart polyline.

    Returns (new_points, max_displacement); endpoints stay fixed. Applied to
    a geodesic this is a fixed point up to solver tolerance.
    """
    pts = np.asarray(points, dtype=float)
    p, q = pts[0], pts[-1]

    def length_of(flat):
        xs = np.vstack([p, flat.reshape(-1, 2), q])
        mids = 0.5 * (xs[1:] + xs[:-1])
        seg = xs[1:] - xs[:-1]
        g = metric_at(chart, mids[:, 0], mids[:, 1])
        return float(np.sum(np.sqrt(np.einsum("ni,nij,nj->n", seg, g, seg))))

    res = optimize.minimize(
        length_of, pts[1:-1].ravel(), method="L-BFGS-B",
        options={"maxiter": 200 * max_moves, "ftol": 1e-15, "gtol": 1e-13},
    )
    new = np.vstack([p, res.x.reshape(-1, 2), q])
    disp = float(np.max(np.linalg.norm(new - pts, axis=1)))
    return new, disp


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------

def gauss_curvature(chart, p, use_analytic=True, fd_step=None) -> float:
    """Gaussian curvature at p: analytic evaluator when present, else the
    Brioschi formula with central differences."""
    p = _aspoint(p)
    if not chart.in_domain(p[0], p[1]):
        raise InvalidInput(f"point {p} outside chart domain")
    if use_analytic and chart.curvature is not None:
        return float(np.asarray(chart.curvature(p[0], p[1])))
    h = fd_step if fd_step is not None else _FD_REL_STEP * min(chart.scale, 10.0)
    u, v = p

    def efg(uu, vv):
        g = metric_at(chart, uu, vv)
        return g[0, 0], g[0, 1], g[1, 1]

    E, F, G = efg(u, v)
    Eu = (efg(u + h, v)[0] - efg(u - h, v)[0]) / (2 * h)
    Ev = (efg(u, v + h)[0] - efg(u, v - h)[0]) / (2 * h)
    Gu = (efg(u + h, v)[2] - efg(u - h, v)[2]) / (2 * h)
    Gv = (efg(u, v + h)[2] - efg(u, v - h)[2]) / (2 * h)
    Fu = (efg(u + h, v)[1] - efg(u - h, v)[1]) / (2 * h)
    Fv = (efg(u, v + h)[1] - efg(u, v - h)[1]) / (2 * h)
    Evv = (efg(u, v + h)[0] - 2 * E + efg(u, v - h)[0]) / h**2
    Guu = (efg(u + h, v)[2] - 2 * G + efg(u - h, v)[2]) / h**2
    Fuv = (
        efg(u + h, v + h)[1] - efg(u + h, v - h)[1]
        - efg(u - h, v + h)[1] + efg(u - h, v - h)[1]
    ) / (4 * h * h)
    m1 = np.array(
        [
            [-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev],
            [Fv - 0.5 * Gu, E, F],
            [0.5 * Gv, F, G],
        ]
    )
    m2 = np.array([[0.0, 0.5 * Ev, 0.5 * Gu], [0.5 * Ev, E, F], [0.5 * Gu, F, G]])
    det_g = E * G - F * F
    return float((np.linalg.det(m1) - np.linalg.det(m2)) / det_g**2)


# ---------------------------------------------------------------------------
# sampled curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SampledCurve:
    """Arc-length sampled curve with tangent and covariant acceleration."""

    chart: SurfaceChart
    s: np.ndarray
    coords: np.ndarray
    vel: np.ndarray
    acc: np.ndarray
    corners: tuple = ()
    pos_fn: callable = None

    @property
    def length(self):
        return float(self.s[-1])

    @classmethod
    def from_functions(cls, chart, pos, length, n, vel=None, acc2=None, corners=()):
        """Sample an arclength-parameterized curve given by callables.

        `pos(s) -> (u, v)`; optional `vel`, `acc2` for du/ds and d2u/ds2,
        otherwise central differences with step length/(8n).
        """
        s = np.linspace(0.0, length, n + 1)
        xy = np.array([pos(t) for t in s], dtype=float)
        h = length / (8.0 * n)
        if vel is None:
            vel_arr = np.array(
                [(np.asarray(pos(t + h)) - np.asarray(pos(t - h))) / (2 * h) for t in s]
            )
        else:
            vel_arr = np.array([vel(t) for t in s], dtype=float)
        if acc2 is None:
            acc2_arr = np.array(
                [
                    (np.asarray(pos(t + h)) - 2 * np.asarray(pos(t)) + np.asarray(pos(t - h)))
                    / h**2
                    for t in s
                ]
            )
        else:
            acc2_arr = np.array([acc2(t) for t in s], dtype=float)
        gam = christoffel_at(chart, xy[:, 0], xy[:, 1])
        cov = acc2_arr + np.einsum("nijk,nj,nk->ni", gam, vel_arr, vel_arr)
        curve = cls(chart, s, xy, vel_arr, cov, corners=tuple(corners), pos_fn=pos)
        curve.validate_unit_speed()
        return curve

    @classmethod
    def from_points(cls, chart, s, coords, corners=()):
        s = np.asarray(s, dtype=float)
        xy = np.asarray(coords, dtype=float)
        vel = np.gradient(xy, s, axis=0, edge_order=2)
        acc2 = np.empty_like(xy)
        acc2[1:-1] = (
            2.0
            * (
                (s[1:-1] - s[:-2])[:, None] * xy[2:]
                - (s[2:] - s[:-2])[:, None] * xy[1:-1]
                + (s[2:] - s[1:-1])[:, None] * xy[:-2]
            )
            / ((s[2:] - s[1:-1]) * (s[1:-1] - s[:-2]) * (s[2:] - s[:-2]))[:, None]
        )
        acc2[0] = acc2[1]
        acc2[-1] = acc2[-2]
        gam = christoffel_at(chart, xy[:, 0], xy[:, 1])
        cov = acc2 + np.einsum("nijk,nj,nk->ni", gam, vel, vel)
        return cls(chart, s, xy, vel, cov, corners=tuple(corners))

    @classmethod
    def from_csv(cls, chart, path):
        s, us, vs = [], [], []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if [h.strip() for h in header] != ["s", "u", "v"]:
                raise InvalidInput(f"curve CSV must have header 's,u,v', got {header}")
            for row in reader:
                s.append(float(row[0]))
                us.append(float(row[1]))
                vs.append(float(row[2]))
        return cls.from_points(chart, np.array(s), np.column_stack([us, vs]))

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["s", "u", "v"])
            for si, (ui, vi) in zip(self.s, self.coords):
                writer.writerow([repr(float(si)), repr(float(ui)), repr(float(vi))])

    def validate_unit_speed(self, tol=1e-8):
        g = metric_at(self.chart, self.coords[:, 0], self.coords[:, 1])
        speed = np.sqrt(np.einsum("ni,nij,nj->n", self.vel, g, self.vel))
        if np.max(np.abs(speed - 1.0)) > tol:
            raise InvalidInput(
                f"curve is not arclength-parameterized: max |speed-1| = "
                f"{np.max(np.abs(speed - 1.0)):.3e}"
            )

    def position(self, t):
        if self.pos_fn is not None:
            return np.asarray(self.pos_fn(t), dtype=float)
        return CubicSpline(self.s, self.coords, axis=0)(t)


def geodesic_curvature(chart, curve: SampledCurve, i: int) -> float:
    """Norm of the covariant acceleration at sample i.

    For corner samples (and curves built without derivative data) the
    piecewise convention applies: the turning angle between adjacent chords
    divided by the mean step.
    """
    n = len(curve.s)
    if i <= 0 or i >= n - 1:
        if i in (0, n - 1) and curve.acc is not None and i not in curve.corners:
            return float(
                math.sqrt(
                    max(g_dot(chart, curve.coords[i], curve.acc[i], curve.acc[i]), 0.0)
                )
            )
        raise InvalidInput("geodesic curvature needs an interior three-point stencil")
    if i in curve.corners or curve.acc is None:
        p = curve.coords[i]
        w1 = curve.coords[i] - curve.coords[i - 1]
        w2 = curve.coords[i + 1] - curve.coords[i]
        g = metric_at(chart, p[0], p[1])
        c = float(w1 @ g @ w2) / math.sqrt(float(w1 @ g @ w1) * float(w2 @ g @ w2))
        ang = math.acos(min(max(c, -1.0), 1.0))
        return ang / (0.5 * (curve.s[i + 1] - curve.s[i - 1]))
    a = curve.acc[i]
    return float(math.sqrt(max(g_dot(chart, curve.coords[i], a, a), 0.0)))


# ---------------------------------------------------------------------------
# Jacobi fields and index forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JacobiData:
    """Scalar normal Jacobi field j'' + K j = 0 along a geodesic."""

    path: GeodesicPath
    t: np.ndarray
    j: np.ndarray
    jdot: np.ndarray
    K: np.ndarray

    def j_at(self, t):
        return CubicHermiteSpline(self.t, self.j, self.jdot)(t)

    def residual(self):
        h = self.t[1] - self.t[0]
        d2 = (self.j[2:] - 2 * self.j[1:-1] + self.j[:-2]) / h**2
        return float(np.max(np.abs(d2 + self.K[1:-1] * self.j[1:-1])))

    def first_zero(self, t_min=1e-9):
        sign = np.sign(self.j)
        for i in range(1, len(self.t)):
            if self.t[i] > t_min and sign[i] * sign[max(i - 1, 0)] < 0:
                return float(self.t[i])
        return None


def _curvature_along(chart, path):
    pos = path.states[:, :2]
    return np.asarray(chart.curvature(pos[:, 0], pos[:, 1])) if chart.curvature \
        else np.array([gauss_curvature(chart, p) for p in pos])


def jacobi_integrate(chart, path: GeodesicPath, j0: float, j0dot: float) -> JacobiData:
    """Fourth-order integration of j'' + K(c(t)) j = 0 along the path."""
    t = path.s
    pos_spline = CubicHermiteSpline(t, path.states[:, :2], path.states[:, 2:])

    def K_of(tt):
        p = pos_spline(tt)
        if chart.curvature is not None:
            return float(np.asarray(chart.curvature(p[0], p[1])))
        return gauss_curvature(chart, p)

    K_nodes = np.array([K_of(tt) for tt in t])
    j = np.empty_like(t)
    jd = np.empty_like(t)
    j[0], jd[0] = j0, j0dot
    for i in range(len(t) - 1):
        h = t[i + 1] - t[i]
        K0 = K_nodes[i]
        Km = K_of(t[i] + 0.5 * h)
        K1 = K_nodes[i + 1]

        def rhs(y, K):
            return np.array([y[1], -K * y[0]])

        y = np.array([j[i], jd[i]])
        k1 = rhs(y, K0)
        k2 = rhs(y + 0.5 * h * k1, Km)
        k3 = rhs(y + 0.5 * h * k2, Km)
        k4 = rhs(y + h * k3, K1)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        j[i + 1], jd[i + 1] = y
    return JacobiData(path, t, j, jd, K_nodes)


def index_form(jd: JacobiData, a: float, b: float) -> float:
    """Integral of (j'^2 - K j^2) over [a, b] by composite Simpson."""
    if abs(b - a) < 1e-15:
        return 0.0
    if a > b:
        raise InvalidInput("index form interval is reversed")
    m = max(int(math.ceil((b - a) / max(jd.t[1] - jd.t[0], 1e-9))), 8)
    if m % 2:
        m += 1
    tt = np.linspace(a, b, m + 1)
    jsp = CubicHermiteSpline(jd.t, jd.j, jd.jdot)
    Ksp = CubicSpline(jd.t, jd.K)
    integrand = jsp(tt, 1) ** 2 - Ksp(tt) * jsp(tt) ** 2
    return float(simpson(integrand, x=tt))


@dataclass(frozen=True)
class SecondVariationReport:
    analytic: float
    finite_diff: float
    first_deriv_analytic: float
    first_deriv_fd: float
    angle_to_base: float


def second_variation_check(
    chart, p, curve: SampledCurve, i: int, h: float = 1e-3, step: float = 2e-4
) -> SecondVariationReport:
    """Second derivative of s -> dist(p, curve(s)) at sample i, two ways.

    The analytic route evaluates the boundary term (covariant acceleration
    against the outward geodesic direction) plus the index form of the
    normal Jacobi field matched to the curve tangent; the numeric route is
    central second differences of the distance itself.
    """
    p = _aspoint(p)
    s0 = float(curve.s[i])
    base = surface_distance(chart, p, curve.coords[i], step=step)
    if base.multiplicity_flag:
        raise HypothesisViolation("curve sample too close to the cut locus of p")
    ell = base.distance
    j1 = jacobi_integrate(chart, base.geodesic, 0.0, 1.0)
    if j1.first_zero() is not None and j1.first_zero() < ell - 1e-9:
        raise HypothesisViolation("conjugate point detected along [p, curve(i)]")

    c_end = base.geodesic.tangent_at(ell)
    x_end = base.geodesic.point_at(ell)
    gam_dot = curve.vel[i]
    g = metric_at(chart, x_end[0], x_end[1])
    cos_th = float(gam_dot @ g @ c_end)
    cross = float(
        math.sqrt(
            max(
                g_dot(chart, x_end, gam_dot, gam_dot)
                * g_dot(chart, x_end, c_end, c_end)
                - cos_th**2,
                0.0,
            )
        )
    )
    sin_th = cross
    boundary = float(curve.acc[i] @ g @ c_end)
    lam = sin_th / j1.j_at(ell)
    analytic = boundary + lam * lam * index_form(j1, 0.0, ell)

    def dist_at(ss):
        return surface_distance(chart, p, curve.position(ss), step=step).distance

    f_m, f_p = dist_at(s0 - h), dist_at(s0 + h)
    fd2 = (f_p - 2 * ell + f_m) / h**2
    fd1 = (f_p - f_m) / (2 * h)
    # first variation: d|p gamma|/ds = -cos(angle(tangent, direction to p))
    first_analytic = cos_th
    angle = math.atan2(sin_th, cos_th)
    return SecondVariationReport(
        analytic=analytic,
        finite_diff=float(fd2),
        first_deriv_analytic=first_analytic,
        first_deriv_fd=float(fd1),
        angle_to_base=angle,
    )


@dataclass(frozen=True)
class IndexComparisonReport:
    index_low_curvature: float
    index_high_curvature: float
    holds: bool
    equality_flag: bool


def index_comparison_check(
    chart_low, path_low: GeodesicPath, chart_high, path_high: GeodesicPath,
    tol: float = 1e-6,
) -> IndexComparisonReport:
    """Index-form comparison for Jacobi fields vanishing at 0 with matched
    endpoint norms, along equal-length geodesics with ordered curvature.

    Requires max K_low(t) <= min K_high(t) pointwise; then the lower-curvature
    index form dominates.
    """
    if abs(path_low.length - path_high.length) > 1e-9:
        raise InvalidInput("geodesics must have equal length")
    K_low = _curvature_along(chart_low, path_low)
    K_high = _curvature_along(chart_high, path_high)
    n = min(len(K_low), len(K_high))
    tl = np.linspace(0, path_low.length, n)
    K_low_i = np.interp(tl, path_low.s, K_low)
    K_high_i = np.interp(tl, path_high.s, K_high)
    if np.any(K_low_i > K_high_i + 1e-9):
        raise HypothesisViolation("curvature ordering K_low <= K_high fails pointwise")
    ell = path_low.length
    j_low = jacobi_integrate(chart_low, path_low, 0.0, 1.0)
    j_high = jacobi_integrate(chart_high, path_high, 0.0, 1.0)
    lam_low = 1.0 / j_low.j_at(ell)
    lam_high = 1.0 / j_high.j_at(ell)
    i_low = lam_low**2 * index_form(j_low, 0.0, ell)
    i_high = lam_high**2 * index_form(j_high, 0.0, ell)
    return IndexComparisonReport(
        index_low_curvature=i_low,
        index_high_curvature=i_high,
        holds=i_low >= i_high - tol,
        equality_flag=abs(i_low - i_high) <= tol,
    )
