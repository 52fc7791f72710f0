"""Development of a radial-distance profile into the model plane.

Given the 1-Lipschitz profile s -> d(s) of distances from a base point to a
unit-speed curve, the development is the polyline in the model plane whose
vertices keep the same distances to a chosen pole, whose chords preserve the
arclength steps, and whose pole angle turns monotonically clockwise. The
convexity tests below close the development with the two radial segments to
the pole.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NumericalInfeasibility
from .model_space import (
    Curvature,
    ModelPoint,
    angle_from_sss,
    dist_k,
    direction,
    exp_polar,
    rho_k,
    signed_angle,
)

_LIPSCHITZ_TOL = 1e-12
_POLE_TOL = 1e-12


@dataclass(frozen=True)
class DistanceProfile:
    """Sampled radial distances (s_i, d_i) with 0 = s_0 < ... < s_N = L."""

    s: tuple
    d: tuple
    curvature: Curvature

    def __post_init__(self):
        s = tuple(float(x) for x in self.s)
        d = tuple(float(x) for x in self.d)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "d", d)
        if len(s) != len(d):
            raise InvalidInput("s and d must have equal length")
        if len(s) < 2:
            raise InvalidInput("profile needs at least two samples")
        if abs(s[0]) > 0:
            raise InvalidInput("arclength must start at 0")
        for i in range(len(s) - 1):
            ds = s[i + 1] - s[i]
            if ds <= 0:
                raise InvalidInput(f"arclength not strictly increasing at sample {i + 1}")
            if abs(d[i + 1] - d[i]) > ds + _LIPSCHITZ_TOL:
                raise InvalidInput(
                    f"profile is not 1-Lipschitz at sample {i + 1}: "
                    f"|{d[i + 1]} - {d[i]}| > {ds}"
                )
        for i, v in enumerate(d):
            if v < 0:
                raise InvalidInput(f"negative distance at sample {i}")
            if self.curvature.sign > 0 and v >= self.curvature.diameter_bound:
                raise InvalidInput(
                    f"distance {v} at sample {i} reaches pi/sqrt(k); "
                    "that regime is rejected by construction"
                )

    @property
    def length(self) -> float:
        return self.s[-1]

    @classmethod
    def from_function(cls, curv: Curvature, fn, length: float, n: int) -> "DistanceProfile":
        s = np.linspace(0.0, length, n + 1)
        return cls(tuple(s), tuple(fn(x) for x in s), curv)

    @classmethod
    def from_csv(cls, path, curv: Curvature) -> "DistanceProfile":
        s, d = [], []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if [h.strip() for h in header] != ["s", "d"]:
                raise InvalidInput(f"profile CSV must have header 's,d', got {header}")
            for row in reader:
                s.append(float(row[0]))
                d.append(float(row[1]))
        return cls(tuple(s), tuple(d), curv)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["s", "d"])
            for si, di in zip(self.s, self.d):
                writer.writerow([repr(si), repr(di)])


@dataclass(frozen=True)
class DevelopedCurve:
    """Development polyline around a pole, with polar bookkeeping."""

    pole: ModelPoint
    points: tuple
    s: tuple
    d: tuple
    phi: tuple
    curvature: Curvature

    @property
    def length(self) -> float:
        return self.s[-1]

    def turning_angles(self) -> tuple:
        """Signed turning at interior vertices of the open polyline."""
        out = []
        for i in range(1, len(self.points) - 1):
            t_in = tuple(-x for x in direction(self.points[i], self.points[i - 1]))
            t_out = direction(self.points[i], self.points[i + 1])
            out.append(signed_angle(self.points[i], t_in, t_out))
        return tuple(out)


def develop(profile: DistanceProfile, pole: ModelPoint) -> DevelopedCurve:
    """Construct the development of the profile around the pole.

    Vertex i+1 is placed by solving the triangle (pole, x_i, x_{i+1}) with
    sides (d_i, d_{i+1}, s_{i+1}-s_i), always on the clockwise side, so pole
    angles are non-increasing. Passing exactly through the pole flips the
    bearing by pi (the development continues straight).
    """
    curv = profile.curvature
    if abs(pole.curvature.k - curv.k) > 0:
        raise InvalidInput("pole curvature does not match the profile")
    d = profile.d
    s = profile.s
    phis = [0.0]
    for i in range(len(s) - 1):
        ds = s[i + 1] - s[i]
        if d[i + 1] <= _POLE_TOL:
            if abs(d[i] - ds) > 1e-9:
                raise NumericalInfeasibility(
                    f"sample {i + 1} lands on the pole but |{d[i]} - {ds}| > 1e-9",
                    index=i + 1,
                )
            phis.append(phis[-1])
            continue
        if d[i] <= _POLE_TOL:
            if abs(d[i + 1] - ds) > 1e-9:
                raise NumericalInfeasibility(
                    f"sample {i} sits on the pole but |{d[i + 1]} - {ds}| > 1e-9",
                    index=i + 1,
                )
            # leave the pole opposite to the incoming bearing
            phis.append(phis[-1] - math.pi)
            continue
        if d[i] + d[i + 1] < ds - 1e-9:
            raise NumericalInfeasibility(
                f"triangle (d_i={d[i]}, d_i+1={d[i + 1]}, ds={ds}) unrealizable "
                f"at sample {i + 1}",
                index=i + 1,
            )
        try:
            delta = angle_from_sss(curv, d[i], d[i + 1], min(ds, d[i] + d[i + 1]))
        except InvalidInput as exc:
            raise NumericalInfeasibility(
                f"development step {i + 1} unrealizable: {exc}", index=i + 1
            ) from exc
        phis.append(phis[-1] - delta)
    points = tuple(
        exp_polar(pole, di, ph) if di > _POLE_TOL else pole for di, ph in zip(d, phis)
    )
    return DevelopedCurve(
        pole=pole, points=points, s=s, d=d, phi=tuple(phis), curvature=curv
    )


# ---------------------------------------------------------------------------
# convexity of the closed development
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConvexityReport:
    convex: bool
    endpoint_condition: bool
    violations: tuple
    pole_degenerate: bool
    total_turning: float
    wraps_pole: bool


def _cycle_turnings(points):
    n = len(points)
    turns = []
    for i in range(n):
        v = points[i]
        t_in = tuple(-x for x in direction(v, points[(i - 1) % n]))
        t_out = direction(v, points[(i + 1) % n])
        turns.append(signed_angle(v, t_in, t_out))
    return turns


def _classify_turnings(turns, slack=1e-9):
    """Dominant turning sign and indices disagreeing with it.

    Turnings within slack of 0 or of +-pi are neutral: a straight vertex or
    an exact reversal matches either orientation.
    """
    signed = [
        t for t in turns if abs(t) > slack and (math.pi - abs(t)) > slack
    ]
    if not signed:
        return 0.0, []
    ref = max(signed, key=abs)
    sgn = 1.0 if ref >= 0 else -1.0
    bad = [
        i
        for i, t in enumerate(turns)
        if abs(t) > slack and (math.pi - abs(t)) > slack and t * sgn < 0
    ]
    return sgn, bad


def is_convex_development(dc: DevelopedCurve) -> ConvexityReport:
    """Close the development with the two radial segments and test convexity.

    The closed curve is convex when every turning (interior vertices, the two
    junction vertices, and the pole) carries one sign, and the swept pole
    angle does not wrap past a full turn (a wrap means self-intersection and
    is reported as non-convex, not raised).
    """
    pole_deg = dc.d[0] <= _POLE_TOL or dc.d[-1] <= _POLE_TOL
    cycle = list(dc.points)
    if dc.d[0] > _POLE_TOL and dc.d[-1] > _POLE_TOL:
        cycle = [dc.pole] + cycle
        pole_positions = {0}
        junctions = {1, len(cycle) - 1}
    else:
        # degenerate radial closure: the pole already sits on the polyline
        if dc.d[0] <= _POLE_TOL and dc.d[-1] <= _POLE_TOL:
            cycle = cycle[:-1]
            pole_positions = {0}
            junctions = set()
        elif dc.d[0] <= _POLE_TOL:
            pole_positions = {0}
            junctions = {len(cycle) - 1}
        else:
            pole_positions = {len(cycle) - 1}
            junctions = {0}
    turns = _cycle_turnings(cycle)
    sgn, bad = _classify_turnings(turns)
    sweep = dc.phi[0] - dc.phi[-1]
    wraps = sweep > 2 * math.pi + 1e-9
    violations = tuple((i, turns[i]) for i in bad)
    endpoint_ok = not any(i in junctions or i in pole_positions for i in bad)
    return ConvexityReport(
        convex=(not bad) and not wraps,
        endpoint_condition=endpoint_ok,
        violations=violations,
        pole_degenerate=pole_deg,
        total_turning=float(sum(turns)),
        wraps_pole=wraps,
    )


def local_convexity_check(dc: DevelopedCurve, i: int, delta: float) -> bool:
    """Convexity of the development restricted to the window [s_i - delta,
    s_i + delta] (clipped at the curve ends) and closed radially."""
    if delta <= 0:
        raise InvalidInput(f"window half-width must be positive, got {delta}")
    if not 0 <= i < len(dc.s):
        raise InvalidInput(f"sample index {i} out of range")
    lo_s = max(dc.s[i] - delta, dc.s[0])
    hi_s = min(dc.s[i] + delta, dc.s[-1])
    lo = max(j for j in range(len(dc.s)) if dc.s[j] <= lo_s + 1e-12)
    hi = min(j for j in range(len(dc.s)) if dc.s[j] >= hi_s - 1e-12)
    if hi - lo < 1:
        raise InvalidInput("window contains fewer than two samples")
    sub = DevelopedCurve(
        pole=dc.pole,
        points=dc.points[lo : hi + 1],
        s=dc.s[lo : hi + 1],
        d=dc.d[lo : hi + 1],
        phi=dc.phi[lo : hi + 1],
        curvature=dc.curvature,
    )
    return is_convex_development(sub).convex


# ---------------------------------------------------------------------------
# discrete support inequality for rho_k composed with the profile
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SupportReport:
    max_excess: float
    passed: bool
    excess: tuple
    slack: tuple


def support_inequality_check(profile: DistanceProfile, tol: float = 1e-6) -> SupportReport:
    """Check the support-sense bound f'' <= 1 - k f for f = rho_k(d(s)).

    Second derivatives are approximated by three-point central differences;
    the bound is enforced with slack tol/(h_l*h_r) per interior sample, which
    absorbs roundoff amplification while catching genuine curvature
    violations at the tested scale.
    """
    if len(profile.s) < 3:
        raise InvalidInput("support check needs at least three samples")
    curv = profile.curvature
    s = np.asarray(profile.s)
    f = np.array([rho_k(curv, v) for v in profile.d])
    hl = s[1:-1] - s[:-2]
    hr = s[2:] - s[1:-1]
    d2 = 2.0 * (hl * f[2:] - (hl + hr) * f[1:-1] + hr * f[:-2]) / (hl * hr * (hl + hr))
    bound = 1.0 - curv.k * f[1:-1]
    excess = d2 - bound
    slack = tol / (hl * hr)
    return SupportReport(
        max_excess=float(np.max(excess)),
        passed=bool(np.all(excess <= slack)),
        excess=tuple(float(x) for x in excess),
        slack=tuple(float(x) for x in slack),
    )
