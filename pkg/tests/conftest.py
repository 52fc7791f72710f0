"""Shared fixtures: random geometry generators used across test modules."""

import math

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from curvcomp.model_space import Curvature, ModelPoint

K1 = Curvature(1.0)


def random_convex_spherical_polygon(rng, max_cap=1.2, n_points=12):
    """Convex polygon on the unit sphere, rejection-sampled inside a cap.

    Points are drawn in a spherical cap around the north pole and hulled in
    the gnomonic (central) projection, which maps great circles to straight
    lines, so the planar hull is a spherical convex hull.
    """
    while True:
        theta = rng.uniform(0.05, max_cap, size=n_points)
        phi = rng.uniform(0, 2 * math.pi, size=n_points)
        # gnomonic coordinates from the north pole
        xy = np.column_stack([np.tan(theta) * np.cos(phi), np.tan(theta) * np.sin(phi)])
        hull = ConvexHull(xy)
        verts = xy[hull.vertices]
        if len(verts) >= 3:
            break
    pts = []
    for x, y in verts:
        v = np.array([x, y, 1.0])
        v /= np.linalg.norm(v)
        pts.append(ModelPoint(K1, tuple(v)))
    return pts


@pytest.fixture
def spherical_polygon_factory():
    return random_convex_spherical_polygon
