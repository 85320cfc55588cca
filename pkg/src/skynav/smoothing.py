"""Clamped B-spline smoothing of planner paths with a collision-checked fallback."""
from __future__ import annotations

import numpy as np

from .env import CityMap


def clamped_knots(n_control: int, degree: int) -> np.ndarray:
    """Clamped uniform knot vector on [0, 1] with degree+1 repeats at each end."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    if n_control <= degree:
        raise ValueError("need more control points than the degree")
    interior = np.linspace(0.0, 1.0, n_control - degree + 1)[1:-1]
    return np.concatenate([np.zeros(degree + 1), interior, np.ones(degree + 1)])


def basis(i: int, degree: int, u: float, knots: np.ndarray) -> float:
    """Cox-de Boor basis value N_{i,degree}(u).  0/0 terms are taken as zero.

    The parameter range is closed on the right: u equal to the final knot
    belongs to the last non-empty span, so clamped curves interpolate the
    last control point exactly.
    """
    if degree == 0:
        if knots[i] <= u < knots[i + 1]:
            return 1.0
        if u == knots[-1] and knots[i] < knots[i + 1] and knots[i + 1] == knots[-1]:
            return 1.0
        return 0.0
    total = 0.0
    left_den = knots[i + degree] - knots[i]
    if left_den > 0.0:
        total += (u - knots[i]) / left_den * basis(i, degree - 1, u, knots)
    right_den = knots[i + degree + 1] - knots[i + 1]
    if right_den > 0.0:
        total += (knots[i + degree + 1] - u) / right_den * basis(i + 1, degree - 1, u, knots)
    return total


def evaluate(control_points: np.ndarray, degree: int, knots: np.ndarray, u: float) -> np.ndarray:
    """Curve point sum(N_{i,degree}(u) * P_i) over the active control window."""
    n = len(control_points)
    span = int(np.searchsorted(knots, u, side="right")) - 1
    span = min(max(span, degree), n - 1)
    point = np.zeros(3)
    for i in range(span - degree, span + 1):
        w = basis(i, degree, u, knots)
        if w != 0.0:
            point = point + w * control_points[i]
    return point


def sample_curve(control_points, degree: int, samples_per_span: int) -> np.ndarray:
    """Evaluate the clamped spline at uniform parameters.

    The sample count is samples_per_span per knot span plus the final
    endpoint, so the polyline always starts and ends on the curve endpoints.
    """
    control_points = np.asarray(control_points, dtype=float)
    n = len(control_points)
    knots = clamped_knots(n, degree)
    spans = n - degree
    us = np.linspace(0.0, 1.0, samples_per_span * spans + 1)
    return np.array([evaluate(control_points, degree, knots, u) for u in us])


def smooth_path(path, city: CityMap, samples_per_span: int = 8) -> np.ndarray:
    """Resample a waypoint path through a cubic clamped B-spline.

    The raw waypoints act as the control polygon; the degree drops to
    len(path) - 1 for very short paths.  If any segment of the smoothed
    polyline collides with the map, the raw path is returned unchanged so a
    feasible plan never gets worse.
    """
    path = np.asarray(path, dtype=float)
    if path.ndim != 2 or path.shape[1] != 3 or len(path) < 2:
        raise ValueError("path must contain at least two 3D waypoints")
    if samples_per_span < 1:
        raise ValueError("samples_per_span must be at least 1")
    degree = min(3, len(path) - 1)
    smoothed = sample_curve(path, degree, samples_per_span)
    for a, b in zip(smoothed[:-1], smoothed[1:]):
        if city.segment_collides(a, b):
            return path.copy()
    return smoothed
