"""Path quality measures: length, turning angles, sharp-turn counts."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# a turn is "sharp" when the heading changes by strictly more than this
SHARP_TURN_DEG = 45.0


def _as_path(path) -> np.ndarray:
    p = np.asarray(path, dtype=float)
    if p.ndim != 2 or p.shape[1] != 3 or len(p) < 1:
        raise ValueError("path must be a non-empty (N, 3) array of waypoints")
    return p


def dedupe(path) -> np.ndarray:
    """Drop consecutive waypoints that repeat exactly."""
    p = _as_path(path)
    if len(p) == 1:
        return p.copy()
    keep = np.ones(len(p), dtype=bool)
    keep[1:] = np.any(p[1:] != p[:-1], axis=1)
    return p[keep]


def path_length(path) -> float:
    """Total Euclidean length along the waypoints, in meters."""
    p = _as_path(path)
    if len(p) < 2:
        return 0.0
    steps = np.diff(p, axis=0)
    return float(np.sqrt((steps * steps).sum(axis=1)).sum())


def turn_angles(path) -> np.ndarray:
    """Heading change at each interior waypoint, in degrees within [0, 180].

    Exact duplicate waypoints are merged first so every segment has a defined
    direction.
    """
    p = dedupe(path)
    if len(p) < 3:
        return np.empty(0)
    v = np.diff(p, axis=0)
    units = v / np.linalg.norm(v, axis=1, keepdims=True)
    cos = np.clip((units[:-1] * units[1:]).sum(axis=1), -1.0, 1.0)
    return np.degrees(np.arccos(cos))


@dataclass(frozen=True)
class PathMetrics:
    """Per-path summary; smoothed fields stay None when no smoothing ran."""

    length_m: float
    waypoints: int
    max_turn_deg: float
    sharp_turns: int
    smoothed_length_m: float | None = None
    max_turn_smoothed_deg: float | None = None
    sharp_turns_smoothed: int | None = None


@dataclass(frozen=True)
class TrialRecord:
    """One planner run inside a benchmark."""

    algorithm: str
    seed: int
    success: bool
    elapsed_s: float
    explored_nodes: int
    metrics: PathMetrics | None


def summarize(path, smoothed=None) -> PathMetrics:
    """Metrics for a raw path and, optionally, its smoothed counterpart."""
    p = _as_path(path)
    angles = turn_angles(p)
    beta = float(angles.max()) if len(angles) else 0.0
    n = int((angles > SHARP_TURN_DEG).sum())
    if smoothed is None:
        return PathMetrics(path_length(p), len(p), beta, n)
    s = _as_path(smoothed)
    s_angles = turn_angles(s)
    s_beta = float(s_angles.max()) if len(s_angles) else 0.0
    s_n = int((s_angles > SHARP_TURN_DEG).sum())
    return PathMetrics(path_length(p), len(p), beta, n,
                       path_length(s), s_beta, s_n)
