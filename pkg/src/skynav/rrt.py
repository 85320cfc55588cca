"""Classic rapidly-exploring random tree planner over building maps."""
from __future__ import annotations

import math
from dataclasses import dataclass
from time import perf_counter

import numpy as np

from .core import EMPTY_PATH, PlanRequest, PlanResult, SearchTree, sample_with_bias, steer
from .env import CityMap


@dataclass(frozen=True)
class RrtParams:
    step_size: float = 10.0

    def __post_init__(self):
        if self.step_size <= 0:
            raise ValueError("step_size must be positive")


def check_endpoints(city: CityMap, req: PlanRequest) -> None:
    """Planners require collision-free endpoints."""
    if not city.point_free(req.start):
        raise ValueError(f"start is not collision-free: {tuple(req.start)}")
    if not city.point_free(req.goal):
        raise ValueError(f"goal is not collision-free: {tuple(req.goal)}")


def try_finish(city: CityMap, tree: SearchTree, node: int, goal, threshold: float,
               step: float) -> np.ndarray | None:
    """Terminating path through ``node`` if the search can stop here, else None.

    A node inside the goal region ends the search; the goal point itself is
    appended when the connecting segment is free.  A node within one step of
    the goal connects directly when that segment is free.
    """
    pos = tree.positions[node]
    d = math.dist(pos, goal)
    if d <= threshold:
        path = tree.extract_path(node)
        if d > 0 and not city.segment_collides(pos, goal):
            path = np.vstack([path, goal])
        return path
    if d <= step and not city.segment_collides(pos, goal):
        leaf = tree.add(goal, node)
        return tree.extract_path(leaf)
    return None


def plan_rrt(city: CityMap, req: PlanRequest, params: RrtParams = RrtParams(),
             seed: int = 0) -> PlanResult:
    """Grow a uniformly sampled tree from start until it reaches the goal region.

    Deterministic for a fixed (map, request, params, seed).  An extension that
    adds no node counts against the request's failed-attempt budget;
    explored_nodes reports all extension attempts.
    """
    t0 = perf_counter()
    check_endpoints(city, req)
    rng = np.random.default_rng(seed)
    step = params.step_size
    goal = req.goal
    tree = SearchTree(req.start)
    explored = 0

    # the root may already sit in the goal region or reach it in one step
    if math.dist(req.start, goal) <= max(step, req.goal_threshold):
        explored = 1
        path = try_finish(city, tree, 0, goal, req.goal_threshold, step)
        if path is not None:
            return PlanResult(True, path, explored, explored, perf_counter() - t0)

    failed = 0
    while failed < req.max_failed_attempts:
        sample = sample_with_bias(goal, 0.0, city.bounds_min, city.bounds_max, rng)
        near = tree.nearest(sample)
        near_pos = tree.positions[near]
        new = steer(near_pos, sample, step)
        explored += 1
        degenerate = new[0] == near_pos[0] and new[1] == near_pos[1] and new[2] == near_pos[2]
        if degenerate or city.segment_collides(near_pos, new):
            failed += 1
            continue
        idx = tree.add(new, near)
        path = try_finish(city, tree, idx, goal, req.goal_threshold, step)
        if path is not None:
            return PlanResult(True, path, explored, explored, perf_counter() - t0)
    return PlanResult(False, EMPTY_PATH.copy(), explored, explored, perf_counter() - t0)
