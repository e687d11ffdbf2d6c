"""Shared fixtures and generators for the test suite."""

import numpy as np
import pytest

from cumulift.instance import (
    DemandSystem,
    InstanceKind,
    PrecedenceArc,
    Resource,
    SchedulingInstance,
    Task,
)


@pytest.fixture
def knapsack_system():
    """The 4-task, capacity-7 system with demands 5, 3, 2, 4."""
    return DemandSystem(
        matrix=np.array([[5, 3, 2, 4]], dtype=np.int64),
        rhs=np.array([7], dtype=np.int64),
        durations=np.array([1, 1, 1, 2], dtype=np.int64),
        task_map=(1, 2, 3, 4),
    )


def make_system(matrix, rhs, durations, task_map=None):
    matrix = np.asarray(matrix, dtype=np.int64)
    if task_map is None:
        task_map = tuple(range(matrix.shape[1]))
    return DemandSystem(
        matrix=matrix,
        rhs=np.asarray(rhs, dtype=np.int64),
        durations=np.asarray(durations, dtype=np.int64),
        task_map=task_map,
    )


def random_system(rng, max_cols=8, max_rows=3, max_rhs=9, max_duration=6):
    """A random DemandSystem honoring all of the type's invariants."""
    n = int(rng.integers(1, max_cols + 1))
    m = int(rng.integers(1, max_rows + 1))
    rhs = np.array([int(rng.integers(1, max_rhs + 1)) for _ in range(m)], dtype=np.int64)
    matrix = np.zeros((m, n), dtype=np.int64)
    for j in range(m):
        matrix[j] = rng.integers(0, rhs[j] + 1, size=n)
    for c in range(n):
        if not matrix[:, c].any():
            j = int(rng.integers(0, m))
            matrix[j, c] = int(rng.integers(1, rhs[j] + 1))
    durations = np.array(
        [int(rng.integers(1, max_duration + 1)) for _ in range(n)], dtype=np.int64
    )
    return DemandSystem(matrix=matrix, rhs=rhs, durations=durations,
                        task_map=tuple(range(n)))


def random_instance(rng, max_tasks=6, max_resources=2, max_rhs=6, max_duration=4,
                    with_dummies=False, chain_probability=0.4):
    """A random feasible RCPSP instance (demands never exceed capacities)."""
    n = int(rng.integers(1, max_tasks + 1))
    m = int(rng.integers(1, max_resources + 1))
    caps = [int(rng.integers(1, max_rhs + 1)) for _ in range(m)]
    tasks = []
    for i in range(n):
        demands = tuple(int(rng.integers(0, caps[r] + 1)) for r in range(m))
        duration = int(rng.integers(0, max_duration + 1))
        tasks.append(Task(id=i, duration=duration, demands=demands))
    arcs = []
    for i in range(1, n):
        if rng.random() < chain_probability:
            j = int(rng.integers(0, i))
            arcs.append(PrecedenceArc(j, i, tasks[j].duration))
    if with_dummies:
        shifted = [
            Task(id=t.id + 1, duration=t.duration, demands=t.demands) for t in tasks
        ]
        zero = tuple(0 for _ in range(m))
        tasks = [Task(id=0, duration=0, demands=zero)] + shifted + [
            Task(id=n + 1, duration=0, demands=zero)
        ]
        arcs = [PrecedenceArc(a.from_task + 1, a.to_task + 1, a.offset) for a in arcs]
        arcs += [PrecedenceArc(0, i, 0) for i in range(1, n + 1)]
        arcs += [
            PrecedenceArc(i, n + 1, tasks[i].duration) for i in range(1, n + 1)
        ]
        n += 2
    return SchedulingInstance(
        name=f"random-{n}",
        kind=InstanceKind.RCPSP,
        tasks=tuple(tasks),
        resources=tuple(Resource(r, caps[r]) for r in range(m)),
        precedences=tuple(arcs),
    )


def synthetic_project(n, m=5, seed=0):
    """RCPSP-style instance used by the performance criteria."""
    rng = np.random.default_rng(seed)
    caps = rng.integers(10, 16, size=m)
    tasks = []
    for i in range(n):
        duration = int(rng.integers(1, 11))
        demands = [0] * m
        for r in rng.choice(m, size=int(rng.integers(1, 3)), replace=False):
            demands[r] = int(rng.integers(1, caps[r] + 1))
        tasks.append(Task(id=i, duration=duration, demands=tuple(demands)))
    arcs = []
    for i in range(1, n):
        if rng.random() < 0.5:
            j = int(rng.integers(0, i))
            arcs.append(PrecedenceArc(j, i, tasks[j].duration))
    return SchedulingInstance(
        name=f"synthetic-{n}",
        kind=InstanceKind.RCPSP,
        tasks=tuple(tasks),
        resources=tuple(Resource(r, int(caps[r])) for r in range(m)),
        precedences=tuple(arcs),
    )


def enumerate_feasible_starts(system, horizon):
    """All start vectors in [0, horizon]^n whose usage fits every row everywhere."""
    n = system.n_cols
    durations = np.asarray(system.durations)
    grids = np.indices((horizon + 1,) * n).reshape(n, -1).T
    feasible = np.ones(len(grids), dtype=bool)
    top = horizon + int(durations.max(initial=0)) + 1
    for r in range(system.n_rows):
        a = system.matrix[r]
        b = int(system.rhs[r])
        for tau in range(top):
            active = (grids <= tau) & (tau < grids + durations)
            feasible &= active @ a <= b
    return grids[feasible]


def schedule_satisfies(starts, coeffs, rhs, durations, horizon):
    """Vectorized cumulative check of one inequality over many schedules."""
    starts = np.asarray(starts)
    durations = np.asarray(durations)
    pi = np.asarray(coeffs)
    ok = np.ones(len(starts), dtype=bool)
    top = horizon + int(durations.max(initial=0)) + 1
    for tau in range(top):
        active = (starts <= tau) & (tau < starts + durations)
        ok &= active @ pi <= rhs
    return ok
