"""Metropolis sampling of the weighted path ensemble via corner flips.

The chain state is a full non-intersecting configuration; a move picks a
path and an interior vertex, flips a west-north corner to north-west or back
(moving one north step sideways by one column, so the total area changes by
exactly +-1), and accepts with the Metropolis ratio q**(area change).
Proposals landing on an occupied vertex are rejected, which preserves
detailed balance because the reverse move is blocked symmetrically.
"""

from __future__ import annotations

import random
from array import array
from dataclasses import dataclass
from typing import Union

import numpy as np

from .configs import PathConfig, Vertex, max_area_config, min_area_config
from .errors import InvalidArgument, NumericalFailure
from .exact import StartSequence, _check_weight_q

StartSpec = Union[str, PathConfig]


@dataclass
class McState:
    """Mutable chain state: vertex lists, occupancy set, running area."""

    seq: StartSequence
    paths: list[list[Vertex]]
    occupied: set[Vertex]
    area: int

    @classmethod
    def from_config(cls, config: PathConfig) -> "McState":
        if config.family != "first" or config.exit is not None:
            raise InvalidArgument("sampling requires a plain first-family configuration")
        paths = [list(p) for p in config.paths]
        occupied = {v for p in paths for v in p}
        return cls(config.starts, paths, occupied, config.total_area())

    def to_config(self) -> PathConfig:
        return PathConfig(self.seq, tuple(tuple(p) for p in self.paths), "first")

    def recompute_area(self) -> int:
        return sum(x for p in self.paths for (x, y0), (_, y1) in zip(p, p[1:]) if y1 == y0 + 1)


def init_state(seq: StartSequence, start: StartSpec = "min") -> McState:
    """Fresh chain state from an extremal configuration or an explicit one."""
    if isinstance(start, PathConfig):
        if start.starts.values != seq.values:
            raise InvalidArgument("explicit start configuration does not match the sequence")
        return McState.from_config(start)
    if start == "min":
        return McState.from_config(min_area_config(seq))
    if start == "max":
        return McState.from_config(max_area_config(seq))
    raise InvalidArgument(f"start must be 'min', 'max' or a PathConfig, got {start!r}")


def propose_flip(state: McState, i: int, j: int) -> tuple[Vertex, int] | None:
    """Inspect the corner move at interior vertex j of path i.

    Returns (new vertex, area change) when the vertex sits on a flippable
    corner and the flipped vertex is unoccupied; None otherwise. Pure: the
    state is not modified.
    """
    path = state.paths[i]
    if not 1 <= j <= len(path) - 2:
        raise InvalidArgument(f"vertex index {j} is not interior to path {i}")
    x0, y0 = path[j - 1]
    x1, y1 = path[j]
    x2, y2 = path[j + 1]
    if x1 == x0 - 1 and y2 == y1 + 1:
        new = (x0, y2)
        delta = 1
    elif y1 == y0 + 1 and x2 == x1 - 1:
        new = (x2, y0)
        delta = -1
    else:
        return None
    if new in state.occupied:
        return None
    return new, delta


def mc_step(state: McState, i: int, j: int, q: float, u: float) -> int:
    """Apply one Metropolis proposal; returns the area change (0 if rejected).

    u is the uniform variate used for the accept test, passed in so the
    caller owns the randomness.
    """
    move = propose_flip(state, i, j)
    if move is None:
        return 0
    new, delta = move
    if delta > 0:
        accept = q >= 1.0 or u < q
    else:
        accept = q <= 1.0 or u < 1.0 / q
    if not accept:
        return 0
    old = state.paths[i][j]
    state.occupied.discard(old)
    state.occupied.add(new)
    state.paths[i][j] = new
    state.area += delta
    return delta


@dataclass
class DensityField:
    """North-step occupancy accumulated over recorded sweeps."""

    grid: np.ndarray
    samples: int
    sweeps: int
    burn_in: int
    seed: int

    def rows(self):
        """Yield (x, y, count) for every nonzero cell, row-major."""
        xs, ys = np.nonzero(self.grid)
        for x, y in zip(xs.tolist(), ys.tolist()):
            yield x, y, int(self.grid[x, y])


@dataclass
class ChainResult:
    """Summary of one Metropolis run."""

    final: PathConfig
    density: DensityField
    area_series: array
    acceptance_rate: float
    proposals: int
    sweeps: int
    burn_in: int
    seed: int
    config_counts: dict[tuple[tuple[Vertex, ...], ...], int] | None = None


def _interior_pairs(state: McState) -> list[tuple[int, int]]:
    return [(i, j) for i, p in enumerate(state.paths) for j in range(1, len(p) - 1)]


def _estimate_burn_in(areas: list[int]) -> int:
    # Integrated-autocorrelation proxy from the lag-1 coefficient; crude but
    # only used to pick a default warm-up length.
    if len(areas) < 16:
        return 64
    arr = np.asarray(areas, dtype=float)
    arr = arr - arr.mean()
    var = float(arr @ arr)
    if var == 0.0:
        return 64
    rho = float(arr[:-1] @ arr[1:]) / var
    rho = min(max(rho, 0.0), 0.999)
    tau = (1.0 + rho) / (1.0 - rho)
    return max(64, int(10.0 * tau) + 1)


def run_chain(
    seq: StartSequence,
    q: float,
    sweeps: int,
    seed: int,
    *,
    start: StartSpec = "min",
    burn_in: int | None = None,
    record_every: int = 1,
    track_configs: bool = False,
    audit_every: int = 1000,
) -> ChainResult:
    """Run corner-flip Metropolis and accumulate the north-step density.

    A sweep issues one proposal per interior vertex (uniformly random path
    and vertex each time). Measurements start after burn_in sweeps; when
    burn_in is None a warm-up segment estimates the area autocorrelation
    time and ten times that is used. Identical seeds give identical runs.
    """
    q = float(q)
    _check_weight_q(q)
    if sweeps < 1:
        raise InvalidArgument("sweeps must be >= 1")
    if record_every < 1:
        raise InvalidArgument("record_every must be >= 1")
    state = init_state(seq, start)
    pairs = _interior_pairs(state)
    if not pairs:
        # A single trivial path: nothing can move, but the run is well defined.
        density = DensityField(np.zeros((seq.top + 1, max(seq.n, 1)), dtype=np.int64), 0, sweeps, 0, seed)
        return ChainResult(state.to_config(), density, array("q", []), 0.0, 0, sweeps, 0, seed)
    npairs = len(pairs)
    rng = random.Random(seed)
    rand = rng.random

    if burn_in is None:
        probe = min(max(sweeps // 10, 200), 4000)
        probe_areas = []
        for _ in range(probe):
            for _ in range(npairs):
                i, j = pairs[int(rand() * npairs)]
                mc_step(state, i, j, q, rand())
            probe_areas.append(state.area)
        burn_in = _estimate_burn_in(probe_areas)

    accepted = 0
    proposals = 0
    counts: dict[Vertex, int] = {}
    config_counts: dict[tuple[tuple[Vertex, ...], ...], int] | None = {} if track_configs else None
    areas = array("q")
    samples = 0
    audit_clock = 0

    total = burn_in + sweeps
    for sweep in range(total):
        for _ in range(npairs):
            i, j = pairs[int(rand() * npairs)]
            if mc_step(state, i, j, q, rand()):
                accepted += 1
            proposals += 1
        audit_clock += npairs
        if audit_every and audit_clock >= audit_every:
            audit_clock = 0
            if state.recompute_area() != state.area:
                raise NumericalFailure("incremental area bookkeeping diverged from recount")
        if sweep < burn_in:
            continue
        measured = sweep - burn_in
        if measured % record_every == 0:
            areas.append(state.area)
            samples += 1
            for p in state.paths:
                for (x, y0), (_, y1) in zip(p, p[1:]):
                    if y1 == y0 + 1:
                        key = (x, y0)
                        counts[key] = counts.get(key, 0) + 1
            if config_counts is not None:
                key = tuple(tuple(p) for p in state.paths)
                config_counts[key] = config_counts.get(key, 0) + 1

    max_x = seq.top
    max_y = max(seq.n, 1)
    grid = np.zeros((max_x + 1, max_y), dtype=np.int64)
    for (x, y), c in counts.items():
        grid[x, y] = c
    density = DensityField(grid, samples, sweeps, burn_in, seed)
    rate = accepted / proposals if proposals else 0.0
    return ChainResult(
        state.to_config(), density, areas, rate, proposals, sweeps, burn_in, seed,
        config_counts,
    )
