# SPDX-License-Identifier: Apache-2.0
# Copyright (c) 2025 Trevor Baker, all rights reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#   http://www.apache.org/licenses/LICENSE-2.0
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Analytical upper bound on the overlap of a target with pure qubit-pair networks.

Each source is a two-qubit pure state with Schmidt coefficients
[cos t, sin t], t in [0, pi/4]. Across a cut X|YZ the two sources touching X
fix the network state's Schmidt coefficients, and the overlap with the target
is at most the squared inner product of the two sorted coefficient vectors.
The bound is the max over angles of the min over cuts.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Mapping, Sequence
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np
import scipy.optimize
import voluptuous as vol

from .const import (
    BOUND_SOURCE_DIM,
    DEFAULT_BOUND_GRID,
    DEFAULT_POLISH_STARTS,
    DEFAULT_REFINE_POINTS,
    DEFAULT_REFINE_ROUNDS,
    MAX_ANGLE,
    MAX_BOUND_GRID,
    MAX_RECENTRES,
    MIN_BOUND_GRID,
    POLISH_FTOL,
    PROPERTY_TOL,
)
from .errors import ConfigError, DimensionError, InvalidStateError
from .linalg import PureState, schmidt

_LOGGER = logging.getLogger(__name__)

# Cut label -> (node index, angle indices of the two sources touching that node)
CUTS: dict[str, tuple[int, tuple[int, int]]] = {
    "A|BC": (0, (1, 2)),
    "B|AC": (1, (0, 2)),
    "C|AB": (2, (0, 1)),
}
ITN_CUT_LENGTH = 4

BOUND_SCHEMA = vol.Schema(
    {
        vol.Optional("grid", default=DEFAULT_BOUND_GRID): vol.All(
            vol.Coerce(int), vol.Range(min=MIN_BOUND_GRID, max=MAX_BOUND_GRID)
        ),
        vol.Optional("polish_starts", default=DEFAULT_POLISH_STARTS): vol.All(
            vol.Coerce(int), vol.Range(min=0, max=64)
        ),
        vol.Optional("refine_points", default=DEFAULT_REFINE_POINTS): vol.All(
            vol.Coerce(int), vol.Range(min=3, max=101)
        ),
        vol.Optional("refine_rounds", default=DEFAULT_REFINE_ROUNDS): vol.All(
            vol.Coerce(int), vol.Range(min=0, max=12)
        ),
        vol.Optional("symmetric", default=False): vol.Boolean(),
        vol.Optional("d", default=BOUND_SOURCE_DIM): vol.All(
            vol.Coerce(int), vol.In([BOUND_SOURCE_DIM])
        ),
    }
)


@dataclass(frozen=True)
class SourceAngles:
    """Schmidt angles of the alpha, beta and gamma sources."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if not -1e-12 <= value <= MAX_ANGLE + 1e-12:
                raise InvalidStateError("angle in [0, pi/4]", f"{name}={value}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    @property
    def ordered(self) -> bool:
        return self.a >= self.b >= self.c


@dataclass(frozen=True)
class BoundConfig:
    grid: int = DEFAULT_BOUND_GRID
    polish_starts: int = DEFAULT_POLISH_STARTS
    refine_points: int = DEFAULT_REFINE_POINTS
    refine_rounds: int = DEFAULT_REFINE_ROUNDS
    symmetric: bool = False
    d: int = BOUND_SOURCE_DIM

    def __post_init__(self) -> None:
        try:
            BOUND_SCHEMA(asdict(self))
        except vol.Invalid as exc:
            raise ConfigError(f"invalid bound configuration: {exc}") from exc

    @classmethod
    def from_options(cls, options: Mapping[str, Any]) -> BoundConfig:
        """Build from a loose option mapping (CLI flags, JSON); None values are dropped."""
        try:
            data = BOUND_SCHEMA({k: v for k, v in options.items() if v is not None})
        except vol.Invalid as exc:
            raise ConfigError(f"invalid bound configuration: {exc}") from exc
        return cls(**data)


@dataclass(frozen=True)
class BoundResult:
    value: float
    angles: SourceAngles
    evaluations: int


def _check_normalized(coeffs: np.ndarray, name: str) -> None:
    total = float(np.sum(coeffs**2))
    if abs(total - 1.0) > PROPERTY_TOL:
        raise InvalidStateError(f"{name} squares sum to 1", f"sum={total:.12g}")


def _pad_sorted(coeffs: Sequence[float] | np.ndarray, length: int) -> np.ndarray:
    values = np.sort(np.abs(np.asarray(coeffs, dtype=float)))[::-1]
    return np.pad(values, (0, length - values.shape[0]))


def bipartite_overlap_bound(
    target_coeffs: Sequence[float] | np.ndarray, itn_coeffs: Sequence[float] | np.ndarray
) -> float:
    """(sum_i s_i t_i)^2 over descending-sorted, zero-padded Schmidt vectors."""
    length = max(len(target_coeffs), len(itn_coeffs))
    target = _pad_sorted(target_coeffs, length)
    itn = _pad_sorted(itn_coeffs, length)
    _check_normalized(target, "target coefficients")
    _check_normalized(itn, "network coefficients")
    return float(np.dot(target, itn) ** 2)


def _pair_products(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    cx, sx, cy, sy = np.cos(x), np.sin(x), np.cos(y), np.sin(y)
    products = np.stack([cx * cy, cx * sy, sx * cy, sx * sy], axis=-1)
    return np.sort(products, axis=-1)[..., ::-1]


def itn_cut_coefficients(angles: SourceAngles, cut: str) -> np.ndarray:
    """Sorted Schmidt coefficients (length 4) of the network state across ``cut``."""
    if cut not in CUTS:
        raise DimensionError(f"unknown cut {cut!r}; expected one of {sorted(CUTS)}")
    _, (i, j) = CUTS[cut]
    values = angles.as_tuple()
    return _pair_products(np.asarray(values[i]), np.asarray(values[j]))


def target_cut_coefficients(target: PureState) -> dict[str, np.ndarray]:
    """Target Schmidt vectors for the three node cuts, padded to length 4."""
    if target.n_parties != 3:
        raise DimensionError(f"expected 3 parties, got dims {list(target.dims)}")
    if any(d > BOUND_SOURCE_DIM**2 for d in target.dims):
        raise DimensionError(
            f"analytical bound covers qubit-pair sources only; node dims {list(target.dims)} "
            "exceed 4"
        )
    out = {}
    for cut, (node, _) in CUTS.items():
        coeffs = schmidt(target, [node]).coefficients
        out[cut] = _pad_sorted(coeffs, ITN_CUT_LENGTH)
    return out


def _objective(
    targets: dict[str, np.ndarray], a: np.ndarray, b: np.ndarray, c: np.ndarray
) -> np.ndarray:
    angles = (a, b, c)
    best = None
    for cut, (_, (i, j)) in CUTS.items():
        value = (_pair_products(angles[i], angles[j]) @ targets[cut]) ** 2
        best = value if best is None else np.minimum(best, value)
    assert best is not None
    return best


def bound_at(target: PureState, angles: SourceAngles) -> float:
    """Min over the three cuts of the bipartite bound at fixed source angles."""
    targets = target_cut_coefficients(target)
    a, b, c = (np.asarray(v) for v in angles.as_tuple())
    return float(_objective(targets, a, b, c))


def _branch_dot(coeffs: np.ndarray, x: float, y: float, swap: bool) -> float:
    """Target coefficients against one fixed ordering of the network products.

    For angles in [0, pi/4], cos x cos y is largest and sin x sin y smallest, so
    the sorted inner product is the larger of the two middle-term pairings.
    """
    cx, sx, cy, sy = math.cos(x), math.sin(x), math.cos(y), math.sin(y)
    first, second = (sx * cy, cx * sy) if swap else (cx * sy, sx * cy)
    return float(
        coeffs[0] * cx * cy + coeffs[1] * first + coeffs[2] * second + coeffs[3] * sx * sy
    )


def _top_candidates(
    targets: dict[str, np.ndarray],
    axes: Sequence[np.ndarray],
    symmetric: bool,
    keep: int,
) -> list[tuple[float, tuple[float, float, float]]]:
    """The ``keep`` best points of the product grid of ``axes``, best first.

    Evaluated one ``a`` slice at a time to bound memory; ties keep (a, b, c) order.
    """
    a_axis, b_axis, c_axis = axes
    bb, cc = np.meshgrid(b_axis, c_axis, indexing="ij")
    found: list[tuple[float, tuple[float, float, float]]] = []
    for a in a_axis:
        values = _objective(targets, np.full_like(bb, a), bb, cc)
        if symmetric:
            values = np.where((a >= bb) & (bb >= cc), values, -np.inf)
        flat = values.reshape(-1)
        count = min(keep, flat.shape[0])
        for index in np.argsort(-flat, kind="stable")[:count]:
            if np.isfinite(flat[index]):
                point = (float(a), float(bb.flat[index]), float(cc.flat[index]))
                found.append((float(flat[index]), point))
        found = sorted(found, key=lambda item: -item[0])[:keep]
    return found


def _polish(
    targets: dict[str, np.ndarray], start: tuple[float, float, float], symmetric: bool
) -> tuple[float, tuple[float, float, float], int]:
    """SLSQP on max t s.t. every cut's inner product >= t, for each of the 8 pairings."""
    best_value, best_point, evaluations = -math.inf, start, 0
    bounds = [(0.0, MAX_ANGLE)] * 3 + [(None, None)]
    for swaps in itertools.product((False, True), repeat=3):
        constraints: list[dict[str, Any]] = [
            {
                "type": "ineq",
                "fun": lambda z, cut=cut, i=i, j=j, swap=swap: (
                    _branch_dot(targets[cut], z[i], z[j], swap) - z[3]
                ),
            }
            for (cut, (_, (i, j))), swap in zip(CUTS.items(), swaps, strict=True)
        ]
        if symmetric:
            constraints.append({"type": "ineq", "fun": lambda z: z[0] - z[1]})
            constraints.append({"type": "ineq", "fun": lambda z: z[1] - z[2]})
        floor = min(
            _branch_dot(targets[cut], start[i], start[j], swap)
            for (cut, (_, (i, j))), swap in zip(CUTS.items(), swaps, strict=True)
        )
        result = scipy.optimize.minimize(
            lambda z: -z[3],
            np.array([*start, floor]),
            jac=lambda z: np.array([0.0, 0.0, 0.0, -1.0]),
            method="SLSQP",
            bounds=bounds,
            constraints=constraints,
            options={"ftol": POLISH_FTOL, "maxiter": 200},
        )
        evaluations += int(result.nfev)
        a, b, c = (float(v) for v in np.clip(result.x[:3], 0.0, MAX_ANGLE))
        if symmetric:
            if not a + 1e-9 >= b >= c - 1e-9:
                continue
            a, b, c = sorted((a, b, c), reverse=True)
        value = float(_objective(targets, np.asarray(a), np.asarray(b), np.asarray(c)))
        if value > best_value:
            best_value, best_point = value, (a, b, c)
    return best_value, best_point, evaluations


def _box(point: tuple[float, float, float], spacing: float, points: int) -> tuple[np.ndarray, ...]:
    return tuple(
        np.unique(np.clip(center + np.linspace(-spacing, spacing, points), 0.0, MAX_ANGLE))
        for center in point
    )


def optimize_bound(target: PureState, config: BoundConfig | None = None) -> BoundResult:
    """Dense grid over [0, pi/4]^3, SLSQP polish of the best points, then box refinement."""
    cfg = config or BoundConfig()
    targets = target_cut_coefficients(target)
    axis = np.linspace(0.0, MAX_ANGLE, cfg.grid)
    starts = _top_candidates(targets, (axis, axis, axis), cfg.symmetric, max(cfg.polish_starts, 1))
    value, point = starts[0]
    evaluations = cfg.grid**3
    for _, start in starts[: cfg.polish_starts]:
        candidate, candidate_point, used = _polish(targets, start, cfg.symmetric)
        evaluations += used
        if candidate > value:
            value, point = candidate, candidate_point
    if _LOGGER.isEnabledFor(logging.DEBUG):
        _LOGGER.debug(
            "bound polish starts=%d value=%.12f angles=(%.8f, %.8f, %.8f)",
            min(cfg.polish_starts, len(starts)),
            value,
            *point,
        )
    spacing = MAX_ANGLE / (cfg.grid - 1)
    for round_index in range(cfg.refine_rounds):
        for _ in range(MAX_RECENTRES):
            local = _box(point, spacing, cfg.refine_points)
            evaluations += math.prod(len(ax) for ax in local)
            candidate, candidate_point = _top_candidates(targets, local, cfg.symmetric, 1)[0]
            if candidate <= value:
                break
            value, point = candidate, candidate_point
        spacing /= 10.0
        if _LOGGER.isEnabledFor(logging.DEBUG):
            _LOGGER.debug(
                "bound refine round=%d value=%.12f angles=(%.8f, %.8f, %.8f)",
                round_index,
                value,
                *point,
            )
    _LOGGER.info("Overlap bound %.9f at angles (%.6f, %.6f, %.6f)", value, *point)
    return BoundResult(value=value, angles=SourceAngles(*point), evaluations=evaluations)


def overlap_upper_bound(target: PureState, config: BoundConfig | None = None) -> float:
    """Upper bound on mu^2 over networks of pure qubit-pair sources."""
    return optimize_bound(target, config).value
