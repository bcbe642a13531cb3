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

"""Alternating maximization of |<abg|(V_A x V_B x V_C)|psi>| over pure networks.

Each sweep updates the alpha, beta and gamma sources in closed form (the
normalized partial inner product) and then V_A, V_B, V_C by SVD. The returned
decomposition stores the node unitaries as U = V^dagger, so that
``itn_pure_state(result.best)`` is the network state whose squared overlap with
the target is ``result.mu_squared``.

Index letters for the six node-order legs: r t | u p | q s =
(A_b, A_g) | (B_g, B_a) | (C_a, C_b); alpha = pq, beta = rs, gamma = tu.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np
import scipy.linalg
import voluptuous as vol

from .const import (
    DEFAULT_CONVERGENCE_TOL,
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
    DEFAULT_SOURCE_DIM,
    MAX_DEGENERATE_REDRAWS,
    MAX_SOURCE_DIM,
    MAX_THREADS,
    MIN_SOURCE_DIM,
    SLOTS,
    resolve_thread_count,
)
from .errors import ConfigError, DegenerateUpdateError, DimensionError
from .linalg import PureState, UnitaryOp
from .metrics import SeesawMetrics
from .sampling import haar_pure_state, haar_unitary
from .states import TriangleDecomposition

_LOGGER = logging.getLogger(__name__)

# Partial inner products below this norm cannot be normalized
DEGENERATE_NORM = 1e-14

SOURCE_CONTRACTIONS = {
    "alpha": "rs,tu,rtupqs->pq",
    "beta": "pq,tu,rtupqs->rs",
    "gamma": "pq,rs,rtupqs->tu",
}
NETWORK_PRODUCT = "pq,rs,tu->rtupqs"

SEESAW_SCHEMA = vol.Schema(
    {
        vol.Optional("d", default=DEFAULT_SOURCE_DIM): vol.All(
            vol.Coerce(int), vol.Range(min=MIN_SOURCE_DIM, max=MAX_SOURCE_DIM)
        ),
        vol.Optional("restarts", default=DEFAULT_RESTARTS): vol.All(
            vol.Coerce(int), vol.Range(min=1)
        ),
        vol.Optional("max_iterations", default=DEFAULT_MAX_ITERATIONS): vol.All(
            vol.Coerce(int), vol.Range(min=1)
        ),
        vol.Optional("convergence_tol", default=DEFAULT_CONVERGENCE_TOL): vol.All(
            vol.Coerce(float), vol.Range(min=0.0, min_included=False)
        ),
        vol.Optional("seed", default=DEFAULT_SEED): vol.All(vol.Coerce(int), vol.Range(min=0)),
        vol.Optional("threads", default=None): vol.Any(
            None, vol.All(vol.Coerce(int), vol.Range(min=1, max=MAX_THREADS))
        ),
    }
)


@dataclass(frozen=True)
class SeesawConfig:
    d: int = DEFAULT_SOURCE_DIM
    restarts: int = DEFAULT_RESTARTS
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    convergence_tol: float = DEFAULT_CONVERGENCE_TOL
    seed: int = DEFAULT_SEED
    # None defers to TRINET_THREADS
    threads: int | None = None

    def __post_init__(self) -> None:
        try:
            SEESAW_SCHEMA(asdict(self))
        except vol.Invalid as exc:
            raise ConfigError(f"invalid see-saw configuration: {exc}") from exc

    @classmethod
    def from_options(cls, options: Mapping[str, Any]) -> SeesawConfig:
        """Build from a loose option mapping (CLI flags, JSON); None values are dropped."""
        try:
            data = SEESAW_SCHEMA({k: v for k, v in options.items() if v is not None})
        except vol.Invalid as exc:
            raise ConfigError(f"invalid see-saw configuration: {exc}") from exc
        return cls(**data)


@dataclass(frozen=True, eq=False)
class SeesawResult:
    mu_squared: float
    best: TriangleDecomposition
    iterations: int
    trace: tuple[float, ...]
    converged: bool
    restart_index: int = 0
    metrics: SeesawMetrics = field(default_factory=SeesawMetrics)


@dataclass
class _Iterate:
    """Mutable working copy of one restart (sources as d x d arrays)."""

    sources: dict[str, np.ndarray]
    rotations: list[np.ndarray]


def _rotate(psi: np.ndarray, rotations: list[np.ndarray], skip: int | None = None) -> np.ndarray:
    """Apply V_A x V_B x V_C to psi of shape (D, D, D), leaving node ``skip`` untouched."""
    eye = np.eye(psi.shape[0])
    va, vb, vc = (eye if i == skip else v for i, v in enumerate(rotations))
    return np.einsum("ai,bj,ck,ijk->abc", va, vb, vc, psi)


def _network_tensor(sources: dict[str, np.ndarray]) -> np.ndarray:
    """alpha x beta x gamma in node order, shaped (D, D, D)."""
    d = sources["alpha"].shape[0]
    product = np.einsum(NETWORK_PRODUCT, sources["alpha"], sources["beta"], sources["gamma"])
    return product.reshape(d * d, d * d, d * d)


def _objective(psi_rot: np.ndarray, sources: dict[str, np.ndarray]) -> float:
    return float(abs(np.vdot(_network_tensor(sources), psi_rot)))


def _source_update(psi_rot: np.ndarray, sources: dict[str, np.ndarray], slot: str) -> np.ndarray:
    d = sources["alpha"].shape[0]
    tensor = psi_rot.reshape((d,) * 6)
    others = [sources[s].conj() for s in SLOTS if s != slot]
    partial = np.einsum(SOURCE_CONTRACTIONS[slot], *others, tensor)
    norm = np.linalg.norm(partial)
    if norm < DEGENERATE_NORM:
        raise DegenerateUpdateError(f"zero partial inner product for {slot}")
    return partial / norm


def _unitary_update(psi: np.ndarray, it: _Iterate, node: int) -> np.ndarray:
    chi = _rotate(psi, it.rotations, skip=node)
    phi = _network_tensor(it.sources)
    # rho[i, a] = sum_rest chi[i, rest] * conj(phi[a, rest])
    chi_front = np.moveaxis(chi, node, 0).reshape(chi.shape[0], -1)
    phi_front = np.moveaxis(phi, node, 0).reshape(phi.shape[0], -1)
    return optimal_unitary(chi_front @ phi_front.conj().T).matrix


def optimal_unitary(rho_a: np.ndarray) -> UnitaryOp:
    """Unitary maximizing |tr(U rho_a)|: with rho_a = W S Vh, return Vh^dagger W^dagger.

    The maximum equals the sum of singular values and tr(U rho_a) is real
    and non-negative.
    """
    w, _, vh = scipy.linalg.svd(np.asarray(rho_a, dtype=complex))
    return UnitaryOp(vh.conj().T @ w.conj().T)


def _slot_others(slot: str) -> tuple[str, str]:
    if slot not in SLOTS:
        raise DimensionError(f"unknown source slot {slot!r}; expected one of {SLOTS}")
    a, b = (s for s in SLOTS if s != slot)
    return a, b


def _target_tensor(target: PureState, d: int) -> np.ndarray:
    side = d * d
    if target.n_parties != 3 or any(dim != side for dim in target.dims):
        raise DimensionError(
            f"target dims {list(target.dims)} must all equal d^2 = {side}; embed it first"
        )
    return target.amplitudes.reshape(side, side, side)


def optimal_source_state(
    target: PureState,
    fixed_a: PureState,
    fixed_b: PureState,
    slot: str,
    unitaries: tuple[UnitaryOp, UnitaryOp, UnitaryOp] | None = None,
) -> PureState:
    """Best source for ``slot`` given the other two (in alpha, beta, gamma order).

    ``target`` is taken as already rotated unless ``unitaries`` (V_A, V_B, V_C)
    are passed. Raises DegenerateUpdateError on a zero partial inner product.
    """
    first, second = _slot_others(slot)
    d = fixed_a.dims[0]
    psi = _target_tensor(target, d)
    if unitaries is not None:
        psi = _rotate(psi, [u.matrix for u in unitaries])
    sources = {
        first: fixed_a.amplitudes.reshape(d, d),
        second: fixed_b.amplitudes.reshape(d, d),
        slot: np.zeros((d, d), dtype=complex),
    }
    return PureState(_source_update(psi, sources, slot).reshape(-1), (d, d))


def _sweep(psi: np.ndarray, it: _Iterate) -> None:
    psi_rot = _rotate(psi, it.rotations)
    for slot in SLOTS:
        it.sources[slot] = _source_update(psi_rot, it.sources, slot)
    for node in range(3):
        it.rotations[node] = _unitary_update(psi, it, node)


def _draw(d: int, rng: np.random.Generator) -> _Iterate:
    sources = {slot: haar_pure_state((d, d), rng).amplitudes.reshape(d, d) for slot in SLOTS}
    rotations = [haar_unitary(d * d, rng).matrix for _ in range(3)]
    return _Iterate(sources=sources, rotations=rotations)


@dataclass(frozen=True)
class _RestartOutcome:
    index: int
    iterate: _Iterate
    trace: tuple[float, ...]
    converged: bool
    redraws: int


def _run_restart(psi: np.ndarray, cfg: SeesawConfig, index: int) -> _RestartOutcome:
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, index]))
    for redraw in range(MAX_DEGENERATE_REDRAWS + 1):
        it = _draw(cfg.d, rng)
        trace = [_objective(_rotate(psi, it.rotations), it.sources)]
        converged = False
        try:
            for _ in range(cfg.max_iterations):
                _sweep(psi, it)
                trace.append(_objective(_rotate(psi, it.rotations), it.sources))
                if abs(trace[-1] - trace[-2]) < cfg.convergence_tol:
                    converged = True
                    break
        except DegenerateUpdateError as exc:
            _LOGGER.warning("Restart %d redraw %d after degenerate update: %s", index, redraw, exc)
            continue
        if _LOGGER.isEnabledFor(logging.DEBUG):
            _LOGGER.debug(
                "seesaw restart=%d sweeps=%d overlap=%.12f converged=%s",
                index,
                len(trace) - 1,
                trace[-1],
                converged,
            )
        return _RestartOutcome(index, it, tuple(trace), converged, redraw)
    raise DegenerateUpdateError(
        f"restart {index} stayed degenerate after {MAX_DEGENERATE_REDRAWS} redraws"
    )


def _decomposition(it: _Iterate, d: int) -> TriangleDecomposition:
    sources = [PureState(it.sources[slot].reshape(-1), (d, d)) for slot in SLOTS]
    unitaries = [UnitaryOp(v.conj().T) for v in it.rotations]
    return TriangleDecomposition(*sources, *unitaries)


def optimize_overlap(target: PureState, cfg: SeesawConfig | None = None) -> SeesawResult:
    """Best squared overlap of ``target`` with pure network states over random restarts.

    Restarts are seeded from (seed, restart index) and reduced by maximum
    mu^2 with ties going to the lowest index, so the result does not depend
    on the number of worker threads.
    """
    cfg = cfg or SeesawConfig()
    psi = _target_tensor(target, cfg.d)
    threads = cfg.threads or resolve_thread_count()
    indices = range(cfg.restarts)
    if threads > 1 and cfg.restarts > 1:
        with ThreadPoolExecutor(max_workers=min(threads, cfg.restarts)) as pool:
            outcomes = list(pool.map(lambda i: _run_restart(psi, cfg, i), indices))
    else:
        outcomes = [_run_restart(psi, cfg, i) for i in indices]

    metrics = SeesawMetrics()
    best: _RestartOutcome | None = None
    for outcome in outcomes:
        metrics.record_restart(len(outcome.trace) - 1, outcome.converged)
        metrics.record_redraw(outcome.redraws)
        if best is None or outcome.trace[-1] > best.trace[-1]:
            best = outcome
    assert best is not None
    mu_squared = min(best.trace[-1] ** 2, 1.0)
    metrics.record_best(best.index, mu_squared)
    _LOGGER.info(
        "See-saw mu^2=%.10f from restart %d/%d (median sweeps %.1f)",
        mu_squared,
        best.index,
        cfg.restarts,
        metrics.median_iterations,
    )
    return SeesawResult(
        mu_squared=mu_squared,
        best=_decomposition(best.iterate, cfg.d),
        iterations=len(best.trace) - 1,
        trace=best.trace,
        converged=best.converged,
        restart_index=best.index,
        metrics=metrics,
    )
