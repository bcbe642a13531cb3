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

"""Triangle-network assembly and the catalog of named tripartite states.

Sources emit in pair order (B_a C_a)(A_b C_b)(A_g B_g); network states are
returned in node order, one ``d*d`` subsystem per node:
A = (A_b, A_g), B = (B_g, B_a), C = (C_a, C_b).
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .const import PROBABILITY_TOL, PROPERTY_TOL, SOURCE_TO_NODE
from .errors import DimensionError, InvalidStateError
from .linalg import (
    DensityState,
    PureState,
    UnitaryOp,
    conjugate,
    kron_all,
    partial_trace,
    permute_subsystems,
)

_LOGGER = logging.getLogger(__name__)

type SourceState = DensityState | PureState

# Wheel graph on six vertices: hub 0 joined to the 5-cycle 1..5. Its graph
# state is absolutely maximally entangled on six qubits.
AME_HUB_VERTICES = 6


@dataclass(frozen=True, eq=False)
class TriangleDecomposition:
    """Three bipartite sources and three node unitaries."""

    source_alpha: SourceState
    source_beta: SourceState
    source_gamma: SourceState
    u_a: UnitaryOp
    u_b: UnitaryOp
    u_c: UnitaryOp

    def __post_init__(self) -> None:
        dims = {s.dims for s in self.sources}
        if len(dims) != 1:
            raise DimensionError(f"sources must share dims [d, d], got {sorted(dims)}")
        (pair,) = dims
        if len(pair) != 2 or pair[0] != pair[1]:
            raise DimensionError(f"each source lives on dims [d, d], got {list(pair)}")
        side = pair[0] ** 2
        for name, unitary in zip(("U_A", "U_B", "U_C"), self.unitaries, strict=True):
            if unitary.dim != side:
                raise DimensionError(f"{name} has dim {unitary.dim}, expected d^2 = {side}")

    @property
    def sources(self) -> tuple[SourceState, SourceState, SourceState]:
        return (self.source_alpha, self.source_beta, self.source_gamma)

    @property
    def unitaries(self) -> tuple[UnitaryOp, UnitaryOp, UnitaryOp]:
        return (self.u_a, self.u_b, self.u_c)

    @property
    def d(self) -> int:
        return self.source_alpha.dims[0]

    @property
    def is_pure(self) -> bool:
        return all(isinstance(s, PureState) for s in self.sources)

    @property
    def node_dims(self) -> tuple[int, int, int]:
        side = self.d**2
        return (side, side, side)


@dataclass(frozen=True, eq=False)
class CtnMixture:
    """Convex combination of triangle decompositions sharing one source dimension."""

    weights: tuple[float, ...]
    components: tuple[TriangleDecomposition, ...]

    def __post_init__(self) -> None:
        weights = tuple(float(w) for w in self.weights)
        components = tuple(self.components)
        if not components:
            raise InvalidStateError("non-empty component list")
        if len(weights) != len(components):
            raise DimensionError(
                f"{len(weights)} weights for {len(components)} components"
            )
        if any(w < 0.0 for w in weights):
            raise InvalidStateError("weights non-negative")
        if abs(math.fsum(weights) - 1.0) > PROBABILITY_TOL:
            raise InvalidStateError("weights sum to 1 within 1e-12", f"sum={math.fsum(weights)!r}")
        if len({c.d for c in components}) != 1:
            raise DimensionError("all components must share the source dimension d")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "components", components)


def _node_unitary(t: TriangleDecomposition) -> np.ndarray:
    return kron_all(u.matrix for u in t.unitaries)


def _as_density(s: SourceState) -> DensityState:
    return s.projector() if isinstance(s, PureState) else s


def itn_pure_state(t: TriangleDecomposition) -> PureState:
    """Network state for pure sources, as an amplitude vector in node order."""
    if not t.is_pure:
        raise InvalidStateError("all sources pure", "itn_pure_state needs pure sources")
    d = t.d
    vector = kron_all(s.amplitudes for s in t.sources)  # type: ignore[union-attr]
    vector = vector.reshape((d,) * 6).transpose(SOURCE_TO_NODE).reshape(-1)
    return PureState(_node_unitary(t) @ vector, t.node_dims)


def itn_state(t: TriangleDecomposition) -> DensityState:
    """(U_A x U_B x U_C) P (rho_a x rho_b x rho_g) P^dagger (U_A x U_B x U_C)^dagger."""
    if t.is_pure:
        return itn_pure_state(t).projector()
    d = t.d
    matrix = kron_all(_as_density(s).matrix for s in t.sources)
    legs = permute_subsystems(DensityState(matrix, (d,) * 6), SOURCE_TO_NODE)
    grouped = DensityState(legs.matrix, t.node_dims)
    return conjugate(grouped, _node_unitary(t))


def ctn_state(m: CtnMixture) -> DensityState:
    """Weighted sum of the component network states."""
    matrix = sum(
        (w * itn_state(c).matrix for w, c in zip(m.weights, m.components, strict=True)),
        start=np.zeros((m.components[0].d ** 6,) * 2, dtype=complex),
    )
    return DensityState(matrix, m.components[0].node_dims)


def source_correlated_state(
    weights: Sequence[float],
    source_triples: Sequence[tuple[SourceState, SourceState, SourceState]],
    unitaries: tuple[UnitaryOp, UnitaryOp, UnitaryOp],
) -> DensityState:
    """Network state whose sources share randomness while the nodes act with fixed unitaries."""
    components = tuple(
        TriangleDecomposition(*triple, *unitaries) for triple in source_triples
    )
    return ctn_state(CtnMixture(tuple(weights), components))


def bell_pair(d: int = 2) -> PureState:
    """(1/sqrt(d)) sum_j |jj>."""
    if d < 1:
        raise DimensionError(f"local dimension must be positive, got {d}")
    vector = np.eye(d, dtype=complex).reshape(-1) / math.sqrt(d)
    return PureState(vector, (d, d))


def ghz(D: int) -> PureState:
    """(1/sqrt(D)) sum_{j<D} |jjj>."""
    if D < 2:
        raise DimensionError(f"GHZ needs local dimension >= 2, got {D}")
    vector = np.zeros(D**3, dtype=complex)
    vector[[j * (D * D + D + 1) for j in range(D)]] = 1.0 / math.sqrt(D)
    return PureState(vector, (D, D, D))


def product_state(D: int = 4) -> PureState:
    return PureState.basis((0, 0, 0), (D, D, D))


def classical_corr(k: int, D: int) -> DensityState:
    """Uniform mixture of the |jjj> projectors for j < k."""
    if not 1 <= k <= D:
        raise DimensionError(f"classical correlation needs 1 <= k <= D, got k={k}, D={D}")
    diagonal = np.zeros(D**3)
    diagonal[[j * (D * D + D + 1) for j in range(k)]] = 1.0 / k
    return DensityState(np.diag(diagonal).astype(complex), (D, D, D))


def noisy_ghz(V: float, D: int) -> DensityState:
    """V |GHZ><GHZ| + (1 - V) 1/D^3."""
    if not 0.0 <= V <= 1.0:
        raise InvalidStateError("visibility V in [0, 1]", f"V={V}")
    target = ghz(D).amplitudes
    n = D**3
    matrix = V * np.outer(target, target.conj()) + (1.0 - V) * np.eye(n) / n
    return DensityState(matrix, (D, D, D))


def _pauli_power(pauli: np.ndarray, n: int) -> np.ndarray:
    return kron_all([pauli] * n)


def smolin() -> DensityState:
    """Six-qubit Smolin state grouped as three ququarts.

    The normalized projector onto the joint +1 eigenspace of X^6 and Z^6:
    (1 + X^6 - Y^6 + Z^6) / 64, rank 16.
    """
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, -1j], [1j, 0]], dtype=complex)
    z = np.array([[1, 0], [0, -1]], dtype=complex)
    matrix = (
        np.eye(64) + _pauli_power(x, 6) - _pauli_power(y, 6) + _pauli_power(z, 6)
    ) / 64
    return DensityState(matrix, (4, 4, 4))


def w_state() -> PureState:
    """(|001> + |010> + |100>) / sqrt(3)."""
    vector = np.zeros(8, dtype=complex)
    vector[[1, 2, 4]] = 1.0 / math.sqrt(3)
    return PureState(vector, (2, 2, 2))


def _permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def antisymmetric_qutrit() -> PureState:
    """Totally antisymmetric state on three qutrits."""
    vector = np.zeros(27, dtype=complex)
    for perm in itertools.permutations(range(3)):
        vector[np.ravel_multi_index(perm, (3, 3, 3))] = _permutation_sign(perm) / math.sqrt(6)
    return PureState(vector, (3, 3, 3))


def _graph_state_amplitudes(graph: nx.Graph) -> np.ndarray:
    """(-1)^{sum over edges x_i x_j} / sqrt(2^n); vertex 0 is the most significant bit."""
    n = graph.number_of_nodes()
    adjacency = np.triu(nx.to_numpy_array(graph, nodelist=range(n), dtype=int))
    bits = (np.arange(2**n)[:, None] >> (n - 1 - np.arange(n))) & 1
    parity = np.einsum("xi,ij,xj->x", bits, adjacency, bits) % 2
    return (1 - 2 * parity).astype(complex) / math.sqrt(2**n)


def ame_six_qubits() -> PureState:
    """AME(6,2) graph state, qubits paired into ququarts (01)(23)(45).

    Every three-qubit marginal is checked against 1/8 before returning.
    """
    graph = nx.wheel_graph(AME_HUB_VERTICES)
    qubits = PureState(_graph_state_amplitudes(graph), (2,) * 6)
    target = np.eye(8) / 8
    for keep in itertools.combinations(range(6), 3):
        marginal = partial_trace(qubits, keep).matrix
        if not np.allclose(marginal, target, rtol=0.0, atol=1e-10):
            _LOGGER.error("AME construction failed on qubits %s", keep)
            raise InvalidStateError("every three-qubit marginal equals 1/8", f"qubits {keep}")
    return PureState(qubits.amplitudes, (4, 4, 4))


def embed[S: (DensityState, PureState)](s: S, target_dims: Sequence[int]) -> S:
    """Place ``s`` on the leading basis vectors of larger subsystems."""
    target = tuple(int(d) for d in target_dims)
    if len(target) != len(s.dims):
        raise DimensionError(f"cannot embed {len(s.dims)} subsystems into {len(target)}")
    if any(t < d for t, d in zip(target, s.dims, strict=True)):
        raise DimensionError(f"embedding cannot shrink dims {list(s.dims)} to {list(target)}")
    if target == s.dims:
        return s
    pad = [(0, t - d) for t, d in zip(target, s.dims, strict=True)]
    if isinstance(s, PureState):
        return PureState(np.pad(s.amplitudes.reshape(s.dims), pad).reshape(-1), target)
    side = math.prod(target)
    matrix = np.pad(s.matrix.reshape(s.dims + s.dims), pad + pad).reshape(side, side)
    return DensityState(matrix, target)


def _ghz4_unitary_a() -> np.ndarray:
    # |b c> -> |c> (x) R_c |b>, R_c[a, b] = (-1)^{(a xor c) b} / sqrt(2)
    matrix = np.zeros((4, 4), dtype=complex)
    for b, c, a in itertools.product(range(2), repeat=3):
        matrix[2 * c + a, 2 * b + c] = (-1) ** (((a ^ c) * b) % 2) / math.sqrt(2)
    return matrix


def _ghz4_unitary_c() -> np.ndarray:
    # |a b> -> (-1)^{ab} H|b> (x) |a>
    matrix = np.zeros((4, 4), dtype=complex)
    for a, b, x in itertools.product(range(2), repeat=3):
        matrix[2 * x + a, 2 * a + b] = (-1) ** ((a * b + x * b) % 2) / math.sqrt(2)
    return matrix


def ghz4_bell_construction() -> TriangleDecomposition:
    """Bell-pair sources with U_B = 1 whose network state has |<GHZ_4|.>|^2 = 1/2.

    U_A and U_C are controlled rotations built from (1 -+ i sigma_y)/sqrt(2),
    written here with the output legs ordered so that node A holds
    (A_g, A_b) and node C holds (C_b, C_a) after the gate.
    """
    bell = bell_pair(2)
    return TriangleDecomposition(
        bell,
        bell,
        bell,
        UnitaryOp(_ghz4_unitary_a()),
        UnitaryOp.identity(4),
        UnitaryOp(_ghz4_unitary_c()),
    )


def ring_cluster_decomposition() -> TriangleDecomposition:
    """Bell-pair sources with a controlled-sigma_z on each node's two qubits."""
    bell = bell_pair(2)
    cz = UnitaryOp(np.diag([1, 1, 1, -1]).astype(complex))
    return TriangleDecomposition(bell, bell, bell, cz, cz, cz)


def ring_cluster_state() -> PureState:
    return itn_pure_state(ring_cluster_decomposition())


def marginals_maximally_mixed(s: PureState | DensityState, size: int) -> bool:
    """True iff every ``size``-party marginal of ``s`` is maximally mixed within 1e-8."""
    for keep in itertools.combinations(range(len(s.dims)), size):
        marginal = partial_trace(s, keep)
        if not np.allclose(
            marginal.matrix, np.eye(marginal.dim) / marginal.dim, rtol=0.0, atol=PROPERTY_TOL
        ):
            return False
    return True
