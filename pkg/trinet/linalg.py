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

"""Dense linear algebra over multipartite quantum states.

``DensityState``, ``PureState`` and ``UnitaryOp`` validate their invariants on
construction and freeze their arrays, so every value can be shared across
threads. Subsystems are indexed in the order of ``dims`` (big-endian: the
first subsystem is the most significant digit of the flat index).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import reduce

import numpy as np
import scipy.linalg

from .const import (
    CLAMP_WARN_TOL,
    HERMITIAN_TOL,
    MAX_TOTAL_DIM,
    POSITIVITY_TOL,
    PURE_NORM_TOL,
    RANK_REL_TOL,
    SCHMIDT_ZERO_TOL,
    TRACE_TOL,
    UNITARY_TOL,
)
from .errors import DimensionError, InvalidStateError

_LOGGER = logging.getLogger(__name__)

type Cut = tuple[tuple[int, ...], tuple[int, ...]]


def _check_dims(dims: Sequence[int], side: int) -> tuple[int, ...]:
    out = tuple(int(d) for d in dims)
    if not out or any(d < 1 for d in out):
        raise DimensionError(f"subsystem dimensions must be positive, got {list(dims)}")
    total = math.prod(out)
    if total > MAX_TOTAL_DIM:
        raise DimensionError(f"total dimension {total} exceeds the supported {MAX_TOTAL_DIM}")
    if total != side:
        raise DimensionError(f"dims {list(out)} multiply to {total}, expected {side}")
    return out


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class DensityState:
    """Hermitian, unit-trace, positive matrix on ``dims`` subsystems."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"density matrix must be square, got shape {matrix.shape}")
        dims = _check_dims(self.dims, matrix.shape[0])
        if not np.allclose(matrix, matrix.conj().T, rtol=0.0, atol=HERMITIAN_TOL):
            raise InvalidStateError("Hermitian within 1e-10")
        trace = np.trace(matrix).real
        if abs(trace - 1.0) > TRACE_TOL:
            raise InvalidStateError("trace equals 1 within 1e-10", f"trace={trace:.12g}")
        lowest = float(scipy.linalg.eigvalsh(matrix, subset_by_index=[0, 0])[0])
        if lowest < -POSITIVITY_TOL:
            raise InvalidStateError(
                "minimum eigenvalue >= -1e-9", f"min eigenvalue={lowest:.3e}"
            )
        object.__setattr__(self, "matrix", _frozen(matrix))
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues with numerical negatives clamped to zero."""
        values = scipy.linalg.eigvalsh(self.matrix)
        return np.clip(values, 0.0, None)

    def as_pure(self) -> PureState | None:
        """The state vector when tr(rho^2) is 1 within TRACE_TOL, else None."""
        purity = float(np.real(np.vdot(self.matrix, self.matrix)))
        if purity < 1.0 - TRACE_TOL:
            return None
        _, vectors = scipy.linalg.eigh(self.matrix)
        return PureState.from_vector(vectors[:, -1], self.dims)

    @classmethod
    def maximally_mixed(cls, dims: Sequence[int]) -> DensityState:
        n = math.prod(dims)
        return cls(np.eye(n, dtype=complex) / n, tuple(dims))


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector on ``dims`` subsystems."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        dims = _check_dims(self.dims, amplitudes.shape[0])
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > PURE_NORM_TOL:
            raise InvalidStateError("Euclidean norm equals 1 within 1e-12", f"norm={norm:.15g}")
        object.__setattr__(self, "amplitudes", _frozen(amplitudes))
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @classmethod
    def from_vector(cls, vector: np.ndarray, dims: Sequence[int]) -> PureState:
        """Normalize ``vector`` and wrap it; zero vectors are rejected."""
        vec = np.asarray(vector, dtype=complex).reshape(-1)
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            raise InvalidStateError("Euclidean norm equals 1 within 1e-12", "zero vector")
        return cls(vec / norm, tuple(dims))

    @classmethod
    def basis(cls, index: Sequence[int], dims: Sequence[int]) -> PureState:
        """Computational basis state |i_1 i_2 ...>."""
        vec = np.zeros(math.prod(dims), dtype=complex)
        vec[np.ravel_multi_index(tuple(index), tuple(dims))] = 1.0
        return cls(vec, tuple(dims))

    def projector(self) -> DensityState:
        return DensityState(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)


@dataclass(frozen=True, eq=False)
class UnitaryOp:
    """Square matrix with U U^dagger = 1 within 1e-10."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"unitary must be square, got shape {matrix.shape}")
        eye = np.eye(matrix.shape[0])
        if not np.allclose(matrix @ matrix.conj().T, eye, rtol=0.0, atol=UNITARY_TOL):
            raise InvalidStateError("U U^dagger equals identity within 1e-10")
        object.__setattr__(self, "matrix", _frozen(matrix))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim: int) -> UnitaryOp:
        return cls(np.eye(dim, dtype=complex))


@dataclass(frozen=True, eq=False)
class SchmidtData:
    """Schmidt coefficients (non-increasing) with matching orthonormal bases.

    ``rank`` counts the coefficients whose square exceeds ``rel_tol`` times the
    largest square; ``coefficients`` keeps the smaller ones too.
    """

    coefficients: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray
    rel_tol: float = RANK_REL_TOL

    @property
    def rank(self) -> int:
        squares = self.coefficients**2
        if squares.size == 0:
            return 0
        return int(np.count_nonzero(squares > self.rel_tol * squares[0]))

    def reconstruct(self) -> np.ndarray:
        """Flat amplitude vector sum_i s_i |l_i>|r_i> in cut order."""
        product = np.einsum("i,ia,ib->ab", self.coefficients, self.left_basis, self.right_basis)
        return product.reshape(-1)


def kron_all(matrices: Iterable[np.ndarray]) -> np.ndarray:
    """Kronecker product of a sequence of arrays, left to right."""
    return reduce(np.kron, matrices)


def tensor_product[S: (DensityState, PureState)](a: S, b: S) -> S:
    """Kronecker composition; dims concatenate."""
    if isinstance(a, PureState) and isinstance(b, PureState):
        return PureState(np.kron(a.amplitudes, b.amplitudes), a.dims + b.dims)
    if isinstance(a, DensityState) and isinstance(b, DensityState):
        return DensityState(np.kron(a.matrix, b.matrix), a.dims + b.dims)
    raise TypeError(
        f"tensor_product needs operands of one kind, got {type(a).__name__} "
        f"and {type(b).__name__}"
    )


def _normalize_keep(keep: Iterable[int], n: int) -> tuple[int, ...]:
    kept = tuple(sorted({int(i) for i in keep}))
    if not kept:
        raise DimensionError("keep set must not be empty")
    if kept[0] < 0 or kept[-1] >= n:
        raise DimensionError(f"subsystem index out of range for {n} subsystems: {list(kept)}")
    return kept


def partial_trace(s: DensityState | PureState, keep: Iterable[int]) -> DensityState:
    """Reduced state on the subsystems in ``keep`` (kept in ascending order)."""
    n = s.n_parties
    kept = _normalize_keep(keep, n)
    kept_dims = tuple(s.dims[i] for i in kept)
    if isinstance(s, PureState):
        dropped = tuple(i for i in range(n) if i not in kept)
        tensor = s.amplitudes.reshape(s.dims).transpose(kept + dropped)
        block = tensor.reshape(math.prod(kept_dims), -1)
        return DensityState(block @ block.conj().T, kept_dims)

    tensor = s.matrix.reshape(s.dims + s.dims)
    current = n
    for index in sorted(set(range(n)) - set(kept), reverse=True):
        tensor = np.trace(tensor, axis1=index, axis2=index + current)
        current -= 1
    side = math.prod(kept_dims)
    reduced = tensor.reshape(side, side)
    # Re-symmetrize to keep accumulated rounding inside the Hermitian tolerance.
    return DensityState((reduced + reduced.conj().T) / 2, kept_dims)


def _check_permutation(perm: Sequence[int], n: int) -> tuple[int, ...]:
    out = tuple(int(p) for p in perm)
    if sorted(out) != list(range(n)):
        raise DimensionError(f"{list(perm)} is not a permutation of {n} subsystems")
    return out


def permute_subsystems[S: (DensityState, PureState)](s: S, perm: Sequence[int]) -> S:
    """Reorder subsystems: new subsystem ``i`` is old subsystem ``perm[i]``."""
    order = _check_permutation(perm, s.n_parties)
    dims = tuple(s.dims[p] for p in order)
    if isinstance(s, PureState):
        return PureState(s.amplitudes.reshape(s.dims).transpose(order).reshape(-1), dims)
    n = s.n_parties
    axes = order + tuple(p + n for p in order)
    matrix = s.matrix.reshape(s.dims + s.dims).transpose(axes).reshape(s.dim, s.dim)
    return DensityState(matrix, dims)


def inverse_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inverse = [0] * len(perm)
    for new, old in enumerate(perm):
        inverse[old] = new
    return tuple(inverse)


def entropy_of_spectrum(eigenvalues: np.ndarray) -> float:
    """-sum p log2 p in bits, with 0 log 0 = 0 and [-1e-9, 0) clamped."""
    values = np.asarray(eigenvalues, dtype=float)
    if values.size and values.min() < -POSITIVITY_TOL:
        raise InvalidStateError("minimum eigenvalue >= -1e-9", f"min eigenvalue={values.min():.3e}")
    if values.size and values.min() < -CLAMP_WARN_TOL:
        _LOGGER.warning("Clamping eigenvalue %.3e to zero", values.min())
    positive = values[values > 0.0]
    return float(-np.sum(positive * np.log2(positive)))


def von_neumann_entropy(s: DensityState) -> float:
    """Von Neumann entropy in bits."""
    return entropy_of_spectrum(scipy.linalg.eigvalsh(s.matrix))


def numerical_rank(s: DensityState | np.ndarray, rel_tol: float = RANK_REL_TOL) -> int:
    """Number of eigenvalues above ``rel_tol`` times the largest one."""
    matrix = s.matrix if isinstance(s, DensityState) else np.asarray(s)
    values = scipy.linalg.eigvalsh(matrix)
    largest = values.max()
    if largest <= 0.0:
        return 0
    return int(np.count_nonzero(values > rel_tol * largest))


def normalize_cut(cut: Sequence[Sequence[int]] | Sequence[int], n: int) -> Cut:
    """Return ``(left, right)`` for a bipartition given as a pair or as its left side."""
    if cut and all(isinstance(part, Iterable) for part in cut):
        parts = [tuple(int(i) for i in part) for part in cut]  # type: ignore[union-attr]
        if len(parts) != 2:
            raise DimensionError(f"a cut has exactly two blocks, got {len(parts)}")
        left, right = parts
    else:
        left = tuple(int(i) for i in cut)  # type: ignore[arg-type]
        right = tuple(i for i in range(n) if i not in left)
    if not left or not right:
        raise DimensionError("both sides of a cut must be non-empty")
    if sorted(left + right) != list(range(n)):
        raise DimensionError(f"cut {list(left)}|{list(right)} does not partition {n} subsystems")
    return left, right


def schmidt(
    s: PureState,
    cut: Sequence[Sequence[int]] | Sequence[int],
    rel_tol: float = RANK_REL_TOL,
) -> SchmidtData:
    """Schmidt decomposition across ``cut``.

    Only coefficients below ``SCHMIDT_ZERO_TOL`` are dropped, so the squares
    sum to one and ``reconstruct`` returns ``s``. ``rank`` applies ``rel_tol``
    and matches ``numerical_rank`` of either marginal.
    """
    left, right = normalize_cut(cut, s.n_parties)
    d_left = math.prod(s.dims[i] for i in left)
    matrix = s.amplitudes.reshape(s.dims).transpose(left + right).reshape(d_left, -1)
    u, values, vh = scipy.linalg.svd(matrix, full_matrices=False)
    keep = values > SCHMIDT_ZERO_TOL
    return SchmidtData(
        coefficients=_frozen(values[keep].copy()),
        left_basis=_frozen(u[:, keep].T.copy()),
        right_basis=_frozen(vh[keep].copy()),
        rel_tol=rel_tol,
    )


def overlap(a: PureState, b: PureState) -> complex:
    """Inner product <a|b>."""
    if a.dim != b.dim:
        raise DimensionError(f"overlap needs equal total dimension, got {a.dim} and {b.dim}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def partial_transpose(s: DensityState, block: Iterable[int]) -> np.ndarray:
    """Matrix of rho with the subsystems in ``block`` transposed."""
    n = s.n_parties
    axes = list(range(2 * n))
    for index in _normalize_keep(block, n):
        axes[index], axes[index + n] = axes[index + n], axes[index]
    return s.matrix.reshape(s.dims + s.dims).transpose(axes).reshape(s.dim, s.dim)


def ppt_check(s: DensityState, cut: Sequence[Sequence[int]] | Sequence[int]) -> bool:
    """True iff the partial transpose over the second block is positive within 1e-9."""
    _, right = normalize_cut(cut, s.n_parties)
    transposed = partial_transpose(s, right)
    lowest = float(scipy.linalg.eigvalsh(transposed, subset_by_index=[0, 0])[0])
    if _LOGGER.isEnabledFor(logging.DEBUG):
        _LOGGER.debug("ppt dims=%s right=%s min_eig=%.3e", list(s.dims), list(right), lowest)
    return lowest >= -POSITIVITY_TOL


def conjugate(s: DensityState, unitary: np.ndarray) -> DensityState:
    """U rho U^dagger with dims kept."""
    matrix = unitary @ s.matrix @ unitary.conj().T
    return DensityState((matrix + matrix.conj().T) / 2, s.dims)
