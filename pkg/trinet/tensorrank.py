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

"""2x2 matrix-multiplication tensor and product-term decomposition checks."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidStateError
from .linalg import PureState

_LOGGER = logging.getLogger(__name__)

RECONSTRUCTION_TOL = 1e-10

# Strassen's seven products as (A-leg, B-leg, C-leg) coefficient vectors.
# Leg indices: A_ij -> 2i+j, B_jk -> 2j+k, C_ik -> 2k+i.
_STRASSEN = (
    ((1, 0, 0, 1), (1, 0, 0, 1), (1, 0, 0, 1)),
    ((0, 0, 1, 1), (1, 0, 0, 0), (0, 1, 0, -1)),
    ((1, 0, 0, 0), (0, 1, 0, -1), (0, 0, 1, 1)),
    ((0, 0, 0, 1), (-1, 0, 1, 0), (1, 1, 0, 0)),
    ((1, 1, 0, 0), (0, 0, 0, 1), (-1, 0, 1, 0)),
    ((-1, 0, 1, 0), (1, 1, 0, 0), (0, 0, 0, 1)),
    ((0, 1, 0, -1), (0, 0, 1, 1), (1, 0, 0, 0)),
)


@dataclass(frozen=True, eq=False)
class Tensor3:
    data: np.ndarray

    def __post_init__(self) -> None:
        data = np.array(self.data, dtype=complex)
        if data.ndim != 3 or min(data.shape) < 1:
            raise DimensionError(f"expected an order-3 tensor, got shape {data.shape}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def dims(self) -> tuple[int, int, int]:
        a, b, c = self.data.shape
        return (a, b, c)


@dataclass(frozen=True, eq=False)
class ProductTerm:
    """coefficient * u (x) v (x) w."""

    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    coefficient: complex = 1.0

    def __post_init__(self) -> None:
        for name in ("u", "v", "w"):
            vector = np.array(getattr(self, name), dtype=complex).reshape(-1)
            if not np.any(vector):
                raise InvalidStateError("term vectors nonzero", f"{name} is zero")
            vector.setflags(write=False)
            object.__setattr__(self, name, vector)
        object.__setattr__(self, "coefficient", complex(self.coefficient))

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.u.shape[0], self.v.shape[0], self.w.shape[0])

    def tensor(self) -> np.ndarray:
        return self.coefficient * np.einsum("i,j,k->ijk", self.u, self.v, self.w)


def matmul_tensor() -> Tensor3:
    """Unit entries at (2i+j, 2j+k, 2k+i) for i, j, k in {0, 1}."""
    data = np.zeros((4, 4, 4), dtype=complex)
    for i, j, k in itertools.product(range(2), repeat=3):
        data[2 * i + j, 2 * j + k, 2 * k + i] = 1.0
    return Tensor3(data)


def _basis(index: int) -> np.ndarray:
    vector = np.zeros(4)
    vector[index] = 1.0
    return vector


def canonical_terms() -> list[ProductTerm]:
    """The eight basis products that define the matrix-multiplication tensor."""
    return [
        ProductTerm(_basis(2 * i + j), _basis(2 * j + k), _basis(2 * k + i))
        for i, j, k in itertools.product(range(2), repeat=3)
    ]


def strassen_terms() -> list[ProductTerm]:
    """Seven-term decomposition from Strassen's algorithm."""
    return [ProductTerm(np.array(u), np.array(v), np.array(w)) for u, v, w in _STRASSEN]


def _is_integral(values: np.ndarray) -> bool:
    return bool(np.all(values.imag == 0) and np.all(values.real == np.round(values.real)))


def verify_decomposition(t: Tensor3, terms: Sequence[ProductTerm]) -> bool:
    """True iff the terms sum to ``t`` entrywise.

    Integer data is compared exactly; anything else within 1e-10.
    """
    for index, term in enumerate(terms):
        if term.dims != t.dims:
            raise DimensionError(f"term {index} has dims {term.dims}, tensor has {t.dims}")
    if not terms:
        return not np.any(t.data)
    stacked = [np.concatenate([term.u, term.v, term.w, [term.coefficient]]) for term in terms]
    if _is_integral(np.concatenate(stacked)) and _is_integral(t.data):
        total = np.zeros(t.dims, dtype=np.int64)
        for term in terms:
            total += int(term.coefficient.real) * np.einsum(
                "i,j,k->ijk",
                term.u.real.astype(np.int64),
                term.v.real.astype(np.int64),
                term.w.real.astype(np.int64),
            )
        ok = bool(np.array_equal(total, t.data.real.astype(np.int64)))
    else:
        total_c = sum((term.tensor() for term in terms), start=np.zeros(t.dims, dtype=complex))
        ok = bool(np.allclose(total_c, t.data, rtol=0.0, atol=RECONSTRUCTION_TOL))
    if _LOGGER.isEnabledFor(logging.DEBUG):
        _LOGGER.debug("verify terms=%d dims=%s ok=%s", len(terms), t.dims, ok)
    return ok


def as_network_state(t: Tensor3) -> PureState:
    """Normalize the tensor entries into a tripartite pure state."""
    norm = float(np.linalg.norm(t.data))
    if norm == 0.0:
        raise InvalidStateError("nonzero tensor", "cannot normalize the zero tensor")
    return PureState(t.data.reshape(-1) / norm, t.dims)
