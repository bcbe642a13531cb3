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

"""Haar sampling of states, unitaries and network decompositions."""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
import scipy.linalg

from .bounds import SourceAngles
from .const import MAX_ANGLE
from .linalg import DensityState, PureState, UnitaryOp
from .states import TriangleDecomposition


def _ginibre(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)


def haar_pure_state(dims: Sequence[int], rng: np.random.Generator) -> PureState:
    """Uniformly random pure state: a normalized complex Gaussian vector."""
    return PureState.from_vector(_ginibre(rng, (math.prod(dims),)), tuple(dims))


def haar_unitary(n: int, rng: np.random.Generator) -> UnitaryOp:
    """Haar-random n x n unitary.

    QR of a Ginibre matrix, with the columns of Q rephased by the phases of
    diag(R) so the distribution is exactly Haar.
    """
    q, r = scipy.linalg.qr(_ginibre(rng, (n, n)))
    diagonal = np.diag(r)
    return UnitaryOp(q * (diagonal / np.abs(diagonal)))


def random_density(
    dims: Sequence[int], rng: np.random.Generator, rank: int | None = None
) -> DensityState:
    """G G^dagger / tr(G G^dagger) with G of shape (n, rank); full rank by default."""
    n = math.prod(dims)
    g = _ginibre(rng, (n, n if rank is None else rank))
    matrix = g @ g.conj().T
    matrix = (matrix + matrix.conj().T) / 2
    return DensityState(matrix / np.trace(matrix).real, tuple(dims))


def random_itn_decomposition(
    d: int, rng: np.random.Generator, *, pure: bool = False
) -> TriangleDecomposition:
    """Random sources on [d, d] (pure or full-rank mixed) with Haar node unitaries."""
    if pure:
        sources = [haar_pure_state((d, d), rng) for _ in range(3)]
    else:
        sources = [random_density((d, d), rng) for _ in range(3)]
    unitaries = [haar_unitary(d * d, rng) for _ in range(3)]
    return TriangleDecomposition(*sources, *unitaries)


def random_angles(rng: np.random.Generator) -> SourceAngles:
    a, b, c = rng.uniform(0.0, MAX_ANGLE, size=3)
    return SourceAngles(float(a), float(b), float(c))
