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

"""Shared pytest fixtures for the trinet tests.

Seeded generators, a Bell pair and random network decompositions so tests
stay deterministic without mocking any numerics.
"""

import pathlib
import sys

import numpy as np
import pytest

# Ensure project root is on sys.path for direct module imports in tests
ROOT = pathlib.Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from trinet.linalg import PureState  # noqa: E402
from trinet.sampling import random_itn_decomposition  # noqa: E402
from trinet.states import TriangleDecomposition, bell_pair  # noqa: E402


@pytest.fixture
def rng() -> np.random.Generator:
    """Fresh generator with a fixed seed for every test."""
    return np.random.default_rng(20240611)


@pytest.fixture
def bell() -> PureState:
    return bell_pair(2)


@pytest.fixture
def random_decomposition(rng: np.random.Generator) -> TriangleDecomposition:
    """Qubit-pair network with full-rank mixed sources and Haar node unitaries."""
    return random_itn_decomposition(2, rng)


@pytest.fixture
def random_pure_decomposition(rng: np.random.Generator) -> TriangleDecomposition:
    return random_itn_decomposition(2, rng, pure=True)
