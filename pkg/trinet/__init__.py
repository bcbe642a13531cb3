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

"""Preparability criteria, overlap witnesses and see-saw search for triangle networks."""

from __future__ import annotations

from .const import VERSION
from .errors import (
    ConfigError,
    DegenerateUpdateError,
    DimensionError,
    InvalidStateError,
    StateFormatError,
    TrinetError,
)
from .linalg import DensityState, PureState, UnitaryOp

__version__ = VERSION

__all__ = [
    "ConfigError",
    "DegenerateUpdateError",
    "DensityState",
    "DimensionError",
    "InvalidStateError",
    "PureState",
    "StateFormatError",
    "TrinetError",
    "UnitaryOp",
    "__version__",
]
