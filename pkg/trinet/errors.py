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

"""Exceptions raised by trinet."""

from __future__ import annotations


class TrinetError(Exception):
    """Base class for all trinet errors."""

    ...


class InvalidStateError(TrinetError, ValueError):
    """A state, unitary or mixture violates one of its type invariants."""

    def __init__(self, invariant: str, detail: str = "") -> None:
        self.invariant = invariant
        message = f"invariant violated: {invariant}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class DimensionError(TrinetError, ValueError):
    """Subsystem dimensions, cuts or permutations do not fit the operands."""

    ...


class StateFormatError(TrinetError):
    """A state, decomposition or tensor file cannot be parsed."""

    ...


class DegenerateUpdateError(TrinetError):
    """A see-saw update hit a zero partial inner product; redraw and retry."""

    ...


class ConfigError(TrinetError):
    """Non-retryable configuration error."""

    ...
