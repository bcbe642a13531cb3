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

"""Run statistics for see-saw batches."""

from __future__ import annotations

import statistics
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class SeesawMetrics:
    """Track restart outcomes across one optimization run."""

    restarts: int = 0
    converged_restarts: int = 0
    degenerate_redraws: int = 0

    # Sweeps used by each finished restart, in restart order
    iteration_samples: list[int] = field(default_factory=list)

    best_restart: int | None = None
    best_mu_squared: float | None = None

    def record_restart(self, iterations: int, converged: bool) -> None:
        """Record one finished restart."""
        self.restarts += 1
        if converged:
            self.converged_restarts += 1
        self.iteration_samples.append(iterations)

    def record_redraw(self, count: int = 1) -> None:
        """Record redraws after degenerate updates."""
        self.degenerate_redraws += count

    def record_best(self, index: int, mu_squared: float) -> None:
        self.best_restart = index
        self.best_mu_squared = mu_squared

    @property
    def median_iterations(self) -> float:
        if not self.iteration_samples:
            return 0.0
        return float(statistics.median(self.iteration_samples))

    @property
    def max_iterations(self) -> int:
        return max(self.iteration_samples, default=0)

    @property
    def convergence_rate(self) -> float:
        """Fraction of restarts that met the convergence tolerance."""
        if self.restarts == 0:
            return 0.0
        return self.converged_restarts / self.restarts

    def to_dict(self) -> dict[str, Any]:
        """Export metrics as a dictionary for reports."""
        data = asdict(self)
        data.pop("iteration_samples")
        data["median_iterations"] = self.median_iterations
        data["max_iterations"] = self.max_iterations
        data["convergence_rate"] = round(self.convergence_rate, 3)
        return data
