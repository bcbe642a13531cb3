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

from __future__ import annotations

import logging

import numpy as np
import pytest

from trinet.bounds import BoundConfig, optimize_bound
from trinet.criteria import obs1_check, rank_feasibility, rank_profile_of
from trinet.linalg import entropy_of_spectrum
from trinet.seesaw import SeesawConfig, optimize_overlap
from trinet.states import ghz, smolin


def test_seesaw_debug_lines(caplog: pytest.LogCaptureFixture) -> None:
    caplog.set_level(logging.DEBUG, logger="trinet.seesaw")
    optimize_overlap(ghz(4), SeesawConfig(restarts=2, max_iterations=50, threads=1))
    assert "seesaw restart=0" in caplog.text
    assert "See-saw mu^2=" in caplog.text


def test_bound_refinement_debug_lines(caplog: pytest.LogCaptureFixture) -> None:
    caplog.set_level(logging.DEBUG, logger="trinet.bounds")
    optimize_bound(ghz(2), BoundConfig(grid=20, refine_rounds=2))
    assert "bound polish starts=8" in caplog.text
    assert "bound refine round=1" in caplog.text
    assert "Overlap bound" in caplog.text


def test_criteria_debug_lines(caplog: pytest.LogCaptureFixture) -> None:
    caplog.set_level(logging.DEBUG, logger="trinet.criteria")
    obs1_check(ghz(2))
    rank_feasibility(rank_profile_of(smolin()))
    assert "obs1 tmi=" in caplog.text
    assert "has no source-rank assignment" in caplog.text


def test_no_debug_output_by_default(caplog: pytest.LogCaptureFixture) -> None:
    caplog.set_level(logging.INFO, logger="trinet")
    obs1_check(ghz(2))
    assert "obs1 tmi=" not in caplog.text


def test_clamped_eigenvalue_warning(caplog: pytest.LogCaptureFixture) -> None:
    caplog.set_level(logging.WARNING, logger="trinet.linalg")
    assert entropy_of_spectrum(np.array([-1e-10, 0.5, 0.5])) == pytest.approx(1.0)
    assert "Clamping eigenvalue" in caplog.text
    caplog.clear()
    entropy_of_spectrum(np.array([-1e-14, 1.0]))
    assert "Clamping eigenvalue" not in caplog.text
