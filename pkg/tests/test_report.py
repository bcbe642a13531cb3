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

"""Test command reports."""

from __future__ import annotations

from trinet.const import EXIT_OK, EXIT_VIOLATION, VERSION
from trinet.criteria import RankAssignment, Verdict, VerdictStatus
from trinet.report import Report, summarize_report


def _report() -> Report:
    report = Report(command="analyze", input="state.json", seed=42)
    report.add("obs1", Verdict(VerdictStatus.VIOLATED, "I_3 = 1 bits is nonzero", {"tmi": 1.0}))
    report.add(
        "rank",
        Verdict(
            VerdictStatus.CONSISTENT,
            "admits source ranks",
            {"checked": 3.0},
            assignment=RankAssignment(1, 1, 1, 2, 2, 2, 2, 2, 2),
        ),
    )
    report.numbers.update({"dims": [4, 4, 4], "rank_profile": "(1;4,4,4;4,4,4)"})
    return report


def test_report_json_is_lossless() -> None:
    report = _report()
    restored = Report.from_json(report.to_json())
    assert restored.to_dict() == report.to_dict()
    assert restored.verdict("rank").assignment == RankAssignment(1, 1, 1, 2, 2, 2, 2, 2, 2)
    assert restored.version == VERSION
    assert restored.seed == 42


def test_exit_code_follows_violations() -> None:
    report = _report()
    assert report.violated
    assert report.exit_code == EXIT_VIOLATION
    clean = Report(command="bound", input="ghz2")
    clean.add("witness", Verdict(VerdictStatus.INCONCLUSIVE, "putative"))
    assert clean.exit_code == EXIT_OK


def test_summary_lists_verdicts_and_scalars() -> None:
    text = summarize_report(_report())
    assert "analyze state.json seed=42" in text
    assert "VIOLATED" in text
    assert "rank_profile = (1;4,4,4;4,4,4)" in text
    # Structured payloads stay in the JSON report only
    assert "dims" not in text
    assert text.endswith("result: violation found")
