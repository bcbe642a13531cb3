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

"""Command reports: named verdicts plus numeric payloads, serializable to JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .const import EXIT_OK, EXIT_VIOLATION, VERSION
from .criteria import Verdict, VerdictStatus


@dataclass
class Report:
    """Result of one CLI command."""

    command: str
    input: str
    verdicts: list[tuple[str, Verdict]] = field(default_factory=list)
    numbers: dict[str, Any] = field(default_factory=dict)
    version: str = VERSION
    seed: int | None = None

    def add(self, name: str, verdict: Verdict) -> None:
        self.verdicts.append((name, verdict))

    def verdict(self, name: str) -> Verdict:
        for label, verdict in self.verdicts:
            if label == name:
                return verdict
        raise KeyError(name)

    @property
    def violated(self) -> bool:
        return any(v.violated for _, v in self.verdicts)

    @property
    def exit_code(self) -> int:
        return EXIT_VIOLATION if self.violated else EXIT_OK

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "input": self.input,
            "verdicts": [{"name": name, **v.to_dict()} for name, v in self.verdicts],
            "numbers": self.numbers,
            "version": self.version,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Report:
        verdicts = []
        for entry in data.get("verdicts", []):
            body = {k: v for k, v in entry.items() if k != "name"}
            verdicts.append((str(entry["name"]), Verdict.from_dict(body)))
        return cls(
            command=str(data["command"]),
            input=str(data["input"]),
            verdicts=verdicts,
            numbers=dict(data.get("numbers", {})),
            version=str(data.get("version", VERSION)),
            seed=data.get("seed"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))


_STATUS_MARK = {
    VerdictStatus.CONSISTENT: "ok",
    VerdictStatus.VIOLATED: "VIOLATED",
    VerdictStatus.INCONCLUSIVE: "inconclusive",
}


def _format_number(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def summarize_report(report: Report) -> str:
    """Plain-text summary for humans (stderr)."""
    seed = "" if report.seed is None else f" seed={report.seed}"
    lines = [f"trinet {report.version} {report.command} {report.input}{seed}"]
    width = max((len(name) for name, _ in report.verdicts), default=0)
    for name, verdict in report.verdicts:
        lines.append(f"  {name:<{width}}  {_STATUS_MARK[verdict.status]:<12}  {verdict.detail}")
    for key, value in report.numbers.items():
        if isinstance(value, dict | list):
            continue
        lines.append(f"  {key} = {_format_number(value)}")
    if report.verdicts:
        lines.append("  result: " + ("violation found" if report.violated else "no violation"))
    return "\n".join(lines)
