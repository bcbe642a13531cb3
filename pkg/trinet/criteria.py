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

"""Necessary conditions for triangle-network preparability and overlap witnesses.

Every check returns a ``Verdict``: ``violated`` means the state provably lies
outside the network set the check targets, ``consistent`` means the check
passed, ``inconclusive`` means no decision could be certified.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import asdict, dataclass, field
from enum import StrEnum
from typing import Any

import numpy as np
import scipy.linalg

from .const import DECISION_TOL
from .errors import DimensionError, InvalidStateError
from .linalg import (
    DensityState,
    PureState,
    kron_all,
    numerical_rank,
    partial_trace,
    ppt_check,
    schmidt,
    von_neumann_entropy,
)
from .states import embed

_LOGGER = logging.getLogger(__name__)

PARTIES = ("A", "B", "C")
# Two-party marginals PPT can decide: qubit-qubit and qubit-qutrit.
PPT_DECIDABLE = {(2, 2), (2, 3), (3, 2)}


class VerdictStatus(StrEnum):
    CONSISTENT = "consistent"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


class MuProvenance(StrEnum):
    SEESAW_LOWER_BOUND = "seesaw-lower-bound"
    ANALYTICAL_UPPER_BOUND = "analytical-upper-bound"


@dataclass(frozen=True)
class RankProfile:
    """Observed ranks (global; BC, AC, AB; A, B, C) and the source dimension d."""

    global_rank: int
    rank_bc: int
    rank_ac: int
    rank_ab: int
    rank_a: int
    rank_b: int
    rank_c: int
    d: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise InvalidStateError("d >= 1", f"d={self.d}")
        limits = {
            "global_rank": self.d**6,
            "rank_bc": self.d**4,
            "rank_ac": self.d**4,
            "rank_ab": self.d**4,
            "rank_a": self.d**2,
            "rank_b": self.d**2,
            "rank_c": self.d**2,
        }
        for name, limit in limits.items():
            value = getattr(self, name)
            if not 1 <= value <= limit:
                raise InvalidStateError(f"1 <= {name} <= {limit}", f"{name}={value}")

    def as_tuple(self) -> tuple[int, ...]:
        return (
            self.global_rank,
            self.rank_bc,
            self.rank_ac,
            self.rank_ab,
            self.rank_a,
            self.rank_b,
            self.rank_c,
        )

    def __str__(self) -> str:
        g, bc, ac, ab, a, b, c = self.as_tuple()
        return f"({g};{bc},{ac},{ab};{a},{b},{c})"


@dataclass(frozen=True)
class RankAssignment:
    """Source ranks r_x in [1, d^2] and their per-leg marginal ranks r_x^Y in [1, d]."""

    r_alpha: int
    r_beta: int
    r_gamma: int
    r_gamma_a: int
    r_gamma_b: int
    r_alpha_b: int
    r_alpha_c: int
    r_beta_c: int
    r_beta_a: int

    def within(self, d: int) -> bool:
        big = (self.r_alpha, self.r_beta, self.r_gamma)
        small = (
            self.r_gamma_a,
            self.r_gamma_b,
            self.r_alpha_b,
            self.r_alpha_c,
            self.r_beta_c,
            self.r_beta_a,
        )
        return all(1 <= r <= d * d for r in big) and all(1 <= r <= d for r in small)

    def satisfies(self, p: RankProfile) -> bool:
        """All seven rank equations hold for ``p``."""
        return (
            p.global_rank == self.r_alpha * self.r_beta * self.r_gamma
            and p.rank_bc == self.r_alpha * self.r_beta_c * self.r_gamma_b
            and p.rank_ac == self.r_alpha_c * self.r_beta * self.r_gamma_a
            and p.rank_ab == self.r_alpha_b * self.r_beta_a * self.r_gamma
            and p.rank_a == self.r_beta_a * self.r_gamma_a
            and p.rank_b == self.r_alpha_b * self.r_gamma_b
            and p.rank_c == self.r_alpha_c * self.r_beta_c
        )


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    detail: str
    numbers: dict[str, float] = field(default_factory=dict)
    assignment: RankAssignment | None = None

    def __post_init__(self) -> None:
        if self.status is VerdictStatus.VIOLATED and not self.numbers:
            raise ValueError("violated verdicts must carry at least one named number")

    @property
    def violated(self) -> bool:
        return self.status is VerdictStatus.VIOLATED

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "status": str(self.status),
            "detail": self.detail,
            "numbers": dict(self.numbers),
        }
        if self.assignment is not None:
            data["assignment"] = asdict(self.assignment)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Verdict:
        assignment = data.get("assignment")
        return cls(
            status=VerdictStatus(data["status"]),
            detail=str(data.get("detail", "")),
            numbers={str(k): float(v) for k, v in data.get("numbers", {}).items()},
            assignment=RankAssignment(**assignment) if assignment else None,
        )


@dataclass(frozen=True, eq=False)
class WitnessOp:
    """W = mu^2 1 - |target><target|."""

    mu_squared: float
    target: PureState
    provenance: MuProvenance

    def __post_init__(self) -> None:
        if not 0.0 <= self.mu_squared <= 1.0:
            raise InvalidStateError("mu^2 in [0, 1]", f"mu^2={self.mu_squared}")
        object.__setattr__(self, "provenance", MuProvenance(self.provenance))

    def matrix(self) -> np.ndarray:
        psi = self.target.amplitudes
        return self.mu_squared * np.eye(psi.shape[0]) - np.outer(psi, psi.conj())


def _require_tripartite(s: DensityState | PureState) -> None:
    if s.n_parties != 3:
        raise DimensionError(f"expected 3 parties, got dims {list(s.dims)}")


def tmi_of_parts(s: DensityState | PureState) -> dict[str, float]:
    """Entropies (bits) of ABC and every non-empty marginal, keyed by party letters."""
    _require_tripartite(s)
    parts = {"ABC": 0.0 if isinstance(s, PureState) else von_neumann_entropy(s)}
    for size in (1, 2):
        for keep in itertools.combinations(range(3), size):
            label = "".join(PARTIES[i] for i in keep)
            parts[label] = von_neumann_entropy(partial_trace(s, keep))
    return parts


def tmi(s: DensityState | PureState) -> float:
    """I_3(A:B:C) = S(ABC) + S(A) + S(B) + S(C) - S(AB) - S(AC) - S(BC), in bits."""
    e = tmi_of_parts(s)
    return e["ABC"] + e["A"] + e["B"] + e["C"] - e["AB"] - e["AC"] - e["BC"]


def obs1_check(s: DensityState | PureState, tol: float = DECISION_TOL) -> Verdict:
    """Independent-network states have vanishing tripartite mutual information."""
    value = tmi(s)
    if _LOGGER.isEnabledFor(logging.DEBUG):
        _LOGGER.debug("obs1 tmi=%.12g tol=%g", value, tol)
    if abs(value) > tol:
        return Verdict(
            VerdictStatus.VIOLATED,
            f"I_3 = {value:.6g} bits is nonzero",
            {"tmi": value},
        )
    return Verdict(VerdictStatus.CONSISTENT, f"I_3 = {value:.3g} bits", {"tmi": value})


def _search_space(d: int) -> int:
    return (d * d) ** 3 * d**6


def rank_feasibility(p: RankProfile) -> Verdict:
    """Exhaustive search for source ranks satisfying the seven rank equations.

    Assignments are visited in lexicographic field order, so the returned
    witness is the smallest one.
    """
    d = p.d
    big = range(1, d * d + 1)
    small = range(1, d + 1)
    checked = 0
    for r_alpha, r_beta, r_gamma in itertools.product(big, repeat=3):
        if r_alpha * r_beta * r_gamma != p.global_rank:
            checked += d**6
            continue
        for tail in itertools.product(small, repeat=6):
            checked += 1
            candidate = RankAssignment(r_alpha, r_beta, r_gamma, *tail)
            if candidate.satisfies(p):
                if _LOGGER.isEnabledFor(logging.DEBUG):
                    _LOGGER.debug("rank profile=%s witness=%s checked=%d", p, candidate, checked)
                return Verdict(
                    VerdictStatus.CONSISTENT,
                    f"rank profile {p} admits source ranks",
                    {"checked": float(checked), "search_space": float(_search_space(d))},
                    assignment=candidate,
                )
    _LOGGER.info("rank profile %s has no source-rank assignment (d=%d)", p, d)
    return Verdict(
        VerdictStatus.VIOLATED,
        f"no assignment among all {checked} satisfies the rank equations for {p}",
        {
            "checked": float(checked),
            "search_space": float(_search_space(d)),
            "global_rank": float(p.global_rank),
        },
    )


def rank_profile_of(s: DensityState | PureState, d: int | None = None) -> RankProfile:
    """Measure the seven ranks of a three-node state whose nodes hold d^2 levels."""
    _require_tripartite(s)
    if len(set(s.dims)) != 1:
        raise DimensionError(f"rank profile needs equal node dims, got {list(s.dims)}")
    if d is None:
        root = math.isqrt(s.dims[0])
        if root * root != s.dims[0]:
            raise DimensionError(f"node dim {s.dims[0]} is not d^2; pass d explicitly")
        d = root
    elif d * d < s.dims[0]:
        raise DimensionError(f"node dim {s.dims[0]} exceeds d^2 = {d * d}")
    global_rank = 1 if isinstance(s, PureState) else numerical_rank(s)
    ranks = [global_rank]
    for keep in ((1, 2), (0, 2), (0, 1), (0,), (1,), (2,)):
        ranks.append(numerical_rank(partial_trace(s, keep)))
    return RankProfile(*ranks, d=d)


def _is_diagonal(matrix: np.ndarray, tol: float) -> bool:
    off = matrix - np.diag(np.diag(matrix))
    return bool(np.max(np.abs(off), initial=0.0) <= tol)


def certify_separable(rho: DensityState, tol: float = DECISION_TOL) -> bool | None:
    """True if ``rho`` is certified separable, False if certified entangled, None if undecided.

    Certificates: diagonal in the computational basis or in the product of
    the local eigenbases (explicitly separable); otherwise PPT on 2x2 and 2x3.
    """
    if _is_diagonal(rho.matrix, tol):
        return True
    left, right = partial_trace(rho, [0]), partial_trace(rho, [1])
    _, v_left = scipy.linalg.eigh(left.matrix)
    _, v_right = scipy.linalg.eigh(right.matrix)
    basis = kron_all([v_left, v_right])
    if _is_diagonal(basis.conj().T @ rho.matrix @ basis, tol):
        return True
    if tuple(rho.dims) in PPT_DECIDABLE:
        return ppt_check(rho, ([0], [1]))
    return None


def obs2_pure_check(s: PureState, tol: float = DECISION_TOL) -> Verdict:
    """Monogamy/additivity test on every cut X|YZ of a pure three-node state.

    If both marginals XY and XZ are certified separable while X is entangled
    with YZ, the additive monogamous measure cannot split E(X|YZ) across them.
    """
    if not isinstance(s, PureState):
        raise InvalidStateError("pure global state", "obs2_pure_check takes a PureState")
    _require_tripartite(s)
    numbers: dict[str, float] = {}
    violated_cuts: list[str] = []
    entangled = False
    for x in range(3):
        y, z = (i for i in range(3) if i != x)
        cut = f"{PARTIES[x]}|{PARTIES[y]}{PARTIES[z]}"
        entropy = von_neumann_entropy(partial_trace(s, [x]))
        numbers[f"E_{cut}"] = entropy
        if entropy <= tol:
            continue
        entangled = True
        certified = []
        for other in (y, z):
            label = "".join(PARTIES[i] for i in sorted((x, other)))
            result = certify_separable(partial_trace(s, sorted((x, other))), tol)
            numbers[f"separable_{label}"] = 1.0 if result else 0.0
            certified.append(result is True)
        if _LOGGER.isEnabledFor(logging.DEBUG):
            _LOGGER.debug("obs2 cut=%s E=%.6g certified=%s", cut, entropy, certified)
        if all(certified):
            violated_cuts.append(cut)
    if not entangled:
        return Verdict(VerdictStatus.CONSISTENT, "product across every cut", numbers)
    if violated_cuts:
        return Verdict(
            VerdictStatus.VIOLATED,
            f"separable marginals cannot carry the entanglement across {', '.join(violated_cuts)}",
            numbers,
        )
    return Verdict(
        VerdictStatus.INCONCLUSIVE, "no cut has both marginals certified separable", numbers
    )


def gme_qubit_check(s: PureState) -> Verdict:
    """Pure states with rank-two single-party marginals entangled across every cut.

    Such states are genuinely multipartite entangled three-qubit states (up to
    local embedding) and cannot be prepared even with shared randomness.
    """
    if not isinstance(s, PureState):
        raise InvalidStateError("pure global state", "gme_qubit_check takes a PureState")
    _require_tripartite(s)
    numbers: dict[str, float] = {}
    for x in range(3):
        numbers[f"rank_{PARTIES[x]}"] = float(numerical_rank(partial_trace(s, [x])))
        numbers[f"schmidt_rank_{PARTIES[x]}"] = float(schmidt(s, [x]).rank)
    qubit_like = all(numbers[f"rank_{p}"] == 2 for p in PARTIES)
    entangled = all(numbers[f"schmidt_rank_{p}"] >= 2 for p in PARTIES)
    if qubit_like and entangled:
        return Verdict(
            VerdictStatus.VIOLATED,
            "three-qubit genuinely multipartite entangled state",
            numbers,
        )
    return Verdict(VerdictStatus.CONSISTENT, "not a three-qubit GME state", numbers)


def build_witness(
    target: PureState, mu_squared: float, provenance: MuProvenance | str
) -> WitnessOp:
    return WitnessOp(float(mu_squared), target, MuProvenance(provenance))


def _fidelity(w: WitnessOp, s: DensityState) -> float:
    target = w.target
    if target.dims != s.dims:
        if len(target.dims) != len(s.dims):
            raise DimensionError(
                f"witness on dims {list(target.dims)} cannot act on {list(s.dims)}"
            )
        target = embed(target, s.dims)
    psi = target.amplitudes
    return float(np.vdot(psi, s.matrix @ psi).real)


def evaluate_witness(w: WitnessOp, s: DensityState) -> float:
    """tr(W rho) = mu^2 - <psi|rho|psi>; the target is embedded when smaller."""
    return w.mu_squared - _fidelity(w, s)


def witness_verdict(w: WitnessOp, s: DensityState, tol: float = DECISION_TOL) -> Verdict:
    """Label tr(W rho); a negative value is a certificate only for an upper-bound mu^2."""
    fidelity = _fidelity(w, s)
    value = w.mu_squared - fidelity
    numbers = {"value": value, "mu_squared": w.mu_squared, "fidelity": fidelity}
    if value >= -tol:
        return Verdict(VerdictStatus.CONSISTENT, f"tr(W rho) = {value:.6g} >= 0", numbers)
    if w.provenance is MuProvenance.ANALYTICAL_UPPER_BOUND:
        return Verdict(
            VerdictStatus.VIOLATED,
            f"tr(W rho) = {value:.6g} < 0 with certified mu^2",
            numbers,
        )
    return Verdict(
        VerdictStatus.INCONCLUSIVE,
        f"tr(W rho) = {value:.6g} < 0 but mu^2 is putative (see-saw lower bound)",
        numbers,
    )

