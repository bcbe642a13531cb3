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

"""Test the preparability criteria and witnesses."""

from __future__ import annotations

import math

import numpy as np
import pytest

from trinet.criteria import (
    MuProvenance,
    RankAssignment,
    RankProfile,
    Verdict,
    VerdictStatus,
    build_witness,
    certify_separable,
    evaluate_witness,
    gme_qubit_check,
    obs1_check,
    obs2_pure_check,
    rank_feasibility,
    rank_profile_of,
    tmi,
    tmi_of_parts,
    witness_verdict,
)
from trinet.errors import DimensionError, InvalidStateError
from trinet.linalg import DensityState, PureState, conjugate, kron_all
from trinet.sampling import haar_unitary, random_density, random_itn_decomposition
from trinet.states import (
    TriangleDecomposition,
    bell_pair,
    classical_corr,
    embed,
    ghz,
    itn_pure_state,
    itn_state,
    noisy_ghz,
    product_state,
    ring_cluster_state,
    smolin,
    w_state,
)

GHZ2_BOUND = math.cos(math.pi / 8) ** 2


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_tmi_of_classical_correlation(k: int) -> None:
    """I_3 equals log2(k) for k-valued shared randomness."""
    assert tmi(classical_corr(k, 4)) == pytest.approx(math.log2(k), abs=1e-9)


def test_tmi_of_parts_keys() -> None:
    parts = tmi_of_parts(ghz(2))
    assert set(parts) == {"ABC", "A", "B", "C", "AB", "AC", "BC"}
    assert parts["A"] == pytest.approx(1.0)


def test_tmi_is_invariant_under_local_unitaries(rng: np.random.Generator) -> None:
    for dims in ((2, 2, 2), (2, 3, 2), (4, 4, 4)):
        rho = random_density(dims, rng, rank=3)
        local = kron_all([haar_unitary(d, rng).matrix for d in dims])
        assert tmi(conjugate(rho, local)) == pytest.approx(tmi(rho), abs=1e-9)


def test_obs1_holds_for_random_networks(rng: np.random.Generator) -> None:
    """Independent mixed sources with Haar node unitaries give I_3 = 0."""
    for _ in range(100):
        rho = itn_state(random_itn_decomposition(2, rng))
        assert abs(tmi(rho)) < 1e-8


@pytest.mark.parametrize("visibility", [0.01, 0.1, 0.5])
def test_obs1_rejects_noisy_ghz(visibility: float) -> None:
    verdict = obs1_check(noisy_ghz(visibility, 4))
    assert verdict.status is VerdictStatus.VIOLATED
    assert verdict.numbers["tmi"] < 0


@pytest.mark.parametrize("visibility", [0.0, 1.0])
def test_obs1_consistent_for_noisy_ghz_endpoints(visibility: float) -> None:
    # V = 0 is maximally mixed; V = 1 is pure, where I_3 vanishes identically
    assert obs1_check(noisy_ghz(visibility, 4)).status is VerdictStatus.CONSISTENT


def test_obs1_rejects_classical_correlation() -> None:
    verdict = obs1_check(classical_corr(2, 4))
    assert verdict.violated
    assert verdict.numbers["tmi"] == pytest.approx(1.0)


def test_tripartite_only() -> None:
    with pytest.raises(DimensionError):
        tmi(bell_pair(2))


def test_verdict_requires_numbers_when_violated() -> None:
    with pytest.raises(ValueError):
        Verdict(VerdictStatus.VIOLATED, "no numbers")


def test_rank_profile_validation() -> None:
    with pytest.raises(InvalidStateError):
        RankProfile(0, 1, 1, 1, 1, 1, 1, d=2)
    with pytest.raises(InvalidStateError):
        RankProfile(1, 1, 1, 1, 5, 1, 1, d=2)


def test_smolin_rank_profile_is_infeasible() -> None:
    """Exhaustive search over all 4096 assignments finds none."""
    profile = rank_profile_of(smolin())
    assert profile.as_tuple() == (16, 16, 16, 16, 4, 4, 4)
    assert str(profile) == "(16;16,16,16;4,4,4)"
    verdict = rank_feasibility(profile)
    assert verdict.status is VerdictStatus.VIOLATED
    assert verdict.numbers["checked"] == verdict.numbers["search_space"] == 4096
    assert verdict.assignment is None


def test_network_rank_profile_is_feasible(
    random_pure_decomposition: TriangleDecomposition,
) -> None:
    profile = rank_profile_of(itn_pure_state(random_pure_decomposition))
    verdict = rank_feasibility(profile)
    assert verdict.status is VerdictStatus.CONSISTENT
    assert verdict.assignment is not None
    assert verdict.assignment.satisfies(profile)
    assert verdict.assignment.within(2)


def test_rank_profiles_of_random_networks_are_feasible(rng: np.random.Generator) -> None:
    """Pure and low-rank mixed sources alike always admit a source-rank assignment."""
    for i in range(100):
        if i % 2:
            t = random_itn_decomposition(2, rng, pure=True)
        else:
            sources = [random_density((2, 2), rng, rank=int(r)) for r in rng.integers(1, 4, 3)]
            t = TriangleDecomposition(*sources, *(haar_unitary(4, rng) for _ in range(3)))
        profile = rank_profile_of(itn_state(t))
        verdict = rank_feasibility(profile)
        assert verdict.status is VerdictStatus.CONSISTENT, str(profile)
        assert verdict.assignment is not None
        assert verdict.assignment.satisfies(profile)


def test_ring_cluster_rank_profile() -> None:
    profile = rank_profile_of(ring_cluster_state())
    assert str(profile) == "(1;4,4,4;4,4,4)"
    verdict = rank_feasibility(profile)
    assert verdict.status is VerdictStatus.CONSISTENT
    assert verdict.assignment == RankAssignment(1, 1, 1, 2, 2, 2, 2, 2, 2)


def test_ghz4_rank_profile_is_not_detected() -> None:
    """Ranks alone cannot tell GHZ_4 from a network state."""
    profile = rank_profile_of(ghz(4))
    assert profile.as_tuple() == (1, 4, 4, 4, 4, 4, 4)
    assert profile.d == 2
    assert rank_feasibility(profile).status is VerdictStatus.CONSISTENT


def test_rank_assignment_equations() -> None:
    assignment = RankAssignment(1, 1, 1, 2, 2, 2, 2, 2, 2)
    profile = RankProfile(1, 4, 4, 4, 4, 4, 4, d=2)
    assert assignment.satisfies(profile)
    assert not assignment.satisfies(RankProfile(2, 4, 4, 4, 4, 4, 4, d=2))


def test_rank_profile_needs_square_node_dims() -> None:
    with pytest.raises(DimensionError):
        rank_profile_of(w_state())
    assert rank_profile_of(w_state(), d=2).rank_a == 2


def test_certify_separable() -> None:
    assert certify_separable(DensityState.maximally_mixed((2, 2))) is True
    assert certify_separable(bell_pair(2).projector()) is False
    assert certify_separable(bell_pair(3).projector()) is None


def test_obs2_rejects_ghz() -> None:
    """GHZ_4 has 2 bits across each cut but separable two-party marginals."""
    verdict = obs2_pure_check(ghz(4))
    assert verdict.status is VerdictStatus.VIOLATED
    assert verdict.numbers["E_A|BC"] == pytest.approx(2.0)
    assert verdict.numbers["separable_AB"] == 1.0
    assert verdict.numbers["separable_AC"] == 1.0


def test_obs2_other_states() -> None:
    assert obs2_pure_check(product_state(4)).status is VerdictStatus.CONSISTENT
    # W marginals are entangled, so no certificate exists
    assert obs2_pure_check(w_state()).status is VerdictStatus.INCONCLUSIVE
    assert obs2_pure_check(ring_cluster_state()).status is VerdictStatus.INCONCLUSIVE
    with pytest.raises(InvalidStateError):
        obs2_pure_check(ghz(2).projector())  # type: ignore[arg-type]


@pytest.mark.parametrize("state", [embed(ghz(2), (4, 4, 4)), embed(w_state(), (4, 4, 4))])
def test_gme_check_rejects_three_qubit_states(state: PureState) -> None:
    verdict = gme_qubit_check(state)
    assert verdict.status is VerdictStatus.VIOLATED
    assert verdict.numbers["rank_A"] == 2.0


def test_gme_check_accepts_network_states() -> None:
    assert gme_qubit_check(ring_cluster_state()).status is VerdictStatus.CONSISTENT
    assert gme_qubit_check(product_state(4)).status is VerdictStatus.CONSISTENT


def test_gme_check_never_fires_on_random_networks(rng: np.random.Generator) -> None:
    for _ in range(100):
        psi = itn_pure_state(random_itn_decomposition(2, rng, pure=True))
        assert gme_qubit_check(psi).status is not VerdictStatus.VIOLATED


def test_witness_with_certified_bound() -> None:
    """GHZ_2 projector against the analytical qubit-source bound."""
    w = build_witness(ghz(2), GHZ2_BOUND, MuProvenance.ANALYTICAL_UPPER_BOUND)
    verdict = witness_verdict(w, ghz(2).projector())
    assert verdict.status is VerdictStatus.VIOLATED
    assert verdict.numbers["value"] == pytest.approx(GHZ2_BOUND - 1.0, abs=1e-12)


def test_witness_with_putative_mu_is_inconclusive() -> None:
    w = build_witness(ghz(2), GHZ2_BOUND, "seesaw-lower-bound")
    verdict = witness_verdict(w, ghz(2).projector())
    assert verdict.status is VerdictStatus.INCONCLUSIVE
    assert "putative" in verdict.detail


def test_witness_embeds_smaller_target() -> None:
    w = build_witness(ghz(2), 0.5, MuProvenance.SEESAW_LOWER_BOUND)
    rho = embed(ghz(2), (4, 4, 4)).projector()
    assert evaluate_witness(w, rho) == pytest.approx(-0.5)


@pytest.mark.parametrize("p", [0.0, 0.3, 0.75, 1.0])
def test_witness_is_affine_on_mixtures(rng: np.random.Generator, p: float) -> None:
    w = build_witness(ghz(4), 0.6, MuProvenance.SEESAW_LOWER_BOUND)
    first = itn_state(random_itn_decomposition(2, rng))
    second = random_density((4, 4, 4), rng, rank=5)
    mixture = DensityState(p * first.matrix + (1 - p) * second.matrix, (4, 4, 4))
    expected = p * evaluate_witness(w, first) + (1 - p) * evaluate_witness(w, second)
    assert evaluate_witness(w, mixture) == pytest.approx(expected, abs=1e-12)


def test_trivial_witness_is_nonnegative(rng: np.random.Generator) -> None:
    w = build_witness(ghz(4), 1.0, MuProvenance.ANALYTICAL_UPPER_BOUND)
    for _ in range(5):
        rho = itn_state(random_itn_decomposition(2, rng))
        assert evaluate_witness(w, rho) >= -1e-12
    with pytest.raises(InvalidStateError):
        build_witness(ghz(4), 1.5, MuProvenance.ANALYTICAL_UPPER_BOUND)
    assert np.allclose(w.matrix(), np.eye(64) - ghz(4).projector().matrix)
