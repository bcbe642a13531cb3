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

"""Test the dense linear-algebra layer."""

from __future__ import annotations

import math

import numpy as np
import pytest

from trinet.errors import DimensionError, InvalidStateError
from trinet.linalg import (
    DensityState,
    PureState,
    UnitaryOp,
    conjugate,
    entropy_of_spectrum,
    inverse_permutation,
    kron_all,
    normalize_cut,
    numerical_rank,
    overlap,
    partial_trace,
    permute_subsystems,
    ppt_check,
    schmidt,
    tensor_product,
    von_neumann_entropy,
)
from trinet.sampling import haar_pure_state, haar_unitary, random_density


def test_density_state_rejects_non_hermitian() -> None:
    """A non-Hermitian matrix names the Hermiticity invariant."""
    with pytest.raises(InvalidStateError) as err:
        DensityState(np.array([[0.5, 0.1], [0.0, 0.5]]), (2,))
    assert "Hermitian" in err.value.invariant


def test_density_state_rejects_bad_trace_and_negative_spectrum() -> None:
    with pytest.raises(InvalidStateError, match="trace"):
        DensityState(np.eye(2), (2,))
    with pytest.raises(InvalidStateError, match="eigenvalue"):
        DensityState(np.diag([1.5, -0.5]), (2,))


def test_pure_state_rejects_unnormalized_vector() -> None:
    with pytest.raises(InvalidStateError, match="norm"):
        PureState(np.array([1.0, 1.0]), (2,))
    with pytest.raises(InvalidStateError):
        PureState.from_vector(np.zeros(4), (2, 2))


def test_dims_must_match_and_stay_below_guard() -> None:
    with pytest.raises(DimensionError):
        PureState(np.array([1.0, 0.0, 0.0]), (2, 2))
    vector = np.zeros(8192)
    vector[0] = 1.0
    with pytest.raises(DimensionError, match="4096"):
        PureState(vector, (8, 8, 8, 8, 2))


def test_unitary_op_checks_unitarity() -> None:
    with pytest.raises(InvalidStateError):
        UnitaryOp(np.array([[1.0, 1.0], [0.0, 1.0]]))
    u = UnitaryOp.identity(3)
    assert u.dim == 3


def test_partial_trace_of_bell_pair_is_maximally_mixed(bell: PureState) -> None:
    reduced = partial_trace(bell, [0])
    assert reduced.dims == (2,)
    assert np.allclose(reduced.matrix, np.eye(2) / 2)


def test_partial_trace_pure_matches_density(rng: np.random.Generator) -> None:
    """The amplitude shortcut agrees with tracing the projector."""
    psi = haar_pure_state((2, 3, 2), rng)
    for keep in ([0], [1], [2], [0, 2], [1, 2]):
        direct = partial_trace(psi, keep).matrix
        via_projector = partial_trace(psi.projector(), keep).matrix
        assert np.allclose(direct, via_projector, atol=1e-12)


def test_partial_trace_of_product_returns_factor(rng: np.random.Generator) -> None:
    rho = random_density((2,), rng)
    sigma = random_density((3,), rng)
    joint = tensor_product(rho, sigma)
    assert np.allclose(partial_trace(joint, [0]).matrix, rho.matrix)
    assert np.allclose(partial_trace(joint, [1]).matrix, sigma.matrix)


def test_partial_trace_rejects_bad_keep(bell: PureState) -> None:
    with pytest.raises(DimensionError):
        partial_trace(bell, [])
    with pytest.raises(DimensionError):
        partial_trace(bell, [2])


def test_tensor_product_rejects_mixed_kinds(bell: PureState) -> None:
    with pytest.raises(TypeError):
        tensor_product(bell, bell.projector())  # type: ignore[type-var]


def test_permute_subsystems_swaps_legs() -> None:
    ket = PureState.basis((0, 1), (2, 2))
    swapped = permute_subsystems(ket, (1, 0))
    assert np.allclose(swapped.amplitudes, PureState.basis((1, 0), (2, 2)).amplitudes)


def test_permute_subsystems_inverse_restores(rng: np.random.Generator) -> None:
    rho = random_density((2, 3, 2), rng)
    perm = (2, 0, 1)
    moved = permute_subsystems(rho, perm)
    assert moved.dims == (2, 2, 3)
    back = permute_subsystems(moved, inverse_permutation(perm))
    assert np.allclose(back.matrix, rho.matrix)
    with pytest.raises(DimensionError):
        permute_subsystems(rho, (0, 0, 1))


def test_entropies() -> None:
    assert von_neumann_entropy(DensityState.maximally_mixed((4,))) == pytest.approx(2.0)
    assert von_neumann_entropy(PureState.basis((0,), (3,)).projector()) == pytest.approx(0.0)
    assert entropy_of_spectrum(np.array([0.5, 0.5, -1e-12])) == pytest.approx(1.0)
    with pytest.raises(InvalidStateError):
        entropy_of_spectrum(np.array([1.001, -1e-3]))


def test_entropy_is_additive_on_products(rng: np.random.Generator) -> None:
    for dims_a, dims_b in (((2,), (3,)), ((2, 2), (2,)), ((4,), (2, 3))):
        rho = random_density(dims_a, rng)
        sigma = random_density(dims_b, rng, rank=2)
        joint = von_neumann_entropy(tensor_product(rho, sigma))
        assert joint == pytest.approx(
            von_neumann_entropy(rho) + von_neumann_entropy(sigma), abs=1e-9
        )


def test_numerical_rank() -> None:
    rho = DensityState(np.diag([0.5, 0.5, 0.0, 0.0]), (2, 2))
    assert numerical_rank(rho) == 2
    assert numerical_rank(np.diag([1.0, 1e-12])) == 1


def test_normalize_cut_forms() -> None:
    assert normalize_cut([0], 3) == ((0,), (1, 2))
    assert normalize_cut(([2], [0, 1]), 3) == ((2,), (0, 1))
    with pytest.raises(DimensionError):
        normalize_cut(([0, 1], [1, 2]), 3)
    with pytest.raises(DimensionError):
        normalize_cut([0, 1, 2], 3)


def test_schmidt_of_bell_pair(bell: PureState) -> None:
    data = schmidt(bell, [0])
    assert data.rank == 2
    assert np.allclose(data.coefficients, [1 / math.sqrt(2)] * 2)
    assert np.allclose(data.reconstruct(), bell.amplitudes)


def test_schmidt_reconstructs_random_state(rng: np.random.Generator) -> None:
    psi = haar_pure_state((2, 3, 4), rng)
    data = schmidt(psi, [0])
    assert np.all(np.diff(data.coefficients) <= 1e-15)
    assert float(np.sum(data.coefficients**2)) == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(data.reconstruct(), psi.amplitudes)
    assert data.rank == numerical_rank(partial_trace(psi, [0]))


@pytest.mark.parametrize("eps", [5e-5, 1e-6, 1e-3])
def test_schmidt_keeps_coefficients_below_rank_threshold(eps: float) -> None:
    psi = PureState(np.array([math.sqrt(1 - eps**2), 0.0, 0.0, eps]), (2, 2))
    data = schmidt(psi, [0])
    assert data.coefficients.shape == (2,)
    assert data.coefficients[1] == pytest.approx(eps, rel=1e-9)
    assert float(np.sum(data.coefficients**2)) == pytest.approx(1.0, abs=1e-10)
    assert float(np.max(np.abs(data.reconstruct() - psi.amplitudes))) < 1e-10
    # eps**2 against the 1e-8 relative threshold
    assert data.rank == (2 if eps**2 > 1e-8 else 1)
    assert data.rank == numerical_rank(partial_trace(psi, [0]))


def test_schmidt_drops_exact_zeros() -> None:
    product = PureState(np.kron([0.6, 0.8], [1.0, 0.0]), (2, 2))
    data = schmidt(product, [0])
    assert data.rank == 1
    assert data.coefficients.shape == (1,)
    assert np.allclose(data.reconstruct(), product.amplitudes)


def test_overlap_requires_equal_dimension(bell: PureState) -> None:
    assert overlap(bell, bell) == pytest.approx(1.0)
    with pytest.raises(DimensionError):
        overlap(bell, PureState.basis((0,), (2,)))


def test_ppt_check(bell: PureState) -> None:
    """Bell projector fails PPT; mixed and product states pass."""
    assert ppt_check(bell.projector(), [0]) is False
    assert ppt_check(DensityState.maximally_mixed((2, 2)), [0]) is True
    product = PureState.basis((0, 1), (2, 3)).projector()
    assert ppt_check(product, ([0], [1])) is True


def test_conjugate_preserves_spectrum(rng: np.random.Generator) -> None:
    rho = random_density((2, 2), rng)
    u = haar_unitary(4, rng)
    rotated = conjugate(rho, u.matrix)
    assert np.allclose(rotated.eigenvalues(), rho.eigenvalues())
    assert rotated.dims == (2, 2)


def test_kron_all_matches_nested_kron() -> None:
    a, b, c = np.eye(2), np.array([[0, 1], [1, 0]]), np.diag([1, -1])
    assert np.array_equal(kron_all([a, b, c]), np.kron(np.kron(a, b), c))


def test_as_pure_recovers_vector_up_to_phase(rng: np.random.Generator) -> None:
    psi = haar_pure_state((2, 3, 2), rng)
    recovered = psi.projector().as_pure()
    assert recovered is not None
    assert recovered.dims == (2, 3, 2)
    assert abs(overlap(psi, recovered)) == pytest.approx(1.0, abs=1e-10)
    assert random_density((2, 2), rng, rank=2).as_pure() is None
    assert DensityState.maximally_mixed((2,)).as_pure() is None
