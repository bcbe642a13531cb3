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

"""Test JSON state, decomposition and tensor files."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from trinet.codec import (
    decomposition_from_dict,
    decomposition_to_dict,
    dump_state,
    load_state,
    pairs_to_complex,
    state_from_dict,
    tensor_from_dict,
    tensor_to_dict,
    terms_from_dict,
    terms_to_dict,
)
from trinet.errors import StateFormatError
from trinet.linalg import DensityState, PureState
from trinet.states import ghz4_bell_construction, itn_pure_state, noisy_ghz, w_state
from trinet.tensorrank import matmul_tensor, strassen_terms, verify_decomposition


def test_pure_and_mixed_files(tmp_path: Path) -> None:
    pure_path, mixed_path = tmp_path / "w.json", tmp_path / "noisy.json"
    dump_state(w_state(), pure_path)
    dump_state(noisy_ghz(0.3, 2), mixed_path)

    pure = load_state(pure_path)
    assert isinstance(pure, PureState)
    assert pure.dims == (2, 2, 2)
    assert np.allclose(pure.amplitudes, w_state().amplitudes)

    mixed = load_state(mixed_path)
    assert isinstance(mixed, DensityState)
    assert np.allclose(mixed.matrix, noisy_ghz(0.3, 2).matrix)


def test_reader_accepts_nested_rows_and_reals() -> None:
    state = state_from_dict(
        {"dims": [2], "kind": "mixed", "data": [[[0.5, 0], 0], [0, [0.5, 0.0]]]}
    )
    assert isinstance(state, DensityState)
    assert np.allclose(state.matrix, np.eye(2) / 2)


@pytest.mark.parametrize(
    ("dims", "rows"),
    [
        ([2], [[0.5, 0], [0, 0.5]]),
        ([3], [[0.5, 0, 0], [0, 0.25, 0], [0, 0, 0.25]]),
        ([1], [[1.0]]),
    ],
)
def test_reader_accepts_rows_of_bare_reals(dims: list[int], rows: list[list[float]]) -> None:
    state = state_from_dict({"dims": dims, "kind": "mixed", "data": rows})
    assert isinstance(state, DensityState)
    assert np.allclose(state.matrix, np.array(rows, dtype=float))


def test_row_length_keeps_pairs_and_vectors_apart() -> None:
    flat = [[0.5, 0.0], [0.0, 0.0], [0.0, 0.0], [0.5, 0.0]]
    assert np.allclose(pairs_to_complex(flat, 2), [0.5, 0, 0, 0.5])
    assert np.allclose(pairs_to_complex([[0, 1], [1, 0]], 2), [0, 1, 1, 0])
    assert np.allclose(pairs_to_complex([[0, 1], [1, 0]]), [1j, 1])
    pure = state_from_dict({"dims": [2], "kind": "pure", "data": [[0.6, 0], [0.8, 0]]})
    assert isinstance(pure, PureState)
    assert np.allclose(pure.amplitudes, [0.6, 0.8])


def test_schema_errors_name_the_path() -> None:
    with pytest.raises(StateFormatError, match="kind"):
        state_from_dict({"dims": [2], "data": [1, 0]})
    with pytest.raises(StateFormatError, match="malformed state"):
        state_from_dict({"dims": [0], "kind": "pure", "data": []})
    with pytest.raises(StateFormatError):
        state_from_dict({"dims": [2], "kind": "pure", "data": ["x", 0]})


def test_invariant_errors_are_reported() -> None:
    with pytest.raises(StateFormatError, match="invariant violated"):
        state_from_dict({"dims": [2], "kind": "pure", "data": [1, 1]})
    with pytest.raises(StateFormatError, match="invariant violated"):
        state_from_dict({"dims": [2, 2], "kind": "pure", "data": [1, 0]})
    with pytest.raises(StateFormatError, match="invariant violated"):
        state_from_dict({"dims": [2], "kind": "mixed", "data": [1, 0, 0, 1]})


def test_invalid_json_file(tmp_path: Path) -> None:
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(StateFormatError, match="not valid JSON"):
        load_state(path)


def test_decomposition_dict_reproduces_state() -> None:
    t = ghz4_bell_construction()
    payload = json.loads(json.dumps(decomposition_to_dict(t)))
    assert payload["d"] == 2
    restored = decomposition_from_dict(payload)
    assert np.allclose(itn_pure_state(restored).amplitudes, itn_pure_state(t).amplitudes)


def test_decomposition_rejects_missing_unitary() -> None:
    payload = decomposition_to_dict(ghz4_bell_construction())
    del payload["unitaries"]["B"]
    with pytest.raises(StateFormatError, match="unitaries"):
        decomposition_from_dict(payload)


def test_tensor_and_terms_files() -> None:
    tensor = tensor_from_dict(json.loads(json.dumps(tensor_to_dict(matmul_tensor()))))
    terms = terms_from_dict(json.loads(json.dumps(terms_to_dict(strassen_terms()))))
    assert len(terms) == 7
    assert verify_decomposition(tensor, terms)


def test_terms_accept_plain_triples() -> None:
    terms = terms_from_dict({"terms": [[[1, 0], [0, 1], [1, 1]]]})
    assert terms[0].dims == (2, 2, 2)
    with pytest.raises(StateFormatError, match="term 0"):
        terms_from_dict({"terms": [[[1, 0], [0, 1]]]})
    with pytest.raises(StateFormatError, match="lacks vector"):
        terms_from_dict({"terms": [{"u": [1], "v": [1]}]})
