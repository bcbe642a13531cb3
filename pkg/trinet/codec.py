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

"""JSON files for states, network decompositions, tensors and product terms.

Complex numbers are written as [re, im] pairs; matrices as flat row-major
lists of pairs. Readers also accept bare real numbers and nested row lists,
whose rows may hold pairs or bare reals.
"""

from __future__ import annotations

import json
import logging
import math
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np
import voluptuous as vol

from .const import NODES, SLOTS
from .errors import DimensionError, InvalidStateError, StateFormatError
from .linalg import DensityState, PureState, UnitaryOp
from .states import TriangleDecomposition
from .tensorrank import ProductTerm, Tensor3

_LOGGER = logging.getLogger(__name__)

KIND_PURE = "pure"
KIND_MIXED = "mixed"

_DIMS = vol.All([vol.All(int, vol.Range(min=1))], vol.Length(min=1))

STATE_SCHEMA = vol.Schema(
    {
        vol.Required("dims"): _DIMS,
        vol.Required("kind"): vol.In([KIND_PURE, KIND_MIXED]),
        vol.Required("data"): list,
    },
    extra=vol.ALLOW_EXTRA,
)
UNITARY_SCHEMA = vol.Schema(
    {vol.Required("dim"): vol.All(int, vol.Range(min=1)), vol.Required("data"): list}
)
DECOMPOSITION_SCHEMA = vol.Schema(
    {
        vol.Required("sources"): {vol.Required(slot): dict for slot in SLOTS},
        vol.Required("unitaries"): {vol.Required(node): dict for node in NODES},
    },
    extra=vol.ALLOW_EXTRA,
)
TENSOR_SCHEMA = vol.Schema(
    {vol.Required("dims"): vol.All(_DIMS, vol.Length(min=3, max=3)), vol.Required("data"): list},
    extra=vol.ALLOW_EXTRA,
)
TERMS_SCHEMA = vol.Schema({vol.Required("terms"): list}, extra=vol.ALLOW_EXTRA)


def _validate(schema: vol.Schema, data: Any, what: str) -> dict[str, Any]:
    try:
        return schema(data)
    except vol.Invalid as exc:
        path = "/".join(str(p) for p in exc.path) or "<root>"
        raise StateFormatError(f"malformed {what} at {path}: {exc.msg}") from exc


def complex_to_pairs(values: np.ndarray) -> list[list[float]]:
    flat = np.asarray(values, dtype=complex).reshape(-1)
    return [[float(z.real), float(z.imag)] for z in flat]


def _as_complex(item: Any) -> complex:
    if isinstance(item, bool):
        raise StateFormatError(f"expected a number or [re, im] pair, got {item!r}")
    if isinstance(item, int | float):
        return complex(item)
    if isinstance(item, Sequence) and len(item) == 2:
        re, im = item
        if all(isinstance(x, int | float) and not isinstance(x, bool) for x in (re, im)):
            return complex(re, im)
    raise StateFormatError(f"expected a number or [re, im] pair, got {item!r}")


def _is_rows(data: Sequence[Any], row_length: int | None) -> bool:
    # A flat pair list of a row_length x row_length matrix has row_length**2 items
    return (
        row_length is not None
        and len(data) == row_length
        and all(isinstance(item, list) and len(item) == row_length for item in data)
    )


def pairs_to_complex(data: Sequence[Any], row_length: int | None = None) -> np.ndarray:
    """Flatten matrix or vector data into a complex vector.

    Items are numbers or [re, im] pairs. Rows of pairs are recognised by their
    nesting; rows of bare reals need ``row_length`` (the matrix side), since a
    row of two reals looks like a pair otherwise.
    """
    if _is_rows(data, row_length):
        return np.asarray([_as_complex(x) for row in data for x in row], dtype=complex)
    out: list[complex] = []
    for item in data:
        if isinstance(item, list) and any(isinstance(x, list) for x in item):
            out.extend(_as_complex(x) for x in item)
        else:
            out.append(_as_complex(item))
    return np.asarray(out, dtype=complex)


def state_to_dict(s: PureState | DensityState) -> dict[str, Any]:
    if isinstance(s, PureState):
        return {"dims": list(s.dims), "kind": KIND_PURE, "data": complex_to_pairs(s.amplitudes)}
    return {"dims": list(s.dims), "kind": KIND_MIXED, "data": complex_to_pairs(s.matrix)}


def state_from_dict(data: Any) -> PureState | DensityState:
    """Parse and validate; every failure is a StateFormatError naming what broke."""
    payload = _validate(STATE_SCHEMA, data, "state")
    dims = tuple(payload["dims"])
    total = math.prod(dims)
    row_length = total if payload["kind"] == KIND_MIXED else None
    values = pairs_to_complex(payload["data"], row_length)
    try:
        if payload["kind"] == KIND_PURE:
            if values.shape[0] != total:
                raise StateFormatError(
                    f"invariant violated: pure data length {values.shape[0]} != prod(dims) {total}"
                )
            return PureState(values, dims)
        if values.shape[0] != total * total:
            raise StateFormatError(
                f"invariant violated: mixed data length {values.shape[0]} != prod(dims)^2 "
                f"{total * total}"
            )
        return DensityState(values.reshape(total, total), dims)
    except (InvalidStateError, DimensionError) as exc:
        message = str(exc)
        if not message.startswith("invariant violated"):
            message = f"invariant violated: {message}"
        raise StateFormatError(message) from exc


def read_json(path: str | Path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc


def write_json(path: str | Path, payload: Any) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    if _LOGGER.isEnabledFor(logging.DEBUG):
        _LOGGER.debug("wrote path=%s", path)


def load_state(path: str | Path) -> PureState | DensityState:
    try:
        return state_from_dict(read_json(path))
    except StateFormatError as exc:
        raise StateFormatError(f"{path}: {exc}") from exc


def dump_state(s: PureState | DensityState, path: str | Path) -> None:
    write_json(path, state_to_dict(s))


def _unitary_to_dict(u: UnitaryOp) -> dict[str, Any]:
    return {"dim": u.dim, "data": complex_to_pairs(u.matrix)}


def _unitary_from_dict(data: Any, node: str) -> UnitaryOp:
    payload = _validate(UNITARY_SCHEMA, data, f"unitary {node}")
    dim = payload["dim"]
    values = pairs_to_complex(payload["data"], dim)
    if values.shape[0] != dim * dim:
        raise StateFormatError(f"invariant violated: unitary {node} data length != dim^2")
    try:
        return UnitaryOp(values.reshape(dim, dim))
    except InvalidStateError as exc:
        raise StateFormatError(f"unitary {node}: {exc}") from exc


def decomposition_to_dict(t: TriangleDecomposition) -> dict[str, Any]:
    return {
        "d": t.d,
        "sources": {slot: state_to_dict(s) for slot, s in zip(SLOTS, t.sources, strict=True)},
        "unitaries": {
            node: _unitary_to_dict(u) for node, u in zip(NODES, t.unitaries, strict=True)
        },
    }


def decomposition_from_dict(data: Any) -> TriangleDecomposition:
    payload = _validate(DECOMPOSITION_SCHEMA, data, "decomposition")
    sources = [state_from_dict(payload["sources"][slot]) for slot in SLOTS]
    unitaries = [_unitary_from_dict(payload["unitaries"][node], node) for node in NODES]
    try:
        return TriangleDecomposition(*sources, *unitaries)
    except DimensionError as exc:
        raise StateFormatError(f"invariant violated: {exc}") from exc


def tensor_to_dict(t: Tensor3) -> dict[str, Any]:
    return {"dims": list(t.dims), "data": complex_to_pairs(t.data)}


def tensor_from_dict(data: Any) -> Tensor3:
    payload = _validate(TENSOR_SCHEMA, data, "tensor")
    dims = tuple(payload["dims"])
    values = pairs_to_complex(payload["data"])
    if values.shape[0] != math.prod(dims):
        raise StateFormatError(f"invariant violated: tensor data length != prod(dims) {dims}")
    return Tensor3(values.reshape(dims))


def terms_to_dict(terms: Sequence[ProductTerm]) -> dict[str, Any]:
    return {
        "terms": [
            {
                "u": complex_to_pairs(term.u),
                "v": complex_to_pairs(term.v),
                "w": complex_to_pairs(term.w),
                "coefficient": [term.coefficient.real, term.coefficient.imag],
            }
            for term in terms
        ]
    }


def _term_from_any(item: Any, index: int) -> ProductTerm:
    if isinstance(item, dict):
        try:
            vectors = [item["u"], item["v"], item["w"]]
        except KeyError as exc:
            raise StateFormatError(f"term {index} lacks vector {exc.args[0]!r}") from exc
        coefficient = _as_complex(item.get("coefficient", 1.0))
    elif isinstance(item, list) and len(item) == 3:
        vectors, coefficient = item, 1.0
    else:
        raise StateFormatError(f"term {index} must be a triple of vectors or a u/v/w object")
    try:
        return ProductTerm(*(pairs_to_complex(v) for v in vectors), coefficient=coefficient)
    except InvalidStateError as exc:
        raise StateFormatError(f"term {index}: {exc}") from exc


def terms_from_dict(data: Any) -> list[ProductTerm]:
    payload = _validate(TERMS_SCHEMA, data, "term list")
    return [_term_from_any(item, i) for i, item in enumerate(payload["terms"])]
