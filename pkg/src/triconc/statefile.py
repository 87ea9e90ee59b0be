"""JSON state files.

One state per UTF-8 file::

    {"dims": [m, n, p], "kind": "pure",  "data": [[re, im], ...]}
    {"dims": [m, n, p], "kind": "mixed", "data": [[[re, im], ...], ...]}

Complex numbers are ``[re, im]`` pairs. Python's float repr is the shortest
string that round-trips, so writing and re-reading is exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .tensor_core import PureState, SystemDims, TripartiteState


class StateFileError(ValueError):
    pass


def _pairs(arr: np.ndarray):
    if arr.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in arr]
    return [_pairs(row) for row in arr]


def state_to_dict(state: PureState | TripartiteState) -> dict:
    if isinstance(state, PureState):
        return {"dims": list(state.dims), "kind": "pure", "data": _pairs(state.amplitudes)}
    return {"dims": list(state.dims), "kind": "mixed", "data": _pairs(state.rho)}


def state_from_dict(obj: dict) -> PureState | TripartiteState:
    try:
        dims = SystemDims.coerce(obj["dims"])
        kind = obj["kind"]
        raw = np.asarray(obj["data"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise StateFileError(f"malformed state file: {exc}") from exc
    if raw.shape[-1:] != (2,):
        raise StateFileError("complex entries must be [re, im] pairs")
    data = raw[..., 0] + 1j * raw[..., 1]
    d = dims.total
    try:
        if kind == "pure":
            if data.shape != (d,):
                raise StateFileError(f"pure state needs {d} amplitudes, got shape {data.shape}")
            return PureState(dims, data)
        if kind == "mixed":
            if data.shape != (d, d):
                raise StateFileError(f"mixed state needs a {d}x{d} matrix, got shape {data.shape}")
            return TripartiteState(dims, data)
    except StateFileError:
        raise
    except ValueError as exc:
        raise StateFileError(str(exc)) from exc
    raise StateFileError(f"kind must be 'pure' or 'mixed', got {kind!r}")


def dumps(state: PureState | TripartiteState) -> str:
    return json.dumps(state_to_dict(state))


def loads(text: str) -> PureState | TripartiteState:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise StateFileError("state file must hold a JSON object")
    return state_from_dict(obj)


def write_state(state: PureState | TripartiteState, path: str | Path) -> None:
    Path(path).write_text(dumps(state) + "\n", encoding="utf-8")


def read_state(path: str | Path) -> PureState | TripartiteState:
    return loads(Path(path).read_text(encoding="utf-8"))
