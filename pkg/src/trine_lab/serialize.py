"""JSON encoding: complex numbers as ``[re, im]``, matrices as row-major nested lists."""

from __future__ import annotations

import dataclasses
import json
import math

import numpy as np

from .discrimination import Povm


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(pair) -> complex:
    re, im = pair
    return complex(float(re), float(im))


def encode_matrix(m) -> list:
    m = np.asarray(m, dtype=complex)
    if m.ndim == 1:
        return [encode_complex(z) for z in m]
    return [encode_matrix(row) for row in m]


def decode_matrix(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def povm_to_dict(povm: Povm) -> dict:
    return {
        "elements": [encode_matrix(e) for e in povm.elements],
        "closure": encode_matrix(povm.closure),
    }


def povm_from_dict(data: dict) -> Povm:
    return Povm(tuple(decode_matrix(e) for e in data["elements"]), decode_matrix(data["closure"]))


def to_jsonable(obj):
    """Recursively convert reports, arrays and numpy scalars to JSON types.

    Non-finite floats become the strings ``"inf"``, ``"-inf"`` and ``"nan"``.
    """
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, Povm):
        return povm_to_dict(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return encode_matrix(obj)
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if isinstance(obj, (complex, np.complexfloating)):
        return encode_complex(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True)


_NONFINITE = {"inf": math.inf, "-inf": -math.inf, "nan": math.nan}
# report fields that hold matrices rather than scalars
_MATRIX_FIELDS = {"product_factors"}


def report_from_dict(cls, data: dict):
    """Rebuild a frozen report dataclass from :func:`to_jsonable` output."""
    kwargs = {}
    for f in dataclasses.fields(cls):
        value = data[f.name]
        if f.name in _MATRIX_FIELDS and value is not None:
            value = tuple(decode_matrix(m) for m in value)
        elif isinstance(value, str) and value in _NONFINITE:
            value = _NONFINITE[value]
        kwargs[f.name] = value
    return cls(**kwargs)
