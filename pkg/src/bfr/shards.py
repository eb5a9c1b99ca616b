"""Bit-exact container for encoded instances.

Layout: magic ``BFR1``, a version byte, a construction tag byte, a
big-endian u32 metadata length, canonical JSON metadata (sorted keys,
compact separators), then the node payloads in block-major order.  The
metadata carries the system parameters, the field description, the
construction-specific arguments needed to rebuild the instance, and the
layout table mapping every stored symbol to (partition, symbol index).

Symbols are fixed-width: integers for flat fields, concatenated base
coefficients for tower fields.  Identical instances serialize to
identical bytes, so round-trip tests can compare files directly.
"""

from __future__ import annotations

import json
from pathlib import Path

from .constructions import (
    DcbdCode,
    DesignPlacedCode,
    GabMdsCode,
    RelaxedCode,
    TransposeCode,
)
from .errors import CorruptionError, ParameterError
from .fields import field_from_spec
from .regenerating import RegenParams

MAGIC = b"BFR1"
VERSION = 1

CONSTRUCTION_TAGS = {
    "transpose": 1,
    "design": 2,
    "dcbd": 3,
    "gabmds": 4,
    "relaxed": 5,
    "lrc-parity": 6,
    "lrc-mds": 7,
    "lrc-regen": 8,
}

_LOADERS = {}


def register_loader(name: str, loader):
    """Hook for other modules to add loadable constructions."""
    if name not in CONSTRUCTION_TAGS:
        raise ParameterError(f"unknown construction name {name!r}")
    _LOADERS[name] = loader


# ---------------------------------------------------------------------------
# symbol packing


def symbol_codec(field):
    """(width in bytes, pack, unpack) for one field element."""
    base = getattr(field, "base", None)
    if base is not None and not isinstance(field.zero, int):
        base_width, base_pack, base_unpack = symbol_codec(base)
        m = field.m
        width = base_width * m

        def pack(e):
            return b"".join(base_pack(c) for c in e)

        def unpack(raw):
            return tuple(
                base_unpack(raw[i * base_width : (i + 1) * base_width])
                for i in range(m)
            )

        return width, pack, unpack

    top = (field.q ** field.m) - 1
    width = max(1, (top.bit_length() + 7) // 8)

    def pack(e):
        return int(e).to_bytes(width, "big")

    def unpack(raw):
        value = int.from_bytes(raw, "big")
        if value > top:
            raise CorruptionError(f"symbol value {value} outside the field")
        return value

    return width, pack, unpack


def _points_to_json(points):
    return [list(pt) if isinstance(pt, tuple) else pt for pt in points]


def _points_from_json(points):
    return [tuple(pt) if isinstance(pt, list) else pt for pt in points]


def _sub_from_json(sub: dict) -> RegenParams:
    return RegenParams(
        n=sub["n"], k=sub["k"], d=sub["d"], beta=sub["beta"], mode=sub["mode"]
    )


# ---------------------------------------------------------------------------
# save


def shard_bytes(code) -> bytes:
    if code.shards is None:
        raise ParameterError("instance holds no data; encode before saving")
    name = code.construction
    if name not in CONSTRUCTION_TAGS:
        raise ParameterError(f"unknown construction name {name!r}")
    layout = code.layout()
    if hasattr(code, "params"):
        params = {
            "n": code.params.n,
            "b": code.params.b,
            "M": code.params.M,
            "k": code.params.k,
            "rho": code.params.rho,
            "d": code.params.d,
            "sigma": code.params.sigma,
            "alpha": code.params.alpha,
            "beta": code.params.beta,
        }
    else:
        params = None
    keys = sorted(code.shards)
    meta = {
        "construction": name,
        "params": params,
        "field": code.field.describe(),
        "extra": _jsonable(code.describe()),
        "layout": [
            [list(entry) for entry in layout.placement[key]] for key in keys
        ],
        "nodes": [list(key) for key in keys],
    }
    blob = json.dumps(meta, sort_keys=True, separators=(",", ":")).encode()
    width, pack, _ = symbol_codec(code.field)
    out = bytearray()
    out += MAGIC
    out.append(VERSION)
    out.append(CONSTRUCTION_TAGS[name])
    out += len(blob).to_bytes(4, "big")
    out += blob
    for key in keys:
        for symbol in code.shards[key]:
            out += pack(symbol)
    return bytes(out)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def save_shards(code, path) -> Path:
    path = Path(path)
    if path.is_dir():
        path = path / "instance.bfr"
    path.write_bytes(shard_bytes(code))
    return path


# ---------------------------------------------------------------------------
# load


def _load_transpose(meta, field):
    extra = meta["extra"]
    return TransposeCode(extra["n"], extra["k"], field=field)


def _load_design(meta, field):
    extra = meta["extra"]
    return DesignPlacedCode(
        [tuple(blk) for blk in extra["blocks"]],
        extra["v"],
        _sub_from_json(extra["sub"]),
        field=field,
        points=_points_from_json(extra["points"]),
        design_name=extra["design"],
    )


def _load_dcbd(meta, field):
    extra = meta["extra"]
    return DcbdCode(
        extra["b"],
        extra["sigma"],
        _sub_from_json(extra["sub"]),
        field=field,
        points=_points_from_json(extra["points"]),
    )


def _load_gabmds(meta, field):
    extra = meta["extra"]
    return GabMdsCode(
        extra["b"], extra["c"], extra["k_c"], extra["rho"], field=field
    )


def _load_relaxed(meta, field):
    extra = meta["extra"]
    return RelaxedCode(
        extra["p"],
        _sub_from_json(extra["sub"]),
        sigma=extra["sigma"],
        rho=extra["rho"],
        field=field,
        points=_points_from_json(extra["points"]),
    )


_LOADERS.update(
    {
        "transpose": _load_transpose,
        "design": _load_design,
        "dcbd": _load_dcbd,
        "gabmds": _load_gabmds,
        "relaxed": _load_relaxed,
    }
)


def code_from_bytes(data: bytes):
    if len(data) < 10 or data[:4] != MAGIC:
        raise CorruptionError("not a shard container (bad magic)")
    if data[4] != VERSION:
        raise CorruptionError(f"unsupported container version {data[4]}")
    tag = data[5]
    names = {v: k for k, v in CONSTRUCTION_TAGS.items()}
    if tag not in names:
        raise CorruptionError(f"unknown construction tag {tag}")
    meta_len = int.from_bytes(data[6:10], "big")
    blob = data[10 : 10 + meta_len]
    try:
        meta = json.loads(blob.decode())
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptionError(f"metadata is not valid JSON: {exc}")
    name = meta.get("construction")
    if name != names[tag]:
        raise CorruptionError(
            f"metadata construction {name!r} does not match tag {tag}"
        )
    if name not in _LOADERS:
        raise CorruptionError(f"no loader registered for {name!r}")
    field = field_from_spec(meta["field"])
    code = _LOADERS[name](meta, field)
    width, _, unpack = symbol_codec(field)
    keys = [tuple(key) for key in meta["nodes"]]
    alpha = len(meta["layout"][0]) if meta["layout"] else 0
    expected = 10 + meta_len + len(keys) * alpha * width
    if len(data) != expected:
        raise CorruptionError(
            f"container holds {len(data)} bytes, layout implies {expected}"
        )
    pos = 10 + meta_len
    shards = {}
    for key in keys:
        vec = []
        for _ in range(alpha):
            vec.append(unpack(data[pos : pos + width]))
            pos += width
        shards[key] = tuple(vec)
    code.shards = shards
    return code


def load_shards(path):
    path = Path(path)
    if path.is_dir():
        path = path / "instance.bfr"
    return code_from_bytes(path.read_bytes())
