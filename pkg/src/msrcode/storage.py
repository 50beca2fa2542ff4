"""Sharding whole files: encode to ``n`` shard files, decode, and repair one shard."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .codec import codec_for
from .construct import ParityCheck
from .errors import InsufficientDataError, ParameterError, ShardFormatError
from .repair import BandwidthReport, repair
from .shard import ShardHeader, ShardReader, shard_path, symbol_dtype, write_shard
from .specfile import CodeSpec


def bytes_to_stripes(data: bytes, spec: CodeSpec) -> np.ndarray:
    """Zero-pad to whole stripes and view as ``(stripes, k alpha)`` symbols."""
    p = spec.params
    stripe_bytes = p.k * p.alpha * (spec.field_width // 8)
    stripes = -(-len(data) // stripe_bytes)
    padded = data + bytes(stripes * stripe_bytes - len(data))
    symbols = np.frombuffer(padded, dtype=symbol_dtype(spec.field_width))
    return symbols.reshape(stripes, p.k * p.alpha)


def stripes_to_bytes(messages: np.ndarray, spec: CodeSpec, length: int) -> bytes:
    raw = np.ascontiguousarray(messages, dtype=symbol_dtype(spec.field_width)).tobytes()
    if length > len(raw):
        raise ShardFormatError(f"header length {length} exceeds decoded size {len(raw)}")
    return raw[:length]


def encode_file(spec: CodeSpec, data: bytes, out_dir: str | Path, pc: ParityCheck | None = None) -> list[Path]:
    pc = pc or spec.build()
    p = spec.params
    messages = bytes_to_stripes(data, spec)
    codewords = codec_for(pc).encode_stripes(messages)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for j in range(1, p.n + 1):
        header = ShardHeader(j, p.n, p.k, p.d, spec.field_width, len(messages), len(data))
        path = shard_path(out_dir, j)
        write_shard(path, header, codewords[:, j - 1])
        paths.append(path)
    return paths


def _check_header(reader: ShardReader, spec: CodeSpec) -> None:
    h = reader.header
    if (h.n, h.k, h.d, h.field_width) != (spec.n, spec.k, spec.d, spec.field_width):
        raise ShardFormatError(
            f"{reader.path.name}: shard is for (n,k,d,width)={(h.n, h.k, h.d, h.field_width)}, "
            f"spec is {(spec.n, spec.k, spec.d, spec.field_width)}"
        )


def open_shards(spec: CodeSpec, shard_dir: str | Path, nodes=None) -> dict[int, ShardReader]:
    """Open and cross-check shard headers before any payload is touched."""
    p = spec.params
    shard_dir = Path(shard_dir)
    if nodes is None:
        paths = sorted(shard_dir.glob("*.shard"))
    else:
        paths = [shard_path(shard_dir, j) for j in nodes]
    readers: dict[int, ShardReader] = {}
    key = None
    for path in paths:
        if not path.exists():
            raise ShardFormatError(f"missing shard {path}")
        reader = ShardReader(path, p.alpha)
        _check_header(reader, spec)
        if key is None:
            key = reader.header.code_key()
        elif reader.header.code_key() != key:
            raise ShardFormatError(f"{path.name}: header disagrees with the other shards")
        node = reader.header.node
        if node in readers:
            raise ShardFormatError(f"two shards claim node {node}")
        readers[node] = reader
    return readers


def decode_files(spec: CodeSpec, shard_dir: str | Path, nodes=None, pc: ParityCheck | None = None) -> bytes:
    pc = pc or spec.build()
    p = spec.params
    readers = open_shards(spec, shard_dir, nodes)
    if len(readers) < p.k:
        raise InsufficientDataError(f"found {len(readers)} shards, need at least k={p.k}")
    first = next(iter(readers.values())).header
    available = {j: r.read_all() for j, r in readers.items()}
    codewords = codec_for(pc).reconstruct_stripes(available)
    messages = codewords[:, : p.k].reshape(first.stripes, p.k * p.alpha)
    return stripes_to_bytes(messages, spec, first.length)


@dataclass(frozen=True)
class ShardRepair:
    path: Path
    report: BandwidthReport
    disk_bytes_read: dict[int, int]


def repair_shard(
    spec: CodeSpec,
    shard_dir: str | Path,
    failed: int,
    helpers,
    out: str | Path | None = None,
    pc: ParityCheck | None = None,
) -> ShardRepair:
    """Regenerate shard ``failed`` reading ``beta`` symbols per stripe from each helper."""
    pc = pc or spec.build()
    p = spec.params
    helpers = sorted(int(h) for h in helpers)
    if len(helpers) != p.d:
        raise ParameterError(f"need exactly d={p.d} helpers, got {len(helpers)}")
    if failed in helpers:
        raise ParameterError(f"failed node {failed} cannot be its own helper")
    readers = open_shards(spec, shard_dir, helpers)
    first = readers[helpers[0]].header

    def accessor(node: int, tidx: int) -> np.ndarray:
        return readers[node].read_tuple(tidx)

    symbols, report = repair(failed, helpers, accessor, pc)
    block = symbols.T
    header = ShardHeader(failed, p.n, p.k, p.d, spec.field_width, first.stripes, first.length)
    path = Path(out) if out is not None else shard_path(shard_dir, failed)
    write_shard(path, header, block)
    return ShardRepair(path, report, {j: r.bytes_read for j, r in readers.items()})
