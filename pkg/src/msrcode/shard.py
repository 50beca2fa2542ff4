"""Binary shard files.

Layout (all integers little-endian)::

    offset  size  field
    0       4     magic b"MSR1"
    4       1     format version (1)
    5       2     node index, 1-based
    7       2     n
    9       2     k
    11      2     d
    13      1     field width in bits (8 or 16)
    14      4     stripe count
    18      8     original file length in bytes
    26      ...   payload: stripe-major, alpha symbols per stripe

Within a stripe, symbols are in tuple-index order (big-endian mixed radix).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ShardFormatError

MAGIC = b"MSR1"
FORMAT_VERSION = 1
HEADER = struct.Struct("<4sBHHHHBIQ")
HEADER_SIZE = HEADER.size


def symbol_dtype(width: int) -> np.dtype:
    if width == 8:
        return np.dtype("u1")
    if width == 16:
        return np.dtype("<u2")
    raise ShardFormatError(f"unsupported field width {width}")


@dataclass(frozen=True)
class ShardHeader:
    node: int
    n: int
    k: int
    d: int
    field_width: int
    stripes: int
    length: int

    def pack(self) -> bytes:
        return HEADER.pack(
            MAGIC, FORMAT_VERSION, self.node, self.n, self.k, self.d,
            self.field_width, self.stripes, self.length,
        )

    @classmethod
    def unpack(cls, raw: bytes) -> ShardHeader:
        if len(raw) < HEADER_SIZE:
            raise ShardFormatError(f"shard header truncated ({len(raw)} bytes)")
        magic, version, node, n, k, d, width, stripes, length = HEADER.unpack(raw[:HEADER_SIZE])
        if magic != MAGIC:
            raise ShardFormatError(f"bad magic {magic!r}")
        if version != FORMAT_VERSION:
            raise ShardFormatError(f"unsupported shard format version {version}")
        if width not in (8, 16):
            raise ShardFormatError(f"unsupported field width {width}")
        if not 1 <= node <= n:
            raise ShardFormatError(f"node index {node} outside [1, {n}]")
        return cls(node, n, k, d, width, stripes, length)

    def code_key(self) -> tuple[int, int, int, int, int, int]:
        """Fields every shard of one encoding must share."""
        return (self.n, self.k, self.d, self.field_width, self.stripes, self.length)


def shard_path(directory: str | Path, node: int) -> Path:
    return Path(directory) / f"node{node:03d}.shard"


def write_shard(path: str | Path, header: ShardHeader, payload: np.ndarray) -> None:
    data = np.ascontiguousarray(payload, dtype=symbol_dtype(header.field_width))
    if data.shape[0] != header.stripes:
        raise ValueError(f"payload has {data.shape[0]} stripes, header says {header.stripes}")
    with open(path, "wb") as fh:
        fh.write(header.pack())
        fh.write(data.tobytes())


class ShardReader:
    """Header-validated view of a shard; payload reads are counted."""

    def __init__(self, path: str | Path, alpha: int) -> None:
        self.path = Path(path)
        with open(self.path, "rb") as fh:
            self.header = ShardHeader.unpack(fh.read(HEADER_SIZE))
        self.alpha = alpha
        self.dtype = symbol_dtype(self.header.field_width)
        expected = self.header.stripes * alpha * self.dtype.itemsize
        actual = self.path.stat().st_size - HEADER_SIZE
        if actual != expected:
            raise ShardFormatError(
                f"{self.path.name}: payload is {actual} bytes, header implies {expected}"
            )
        self.symbols_read = 0
        self._payload: np.ndarray | None = None

    @property
    def payload(self) -> np.ndarray:
        if self._payload is None:
            if self.header.stripes == 0:
                self._payload = np.zeros((0, self.alpha), dtype=self.dtype)
            else:
                self._payload = np.memmap(
                    self.path, dtype=self.dtype, mode="r", offset=HEADER_SIZE,
                    shape=(self.header.stripes, self.alpha),
                )
        return self._payload

    @property
    def bytes_read(self) -> int:
        return self.symbols_read * self.dtype.itemsize

    def read_tuple(self, tidx: int) -> np.ndarray:
        """Symbol ``tidx`` of every stripe."""
        col = np.array(self.payload[:, tidx])
        self.symbols_read += col.size
        return col

    def read_all(self) -> np.ndarray:
        data = np.array(self.payload)
        self.symbols_read += data.size
        return data
