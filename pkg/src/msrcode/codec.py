"""Systematic encoding and any-k reconstruction.

Everything is batched over stripes: a stack of ``S`` codewords is an array of
shape ``(S, n, alpha)``.  The single-codeword helpers at the bottom wrap the
batched :class:`Codec`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .construct import ParityCheck
from .errors import CorruptionError, InsufficientDataError, ParameterError, SingularMatrixError


@dataclass(frozen=True)
class Codeword:
    """``n`` node blocks of ``alpha`` symbols; ``blocks[j-1][x]`` is node ``j`` at tuple ``x``."""

    blocks: np.ndarray

    @property
    def n(self) -> int:
        return self.blocks.shape[0]

    def block(self, node: int) -> np.ndarray:
        return self.blocks[node - 1]

    def symbol(self, node: int, tidx: int) -> int:
        return int(self.blocks[node - 1, tidx])

    def flat(self) -> np.ndarray:
        return self.blocks.reshape(-1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Codeword) and np.array_equal(self.blocks, other.blocks)

    __hash__ = None  # type: ignore[assignment]


class Codec:
    def __init__(self, pc: ParityCheck) -> None:
        self.pc = pc
        self.params = pc.params
        self.field = pc.field
        self._decoders: dict[tuple[int, ...], tuple[tuple[int, ...], np.ndarray]] = {}
        self._generator: np.ndarray | None = None

    @property
    def message_symbols(self) -> int:
        return self.params.k * self.params.alpha

    def parity_generator(self) -> np.ndarray:
        """``G`` with ``parity = G @ message``, from ``H(:,P) y = H(:,K) m``."""
        if self._generator is None:
            p = self.params
            data = range(1, p.k + 1)
            parity = range(p.k + 1, p.n + 1)
            try:
                self._generator = linalg.solve(
                    self.field, self.pc.submatrix(parity), self.pc.submatrix(data)
                )
            except SingularMatrixError as exc:
                raise SingularMatrixError(
                    "H restricted to the parity nodes is singular; the code is not MDS"
                ) from exc
        return self._generator

    def encode_stripes(self, messages) -> np.ndarray:
        """Encode ``(S, k alpha)`` message symbols into ``(S, n, alpha)`` codewords."""
        p = self.params
        msgs = np.asarray(messages, dtype=self.field.dtype)
        if msgs.ndim != 2 or msgs.shape[1] != self.message_symbols:
            raise ParameterError(
                f"messages must have shape (S, {self.message_symbols}), got {msgs.shape}"
            )
        parity = linalg.matmul(self.field, self.parity_generator(), msgs.T).T
        out = np.concatenate([msgs, parity], axis=1)
        return out.reshape(len(msgs), p.n, p.alpha)

    def residual_stripes(self, codewords) -> np.ndarray:
        """``H c`` for each stripe, shape ``(S, (n-k) alpha)``."""
        p = self.params
        cw = np.asarray(codewords, dtype=self.field.dtype).reshape(-1, p.n * p.alpha)
        return linalg.matmul(self.field, self.pc.dense, cw.T).T

    def _decoder(self, available: tuple[int, ...]):
        if available not in self._decoders:
            p = self.params
            missing = [j for j in range(1, p.n + 1) if j not in available]
            rows, left = linalg.left_inverse(self.field, self.pc.submatrix(missing))
            known = self.pc.submatrix(available)[rows]
            self._decoders[available] = (
                tuple(missing),
                linalg.matmul(self.field, left, known),
            )
        return self._decoders[available]

    def reconstruct_stripes(self, available: dict[int, np.ndarray]) -> np.ndarray:
        """Complete ``(S, n, alpha)`` codewords from node -> ``(S, alpha)`` blocks.

        Needs at least ``k`` nodes.  Every parity check is verified on the
        result, so blocks that fit no codeword raise :class:`CorruptionError`.
        """
        p = self.params
        nodes = tuple(sorted(available))
        for j in nodes:
            if not 1 <= j <= p.n:
                raise ParameterError(f"node {j} outside [1, {p.n}]")
        if len(nodes) < p.k:
            raise InsufficientDataError(
                f"{len(nodes)} nodes available, at least k={p.k} are needed"
            )
        blocks = [np.asarray(available[j], dtype=self.field.dtype) for j in nodes]
        blocks = [b.reshape(-1, p.alpha) for b in blocks]
        stripes = blocks[0].shape[0]
        if any(b.shape[0] != stripes for b in blocks):
            raise ParameterError("available blocks disagree on stripe count")
        out = np.zeros((stripes, p.n, p.alpha), dtype=self.field.dtype)
        for j, b in zip(nodes, blocks):
            out[:, j - 1] = b
        if len(nodes) < p.n:
            missing, decode = self._decoder(nodes)
            known = np.concatenate(blocks, axis=1)
            solved = linalg.matmul(self.field, decode, known.T).T
            out[:, [j - 1 for j in missing]] = solved.reshape(stripes, len(missing), p.alpha)
        bad = np.flatnonzero(self.residual_stripes(out).any(axis=1))
        if bad.size:
            raise CorruptionError(
                f"available blocks are inconsistent with the code (stripe {int(bad[0])})"
            )
        return out


def codec_for(pc: ParityCheck) -> Codec:
    """Per-matrix codec, memoised on the (immutable) ParityCheck instance."""
    codec = pc.__dict__.get("_codec")
    if codec is None:
        codec = pc.__dict__["_codec"] = Codec(pc)
    return codec


def encode(message, pc: ParityCheck) -> Codeword:
    msg = np.asarray(message).reshape(1, -1)
    return Codeword(codec_for(pc).encode_stripes(msg)[0])


def reconstruct(available: dict[int, np.ndarray], pc: ParityCheck) -> Codeword:
    batch = {j: np.asarray(b).reshape(1, -1) for j, b in available.items()}
    return Codeword(codec_for(pc).reconstruct_stripes(batch)[0])


def parity_residual(c: Codeword | np.ndarray, pc: ParityCheck) -> np.ndarray:
    blocks = c.blocks if isinstance(c, Codeword) else np.asarray(c)
    return codec_for(pc).residual_stripes(blocks.reshape(1, -1))[0]
