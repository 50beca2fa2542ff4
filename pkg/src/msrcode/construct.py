"""Parity-check matrix of the MSR code.

``H`` has ``(n-k) alpha`` rows and ``n alpha`` columns.  The symbol of node
``j`` at tuple index ``x`` lives in column ``(j-1) alpha + x``.  Rows come in
two families:

* Type I, ``(r, x)`` for ``r in 1..n-d``: one entry per node at tuple ``x``,
  coefficient ``cauchy[r][j]``.  Stored at row ``(r-1) alpha + x``.
* Type II, ``(delta, x)`` for ``delta in 1..q-1``: the same diagonal part
  with Cauchy row ``n-d+delta``, plus ``rho`` at node ``(g, x_g)`` and tuple
  ``x`` shifted by ``delta`` in coordinate ``g``, for every group ``g`` whose
  node exists.  Stored at row ``(n-d+delta-1) alpha + x``.

Dropping the ``rho`` entries leaves ``H_MDS kron I_alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .errors import FieldTooSmallError, ParameterError
from .gf import Field
from .params import (
    CodeParams,
    NodeId,
    all_tuples,
    node_index,
    shift_tuple,
    tuple_index,
)

Row = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class CauchyMatrix:
    field: Field
    a: tuple[int, ...]
    b: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.a)

    @property
    def cols(self) -> int:
        return len(self.b)

    def coef(self, r: int, j: int) -> int:
        """Entry for 1-based row ``r`` and node ``j``."""
        return self.entries[r - 1][j - 1]

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=self.field.dtype).reshape(self.rows, self.cols)


def cauchy_from_elements(field: Field, a, b, *, require_distinct: bool = True) -> CauchyMatrix:
    """Cauchy matrix ``1 / (a_r - b_j)`` from explicit element lists.

    ``require_distinct=False`` still rejects ``a_r == b_j`` (no inverse) but
    lets repeated elements through; used to build deliberately broken codes.
    """
    a = tuple(field.check(int(v)) for v in a)
    b = tuple(field.check(int(v)) for v in b)
    if require_distinct and len(set(a) | set(b)) != len(a) + len(b):
        raise ParameterError("Cauchy elements a and b must be pairwise distinct")
    if set(a) & set(b):
        raise ParameterError("Cauchy elements a and b must not overlap")
    entries = tuple(tuple(field.inv(ar ^ bj) for bj in b) for ar in a)
    return CauchyMatrix(field, a, b, entries)


def default_elements(p: CodeParams) -> tuple[list[int], list[int]]:
    nk = p.n - p.k
    return list(range(nk)), list(range(nk, nk + p.n))


def build_cauchy(p: CodeParams, field: Field) -> CauchyMatrix:
    """``a = 0..n-k-1`` and ``b = n-k..2n-k-1`` as canonical field elements."""
    need = 2 * p.n - p.k
    if field.order < need:
        raise FieldTooSmallError(
            f"GF(2^{field.width}) has {field.order} elements, the Cauchy matrix "
            f"needs {need}; use field width 16"
        )
    a, b = default_elements(p)
    return cauchy_from_elements(field, a, b)


def column(p: CodeParams, node: int, tidx: int) -> int:
    """0-based column of the symbol of node ``node`` (1-based) at tuple ``tidx``."""
    return (node - 1) * p.alpha + tidx


def type1_row(r: int, x, p: CodeParams, cauchy: CauchyMatrix) -> Row:
    if not 1 <= r <= p.n - p.d:
        raise ParameterError(f"Type I constraint index {r} outside [1, {p.n - p.d}]")
    tidx = tuple_index(x, p)
    return tuple((column(p, j, tidx), cauchy.coef(r, j)) for j in range(1, p.n + 1))


def rho_terms(delta: int, x, p: CodeParams) -> list[tuple[int, int]]:
    """``(node, tuple_index)`` pairs carrying ``rho`` in Type II row ``(delta, x)``.

    Group ``g`` contributes node ``(g, x_g)`` at ``x`` shifted in coordinate
    ``g``; the term is absent when that node does not exist (last group,
    ``x_g >= s``).
    """
    terms = []
    for g in range(1, p.m + 1):
        theta = x[g - 1]
        if theta >= p.group_size(g):
            continue
        j = node_index(NodeId(g, theta), p)
        terms.append((j, tuple_index(shift_tuple(x, g, delta, p), p)))
    return terms


def type2_row(delta: int, x, p: CodeParams, cauchy: CauchyMatrix, rho: int) -> Row:
    if not 1 <= delta <= p.q - 1:
        raise ParameterError(f"delta {delta} outside [1, {p.q - 1}]")
    tidx = tuple_index(x, p)
    r = p.n - p.d + delta
    entries = [(column(p, j, tidx), cauchy.coef(r, j)) for j in range(1, p.n + 1)]
    entries.extend((column(p, j, ti), rho) for j, ti in rho_terms(delta, x, p))
    return tuple(entries)


@dataclass(frozen=True)
class ParityCheck:
    """Sparse parity-check matrix ``H = J + E^rho``.

    ``rows[i]`` lists ``(column, coefficient)`` pairs; the last
    ``rho_counts[i]`` of them are the ``rho`` entries (zero for Type I rows).
    """

    params: CodeParams
    field: Field
    cauchy: CauchyMatrix
    rho: int
    rows: tuple[Row, ...]
    rho_counts: tuple[int, ...] = dc_field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.params.n * self.params.alpha

    def row_index(self, constraint: int, tidx: int) -> int:
        """Row of Cauchy constraint ``constraint`` (1-based, Type I first) at tuple ``tidx``."""
        return (constraint - 1) * self.params.alpha + tidx

    @cached_property
    def dense(self) -> np.ndarray:
        H = np.zeros(self.shape, dtype=self.field.dtype)
        for i, row in enumerate(self.rows):
            for col, coef in row:
                H[i, col] = coef
        H.setflags(write=False)
        return H

    def node_columns(self, nodes) -> np.ndarray:
        alpha = self.params.alpha
        nodes = sorted(nodes)
        if not nodes:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate(
            [np.arange((j - 1) * alpha, j * alpha) for j in nodes]
        )

    def submatrix(self, nodes) -> np.ndarray:
        """``H(:, S)``: the column blocks of ``nodes`` in ascending node order."""
        for j in nodes:
            if not 1 <= j <= self.params.n:
                raise ParameterError(f"node {j} outside [1, {self.params.n}]")
        return self.dense[:, self.node_columns(nodes)]

    def without_rho(self) -> ParityCheck:
        """The base matrix ``J`` (``rho`` entries removed, ``rho`` reported as 0)."""
        rows = tuple(
            row[: len(row) - c] if c else row
            for row, c in zip(self.rows, self.rho_counts)
        )
        return ParityCheck(
            self.params, self.field, self.cauchy, 0, rows, (0,) * len(rows)
        )


def build_parity_check(
    p: CodeParams, field: Field, rho: int, cauchy: CauchyMatrix | None = None
) -> ParityCheck:
    """Assemble every Type I row (by ``r``, then tuple) and Type II row (by ``delta``, then tuple)."""
    if rho == 0:
        raise ParameterError("rho must be a nonzero field element")
    field.check(rho)
    if cauchy is None:
        cauchy = build_cauchy(p, field)
    elif (cauchy.rows, cauchy.cols) != (p.n - p.k, p.n):
        raise ParameterError(
            f"Cauchy matrix is {cauchy.rows}x{cauchy.cols}, need {p.n - p.k}x{p.n}"
        )
    tuples = list(all_tuples(p))
    rows: list[Row] = []
    counts: list[int] = []
    for r in range(1, p.n - p.d + 1):
        for x in tuples:
            rows.append(type1_row(r, x, p, cauchy))
            counts.append(0)
    for delta in range(1, p.q):
        for x in tuples:
            row = type2_row(delta, x, p, cauchy, rho)
            rows.append(row)
            counts.append(len(row) - p.n)
    return ParityCheck(p, field, cauchy, rho, tuple(rows), tuple(counts))
