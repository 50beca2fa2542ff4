"""Bandwidth-optimal repair of a single failed node.

The failed node ``(g, theta0)`` is rebuilt from ``d`` helpers, each sending
the ``beta`` symbols whose tuple has coordinate ``g`` equal to ``theta0``.

Stage 1 solves the ``n - d`` Type I rows at each of those tuples for the
``n - d`` nodes that sent nothing (the failed node and the bystanders).
Stage 2 then reads each Type II row ``(delta, y)``: every term is known
except the failed node's symbol at ``y`` shifted by ``delta`` in coordinate
``g``, whose coefficient is ``rho``.

Symbols may be ints or numpy arrays; arrays repair many stripes at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from . import linalg
from .construct import ParityCheck, column
from .errors import FetchError, ParameterError, RepairInvariantError
from .params import CodeParams, NodeId, index_tuple, node_id, node_index, repair_tuples

Accessor = Callable[[int, int], object]


def _as_index(node, p: CodeParams) -> int:
    if isinstance(node, tuple):
        return node_index(NodeId(*node), p)
    node = int(node)
    node_id(node, p)
    return node


@dataclass
class RepairSession:
    params: CodeParams
    failed: int
    helpers: tuple[int, ...]
    plan: list[tuple[int, int]]
    download_ledger: list[tuple[int, int]] = dc_field(default_factory=list)
    stage1_recovered: dict[tuple[int, int], np.ndarray] = dc_field(default_factory=dict)
    stage2_recovered: dict[int, np.ndarray] = dc_field(default_factory=dict)
    result: np.ndarray | None = None

    @property
    def failed_id(self) -> NodeId:
        return node_id(self.failed, self.params)

    @property
    def repair_tuples(self) -> list[int]:
        return repair_tuples(self.failed_id, self.params)


@dataclass(frozen=True)
class BandwidthReport:
    failed: int
    helpers: tuple[int, ...]
    symbols_downloaded: int
    bytes_downloaded: int
    naive_bytes: int
    ratio: float

    def to_dict(self) -> dict:
        return {
            "failed": self.failed,
            "helpers": list(self.helpers),
            "symbols_downloaded": self.symbols_downloaded,
            "bytes_downloaded": self.bytes_downloaded,
            "naive_bytes": self.naive_bytes,
            "ratio": self.ratio,
        }


def repair_plan(failed, helpers, p: CodeParams) -> list[tuple[int, int]]:
    """``(node, tuple_index)`` fetches: each helper's ``beta`` repair tuples, in order."""
    f = _as_index(failed, p)
    hs = [_as_index(h, p) for h in helpers]
    if len(set(hs)) != len(hs):
        raise ParameterError(f"duplicate helpers in {hs}")
    if f in hs:
        raise ParameterError(f"failed node {f} cannot be its own helper")
    if len(hs) != p.d:
        raise ParameterError(f"need exactly d={p.d} helpers, got {len(hs)}")
    tuples = repair_tuples(node_id(f, p), p)
    return [(h, x) for h in sorted(hs) for x in tuples]


def start_session(failed, helpers, p: CodeParams) -> RepairSession:
    plan = repair_plan(failed, helpers, p)
    f = _as_index(failed, p)
    hs = tuple(sorted(_as_index(h, p) for h in helpers))
    return RepairSession(params=p, failed=f, helpers=hs, plan=plan)


def _combine(field, terms) -> np.ndarray:
    """XOR-sum of ``coef * symbol`` over ``terms``."""
    acc = None
    for coef, sym in terms:
        v = field.scale(coef, sym)
        acc = v if acc is None else acc ^ v
    return acc


def repair_stage1(session: RepairSession, fetched: dict, pc: ParityCheck) -> dict:
    """Recover every node's symbol at every repair tuple from the Type I rows."""
    p, field = pc.params, pc.field
    missing = set(session.plan) - set(fetched)
    if missing:
        node, x = min(missing)
        raise FetchError(node, x)
    known = {column(p, j, x): np.asarray(v, dtype=field.dtype) for (j, x), v in fetched.items()}
    unknown_nodes = [j for j in range(1, p.n + 1) if j not in session.helpers]
    inverses: dict[tuple, np.ndarray] = {}
    for y in session.repair_tuples:
        want = [column(p, j, y) for j in unknown_nodes]
        coefs, rhs = [], []
        for r in range(1, p.n - p.d + 1):
            row = dict(pc.rows[pc.row_index(r, y)])
            coefs.append(tuple(row.pop(c) for c in want))
            rhs.append(_combine(field, ((coef, known[c]) for c, coef in row.items())))
        key = tuple(coefs)
        if key not in inverses:
            inverses[key] = linalg.inverse(field, coefs)
        inv = inverses[key]
        for i, c in enumerate(want):
            known[c] = _combine(field, zip(inv[i].tolist(), rhs))
        for j in range(1, p.n + 1):
            session.stage1_recovered[(j, y)] = known[column(p, j, y)]
    return session.stage1_recovered


def repair_stage2(session: RepairSession, pc: ParityCheck) -> dict[int, np.ndarray]:
    """Recover the failed node's ``(q - 1) beta`` remaining symbols from the Type II rows."""
    p, field = pc.params, pc.field
    if not session.stage1_recovered:
        raise RepairInvariantError("stage 2 needs the stage 1 symbols")
    known = {column(p, j, x): v for (j, x), v in session.stage1_recovered.items()}
    base = (session.failed - 1) * p.alpha
    for y in session.repair_tuples:
        for delta in range(1, p.q):
            row = pc.rows[pc.row_index(p.n - p.d + delta, y)]
            unknown = [(c, coef) for c, coef in row if c not in known]
            if len(unknown) != 1 or not base <= unknown[0][0] < base + p.alpha:
                raise RepairInvariantError(
                    f"Type II row (delta={delta}, tuple={index_tuple(y, p)}) has "
                    f"unknown columns {[c for c, _ in unknown]}"
                )
            target, coef = unknown[0]
            rest = _combine(field, ((cf, known[c]) for c, cf in row if c != target))
            value = field.scale(field.inv(coef), rest)
            known[target] = value
            session.stage2_recovered[target - base] = value
    return session.stage2_recovered


def _assemble(session: RepairSession) -> np.ndarray:
    p = session.params
    stage1 = {x: session.stage1_recovered[(session.failed, x)] for x in session.repair_tuples}
    if set(stage1) & set(session.stage2_recovered):
        raise RepairInvariantError("stage 1 and stage 2 recovered the same tuple")
    merged = {**stage1, **session.stage2_recovered}
    if len(merged) != p.alpha:
        raise RepairInvariantError(f"recovered {len(merged)} of {p.alpha} symbols")
    return np.stack([merged[x] for x in range(p.alpha)])


def repair(
    failed,
    helpers,
    accessor: Accessor,
    pc: ParityCheck,
) -> tuple[np.ndarray, BandwidthReport]:
    """Rebuild the failed node, fetching only the planned symbols through ``accessor``.

    ``accessor(node, tuple_index)`` returns one symbol or an array with one
    symbol per stripe.  The result has shape ``(alpha,)`` plus that per-symbol
    shape.
    """
    p = pc.params
    session = start_session(failed, helpers, p)
    fetched = {}
    for node, x in session.plan:
        try:
            fetched[(node, x)] = accessor(node, x)
        except FetchError:
            raise
        except (KeyError, IndexError, LookupError, OSError) as exc:
            raise FetchError(node, x) from exc
        session.download_ledger.append((node, x))
    repair_stage1(session, fetched, pc)
    if p.q > 1:
        repair_stage2(session, pc)
    session.result = _assemble(session)

    per_symbol = int(np.asarray(next(iter(fetched.values()))).size) if fetched else 1
    sym_bytes = pc.field.symbol_bytes
    report = BandwidthReport(
        failed=session.failed,
        helpers=session.helpers,
        symbols_downloaded=len(session.download_ledger),
        bytes_downloaded=len(session.download_ledger) * per_symbol * sym_bytes,
        naive_bytes=p.naive_bandwidth * per_symbol * sym_bytes,
        ratio=p.naive_bandwidth / p.repair_bandwidth,
    )
    return session.result, report


def repair_codeword_node(codeword_blocks, failed, helpers, pc: ParityCheck):
    """Repair from an in-memory ``(n, alpha[, S])`` array, reading only helper symbols."""
    blocks = np.asarray(codeword_blocks)
    allowed = {_as_index(h, pc.params) for h in helpers}

    def accessor(node: int, x: int):
        if node not in allowed:
            raise FetchError(node, x)
        return blocks[node - 1, x]

    return repair(failed, helpers, accessor, pc)
