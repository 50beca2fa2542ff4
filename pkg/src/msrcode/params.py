"""Code parameters and the coordinate systems used to address symbols.

Nodes are named ``(group, theta)`` and numbered ``1..n``; the symbols inside
a node are named by ``m``-tuples over ``[0, q)`` and numbered ``0..alpha-1``
in big-endian mixed radix.  When ``s == 0`` the last group is empty, so the
construction runs over ``m = t - 1`` coordinates instead of ``t``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ParameterError


class NodeId(NamedTuple):
    group: int
    theta: int


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    q: int
    t: int
    s: int
    m: int
    alpha: int
    beta: int

    @property
    def degenerate(self) -> bool:
        """``d == k``: scalar MDS code, no Type II constraints."""
        return self.q == 1

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    @property
    def type1_rows(self) -> int:
        return (self.n - self.d) * self.alpha

    @property
    def type2_rows(self) -> int:
        return (self.d - self.k) * self.alpha

    @property
    def repair_bandwidth(self) -> int:
        """Symbols downloaded to repair one node: ``d * beta``."""
        return self.d * self.beta

    @property
    def naive_bandwidth(self) -> int:
        """Symbols needed to rebuild a node by full decoding: ``k * alpha``."""
        return self.k * self.alpha

    def group_size(self, group: int) -> int:
        if not 1 <= group <= self.m:
            return 0
        if group < self.t:
            return self.q
        return self.s

    def to_dict(self) -> dict[str, int]:
        return {
            "q": self.q,
            "t": self.t,
            "s": self.s,
            "m": self.m,
            "alpha": self.alpha,
            "beta": self.beta,
        }


def derive_params(n: int, k: int, d: int) -> CodeParams:
    """Derive ``q, t, s, m, alpha, beta`` from ``(n, k, d)``.

    ``n = (t - 1) q + s`` with ``q = d - k + 1`` and ``0 <= s < q``.

    >>> derive_params(5, 2, 3)
    CodeParams(n=5, k=2, d=3, q=2, t=3, s=1, m=3, alpha=8, beta=4)
    """
    for name, value in (("n", n), ("k", k), ("d", d)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise ParameterError(f"{name} must be an integer, got {value!r}")
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    if d < k:
        raise ParameterError(f"d={d} is smaller than k={k}")
    if d > n - 1:
        raise ParameterError(f"d={d} must be at most n-1={n - 1}")
    q = d - k + 1
    t = n // q + 1
    s = n % q
    if t < 2:
        raise ParameterError(f"n={n} < q={q}: no construction with t > 1")
    m = t if s > 0 else t - 1
    alpha = q**m
    return CodeParams(n=n, k=k, d=d, q=q, t=t, s=s, m=m, alpha=alpha, beta=alpha // q)


def check_node(node: NodeId, p: CodeParams) -> NodeId:
    group, theta = node
    if not 0 <= theta < p.group_size(group):
        raise ParameterError(f"node {tuple(node)} is not in the node set")
    return NodeId(group, theta)


def node_index(node: NodeId, p: CodeParams) -> int:
    """1-based position of ``(group, theta)``: ``(group - 1) q + theta + 1``."""
    group, theta = check_node(node, p)
    return (group - 1) * p.q + theta + 1


def node_id(index: int, p: CodeParams) -> NodeId:
    if not 1 <= index <= p.n:
        raise ParameterError(f"node index {index} outside [1, {p.n}]")
    group, theta = divmod(index - 1, p.q)
    return NodeId(group + 1, theta)


def all_nodes(p: CodeParams) -> list[NodeId]:
    return [node_id(j, p) for j in range(1, p.n + 1)]


def tuple_index(x, p: CodeParams) -> int:
    if len(x) != p.m:
        raise ParameterError(f"tuple {tuple(x)} must have length {p.m}")
    idx = 0
    for c in x:
        if not 0 <= c < p.q:
            raise ParameterError(f"tuple {tuple(x)} has a coordinate outside [0, {p.q})")
        idx = idx * p.q + c
    return idx


def index_tuple(idx: int, p: CodeParams) -> tuple[int, ...]:
    if not 0 <= idx < p.alpha:
        raise ParameterError(f"tuple index {idx} outside [0, {p.alpha})")
    coords = []
    for _ in range(p.m):
        idx, c = divmod(idx, p.q)
        coords.append(c)
    return tuple(reversed(coords))


def all_tuples(p: CodeParams):
    """All ``alpha`` tuples in ``tuple_index`` order."""
    return itertools.product(range(p.q), repeat=p.m)


def shift_tuple(x, g: int, delta: int, p: CodeParams) -> tuple[int, ...]:
    """Replace coordinate ``g`` (1-based) by ``(x_g - delta) mod q``."""
    if not 1 <= g <= p.m:
        raise ParameterError(f"group {g} outside [1, {p.m}]")
    y = list(x)
    y[g - 1] = (y[g - 1] - delta) % p.q
    return tuple(y)


def repair_tuples(failed: NodeId, p: CodeParams) -> list[int]:
    """Indices of the ``beta`` tuples whose coordinate ``group`` equals ``theta``."""
    group, theta = check_node(failed, p)
    return [
        tuple_index(x, p) for x in all_tuples(p) if x[group - 1] == theta
    ]
