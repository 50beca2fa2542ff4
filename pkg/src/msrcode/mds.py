"""MDS certification by exhaustive subset rank tests, and the search for rho."""

from __future__ import annotations

import itertools
import logging
from dataclasses import asdict, dataclass
from math import comb

from . import linalg
from .construct import ParityCheck, build_cauchy, build_parity_check
from .errors import BudgetExceededError, RhoNotFoundError
from .gf import Field
from .params import CodeParams

log = logging.getLogger(__name__)

DEFAULT_MAX_SUBSETS = 10_000


@dataclass(frozen=True)
class MdsReport:
    is_mds: bool
    subsets_checked: int
    first_failure: tuple[int, ...] | None = None
    rank_deficiency: int | None = None
    d_min: int | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        if self.first_failure is not None:
            out["first_failure"] = list(self.first_failure)
        return out


def subset_count(p: CodeParams) -> int:
    return comb(p.n, p.n - p.k)


def degree_bound(p: CodeParams) -> int:
    """Upper bound on deg h(rho): ``C(n, n-k) (n-k) alpha``."""
    return subset_count(p) * (p.n - p.k) * p.alpha


def check_mds(
    pc: ParityCheck,
    *,
    max_subsets: int | None = None,
    stop_at_first: bool = False,
) -> MdsReport:
    """Check that ``H(:, S)`` has full rank for every ``S`` with ``|S| = n - k``.

    Subsets are visited in lexicographic order, so ``first_failure`` is the
    smallest failing subset.  With ``stop_at_first`` the scan ends there and
    ``subsets_checked`` counts only what was visited.
    """
    p = pc.params
    total = subset_count(p)
    if max_subsets is not None and total > max_subsets:
        raise BudgetExceededError(total, max_subsets)
    full = (p.n - p.k) * p.alpha
    H = pc.dense
    checked = 0
    failure = None
    deficiency = None
    for subset in itertools.combinations(range(1, p.n + 1), p.n - p.k):
        checked += 1
        r = linalg.rank(pc.field, H[:, pc.node_columns(subset)])
        if r < full and failure is None:
            failure, deficiency = subset, full - r
            if stop_at_first:
                break
    ok = failure is None
    return MdsReport(
        is_mds=ok,
        subsets_checked=checked,
        first_failure=failure,
        rank_deficiency=deficiency,
        d_min=p.n - p.k + 1 if ok else None,
    )


@dataclass(frozen=True)
class RhoSearch:
    rho: int
    tries: int
    degree_bound: int
    parity_check: ParityCheck


def search_rho(
    p: CodeParams, field: Field, *, max_subsets: int | None = DEFAULT_MAX_SUBSETS
) -> RhoSearch:
    """Scan rho = 1, 2, ... and return the first value whose code is MDS."""
    total = subset_count(p)
    if max_subsets is not None and total > max_subsets:
        raise BudgetExceededError(total, max_subsets)
    bound = degree_bound(p)
    cauchy = build_cauchy(p, field)
    log.debug("searching rho over GF(2^%d), degree bound %d", field.width, bound)
    for rho in range(1, field.order):
        pc = build_parity_check(p, field, rho, cauchy)
        if check_mds(pc, stop_at_first=True).is_mds:
            return RhoSearch(rho, rho, bound, pc)
        log.debug("rho=%d fails", rho)
    raise RhoNotFoundError(field.width, bound)


def find_rho(p: CodeParams, field: Field) -> int:
    return search_rho(p, field).rho
