"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class MsrError(Exception):
    """Base class for every error raised by msrcode."""


class ParameterError(MsrError, ValueError):
    """Invalid (n, k, d), node id, tuple or field configuration."""


class FieldTooSmallError(ParameterError):
    """The field cannot hold 2n - k distinct Cauchy elements."""


class InvalidSpecError(ParameterError):
    """A code-spec document is malformed or describes an invalid code."""


class BudgetExceededError(ParameterError):
    """Subset enumeration would exceed the configured budget."""

    def __init__(self, subsets: int, budget: int) -> None:
        super().__init__(
            f"MDS certification needs {subsets} subset checks, budget is {budget}"
        )
        self.subsets = subsets
        self.budget = budget


class RhoNotFoundError(MsrError):
    """No nonzero rho in the field makes the code MDS."""

    def __init__(self, width: int, degree_bound: int) -> None:
        super().__init__(
            f"no rho in GF(2^{width}) yields an MDS code "
            f"(degree bound of h(rho) is {degree_bound}); use a larger field"
        )
        self.width = width
        self.degree_bound = degree_bound


class SingularMatrixError(MsrError, ArithmeticError):
    """A system that must be invertible turned out singular."""


class DataError(MsrError):
    """Stored or supplied data cannot be used."""


class InsufficientDataError(DataError):
    """Fewer than k node blocks are available."""


class CorruptionError(DataError):
    """Supplied blocks are not consistent with any codeword."""


class ShardFormatError(DataError):
    """A shard file has a bad header or payload size."""


class FetchError(DataError, KeyError):
    """A repair accessor could not serve a planned (node, tuple) symbol."""

    def __init__(self, node: int, tuple_index: int) -> None:
        super().__init__(f"cannot fetch symbol (node={node}, tuple={tuple_index})")
        self.node = node
        self.tuple_index = tuple_index

    def __str__(self) -> str:
        return self.args[0]


class RepairInvariantError(MsrError, RuntimeError):
    """A repair equation had more than one unknown, or none."""
