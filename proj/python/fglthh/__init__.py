"""Formal group laws, Hopf algebroids and sigma-cohomology of THH(MU) and THH(BP)."""

from ._fglthh import (
    SCHEMA,
    ContractError,
    DomainError,
    Error,
    IntegralityError,
    TruncationError,
    cohomology,
    eta_R,
    homology,
    render,
    report,
    sigma,
    smith_diagonal,
    thread_cap,
)

__all__ = [
    "SCHEMA",
    "ContractError",
    "DomainError",
    "Error",
    "IntegralityError",
    "TruncationError",
    "cohomology",
    "eta_R",
    "homology",
    "render",
    "report",
    "sigma",
    "smith_diagonal",
    "thread_cap",
]
