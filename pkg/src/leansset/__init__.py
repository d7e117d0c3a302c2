"""Exact computations with degreewise-finite simplicial sets, their pro-objects and bisimplicial sets."""

from .sset import (
    COSKELETAL,
    SKELETAL,
    BudgetExceeded,
    CapError,
    SimplicialIdentityError,
    SimplicialMap,
    SimplicialSet,
    compose,
    identity_map,
)

__all__ = [
    "COSKELETAL",
    "SKELETAL",
    "BudgetExceeded",
    "CapError",
    "SimplicialIdentityError",
    "SimplicialMap",
    "SimplicialSet",
    "compose",
    "identity_map",
]
