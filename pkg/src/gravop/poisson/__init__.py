"""Poisson operad model for the homology of the little 2d-disks operad."""

from .operad import (
    OperadElement,
    OperadError,
    SignedPermutation,
    bracket_generator,
    compose,
    delta,
    delta_recursive,
    evaluate,
    identity,
    kernel_rank_profile,
    lam,
    mu,
    poisson_basis,
    relabel,
    sigma_act,
)

__all__ = [
    "OperadElement",
    "OperadError",
    "SignedPermutation",
    "bracket_generator",
    "compose",
    "delta",
    "delta_recursive",
    "evaluate",
    "identity",
    "kernel_rank_profile",
    "lam",
    "mu",
    "poisson_basis",
    "relabel",
    "sigma_act",
]
