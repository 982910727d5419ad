"""Lattice successive minima, exterior-power norms, and flat-torus systoles."""

from ._core import (
    BudgetExceededError,
    DegenerateLatticeError,
    InputError,
    Lattice,
    PVector,
    codim1_systole,
    comass,
    conformal_systole,
    dual,
    exterior_power_lattice,
    gamma_constants,
    hodge_star,
    lattice_to_json,
    lll_reduce,
    mass,
    random_lattice,
    record_schemas,
    search_dual_critical,
    stable_systole,
    successive_minima,
    two_vector_canonical_coefficients,
    verify,
    wedge,
)

__all__ = [
    "BudgetExceededError",
    "DegenerateLatticeError",
    "InputError",
    "Lattice",
    "PVector",
    "codim1_systole",
    "comass",
    "conformal_systole",
    "dual",
    "exterior_power_lattice",
    "gamma_constants",
    "hodge_star",
    "lattice_to_json",
    "lll_reduce",
    "mass",
    "random_lattice",
    "record_schemas",
    "search_dual_critical",
    "stable_systole",
    "successive_minima",
    "two_vector_canonical_coefficients",
    "verify",
    "wedge",
]
