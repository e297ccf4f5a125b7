"""Hopf-Galois structure counts for Galois extensions with group D_2k x C_l."""

from hgcount.formula import (
    PreconditionError,
    count_report,
    dihedral_total_lower_bound,
    e_formula,
    e_prime_formula,
    skew_brace_formula,
)
from hgcount.group import MklParams, SizeGuardError, TypeTag
from hgcount.oracle import (
    e_oracle,
    e_prime_oracle,
    enumerate_regular_embeddings,
    find_regular_subgroups,
    skew_brace_classes,
)

__all__ = [
    "MklParams",
    "PreconditionError",
    "SizeGuardError",
    "TypeTag",
    "count_report",
    "dihedral_total_lower_bound",
    "e_formula",
    "e_oracle",
    "e_prime_formula",
    "e_prime_oracle",
    "enumerate_regular_embeddings",
    "find_regular_subgroups",
    "skew_brace_classes",
    "skew_brace_formula",
]
