"""Closed-form counts of Hopf-Galois structures between groups M(k, l).

For Gamma = M(k1, l1) and G = M(k2, l2) with k1*l1 = k2*l2 = N odd,
gcd(k1, l1) = gcd(k2, l2) = 1, and rad(N) a Burnside number:

    e'(Gamma, G) = l1*N / (k1 * gcd(l1, l2) * rad(l1)) * 2**|pi(k2)|
    e(Gamma, G)  = l1*l2 / (gcd(l1, l2) * rad(l1)) * 2**|pi(k2)|

The Burnside hypothesis is dropped when Gamma is dihedral (l1 = 1).
Outside the hypotheses these functions raise ``PreconditionError`` rather
than returning 0, since genuine zeros also occur.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from hgcount.group import MklParams, aut_order
from hgcount.numtheory import (
    chi_coefficients,
    coprime_factorizations,
    is_burnside,
    prime_support,
    radical,
)

ORDER_MISMATCH = "order mismatch"
ODD_ORDER = "odd-order violation"
COPRIMALITY = "coprimality violation"
BURNSIDE = "Burnside violation"


class PreconditionError(ValueError):
    """A formula was asked for outside its hypotheses."""

    def __init__(self, hypothesis: str, detail: str):
        super().__init__(f"{hypothesis}: {detail}")
        self.hypothesis = hypothesis
        self.detail = detail


@dataclass
class CountReport:
    gamma: MklParams
    g: MklParams
    e_prime: int
    e: int
    preconditions_used: list[str] = field(default_factory=list)


def check_preconditions(gamma: MklParams, g: MklParams) -> list[str]:
    """Return the hypotheses relied on, or raise naming the one that fails."""
    n = gamma.n
    if g.n != n:
        raise PreconditionError(ORDER_MISMATCH, f"|{gamma}| = {gamma.order} but |{g}| = {g.order}")
    if n % 2 == 0:
        raise PreconditionError(ODD_ORDER, f"N = {n} is even")
    used = [f"N = {n} odd", f"k1*l1 = k2*l2 = {n}"]
    for name, p in (("Gamma", gamma), ("G", g)):
        if not p.coprime:
            raise PreconditionError(COPRIMALITY, f"{name} = {p} has gcd(k, l) = {gcd(p.k, p.l)}")
    used.append("gcd(k1, l1) = gcd(k2, l2) = 1")
    if gamma.l == 1:
        used.append("l1 = 1 (Gamma dihedral): Burnside hypothesis not needed")
    elif is_burnside(radical(n)):
        used.append(f"rad(N) = {radical(n)} is a Burnside number")
    else:
        raise PreconditionError(
            BURNSIDE, f"rad({n}) = {radical(n)} is not a Burnside number and l1 = {gamma.l} > 1"
        )
    return used


def _exact(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"inexact division {num}/{den}")
    return q


def e_prime_formula(gamma: MklParams, g: MklParams) -> int:
    """Number of regular subgroups of Hol(G) isomorphic to Gamma."""
    check_preconditions(gamma, g)
    k1, l1, k2, l2 = gamma.k, gamma.l, g.k, g.l
    num = l1 * gamma.n * 2 ** len(prime_support(k2))
    return _exact(num, k1 * gcd(l1, l2) * radical(l1))


def e_formula(gamma: MklParams, g: MklParams) -> int:
    """Number of Hopf-Galois structures of type G on a Galois Gamma-extension."""
    check_preconditions(gamma, g)
    l1, l2 = gamma.l, g.l
    value = _exact(l1 * l2 * 2 ** len(prime_support(g.k)), gcd(l1, l2) * radical(l1))
    converted = Fraction(aut_order(gamma), aut_order(g)) * e_prime_formula(gamma, g)
    if converted != value:
        raise ArithmeticError(f"e and e' disagree for ({gamma}, {g}): {value} vs {converted}")
    return value


def count_report(gamma: MklParams, g: MklParams) -> CountReport:
    used = check_preconditions(gamma, g)
    return CountReport(gamma, g, e_prime_formula(gamma, g), e_formula(gamma, g), used)


def e_dihedral_noncoprime(n: int, k: int, l: int) -> int:
    """e(D_2N, D_2k x C_l) = 0 whenever gcd(k, l) > 1."""
    if n % 2 == 0:
        raise PreconditionError(ODD_ORDER, f"N = {n} is even")
    if k * l != n:
        raise PreconditionError(ORDER_MISMATCH, f"{k} * {l} != {n}")
    if gcd(k, l) == 1:
        raise PreconditionError(COPRIMALITY, f"gcd({k}, {l}) = 1; use e_formula for coprime types")
    return 0


class LowerBound(NamedTuple):
    authoritative: int
    printed_formula_value: int
    repaired_formula_value: int


def dihedral_total_lower_bound(n: int) -> LowerBound:
    """Hopf-Galois structures on a D_2N-extension, summed over M-types.

    ``authoritative`` is the direct sum of e(D_2N, M(k, l)) over coprime
    k*l = N, i.e. the sum of l * 2**|pi(k)|. The other two fields evaluate
    the chi-polynomial expressions: sum_{M=0..N} 2**M chi(N - M) read
    literally, and sum_L 2**L chi(L).
    """
    if n % 2 == 0 or n < 1:
        raise PreconditionError(ODD_ORDER, f"N = {n} is not odd")
    dihedral = MklParams.dihedral(n)
    authoritative = sum(e_formula(dihedral, MklParams(k, l)) for k, l in coprime_factorizations(n))
    chi = chi_coefficients(n)
    chi_at = lambda i: chi[i] if 0 <= i < len(chi) else 0  # noqa: E731
    printed = sum(2**m * chi_at(n - m) for m in range(n + 1))
    repaired = sum(2**i * c for i, c in enumerate(chi))
    return LowerBound(authoritative, printed, repaired)


def skew_brace_formula(additive: MklParams, multiplicative: MklParams) -> int:
    """Claimed number of skew braces with the given additive and multiplicative
    groups: the e' expression with (Gamma, G) = (additive, multiplicative)."""
    return e_prime_formula(additive, multiplicative)
