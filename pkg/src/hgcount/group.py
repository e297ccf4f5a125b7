"""The groups M(k, l) = D_2k x C_l for odd k, l, and their automorphisms.

An element r^i s^j t^m is stored as ``GroupElement(i, j, m)`` with
``i mod k``, ``j mod 2``, ``m mod l``. The relations are r^k = s^2 = t^l = 1,
srs = r^-1, and t central.

An automorphism is ``AutElement(b, d, c)`` acting by

    t -> t^b,   r -> r^d,   s -> r^c s

with ``b`` a unit mod l, ``d`` a unit mod k and ``c`` any residue mod k.
Unit coordinates modulo 1 are normalized to 1 so the identity automorphism
always reads ``(1, 1, 0)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Callable, Hashable, NamedTuple, Sequence

from hgcount.numtheory import totient

DEFAULT_MAX_SIZE = 100_000


class SizeGuardError(RuntimeError):
    """An enumeration would exceed the configured size guard."""

    def __init__(self, what: str, required: int, limit: int):
        super().__init__(f"{what} has {required} elements, above the size guard {limit}")
        self.what = what
        self.required = required
        self.limit = limit


def check_size(what: str, required: int, limit: int | None) -> None:
    if limit is not None and required > limit:
        raise SizeGuardError(what, required, limit)


@dataclass(frozen=True, order=True)
class MklParams:
    k: int
    l: int

    def __post_init__(self):
        for name, v in (("k", self.k), ("l", self.l)):
            if not isinstance(v, int) or v < 1 or v % 2 == 0:
                raise ValueError(f"{name} must be an odd positive integer, got {v!r}")

    @property
    def n(self) -> int:
        return self.k * self.l

    @property
    def order(self) -> int:
        return 2 * self.k * self.l

    @property
    def coprime(self) -> bool:
        return gcd(self.k, self.l) == 1

    @classmethod
    def cyclic(cls, n: int) -> MklParams:
        return cls(1, n)

    @classmethod
    def dihedral(cls, n: int) -> MklParams:
        return cls(n, 1)

    def __str__(self) -> str:
        return f"M({self.k},{self.l})"


class GroupElement(NamedTuple):
    rexp: int
    sexp: int
    texp: int


class AutElement(NamedTuple):
    b: int
    d: int
    c: int


def _unit(x: int, m: int) -> int:
    return x % m if m > 1 else 1


def identity(params: MklParams) -> GroupElement:
    return GroupElement(0, 0, 0)


def element(params: MklParams, i: int, j: int, m: int) -> GroupElement:
    return GroupElement(i % params.k, j % 2, m % params.l)


def encode(params: MklParams, x: GroupElement) -> int:
    """Row-major index ``i + k*(j + 2*m)``, the canonical integer label."""
    return x.rexp + params.k * (x.sexp + 2 * x.texp)


def decode(params: MklParams, code: int) -> GroupElement:
    code, i = divmod(code, params.k)
    m, j = divmod(code, 2)
    return GroupElement(i, j, m)


def mul(params: MklParams, x: GroupElement, y: GroupElement) -> GroupElement:
    i = x.rexp - y.rexp if x.sexp else x.rexp + y.rexp
    return GroupElement(i % params.k, (x.sexp + y.sexp) % 2, (x.texp + y.texp) % params.l)


def inverse(params: MklParams, x: GroupElement) -> GroupElement:
    i = x.rexp if x.sexp else -x.rexp
    return GroupElement(i % params.k, x.sexp, -x.texp % params.l)


def element_order(params: MklParams, x: GroupElement) -> int:
    t_order = params.l // gcd(params.l, x.texp)
    if x.sexp:
        # (r^i s)^2 = 1 and t is central
        return 2 * t_order
    r_order = params.k // gcd(params.k, x.rexp)
    return r_order * t_order // gcd(r_order, t_order)


def all_elements(params: MklParams, max_size: int | None = DEFAULT_MAX_SIZE) -> list[GroupElement]:
    """Every element, in canonical-encoding order."""
    check_size(str(params), params.order, max_size)
    return [decode(params, code) for code in range(params.order)]


def identity_aut(params: MklParams) -> AutElement:
    return AutElement(1, 1, 0)


def aut_apply(params: MklParams, f: AutElement, x: GroupElement) -> GroupElement:
    return GroupElement(
        (f.d * x.rexp + x.sexp * f.c) % params.k,
        x.sexp,
        f.b * x.texp % params.l,
    )


def aut_compose(params: MklParams, f: AutElement, g: AutElement) -> AutElement:
    """The automorphism ``x -> f(g(x))``."""
    k = params.k
    return AutElement(
        _unit(f.b * g.b, params.l),
        _unit(f.d * g.d, k),
        (f.d * g.c + f.c) % k,
    )


def aut_inverse(params: MklParams, f: AutElement) -> AutElement:
    k, l = params.k, params.l
    d_inv = pow(f.d, -1, k) if k > 1 else 1
    b_inv = pow(f.b, -1, l) if l > 1 else 1
    return AutElement(b_inv, d_inv, -d_inv * f.c % k)


def is_automorphism(params: MklParams, f: AutElement) -> bool:
    k, l = params.k, params.l
    return (
        0 <= f.c < k
        and 0 < f.b <= max(l - 1, 1)
        and 0 < f.d <= max(k - 1, 1)
        and gcd(f.b, l) == 1
        and gcd(f.d, k) == 1
    )


def aut_order(params: MklParams) -> int:
    """|Aut(M(k, l))| = phi(l) * k * phi(k); for k = 1 this is phi(l)."""
    return totient(params.l) * params.k * totient(params.k)


def all_automorphisms(params: MklParams, max_size: int | None = DEFAULT_MAX_SIZE) -> list[AutElement]:
    """Every automorphism, sorted lexicographically on ``(b, d, c)``.

    Aut(D_2k x C_l) splits as Aut(D_2k) x Aut(C_l) for all odd k, l: there are
    no nontrivial homomorphisms C_l -> Z(D_2k) = 1 or D_2k -> C_l.
    """
    k, l = params.k, params.l
    check_size(f"Aut({params})", aut_order(params), max_size)
    bs = [b for b in range(1, l) if gcd(b, l) == 1] if l > 1 else [1]
    ds = [d for d in range(1, k) if gcd(d, k) == 1] if k > 1 else [1]
    return [AutElement(b, d, c) for b in bs for d in ds for c in range(k)]


# -- classification of abstract groups of order 2N, N odd --------------------


@dataclass(frozen=True)
class TypeTag:
    """Isomorphism type of an order-2N group: an M-type or an order profile.

    ``profile`` is only set for non-M groups; it is the sorted multiset of
    element orders as ``(order, count)`` pairs.
    """

    k: int = 0
    l: int = 0
    profile: tuple[tuple[int, int], ...] = ()

    @classmethod
    def mtype(cls, k: int, l: int) -> TypeTag:
        return cls(k, l)

    @classmethod
    def other(cls, profile) -> TypeTag:
        return cls(0, 0, tuple(sorted(profile)))

    @property
    def is_mtype(self) -> bool:
        return self.k > 0

    def params(self) -> MklParams:
        if not self.is_mtype:
            raise ValueError(f"{self} is not an M-type")
        return MklParams(self.k, self.l)

    def sort_key(self):
        return (0, self.k, self.l, ()) if self.is_mtype else (1, 0, 0, self.profile)

    def __lt__(self, other: TypeTag) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.is_mtype:
            return f"M({self.k},{self.l})"
        return "Other[" + ",".join(f"{o}:{c}" for o, c in self.profile) + "]"


def _orders(elements: Sequence[Hashable], mul_oracle, e) -> dict:
    orders = {}
    for x in elements:
        n, y = 1, x
        while y != e:
            y = mul_oracle(y, x)
            n += 1
        orders[x] = n
    return orders


def classify_order_2N_group(
    elements: Sequence[Hashable],
    mul_oracle: Callable[[Hashable, Hashable], Hashable],
    check_closure: bool = True,
) -> TypeTag:
    """Identify a group of order 2N (N odd) given its elements and product.

    The odd-order elements form the unique index-2 subgroup. If it is cyclic
    the group is Z_N x| Z_2, which is M(k, l) with l = |center| (or cyclic
    when abelian). Anything else lands in the order-profile bucket.
    """
    size = len(elements)
    if size % 2 or (size // 2) % 2 == 0:
        raise ValueError(f"group size {size} is not twice an odd number")
    n = size // 2
    if check_closure:
        members = set(elements)
        if len(members) != size:
            raise ValueError("duplicate elements")
        for x in elements:
            for y in elements:
                if mul_oracle(x, y) not in members:
                    raise ValueError("elements are not closed under the product")
    idempotents = [x for x in elements if mul_oracle(x, x) == x]
    if len(idempotents) != 1:
        raise ValueError("input is not a group: no unique identity")
    e = idempotents[0]
    orders = _orders(elements, mul_oracle, e)
    if n not in {o for x, o in orders.items() if o % 2}:
        return TypeTag.other(Counter(orders.values()).items())
    center = [x for x in elements if all(mul_oracle(x, y) == mul_oracle(y, x) for y in elements)]
    if len(center) == size:
        return TypeTag.mtype(1, n)
    l = len(center)
    k = n // l
    assert gcd(k, l) == 1, (k, l)
    return TypeTag.mtype(k, l)


def classify_params(params: MklParams) -> TypeTag:
    """Classification normal form of M(k, l) itself (Other when gcd(k, l) > 1)."""
    elements = all_elements(params)
    return classify_order_2N_group(elements, lambda x, y: mul(params, x, y), check_closure=False)
