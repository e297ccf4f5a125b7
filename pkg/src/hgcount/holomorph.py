"""Hol(M(k, l)) = M(k, l) x| Aut(M(k, l)) and its action on M(k, l).

A holomorph element is a pair ``(g, f)`` acting on the group by
``x -> g * f(x)``; the product is ``(g1, f1)(g2, f2) = (g1 f1(g2), f1 f2)``.

In matrix notation the pair with ``g = r^i s^j t^a`` and ``f = (b; d, c)``
is written ``((b a;0 1), r^i s^j, (d c;0 1))``: the first matrix is the
Hol(C_l) part, the second the Aut(D_2k) part.
"""

from __future__ import annotations

import re
from collections import Counter
from math import gcd
from typing import NamedTuple

from hgcount import group as grp
from hgcount.group import (
    DEFAULT_MAX_SIZE,
    AutElement,
    GroupElement,
    MklParams,
    check_size,
)
from hgcount.numtheory import geometric_sum, multiplicative_order


class HolElement(NamedTuple):
    g: GroupElement
    f: AutElement


def hol_identity(params: MklParams) -> HolElement:
    return HolElement(grp.identity(params), grp.identity_aut(params))


def hol_mul(params: MklParams, x: HolElement, y: HolElement) -> HolElement:
    return HolElement(
        grp.mul(params, x.g, grp.aut_apply(params, x.f, y.g)),
        grp.aut_compose(params, x.f, y.f),
    )


def hol_inverse(params: MklParams, x: HolElement) -> HolElement:
    f_inv = grp.aut_inverse(params, x.f)
    return HolElement(grp.aut_apply(params, f_inv, grp.inverse(params, x.g)), f_inv)


def hol_pow(params: MklParams, x: HolElement, n: int) -> HolElement:
    if n < 0:
        x, n = hol_inverse(params, x), -n
    result = hol_identity(params)
    while n:
        if n & 1:
            result = hol_mul(params, result, x)
        x = hol_mul(params, x, x)
        n >>= 1
    return result


def hol_act(params: MklParams, h: HolElement, x: GroupElement) -> GroupElement:
    return grp.mul(params, h.g, grp.aut_apply(params, h.f, x))


def hol_size(params: MklParams) -> int:
    return params.order * grp.aut_order(params)


def aut_element_order(params: MklParams, f: AutElement) -> int:
    """Order of an automorphism from its coordinates.

    The t-part has the multiplicative order of b mod l. The D-part is the
    affine map i -> d*i + c on Z_k: after ord(d) steps it becomes the
    translation by c * (1 + d + ... + d^(ord(d)-1)).
    """
    k = params.k
    b_order = multiplicative_order(f.b, params.l)
    d_order = multiplicative_order(f.d, k)
    shift = f.c * geometric_sum(f.d, d_order, k) % k
    affine_order = d_order * (k // gcd(k, shift))
    return b_order * affine_order // gcd(b_order, affine_order)


def hol_order(params: MklParams, x: HolElement) -> int:
    """Order via the automorphism part: x^ord(f) = (g', id) has order ord(g')."""
    n_f = aut_element_order(params, x.f)
    y = hol_pow(params, x, n_f)
    assert y.f == grp.identity_aut(params)
    return n_f * grp.element_order(params, y.g)


def hol_order_by_iteration(params: MklParams, x: HolElement) -> int:
    e0 = hol_identity(params)
    n, y = 1, x
    while y != e0:
        y = hol_mul(params, y, x)
        n += 1
    return n


def all_hol_elements(params: MklParams, max_size: int | None = DEFAULT_MAX_SIZE) -> list[HolElement]:
    """All elements, ordered lexicographically on (encoded g, b, d, c)."""
    check_size(f"Hol({params})", hol_size(params), max_size)
    auts = grp.all_automorphisms(params, max_size=None)
    return [HolElement(g, f) for g in grp.all_elements(params, max_size=None) for f in auts]


def sort_key(params: MklParams, h: HolElement) -> tuple[int, int, int, int]:
    return (grp.encode(params, h.g), h.f.b, h.f.d, h.f.c)


def order_census(params: MklParams, max_size: int | None = DEFAULT_MAX_SIZE) -> dict[int, int]:
    """Map element order -> number of elements of Hol(M(k, l)) with that order."""
    census = Counter(hol_order(params, h) for h in all_hol_elements(params, max_size))
    return dict(sorted(census.items()))


# -- matrix-triple rendering ---------------------------------------------


class PaperTriple(NamedTuple):
    """Matrix coordinates of a holomorph element: ((b a;0 1), r^i s^j, (d c;0 1))."""

    a: int
    b: int
    i: int
    j: int
    c: int
    d: int

    def __str__(self) -> str:
        return (
            f"(({self.b} {self.a};0 1), r{_sup(self.i)}s{_sup(self.j)}, "
            f"({self.d} {self.c};0 1))"
        )


_SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
_FROM_SUPERSCRIPTS = {v: k for k, v in zip("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")}


def _sup(n: int) -> str:
    return str(n).translate(_SUPERSCRIPTS)


def to_paper_triple(params: MklParams, h: HolElement) -> PaperTriple:
    return PaperTriple(a=h.g.texp, b=h.f.b, i=h.g.rexp, j=h.g.sexp, c=h.f.c, d=h.f.d)


def from_paper_triple(params: MklParams, t: PaperTriple) -> HolElement:
    return HolElement(
        grp.element(params, t.i, t.j, t.a),
        AutElement(grp._unit(t.b, params.l), grp._unit(t.d, params.k), t.c % params.k),
    )


_TRIPLE_RE = re.compile(
    r"\(\((\d+) (\d+);0 1\), r([⁰¹²³⁴⁵⁶⁷⁸⁹]+)s([⁰¹]), \((\d+) (\d+);0 1\)\)"
)


def parse_paper_triple(text: str) -> PaperTriple:
    m = _TRIPLE_RE.fullmatch(text.strip())
    if not m:
        raise ValueError(f"not a holomorph triple: {text!r}")
    b, a, i, j, d, c = m.groups()
    unsup = lambda s: int("".join(_FROM_SUPERSCRIPTS[ch] for ch in s))  # noqa: E731
    return PaperTriple(a=int(a), b=int(b), i=unsup(i), j=unsup(j), c=int(c), d=int(d))
