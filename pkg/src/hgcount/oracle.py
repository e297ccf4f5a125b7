"""Brute-force ground truth on explicit holomorphs.

Regular subgroups of Hol(G) are enumerated as graphs of maps tau: G -> Aut(G)
(``g -> (g, tau(g))``) that are closed under the holomorph product. The
search assigns tau on the smallest element not yet covered, closes the
partial subgroup, and backtracks on the first point hit by two different
automorphisms. Each subgroup is reached along exactly one branch.

Internally a holomorph element ``(g, f)`` is the integer
``encode(g) * |Aut| + index(f)``, which sorts exactly like the canonical
``(encoded g, b, d, c)`` order.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from hgcount import group as grp
from hgcount.group import (
    DEFAULT_MAX_SIZE,
    MklParams,
    TypeTag,
    check_size,
    classify_order_2N_group,
    classify_params,
)
from hgcount.holomorph import HolElement, hol_size, to_paper_triple
from hgcount.numtheory import geometric_sum


class OracleConsistencyError(ArithmeticError):
    """Two brute-force counts that must agree did not (a bug, not a result)."""


class _Tables:
    """Multiplication tables for Hol(M(k, l)) over integer codes."""

    def __init__(self, params: MklParams):
        self.params = params
        self.elements = grp.all_elements(params, max_size=None)
        self.auts = grp.all_automorphisms(params, max_size=None)
        n, na = len(self.elements), len(self.auts)
        self.n, self.na = n, na
        aut_index = {f: idx for idx, f in enumerate(self.auts)}
        code = lambda x: grp.encode(params, x)  # noqa: E731
        self.gmul = [[code(grp.mul(params, x, y)) for y in self.elements] for x in self.elements]
        self.act = [[code(grp.aut_apply(params, f, x)) for x in self.elements] for f in self.auts]
        self.comp = [[aut_index[grp.aut_compose(params, f, g)] for g in self.auts] for f in self.auts]
        self.aut_inv = [aut_index[grp.aut_inverse(params, f)] for f in self.auts]
        self.id_aut = aut_index[grp.identity_aut(params)]
        self.e0 = self.id_aut  # code of (identity, id)
        self.size = n * na
        self._orders: list[int] | None = None
        self._admissible: list[bool] | None = None

    def mul(self, x: int, y: int) -> int:
        gx, fx = divmod(x, self.na)
        gy, fy = divmod(y, self.na)
        return self.gmul[gx][self.act[fx][gy]] * self.na + self.comp[fx][fy]

    def to_hol(self, h: int) -> HolElement:
        g, f = divmod(h, self.na)
        return HolElement(self.elements[g], self.auts[f])

    def to_code(self, h: HolElement) -> int:
        return grp.encode(self.params, h.g) * self.na + self.auts.index(h.f)

    def fixes_a_point(self, h: int) -> bool:
        g, f = divmod(h, self.na)
        row, act = self.gmul[g], self.act[f]
        return any(row[act[x]] == x for x in range(self.n))

    def orders(self) -> list[int]:
        if self._orders is None:
            orders = []
            for h in range(self.size):
                n, y = 1, h
                while y != self.e0:
                    y = self.mul(y, h)
                    n += 1
                orders.append(n)
            self._orders = orders
        return self._orders

    def admissible(self) -> list[bool]:
        """Elements whose every nontrivial power acts without fixed points.

        Only these can lie in a regular subgroup.
        """
        if self._admissible is None:
            fpf = [not self.fixes_a_point(h) for h in range(self.size)]
            fpf[self.e0] = True
            adm = []
            for h in range(self.size):
                ok, y = fpf[h], h
                while ok and y != self.e0:
                    ok = fpf[y]
                    y = self.mul(y, h)
                adm.append(ok)
            self._admissible = adm
        return self._admissible

    def close(self, members: dict[int, int], gens: list[int], new: int) -> dict[int, int] | None:
        """Subgroup generated by ``members`` (closed under ``gens``) and ``new``.

        Returns the map point -> element, or None as soon as two elements
        share a point (nontrivial stabilizer).
        """
        members = dict(members)
        na = self.na
        all_gens = gens + [new]
        queue = [(y, (new,)) for y in members.values()]
        while queue:
            y, use = queue.pop()
            for gen in use:
                z = self.mul(y, gen)
                point = z // na
                seen = members.get(point)
                if seen is None:
                    members[point] = z
                    queue.append((z, all_gens))
                elif seen != z:
                    return None
        return members


_TABLES: dict[MklParams, _Tables] = {}


def _tables(params: MklParams) -> _Tables:
    if params not in _TABLES:
        _TABLES[params] = _Tables(params)
    return _TABLES[params]


# -- regular subgroup search ---------------------------------------------------


def _candidates_by_point(t: _Tables) -> list[list[int]]:
    adm = t.admissible()
    by_point: list[list[int]] = [[] for _ in range(t.n)]
    for h in range(t.size):
        if adm[h] and h != t.e0:
            by_point[h // t.na].append(h)
    return by_point


def _backtrack(t: _Tables, first_choices: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    n = t.n
    by_point = _candidates_by_point(t)
    found: list[tuple[int, ...]] = []

    def extend(gens: list[int], members: dict[int, int], choices=None) -> None:
        if len(members) == n:
            found.append(tuple(sorted(members.values())))
            return
        point = next(x for x in range(n) if x not in members)
        for h in by_point[point] if choices is None else choices:
            grown = t.close(members, gens, h)
            if grown is not None and n % len(grown) == 0:
                extend(gens + [h], grown)

    start = {0: t.e0}
    if n == 1:
        return [(t.e0,)]
    extend([], start, first_choices)
    return found


def _backtrack_worker(params: MklParams, first_choices: list[int]) -> list[tuple[int, ...]]:
    return _backtrack(_tables(params), first_choices)


def _backtrack_parallel(params: MklParams, workers: int) -> list[tuple[int, ...]]:
    t = _tables(params)
    if t.n == 1:
        return _backtrack(t)
    first = _candidates_by_point(t)[1]
    chunks = [first[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_backtrack_worker, [params] * workers, chunks)
        return [s for part in parts for s in part]


def _closure_search(t: _Tables) -> list[tuple[int, ...]]:
    """Grow semiregular subgroups one admissible generator at a time.

    Independent of the transversal search: it walks the lattice of subgroups
    with trivial point stabilizers, starting from cyclic ones, and keeps the
    joins that stay semiregular.
    """
    n, na = t.n, t.na
    adm = t.admissible()
    cands = [h for h in range(t.size) if adm[h] and h != t.e0]
    base = {0: t.e0}
    frontier: dict[frozenset, tuple[list[int], dict[int, int]]] = {}
    for h in cands:
        m = t.close(base, [], h)
        if m is not None:
            frontier.setdefault(frozenset(m.values()), ([h], m))
    seen = set(frontier)
    found = set()
    while frontier:
        nxt = {}
        for key, (gens, members) in frontier.items():
            if len(members) == n:
                found.add(tuple(sorted(members.values())))
                continue
            for h in cands:
                if h // na in members:
                    continue
                m = t.close(members, gens, h)
                if m is None or n % len(m):
                    continue
                mkey = frozenset(m.values())
                if mkey not in seen:
                    seen.add(mkey)
                    nxt[mkey] = (gens + [h], m)
        frontier = nxt
    if n == 1:
        found.add((t.e0,))
    return sorted(found)


@dataclass(frozen=True)
class RegularSubgroup:
    params: MklParams
    elements: tuple[HolElement, ...]
    type_tag: TypeTag
    codes: tuple[int, ...] = field(repr=False, compare=False, default=())

    @property
    def signature(self) -> tuple[tuple[int, int, int, int], ...]:
        return tuple((grp.encode(self.params, h.g), h.f.b, h.f.d, h.f.c) for h in self.elements)


_SUBGROUP_CACHE: dict[tuple[MklParams, str], list[tuple[tuple[int, ...], TypeTag]]] = {}


def _subgroup_codes(params: MklParams, method: str, workers: int) -> list[tuple[tuple[int, ...], TypeTag]]:
    key = (params, method)
    if key not in _SUBGROUP_CACHE:
        t = _tables(params)
        if method == "backtrack":
            raw = _backtrack_parallel(params, workers) if workers > 1 else _backtrack(t)
        elif method == "closure":
            raw = _closure_search(t)
        else:
            raise ValueError(f"unknown method {method!r}")
        raw = sorted(set(raw))
        _SUBGROUP_CACHE[key] = [(codes, classify_order_2N_group(codes, t.mul)) for codes in raw]
    return _SUBGROUP_CACHE[key]


def resolve_workers(parallelism: int) -> int:
    return (os.cpu_count() or 1) if parallelism == 0 else parallelism


def find_regular_subgroups(
    g: MklParams,
    max_size: int | None = DEFAULT_MAX_SIZE,
    workers: int = 1,
    method: str = "backtrack",
) -> list[RegularSubgroup]:
    """Every regular subgroup of Hol(g), classified, sorted by signature.

    ``method="closure"`` runs the independent generator-closure search
    instead of transversal backtracking; both must agree.
    """
    check_size(f"Hol({g})", hol_size(g), max_size)
    t = _tables(g)
    return [
        RegularSubgroup(g, tuple(t.to_hol(h) for h in codes), tag, codes)
        for codes, tag in _subgroup_codes(g, method, workers)
    ]


def subgroup_inventory(g: MklParams, max_size: int | None = DEFAULT_MAX_SIZE, workers: int = 1) -> dict[TypeTag, int]:
    counts = Counter(s.type_tag for s in find_regular_subgroups(g, max_size, workers))
    return dict(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))


def _check_orders(gamma: MklParams, g: MklParams) -> None:
    if gamma.order != g.order:
        raise ValueError(f"orders differ: |{gamma}| = {gamma.order}, |{g}| = {g.order}")


def e_prime_oracle(gamma: MklParams, g: MklParams, max_size: int | None = DEFAULT_MAX_SIZE, workers: int = 1) -> int:
    """Number of regular subgroups of Hol(g) isomorphic to gamma."""
    _check_orders(gamma, g)
    return subgroup_inventory(g, max_size, workers).get(classify_params(gamma), 0)


def e_oracle(gamma: MklParams, g: MklParams, max_size: int | None = DEFAULT_MAX_SIZE, workers: int = 1) -> int:
    value = Fraction(grp.aut_order(gamma), grp.aut_order(g)) * e_prime_oracle(gamma, g, max_size, workers)
    if value.denominator != 1:
        raise OracleConsistencyError(f"e({gamma}, {g}) = {value} is not an integer")
    return int(value)


def is_regular_subgroup(params: MklParams, sub: RegularSubgroup) -> dict[str, bool]:
    """Independent checks of a subgroup: closure, size, freeness, transitivity."""
    from hgcount.holomorph import hol_act, hol_mul

    members = set(sub.elements)
    e = grp.identity(params)
    return {
        "closed": all(hol_mul(params, x, y) in members for x in sub.elements for y in sub.elements),
        "order": len(members) == params.order,
        "trivial_stabilizer": all(
            h.f == grp.identity_aut(params) for h in sub.elements if h.g == e
        ),
        "transitive": {hol_act(params, h, e) for h in sub.elements} == set(grp.all_elements(params, None)),
    }


# -- regular embeddings --------------------------------------------------------


@dataclass(frozen=True)
class EmbeddingRecord:
    image_r: HolElement
    image_s: HolElement
    image_t: HolElement
    gamma: MklParams
    g: MklParams


def enumerate_regular_embeddings(
    gamma: MklParams, g: MklParams, max_size: int | None = DEFAULT_MAX_SIZE
) -> list[EmbeddingRecord]:
    """All (Phi(r), Phi(s), Phi(t)) in Hol(g) satisfying the relations of gamma
    and generating a regular subgroup of order 2N.

    Images are restricted to elements whose powers are fixed-point free, with
    the exact orders k1, 2 and l1 that injectivity forces.
    """
    _check_orders(gamma, g)
    check_size(f"Hol({g})", hol_size(g), max_size)
    t = _tables(g)
    orders, adm = t.orders(), t.admissible()
    e0, mul, n = t.e0, t.mul, t.n

    def pool(order: int) -> list[int]:
        if order == 1:
            return [e0]
        return [h for h in range(t.size) if adm[h] and orders[h] == order]

    rs, ss, ts = pool(gamma.k), pool(2), pool(gamma.l)
    records = []
    for r in rs:
        for s in ss:
            sr = mul(s, r)
            if mul(sr, sr) != e0:
                continue
            for tt in ts:
                if mul(r, tt) != mul(tt, r) or mul(s, tt) != mul(tt, s):
                    continue
                members = {0: e0}
                gens: list[int] = []
                for h in (r, s, tt):
                    if members is None:
                        break
                    covered = members.get(h // t.na)
                    if covered is not None:
                        if covered != h:
                            members = None
                        continue
                    members = t.close(members, gens, h)
                    gens.append(h)
                if members is not None and len(members) == n:
                    records.append(EmbeddingRecord(t.to_hol(r), t.to_hol(s), t.to_hol(tt), gamma, g))
    return records


def structural_claims(record: EmbeddingRecord) -> dict[str, bool]:
    """Shape forced on every regular embedding by the relation analysis."""
    r, s, t = record.image_r, record.image_s, record.image_t
    return {
        "s_has_sexp_1": s.g.sexp == 1,
        "r_has_sexp_0": r.g.sexp == 0,
        "t_has_sexp_0": t.g.sexp == 0,
        "r_has_b_1": r.f.b == 1,
        "r_has_d_1": r.f.d == 1,
    }


@dataclass
class AppendixReport:
    case: int  # the sexp of Phi(s)
    results: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    @property
    def failures(self) -> list[str]:
        return [name for name, ok in self.results.items() if not ok]


def verify_appendix_equations(record: EmbeddingRecord) -> AppendixReport:
    """Evaluate the congruences that the relations of gamma impose on the
    matrix coordinates of the three generator images.

    Common block e001-e013, then e014-e026 when Phi(s) has sexp 0 or
    e027-e039 when it has sexp 1.
    """
    k1, l1 = record.gamma.k, record.gamma.l
    k2, l2 = record.g.k, record.g.l
    a, b, i, j, c, d = to_paper_triple(record.g, record.image_r)
    a1, b1, i1, j1, c1, d1 = to_paper_triple(record.g, record.image_s)
    a2, b2, i2, j2, c2, d2 = to_paper_triple(record.g, record.image_t)

    def cong(lhs: int, rhs: int, m: int) -> bool:
        return (lhs - rhs) % m == 0

    f = geometric_sum
    eq = {
        "e001": cong(pow(b, k1, l2), 1, l2),
        "e002": cong(a * f(b, k1, l2), 0, l2),
        "e003": cong(i * f(d, k1, k2), 0, k2),
        "e004": cong(pow(d, k1, k2), 1, k2),
        "e005": cong(c * f(d, k1, k2), 0, k2),
        "e006": cong(pow(b2, l1, l2), 1, l2),
        "e007": cong(a2 * f(b2, l1, l2), 0, l2),
        "e008": cong(i2 * f(d2, l1, k2), 0, k2),
        "e009": cong(pow(d2, l1, k2), 1, k2),
        "e010": cong(c2 * f(d2, l1, k2), 0, k2),
        "e011": cong(a * (1 - b2), 0, l2),
        "e012": cong(i * (1 - d2), 0, k2),
        "e013": cong(c * (1 - d2), 0, k2),
    }
    if j1 == 0:
        eq |= {
            "e014": cong(b1 * b1, 1, l2),
            "e015": cong(a1 * (1 + b1), 0, l2),
            "e016": cong(d1 * d1, 1, k2),
            "e017": cong(c1 * (1 + d1), 0, k2),
            "e018": cong(i1 * (1 + d1), 0, k2),
            "e019": cong(b * b, 1, l2),
            "e020": cong(a * (b + b1) + a1 * (1 + b * b1), 0, l2),
            "e021": cong((i + i1) * (1 + d1), 0, k2),
            "e022": cong(d * d, 1, k2),
            "e023": cong(c * (d + d1) + c1 * (1 + d * d1), 0, k2),
            "e024": cong(a2 * (1 - b1), a1 * (1 - b2), l2),
            "e025": cong(i2 * (1 - d1), i1 * (1 - d2), k2),
            "e026": cong(c2 * (1 - d1), c1 * (1 - d2), k2),
        }
    else:
        eq |= {
            "e027": cong(b1 * b1, 1, l2),
            "e028": cong(a1 * (1 + b1), 0, l2),
            "e029": cong(d1 * d1, 1, k2),
            "e030": cong(c1 * (1 + d1), 0, k2),
            "e031": cong(i1 * (1 - d1), c1, k2),
            "e032": cong(b * b, 1, l2),
            "e033": cong(a * (b + b1) + a1 * (1 + b * b1), 0, l2),
            "e034": cong((i + i1) * (1 - d1), d1 * c + c1, k2),
            "e035": cong(d * d, 1, k2),
            "e036": cong(c * (d + d1) + c1 * (1 + d * d1), 0, k2),
            "e037": cong(a2 * (1 - b1), a1 * (1 - b2), l2),
            "e038": cong(i1 - i2 * d1, i2 + i1 * d2 + c2, k2),
            "e039": cong(c2 * (1 - d1), c1 * (1 - d2), k2),
        }
    return AppendixReport(j1, eq)


# -- skew braces -----------------------------------------------------------------


@dataclass(frozen=True)
class BraceClassCount:
    subgroup_count: int
    orbit_count: int


def skew_brace_classes(
    gamma: MklParams, max_size: int | None = DEFAULT_MAX_SIZE, workers: int = 1
) -> dict[TypeTag, BraceClassCount]:
    """Regular subgroups of Hol(gamma) per type, and their orbits under
    conjugation by Aut(gamma).

    The orbits are the isomorphism classes of skew braces with additive group
    gamma; the type is that of the multiplicative group.
    """
    subs = find_regular_subgroups(gamma, max_size, workers)
    t = _tables(gamma)
    na, act, comp, inv = t.na, t.act, t.comp, t.aut_inv

    def conjugate(codes: tuple[int, ...], phi: int) -> tuple[int, ...]:
        out = []
        for h in codes:
            x, f = divmod(h, na)
            out.append(act[phi][x] * na + comp[comp[phi][f]][inv[phi]])
        return tuple(sorted(out))

    tag_of = {s.codes: s.type_tag for s in subs}
    seen: set[tuple[int, ...]] = set()
    subgroups: Counter = Counter()
    orbits: Counter = Counter()
    for s in subs:
        subgroups[s.type_tag] += 1
        if s.codes in seen:
            continue
        orbits[s.type_tag] += 1
        for phi in range(na):
            image = conjugate(s.codes, phi)
            if tag_of.get(image) != s.type_tag:
                raise OracleConsistencyError("conjugate of a regular subgroup left the inventory")
            seen.add(image)
    return {
        tag: BraceClassCount(subgroups[tag], orbits[tag])
        for tag in sorted(subgroups, key=lambda tg: tg.sort_key())
    }
