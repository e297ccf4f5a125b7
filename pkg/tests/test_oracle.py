import dataclasses
import itertools

import pytest

from hgcount.formula import e_formula, e_prime_formula
from hgcount.group import MklParams, SizeGuardError, TypeTag, aut_order, classify_params
from hgcount.holomorph import HolElement, hol_identity, hol_inverse, hol_mul, hol_size
from hgcount.numtheory import coprime_factorizations, geometric_sum
from hgcount.oracle import (
    RegularSubgroup,
    e_oracle,
    e_prime_oracle,
    enumerate_regular_embeddings,
    find_regular_subgroups,
    is_regular_subgroup,
    resolve_workers,
    skew_brace_classes,
    structural_claims,
    subgroup_inventory,
    verify_appendix_equations,
)

D6, C6 = MklParams(3, 1), MklParams(1, 3)


def mtypes(n):
    return [MklParams(k, l) for k, l in coprime_factorizations(n)]


def test_left_regular_copy_is_found():
    idf = hol_identity(D6).f
    subs = find_regular_subgroups(D6)
    left = [s for s in subs if all(h.f == idf for h in s.elements)]
    assert len(left) == 1
    assert sorted(h.g for h in left[0].elements) == sorted({h.g for s in subs for h in s.elements})


def test_d6_inventory():
    # e(C6, D6) = 2 forces e'(C6, D6) = 2 * |Aut D6| / |Aut C6| = 6
    assert subgroup_inventory(D6) == {TypeTag.mtype(1, 3): 6, TypeTag.mtype(3, 1): 2}


def test_noncoprime_has_no_dihedral_regular_subgroup():
    inventory = subgroup_inventory(MklParams(3, 3))
    assert TypeTag.mtype(9, 1) not in inventory
    assert all(not tag.is_mtype for tag in inventory)
    assert sum(inventory.values()) == len(find_regular_subgroups(MklParams(3, 3)))


@pytest.mark.parametrize("gamma, g, expected", [(D6, D6, 2), (C6, C6, 1), (MklParams(15, 1), MklParams(15, 1), 4)])
def test_e_prime_oracle_examples(gamma, g, expected):
    assert e_prime_oracle(gamma, g) == expected


@pytest.mark.parametrize("gamma, g, expected", [(D6, C6, 3), (C6, D6, 2), (C6, C6, 1)])
def test_e_oracle_examples(gamma, g, expected):
    assert e_oracle(gamma, g) == expected


def test_oracle_rejects_order_mismatch():
    with pytest.raises(ValueError):
        e_prime_oracle(D6, MklParams(5, 1))


def test_size_guard():
    with pytest.raises(SizeGuardError):
        find_regular_subgroups(MklParams(15, 1), max_size=1000)


@pytest.mark.parametrize(
    "g", [p for n in (1, 3, 5, 7, 9) for p in mtypes(n)] + [MklParams(3, 3)], ids=str
)
def test_backtrack_and_closure_agree(g):
    back = find_regular_subgroups(g)
    closure = find_regular_subgroups(g, method="closure")
    assert [s.signature for s in back] == [s.signature for s in closure]
    assert [s.type_tag for s in back] == [s.type_tag for s in closure]


@pytest.mark.parametrize("g", [MklParams(3, 1), MklParams(1, 9), MklParams(3, 3), MklParams(5, 3)], ids=str)
def test_every_subgroup_is_regular(g):
    subs = find_regular_subgroups(g)
    assert len({s.signature for s in subs}) == len(subs)
    assert [s.signature for s in subs] == sorted(s.signature for s in subs)
    for s in subs:
        assert is_regular_subgroup(g, s) == {
            "closed": True, "order": True, "trivial_stabilizer": True, "transitive": True
        }


def test_regularity_predicate_rejects_non_regular():
    g = D6
    auts = [HolElement(hol_identity(g).g, f) for f in {h.f for s in find_regular_subgroups(g) for h in s.elements}]
    stabilizer_heavy = RegularSubgroup(g, tuple(sorted(auts)), classify_params(g))
    verdict = is_regular_subgroup(g, stabilizer_heavy)
    assert not all(verdict.values())


def test_serial_and_parallel_agree():
    g = MklParams(5, 3)
    from hgcount import oracle

    serial = find_regular_subgroups(g)
    oracle._SUBGROUP_CACHE.pop((g, "backtrack"), None)
    parallel = find_regular_subgroups(g, workers=2)
    assert [s.signature for s in serial] == [s.signature for s in parallel]
    assert resolve_workers(0) >= 1 and resolve_workers(3) == 3


@pytest.mark.parametrize("n", [3, 5, 7, 9, 15])
def test_formula_matches_oracle(n):
    for gamma, g in itertools.product(mtypes(n), repeat=2):
        assert e_prime_oracle(gamma, g) == e_prime_formula(gamma, g)
        assert e_oracle(gamma, g) == e_formula(gamma, g)


def test_other_bucket_is_reported():
    g = MklParams(3, 3)
    inv = subgroup_inventory(g)
    assert sum(inv.values()) == len(find_regular_subgroups(g)) == 32
    assert {dict(tag.profile)[2] for tag in inv} == {1, 3, 9}
    assert subgroup_inventory(MklParams(1, 9)) == {TypeTag.mtype(1, 9): 3, TypeTag.mtype(9, 1): 1}


def test_embeddings_d6():
    records = enumerate_regular_embeddings(D6, D6)
    assert len(records) == 12
    assert all(r.image_s.g.sexp == 1 for r in records)


@pytest.mark.parametrize("n", [3, 9, 15])
def test_embedding_counts_and_structure(n):
    for gamma, g in itertools.product(mtypes(n), repeat=2):
        records = enumerate_regular_embeddings(gamma, g)
        assert len(records) == e_prime_oracle(gamma, g) * aut_order(gamma)
        for record in records:
            assert all(structural_claims(record).values())
            report = verify_appendix_equations(record)
            assert report.case == 1
            assert report.passed, report.failures
            assert sorted(report.results) == [f"e{i:03d}" for i in list(range(1, 14)) + list(range(27, 40))]


def test_degenerate_identity_triple():
    e0 = hol_identity(D6)
    record = dataclasses.replace(enumerate_regular_embeddings(D6, D6)[0], image_r=e0, image_s=e0, image_t=e0)
    report = verify_appendix_equations(record)
    assert report.case == 0 and report.passed
    assert "e014" in report.results
    assert record not in enumerate_regular_embeddings(D6, D6)


@pytest.mark.parametrize("gamma, g", [(D6, D6), (C6, D6), (MklParams(3, 5), MklParams(15, 1)), (MklParams(15, 1), MklParams(5, 3))], ids=str)
def test_perturbed_records_fail(gamma, g):
    k2 = g.k
    for record in enumerate_regular_embeddings(gamma, g):
        s = record.image_s
        d1 = s.f.d
        t = record.image_t
        mutated_t = t._replace(f=t.f._replace(c=(t.f.c + 1) % k2))
        report = verify_appendix_equations(dataclasses.replace(record, image_t=mutated_t))
        assert report.failures
        # c'' enters exactly e010, e038 and e039
        assert set(report.failures) <= {"e010", "e038", "e039"}
        assert "e038" in report.failures
        assert ("e039" in report.failures) == ((1 - d1) % k2 != 0)
        assert ("e010" in report.failures) == (geometric_sum(t.f.d, gamma.l, k2) != 0)


@pytest.mark.parametrize("gamma", [D6, C6, MklParams(5, 1), MklParams(3, 3)], ids=str)
def test_skew_brace_counts(gamma):
    classes = skew_brace_classes(gamma)
    subs = find_regular_subgroups(gamma)
    assert sum(c.subgroup_count for c in classes.values()) == len(subs)
    for c in classes.values():
        assert 1 <= c.orbit_count <= c.subgroup_count


def test_conjugation_preserves_regularity_and_type():
    subs = find_regular_subgroups(D6)
    by_signature = {s.signature: s.type_tag for s in subs}
    auts = sorted({h.f for s in subs for h in s.elements})
    for s in subs:
        for f in auts:
            phi = HolElement(hol_identity(D6).g, f)
            conj = tuple(sorted(hol_mul(D6, hol_mul(D6, phi, h), hol_inverse(D6, phi)) for h in s.elements))
            image = RegularSubgroup(D6, conj, s.type_tag)
            assert all(is_regular_subgroup(D6, image).values())
            assert by_signature[tuple(sorted(image.signature))] == s.type_tag


def test_holomorph_size_for_gate():
    assert hol_size(MklParams(21, 1)) == 10584
