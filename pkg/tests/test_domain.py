import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fincat.domain import (
    BinaryFn,
    Detector,
    EqualityPairing,
    FiniteCollection,
    empty_detector,
    make_domain,
    powerset,
)
from fincat.errors import (
    DuplicateElement,
    NonReflexive,
    NonSymmetric,
    NonTransitive,
    ResourceLimit,
)


def ids(*names):
    return FiniteCollection(names)


class TestFiniteCollection:
    def test_keeps_first_appearance_order(self):
        c = ids("b", "a", "z")
        assert c.elements == ("b", "a", "z")
        assert c.position("z") == 2

    def test_rejects_duplicates(self):
        with pytest.raises(DuplicateElement):
            ids("a", "b", "a")

    def test_rejects_malformed_tokens(self):
        with pytest.raises(ValueError):
            ids("a b")
        with pytest.raises(ValueError):
            ids("")


class TestMakeDomain:
    def test_identity_pairing_by_default(self):
        d = make_domain(ids("a", "b", "c"))
        assert d.representatives == ("a", "b", "c")
        assert d.same("a", "a") and not d.same("a", "b")

    def test_non_symmetric_witness(self):
        carrier = ids("a", "b")
        pairing = EqualityPairing(carrier, [("a", "a"), ("b", "b"), ("a", "b")])
        with pytest.raises(NonSymmetric) as exc:
            make_domain(carrier, pairing)
        assert exc.value.witness == ("a", "b")

    def test_non_reflexive_witness(self):
        carrier = ids("a", "b")
        pairing = EqualityPairing(carrier, [("a", "a")])
        with pytest.raises(NonReflexive) as exc:
            make_domain(carrier, pairing)
        assert exc.value.witness == ("b",)

    def test_non_transitive_witness(self):
        carrier = ids("a", "b", "c")
        pairs = [(x, x) for x in "abc"] + [("a", "b"), ("b", "a"),
                                           ("b", "c"), ("c", "b")]
        with pytest.raises(NonTransitive) as exc:
            make_domain(carrier, EqualityPairing(carrier, pairs))
        assert exc.value.witness == ("a", "b", "c")

    def test_parity_pairing_has_two_representatives(self):
        carrier = ids("x0", "x1", "x2", "x3")
        pairing = EqualityPairing.from_function(
            carrier, lambda a, b: int(a[1:]) % 2 == int(b[1:]) % 2)
        d = make_domain(carrier, pairing)
        assert d.representatives == ("x0", "x1")
        assert d.canonical("x2") == "x0" and d.canonical("x3") == "x1"

    def test_canonicalization_is_idempotent(self):
        carrier = ids("a", "b", "c", "d")
        pairing = EqualityPairing.from_relation_pairs(carrier, [("a", "c")])
        d = make_domain(carrier, pairing)
        again = d.restrict(d.representatives)
        assert again.representatives == d.representatives
        assert all(again.canonical(r) == r for r in again.representatives)

    def test_equality_on_representatives_is_token_identity(self):
        carrier = ids("a", "b", "c", "d", "e")
        pairing = EqualityPairing.from_relation_pairs(
            carrier, [("a", "d"), ("b", "e")])
        d = make_domain(carrier, pairing)
        for r in d.representatives:
            for s in d.representatives:
                assert d.same(r, s) == (r == s)


class TestPowerset:
    def test_three_representatives_give_eight_members(self):
        p = powerset(make_domain(ids("a", "b", "c")))
        assert p.size == 8 and len(list(p)) == 8

    def test_empty_domain_has_one_member(self):
        p = powerset(make_domain(FiniteCollection([])))
        members = list(p)
        assert len(members) == 1 and members[0].yes == frozenset()

    def test_ten_representatives_give_1024(self):
        p = powerset(make_domain(ids(*[f"e{i}" for i in range(10)])))
        assert p.size == 1024

    def test_binary_counter_order(self):
        p = powerset(make_domain(ids("a", "b", "c")))
        expected = [(), ("a",), ("b",), ("a", "b"),
                    ("c",), ("a", "c"), ("b", "c"), ("a", "b", "c")]
        assert [m.yes_elements() for m in p] == expected

    def test_members_range_over_representatives_only(self):
        carrier = ids("a", "b", "c")
        pairing = EqualityPairing.from_relation_pairs(carrier, [("a", "c")])
        p = powerset(make_domain(carrier, pairing))
        assert p.size == 4
        assert all(m.domain.elements == ("a", "b") for m in p)

    def test_resource_limit(self):
        d = make_domain(ids(*[f"e{i}" for i in range(25)]))
        with pytest.raises(ResourceLimit):
            powerset(d)
        assert powerset(d, limit=25).size == 2 ** 25


class TestEmptyDetector:
    def test_detects_exactly_the_constantly_no_member(self):
        p = powerset(make_domain(ids("a", "b")))
        det = empty_detector(p)
        assert det(BinaryFn(p.member_domain, []))
        assert not det(BinaryFn(p.member_domain, ["a"]))

    def test_empty_domain_member_is_empty(self):
        p = powerset(make_domain(FiniteCollection([])))
        assert empty_detector(p)(p.member(0))

    def test_agrees_with_direct_scan_exhaustively(self):
        d = make_domain(ids("a", "b", "c", "d"))
        det = empty_detector(powerset(d))
        for member in powerset(d):
            assert det(member) == all(not member(e) for e in d.representatives)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=0, max_value=8), st.integers(min_value=0))
    def test_detector_matches_scan_on_random_members(self, k, bits):
        d = make_domain(ids(*[f"e{i}" for i in range(k)]))
        p = powerset(d)
        member = p.member(bits % p.size)
        assert empty_detector(p)(member) == (not member.yes)


class TestDetectorInterface:
    def test_rejects_members_of_other_domains(self):
        d = make_domain(ids("a"))
        other = make_domain(ids("b"))
        det = Detector.for_domain(d)
        with pytest.raises(Exception):
            det(BinaryFn(other.rep_collection, []))
