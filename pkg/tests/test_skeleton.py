"""Skeleton extraction is the subtlest construction here, so these tests
recheck its promises against independently written scans, not just the
package's own verifiers."""
import pytest

from conftest import (
    discrete,
    indiscrete,
    three_object_one_iso,
    walking_arrow,
    walking_iso,
)
from fincat.category import Category, Functor, Morphism, require_valid
from fincat.constructions import TieBreak
from fincat.errors import NotASkeleton
from fincat.skeleton import (
    build_skeleton,
    find_inverse,
    induced_iso_map,
    iso_classes,
    iso_subcategory,
    skeleton_uniqueness,
    verify_skeleton,
)

from oracles import brute_force_iso_pairs

SEED7 = TieBreak("seed", 7)


class TestIsoClasses:
    def test_indiscrete_two_has_one_class(self):
        _, classes = iso_classes(indiscrete(2))
        assert len(classes.representatives) == 1

    def test_discrete_has_n_classes(self):
        for n in (1, 2, 4):
            _, classes = iso_classes(discrete(n))
            assert len(classes.representatives) == n

    def test_three_objects_one_iso_pair(self):
        cat = three_object_one_iso()
        relation, classes = iso_classes(cat)
        assert len(classes.representatives) == 2
        assert classes.class_of("a") == classes.class_of("b") == "a"
        assert classes.class_of("c") == "c"
        # oracle agreement on the full pairing
        oracle = brute_force_iso_pairs(cat)
        for x in cat.objects:
            for y in cat.objects:
                assert relation.pairing.value(x, y) == ((x, y) in oracle)

    def test_witnesses_compose_to_identities(self):
        cat = three_object_one_iso()
        relation, _ = iso_classes(cat)
        i, j = relation.witnesses[("a", "b")]
        assert cat.compose(i, j) == "id_a" and cat.compose(j, i) == "id_b"

    def test_iso_subcategory_is_a_category_of_isos(self):
        cat = walking_iso()
        sub = iso_subcategory(cat)
        require_valid(sub)
        assert sorted(sub.morphism_names) == sorted(cat.morphism_names)
        arrow_sub = iso_subcategory(walking_arrow())
        require_valid(arrow_sub)
        assert sorted(arrow_sub.morphism_names) == ["id_o0", "id_o1"]

    def test_relation_is_an_equivalence(self, skeleton_corpus):
        for cat in skeleton_corpus:
            relation, _ = iso_classes(cat)
            relation.pairing.check_laws()  # raises on any law violation


class TestInducedIsoMap:
    def test_identity_functor_induces_identity(self):
        cat = three_object_one_iso()
        induced = induced_iso_map(Functor.identity(cat))
        assert induced.assignment == {"a": "a", "c": "c"}

    def test_constant_functor_induces_constant(self):
        arrow = walking_arrow()
        constant = Functor(arrow, arrow, {"o0": "o0", "o1": "o0"},
                           {"a": "id_o0", "id_o0": "id_o0", "id_o1": "id_o0"})
        induced = induced_iso_map(constant)
        assert set(induced.assignment.values()) == {"o0"}

    def test_functoriality_on_a_composite(self):
        wiso = walking_iso()
        cross = Functor(wiso, wiso, {"x": "y", "y": "x"},
                        {"u": "v", "v": "u", "id_x": "id_y", "id_y": "id_x"})
        composite = cross.then(cross)
        left = induced_iso_map(composite)
        right = induced_iso_map(cross).then(induced_iso_map(cross))
        assert left.assignment == right.assignment


def assert_skeleton_contract(cat: Category, result) -> None:
    """Re-verify the whole output contract with independent scans."""
    S, s, q, theta2 = (result.skeletal, result.inclusion, result.retraction,
                       result.theta2)
    # S is skeletal
    _, classes = iso_classes(S)
    assert len(classes.representatives) == len(S.objects)
    # q after s is exactly the identity of S
    assert s.then(q) == Functor.identity(S)
    # theta2 runs from s∘q to the identity, componentwise invertible,
    # identity at every chosen object
    composite = q.then(s)
    for a in cat.objects:
        comp = theta2.components[a]
        assert cat.dom(comp) == composite.object_map[a]
        assert cat.cod(comp) == a
        assert find_inverse(cat, comp) is not None
    for cls, chosen in result.chosen.items():
        assert theta2.components[chosen] == cat.identities[chosen]
    # every naturality square, scanned directly
    for m in cat.morphisms:
        left = cat.compose(composite.morph_map[m.name], theta2.components[m.cod])
        right = cat.compose(theta2.components[m.dom], m.name)
        assert left == right
    assert verify_skeleton(cat, s).ok


class TestBuildSkeleton:
    def test_indiscrete_two_collapses_to_terminal(self):
        cat = indiscrete(2)
        result = build_skeleton(cat)
        assert len(result.skeletal.objects) == 1
        assert len(result.skeletal.morphisms) == 1
        assert_skeleton_contract(cat, result)

    def test_already_skeletal_input_is_fixed(self):
        for cat in (discrete(3), walking_arrow()):
            result = build_skeleton(cat)
            assert result.skeletal.objects.elements == cat.objects.elements
            assert result.inclusion.then(result.retraction) == Functor.identity(
                result.skeletal)
            assert result.retraction.then(result.inclusion) == Functor.identity(cat)
            assert all(result.theta2.components[a] == cat.identities[a]
                       for a in cat.objects)
            assert_skeleton_contract(cat, result)

    def test_walking_iso_collapses(self):
        cat = walking_iso()
        result = build_skeleton(cat)
        assert len(result.skeletal.objects) == 1
        assert len(result.skeletal.morphisms) == 1
        assert_skeleton_contract(cat, result)

    def test_corpus_contract(self, skeleton_corpus):
        for cat in skeleton_corpus:
            assert_skeleton_contract(cat, build_skeleton(cat))

    def test_seeded_tie_break_still_satisfies_contract(self, skeleton_corpus):
        for cat in skeleton_corpus:
            assert_skeleton_contract(cat, build_skeleton(cat, SEED7))

    def test_seeded_tie_break_can_choose_differently(self):
        cat = indiscrete(4)
        lex = build_skeleton(cat)
        assert lex.chosen == {"o0": "o0"}
        seeded = {build_skeleton(cat, TieBreak("seed", n)).chosen["o0"]
                  for n in range(8)}
        assert len(seeded) > 1


class TestVerifySkeleton:
    def test_build_output_passes(self, skeleton_corpus):
        for cat in skeleton_corpus:
            result = build_skeleton(cat)
            assert verify_skeleton(cat, result.inclusion).ok

    def test_non_full_subcategory_fails_morphism_bijectivity(self):
        parallel = Category.build(
            "parallel", ["p", "q"],
            [Morphism("f", "p", "q"), Morphism("g", "p", "q")])
        sub = Category.build("sub", ["p", "q"], [Morphism("f", "p", "q")])
        inclusion = Functor(sub, parallel, {"p": "p", "q": "q"},
                            {"f": "f", "id_p": "id_p", "id_q": "id_q"})
        report = verify_skeleton(parallel, inclusion)
        assert any(f.kind == "MorphismSetNotBijective" for f in report.findings)

    def test_missing_class_fails_bijectivity(self):
        two = discrete(2)
        dot = Category.build("dot", ["x"], [])
        inclusion = Functor(dot, two, {"x": "o0"}, {"id_x": "id_o0"})
        report = verify_skeleton(two, inclusion)
        assert any(f.kind == "IsoClassNotBijective" for f in report.findings)

    def test_non_skeletal_source_is_reported(self):
        wiso = walking_iso()
        report = verify_skeleton(wiso, Functor.identity(wiso))
        assert any(f.kind == "NotSkeletal" for f in report.findings)


class TestSkeletonUniqueness:
    def test_lex_and_seeded_skeleta_are_isomorphic(self, skeleton_corpus):
        for cat in skeleton_corpus:
            first = build_skeleton(cat)
            second = build_skeleton(cat, SEED7)
            iso = skeleton_uniqueness(first.inclusion, second.inclusion)
            T = iso.functor
            assert sorted(T.object_map.values()) == sorted(
                second.skeletal.objects.elements)
            # witness really relates second∘T with first, naturally
            left = T.then(second.inclusion)
            for m in first.skeletal.morphisms:
                lhs = cat.compose(left.morph_map[m.name],
                                  iso.witness.components[m.cod])
                rhs = cat.compose(iso.witness.components[m.dom],
                                  first.inclusion.morph_map[m.name])
                assert lhs == rhs

    def test_same_skeleton_gives_identity_comparison(self):
        cat = indiscrete(3)
        result = build_skeleton(cat)
        iso = skeleton_uniqueness(result.inclusion, result.inclusion)
        assert iso.functor == Functor.identity(result.skeletal)

    def test_opposite_choices_on_walking_iso(self):
        cat = walking_iso()
        lex = build_skeleton(cat)  # chooses x
        other = None
        for n in range(32):
            candidate = build_skeleton(cat, TieBreak("seed", n))
            if candidate.chosen != lex.chosen:
                other = candidate
                break
        assert other is not None, "no seed picked the other representative"
        iso = skeleton_uniqueness(lex.inclusion, other.inclusion)
        assert len(iso.functor.object_map) == 1

    def test_rejects_non_skeleta(self):
        wiso = walking_iso()
        with pytest.raises(NotASkeleton):
            skeleton_uniqueness(Functor.identity(wiso), Functor.identity(wiso))

    def test_skeleton_with_renamed_morphisms(self):
        # a skeleton presented with its own morphism names exercises the
        # inverse lookup through the inclusion's morphism bijection
        cat = three_object_one_iso()
        built = build_skeleton(cat)
        S = built.skeletal
        renamed = Category(
            "renamed", S.objects,
            [Morphism(f"w_{m.name}", m.dom, m.cod) for m in S.morphisms],
            {obj: f"w_{ident}" for obj, ident in S.identities.items()},
            {(f"w_{f}", f"w_{g}"): f"w_{h}"
             for (f, g), h in S.composition.items()})
        require_valid(renamed)
        inclusion = Functor(renamed, cat,
                            dict(built.inclusion.object_map),
                            {f"w_{m}": built.inclusion.morph_map[m]
                             for m in S.morphism_names})
        assert verify_skeleton(cat, inclusion).ok
        iso = skeleton_uniqueness(built.inclusion, inclusion)
        assert sorted(iso.functor.object_map) == sorted(S.objects.elements)
        back = skeleton_uniqueness(inclusion, built.inclusion)
        assert sorted(back.functor.morph_map.values()) == sorted(S.morphism_names)

    def test_iso_relation_preserved_by_functors(self, skeleton_corpus):
        # any functor sends isomorphic objects to isomorphic objects
        for cat in skeleton_corpus:
            result = build_skeleton(cat)
            relation, _ = iso_classes(cat)
            q = result.retraction
            target_relation, _ = iso_classes(result.skeletal)
            for x in cat.objects:
                for y in cat.objects:
                    if relation.pairing.value(x, y):
                        assert target_relation.pairing.value(
                            q.object_map[x], q.object_map[y])
