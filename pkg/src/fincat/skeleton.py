"""Isomorphism classes, skeleton extraction, verification, and uniqueness.

The extraction follows a choice-then-correct scheme: pick one object per
isomorphism class, pick an isomorphism from every object to its chosen
representative, then correct the chosen family so that it is the identity
at every chosen object. Every promised property of the output is
re-verified exhaustively before the result is returned, so a returned
``SkeletonResult`` is a checked certificate, not a claim.
"""
from __future__ import annotations

from dataclasses import dataclass

from .constructions import (
    LEX,
    EquivalenceRelation,
    FnMap,
    TieBreak,
    quotient,
)
from .category import (
    Category,
    Functor,
    Morphism,
    NaturalTransformation,
    require_valid,
    require_valid_functor,
    validate_functor,
    validate_nat_transformation,
)
from .domain import FiniteCollection, LogicalDomain, make_domain
from .errors import FincatError, NotASkeleton, UnknownElement, ValidationFailed
from .report import Report


@dataclass(frozen=True)
class IsoRelation:
    """The "is there an isomorphism?" pairing on objects, with witnesses.

    For every related ordered pair one isomorphism and its inverse are
    recorded (the first found in table order).
    """

    category: Category
    pairing: EquivalenceRelation
    witnesses: dict[tuple[str, str], tuple[str, str]]


@dataclass(frozen=True)
class IsoClasses:
    """The quotient of objects by isomorphism, with its projection."""

    domain: LogicalDomain
    quotient_map: FnMap

    @property
    def representatives(self) -> tuple[str, ...]:
        return self.domain.representatives

    def class_of(self, obj: str) -> str:
        return self.domain.canonical(obj)


def find_inverse(c: Category, name: str) -> str | None:
    """First two-sided inverse of a morphism in table order, if any."""
    m = c.morphism(name)
    for j in c.hom(m.cod, m.dom):
        if (c.compose(name, j) == c.identities[m.dom]
                and c.compose(j, name) == c.identities[m.cod]):
            return j
    return None


def is_isomorphism(c: Category, name: str) -> bool:
    return find_inverse(c, name) is not None


def iso_classes(c: Category) -> tuple[IsoRelation, IsoClasses]:
    """Compute the isomorphism relation by exhaustive inverse search and
    quotient the objects by it."""
    require_valid(c)
    witnesses: dict[tuple[str, str], tuple[str, str]] = {}
    yes_pairs = []
    for x in c.objects:
        for y in c.objects:
            found = None
            for i in c.hom(x, y):
                j = find_inverse(c, i)
                if j is not None:
                    found = (i, j)
                    break
            if found is not None:
                yes_pairs.append((x, y))
                witnesses[(x, y)] = found
    rel = EquivalenceRelation(c.objects, yes_pairs)
    relation = IsoRelation(c, rel, witnesses)
    dom = quotient(rel, name=f"{c.name}_iso")
    objects = make_domain(c.objects, name=f"{c.name}_obj")
    qmap = FnMap(objects, dom, {x: dom.canonical(x) for x in c.objects},
                 name=f"{c.name}_iso_q")
    return relation, IsoClasses(dom, qmap)


def iso_subcategory(c: Category) -> Category:
    """The subcategory of all objects and only the isomorphisms."""
    require_valid(c)
    iso_names = [m.name for m in c.morphisms if is_isomorphism(c, m.name)]
    kept = set(iso_names)
    table = {pair: h for pair, h in c.composition.items()
             if pair[0] in kept and pair[1] in kept}
    return Category(f"{c.name}_iso", c.objects,
                    [c.morphism(n) for n in iso_names], dict(c.identities), table)


def induced_iso_map(f: Functor) -> FnMap:
    """The function a functor induces on isomorphism classes.

    Verified well-defined: isomorphic objects land in isomorphic images.
    """
    require_valid_functor(f)
    _, src = iso_classes(f.source)
    _, dst = iso_classes(f.target)
    for x in f.source.objects:
        rep = src.class_of(x)
        if dst.class_of(f.object_map[x]) != dst.class_of(f.object_map[rep]):
            raise FincatError(
                f"induced class map is not well defined at {x!r}")
    return FnMap(src.domain, dst.domain,
                 {r: dst.class_of(f.object_map[r]) for r in src.representatives},
                 name="induced")


@dataclass(frozen=True)
class SkeletonResult:
    """A skeleton with its inclusion, retraction, and comparison witness.

    ``theta2`` runs from ``s`` after ``q`` to the identity functor; its
    component at any chosen object is an identity, and ``chosen`` and
    ``coherence`` retain the raw choice data (class -> chosen object, and
    per object the corrected isomorphism onto its chosen representative).
    """

    skeletal: Category
    inclusion: Functor
    retraction: Functor
    theta2: NaturalTransformation
    chosen: dict[str, str]
    coherence: dict[str, str]


@dataclass(frozen=True)
class SkeletonIso:
    """An isomorphism between two skeleta of one category, with the natural
    equivalence witnessing compatibility of the inclusions."""

    functor: Functor
    witness: NaturalTransformation


def _retraction(c: Category, s: Functor, tie_break: TieBreak) -> tuple[Functor, dict[str, str]]:
    """Extend the class projection along a skeleton inclusion ``s``.

    Returns the retraction functor and the corrected coherence family
    ``theta``: per object ``a`` an isomorphism from ``a`` to the inclusion
    image of its class, chosen per tie-break, then corrected so that
    ``theta`` is an identity on every image object.
    """
    relation, _ = iso_classes(c)
    pairing = relation.pairing

    # Each object's class has exactly one preimage object in the skeleton.
    class_of: dict[str, str] = {}
    for a in c.objects:
        for x in s.source.objects:
            if pairing.value(s.object_map[x], a):
                class_of[a] = x
                break
        else:
            raise FincatError(f"no skeleton object is isomorphic to {a!r}")

    def isos_onto(a: str, target_obj: str) -> list[str]:
        return [i for i in c.hom(a, target_obj) if is_isomorphism(c, i)]

    theta1: dict[str, str] = {}
    for a in c.objects:
        candidates = isos_onto(a, s.object_map[class_of[a]])
        theta1[a] = tie_break.order(candidates, context=f"theta:{a}")[0]

    def inverse(name: str) -> str:
        j = find_inverse(c, name)
        if j is None:
            raise FincatError(f"{name!r} lost its inverse")
        return j

    # Correct so the family is the identity at every chosen image object.
    theta: dict[str, str] = {}
    for a in c.objects:
        image = s.object_map[class_of[a]]
        theta[a] = c.compose(theta1[a], inverse(theta1[image]))

    # Morphism part of the retraction: conjugate by the coherence family,
    # then read the result back through the inclusion's morphism bijection.
    s_inverse: dict[str, str] = {}
    for m, image in s.morph_map.items():
        if image in s_inverse:
            raise FincatError("inclusion is not injective on morphisms")
        s_inverse[image] = m
    morph_map: dict[str, str] = {}
    for m in c.morphisms:
        conjugated = c.compose(c.compose(inverse(theta[m.dom]), m.name), theta[m.cod])
        if conjugated not in s_inverse:
            raise FincatError(
                f"conjugate of {m.name!r} is outside the inclusion image")
        morph_map[m.name] = s_inverse[conjugated]
    q = Functor(c, s.source, dict(class_of), morph_map)
    return q, theta


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise FincatError(f"skeleton construction failed: {message}")


def build_skeleton(c: Category, tie_break: TieBreak = LEX) -> SkeletonResult:
    """Extract a skeleton and verify every promised property of the result."""
    require_valid(c)
    relation, classes = iso_classes(c)

    # Section of the class projection: one member per class, per tie-break.
    chosen: dict[str, str] = {}
    for rep in classes.representatives:
        members = classes.domain.class_members(rep)
        chosen[rep] = tie_break.order(list(members), context=f"h:{rep}")[0]
    image = {chosen[rep]: rep for rep in classes.representatives}

    kept = [m for m in c.morphisms if m.dom in image and m.cod in image]
    skeletal = Category(
        f"skel_{c.name}",
        FiniteCollection(classes.representatives),
        [Morphism(m.name, image[m.dom], image[m.cod]) for m in kept],
        {rep: c.identities[chosen[rep]] for rep in classes.representatives},
        {pair: h for pair, h in c.composition.items()
         if pair[0] in {m.name for m in kept} and pair[1] in {m.name for m in kept}},
    )
    require_valid(skeletal)

    inclusion = Functor(skeletal, c, dict(chosen),
                        {m.name: m.name for m in kept})
    require_valid_functor(inclusion)

    retraction, theta = _retraction(c, inclusion, tie_break)
    require_valid_functor(retraction)

    def inverse(name: str) -> str:
        j = find_inverse(c, name)
        _check(j is not None, f"component {name!r} has no inverse")
        return j

    theta2 = NaturalTransformation(
        retraction.then(inclusion), Functor.identity(c),
        {a: inverse(theta[a]) for a in c.objects})

    # Verification bundle; every clause of the output contract is rechecked.
    _check(inclusion.then(retraction) == Functor.identity(skeletal),
           "retraction after inclusion is not the identity")
    nat_report = validate_nat_transformation(theta2)
    _check(nat_report.ok, nat_report.render())
    for rep in classes.representatives:
        _check(theta[chosen[rep]] == c.identities[chosen[rep]],
               f"coherence at chosen object {chosen[rep]!r} is not the identity")
    for a in c.objects:
        _check(find_inverse(c, theta2.components[a]) == theta[a],
               f"component at {a!r} is not invertible")
    _, skel_classes = iso_classes(skeletal)
    _check(len(skel_classes.representatives) == len(skeletal.objects.elements),
           "result is not skeletal")
    verify = verify_skeleton(c, inclusion)
    _check(verify.ok, verify.render())

    return SkeletonResult(skeletal, inclusion, retraction, theta2, chosen, theta)


def verify_skeleton(c: Category, s: Functor) -> Report:
    """Check that ``s`` exhibits its source as a skeleton of ``c``:
    skeletal source, bijective on isomorphism classes, bijective on every
    morphism set."""
    require_valid(c)
    require_valid_functor(s)
    if s.target != c:
        raise UnknownElement("functor does not land in the given category")
    report = Report(f"skeleton of {c.name}")

    src_relation, src_classes = iso_classes(s.source)
    for rep in src_classes.representatives:
        members = src_classes.domain.class_members(rep)
        if len(members) > 1:
            report.add("NotSkeletal",
                       "isomorphic objects are distinct", (members[0], members[1]))

    _, dst_classes = iso_classes(c)
    image_classes = [dst_classes.class_of(s.object_map[x]) for x in s.source.objects]
    seen: dict[str, str] = {}
    for x, cls_ in zip(s.source.objects, image_classes):
        if cls_ in seen:
            report.add("IsoClassNotBijective",
                       "two objects land in one isomorphism class", (seen[cls_], x))
        seen[cls_] = x
    for cls_ in dst_classes.representatives:
        if cls_ not in seen:
            report.add("IsoClassNotBijective",
                       f"isomorphism class of {cls_!r} is not hit", (cls_,))

    for x in s.source.objects:
        for y in s.source.objects:
            images = [s.morph_map[m] for m in s.source.hom(x, y)]
            hom = s.target.hom(s.object_map[x], s.object_map[y])
            if len(set(images)) != len(images):
                report.add("MorphismSetNotBijective",
                           f"morphisms {x!r} -> {y!r} collapse", (x, y))
            elif set(images) != set(hom):
                report.add("MorphismSetNotBijective",
                           f"morphisms {x!r} -> {y!r} do not fill the image set",
                           (x, y))
    return report


def skeleton_uniqueness(s1: Functor, s2: Functor,
                        tie_break: TieBreak = LEX) -> SkeletonIso:
    """Compare two skeleta of one category.

    Builds the retraction for the second skeleton, composes it with the
    first inclusion, and verifies the result is an isomorphism of
    categories whose composite with the second inclusion is naturally
    equivalent to the first.
    """
    if s1.target != s2.target:
        raise UnknownElement("the two functors do not share a target")
    c = s1.target
    for s in (s1, s2):
        report = verify_skeleton(c, s)
        if not report.ok:
            raise NotASkeleton(report)

    q2, theta = _retraction(c, s2, tie_break)
    require_valid_functor(q2)
    T = s1.then(q2)
    report = validate_functor(T)
    if not report.ok:
        raise ValidationFailed(report)

    obj_images = [T.object_map[x] for x in T.source.objects]
    if (len(set(obj_images)) != len(obj_images)
            or set(obj_images) != set(T.target.objects.elements)):
        raise FincatError("comparison functor is not bijective on objects")
    morph_images = [T.morph_map[m] for m in T.source.morphism_names]
    if (len(set(morph_images)) != len(morph_images)
            or set(morph_images) != set(T.target.morphism_names)):
        raise FincatError("comparison functor is not bijective on morphisms")

    def inverse(name: str) -> str:
        j = find_inverse(c, name)
        if j is None:
            raise FincatError(f"{name!r} has no inverse")
        return j

    witness = NaturalTransformation(
        T.then(s2), s1,
        {x: inverse(theta[s1.object_map[x]]) for x in s1.source.objects})
    nat_report = validate_nat_transformation(witness)
    if not nat_report.ok:
        raise FincatError("uniqueness witness is not natural: "
                          + nat_report.render())
    return SkeletonIso(T, witness)
