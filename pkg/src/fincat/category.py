"""Finite categories, functors, natural transformations, and their validators.

Composability is table-driven throughout: a pair composes exactly when the
declared endpoints chain, never because some equality test on objects says
so. Composition is written diagrammatically: ``compose(f, g)`` is "first f,
then g".
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .constructions import FnMap, IndexedFamily, disjoint_union
from .domain import BinaryFn, Detector, FiniteCollection, LogicalDomain, make_domain
from .errors import DuplicateElement, UnknownElement, ValidationFailed
from .report import Report


@dataclass(frozen=True)
class Morphism:
    name: str
    dom: str
    cod: str


class Category:
    """A finite category: objects, morphisms, identities, composition table.

    Instances are structurally sound (ids resolve, the table only mentions
    declared morphisms) but not necessarily lawful; ``validate_category``
    checks the axioms and reports every violation with a witness.
    """

    __slots__ = ("name", "objects", "morphisms", "identities", "composition",
                 "_by_name", "_hom", "_checked")

    def __init__(self, name: str, objects: FiniteCollection,
                 morphisms: Iterable[Morphism], identities: Mapping[str, str],
                 composition: Mapping[tuple[str, str], str]):
        self.name = name
        self.objects = objects
        self.morphisms = tuple(morphisms)
        self._by_name: dict[str, Morphism] = {}
        for m in self.morphisms:
            if m.name in self._by_name:
                raise DuplicateElement(f"duplicate morphism {m.name!r}")
            if m.dom not in objects:
                raise UnknownElement(f"morphism {m.name!r}: unknown object {m.dom!r}")
            if m.cod not in objects:
                raise UnknownElement(f"morphism {m.name!r}: unknown object {m.cod!r}")
            self._by_name[m.name] = m
        for obj, ident in identities.items():
            if obj not in objects:
                raise UnknownElement(f"identity declared for unknown object {obj!r}")
            if ident not in self._by_name:
                raise UnknownElement(f"identity {ident!r} is not a declared morphism")
        for (f, g), h in composition.items():
            for name_ in (f, g, h):
                if name_ not in self._by_name:
                    raise UnknownElement(f"composition mentions unknown {name_!r}")
        self.identities = dict(identities)
        self.composition = dict(composition)
        self._hom: dict[tuple[str, str], tuple[str, ...]] = {}
        for a in objects:
            for b in objects:
                self._hom[(a, b)] = tuple(m.name for m in self.morphisms
                                          if m.dom == a and m.cod == b)
        self._checked = False

    @classmethod
    def build(cls, name: str, objects: Iterable[str],
              morphisms: Iterable[Morphism],
              identities: Mapping[str, str] | None = None,
              composition: Mapping[tuple[str, str], str] | None = None) -> "Category":
        """Assemble a category, generating what the axioms force.

        Missing identities are created as ``id_<object>``, and composites
        with an identity on either side are filled in from the identity
        law; explicitly declared entries are kept untouched so a wrong
        declaration still surfaces in validation.
        """
        objs = objects if isinstance(objects, FiniteCollection) else FiniteCollection(objects)
        morphs = list(morphisms)
        names = {m.name for m in morphs}
        idents = dict(identities or {})
        for obj in objs:
            if obj in idents:
                continue
            generated = f"id_{obj}"
            if generated in names:
                raise DuplicateElement(
                    f"cannot generate identity {generated!r}: the id is taken")
            morphs.append(Morphism(generated, obj, obj))
            names.add(generated)
            idents[obj] = generated
        table = dict(composition or {})
        for m in morphs:
            left = (idents[m.dom], m.name)
            if m.dom in idents and left not in table:
                table[left] = m.name
            right = (m.name, idents[m.cod])
            if m.cod in idents and right not in table:
                table[right] = m.name
        return cls(name, objs, morphs, idents, table)

    def morphism(self, name: str) -> Morphism:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownElement(f"unknown morphism {name!r}") from None

    @property
    def morphism_names(self) -> tuple[str, ...]:
        return tuple(m.name for m in self.morphisms)

    def dom(self, name: str) -> str:
        return self.morphism(name).dom

    def cod(self, name: str) -> str:
        return self.morphism(name).cod

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        """Morphisms from a to b, in table order."""
        return self._hom.get((a, b), ())

    def is_identity(self, name: str) -> bool:
        m = self.morphism(name)
        return self.identities.get(m.dom) == name

    def composable(self, f: str, g: str) -> bool:
        return self.cod(f) == self.dom(g)

    def compose(self, f: str, g: str) -> str:
        """Diagrammatic composite of f then g, from the table."""
        try:
            return self.composition[(f, g)]
        except KeyError:
            raise UnknownElement(f"no composite recorded for ({f!r}, {g!r})") from None

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        for f in self.morphisms:
            for g in self.morphisms:
                if f.cod == g.dom:
                    yield (f.name, g.name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Category):
            return NotImplemented
        return (self.name == other.name and self.objects == other.objects
                and self.morphisms == other.morphisms
                and self.identities == other.identities
                and self.composition == other.composition)

    def __hash__(self) -> int:
        return hash((self.name, self.objects, self.morphisms))

    def __repr__(self) -> str:
        return (f"Category({self.name!r}, {len(self.objects)} objects, "
                f"{len(self.morphisms)} morphisms)")


def validate_category(c: Category) -> Report:
    """Check the category axioms, reporting every violation with a witness.

    Checks run in a fixed order (endpoints of table entries, completeness
    of the table, identity laws, associativity), each scanning in table
    order, so reports are deterministic.
    """
    report = Report(f"category {c.name}")

    for obj in c.objects:
        ident = c.identities.get(obj)
        if ident is None:
            report.add("IdentityLaw", f"object {obj!r} has no identity", (obj,))
            continue
        m = c.morphism(ident)
        if m.dom != obj or m.cod != obj:
            report.add("EndpointMismatch",
                       f"identity {ident!r} is not an endomorphism of {obj!r}",
                       (ident,))

    for (f, g), h in c.composition.items():
        if not c.composable(f, g):
            report.add("EndpointMismatch",
                       f"table lists non-chaining pair ({f!r}, {g!r})", (f, g))
            continue
        if c.dom(h) != c.dom(f) or c.cod(h) != c.cod(g):
            report.add("EndpointMismatch",
                       f"composite {h!r} of ({f!r}, {g!r}) has wrong endpoints",
                       (f, g, h))

    for f, g in c.composable_pairs():
        if (f, g) not in c.composition:
            report.add("IncompleteComposition",
                       f"no composite declared for ({f!r}, {g!r})", (f, g))

    for m in c.morphisms:
        left = c.identities.get(m.dom)
        right = c.identities.get(m.cod)
        if left is not None and c.composition.get((left, m.name)) != m.name:
            report.add("IdentityLaw",
                       f"{left!r} then {m.name!r} is not {m.name!r}", (m.name,))
        if right is not None and c.composition.get((m.name, right)) != m.name:
            report.add("IdentityLaw",
                       f"{m.name!r} then {right!r} is not {m.name!r}", (m.name,))

    for f in c.morphism_names:
        for g in c.morphism_names:
            if not c.composable(f, g) or (f, g) not in c.composition:
                continue
            for h in c.morphism_names:
                if not c.composable(g, h) or (g, h) not in c.composition:
                    continue
                fg_h = c.composition.get((c.composition[(f, g)], h))
                f_gh = c.composition.get((f, c.composition[(g, h)]))
                if fg_h is None or f_gh is None:
                    continue  # already reported as incomplete
                if fg_h != f_gh:
                    report.add("Associativity",
                               f"({f!r} then {g!r}) then {h!r} differs from "
                               f"{f!r} then ({g!r} then {h!r})", (f, g, h))

    if report.ok:
        c._checked = True
    return report


def require_valid(c: Category) -> Category:
    """Return ``c`` if lawful, else raise with the full violation report."""
    if not c._checked:
        report = validate_category(c)
        if not report.ok:
            raise ValidationFailed(report)
    return c


@dataclass(frozen=True)
class Functor:
    """A structure-preserving map between categories."""

    source: Category
    target: Category
    object_map: dict[str, str]
    morph_map: dict[str, str]

    @classmethod
    def identity(cls, c: Category) -> "Functor":
        return cls(c, c, {o: o for o in c.objects},
                   {m: m for m in c.morphism_names})

    def apply_obj(self, obj: str) -> str:
        return self.object_map[obj]

    def apply_morph(self, name: str) -> str:
        return self.morph_map[name]

    def then(self, other: "Functor") -> "Functor":
        """Diagrammatic composite: first self, then other."""
        if other.source != self.target:
            raise UnknownElement("functors are not composable")
        return Functor(self.source, other.target,
                       {o: other.object_map[v] for o, v in self.object_map.items()},
                       {m: other.morph_map[v] for m, v in self.morph_map.items()})

    def assignment_key(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        """Value tuples in source carrier/table order; a stable identity."""
        return (tuple(self.object_map[o] for o in self.source.objects),
                tuple(self.morph_map[m] for m in self.source.morphism_names))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.object_map == other.object_map
                and self.morph_map == other.morph_map)

    def __hash__(self) -> int:
        return hash((self.source.name, self.target.name, self.assignment_key()))


def validate_functor(f: Functor) -> Report:
    """Exhaustively check endpoint, identity and composition preservation."""
    require_valid(f.source)
    require_valid(f.target)
    report = Report("functor")

    for obj in f.source.objects:
        if obj not in f.object_map:
            report.add("EndpointMismatch", f"object {obj!r} is not mapped", (obj,))
        elif f.object_map[obj] not in f.target.objects:
            report.add("EndpointMismatch",
                       f"image of {obj!r} is not a target object", (obj,))
    for m in f.source.morphisms:
        if m.name not in f.morph_map:
            report.add("EndpointMismatch", f"morphism {m.name!r} is not mapped",
                       (m.name,))
            continue
        image = f.morph_map[m.name]
        if image not in f.target.morphism_names:
            report.add("EndpointMismatch",
                       f"image of {m.name!r} is not a target morphism", (m.name,))
            continue
        if (f.target.dom(image) != f.object_map.get(m.dom)
                or f.target.cod(image) != f.object_map.get(m.cod)):
            report.add("EndpointMismatch",
                       f"image of {m.name!r} has wrong endpoints", (m.name,))
    if not report.ok:
        return report

    for obj in f.source.objects:
        ident = f.source.identities[obj]
        expected = f.target.identities[f.object_map[obj]]
        if f.morph_map[ident] != expected:
            report.add("IdentityNotPreserved",
                       f"identity of {obj!r} maps to a non-identity", (ident,))

    for g, h in f.source.composable_pairs():
        image = f.target.composition.get((f.morph_map[g], f.morph_map[h]))
        if f.morph_map[f.source.compose(g, h)] != image:
            report.add("CompositionNotPreserved",
                       f"composite of ({g!r}, {h!r}) is not preserved", (g, h))
    return report


def require_valid_functor(f: Functor) -> Functor:
    report = validate_functor(f)
    if not report.ok:
        raise ValidationFailed(report)
    return f


@dataclass(frozen=True)
class NaturalTransformation:
    """Components, one morphism per source object, between two functors.

    The component at ``a`` runs ``source[ a ] -> target[ a ]`` in the
    functors' common target category.
    """

    source: Functor
    target: Functor
    components: dict[str, str]

    def component(self, obj: str) -> str:
        return self.components[obj]

    def then(self, other: "NaturalTransformation") -> "NaturalTransformation":
        """Vertical composite (componentwise, diagrammatic)."""
        cat = self.source.target
        return NaturalTransformation(
            self.source, other.target,
            {a: cat.compose(self.components[a], other.components[a])
             for a in self.source.source.objects})

    def component_key(self) -> tuple[str, ...]:
        return tuple(self.components[a] for a in self.source.source.objects)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NaturalTransformation):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.components == other.components)

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.component_key()))


def validate_nat_transformation(t: NaturalTransformation) -> Report:
    """Check component endpoints and every naturality square."""
    report = Report("natural transformation")
    F, G = t.source, t.target
    if F.source != G.source or F.target != G.target:
        report.add("EndpointMismatch", "functors do not share source and target")
        return report
    cat = F.target
    for a in F.source.objects:
        comp = t.components.get(a)
        if comp is None:
            report.add("EndpointMismatch", f"no component at {a!r}", (a,))
            continue
        if comp not in cat.morphism_names:
            report.add("EndpointMismatch",
                       f"component at {a!r} is not a target morphism", (a,))
            continue
        if cat.dom(comp) != F.object_map[a] or cat.cod(comp) != G.object_map[a]:
            report.add("EndpointMismatch",
                       f"component at {a!r} has wrong endpoints", (a, comp))
    if not report.ok:
        return report
    for m in F.source.morphisms:
        # F[f] then component[cod] must equal component[dom] then G[f].
        left = cat.compose(F.morph_map[m.name], t.components[m.cod])
        right = cat.compose(t.components[m.dom], G.morph_map[m.name])
        if left != right:
            report.add("Naturality",
                       f"square for {m.name!r} does not commute", (m.name,))
    return report


@dataclass(frozen=True)
class TotalMorphisms:
    """All morphisms of a category as one domain fibered over object pairs.

    Built through the disjoint-union construction (so the assembled
    empty-detector comes along), then relabeled from tagged ids back to the
    plain morphism names, which are already globally unique.
    """

    category: Category
    union: LogicalDomain
    projection: FnMap
    detector: Detector

    def pair_of(self, morph_name: str) -> str:
        return self.projection.assignment[morph_name]


def object_pair_domain(c: Category) -> LogicalDomain:
    pairs = [f"{a}.{b}" for a in c.objects for b in c.objects]
    return make_domain(FiniteCollection(pairs), name=f"{c.name}_pairs")


def total_morphisms(c: Category) -> TotalMorphisms:
    require_valid(c)
    pair_dom = object_pair_domain(c)
    fibers = {}
    for a in c.objects:
        for b in c.objects:
            fibers[f"{a}.{b}"] = make_domain(FiniteCollection(c.hom(a, b)),
                                             name=f"{c.name}_hom_{a}_{b}")
    union = disjoint_union(IndexedFamily(pair_dom, fibers), name=f"{c.name}_morph")

    # Relabel a.b.m -> m; morphism names are unique so this is a bijection.
    to_tagged = {}
    order = []
    for tagged in union.domain.representatives:
        pair = union.projection.assignment[tagged]
        name = tagged[len(pair) + 1:]
        to_tagged[name] = tagged
        order.append(name)
    plain = make_domain(FiniteCollection(order), name=f"{c.name}_morph")
    projection = FnMap(plain, pair_dom,
                       {m: union.projection.assignment[to_tagged[m]] for m in order},
                       name=f"{c.name}_morph_proj")

    tagged_reps = union.domain.rep_collection

    def evaluate(member: BinaryFn) -> bool:
        lifted = BinaryFn(tagged_reps,
                          (t for t in tagged_reps if member(t[len(union.projection.assignment[t]) + 1:])))
        return union.detector(lifted)

    detector = Detector(plain.rep_collection, evaluate, label=f"empty[{c.name}_morph]")
    return TotalMorphisms(c, plain, projection, detector)
