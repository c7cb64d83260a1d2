"""Exhaustive enumeration of functors and natural transformations, and the
assembly of functor categories.

The searches assign object images first and extend to morphism images with
early pruning (endpoints, forced identities, already-determined
composites); pruning only skips assignments that cannot complete, so the
enumerated set equals the naive filtered one, in the same lexicographic
order.
"""
from __future__ import annotations

from dataclasses import dataclass

from .category import (
    Category,
    Functor,
    Morphism,
    NaturalTransformation,
    require_valid,
)
from .domain import FiniteCollection
from .errors import FincatError, ResourceLimit
from .skeleton import IsoClasses, build_skeleton, iso_classes

DEFAULT_OBJECT_BOUND = 64
DEFAULT_NODE_BUDGET = 200_000


class _Budget:
    __slots__ = ("left",)

    def __init__(self, nodes: int):
        self.left = nodes

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise ResourceLimit("search exceeded the configured node budget")


def enumerate_functors(a: Category, b: Category,
                       node_budget: int = DEFAULT_NODE_BUDGET,
                       object_bound: int = DEFAULT_OBJECT_BOUND) -> list[Functor]:
    """All functors from ``a`` to ``b``, duplicate-free, in lexicographic
    order of (object assignment, morphism assignment)."""
    require_valid(a)
    require_valid(b)
    if len(a.objects) * len(b.objects) > object_bound:
        raise ResourceLimit(
            f"{len(a.objects)} x {len(b.objects)} objects exceed the bound "
            f"of {object_bound}")
    budget = _Budget(node_budget)

    objects = a.objects.elements
    morphs = a.morphism_names
    # Triples (f, g, fg) indexed by the position at which the last of the
    # three morphism assignments becomes known.
    triples: list[tuple[str, str, str]] = [
        (f, g, a.composition[(f, g)]) for f, g in a.composable_pairs()]
    position = {m: i for i, m in enumerate(morphs)}
    triples_by_last: list[list[tuple[str, str, str]]] = [[] for _ in morphs]
    for f, g, h in triples:
        triples_by_last[max(position[f], position[g], position[h])].append((f, g, h))

    results: list[Functor] = []

    def extend_morphisms(object_map: dict[str, str], k: int,
                         morph_map: dict[str, str]) -> None:
        if k == len(morphs):
            results.append(Functor(a, b, dict(object_map), dict(morph_map)))
            return
        name = morphs[k]
        m = a.morphism(name)
        if a.is_identity(name):
            candidates = [b.identities[object_map[m.dom]]]
        else:
            candidates = list(b.hom(object_map[m.dom], object_map[m.cod]))
        for image in candidates:
            budget.spend()
            morph_map[name] = image
            ok = True
            for f, g, h in triples_by_last[k]:
                if b.composition[(morph_map[f], morph_map[g])] != morph_map[h]:
                    ok = False
                    break
            if ok:
                extend_morphisms(object_map, k + 1, morph_map)
            del morph_map[name]

    def extend_objects(k: int, object_map: dict[str, str]) -> None:
        if k == len(objects):
            extend_morphisms(object_map, 0, {})
            return
        for image in b.objects:
            budget.spend()
            object_map[objects[k]] = image
            extend_objects(k + 1, object_map)
            del object_map[objects[k]]

    extend_objects(0, {})
    return results


def enumerate_nat_transformations(F: Functor, G: Functor) -> list[NaturalTransformation]:
    """All natural transformations from ``F`` to ``G``, in lexicographic
    order of component choices (source objects in carrier order, candidate
    components in table order)."""
    if F.source != G.source or F.target != G.target:
        raise FincatError("functors do not share source and target")
    a, b = F.source, F.target
    objects = a.objects.elements
    # Naturality squares indexed by the later of the two component slots.
    obj_position = {o: i for i, o in enumerate(objects)}
    squares_by_last: list[list[Morphism]] = [[] for _ in objects]
    for m in a.morphisms:
        squares_by_last[max(obj_position[m.dom], obj_position[m.cod])].append(m)

    results: list[NaturalTransformation] = []

    def extend(k: int, components: dict[str, str]) -> None:
        if k == len(objects):
            results.append(NaturalTransformation(F, G, dict(components)))
            return
        obj = objects[k]
        for comp in b.hom(F.object_map[obj], G.object_map[obj]):
            components[obj] = comp
            ok = True
            for m in squares_by_last[k]:
                left = b.compose(F.morph_map[m.name], components[m.cod])
                right = b.compose(components[m.dom], G.morph_map[m.name])
                if left != right:
                    ok = False
                    break
            if ok:
                extend(k + 1, components)
            del components[obj]

    extend(0, {})
    return results


@dataclass(frozen=True)
class FunctorCategory:
    """A functor category presented as an ordinary category.

    Objects are the functors (named F0, F1, ... in enumeration order) and
    morphisms the natural transformations (named n_<F>_<G>_<k>), composed
    vertically. ``category`` has passed full validation.
    """

    source: Category
    target: Category
    category: Category
    functors: tuple[Functor, ...]
    transformations: dict[str, NaturalTransformation]

    def functor_id(self, f: Functor) -> str:
        for name, candidate in zip(self.category.objects, self.functors):
            if candidate == f:
                return name
        raise FincatError("functor is not an object of this functor category")


def functor_category(a: Category, b: Category,
                     node_budget: int = DEFAULT_NODE_BUDGET,
                     object_bound: int = DEFAULT_OBJECT_BOUND) -> FunctorCategory:
    """Assemble the functor category and validate it as a category."""
    functors = enumerate_functors(a, b, node_budget, object_bound)
    names = [f"F{i}" for i in range(len(functors))]
    by_name = dict(zip(names, functors))

    morphisms: list[Morphism] = []
    transformations: dict[str, NaturalTransformation] = {}
    nt_name: dict[tuple[str, str, tuple[str, ...]], str] = {}
    for i, fi in enumerate(names):
        for j, fj in enumerate(names):
            for k, t in enumerate(enumerate_nat_transformations(
                    by_name[fi], by_name[fj])):
                name = f"n_{fi}_{fj}_{k}"
                morphisms.append(Morphism(name, fi, fj))
                transformations[name] = t
                nt_name[(fi, fj, t.component_key())] = name

    identities = {}
    for fi in names:
        f = by_name[fi]
        key = tuple(b.identities[f.object_map[o]] for o in a.objects)
        identities[fi] = nt_name[(fi, fi, key)]

    composition = {}
    for m1 in morphisms:
        for m2 in morphisms:
            if m1.cod != m2.dom:
                continue
            composite = transformations[m1.name].then(transformations[m2.name])
            composition[(m1.name, m2.name)] = nt_name[
                (m1.dom, m2.cod, composite.component_key())]

    cat = Category(f"funct_{a.name}_{b.name}",
                   FiniteCollection(names), morphisms, identities, composition)
    require_valid(cat)
    return FunctorCategory(a, b, cat, tuple(functors), transformations)


def nat_equiv_classes(a: Category, b: Category,
                      node_budget: int = DEFAULT_NODE_BUDGET,
                      object_bound: int = DEFAULT_OBJECT_BOUND) -> IsoClasses:
    """Natural-equivalence classes of functors from ``a`` to ``b``.

    Cross-checks the count against the functor category of the two
    skeleta, which must agree since equivalences induce equivalences of
    functor categories.
    """
    fc = functor_category(a, b, node_budget, object_bound)
    _, classes = iso_classes(fc.category)

    skel_a = build_skeleton(a)
    skel_b = build_skeleton(b)
    reduced = functor_category(skel_a.skeletal, skel_b.skeletal,
                               node_budget, object_bound)
    _, reduced_classes = iso_classes(reduced.category)
    if len(classes.representatives) != len(reduced_classes.representatives):
        raise FincatError(
            "class count disagrees with the skeletal functor category")
    return classes
