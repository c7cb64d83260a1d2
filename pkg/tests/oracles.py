"""Independent brute-force oracles used by the unit and acceptance tests.

These deliberately share no code with the implementation paths they check:
flat scans and unpruned assignment enumeration only.
"""
from __future__ import annotations

import itertools

from fincat.category import Category, Functor
from fincat.domain import BinaryFn


def direct_scan_is_empty(member: BinaryFn) -> bool:
    """Flat scan of a member's values."""
    return all(not member(e) for e in member.domain)


def brute_force_iso_pairs(c: Category) -> set[tuple[str, str]]:
    """Scan every morphism pair for two-sided inverses."""
    pairs = set()
    for x in c.objects:
        for y in c.objects:
            for i in c.morphism_names:
                for j in c.morphism_names:
                    mi, mj = c.morphism(i), c.morphism(j)
                    if (mi.dom, mi.cod) != (x, y) or (mj.dom, mj.cod) != (y, x):
                        continue
                    if (c.composition.get((i, j)) == c.identities[x]
                            and c.composition.get((j, i)) == c.identities[y]):
                        pairs.add((x, y))
    return pairs


def is_functor_assignment(a: Category, b: Category,
                          object_map: dict[str, str],
                          morph_map: dict[str, str]) -> bool:
    for m in a.morphisms:
        image = b.morphism(morph_map[m.name])
        if image.dom != object_map[m.dom] or image.cod != object_map[m.cod]:
            return False
    for obj in a.objects:
        if morph_map[a.identities[obj]] != b.identities[object_map[obj]]:
            return False
    for f, g in a.composable_pairs():
        if morph_map[a.compose(f, g)] != b.compose(morph_map[f], morph_map[g]):
            return False
    return True


def naive_functor_count(a: Category, b: Category) -> int:
    """Try every raw assignment, no pruning."""
    count = 0
    for objs in itertools.product(b.objects.elements, repeat=len(a.objects)):
        object_map = dict(zip(a.objects.elements, objs))
        for morphs in itertools.product(b.morphism_names,
                                        repeat=len(a.morphisms)):
            morph_map = dict(zip(a.morphism_names, morphs))
            count += is_functor_assignment(a, b, object_map, morph_map)
    return count


def naive_nat_count(F: Functor, G: Functor) -> int:
    """Scan every raw component assignment for naturality."""
    a, b = F.source, F.target
    count = 0
    for comps in itertools.product(b.morphism_names, repeat=len(a.objects)):
        components = dict(zip(a.objects.elements, comps))
        ok = True
        for obj in a.objects:
            m = b.morphism(components[obj])
            if m.dom != F.object_map[obj] or m.cod != G.object_map[obj]:
                ok = False
                break
        if ok:
            for m in a.morphisms:
                left = b.compose(F.morph_map[m.name], components[m.cod])
                right = b.compose(components[m.dom], G.morph_map[m.name])
                if left != right:
                    ok = False
                    break
        count += ok
    return count
