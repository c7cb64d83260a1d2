"""Shared builders for the category corpus used across the tests."""
from __future__ import annotations

import random

import pytest

from fincat.category import Category, Morphism


def discrete(n: int, name: str | None = None) -> Category:
    return Category.build(name or f"discrete{n}", [f"o{i}" for i in range(n)], [])


def terminal() -> Category:
    return Category.build("terminal", ["t"], [])


def indiscrete(n: int, name: str | None = None) -> Category:
    """One morphism per ordered pair of objects."""
    objects = [f"o{i}" for i in range(n)]
    morphisms = [Morphism(f"m{i}_{j}", f"o{i}", f"o{j}")
                 for i in range(n) for j in range(n) if i != j]
    composition = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if i == j or j == k:
                    continue
                h = f"m{i}_{k}" if i != k else f"id_o{i}"
                composition[(f"m{i}_{j}", f"m{j}_{k}")] = h
    return Category.build(name or f"indiscrete{n}", objects, morphisms,
                          composition=composition)


def walking_arrow() -> Category:
    return Category.build("arrow", ["o0", "o1"], [Morphism("a", "o0", "o1")])


def walking_iso() -> Category:
    return Category.build(
        "wiso", ["x", "y"],
        [Morphism("u", "x", "y"), Morphism("v", "y", "x")],
        composition={("u", "v"): "id_x", ("v", "u"): "id_y"})


def three_object_one_iso() -> Category:
    """Objects a, b, c with a and b isomorphic and c isolated."""
    return Category.build(
        "three", ["a", "b", "c"],
        [Morphism("u", "a", "b"), Morphism("v", "b", "a")],
        composition={("u", "v"): "id_a", ("v", "u"): "id_b"})


def preorder_category(reachable: set[tuple[int, int]], n: int,
                      name: str) -> Category:
    """Thin category of a reflexive-transitive relation (valid by thinness)."""
    objects = [f"o{i}" for i in range(n)]
    morphisms = [Morphism(f"r{i}_{j}", f"o{i}", f"o{j}")
                 for i in range(n) for j in range(n)
                 if i != j and (i, j) in reachable]
    composition = {}
    for i, j in sorted(reachable):
        for k in range(n):
            if (j, k) not in reachable or i == j or j == k:
                continue
            f, g = f"r{i}_{j}", f"r{j}_{k}"
            composition[(f, g)] = f"r{i}_{k}" if i != k else f"id_o{i}"
    return Category.build(name, objects, morphisms, composition=composition)


def random_category(rng: random.Random, max_objects: int = 4,
                    max_morphisms: int = 10) -> Category:
    """A random valid category: the thin category of a random preorder.

    Cycles in the preorder produce isomorphic objects, so skeleton
    extraction has real work to do. Resamples until the morphism count
    fits the bound.
    """
    while True:
        n = rng.randint(1, max_objects)
        reachable = {(i, i) for i in range(n)}
        for i in range(n):
            for j in range(n):
                if i != j and rng.random() < 0.4:
                    reachable.add((i, j))
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    if (i, k) in reachable and (k, j) in reachable:
                        reachable.add((i, j))
        if len(reachable) <= max_morphisms:
            return preorder_category(reachable, n, f"rand{rng.randint(0, 10**6)}")


def corpus() -> list[Category]:
    """The fixed skeleton-test corpus."""
    cats = [discrete(n) for n in range(1, 5)]
    cats += [indiscrete(n) for n in range(2, 5)]
    cats += [walking_arrow(), walking_iso(), three_object_one_iso(), terminal()]
    return cats


@pytest.fixture
def skeleton_corpus() -> list[Category]:
    return corpus()
