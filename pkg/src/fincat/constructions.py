"""Quotients, disjoint unions, sections-as-products, and function spaces.

The union construction builds its equality pairing and its empty-detector
literally from the per-fiber data, so tests can play it off against a
direct scan; nothing here shortcuts through the flat representation.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .domain import (
    BinaryFn,
    Bit,
    Detector,
    EqualityPairing,
    FiniteCollection,
    LogicalDomain,
    make_domain,
)
from .errors import (
    FincatError,
    NotSurjective,
    ResourceLimit,
    TagCollision,
    UnknownElement,
)

# An equivalence relation is exactly an equality pairing that satisfies the
# three laws; the separate name marks intent (it may be coarser than the
# ambient domain's equality).
EquivalenceRelation = EqualityPairing

DEFAULT_SPACE_LIMIT = 4096


@dataclass(frozen=True)
class TieBreak:
    """Deterministic choice rule used wherever one of several equally good
    elements must be picked.

    ``lex`` keeps carrier order (so the least element wins); ``seed:<N>``
    permutes candidates pseudo-randomly but reproducibly, keyed by the seed
    and a context string, which lets tests confirm results do not depend on
    the choices made.
    """

    kind: str = "lex"
    seed: int | None = None

    @classmethod
    def parse(cls, text: str) -> "TieBreak":
        if text == "lex":
            return cls()
        if text.startswith("seed:"):
            try:
                return cls("seed", int(text[5:]))
            except ValueError:
                pass
        raise ValueError(f"bad tie-break {text!r} (expected lex or seed:<N>)")

    def order(self, items: Sequence, context: str) -> list:
        out = list(items)
        if self.kind == "seed":
            # str seeds hash stably across processes, unlike builtin hash().
            random.Random(f"{self.seed}|{context}").shuffle(out)
        return out

    def __str__(self) -> str:
        return "lex" if self.kind == "lex" else f"seed:{self.seed}"


LEX = TieBreak()


@dataclass(frozen=True)
class EquivClass:
    """One equivalence class, presented as its membership function."""

    representative: str
    relation: EquivalenceRelation
    membership: BinaryFn

    def contains(self, element: str) -> Bit:
        return self.membership(element)


def equiv_class(rel: EquivalenceRelation, element: str) -> EquivClass:
    """The class of ``element``: the function asking "related to it?"."""
    if element not in rel.domain:
        raise UnknownElement(f"unknown element {element!r}")
    membership = BinaryFn(rel.domain, (x for x in rel.domain if rel.value(x, element)))
    return EquivClass(element, rel, membership)


def quotient(rel: EquivalenceRelation, name: str = "quotient") -> LogicalDomain:
    """Domain of equivalence classes of ``rel``.

    The carrier keeps every element; the pairing is the relation itself and
    each class is embodied by its canonical representative. Well-definedness
    of class equality is verified: the pairing value between two classes
    does not depend on which members represent them.
    """
    dom = make_domain(rel.domain, rel, name=name)
    classes = rel.classes()
    for members_a in classes:
        for members_b in classes:
            values = {rel.value(x, y) for x in members_a for y in members_b}
            if len(values) != 1:
                raise FincatError(
                    "class equality depends on the representative chosen for "
                    f"({members_a[0]!r}, {members_b[0]!r})")
    return dom


def equiv_classes(rel: EquivalenceRelation) -> tuple[EquivClass, ...]:
    """One ``EquivClass`` per class, led by its first member in carrier order."""
    return tuple(equiv_class(rel, members[0]) for members in rel.classes())


class FnMap:
    """A total function between logical domains, recorded on representatives.

    Values are normalized to canonical representatives of the target, so an
    FnMap automatically respects both domains' equality.
    """

    __slots__ = ("name", "source", "target", "assignment")

    def __init__(self, source: LogicalDomain, target: LogicalDomain,
                 assignment: Mapping[str, str], name: str = "map"):
        normalized: dict[str, str] = {}
        for rep in source.representatives:
            if rep not in assignment:
                raise UnknownElement(f"map is missing a value for {rep!r}")
            value = assignment[rep]
            if value not in target.carrier:
                raise UnknownElement(f"map value {value!r} is not in the target")
            normalized[rep] = target.canonical(value)
        for key in assignment:
            if key not in normalized:
                raise UnknownElement(
                    f"{key!r} is not a canonical representative of the source")
        self.name = name
        self.source = source
        self.target = target
        self.assignment = normalized

    @classmethod
    def identity(cls, d: LogicalDomain, name: str = "id") -> "FnMap":
        return cls(d, d, {r: r for r in d.representatives}, name=name)

    def apply(self, element: str) -> str:
        return self.assignment[self.source.canonical(element)]

    def then(self, other: "FnMap", name: str | None = None) -> "FnMap":
        """Diagrammatic composite: first self, then other."""
        if other.source != self.target:
            raise UnknownElement("maps are not composable")
        return FnMap(self.source, other.target,
                     {r: other.apply(v) for r, v in self.assignment.items()},
                     name=name or f"{self.name}_{other.name}")

    def image(self) -> tuple[str, ...]:
        hit = set(self.assignment.values())
        return tuple(t for t in self.target.representatives if t in hit)

    def unhit_element(self) -> str | None:
        hit = set(self.assignment.values())
        for t in self.target.representatives:
            if t not in hit:
                return t
        return None

    def is_surjective(self) -> bool:
        return self.unhit_element() is None

    def fibers(self) -> dict[str, tuple[str, ...]]:
        """Preimages per target representative, both sides in carrier order."""
        out: dict[str, list[str]] = {t: [] for t in self.target.representatives}
        for r in self.source.representatives:
            out[self.assignment[r]].append(r)
        return {t: tuple(members) for t, members in out.items()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FnMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.assignment == other.assignment)

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(sorted(self.assignment.items()))))

    def __repr__(self) -> str:
        return f"FnMap({self.name!r}: {self.source.name} -> {self.target.name})"


def quotient_map(rel: EquivalenceRelation, name: str = "q") -> FnMap:
    """Projection from the identity domain on the carrier onto the quotient."""
    source = make_domain(rel.domain, name=f"{name}_source")
    target = quotient(rel, name=f"{name}_target")
    return FnMap(source, target,
                 {x: target.canonical(x) for x in source.representatives}, name=name)


@dataclass(frozen=True)
class Fiber:
    """A point-preimage of a map, with its members in carrier order."""

    map: FnMap
    point: str
    members: tuple[str, ...]


def fiber(f: FnMap, point: str) -> Fiber:
    if point not in f.target.carrier:
        raise UnknownElement(f"{point!r} is not in the target")
    p = f.target.canonical(point)
    return Fiber(f, p, f.fibers()[p])


def fiber_domain(f: FnMap, point: str) -> LogicalDomain:
    """The fiber over ``point`` as a domain with the restricted equality."""
    fb = fiber(f, point)
    return f.source.restrict(fb.members, name=f"{f.source.name}_over_{fb.point}")


def fiber_membership(f: FnMap, point: str) -> BinaryFn:
    """The function on the source answering "lands on ``point``?"."""
    p = f.target.canonical(point) if point in f.target.carrier else point
    if p not in f.target.carrier:
        raise UnknownElement(f"{point!r} is not in the target")
    return BinaryFn(f.source.rep_collection,
                    (r for r in f.source.representatives if f.assignment[r] == p))


@dataclass(frozen=True)
class IndexedFamily:
    """Domains indexed by the representatives of an index domain."""

    index: LogicalDomain
    fibers: Mapping[str, LogicalDomain]

    def __post_init__(self):
        missing = [b for b in self.index.representatives if b not in self.fibers]
        if missing:
            raise UnknownElement(f"family is missing a domain for {missing[0]!r}")
        extra = [b for b in self.fibers if b not in self.index.representatives]
        if extra:
            raise UnknownElement(
                f"family key {extra[0]!r} is not an index representative")


@dataclass(frozen=True)
class DisjointUnion:
    """Disjoint union of a family: tagged domain, projection, empty-detector.

    The detector is the two-stage construction (per-fiber emptiness turned
    into a function on the index, then the index's detector applied to its
    negation), not a flat scan; agreement with a flat scan is a theorem the
    tests check.
    """

    domain: LogicalDomain
    projection: FnMap
    detector: Detector


def tag(index_element: str, fiber_element: str) -> str:
    return f"{index_element}.{fiber_element}"


def untag(tagged: str, index_element: str) -> str:
    return tagged[len(index_element) + 1:]


def disjoint_union(family: IndexedFamily, name: str = "union") -> DisjointUnion:
    """Union of the family as the domain of tagged pairs ``b.a``.

    The equality pairing is assembled from the index and fiber pairings
    (same index, then same under that fiber's equality) and re-verified;
    the projection sends ``b.a`` to ``b``.
    """
    index = family.index
    tags: list[str] = []
    seen: dict[str, tuple[str, str]] = {}
    for b in index.representatives:
        for a in family.fibers[b].carrier:
            t = tag(b, a)
            if t in seen:
                raise TagCollision(
                    f"tagged id {t!r} arises from both {seen[t]!r} and {(b, a)!r}")
            seen[t] = (b, a)
            tags.append(t)
    carrier = FiniteCollection(tags)

    yes_pairs = []
    for b in index.representatives:
        fib = family.fibers[b]
        for a1, a2 in fib.equality.yes_pairs:
            yes_pairs.append((tag(b, a1), tag(b, a2)))
    union_domain = make_domain(carrier, EqualityPairing(carrier, yes_pairs), name=name)

    projection = FnMap(union_domain, index,
                       {r: seen[r][0] for r in union_domain.representatives},
                       name=f"{name}_proj")

    fiber_detectors = {b: Detector.for_domain(family.fibers[b])
                       for b in index.representatives}
    index_detector = Detector.for_domain(index)
    fiber_reps = {b: family.fibers[b].rep_collection for b in index.representatives}
    index_reps = index.rep_collection

    def evaluate(member: BinaryFn) -> Bit:
        empties = set()
        for b in index.representatives:
            restricted = BinaryFn(
                fiber_reps[b],
                (r for r in fiber_reps[b] if member(tag(b, r))))
            if fiber_detectors[b](restricted):
                empties.add(b)
        # member is empty iff "restriction empty" holds everywhere, i.e. iff
        # the negation of that function on the index is itself empty.
        negation = BinaryFn(index_reps, (b for b in index_reps if b not in empties))
        return index_detector(negation)

    detector = Detector(union_domain.rep_collection, evaluate, label=f"empty[{name}]")
    return DisjointUnion(union_domain, projection, detector)


def internal_union(family: IndexedFamily, ambient: LogicalDomain,
                   name: str = "iunion") -> tuple[LogicalDomain, FnMap]:
    """Union of subdomains of one ambient domain.

    Realized through the disjoint union: tagged pairs map onto their
    underlying ambient element and the image is canonicalized. Returns the
    union as a restriction of the ambient domain together with the
    surjection from the disjoint union onto it.
    """
    du = disjoint_union(family, name=f"{name}_disjoint")
    hit: list[str] = []
    for rep in du.domain.representatives:
        b = du.projection.assignment[rep]
        element = untag(rep, b)
        if element not in ambient.carrier:
            raise UnknownElement(
                f"fiber element {element!r} is not in the ambient domain")
        canonical = ambient.canonical(element)
        if canonical not in hit:
            hit.append(canonical)
    union = ambient.restrict(
        sorted(hit, key=ambient.rep_collection.position), name=name)
    onto = FnMap(du.domain, union,
                 {rep: ambient.canonical(untag(rep, du.projection.assignment[rep]))
                  for rep in du.domain.representatives},
                 name=f"{name}_onto")
    return union, onto


def pushforward_detector(f: FnMap, source_detector: Detector) -> Detector:
    """Move an empty-detector along a surjection, by precomposition.

    Pulling a target member back along ``f`` is injective on members when
    ``f`` is onto, so detecting emptiness upstream detects it downstream.
    """
    unhit = f.unhit_element()
    if unhit is not None:
        raise NotSurjective(f"{f.name} misses target element {unhit!r}", unhit)
    if source_detector.member_domain != f.source.rep_collection:
        raise UnknownElement("detector does not match the map's source")
    source_reps = f.source.rep_collection

    def evaluate(member: BinaryFn) -> Bit:
        pulled = BinaryFn(source_reps,
                          (r for r in source_reps if member(f.assignment[r])))
        return source_detector(pulled)

    return Detector(f.target.rep_collection, evaluate,
                    label=f"empty[{f.target.name}]")


class SectionSet:
    """All right inverses of a surjection; the product of its fibers.

    Enumerates lazily in lexicographic order of the choice made per target
    representative (target carrier order outer, fiber carrier order inner).
    """

    __slots__ = ("map", "_fiber_lists")

    def __init__(self, f: FnMap):
        fibers = f.fibers()
        for t in f.target.representatives:
            if not fibers[t]:
                raise NotSurjective(f"{f.name} misses target element {t!r}", t)
        self.map = f
        self._fiber_lists = [fibers[t] for t in f.target.representatives]

    @property
    def count(self) -> int:
        n = 1
        for members in self._fiber_lists:
            n *= len(members)
        return n

    def __len__(self) -> int:
        return self.count

    def __iter__(self) -> Iterator[FnMap]:
        targets = self.map.target.representatives
        for choice in itertools.product(*self._fiber_lists):
            yield FnMap(self.map.target, self.map.source,
                        dict(zip(targets, choice)), name=f"section_of_{self.map.name}")


def sections(f: FnMap) -> SectionSet:
    return SectionSet(f)


def choose_section(f: FnMap, tie_break: TieBreak = LEX) -> FnMap:
    """The canonical section: per target representative, the first fiber
    member in tie-break order (carrier order for ``lex``)."""
    fibers = f.fibers()
    assignment = {}
    for t in f.target.representatives:
        if not fibers[t]:
            raise NotSurjective(f"{f.name} misses target element {t!r}", t)
        assignment[t] = tie_break.order(fibers[t], context=f"section:{t}")[0]
    return FnMap(f.target, f.source, assignment, name=f"choice_of_{f.name}")


def product_domain(a: LogicalDomain, b: LogicalDomain,
                   name: str | None = None) -> DisjointUnion:
    """``a x b`` realized as the union of constant fibers ``b`` over ``a``."""
    family = IndexedFamily(a, {r: b for r in a.representatives})
    return disjoint_union(family, name=name or f"{a.name}_x_{b.name}")


class FunctionSpace:
    """All total maps between two domains, with their powerset embedding.

    Each map embeds as the member of the powerset of ``a x b`` that is yes
    on exactly one pair per source representative; the embedding is checked
    to be injective at construction.
    """

    __slots__ = ("source", "target", "members", "pairs", "embeddings")

    def __init__(self, a: LogicalDomain, b: LogicalDomain, limit: int):
        count = len(b.representatives) ** len(a.representatives)
        if count > limit:
            raise ResourceLimit(
                f"function space has {count} members, over the bound of {limit}")
        self.source = a
        self.target = b
        self.pairs = product_domain(a, b)
        members = []
        embeddings = []
        source_reps = a.representatives
        for choice in itertools.product(b.representatives, repeat=len(source_reps)):
            g = FnMap(a, b, dict(zip(source_reps, choice)),
                      name=f"fn_{len(members)}")
            members.append(g)
            embeddings.append(self.embed(g))
        if len(set(e.yes for e in embeddings)) != len(embeddings):
            raise FincatError("function-space embedding failed to be injective")
        self.members = tuple(members)
        self.embeddings = tuple(embeddings)

    @property
    def count(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[FnMap]:
        return iter(self.members)

    def embed(self, g: FnMap) -> BinaryFn:
        reps = self.pairs.domain.rep_collection
        yes = {tag(r, g.assignment[r]) for r in self.source.representatives}
        return BinaryFn(reps, (t for t in reps if t in yes))


def function_space(a: LogicalDomain, b: LogicalDomain,
                   limit: int = DEFAULT_SPACE_LIMIT) -> FunctionSpace:
    return FunctionSpace(a, b, limit)
