"""Finite carriers, yes/no-valued functions, equality pairings, powersets.

Every value here is immutable after construction and every operation is
pure, so values can be shared freely. All enumerations promise a fixed
deterministic order derived from the order of first appearance in the
source input ("carrier order"); nothing ever iterates a hash-ordered set
on an output path.
"""
from __future__ import annotations

import re
from typing import Callable, Iterable, Iterator, Mapping

from .errors import (
    DuplicateElement,
    NonReflexive,
    NonSymmetric,
    NonTransitive,
    ResourceLimit,
    UnknownElement,
)

# A Bit is plain bool; YES/NO name the two values where it reads better.
Bit = bool
YES: Bit = True
NO: Bit = False

# User-written ids are bare tokens; dotted tokens are reserved for ids the
# disjoint-union construction generates itself.
_BARE_TOKEN = re.compile(r"[A-Za-z0-9_]+")
_TOKEN = re.compile(r"[A-Za-z0-9_]+(\.[A-Za-z0-9_]+)*")

DEFAULT_POWERSET_LIMIT = 20


def is_user_id(token: str) -> bool:
    """True for ids a source file may declare (no reserved ``.``)."""
    return bool(_BARE_TOKEN.fullmatch(token))


def is_element_id(token: str) -> bool:
    """True for any id a collection may hold, dotted union tags included."""
    return bool(_TOKEN.fullmatch(token))


class FiniteCollection:
    """An ordered, duplicate-free sequence of element ids.

    The order is load-bearing: every enumeration, canonical choice and
    tie-break downstream derives from it.
    """

    __slots__ = ("_elements", "_index")

    def __init__(self, elements: Iterable[str]):
        elems: list[str] = []
        index: dict[str, int] = {}
        for e in elements:
            if not isinstance(e, str) or not is_element_id(e):
                raise ValueError(f"invalid element id {e!r}")
            if e in index:
                raise DuplicateElement(f"duplicate element {e!r}")
            index[e] = len(elems)
            elems.append(e)
        self._elements = tuple(elems)
        self._index = index

    @property
    def elements(self) -> tuple[str, ...]:
        return self._elements

    def position(self, element: str) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise UnknownElement(f"unknown element {element!r}") from None

    def __contains__(self, element: str) -> bool:
        return element in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteCollection):
            return NotImplemented
        return self._elements == other._elements

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        return f"FiniteCollection({list(self._elements)!r})"


class UnionFind:
    """Disjoint-set forest whose roots are the least members in a fixed order.

    Ranks are element positions, so the representative of a class is always
    its first-appearing member; this is what makes canonical choices stable.
    """

    def __init__(self, collection: FiniteCollection):
        self._collection = collection
        self._parent = {e: e for e in collection}

    def find(self, x: str) -> str:
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        pos = self._collection.position
        if pos(rb) < pos(ra):
            ra, rb = rb, ra
        self._parent[rb] = ra

    def classes(self) -> list[list[str]]:
        groups: dict[str, list[str]] = {}
        for e in self._collection:
            groups.setdefault(self.find(e), []).append(e)
        return [groups[e] for e in self._collection if e in groups and self.find(e) == e]


class BinaryFn:
    """A total yes/no-valued function on a finite collection.

    Stored as the set of elements mapped to yes; evaluation is membership.
    """

    __slots__ = ("domain", "yes")

    def __init__(self, domain: FiniteCollection, yes: Iterable[str]):
        yes_set = frozenset(yes)
        for e in yes_set:
            if e not in domain:
                raise UnknownElement(f"{e!r} is not in the function's domain")
        self.domain = domain
        self.yes = yes_set

    def __call__(self, element: str) -> Bit:
        if element not in self.domain:
            raise UnknownElement(f"{element!r} is not in the function's domain")
        return element in self.yes

    def yes_elements(self) -> tuple[str, ...]:
        """Yes-valued elements, in domain order."""
        return tuple(e for e in self.domain if e in self.yes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryFn):
            return NotImplemented
        return self.domain == other.domain and self.yes == other.yes

    def __hash__(self) -> int:
        return hash((self.domain, self.yes))

    def __repr__(self) -> str:
        return f"BinaryFn({list(self.domain)!r}, yes={sorted(self.yes)!r})"


class EqualityPairing:
    """A total pairing ``domain x domain -> yes/no`` meant to detect sameness.

    Arbitrary tables are representable so that law violations can be
    detected and reported; ``check_laws`` finds the first witness in
    carrier order.
    """

    __slots__ = ("domain", "_yes")

    def __init__(self, domain: FiniteCollection, yes_pairs: Iterable[tuple[str, str]]):
        pairs = frozenset(yes_pairs)
        for a, b in pairs:
            if a not in domain or b not in domain:
                raise UnknownElement(f"pair ({a!r}, {b!r}) is not within the domain")
        self.domain = domain
        self._yes = pairs

    @classmethod
    def identity(cls, domain: FiniteCollection) -> "EqualityPairing":
        return cls(domain, ((e, e) for e in domain))

    @classmethod
    def from_function(cls, domain: FiniteCollection,
                      fn: Callable[[str, str], bool]) -> "EqualityPairing":
        return cls(domain, ((a, b) for a in domain for b in domain if fn(a, b)))

    @classmethod
    def from_relation_pairs(cls, domain: FiniteCollection,
                            pairs: Iterable[tuple[str, str]]) -> "EqualityPairing":
        """Reflexive-symmetric-transitive closure of the given pairs."""
        uf = UnionFind(domain)
        for a, b in pairs:
            if a not in domain:
                raise UnknownElement(f"unknown element {a!r}")
            if b not in domain:
                raise UnknownElement(f"unknown element {b!r}")
            uf.union(a, b)
        yes = []
        for cls_members in uf.classes():
            for a in cls_members:
                for b in cls_members:
                    yes.append((a, b))
        return cls(domain, yes)

    def value(self, a: str, b: str) -> Bit:
        if a not in self.domain:
            raise UnknownElement(f"unknown element {a!r}")
        if b not in self.domain:
            raise UnknownElement(f"unknown element {b!r}")
        return (a, b) in self._yes

    @property
    def yes_pairs(self) -> frozenset[tuple[str, str]]:
        return self._yes

    def check_laws(self) -> None:
        """Raise the first equivalence-law violation, scanning carrier order."""
        for x in self.domain:
            if not self.value(x, x):
                raise NonReflexive(f"pairing is not reflexive at {x!r}", (x,))
        for a in self.domain:
            for b in self.domain:
                if self.value(a, b) != self.value(b, a):
                    raise NonSymmetric(
                        f"pairing is not symmetric on ({a!r}, {b!r})", (a, b))
        for a in self.domain:
            for b in self.domain:
                if not self.value(a, b):
                    continue
                for c in self.domain:
                    if self.value(b, c) and not self.value(a, c):
                        raise NonTransitive(
                            f"pairing is not transitive on ({a!r}, {b!r}, {c!r})",
                            (a, b, c))

    def classes(self) -> tuple[tuple[str, ...], ...]:
        """Partition into classes, classes and members in carrier order.

        Assumes the laws hold.
        """
        seen: set[str] = set()
        out: list[tuple[str, ...]] = []
        for x in self.domain:
            if x in seen:
                continue
            members = tuple(y for y in self.domain if self.value(x, y))
            seen.update(members)
            out.append(members)
        return tuple(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EqualityPairing):
            return NotImplemented
        return self.domain == other.domain and self._yes == other._yes

    def __hash__(self) -> int:
        return hash((self.domain, self._yes))


class LogicalDomain:
    """A finite collection with a verified equality pairing.

    Construction (via ``make_domain``) checks the three equivalence laws and
    fixes one canonical representative per class: the least member in
    carrier order. Downstream modules work on representatives, where the
    pairing is plain token identity.
    """

    __slots__ = ("name", "carrier", "equality", "canonical_map", "representatives",
                 "_rep_collection")

    def __init__(self, name: str, carrier: FiniteCollection, equality: EqualityPairing,
                 canonical_map: Mapping[str, str], representatives: tuple[str, ...]):
        self.name = name
        self.carrier = carrier
        self.equality = equality
        self.canonical_map = dict(canonical_map)
        self.representatives = representatives
        self._rep_collection = FiniteCollection(representatives)

    @property
    def rep_collection(self) -> FiniteCollection:
        return self._rep_collection

    def canonical(self, element: str) -> str:
        try:
            return self.canonical_map[element]
        except KeyError:
            raise UnknownElement(f"unknown element {element!r}") from None

    def same(self, a: str, b: str) -> Bit:
        return self.equality.value(a, b)

    def class_members(self, representative: str) -> tuple[str, ...]:
        if representative not in self.carrier:
            raise UnknownElement(f"unknown element {representative!r}")
        rep = self.canonical(representative)
        return tuple(e for e in self.carrier if self.canonical_map[e] == rep)

    def restrict(self, members: Iterable[str], name: str | None = None) -> "LogicalDomain":
        """Sub-domain on the given representatives, equality restricted."""
        keep = list(members)
        for m in keep:
            if m not in self._rep_collection:
                raise UnknownElement(f"{m!r} is not a canonical representative")
        sub = FiniteCollection(sorted(keep, key=self._rep_collection.position))
        pairing = EqualityPairing(sub, ((a, b) for a in sub for b in sub
                                        if self.equality.value(a, b)))
        return make_domain(sub, pairing, name=name or self.name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LogicalDomain):
            return NotImplemented
        return self.carrier == other.carrier and self.equality == other.equality

    def __hash__(self) -> int:
        return hash((self.carrier, self.equality))

    def __repr__(self) -> str:
        return (f"LogicalDomain({self.name!r}, {len(self.carrier)} elements, "
                f"{len(self.representatives)} representatives)")


def make_domain(carrier: FiniteCollection,
                pairing: EqualityPairing | None = None,
                name: str = "domain") -> LogicalDomain:
    """Build a logical domain, verifying the equivalence laws.

    With no pairing the identity pairing is used. Raises NonReflexive,
    NonSymmetric or NonTransitive (with a witness) when the pairing fails
    a law, and UnknownElement when it is not total on the carrier.
    """
    if pairing is None:
        pairing = EqualityPairing.identity(carrier)
    if pairing.domain != carrier:
        raise UnknownElement("pairing is not defined on the given carrier")
    pairing.check_laws()
    canonical: dict[str, str] = {}
    for x in carrier:
        for y in carrier:
            if pairing.value(x, y):
                canonical[x] = y
                break
    reps = tuple(x for x in carrier if canonical[x] == x)
    return LogicalDomain(name, carrier, pairing, canonical, reps)


class Powerset:
    """All yes/no-valued functions on the canonical representatives of a domain.

    Members enumerate lazily in binary-counter order: member ``i`` is yes on
    representative ``j`` (carrier order) exactly when bit ``j`` of ``i`` is
    set, so the first member is the constantly-no function and the first
    representative toggles fastest.
    """

    __slots__ = ("base", "member_domain")

    def __init__(self, base: LogicalDomain):
        self.base = base
        self.member_domain = base.rep_collection

    @property
    def size(self) -> int:
        return 1 << len(self.member_domain)

    def member(self, index: int) -> BinaryFn:
        if not 0 <= index < self.size:
            raise UnknownElement(f"member index {index} out of range")
        reps = self.member_domain.elements
        yes = frozenset(reps[j] for j in range(len(reps)) if (index >> j) & 1)
        return BinaryFn(self.member_domain, yes)

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[BinaryFn]:
        for i in range(self.size):
            yield self.member(i)


def powerset(d: LogicalDomain, limit: int = DEFAULT_POWERSET_LIMIT) -> Powerset:
    """Powerset of ``d``; refuses more than ``limit`` representatives."""
    k = len(d.representatives)
    if k > limit:
        raise ResourceLimit(
            f"powerset over {k} representatives exceeds the bound of {limit}")
    return Powerset(d)


class Detector:
    """A total yes/no map on the members of a powerset.

    Calling it on a member answers whether that member is detected; the
    stock construction detects the constantly-no member.
    """

    __slots__ = ("member_domain", "_fn", "label")

    def __init__(self, member_domain: FiniteCollection,
                 fn: Callable[[BinaryFn], Bit], label: str = "detector"):
        self.member_domain = member_domain
        self._fn = fn
        self.label = label

    def __call__(self, member: BinaryFn) -> Bit:
        if member.domain != self.member_domain:
            raise UnknownElement(
                f"{self.label}: member is not a function on the expected domain")
        return self._fn(member)

    @classmethod
    def for_domain(cls, d: LogicalDomain, label: str | None = None) -> "Detector":
        """Empty-detector on ``d`` by direct scan of member values."""
        reps = d.rep_collection

        def scan(member: BinaryFn) -> Bit:
            for e in reps:
                if member(e):
                    return NO
            return YES

        return cls(reps, scan, label or f"empty[{d.name}]")


def empty_detector(p: Powerset) -> Detector:
    """Detector answering yes exactly on the constantly-no member of ``p``."""
    return Detector.for_domain(p.base, label=f"empty[{p.base.name}]")
