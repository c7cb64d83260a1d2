"""Symbolic three-valued size reasoning over named domains.

Sizes are tags in a small knowledge lattice: ``Set`` and ``W`` (the size of
the universal well-order tower) are the sharp, mutually exclusive answers,
``AtMostW`` covers "one of the two, and nothing can decide which", and
``Unknown`` is the top. Rules only ever sharpen a tag downward; facts that
would force both sharp answers raise ``Contradiction``. Every evaluation
carries a trace sufficient to replay the result.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence, Union

from .errors import Contradiction, FincatError, UnknownElement


class SizeTag(enum.Enum):
    SET = "Set"
    W = "W"
    AT_MOST_W = "AtMostW"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


# Knowledge order: Set and W below AtMostW, AtMostW below Unknown.
_ORDER_RANK = {SizeTag.SET: 0, SizeTag.W: 0, SizeTag.AT_MOST_W: 1, SizeTag.UNKNOWN: 2}


def knowledge_leq(a: SizeTag, b: SizeTag) -> bool:
    """True when ``a`` is at least as sharp as ``b`` in the knowledge order."""
    if a == b:
        return True
    if b == SizeTag.UNKNOWN:
        return True
    if b == SizeTag.AT_MOST_W:
        return a in (SizeTag.SET, SizeTag.W)
    return False


@dataclass(frozen=True)
class Ref:
    name: str

    def render(self) -> str:
        return self.name


@dataclass(frozen=True)
class Product:
    left: "SizeNode"
    right: "SizeNode"

    def render(self) -> str:
        return f"product({self.left.render()},{self.right.render()})"


@dataclass(frozen=True)
class DisjointUnionOf:
    index: "SizeNode"
    fiber: "SizeNode"

    def render(self) -> str:
        return f"union({self.index.render()};{self.fiber.render()})"


@dataclass(frozen=True)
class FnSpace:
    source: "SizeNode"
    target: "SizeNode"

    def render(self) -> str:
        return f"fnspace({self.source.render()},{self.target.render()})"


@dataclass(frozen=True)
class PowersetOf:
    child: "SizeNode"

    def render(self) -> str:
        return f"powerset({self.child.render()})"


@dataclass(frozen=True)
class SubdomainOf:
    child: "SizeNode"
    evidence: str | None = None  # None, "bounded" or "cofinal"

    def render(self) -> str:
        base = f"subdomain({self.child.render()})"
        return f"{base} {self.evidence}" if self.evidence else base


@dataclass(frozen=True)
class QuotientOf:
    child: "SizeNode"

    def render(self) -> str:
        return f"quotient({self.child.render()})"


SizeNode = Union[Ref, Product, DisjointUnionOf, FnSpace, PowersetOf,
                 SubdomainOf, QuotientOf]


@dataclass(frozen=True)
class Injection:
    """Declared evidence: an injective function source -> target exists."""

    source: str
    target: str

    def render(self) -> str:
        return f"inject {self.source} -> {self.target}"


# Statements of a size script, in source order.
@dataclass(frozen=True)
class LetTag:
    name: str
    tag: SizeTag


@dataclass(frozen=True)
class LetExpr:
    name: str
    node: SizeNode


@dataclass(frozen=True)
class Query:
    name: str


Statement = Union[LetTag, LetExpr, Injection, Query]


@dataclass(frozen=True)
class SizeScript:
    """A parsed size script: declarations, injection facts, queries."""

    statements: tuple[Statement, ...]

    @property
    def leaves(self) -> dict[str, SizeTag]:
        return {s.name: s.tag for s in self.statements if isinstance(s, LetTag)}

    @property
    def definitions(self) -> dict[str, SizeNode]:
        return {s.name: s.node for s in self.statements if isinstance(s, LetExpr)}

    @property
    def injections(self) -> tuple[Injection, ...]:
        return tuple(s for s in self.statements if isinstance(s, Injection))

    @property
    def queries(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.statements if isinstance(s, Query))


@dataclass(frozen=True)
class TraceStep:
    """One rule firing: what was concluded about which node, and why."""

    rule: str
    subject: str
    inputs: tuple[str, ...]
    output: str
    law: str

    def render(self) -> str:
        inputs = ", ".join(self.inputs)
        return f"{self.rule} {self.subject} [{inputs}] -> {self.output} : {self.law}"


@dataclass
class RuleTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def add(self, rule: str, subject: str, inputs: tuple[str, ...],
            output: str, law: str) -> None:
        self.steps.append(TraceStep(rule, subject, inputs, output, law))

    def render(self) -> str:
        return "\n".join(step.render() for step in self.steps)

    def final_output(self) -> str:
        if not self.steps:
            raise FincatError("empty trace")
        return self.steps[-1].output

    def __iter__(self) -> Iterator[TraceStep]:
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)


_LAWS = {
    "decl": "declared size",
    "R1": "a product of sets is a set",
    "R2": "a disjoint union of sets indexed by a set is a set",
    "R3": "the powerset of a set is a set",
    "R4": "a subdomain of a set is a set",
    "R5": "a subdomain of the universal order tower is a set or cofinal, "
          "and nothing defined on the powerset can decide which",
    "R6": "a surjective image of a set that carries an equality pairing is a set",
    "R7": "a union of set fibers over a cofinal index is as large as the index",
    "R8": "functions from a set into something of universal size form a domain "
          "of universal size",
    "R9": "the total morphism domain over object pairs has the objects' size",
    "R10": "a subdomain of something of universal size is small or of that "
           "same size",
    "R11": "a bounded subdomain of the universal order tower is a set",
    "R12": "a cofinal subdomain of the universal order tower is order-"
           "isomorphic to it",
    "R13": "mutual injections with the universal order tower give a bijection",
    "R14": "an injection from the universal order tower rules out set-hood",
    "default": "no rule applies",
}


@dataclass
class LeafState:
    tag: SizeTag
    set_excluded: bool = False

    def display(self) -> str:
        if self.set_excluded and self.tag not in (SizeTag.W, SizeTag.SET):
            return f"{self.tag} (not Set)"
        return str(self.tag)


@dataclass(frozen=True)
class EvalResult:
    tag: SizeTag
    set_excluded: bool
    trace: RuleTrace

    def display(self) -> str:
        if self.set_excluded and self.tag not in (SizeTag.W, SizeTag.SET):
            return f"{self.tag} (not Set)"
        return str(self.tag)


def apply_injection_rules(declared: Mapping[str, SizeTag],
                          injections: Sequence[Injection]
                          ) -> tuple[dict[str, LeafState], dict[str, list[TraceStep]]]:
    """Sharpen leaf tags from injection facts.

    A leaf injecting both ways with a universal-sized leaf becomes W; a
    leaf receiving an injection from one can no longer be a set. A declared
    Set tag conflicting with either raises Contradiction carrying the
    offending fact pair.
    """
    for inj in injections:
        for end in (inj.source, inj.target):
            if end not in declared:
                raise UnknownElement(
                    f"injection endpoint {end!r} is not a declared leaf")

    states: dict[str, LeafState] = {}
    steps: dict[str, list[TraceStep]] = {}
    for name, tag in declared.items():
        states[name] = LeafState(tag)
        steps[name] = [TraceStep("decl", name, (), str(tag), _LAWS["decl"])]

    for name, tag in declared.items():
        into = [inj for inj in injections
                if inj.source == name and declared[inj.target] == SizeTag.W
                and inj.target != name]
        outof = [inj for inj in injections
                 if inj.target == name and declared[inj.source] == SizeTag.W
                 and inj.source != name]
        state = states[name]
        if into and outof:
            if tag == SizeTag.SET:
                raise Contradiction(
                    f"{name} is declared a set but is bijective with the "
                    "universal order tower",
                    (f"let {name} = set", f"{into[0].render()} and {outof[0].render()}"))
            if state.tag != SizeTag.W:
                old = state.display()
                state.tag = SizeTag.W
                state.set_excluded = True
                steps[name].append(TraceStep(
                    "R13", name, (old,), state.display(), _LAWS["R13"]))
        elif outof:
            if tag == SizeTag.SET:
                raise Contradiction(
                    f"{name} is declared a set but receives an injection from "
                    "the universal order tower",
                    (f"let {name} = set", outof[0].render()))
            if not state.set_excluded and state.tag != SizeTag.W:
                old = state.display()
                state.set_excluded = True
                steps[name].append(TraceStep(
                    "R14", name, (old,), state.display(), _LAWS["R14"]))
    return states, steps


class _Evaluator:
    def __init__(self, script: SizeScript):
        self.script = script
        self.leaves = script.leaves
        self.defs = script.definitions
        overlap = set(self.leaves) & set(self.defs)
        if overlap:
            raise FincatError(f"{sorted(overlap)[0]!r} is declared twice")
        self.states, self.leaf_steps = apply_injection_rules(
            self.leaves, script.injections)
        self.trace = RuleTrace()
        self.memo: dict[str, SizeTag] = {}
        self.emitted: set[str] = set()
        self.active: set[str] = set()

    def resolve(self, node: SizeNode) -> SizeNode:
        while isinstance(node, Ref) and node.name in self.defs:
            node = self.defs[node.name]
        return node

    def step(self, rule: str, subject: str, inputs: tuple[str, ...],
             tag: SizeTag) -> SizeTag:
        self.trace.add(rule, subject, inputs, str(tag), _LAWS[rule])
        return tag

    def eval(self, node: SizeNode) -> SizeTag:
        if isinstance(node, Ref):
            return self.eval_name(node.name)
        return self.eval_structure(node)

    def eval_name(self, name: str) -> SizeTag:
        if name in self.leaves:
            if name not in self.emitted:
                self.emitted.add(name)
                self.trace.steps.extend(self.leaf_steps[name])
            return self.states[name].tag
        if name in self.defs:
            if name in self.memo:
                return self.memo[name]
            if name in self.active:
                raise FincatError(f"definition of {name!r} refers to itself")
            self.active.add(name)
            tag = self.eval_structure(self.defs[name])
            self.active.discard(name)
            self.memo[name] = tag
            return tag
        raise UnknownElement(f"unknown name {name!r}")

    def eval_structure(self, node: SizeNode) -> SizeTag:
        subject = node.render()
        if isinstance(node, Product):
            left, right = self.eval(node.left), self.eval(node.right)
            if left == SizeTag.SET and right == SizeTag.SET:
                return self.step("R1", subject, (str(left), str(right)), SizeTag.SET)
            return self.step("default", subject, (str(left), str(right)),
                             SizeTag.UNKNOWN)
        if isinstance(node, DisjointUnionOf):
            index, fiber = self.eval(node.index), self.eval(node.fiber)
            if index == SizeTag.SET and fiber == SizeTag.SET:
                return self.step("R2", subject, (str(index), str(fiber)), SizeTag.SET)
            if index == SizeTag.W and fiber == SizeTag.SET:
                return self.step("R7", subject, (str(index), str(fiber)), SizeTag.W)
            resolved = self.resolve(node.index)
            if isinstance(resolved, Product) and fiber == SizeTag.SET:
                lt, rt = self.eval(resolved.left), self.eval(resolved.right)
                if lt == rt and lt in (SizeTag.SET, SizeTag.W):
                    return self.step("R9", subject, (str(lt), str(rt), str(fiber)),
                                     lt)
            return self.step("default", subject, (str(index), str(fiber)),
                             SizeTag.UNKNOWN)
        if isinstance(node, PowersetOf):
            child = self.eval(node.child)
            if child == SizeTag.SET:
                return self.step("R3", subject, (str(child),), SizeTag.SET)
            return self.step("default", subject, (str(child),), SizeTag.UNKNOWN)
        if isinstance(node, SubdomainOf):
            child = self.eval(node.child)
            if child == SizeTag.SET:
                return self.step("R4", subject, (str(child),), SizeTag.SET)
            if child == SizeTag.W:
                if node.evidence == "bounded":
                    return self.step("R11", subject, (str(child),), SizeTag.SET)
                if node.evidence == "cofinal":
                    return self.step("R12", subject, (str(child),), SizeTag.W)
                resolved = self.resolve(node.child)
                declared_w = (isinstance(resolved, Ref)
                              and self.leaves.get(resolved.name) == SizeTag.W)
                rule = "R5" if declared_w else "R10"
                return self.step(rule, subject, (str(child),), SizeTag.AT_MOST_W)
            return self.step("default", subject, (str(child),), SizeTag.UNKNOWN)
        if isinstance(node, QuotientOf):
            child = self.eval(node.child)
            if child == SizeTag.SET:
                return self.step("R6", subject, (str(child),), SizeTag.SET)
            return self.step("default", subject, (str(child),), SizeTag.UNKNOWN)
        if isinstance(node, FnSpace):
            source, target = self.eval(node.source), self.eval(node.target)
            if source == SizeTag.SET and target == SizeTag.SET:
                # Derived: maps embed into the powerset of the product, so
                # the numbered rules chain to a set.
                pair = f"product({node.source.render()},{node.target.render()})"
                self.step("R1", pair, (str(source), str(target)), SizeTag.SET)
                self.step("R3", f"powerset({pair})", (str(SizeTag.SET),), SizeTag.SET)
                return self.step("R4", subject, (str(SizeTag.SET),), SizeTag.SET)
            if source == SizeTag.SET and target == SizeTag.W:
                return self.step("R8", subject, (str(source), str(target)), SizeTag.W)
            return self.step("default", subject, (str(source), str(target)),
                             SizeTag.UNKNOWN)
        raise FincatError(f"unknown node {node!r}")


def eval_size(name_or_node: str | SizeNode, script: SizeScript) -> EvalResult:
    """Evaluate the size of a named domain or expression under a script.

    Returns the sharpest derivable tag plus the trace that produced it;
    raises Contradiction when declared facts conflict.
    """
    ev = _Evaluator(script)
    node = Ref(name_or_node) if isinstance(name_or_node, str) else name_or_node
    tag = ev.eval(node)
    excluded = False
    if isinstance(node, Ref) and node.name in ev.states:
        excluded = ev.states[node.name].set_excluded
    return EvalResult(tag, excluded, ev.trace)


def replay(trace: RuleTrace) -> str:
    """The result a trace certifies: the output of its final step."""
    return trace.final_output()
