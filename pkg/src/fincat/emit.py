"""Canonical text emitters for every file format the parsers accept.

Canonical form means: sections in a fixed order, entries in carrier or
table order, single spaces, a trailing newline, and no comments. Parsing a
canonical file and emitting it again is byte-identity; emitting any parsed
value yields its canonical form.
"""
from __future__ import annotations

from .category import Category
from .constructions import FnMap
from .domain import LogicalDomain
from .errors import FincatError
from .parser import SkeletonWitness
from .sizecalc import Injection, LetExpr, LetTag, Query, SizeScript, SizeTag
from .skeleton import SkeletonResult

_TAG_TEXT = {SizeTag.SET: "set", SizeTag.W: "W", SizeTag.UNKNOWN: "unknown"}


def emit_domain(d: LogicalDomain) -> str:
    lines = [f"domain {d.name}"]
    if len(d.carrier):
        lines.append("elements: " + " ".join(d.carrier))
    for rep in d.representatives:
        for member in d.class_members(rep):
            if member != rep:
                lines.append(f"relate {rep} {member}")
    return "\n".join(lines) + "\n"


def emit_map(f: FnMap) -> str:
    lines = [f"map {f.name} : {f.source.name} -> {f.target.name}"]
    for rep in f.source.representatives:
        lines.append(f"send {rep} -> {f.assignment[rep]}")
    return "\n".join(lines) + "\n"


def emit_category(c: Category) -> str:
    lines = [f"category {c.name}"]
    if len(c.objects):
        lines.append("objects: " + " ".join(c.objects))
    for m in c.morphisms:
        lines.append(f"morph {m.name} : {m.dom} -> {m.cod}")
    for obj in c.objects:
        lines.append(f"id {obj} = {c.identities[obj]}")
    identity_names = set(c.identities.values())
    for f in c.morphism_names:
        for g in c.morphism_names:
            if f in identity_names or g in identity_names:
                continue
            if (f, g) in c.composition:
                lines.append(f"compose {f} * {g} = {c.composition[(f, g)]}")
    return "\n".join(lines) + "\n"


def emit_size_script(script: SizeScript) -> str:
    lines = []
    for stmt in script.statements:
        if isinstance(stmt, LetTag):
            lines.append(f"let {stmt.name} = {_TAG_TEXT[stmt.tag]}")
        elif isinstance(stmt, LetExpr):
            lines.append(f"let {stmt.name} = {stmt.node.render()}")
        elif isinstance(stmt, Injection):
            lines.append(stmt.render())
        elif isinstance(stmt, Query):
            lines.append(f"size {stmt.name}")
        else:
            raise FincatError(f"unknown statement {stmt!r}")
    return "\n".join(lines) + "\n"


def skeleton_witness(result: SkeletonResult) -> SkeletonWitness:
    """Package a skeleton result's comparison data for emission."""
    ambient = result.inclusion.target
    return SkeletonWitness(
        name=result.skeletal.name,
        section=tuple((x, result.chosen[x]) for x in result.skeletal.objects),
        retraction_objects=tuple(
            (a, result.retraction.object_map[a]) for a in ambient.objects),
        retraction_morphisms=tuple(
            (m, result.retraction.morph_map[m]) for m in ambient.morphism_names),
        components=tuple(
            (a, result.theta2.components[a]) for a in ambient.objects),
    )


def emit_witness(value: SkeletonWitness | SkeletonResult) -> str:
    w = skeleton_witness(value) if isinstance(value, SkeletonResult) else value
    lines = [f"witness {w.name}"]
    lines.extend(f"s {x} -> {a}" for x, a in w.section)
    lines.extend(f"q {a} -> {x}" for a, x in w.retraction_objects)
    lines.extend(f"qmorph {m} -> {n}" for m, n in w.retraction_morphisms)
    lines.extend(f"theta2 {a} = {m}" for a, m in w.components)
    return "\n".join(lines) + "\n"


def emit(value) -> str:
    """Canonical text for any parseable value."""
    if isinstance(value, LogicalDomain):
        return emit_domain(value)
    if isinstance(value, FnMap):
        return emit_map(value)
    if isinstance(value, Category):
        return emit_category(value)
    if isinstance(value, SizeScript):
        return emit_size_script(value)
    if isinstance(value, (SkeletonWitness, SkeletonResult)):
        return emit_witness(value)
    raise FincatError(f"cannot emit {type(value).__name__}")
