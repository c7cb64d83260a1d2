from pathlib import Path

import pytest

from fincat.category import Category, validate_category
from fincat.constructions import FnMap
from fincat.domain import LogicalDomain
from fincat.emit import emit, emit_witness
from fincat.errors import FincatError
from fincat.parser import ParseError, SkeletonWitness, parse_path, parse_text
from fincat.sizecalc import SizeScript
from fincat.skeleton import build_skeleton

DATA = Path(__file__).parent / "data"


def fixture_context():
    context = {}
    for p in sorted(DATA.glob("*.domain")):
        d = parse_path(p)
        context[d.name] = d
    return context


class TestFormatSelection:
    def test_header_keyword_picks_the_parser(self):
        assert isinstance(parse_text("domain d\nelements: a\n"), LogicalDomain)
        assert isinstance(parse_text("category c\nobjects: x\n"), Category)
        assert isinstance(parse_text("let A = set\nsize A\n"), SizeScript)
        d = parse_text("domain d\nelements: a\n")
        assert isinstance(
            parse_text("map f : d -> d\nsend a -> a\n", context={"d": d}), FnMap)

    def test_unknown_header(self):
        with pytest.raises(ParseError):
            parse_text("widget w\n")

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_text("   \n# only a comment\n")


class TestParseErrors:
    def err(self, text, context=None):
        with pytest.raises(ParseError) as exc:
            parse_text(text, "f.txt", context=context)
        return exc.value

    def test_duplicate_element_has_line_and_column(self):
        e = self.err("domain d\nelements: a b a\n")
        assert e.span.line == 2 and "duplicate element 'a'" in e.reason

    def test_unknown_relate_id(self):
        e = self.err("domain d\nelements: a\nrelate a z\n")
        assert e.span.line == 3 and "unknown element 'z'" in e.reason

    def test_duplicate_domain_header(self):
        e = self.err("domain d\nelements: a\ndomain e\n")
        assert e.span.line == 3 and "duplicate" in e.reason

    def test_reserved_dot_in_id(self):
        e = self.err("domain d\nelements: a.b\n")
        assert "reserved character '.'" in e.reason

    def test_undeclared_composite_names_the_morphism(self):
        e = self.err("category c\nobjects: o\nmorph f : o -> o\n"
                     "compose f * f = h\n")
        assert e.span.line == 4 and "'h'" in e.reason

    def test_unknown_object_in_morph(self):
        e = self.err("category c\nobjects: o\nmorph f : o -> z\n")
        assert "unknown object 'z'" in e.reason

    def test_map_totality_is_checked(self):
        d = parse_text("domain d\nelements: a b\n")
        e = self.err("map f : d -> d\nsend a -> a\n", context={"d": d})
        assert "missing an assignment for 'b'" in e.reason

    def test_map_requires_known_domains(self):
        e = self.err("map f : nope -> nope\nsend a -> a\n", context={})
        assert "unknown domain 'nope'" in e.reason

    def test_map_sends_must_target_representatives_only_once(self):
        d = parse_text("domain d\nelements: a b\nrelate a b\n")
        e = self.err("map f : d -> d\nsend b -> a\n", context={"d": d})
        assert "not a canonical representative" in e.reason

    def test_size_unknown_name(self):
        e = self.err("let A = set\nsize Z\n")
        assert "unknown name 'Z'" in e.reason

    def test_size_duplicate_declaration(self):
        e = self.err("let A = set\nlet A = W\n")
        assert "duplicate declaration" in e.reason

    def test_injection_endpoints_must_be_leaves(self):
        e = self.err("let A = set\nlet P = product(A,A)\ninject P -> A\n")
        assert "must be a declared leaf" in e.reason

    def test_size_expression_syntax(self):
        e = self.err("let A = set\nlet P = product(A\nsize P\n")
        assert e.span.line == 2


class TestRoundTrips:
    def test_every_fixture_is_byte_canonical(self):
        context = fixture_context()
        fixtures = [p for p in sorted(DATA.iterdir())
                    if p.suffix in (".domain", ".map", ".cat", ".size")]
        assert len(fixtures) >= 20
        for p in fixtures:
            value = parse_path(p, context=context)
            assert emit(value) == p.read_text(), p.name

    def test_emit_parse_is_idempotent_on_messy_input(self):
        messy = ("# leading comment\n"
                 "domain   d   # trailing comment\n"
                 "\n"
                 "elements: a b\n"
                 "elements: c\n"
                 "relate c a\n")
        value = parse_text(messy)
        once = emit(value)
        assert emit(parse_text(once)) == once
        assert once == "domain d\nelements: a b c\nrelate a c\n"

    def test_messy_category_normalizes(self):
        messy = ("category   c\n"
                 "objects: p\n"
                 "objects: q\n"
                 "morph f : p -> q   # arrow\n")
        once = emit(parse_text(messy))
        assert emit(parse_text(once)) == once
        assert "id p = id_p" in once

    def test_parse_emit_identity_on_values(self):
        context = fixture_context()
        for p in sorted(DATA.glob("*.cat")):
            value = parse_path(p)
            assert parse_text(emit(value)) == value

    def test_witness_round_trip(self):
        cat = parse_path(DATA / "wiso.cat")
        result = build_skeleton(cat)
        text = emit_witness(result)
        witness = parse_text(text, "w.witness")
        assert isinstance(witness, SkeletonWitness)
        assert emit(witness) == text
        skeletal_again = parse_text(emit(result.skeletal))
        assert validate_category(skeletal_again).ok
