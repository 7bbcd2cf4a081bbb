"""Theory files, priority orders, grounding, and the fixture reduction."""

import random

import pytest

from helpers import preferred_indices_naive
from parapri.circumscription import circ_equivalent, preferred_models
from parapri.errors import CycleError, ParseError, ValidationError
from parapri.formula import Atom
from parapri.generate import random_theory
from parapri.theory import (
    LabeledFormula,
    PriorityOrder,
    SchemaTheory,
    Theory,
    build_theory,
    classify_order,
    fixtures_to_defaults,
    ground,
    parse_theory,
    print_theory,
    theory_to_json,
    transitive_closure,
)

TWEETY = """\
# two defaults, the specific one wins
base: ostrich -> bird
base: ostrich
default e1: bird -> flies
default e2: ostrich -> ~flies
prefer e2 > e1
"""


class TestTransitiveClosure:
    def test_chain(self):
        assert transitive_closure({("1", "2"), ("2", "3")}) == {("1", "2"), ("2", "3"), ("1", "3")}

    def test_empty(self):
        assert transitive_closure(set()) == frozenset()

    def test_two_cycle(self):
        with pytest.raises(CycleError):
            transitive_closure({("1", "2"), ("2", "1")})

    def test_self_loop(self):
        with pytest.raises(CycleError):
            transitive_closure({("1", "1")})


class TestParseTheory:
    def test_tweety_file(self):
        t = parse_theory(TWEETY)
        assert isinstance(t, Theory)
        assert len(t.defaults) == 2
        assert t.priority.edges == {("e2", "e1")}
        assert t.universe == ("ostrich", "bird", "flies")

    def test_priority_cycle_rejected(self):
        with pytest.raises(CycleError):
            parse_theory("default a: p\ndefault b: q\nprefer a > b\nprefer b > a\n")

    def test_no_prefer_lines_mean_parallel(self):
        t = parse_theory("default a: p\ndefault b: q\n")
        assert t.priority.is_empty

    def test_duplicate_label(self):
        with pytest.raises(ValidationError):
            parse_theory("default a: p\ndefault a: q\n")

    def test_undeclared_prefer_index(self):
        with pytest.raises(ValidationError):
            parse_theory("default a: p\nprefer a > b\n")

    def test_atom_outside_explicit_universe(self):
        with pytest.raises(ValidationError):
            parse_theory("atoms: p\ndefault a: q\n")

    def test_explicit_universe_may_add_unmentioned_atoms(self):
        t = parse_theory("atoms: p q\ndefault a: p\n")
        assert t.universe == ("p", "q")

    def test_syntax_error_carries_line(self):
        with pytest.raises(ParseError) as e:
            parse_theory("default a: p\nbogus line\n")
        assert e.value.line == 2

    def test_bad_formula_carries_line(self):
        with pytest.raises(ParseError) as e:
            parse_theory("base: p &\n")
        assert e.value.line == 1

    def test_round_trip(self):
        t = parse_theory(TWEETY)
        assert parse_theory(print_theory(t)) == t

    def test_round_trip_random(self):
        rng = random.Random(7)
        for _ in range(25):
            t = random_theory(rng, fixture_prob=0.5)
            assert parse_theory(print_theory(t)) == t

    def test_json_export_mentions_everything(self):
        import json

        doc = json.loads(theory_to_json(parse_theory(TWEETY)))
        assert doc["universe"] == ["ostrich", "bird", "flies"]
        assert doc["edges"] == [["e2", "e1"]]
        assert {d["label"] for d in doc["defaults"]} == {"e1", "e2"}


class TestGround:
    def test_single_constant(self):
        s = parse_theory("domain: tweety\nschema d[X]: bird(X) -> flies(X)\n")
        assert isinstance(s, SchemaTheory)
        t = ground(s)
        assert t.default_labels == ("d[tweety]",)
        assert str(t.defaults[0].formula) == "(bird(tweety) -> flies(tweety))"

    def test_two_constants_parallel(self):
        t = ground(parse_theory("domain: a b\nschema d[X]: bird(X) -> flies(X)\n"))
        assert len(t.defaults) == 2
        assert t.priority.is_empty
        # grounding must mean the same as writing the instances by hand
        by_hand = build_theory(
            atoms=t.universe,
            defaults=[("i1", "bird(a) -> flies(a)"), ("i2", "bird(b) -> flies(b)")],
        )
        assert circ_equivalent(t, by_hand, project=t.universe)

    def test_priority_lifted_to_all_instance_pairs(self):
        t = ground(
            parse_theory(
                "domain: a b\n"
                "schema e1[X]: p(X)\n"
                "schema e2[X]: q(X)\n"
                "prefer e2 > e1\n"
            )
        )
        assert len(t.defaults) == 4
        assert t.priority.edges == {
            ("e2[a]", "e1[a]"),
            ("e2[a]", "e1[b]"),
            ("e2[b]", "e1[a]"),
            ("e2[b]", "e1[b]"),
        }
        by_hand = build_theory(
            atoms=t.universe,
            defaults=[
                ("e1a", "p(a)"), ("e1b", "p(b)"),
                ("e2a", "q(a)"), ("e2b", "q(b)"),
            ],
            prefer=[
                ("e2a", "e1a"), ("e2a", "e1b"), ("e2b", "e1a"), ("e2b", "e1b"),
            ],
        )
        assert circ_equivalent(t, by_hand, project=t.universe)

    def test_size_law(self):
        t = ground(
            parse_theory(
                "domain: a b c\n"
                "schema u[X]: p(X)\n"
                "schema v[X,Y]: r(X,Y)\n"
            )
        )
        assert len(t.defaults) == 3 ** 1 + 3 ** 2

    def test_plain_defaults_survive_grounding(self):
        t = ground(parse_theory("domain: a\ndefault d0: s\nschema d[X]: p(X)\nprefer d0 > d\n"))
        assert t.default_labels == ("d0", "d[a]")
        assert t.priority.edges == {("d0", "d[a]")}

    def test_empty_domain_with_schema_rejected(self):
        with pytest.raises(ValidationError):
            parse_theory("domain:\nschema d[X]: p(X)\n")

    def test_free_variable_rejected(self):
        with pytest.raises(ValidationError):
            parse_theory("domain: a\nschema d[X]: p(X) & q(Y)\n")

    def test_explicit_atoms_with_domain_rejected(self):
        with pytest.raises(ValidationError):
            parse_theory("atoms: p\ndomain: a\nschema d[X]: p\n")


class TestFixturesToDefaults:
    def test_pair_appended_without_edges(self):
        t = build_theory(defaults=[("d", "q")], fixtures=[("f", "p")])
        r = fixtures_to_defaults(t)
        assert r.fixtures == ()
        assert [l for l, _ in r.defaults] == ["d", "fix_f", "nfix_f"]
        assert str(r.defaults[1].formula) == "p"
        assert str(r.defaults[2].formula) == "~p"
        assert r.priority.edges == t.priority.edges

    def test_no_fixtures_is_identity(self):
        t = build_theory(defaults=[("d", "q")])
        assert fixtures_to_defaults(t) == t

    def test_preserves_preferred_models_on_tweety(self):
        t = build_theory(
            base=["ostrich -> bird", "ostrich"],
            defaults=[("e1", "bird -> flies"), ("e2", "ostrich -> ~flies")],
            prefer=[("e2", "e1")],
            fixtures=[("f", "bird")],
        )
        assert preferred_models(t).index_set == preferred_models(fixtures_to_defaults(t)).index_set

    def test_preserves_preferred_models_randomly(self):
        rng = random.Random(11)
        for _ in range(40):
            t = random_theory(rng, fixtures=rng.randint(1, 2))
            r = fixtures_to_defaults(t)
            assert preferred_indices_naive(t) == preferred_indices_naive(r)
            assert preferred_models(t).index_set == preferred_models(r).index_set

    def test_label_clash_rejected(self):
        t = build_theory(defaults=[("fix_f", "q")], fixtures=[("f", "p")])
        with pytest.raises(ValidationError):
            fixtures_to_defaults(t)


class TestClassifyOrder:
    def test_parallel(self):
        assert classify_order(PriorityOrder(("a", "b"), frozenset())) == "parallel"

    def test_chain(self):
        order = PriorityOrder(("a", "b", "c"), frozenset({("a", "b"), ("b", "c")}))
        assert classify_order(order) == "chain/columnar"

    def test_two_columns(self):
        order = PriorityOrder(("a", "b", "c", "d"), frozenset({("a", "b"), ("c", "d")}))
        assert classify_order(order) == "chain/columnar"

    def test_layered_two_by_two(self):
        order = PriorityOrder(
            ("a", "b", "c", "d"),
            frozenset({("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")}),
        )
        assert classify_order(order) == "layered"

    def test_general(self):
        # one element of the top layer does not dominate d: neither columnar nor layered
        order = PriorityOrder(
            ("a", "b", "c", "d"),
            frozenset({("a", "c"), ("a", "d"), ("b", "c")}),
        )
        assert classify_order(order) == "general"


class TestPriorityOrder:
    def test_undeclared_endpoint(self):
        with pytest.raises(ValidationError):
            PriorityOrder(("a",), frozenset({("a", "b")}))

    def test_labels_must_match_defaults(self):
        with pytest.raises(ValidationError):
            Theory(
                universe=("p",),
                base=(),
                defaults=(LabeledFormula("a", Atom("p")),),
                priority=PriorityOrder(("b",), frozenset()),
            )
