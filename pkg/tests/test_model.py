import pytest

from aspectarg.corpus import corpus_path
from aspectarg.errors import UnknownIdError
from aspectarg.formulas import evaluate, parse
from aspectarg.model import (
    AspectSet,
    Interpretation,
    Model,
    Relation,
    Statement,
    effective_aspect,
    lookup,
    validate_wellformed,
)
from aspectarg.modelfile import load_path


def ev(text, algebra):
    return evaluate(parse(text), algebra)


class TestAspectSet:
    def test_full_normalisation(self, fig1):
        everything = frozenset(fig1.elements())
        assert AspectSet(fig1, everything).full

    def test_subset_and_intersection_with_full(self, fig1, ev):
        full = AspectSet(fig1, full=True)
        small = AspectSet(fig1, frozenset({ev("x")}))
        assert small.issubset(full)
        assert not full.issubset(small)
        assert full.intersection(small) == small
        assert small.union(full).full

    def test_size(self, fig1):
        assert AspectSet(fig1, full=True).size() == 16
        assert AspectSet(fig1).is_empty


@pytest.fixture(scope="module")
def fear():
    return load_path(corpus_path("fear_appeal"))


class TestLookup:
    def test_fear_appeal_singleton_row(self, fear):
        got = lookup(fear.interpretation, fear.model, ["t1"], "s1")
        assert set(got) == {ev("~aP & (aP -> aCostH)", fear.algebra)}

    def test_empty_theme_set_is_empty(self, fear):
        assert lookup(fear.interpretation, fear.model, [], "s1").is_empty
        assert lookup(fear.interpretation, fear.model, [], "s2").is_empty

    def test_union_default_across_themes(self, fig1):
        model = Model.build(
            ["t1", "t2"], [Statement("s")], {"s": {"t1", "t2"}}, []
        )
        interp = Interpretation(
            fig1,
            {},
            {
                (frozenset(["t1"]), "s"): AspectSet(fig1, frozenset({fig1.prop("x")})),
                (frozenset(["t2"]), "s"): AspectSet(fig1, frozenset({fig1.prop("y")})),
            },
        )
        got = lookup(interp, model, ["t1", "t2"], "s")
        assert set(got) == {fig1.prop("x"), fig1.prop("y")}

    def test_explicit_row_overrides_default(self, fig1):
        model = Model.build(["t1", "t2"], [Statement("s")], {"s": {"t1", "t2"}}, [])
        interp = Interpretation(
            fig1,
            {},
            {
                (frozenset(["t1"]), "s"): AspectSet(fig1, frozenset({fig1.prop("x")})),
                (frozenset(["t1", "t2"]), "s"): AspectSet(fig1, frozenset({fig1.top})),
            },
        )
        assert set(lookup(interp, model, ["t2", "t1"], "s")) == {fig1.top}

    def test_summary_pointers_never_default(self, fig1):
        model = Model.build(
            ["t1", "t2"],
            [Statement("a"), Statement("c", ref_theme="t1", ref_target=None)],
            {"a": {"t1"}, "c": {"t1", "t2"}},
            [],
        )
        interp = Interpretation(
            fig1,
            {},
            {(frozenset(["t1"]), "c"): AspectSet(fig1, frozenset({fig1.prop("x")}))},
        )
        assert lookup(interp, model, ["t1", "t2"], "c").is_empty
        assert set(lookup(interp, model, ["t1"], "c")) == {fig1.prop("x")}

    def test_empty_mode_disables_default(self, fig1):
        model = Model.build(["t1", "t2"], [Statement("s")], {"s": {"t1", "t2"}}, [])
        interp = Interpretation(
            fig1,
            {},
            {(frozenset(["t1"]), "s"): AspectSet(fig1, frozenset({fig1.prop("x")}))},
            default_mode="empty",
        )
        assert lookup(interp, model, ["t1", "t2"], "s").is_empty

    def test_theme_order_insensitive(self, fear):
        a = lookup(fear.interpretation, fear.model, ["t1", "t2"], "s1")
        b = lookup(fear.interpretation, fear.model, ["t2", "t1", "t1"], "s1")
        assert a == b

    def test_unknown_ids_raise(self, fear):
        with pytest.raises(UnknownIdError):
            lookup(fear.interpretation, fear.model, ["nope"], "s1")
        with pytest.raises(UnknownIdError):
            lookup(fear.interpretation, fear.model, ["t1"], "nope")

    def test_monotone_in_theme_set_for_non_summary(self, fear):
        small = lookup(fear.interpretation, fear.model, ["t1"], "s2")
        big = lookup(fear.interpretation, fear.model, ["t1", "t2"], "s2")
        assert small.issubset(big)


class TestEffectiveAspect:
    def test_pair_meets(self, fig1):
        model = Model.build(["t"], [Statement("s")], {"s": {"t"}}, [])
        interp = Interpretation(
            fig1,
            {},
            {
                (frozenset(["t"]), "s"): AspectSet(
                    fig1, frozenset({ev("x | y", fig1), ev("~y", fig1)})
                )
            },
        )
        assert effective_aspect(interp, model, ["t"], "s") == ev("x & ~y", fig1)

    def test_absent(self, fig1):
        model = Model.build(["t"], [Statement("s")], {"s": {"t"}}, [])
        interp = Interpretation(fig1, {}, {})
        assert effective_aspect(interp, model, ["t"], "s") is None

    def test_singleton(self, fig1):
        model = Model.build(["t"], [Statement("s")], {"s": {"t"}}, [])
        interp = Interpretation(
            fig1, {}, {(frozenset(["t"]), "s"): AspectSet(fig1, frozenset({ev("x | y", fig1)}))}
        )
        assert effective_aspect(interp, model, ["t"], "s") == ev("x | y", fig1)

    def test_effective_aspect_below_every_member(self, fear):
        row = lookup(fear.interpretation, fear.model, ["t1"], "s2")
        eff = effective_aspect(fear.interpretation, fear.model, ["t1"], "s2")
        assert all(eff <= member for member in row)


class TestWellformedness:
    def test_untyped_statement(self):
        model = Model.build(["t"], [Statement("s")], {"s": set()}, [])
        problems = validate_wellformed(model)
        assert any("untyped" in v.detail and v.statements == ("s",) for v in problems)

    def test_relation_theme_outside_endpoints(self):
        model = Model.build(
            ["t1", "t2"],
            [Statement("a"), Statement("b")],
            {"a": {"t1"}, "b": {"t1"}},
            [Relation("a", "b", frozenset({"attack"}), frozenset({"t2"}))],
        )
        problems = validate_wellformed(model)
        assert any("outside the themes of its endpoints" in v.detail for v in problems)

    def test_missing_endpoint(self):
        model = Model.build(
            ["t"],
            [Statement("a")],
            {"a": {"t"}},
            [Relation("a", "ghost", frozenset({"attack"}), frozenset({"t"}))],
        )
        assert any("endpoint missing" in v.detail for v in validate_wellformed(model))

    def test_pointer_to_pointer_rejected(self):
        model = Model.build(
            ["t"],
            [
                Statement("a"),
                Statement("p", ref_theme="t", ref_target="a"),
                Statement("q", ref_theme="t", ref_target="p"),
            ],
            {"a": {"t"}, "p": {"t"}, "q": {"t"}},
            [],
        )
        assert any("pointers must reference ordinary" in v.detail for v in validate_wellformed(model))

    def test_untyped_relation(self):
        model = Model.build(
            ["t"],
            [Statement("a"), Statement("b")],
            {"a": {"t"}, "b": {"t"}},
            [Relation("a", "b", frozenset(), frozenset({"t"}))],
        )
        assert any("no attack/support type" in v.detail for v in validate_wellformed(model))

    @pytest.mark.parametrize(
        "name",
        [
            "fear_appeal",
            "false_flag",
            "straw_man",
            "question_begging_opium",
            "question_begging_god",
            "contradictory_conclusion",
        ],
    )
    def test_corpus_is_wellformed(self, name):
        doc = load_path(corpus_path(name))
        assert validate_wellformed(doc.model) == []

    def test_duplicate_pointer_identity_rejected(self):
        # a pointer statement is its (theme, target) reference; two ids for
        # the same reference would make the statement set a multiset
        model = Model.build(
            ["t"],
            [
                Statement("a"),
                Statement("p1", ref_theme="t", ref_target="a"),
                Statement("p2", ref_theme="t", ref_target="a"),
            ],
            {"a": {"t"}, "p1": {"t"}, "p2": {"t"}},
            [],
        )
        assert any(
            v.statements == ("p1", "p2") and "identified by its reference" in v.detail
            for v in validate_wellformed(model)
        )

    def test_duplicate_relations_merge(self):
        model = Model.build(
            ["t1", "t2"],
            [Statement("a"), Statement("b")],
            {"a": {"t1", "t2"}, "b": {"t1", "t2"}},
            [
                Relation("a", "b", frozenset({"attack"}), frozenset({"t1"})),
                Relation("a", "b", frozenset({"support"}), frozenset({"t2"})),
            ],
        )
        assert len(model.relations) == 1
        assert model.relations[0].rel_types == {"attack", "support"}
        assert model.relations[0].themes == {"t1", "t2"}
