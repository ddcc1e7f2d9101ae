import random
from fractions import Fraction

import pytest

from ambilogic import formula as fm
from ambilogic.errors import FormulaSyntaxError, UnknownAgent
from ambilogic.generators import random_surface_formula


def roundtrip(text):
    f = fm.parse(text)
    assert fm.parse(fm.print_formula(f)) == f
    return f


def test_parse_atomic():
    assert fm.parse("p") == fm.Prop("p")
    assert fm.parse("p@2") == fm.IndexedProp("p", 2)
    assert fm.parse("true") == fm.TrueF()
    assert fm.parse("false") == fm.FalseF()


def test_parse_probability_formula():
    f = fm.parse("2/3*Pr1(p) + 1/3*Pr1(q) >= 1/2")
    assert f == fm.ProbGe(
        ((Fraction(2, 3), 1, fm.Prop("p")),
         (Fraction(1, 3), 1, fm.Prop("q"))),
        Fraction(1, 2))
    assert f.agent == 1


def test_parse_modal_composition():
    f = fm.parse("CB{1,2}(B1 p & B2 !p)")
    assert f == fm.CB(frozenset({1, 2}),
                      fm.And(fm.B(1, fm.Prop("p")),
                             fm.B(2, fm.Not(fm.Prop("p")))))


def test_parse_group_belief():
    assert fm.parse("E{1,2} p") == fm.EB(frozenset({1, 2}), 1, fm.Prop("p"))
    assert fm.parse("E{1}^3 p") == fm.EB(frozenset({1}), 3, fm.Prop("p"))


def test_parse_comparison_sugar():
    terms = ((Fraction(1), 2, fm.Prop("p")),)
    neg = ((Fraction(-1), 2, fm.Prop("p")),)
    half = Fraction(1, 2)
    assert fm.parse("Pr2(p) = 1/2") == fm.And(fm.ProbGe(terms, half),
                                              fm.ProbGe(neg, -half))
    assert fm.parse("Pr2(p) <= 1/2") == fm.ProbGe(neg, -half)
    assert fm.parse("Pr2(p) > 1/2") == fm.Not(fm.ProbGe(neg, -half))
    assert fm.parse("Pr2(p) < 1/2") == fm.Not(fm.ProbGe(terms, half))


def test_parse_propositional_connectives():
    f = fm.parse("p -> q -> r")
    assert f == fm.Implies(fm.Prop("p"),
                           fm.Implies(fm.Prop("q"), fm.Prop("r")))
    g = fm.parse("p | q & r <-> s")
    assert isinstance(g, fm.Iff)
    assert g.left == fm.Or(fm.Prop("p"), fm.And(fm.Prop("q"), fm.Prop("r")))


def test_parse_errors_carry_offset_and_expectations():
    with pytest.raises(FormulaSyntaxError) as err:
        fm.parse("p &")
    assert err.value.offset == 3
    assert err.value.found == "end of input"
    with pytest.raises(FormulaSyntaxError) as err:
        fm.parse("Pr1(p) >= 1/0")
    assert "denominator" in str(err.value)
    with pytest.raises(FormulaSyntaxError):
        fm.parse("(p")
    with pytest.raises(FormulaSyntaxError):
        fm.parse("")


def test_parse_rejects_mixed_agents_in_one_comparison():
    with pytest.raises(FormulaSyntaxError) as err:
        fm.parse("Pr1(p) + Pr2(q) >= 1")
    assert "one agent" in str(err.value)


def test_parse_rejects_nonpositive_agents():
    for bad in ("B0 p", "Pr0(p) >= 1", "CB{0} p", "p@0", "E{0} p"):
        with pytest.raises(UnknownAgent):
            fm.parse(bad)


def test_print_examples():
    assert fm.print_formula(fm.Prop("p")) == "p"
    assert fm.print_formula(fm.B(1, fm.Prop("p"))) == "B1 p"
    assert fm.print_formula(
        fm.ProbGe(((Fraction(1), 2, fm.Prop("p")),), Fraction(1, 2))
    ) == "Pr2(p) >= 1/2"
    assert fm.print_formula(fm.parse("CB{1,2}(B1 p & B2 !p)")) \
        == "CB{1,2}(B1 p & B2 !p)"


def test_print_negative_coefficients_reparse():
    f = fm.ProbGe(((Fraction(-1), 1, fm.Prop("p")),
                   (Fraction(1, 2), 1, fm.Prop("q"))), Fraction(-1, 3))
    text = fm.print_formula(f)
    assert fm.parse(text) == f


def test_sugar_belief_printing_expands_back():
    f = fm.ProbGe(((Fraction(1), 1, fm.IndexedProp("p", 1)),), Fraction(1))
    assert fm.print_formula(f, sugar_beliefs=True) == "B1 p@1"
    assert fm.expand(fm.parse("B1 p@1")) == f


def test_expand_belief():
    assert fm.expand(fm.parse("B2 p")) == fm.ProbGe(
        ((Fraction(1), 2, fm.Prop("p")),), Fraction(1))


def test_expand_group_belief_once():
    got = fm.expand(fm.parse("E{1,2} p"))
    b1 = fm.ProbGe(((Fraction(1), 1, fm.Prop("p")),), Fraction(1))
    b2 = fm.ProbGe(((Fraction(1), 2, fm.Prop("p")),), Fraction(1))
    assert got == fm.And(b1, b2)


def test_expand_group_belief_iterated():
    got = fm.expand(fm.parse("E{1}^2 p"))
    inner = fm.ProbGe(((Fraction(1), 1, fm.Prop("p")),), Fraction(1))
    assert got == fm.ProbGe(((Fraction(1), 1, inner),), Fraction(1))


def test_expand_true_uses_designated_proposition():
    got = fm.expand(fm.TrueF(), "q")
    q = fm.Prop("q")
    assert got == fm.Not(fm.And(fm.Not(q), fm.Not(fm.Not(q))))
    # without an explicit choice, the first proposition in the formula wins
    got2 = fm.expand(fm.And(fm.Prop("r"), fm.TrueF()))
    assert "r" in fm.propositions(got2)


def test_expand_idempotent():
    rng = random.Random(11)
    for _ in range(200):
        f = random_surface_formula(rng, ["p", "q"], 2, 3)
        once = fm.expand(f, "p")
        assert fm.expand(once, "p") == once


def test_is_propositional():
    assert fm.is_propositional(fm.parse("!(p & q)"))
    assert fm.is_propositional(fm.parse("p | q -> r <-> true"))
    assert not fm.is_propositional(fm.parse("Pr1(p) >= 1"))
    assert not fm.is_propositional(fm.parse("CB{1} p"))
    assert not fm.is_propositional(fm.parse("B1 p"))
    assert not fm.is_propositional(fm.parse("p@1"))


def test_subformulas_postorder_distinct():
    p, q = fm.Prop("p"), fm.Prop("q")
    assert fm.subformulas(fm.And(p, q)) == [p, q, fm.And(p, q)]
    assert fm.subformulas(fm.Not(p)) == [p, fm.Not(p)]
    assert fm.subformulas(p) == [p]
    twice = fm.And(p, p)
    assert fm.subformulas(twice) == [p, twice]


def test_propositions_and_agents():
    f = fm.parse("CB{1,3}(Pr2(p@2) >= 1/2 & q)")
    assert fm.propositions(f) == frozenset({"p@2", "q"})
    assert fm.agents_in(f) == frozenset({1, 2, 3})


def test_roundtrip_samples():
    for text in [
        "p", "!p", "p & q & r", "p | (q & !r)", "(p -> q) -> r",
        "B1 !p", "CB{2} Pr1(p) >= 1",
        "E{1,2}^2 (p | q)", "Pr1(Pr2(p) >= 1/2) >= 1/3",
        "-1/2*Pr1(p) + 2*Pr1(q) >= -2/3",
        "CB{1,2}(B1 p@1 & B2 p@2)",
    ]:
        roundtrip(text)


def test_roundtrip_generated():
    rng = random.Random(5)
    for _ in range(500):
        f = random_surface_formula(rng, ["p", "q", "r"], 3, 4)
        text = fm.print_formula(f)
        assert fm.parse(text) == f, text


def test_probge_constructor_validates():
    with pytest.raises(ValueError):
        fm.ProbGe((), Fraction(1))
    with pytest.raises(ValueError):
        fm.ProbGe(((Fraction(1), 1, fm.Prop("p")),
                   (Fraction(1), 2, fm.Prop("q"))), Fraction(1))
    with pytest.raises(ValueError):
        fm.CB(frozenset(), fm.Prop("p"))
