from __future__ import annotations

import random

import pytest

from cm_engine.core.errors import CodeSyntaxError, NotInvertible, UnknownGenerator
from cm_engine.ring import (
    GroupWord,
    Letter,
    MagnusSeries,
    Variable,
    commutator_series,
    conjugate_series,
    expand,
    homogeneous_part,
    lowest_degree,
    lowest_degree_with_color,
    parse_word,
    render,
    term_bound,
    without_color,
)

X11 = Variable(1, 1)
X12 = Variable(1, 2)
X21 = Variable(2, 1)
X31 = Variable(3, 1)

m11 = GroupWord.generator(X11)
m12 = GroupWord.generator(X12)
m21 = GroupWord.generator(X21)
m31 = GroupWord.generator(X31)


def _random_word(rng: random.Random, colors: int = 4, length: int = 8) -> GroupWord:
    letters = [
        Letter(Variable(rng.randint(1, colors), rng.randint(1, 2)), rng.choice((1, -1)))
        for _ in range(rng.randint(0, length))
    ]
    return GroupWord.of(letters)


def test_generator_expansion():
    assert expand(m11, 3) == MagnusSeries({(): 1, (X11,): 1}, 3)
    assert expand(m11.inverse(), 3) == MagnusSeries({(): 1, (X11,): -1}, 3)
    assert expand(GroupWord(), 3) == 1


def test_commutator_expansion():
    s = expand(GroupWord.commutator(m11, m21), 2)
    assert s == MagnusSeries({(): 1, (X11, X21): 1, (X21, X11): -1}, 2)
    assert render(s) == "+1 +1·X{1,1}X{2,1} -1·X{2,1}X{1,1}"


def test_same_color_commutator_is_trivial():
    assert expand(GroupWord.commutator(m11, m12), 3) == 1
    assert expand(GroupWord.commutator(m11, m11 ** 2), 3) == 1


def test_multiplication_drops_repeated_colors():
    a = MagnusSeries.generator(X11, 3)
    assert a * MagnusSeries.generator(X21, 3) == MagnusSeries(
        {(): 1, (X11,): 1, (X21,): 1, (X11, X21): 1}, 3
    )
    assert a * MagnusSeries.generator(X12, 3) == MagnusSeries({(): 1, (X11,): 1, (X12,): 1}, 3)
    assert a * a == MagnusSeries({(): 1, (X11,): 2}, 3)


def test_products_truncate_at_degree():
    a = MagnusSeries.generator(X11, 1)
    b = MagnusSeries.generator(X21, 1)
    assert a * b == MagnusSeries({(): 1, (X11,): 1, (X21,): 1}, 1)
    assert (a * MagnusSeries.generator(X21, 5)).degree == 1


def test_inadmissible_monomials_are_dropped():
    assert len(MagnusSeries({(X11, X12): 4}, 3)) == 0
    assert MagnusSeries({(X11, X21, X31): 1}, 2) == 0


def test_inverse_of_unit():
    s = expand(GroupWord.commutator(m31, GroupWord.commutator(m11, m21)), 3)
    assert s * s.inverse() == 1
    assert s.inverse() * s == 1
    assert s ** -1 == s.inverse()


def test_non_unit_is_not_invertible():
    with pytest.raises(NotInvertible):
        MagnusSeries({(X11,): 1}, 2).inverse()
    with pytest.raises(NotInvertible):
        MagnusSeries({(): 2}, 2).inverse()


def test_lowest_degree_examples():
    inner = expand(GroupWord.commutator(m11, m21), 3)
    outer = expand(GroupWord.commutator(m31, GroupWord.commutator(m11, m21)), 3)
    assert lowest_degree(inner) == 2
    assert lowest_degree_with_color(inner, 1) == 2
    assert lowest_degree_with_color(outer, 3) == 3
    assert lowest_degree_with_color(outer, 4) is None
    assert lowest_degree(MagnusSeries.one(3)) is None
    assert lowest_degree(MagnusSeries.one(3), skip_constant=False) == 0


def test_homogeneous_part_and_color_removal():
    s = expand(m11 * m21, 3)
    assert homogeneous_part(s, 1) == MagnusSeries({(X11,): 1, (X21,): 1}, 3)
    assert without_color(s, 2) == MagnusSeries({(): 1, (X11,): 1}, 3)


def test_commutator_series_matches_word_expansion():
    a, b = expand(m11 * m21, 3), expand(m31.inverse(), 3)
    word = GroupWord.commutator(m11 * m21, m31.inverse())
    assert commutator_series(a, b) == expand(word, 3)


def test_expansion_is_a_homomorphism():
    rng = random.Random(1)
    for _ in range(1000):
        u, v = _random_word(rng), _random_word(rng)
        eu, ev = expand(u, 4), expand(v, 4)
        assert expand(u * v, 4) == eu * ev
        assert expand(u.inverse(), 4) == eu.inverse()
        assert eu * expand(u.inverse(), 4) == 1


def test_reduced_relators_vanish():
    rng = random.Random(2)
    for _ in range(1000):
        color = rng.randint(1, 4)
        x = GroupWord.generator(Variable(color, rng.randint(1, 2)))
        y = GroupWord.generator(Variable(color, rng.randint(1, 2)))
        u, v = _random_word(rng), _random_word(rng)
        assert expand(GroupWord.commutator(x.conjugate(u), y.conjugate(v)), 4) == 1


def test_conjugates_keep_the_linear_term():
    rng = random.Random(5)
    for _ in range(300):
        var = Variable(rng.randint(1, 4), rng.randint(1, 2))
        x = GroupWord.generator(var)
        w = _random_word(rng)
        s = conjugate_series(expand(x, 4), expand(w, 4))
        assert s == expand(x.conjugate(w), 4)
        assert lowest_degree(s) == 1
        assert homogeneous_part(s, 1) == MagnusSeries({(var,): 1}, 4)


def test_term_bound():
    assert term_bound([X11, X21], 2) == 5
    assert term_bound([X11, X12, X21, Variable(2, 2)], 2) == 13
    rng = random.Random(3)
    for _ in range(100):
        s = expand(_random_word(rng), 3)
        assert len(s) <= term_bound(s.variables(), 3)


def test_render():
    assert render(MagnusSeries.zero(2)) == "0"
    assert render(MagnusSeries.one(2)) == "+1"
    assert render(MagnusSeries.generator(X11, 2, -1)) == "+1 -1·X{1,1}"


def test_word_reduction_and_text():
    assert str(m11 * m21.inverse()) == "m1,1 m2,1^-1"
    assert str(m11 * m11.inverse()) == "1"
    assert len(m11 ** 3) == 3
    assert (m11 * m21).inverse() == m21.inverse() * m11.inverse()


@pytest.mark.parametrize(
    "text, expected",
    [
        ("m1,1", m11),
        ("1", GroupWord()),
        ("m1,1 m1,1^-1", GroupWord()),
        ("m1,1*m2,1", m11 * m21),
        ("m1,1^2", m11 * m11),
        ("(m1,1 m2,1)^-1", m21.inverse() * m11.inverse()),
        ("[m1,1,m2,1]", GroupWord.commutator(m11, m21)),
        ("[m3,1,[m1,1,m2,1]] m1,2", GroupWord.commutator(m31, GroupWord.commutator(m11, m21)) * m12),
    ],
)
def test_parse_word(text, expected):
    assert parse_word(text) == expected


@pytest.mark.parametrize("text", ["", "m1", "m1,1 ^", "[m1,1 m2,1]", "(m1,1", "x1,1"])
def test_parse_word_rejects_bad_syntax(text):
    with pytest.raises(CodeSyntaxError) as info:
        parse_word(text, line=4, source="rel.pres")
    assert info.value.line == 4


def test_parse_word_checks_generators():
    assert parse_word("m1,1 m2,1", [X11, X21]) == m11 * m21
    with pytest.raises(UnknownGenerator):
        parse_word("m1,1 m3,1", [X11, X21])
