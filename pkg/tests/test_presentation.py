from __future__ import annotations

from fractions import Fraction

import pytest

from symprod.algebra import DegreeOverflow
from symprod.fixtures import fixture_names, fixture_presentation
from symprod.presentation import (
    AlgebraData,
    NotConnectedError,
    PresentationError,
    betti,
    parse_presentation,
    realize,
)


def test_parse_generators_relations_and_differential():
    p = parse_presentation("gen x:2 y:3 z:5;\nrel x^3, x*y;\nd z = 1/2 x^3;\n")
    assert [(g.name, g.degree) for g in p.generators] == [("x", 2), ("y", 3), ("z", 5)]
    x = p.algebra.gen("x")
    assert p.relations == (x**3, x * p.algebra.gen("y"))
    assert p.differential["z"] == x**3 * Fraction(1, 2)
    assert not p.is_free


def test_comments_leading_minus_and_implicit_product():
    p = parse_presentation("# sphere\ngen x:2 y:3;  # generators\nd y = -2 x x;\n")
    x = p.algebra.gen("x")
    assert p.differential["y"] == x * x * -2


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("gen x:2;\nrel x^;\n", 2, 7),
        ("gen x:2 x:4;\n", 1, 9),
        ("gen x:2;\nrel y^2;\n", 2, 5),
        ("gen x:2\nrel x^2;\n", 2, 1),
    ],
)
def test_parse_errors_carry_positions(text, line, column):
    with pytest.raises(PresentationError) as info:
        parse_presentation(text)
    assert (info.value.line, info.value.column) == (line, column)


@pytest.mark.parametrize(
    "text",
    [
        "gen x:2 y:3;\nrel x^2 + y;\n",  # inhomogeneous
        "gen x:2;\nrel x;\n",  # linear relation
        "gen x:2 y:3;\nd y = x;\n",  # wrong degree
        "gen x:2 y:3;\nd y = x^2;\nd y = x^2;\n",  # twice
        "gen x:2;\nrel 3;\n",  # constant
    ],
)
def test_semantic_errors(text):
    with pytest.raises(PresentationError):
        parse_presentation(text)


def test_degree_zero_generator_is_not_connected():
    with pytest.raises(NotConnectedError):
        parse_presentation("gen x:0;")


@pytest.mark.parametrize("name", fixture_names())
def test_round_trip_fixtures(name):
    p = fixture_presentation(name)
    assert parse_presentation(p.to_text()) == p


def test_realize_truncated_polynomial():
    a = realize(parse_presentation("gen x:2;\nrel x^3;"), 8)
    assert a.betti() == (1, 0, 1, 0, 1, 0, 0, 0, 0)
    (x,) = a.labels(2)
    (x2,) = a.labels(4)
    assert a.mul(x, x) == {x2: 1}
    assert a.mul(x, x2) == {}


def test_realize_reduces_modulo_ideal():
    a = realize(parse_presentation("gen x:2 z:2;\nrel x*z - x^2, z^2;"), 6)
    # degree 4: x^2, xz, z^2 modulo xz - x^2 and z^2
    assert a.betti()[4] == 1
    x, z = (a.label_of_monomial(m) for m in ((1, 0), (0, 1)))
    assert a.mul(x, z) == a.mul(x, x)
    assert a.mul(z, z) == {}


def test_betti_of_graded_commutative_algebra():
    a = realize(parse_presentation("gen a:1 b:1 c:2;"), 4)
    assert betti(a) == (1, 2, 2, 2, 2)


def test_differential_must_square_to_zero():
    ok = realize(parse_presentation("gen x:2 y:3;\nd y = x^2;\n"), 6)
    assert ok.betti()[4] == 1
    with pytest.raises(PresentationError):
        realize(parse_presentation("gen w:1 x:2 y:3;\nd w = x;\nd y = x*w;\n"), 6)


def test_differential_must_preserve_ideal():
    with pytest.raises(PresentationError):
        realize(parse_presentation("gen x:2 y:3;\nrel x*y;\nd y = x^2;\n"), 10)


def test_labels_above_cutoff_overflow():
    a = AlgebraData.trivial({"x": 2}, 4)
    with pytest.raises(DegreeOverflow):
        a.labels(5)
