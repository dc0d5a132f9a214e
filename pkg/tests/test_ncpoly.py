import random

import pytest

from ncfactor.fields import GF2, QQ
from ncfactor.ncpoly import (Alphabet, NcPoly, bar, imbalance, left_divide,
                             right_divide, word_key)

AB = Alphabet.bivariate()


def biv(text, field=QQ):
    """Shorthand: sum of +1-coefficient monomials, '1' for the empty word."""
    return NcPoly(AB, field, [(AB.word_from_str(tok), field.one)
                              for tok in text.split("+")])


def rand_poly(rng, alphabet, field, max_deg=3, max_terms=4):
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.randrange(alphabet.size) for _ in range(rng.randint(0, max_deg)))
        c = field.from_int(rng.randint(-3, 3)) if field is QQ else field.from_int(rng.randrange(field.p))
        terms.append((w, c))
    return NcPoly(alphabet, field, terms)


def test_multiply_expansion():
    x, y = NcPoly.variable(AB, QQ, 0), NcPoly.variable(AB, QQ, 1)
    assert (x + y) * (x - y) == x * x - x * y + y * x - y * y


def test_multiply_identity():
    rng = random.Random(5)
    one = NcPoly.one(AB, QQ)
    for _ in range(10):
        f = rand_poly(rng, AB, QQ)
        assert f * one == f and one * f == f


def test_multiply_paper_example():
    x, y = NcPoly.variable(AB, QQ, 0), NcPoly.variable(AB, QQ, 1)
    one = NcPoly.one(AB, QQ)
    assert x * (one + y * x) == x + x * y * x


def test_alphabet_mismatch_rejected():
    f = NcPoly.variable(AB, QQ, 0)
    g = NcPoly.variable(Alphabet.nvars(3), QQ, 0)
    with pytest.raises(ValueError):
        f * g
    with pytest.raises(ValueError):
        NcPoly.variable(AB, QQ, 0) * NcPoly.variable(AB, GF2, 0)


def test_leading_monomial():
    assert biv("xy+yx").leading_monomial() == AB.word_from_str("xy")
    assert biv("x+yy").leading_monomial() == AB.word_from_str("yy")
    assert biv("xxyy+xyxy").leading_monomial() == AB.word_from_str("xxyy")
    with pytest.raises(ValueError):
        NcPoly.zero(AB, QQ).leading_monomial()


def test_degree_of_zero_is_sentinel():
    z = NcPoly.zero(AB, QQ)
    assert z.degree == float("-inf")
    assert z.degree < 0


def test_imbalance():
    assert imbalance(AB.word_from_str("xxy")) == 1
    assert imbalance(()) == 0
    assert imbalance(AB.word_from_str("xyxy")) == 0


def test_bar():
    assert bar(AB.word_from_str("xy")) == AB.word_from_str("yx")
    assert bar(AB.word_from_str("xxyy")) == AB.word_from_str("yyxx")
    assert bar(()) == ()
    rng = random.Random(1)
    for _ in range(50):
        w = tuple(rng.randrange(2) for _ in range(rng.randint(0, 8)))
        assert bar(bar(w)) == w


def test_bar_reverses_order_on_equal_degree():
    rng = random.Random(2)
    for _ in range(100):
        d = rng.randint(1, 7)
        w1 = tuple(rng.randrange(2) for _ in range(d))
        w2 = tuple(rng.randrange(2) for _ in range(d))
        if w1 == w2:
            continue
        assert (word_key(w1) < word_key(w2)) == (word_key(bar(w2)) < word_key(bar(w1)))


def test_left_divide_paper_examples():
    x, y = NcPoly.variable(AB, QQ, 0), NcPoly.variable(AB, QQ, 1)
    one = NcPoly.one(AB, QQ)
    f = x + x * y * x
    assert left_divide(f, x) == one + y * x
    assert left_divide(f, one + x * y) == x
    assert left_divide(x * y, y * x) is None


def test_left_divide_zero_divisor_rejected():
    with pytest.raises(ZeroDivisionError):
        left_divide(biv("xy"), NcPoly.zero(AB, QQ))


def test_division_round_trip():
    rng = random.Random(9)
    for _ in range(60):
        alphabet = AB if rng.random() < 0.5 else Alphabet.nvars(3)
        field = QQ if rng.random() < 0.5 else GF2
        g = rand_poly(rng, alphabet, field)
        h = rand_poly(rng, alphabet, field)
        if g.is_zero() or h.is_zero():
            continue
        assert left_divide(g * h, g) == h
        assert right_divide(g * h, h) == g


def test_degree_additivity_and_order_multiplicativity():
    rng = random.Random(10)
    for _ in range(60):
        f = rand_poly(rng, AB, QQ)
        g = rand_poly(rng, AB, QQ)
        if f.is_zero() or g.is_zero():
            continue
        prod = f * g
        assert prod.degree == f.degree + g.degree
        assert prod.leading_monomial() == f.leading_monomial() + g.leading_monomial()


def test_serialization_round_trip_and_canonical_bytes():
    rng = random.Random(12)
    for _ in range(20):
        alphabet = AB if rng.random() < 0.5 else Alphabet.nvars(4)
        field = QQ if rng.random() < 0.5 else GF2
        f = rand_poly(rng, alphabet, field)
        text = f.to_text()
        back = NcPoly.from_text(text)
        assert back == f
        assert back.to_text() == text


def test_serialization_formats():
    f = biv("xxyy+1")
    assert f.to_text() == "ncpoly field=Q alphabet=xy\n1 xxyy\n1 1\n"
    g = NcPoly(Alphabet.nvars(3), QQ, [((2, 0), QQ.one)])
    assert g.to_text() == "ncpoly field=Q alphabet=x1..x3\n1 x3.x1\n"
    assert NcPoly.from_text("ncpoly field=Q alphabet=xy\n").is_zero()
