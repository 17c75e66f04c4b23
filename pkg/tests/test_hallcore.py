import random

import pytest

from app.core.hallcore import (
    AlgElem,
    bidegree,
    bracket_ek,
    commutator,
    e_word,
    enk_tuple,
    linear_combination,
    mul,
    parse_word,
    path_product,
    reduced_bracket_with_generator,
    relation_r1,
    tuple_rep,
    unit,
)
from app.core.kcoef import COMMUTATOR_FACTOR, ONE, Q, Q1
from app.core.latpath import LatticeVec
from app.models.core import Half


def _random_element(rng: random.Random) -> AlgElem:
    terms = []
    for _ in range(rng.randint(1, 2)):
        word = tuple(rng.randint(-1, 1) for _ in range(rng.randint(1, 2)))
        terms.append((rng.choice([ONE, Q1, -Q]), e_word(word)))
    return linear_combination(terms)


@pytest.mark.parametrize(
    "n, k, word",
    [(1, 0, (0,)), (2, 1, (0, 1)), (3, 1, (0, 0, 1)), (5, 2, (0, 0, 1, 0, 1)), (4, 2, (0, 0, 1, 1))],
)
def test_enk_tuple(n, k, word):
    assert enk_tuple(n, k)[0] == word


def test_enk_prefactor():
    assert enk_tuple(5, 2)[1] == ONE
    assert enk_tuple(4, 2)[1] == Q
    with pytest.raises(ValueError):
        enk_tuple(0, 1)


def test_word_product_rule():
    product = mul(e_word((0,)), e_word((1,)))
    assert product == e_word((0, 1)) - e_word((-1, 2)).scale(Q)


def test_unit_is_neutral():
    x = e_word((0, 2)) + e_word((1,)).scale(Q1)
    assert mul(unit(), x) == x
    assert mul(x, unit()) == x


def test_multiplication_is_associative():
    rng = random.Random(11)
    for _ in range(50):
        a, b, c = (_random_element(rng) for _ in range(3))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))


def test_grading_and_entry_sum_are_additive():
    rng = random.Random(3)
    for _ in range(50):
        left = tuple(rng.randint(-2, 2) for _ in range(rng.randint(1, 3)))
        right = tuple(rng.randint(-2, 2) for _ in range(rng.randint(1, 3)))
        expected = tuple(a + b for a, b in zip(bidegree(left), bidegree(right)))
        for word in mul(e_word(left), e_word(right)).words():
            assert bidegree(word) == expected


def test_commutator_is_antisymmetric():
    rng = random.Random(5)
    for _ in range(30):
        a, b = _random_element(rng), _random_element(rng)
        assert commutator(a, b) == -commutator(b, a)


def test_closed_form_bracket():
    for k in range(-3, 4):
        expected = e_word((k - 1, k + 1)) + e_word((k, k))
        assert bracket_ek(e_word((k - 1,)), k + 1) == expected
    assert bracket_ek(e_word((2,)), 2).is_zero()
    assert reduced_bracket_with_generator(1, e_word((0,))) == -e_word((0, 1))


def test_relation_r1_vanishes_for_equal_letters():
    assert relation_r1((2,), 2).is_zero()
    assert not relation_r1((0,), 1).is_zero()


def test_relation_r1_single_letters():
    expected = commutator(e_word((0,)), e_word((1,))) - e_word((0, 1)).scale(COMMUTATOR_FACTOR)
    assert relation_r1((0,), 1) == expected


def test_opposite_half_products():
    product = mul(e_word((0,), Half.F), e_word((1,), Half.F))
    assert product == AlgElem.from_terms({(1, 0): ONE, (0, 1): -Q}, Half.F)
    with pytest.raises(ValueError):
        e_word((0,)) + e_word((0,), Half.F)


def test_tuple_rep_and_path_product():
    assert tuple_rep(LatticeVec(-2, 2)) == e_word((0, 2)).scale(Q)
    with pytest.raises(ValueError):
        tuple_rep(LatticeVec(1, 0))
    path = (LatticeVec(-1, 0), LatticeVec(-1, 1))
    assert path_product(path) == mul(e_word((0,)), e_word((1,)))


def test_homogeneous_components():
    x = e_word((0, 1)) + e_word((1,)) + e_word((2, -1))
    components = x.homogeneous_components()
    assert set(components) == {(-2, 1), (-1, 1)}
    assert len(components[(-2, 1)]) == 2


def test_json_form():
    assert e_word((0, 1)).to_json() == {"terms": [{"word": [0, 1], "coef": "1"}]}
    assert AlgElem.zero().to_json() == {"terms": []}


def test_parse_word():
    assert parse_word("0,0,1") == (0, 0, 1)
    assert parse_word(" -1, 2 ") == (-1, 2)
    assert parse_word("") == ()
    with pytest.raises(ValueError):
        parse_word("0,a")
