import random
from fractions import Fraction

import pytest

from app.core.kcoef import (
    COMMUTATOR_FACTOR,
    ONE,
    Q,
    Q1,
    Q2,
    ZERO,
    KElem,
    is_symmetric,
    qint,
    reduce_mod,
    specialize,
)


def _random_elem(rng: random.Random) -> KElem:
    a, b, c = (rng.randint(-3, 3) for _ in range(3))
    d = rng.randint(-2, 2)
    return (a + b * Q1 + c * Q2**-1) / (1 + d * Q1 * Q2)


def test_canonical_text():
    assert str(ZERO) == "0"
    assert str(ONE) == "1"
    assert str(Q1 * Q2) == "q1*q2"
    assert str(ONE / Q) == "q1^-1*q2^-1"
    assert str(COMMUTATOR_FACTOR) == "q1*q2-q1-q2+1"


def test_parse_reads_canonical_text():
    for value in (COMMUTATOR_FACTOR / (1 - Q), ONE / Q, -3 * Q1**2 + Q2, Fraction(2, 3) * Q1):
        assert KElem.parse(str(value)) == value
    assert KElem.parse("q1**2 - q1^2") == ZERO


@pytest.mark.parametrize("text", ["", "   ", "q3 + 1", "q1 +* 2"])
def test_parse_rejects_malformed_text(text):
    with pytest.raises(ValueError):
        KElem.parse(text)


def test_field_axioms_on_random_triples():
    rng = random.Random(7)
    for _ in range(1000):
        x, y, z = (_random_elem(rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        assert x - x == ZERO
        if x:
            assert x * (1 / x) == ONE


def test_negative_powers():
    assert Q**-2 == ONE / (Q * Q)
    assert (1 - Q1) ** -1 * (1 - Q1) == ONE


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        1 / ZERO


def test_qint():
    assert qint(1) == ONE
    assert qint(3) == 1 + Q**-1 + Q**-2
    with pytest.raises(ValueError):
        qint(0)


def test_symmetry():
    assert is_symmetric(COMMUTATOR_FACTOR)
    assert is_symmetric(Q)
    assert not is_symmetric(Q1)
    assert not is_symmetric(Q1 - Q2**2)


def test_specialize():
    assert specialize(COMMUTATOR_FACTOR, 2, 3) == 2
    assert specialize(ONE / Q1, Fraction(1, 2), 5) == 2
    with pytest.raises(ZeroDivisionError):
        specialize(ONE / (1 - Q1), 1, 2)


def test_reduce_mod():
    assert reduce_mod(Q1, 7, 3, 5) == 3
    assert reduce_mod(ONE / Q1, 7, 3, 5) == 5
    assert reduce_mod(COMMUTATOR_FACTOR, 101, 2, 3) == 2
    with pytest.raises(ZeroDivisionError):
        reduce_mod(ONE / (1 - Q2), 7, 3, 1)


def test_equality_with_integers():
    assert KElem.of(4) == 4
    assert Q1 - Q1 + 2 == 2
    assert KElem.of(Fraction(1, 2)) * 2 == ONE


def test_canonical_form_is_idempotent():
    rng = random.Random(11)
    for _ in range(200):
        value = _random_elem(rng) * _random_elem(rng) - _random_elem(rng)
        text = str(value)
        assert KElem.parse(text) == value
        assert str(KElem.parse(text)) == text


def test_specialize_is_a_ring_homomorphism():
    rng = random.Random(13)
    for _ in range(300):
        x, y = _random_elem(rng), _random_elem(rng)
        # v1 * v2 > 1 keeps 1 + d*q1*q2 away from zero
        v1 = Fraction(rng.randint(2, 9))
        v2 = Fraction(rng.randint(2, 9), rng.randint(1, 3))
        assert specialize(x + y, v1, v2) == specialize(x, v1, v2) + specialize(y, v1, v2)
        assert specialize(x * y, v1, v2) == specialize(x, v1, v2) * specialize(y, v1, v2)
        assert specialize(-x, v1, v2) == -specialize(x, v1, v2)
    assert specialize(ONE, 5, 7) == 1


def test_division_inverts_multiplication_on_random_pairs():
    rng = random.Random(17)
    for _ in range(300):
        x, y = _random_elem(rng), _random_elem(rng)
        if y:
            assert (x / y) * y == x
