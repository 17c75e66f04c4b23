from fractions import Fraction

import numpy as np
import pytest

from app.core.brute_force import (
    brute_count_comm,
    brute_count_quot,
    brute_count_quot_flag,
    brute_locus_L,
    is_cyclic,
)
from app.core.point_counts import (
    InfeasibleEnumeration,
    centralizer_order,
    clear_count_cache,
    count_comm,
    count_comm4_components,
    count_family,
    count_locus_L,
    count_locus_M,
    count_quot,
    count_quot_flag,
    locus_L_distribution,
    nilpotent_pair_ranks,
    quot_flag_record,
    quot_record,
)
from app.models.core import CountFamily


@pytest.mark.parametrize("q, expected", [(2, 40), (3, 297)])
def test_comm3_counts(q, expected):
    assert count_comm(3, q) == expected
    assert brute_count_comm(3, q) == expected


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_small_comm_counts(q):
    assert count_comm(1, q) == 1
    assert count_comm(2, q) == q**2
    assert count_comm(3, q) == q**5 + q**4 - q**3


def test_comm4_against_brute_force():
    assert count_comm(4, 2) == brute_count_comm(4, 2)


def test_comm_rejects_bad_input():
    with pytest.raises(ValueError):
        count_comm(5, 2)
    with pytest.raises(ValueError):
        count_comm(3, 4)


def test_comm4_components_partition_the_count():
    for q in (2, 3):
        parts = count_comm4_components(q)
        assert parts["z1"] + parts["z2_open"] == count_comm(4, q)
        assert parts["z1"] > 0 and parts["z2_open"] > 0


def test_counts_do_not_depend_on_parallelism(settings, monkeypatch):
    clear_count_cache()
    serial = count_comm(4, 3)
    clear_count_cache()
    monkeypatch.setattr(settings, "hall_threads", 4)
    monkeypatch.setattr(settings, "enumeration_chunk", 7)
    assert count_comm(4, 3) == serial


def test_comm4_split_reuses_the_full_count(monkeypatch):
    import app.core.point_counts as point_counts

    clear_count_cache()
    count_comm(4, 3)
    labels = []
    real = point_counts.run_chunked

    def recording(task, blocks, label):
        labels.append(label)
        return real(task, blocks, label=label)

    monkeypatch.setattr(point_counts, "run_chunked", recording)
    count_comm4_components(3)
    count_comm(4, 3)
    assert len(labels) == 1


def test_infeasible_enumeration_is_refused(settings, monkeypatch):
    monkeypatch.setattr(settings, "max_enumeration", 10)
    with pytest.raises(InfeasibleEnumeration):
        count_comm(4, 2)


def test_locus_L_for_n2():
    for q in (2, 3, 5):
        assert locus_L_distribution(2, q) == {0: 1, 1: q**2 - 1}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_locus_L_partitions_comm(n):
    distribution = locus_L_distribution(n, 3)
    assert distribution[0] == 1
    assert sum(distribution.values()) == count_comm(n, 3)


@pytest.mark.parametrize("n", [3, 4])
def test_locus_L_against_brute_force(n):
    assert locus_L_distribution(n, 2) == brute_locus_L(n, 2)


def test_locus_L_rejects_lambda_out_of_range():
    with pytest.raises(ValueError):
        count_locus_L(3, 3, 2)


def test_centralizer_order():
    assert centralizer_order((1, 1), 2) == 6
    assert centralizer_order((2,), 3) == 2 * 3


def test_nilpotent_pair_ranks_d1():
    assert nilpotent_pair_ranks(1, 5) == {0: 1}


@pytest.mark.parametrize("q", [2, 3, 5])
def test_quot_small_cases(q):
    assert count_quot(0, 2, q) == 1
    assert count_quot(1, 1, q) == 1
    assert count_quot(2, 1, q) == q + 1
    assert count_quot(1, 2, q) == q + 1


@pytest.mark.parametrize("d, r, q", [(2, 1, 2), (1, 2, 3), (2, 2, 2), (3, 1, 2)])
def test_quot_against_brute_force(d, r, q):
    assert Fraction(count_quot(d, r, q)) == brute_count_quot(d, r, q)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("r", [1, 2])
def test_quot_raw_is_divisible_by_group_order(d, r):
    record = quot_record(d, r, 3)
    assert record.raw % record.group_order == 0
    assert record.count == Fraction(record.raw, record.group_order)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_flag_quot_small_cases(q):
    assert count_quot_flag(0, 1, 1, q) == 1
    assert count_quot_flag(0, 2, 1, q) == q + 1
    assert count_quot_flag(0, 1, 2, q) == q + 1
    assert count_quot_flag(1, 1, 1, q) == q + 1


@pytest.mark.parametrize("d, n, r, q", [(0, 2, 1, 2), (0, 2, 2, 2), (1, 1, 1, 3), (1, 2, 1, 2)])
def test_flag_quot_against_brute_force(d, n, r, q):
    assert quot_flag_record(d, n, r, q).count == brute_count_quot_flag(d, n, r, q)


def test_flag_quot_rejects_large_d():
    with pytest.raises(ValueError):
        count_quot_flag(2, 1, 1, 2)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("r", [1, 2])
def test_locus_M_partitions_quot(d, r):
    q = 2
    total = sum(count_locus_M(d, mu, r, q) for mu in range(d + 1))
    assert total == quot_record(d, r, q).raw


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("r", [1, 2])
def test_locus_M_empty_outside_range(d, r):
    allowed = range(max(0, d - r), d)
    for mu in range(d + 1):
        if mu not in allowed:
            assert count_locus_M(d, mu, r, 3) == 0


def test_is_cyclic():
    x = np.array([[0, 0], [1, 0]])
    y = np.zeros((2, 2), dtype=np.int64)
    assert is_cyclic(x, y, np.array([[1], [0]]), 2)
    assert not is_cyclic(x, y, np.array([[0], [1]]), 2)


def test_count_family_dispatch():
    record = count_family(CountFamily.COMM, 2, n=3)
    assert (record.raw, record.count, record.n) == (40, Fraction(40), 3)
    record = count_family(CountFamily.QUOT, 2, d=2, r=1)
    assert record.count == 3 and record.group_order == 6
    record = count_family(CountFamily.LOCUS_L, 3, n=2, lam=1)
    assert record.raw == 8 and record.lam == 1
    with pytest.raises(ValueError):
        count_family(CountFamily.QUOT, 2, d=2)
