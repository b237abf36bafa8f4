import pytest
from sympy import npartitions
from sympy.utilities.iterables import partitions

from normal_cover.errors import InputError, PartitionCapExceeded
from normal_cover.typesys import CycleType, enumerate_types, is_even, iter_partitions, partition_count, \
    two_part_types


def test_partition_count_matches_sympy():
    for n in range(0, 80):
        assert partition_count(n) == npartitions(n)


def test_iter_partitions_order():
    assert list(iter_partitions(5)) == [
        (5,), (4, 1), (3, 2), (3, 1, 1), (2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)]


@pytest.mark.parametrize("n, count", [(6, 11), (12, 77), (20, 627)])
def test_enumerate_types(n, count):
    types = enumerate_types(n)
    assert len(types) == count
    assert len(set(types.parts_list)) == count
    assert types[0].parts == (n,)
    assert types[len(types) - 1].parts == (1,) * n


def test_even_types():
    types = enumerate_types(6, even_only=True)
    assert types.parts_list == [(5, 1), (4, 2), (3, 3), (3, 1, 1, 1), (2, 2, 1, 1), (1, 1, 1, 1, 1, 1)]
    assert all(is_even(t) for t in types)
    assert len(enumerate_types(12, even_only=True)) == 40


def test_even_types_of_four():
    assert set(enumerate_types(4, even_only=True).parts_list) == {(1, 1, 1, 1), (2, 2), (3, 1)}


@pytest.mark.parametrize("n", [4, 9, 12, 17, 24])
def test_even_type_count_matches_sympy(n):
    even = sum(1 for partition in partitions(n) if (n - sum(partition.values())) % 2 == 0)
    assert len(enumerate_types(n, even_only=True)) == even


@pytest.mark.slow
def test_type_count_up_to_cap():
    for n in range(1, 71):
        assert len(enumerate_types(n)) == npartitions(n), n


def test_index_of():
    types = enumerate_types(8, even_only=True)
    t = CycleType.of([3, 3, 1, 1])
    assert types[types.index_of(t)] == t
    with pytest.raises(InputError):
        types.index_of(CycleType.of([8]))


def test_partition_cap():
    with pytest.raises(PartitionCapExceeded) as raised:
        enumerate_types(80)
    assert raised.value.cap == 70
    assert raised.value.count == partition_count(80)
    with pytest.raises(InputError):
        enumerate_types(10, partition_cap=5)


def test_parse():
    t = CycleType.parse("1, 3,2")
    assert t.parts == (3, 2, 1)
    assert t.n == 6 and t.k == 3
    assert str(t) == "3,2,1"
    assert CycleType.parse("8,2,1,1", 12).parts == (8, 2, 1, 1)


@pytest.mark.parametrize("text, n", [("", None), ("3,2", 6), ("3,x", None), ("3,0", None)])
def test_parse_rejects(text, n):
    with pytest.raises(InputError):
        CycleType.parse(text, n)


def test_invalid_construction():
    with pytest.raises(InputError):
        CycleType(5, (2, 3))
    with pytest.raises(InputError):
        CycleType(6, (3, 2))


def test_parity():
    assert is_even(CycleType.of([3, 1]))
    assert not is_even(CycleType.of([2, 1, 1]))
    assert is_even(CycleType.of([1, 1, 1, 1]))


def test_two_part_types():
    assert [t.parts for t in two_part_types(7)] == [(6, 1), (5, 2), (4, 3)]
    assert [t.parts for t in two_part_types(6)] == [(5, 1), (4, 2)]
