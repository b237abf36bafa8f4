from math import gcd

import numpy as np
import pytest

from normal_cover.errors import DataLoadError, DomainError, InputError
from normal_cover.typesys import CycleType, enumerate_types
from normal_cover.universe import ALTERNATING, IMPRIMITIVE, INTRANSITIVE, MembershipMatrix, SubgroupClass, \
    build_matrix, build_universe, p_min


def _matrix(n, group, primitive=(), **options):
    universe = build_universe(n, group, primitive)
    return build_matrix(universe, enumerate_types(n, even_only=group == "A"), group, **options)


def test_universe_sizes():
    assert [item.label for item in build_universe(12, "S")] == [
        "P_1", "P_2", "P_3", "P_4", "P_5",
        "W(b=2,m=6)", "W(b=3,m=4)", "W(b=4,m=3)", "W(b=6,m=2)", "A_n"]
    m12 = SubgroupClass.primitive("M12", [(11, 1), (8, 4)])
    assert len(build_universe(12, "A", [m12])) == 10
    assert [item.label for item in build_universe(6, "A")] == ["P_1", "P_2", "W(b=2,m=3)", "W(b=3,m=2)"]
    assert len(build_universe(7, "S")) == 4


@pytest.mark.parametrize("n, group", [(2, "S"), (3, "A"), (10, "X")])
def test_universe_rejects(n, group):
    with pytest.raises(InputError):
        build_universe(n, group)


def test_primitive_validation():
    good = SubgroupClass.primitive("M", [(5, 1)])
    with pytest.raises(DataLoadError):
        build_universe(6, "S", [good, SubgroupClass.primitive("M", [(3, 3)])])
    with pytest.raises(DataLoadError):
        build_universe(6, "S", [SubgroupClass.primitive("N", [(5, 2)])])
    with pytest.raises(DataLoadError):
        build_universe(6, "A", [SubgroupClass.primitive("N", [(4, 1, 1)])])
    assert build_universe(6, "S", [good])[-1] == good


def test_p_min():
    assert p_min(30) == [1, 5, 7, 11, 13]
    assert p_min(12) == [1, 5]
    assert len(p_min(66)) == 11
    with pytest.raises(DomainError):
        p_min(16)


def test_matrix_columns():
    matrix = _matrix(12, "S")
    assert matrix.num_types == 77
    assert matrix.num_classes == 10

    alternating = matrix.position_of(SubgroupClass.alternating())
    assert matrix.classes[alternating].kind == ALTERNATING
    assert int(matrix.column(alternating).sum()) == 40

    p1 = matrix.covered_indices(matrix.position_of(SubgroupClass.intransitive(1)))
    assert p1 == [index for index, t in enumerate(matrix.type_index) if 1 in t.parts]

    row = matrix.row(alternating)
    assert row.dtype == np.uint8 and len(row) == 10


@pytest.mark.parametrize("n, group", [(6, "S"), (12, "S"), (15, "S"), (20, "S"), (9, "A"), (15, "A")])
def test_full_cycle_rows(n, group):
    matrix = _matrix(n, group)
    full_cycle = matrix.type_index.index_of(CycleType.of([n]))
    for position, item in enumerate(matrix.classes):
        covered = full_cycle in matrix.covered_indices(position)
        if item.kind == IMPRIMITIVE:
            assert covered, item.label
        elif item.kind == INTRANSITIVE:
            assert not covered, item.label


@pytest.mark.parametrize("n", [9, 15, 21, 35])
def test_coprime_two_part_types_have_one_class(n):
    matrix = _matrix(n, "S")
    for x in range(1, (n + 1) // 2):
        if gcd(x, n) != 1:
            continue
        position = matrix.type_index.index_of(CycleType.of([x, n - x]))
        assert [item.label for item in matrix.covering_classes(position)] == ["P_" + str(x)]


def test_covering_classes():
    matrix = _matrix(12, "S")
    position = matrix.type_index.index_of(CycleType.of([11, 1]))
    assert [item.label for item in matrix.covering_classes(position)] == ["P_1", "A_n"]

    matrix = _matrix(6, "S")
    position = matrix.type_index.index_of(CycleType.of([3, 2, 1]))
    labels = [item.label for item in matrix.covering_classes(position)]
    assert labels == ["P_1", "P_2", "W(b=3,m=2)"]


def test_primitive_column():
    m12 = SubgroupClass.primitive("M12", [(11, 1), (8, 4), (1,) * 12])
    matrix = _matrix(12, "A", [m12])
    covered = [matrix.type_index[index].parts for index in matrix.covered_indices(matrix.position_of(m12))]
    assert sorted(covered) == sorted([(11, 1), (8, 4), (1,) * 12])


def test_matrix_does_not_depend_on_workers():
    single = _matrix(20, "S")
    parallel = _matrix(20, "S", workers=2, chunk_size=50)
    assert np.array_equal(single.masks, parallel.masks)


def test_build_matrix_rejects_mismatch():
    with pytest.raises(InputError):
        build_matrix(build_universe(12, "S"), enumerate_types(10))
    with pytest.raises(InputError):
        build_matrix(build_universe(12, "S"), enumerate_types(12, even_only=True), "S")
    with pytest.raises(InputError):
        build_matrix(build_universe(12, "S")[:-1], enumerate_types(12), "S")


def test_position_of_missing_class():
    matrix = _matrix(8, "A")
    with pytest.raises(InputError):
        matrix.position_of(SubgroupClass.alternating())
    assert isinstance(matrix, MembershipMatrix)
