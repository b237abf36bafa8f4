import itertools

import pytest

from normal_cover import arith, solver
from normal_cover.errors import DomainError, InfeasibleCoverError, InputError
from normal_cover.primitive_data import bundled_data_dir
from normal_cover.solver import analyze_min_covers, build_g_cover, greedy_cover, min_cover, reduce_matrix, \
    verify_cover, verify_cover_classes
from normal_cover.typesys import CycleType, enumerate_types
from normal_cover.universe import MembershipMatrix, SubgroupClass, build_matrix, build_universe


def _exhaustive(matrix):
    """ Minimum size and all minimum covers (as position tuples) by trying every subset. """
    masks = [matrix.class_mask(position) for position in range(matrix.num_types)]
    for size in range(1, matrix.num_classes + 1):
        covers = []
        for subset in itertools.combinations(range(matrix.num_classes), size):
            chosen = sum(1 << position for position in subset)
            if all(mask & chosen for mask in masks):
                covers.append(subset)
        if covers:
            return size, covers
    raise AssertionError("no cover")


def _positions(matrix, cover):
    return tuple(sorted(matrix.position_of(item) for item in cover))


@pytest.mark.parametrize("n, group, expected", [
    (10, "S", 3),
    (12, "S", 4),
    (6, "A", 2),
    (10, "A", 3),
    (12, "A", 4),
    (15, "S", 5),
    (18, "A", 5),
    (30, "S", 7),
    (30, "A", 7),
])
def test_minimum_values(solve, n, group, expected):
    matrix, result = solve(n, group)
    assert result.minimum_size == expected
    assert result.conditional
    assert not result.timed_out
    assert verify_cover(matrix, result.canonical_cover) == []


def test_alternating_twelve_with_m12(solve):
    matrix, result = solve(12, "A", primitive_data=[bundled_data_dir()])
    assert result.minimum_size == 3
    assert not result.conditional
    cover = [SubgroupClass.primitive("M12", ()), SubgroupClass.imprimitive(3, 12), SubgroupClass.intransitive(5)]
    assert verify_cover(matrix, cover) == []


@pytest.mark.slow
def test_alternating_66(solve):
    _, result = solve(66, "A")
    assert result.minimum_size == 13


@pytest.mark.parametrize("n, group", [(n, "S") for n in range(3, 16)] + [(n, "A") for n in range(4, 16)])
def test_solver_matches_exhaustive_search(solve, n, group):
    if group == "A" and arith.is_prime(n):
        # without primitive classes nothing covers the n-cycle of A_p
        with pytest.raises(InfeasibleCoverError) as raised:
            solve(n, group, enumerate_all_min=True)
        assert raised.value.witness == CycleType.of([n])
        return
    matrix, result = solve(n, group, enumerate_all_min=True)
    size, covers = _exhaustive(matrix)
    assert result.minimum_size == size
    assert not result.truncated
    assert sorted(_positions(matrix, cover) for cover in result.all_minimum_covers) == covers
    assert _positions(matrix, result.canonical_cover) == covers[0]


@pytest.mark.parametrize("n, group", [(24, "S"), (30, "A")])
def test_canonical_cover_does_not_depend_on_workers(solve, n, group):
    _, single = solve(n, group)
    _, parallel = solve(n, group, threads=3, chunk_size=100)
    assert [item.label for item in single.canonical_cover] == [item.label for item in parallel.canonical_cover]
    assert single.minimum_size == parallel.minimum_size


def _check_g_covers(n_values):
    for n in n_values:
        f = arith.factorize(n)
        if f.r < 2:
            continue
        cover = build_g_cover(n)
        assert len(cover) == arith.g_value(f)
        for group in ("S", "A"):
            assert verify_cover_classes(n, group, cover) == [], (n, group)


def test_g_cover_is_valid():
    _check_g_covers(range(6, 31))


@pytest.mark.slow
def test_g_cover_is_valid_up_to_60():
    _check_g_covers(range(31, 61))


@pytest.mark.parametrize("n, group", [(12, "S"), (12, "A"), (18, "S"), (30, "A")])
def test_verify_cover_classes_matches_matrix(n, group):
    matrix = build_matrix(build_universe(n, group), enumerate_types(n, even_only=group == "A"), group)
    for cover in (build_g_cover(n), build_g_cover(n)[1:], build_g_cover(n)[:-1], matrix.classes[-2:]):
        assert verify_cover_classes(n, group, cover, matrix.type_index) == verify_cover(matrix, cover)


def test_verify_cover_classes_rejects_foreign_classes():
    with pytest.raises(InputError):
        verify_cover_classes(12, "S", [SubgroupClass.imprimitive(5, 12)])
    with pytest.raises(InputError):
        verify_cover_classes(12, "S", [SubgroupClass.intransitive(6)])
    with pytest.raises(InputError):
        verify_cover_classes(12, "A", [SubgroupClass.alternating()])
    with pytest.raises(InputError):
        verify_cover_classes(12, "A", build_g_cover(12), enumerate_types(12))


def test_g_cover_needs_two_primes():
    with pytest.raises(DomainError):
        build_g_cover(27)
    labels = [item.label for item in build_g_cover(12)]
    assert labels == ["P_1", "P_5", "W(b=2,m=6)", "W(b=3,m=4)"]


def test_reduction(solve):
    matrix, _ = solve(12, "S")
    instance = reduce_matrix(matrix)
    assert instance.stats["types"] == 77
    assert instance.stats["minimal_types"] <= instance.stats["distinct_type_masks"] <= 77
    assert instance.stats["reduced_classes"] + instance.stats["merged_classes"] <= 10
    greedy = greedy_cover(instance)
    covered = 0
    for reduced in greedy:
        covered |= instance.class_elements[reduced]
    assert covered == instance.all_elements


def test_uncovered_type_is_infeasible(solve):
    matrix, _ = solve(8, "S")
    masks = matrix.masks.copy()
    masks[0] = 0
    broken = MembershipMatrix(matrix.n, matrix.group, matrix.type_index, matrix.classes, masks)
    with pytest.raises(InfeasibleCoverError) as raised:
        min_cover(broken)
    assert raised.value.witness == CycleType.of([8])


def test_time_limit_returns_best_cover(solve, monkeypatch):
    matrix, _ = solve(30, "S")
    monkeypatch.setattr(solver, "_CLOCK_INTERVAL", 1)
    result = min_cover(matrix, time_limit=1e-9)
    assert result.timed_out
    assert result.minimum_size >= 7
    assert verify_cover(matrix, result.canonical_cover) == []


def test_enumerate_cap(solve):
    matrix, _ = solve(12, "S")
    capped = min_cover(matrix, enumerate_all=True, enumerate_cap=1)
    assert capped.truncated
    assert len(capped.all_minimum_covers) == 1


def test_structure_of_minimum_covers(solve):
    _, result = solve(30, "S", enumerate_all_min=True)
    structure = analyze_min_covers(result)
    assert structure.p_min == [1, 5, 7, 11, 13]
    assert len(structure.covers) == len(result.all_minimum_covers)
    assert structure.expected_shape >= 1
    explicit = sorted(item.label for item in build_g_cover(30))
    shapes = [shape for shape in structure.covers if sorted(shape.cover) == explicit]
    assert len(shapes) == 1
    assert shapes[0].p_min_match and shapes[0].wreath_match
    assert structure.to_dict()["num_covers"] == len(structure.covers)


def test_structure_needs_enumeration(solve):
    _, result = solve(12, "S")
    with pytest.raises(InputError):
        analyze_min_covers(result)


def test_result_to_dict(solve):
    _, result = solve(10, "S", enumerate_all_min=True)
    summary = result.to_dict()
    assert summary["gamma_modeled"] == 3
    assert summary["num_min_covers"] == len(result.all_minimum_covers)
    assert summary["canonical_cover"] == [item.label for item in result.canonical_cover]
    assert summary["stats"]["nodes"] >= 1
