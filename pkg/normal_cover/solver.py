"""Exact minimum normal covers over the modeled universe, the explicit
size-g(n) cover, and cover verification."""

import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from normal_cover import arith, membership, utils
from normal_cover.errors import DomainError, InfeasibleCoverError, InputError, SearchTimeout
from normal_cover.typesys import TypeIndex, enumerate_types
from normal_cover.universe import ALTERNATING, IMPRIMITIVE, INTRANSITIVE, PRIMITIVE, MembershipMatrix, SubgroupClass, \
    p_min

log = logging.getLogger(__name__)

DEFAULT_ENUMERATE_CAP = 100000

# nodes between two deadline checks
_CLOCK_INTERVAL = 512


@dataclass
class CoverResult:
    n: int
    group: str
    minimum_size: int
    canonical_cover: List[SubgroupClass]
    all_minimum_covers: Optional[List[List[SubgroupClass]]] = None
    truncated: bool = False
    conditional: bool = True
    timed_out: bool = False
    stats: Dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        result = {
            "n": self.n,
            "group": self.group,
            "gamma_modeled": self.minimum_size,
            "canonical_cover": [item.label for item in self.canonical_cover],
            "conditional": self.conditional,
            "timed_out": self.timed_out,
            "stats": dict(self.stats),
        }
        if self.all_minimum_covers is not None:
            result["num_min_covers"] = len(self.all_minimum_covers)
            result["min_covers_truncated"] = self.truncated
        return result


@dataclass
class ReducedInstance:
    """ Minimal types (by covering-class set) against deduplicated classes, as int bitmasks. """
    element_classes: List[int]
    class_elements: List[int]
    # reduced class -> universe positions sharing its column, lowest first
    duplicates: List[List[int]]
    stats: Dict = field(default_factory=dict)

    @property
    def num_classes(self) -> int:
        return len(self.class_elements)

    @property
    def all_elements(self) -> int:
        return (1 << len(self.element_classes)) - 1


def build_g_cover(n: int, group: str = "S") -> List[SubgroupClass]:
    """ P_x for every x < n/2 coprime to p_1 p_2, with S_{p_1} wr S_{n/p_1} and S_{p_2} wr S_{n/p_2}.
    The same classes serve for A_n, read as their intersections with A_n. """
    f = arith.factorize(n)
    if f.r < 2:
        raise DomainError("The explicit cover needs two distinct prime divisors, n = " + str(n) + " = " + str(f))
    if group not in ("S", "A"):
        raise InputError("Group must be S or A, got " + str(group))
    cover = [SubgroupClass.intransitive(x) for x in p_min(n)]
    cover += [SubgroupClass.imprimitive(f.prime(1), n), SubgroupClass.imprimitive(f.prime(2), n)]
    return cover


def verify_cover(matrix: MembershipMatrix, cover: List[SubgroupClass]) -> List[int]:
    """ Type indices of the matrix that no class of the cover covers. """
    words = np.zeros(matrix.masks.shape[1], dtype=np.uint64)
    for subgroup_class in cover:
        position = matrix.position_of(subgroup_class)
        word, bit = divmod(position, 64)
        words[word] |= np.uint64(1) << np.uint64(bit)
    covered = np.any(matrix.masks & words, axis=1)
    return np.flatnonzero(~covered).tolist()


def verify_cover_classes(n: int, group: str, cover: List[SubgroupClass], type_index: Optional[TypeIndex] = None,
                         show_progress: bool = False) -> List[int]:
    """ verify_cover without a membership matrix. Only the cover's own classes are
    evaluated, and each type stops at the first class covering it. """
    if group not in ("S", "A"):
        raise InputError("Group must be S or A, got " + str(group))
    if type_index is None:
        type_index = enumerate_types(n, even_only=group == "A")
    if type_index.n != n or type_index.even_only != (group == "A"):
        raise InputError("The type index does not match " + group + "_" + str(n))

    intransitive = 0
    blocks = []
    alternating = False
    primitive = []
    for subgroup_class in cover:
        if subgroup_class.kind == INTRANSITIVE:
            if not 1 <= subgroup_class.value < n / 2:
                raise InputError(str(subgroup_class) + " is not an intransitive class of S_" + str(n))
            intransitive |= 1 << subgroup_class.value
        elif subgroup_class.kind == IMPRIMITIVE:
            if subgroup_class.value not in membership.imprimitive_blocks(n):
                raise InputError(str(subgroup_class) + " is not an imprimitive class of S_" + str(n))
            blocks.append(subgroup_class.value)
        elif subgroup_class.kind == ALTERNATING:
            if group == "A":
                raise InputError("A_n is not a class of the universe of A_" + str(n))
            alternating = True
        else:
            primitive.append(subgroup_class.covered_types)

    uncovered = []
    for index, parts in enumerate(tqdm(type_index.parts_list, unit="types", disable=not show_progress)):
        if intransitive & membership.intransitive_signature(parts, n):
            continue
        if alternating and (n - len(parts)) % 2 == 0:
            continue
        if any(parts in covered for covered in primitive):
            continue
        if blocks and not membership.parts_coprime_two_part(parts, n) \
                and any(membership.parts_in_imprimitive(parts, b) for b in blocks):
            continue
        uncovered.append(index)
    log.debug(str(len(uncovered)) + " of " + str(len(type_index)) + " types of " + group + "_" + str(n) +
              " are not covered")
    return uncovered


def _row_to_int(row) -> int:
    mask = 0
    for word, value in enumerate(row):
        mask |= int(value) << (64 * word)
    return mask


def reduce_matrix(matrix: MembershipMatrix) -> ReducedInstance:
    if matrix.num_types == 0 or matrix.num_classes == 0:
        raise InputError("Cannot cover an empty membership matrix.")

    empty = ~np.any(matrix.masks, axis=1)
    if empty.any():
        raise InfeasibleCoverError(matrix.type_index[int(np.argmax(empty))])

    distinct = sorted((_row_to_int(row) for row in np.unique(matrix.masks, axis=0)),
                      key=lambda mask: (utils.popcount(mask), mask))
    # a type whose covering set contains another type's covering set is covered for free
    minimal: List[int] = []
    for mask in distinct:
        if not any(kept & mask == kept for kept in minimal):
            minimal.append(mask)

    columns: Dict[int, List[int]] = {}
    for position in range(matrix.num_classes):
        column = 0
        for element, mask in enumerate(minimal):
            if (mask >> position) & 1:
                column |= 1 << element
        if column:
            columns.setdefault(column, []).append(position)

    duplicates = sorted(columns.values(), key=lambda positions: positions[0])
    class_elements = [0] * len(duplicates)
    element_classes = [0] * len(minimal)
    for reduced, positions in enumerate(duplicates):
        representative = positions[0]
        for element, mask in enumerate(minimal):
            if (mask >> representative) & 1:
                class_elements[reduced] |= 1 << element
                element_classes[element] |= 1 << reduced

    stats = {
        "types": matrix.num_types,
        "distinct_type_masks": len(distinct),
        "minimal_types": len(minimal),
        "classes": matrix.num_classes,
        "reduced_classes": len(duplicates),
        "merged_classes": sum(len(positions) - 1 for positions in duplicates),
    }
    log.debug("Reduced " + str(stats))
    return ReducedInstance(element_classes, class_elements, duplicates, stats)


def greedy_cover(instance: ReducedInstance) -> List[int]:
    uncovered = instance.all_elements
    cover = []
    while uncovered:
        best, best_gain = -1, 0
        for reduced, elements in enumerate(instance.class_elements):
            gain = utils.popcount(elements & uncovered)
            if gain > best_gain:
                best, best_gain = reduced, gain
        cover.append(best)
        uncovered &= ~instance.class_elements[best]
    return sorted(cover)


class _Interrupted(Exception):
    pass


class CoverSearch:
    """ Depth-first branch and bound over the reduced instance.

    Branches on the uncovered type with the fewest available classes (lowest index on
    ties). The i-th branch takes the i-th available class and forbids the earlier ones,
    so every cover is reached at most once. The bound packs uncovered types whose
    available class sets are pairwise disjoint; each needs its own class."""

    def __init__(self, instance: ReducedInstance, deadline: Optional[float] = None):
        self.instance = instance
        self.deadline = deadline
        self.nodes = 0
        self.limit = 0
        self.on_cover: Callable[[List[int]], bool] = lambda cover: True

    def _inspect(self, uncovered: int, forbidden: int):
        candidates = []
        for element in utils.iter_bits(uncovered):
            available = self.instance.element_classes[element] & ~forbidden
            if not available:
                return None
            candidates.append((utils.popcount(available), element, available))
        candidates.sort()
        used = 0
        lower = 0
        for _, _, available in candidates:
            if not available & used:
                lower += 1
                used |= available
        return candidates[0][2], lower

    def _dfs(self, uncovered: int, chosen: List[int], forbidden: int) -> bool:
        self.nodes += 1
        if self.deadline is not None and self.nodes % _CLOCK_INTERVAL == 0 and time.monotonic() > self.deadline:
            raise _Interrupted()
        if not uncovered:
            return self.on_cover(chosen)

        inspected = self._inspect(uncovered, forbidden)
        if inspected is None:
            return False
        available, lower = inspected
        if len(chosen) + lower > self.limit:
            return False

        tried = 0
        for reduced in utils.iter_bits(available):
            if self._dfs(uncovered & ~self.instance.class_elements[reduced], chosen + [reduced], forbidden | tried):
                return True
            tried |= 1 << reduced
        return False

    def improve(self, upper: List[int]) -> List[int]:
        """ Smallest cover, starting from a known cover as the incumbent. """
        best = [list(upper)]

        def record(cover: List[int]) -> bool:
            best[0] = sorted(cover)
            self.limit = len(cover) - 1
            return False

        self.limit = len(upper) - 1
        self.on_cover = record
        try:
            self._dfs(self.instance.all_elements, [], 0)
        except _Interrupted:
            raise SearchTimeout(best[0], self.nodes)
        return best[0]

    def exists(self, uncovered: int, chosen: List[int], forbidden: int, limit: int) -> bool:
        self.limit = limit
        self.on_cover = lambda cover: True
        return self._dfs(uncovered, list(chosen), forbidden)

    def enumerate(self, size: int, cap: int) -> Tuple[List[List[int]], bool]:
        """ All covers with exactly `size` classes (size must be the optimum), at most cap. """
        covers: List[List[int]] = []
        truncated = [False]

        def collect(cover: List[int]) -> bool:
            covers.append(sorted(cover))
            if len(covers) >= cap:
                truncated[0] = True
                return True
            return False

        self.limit = size
        self.on_cover = collect
        self._dfs(self.instance.all_elements, [], 0)
        return sorted(covers), truncated[0]

    def canonical(self, size: int) -> List[int]:
        """ The lexicographically least cover of the given (optimal) size. """
        chosen: List[int] = []
        uncovered = self.instance.all_elements
        forbidden = 0
        for reduced in range(self.instance.num_classes):
            if not uncovered:
                break
            remaining = uncovered & ~self.instance.class_elements[reduced]
            if self.exists(remaining, chosen + [reduced], forbidden, size):
                chosen.append(reduced)
                uncovered = remaining
            else:
                forbidden |= 1 << reduced
        return chosen


def _to_classes(matrix: MembershipMatrix, instance: ReducedInstance, cover: List[int]) -> List[SubgroupClass]:
    return [matrix.classes[instance.duplicates[reduced][0]] for reduced in cover]


def min_cover(matrix: MembershipMatrix, enumerate_all: bool = False, time_limit: Optional[float] = None,
              enumerate_cap: int = DEFAULT_ENUMERATE_CAP) -> CoverResult:
    """ Exact minimum cover of all types of the matrix by its classes. """
    start = time.monotonic()
    deadline = start + time_limit if time_limit else None
    conditional = not any(item.kind == PRIMITIVE for item in matrix.classes)

    instance = reduce_matrix(matrix)
    greedy = greedy_cover(instance)
    search = CoverSearch(instance, deadline)
    stats = dict(instance.stats)
    stats["greedy_size"] = len(greedy)

    try:
        best = search.improve(greedy)
        canonical = search.canonical(len(best))
        all_covers, truncated = None, False
        if enumerate_all:
            covers, truncated = search.enumerate(len(best), enumerate_cap)
            all_covers = []
            for cover in covers:
                for expanded in itertools.product(*(instance.duplicates[reduced] for reduced in cover)):
                    all_covers.append([matrix.classes[position] for position in sorted(expanded)])
                    if len(all_covers) >= enumerate_cap:
                        truncated = True
                        break
                if len(all_covers) >= enumerate_cap:
                    break
    except (SearchTimeout, _Interrupted) as ex:
        incumbent = ex.best_cover if isinstance(ex, SearchTimeout) else best
        stats["nodes"] = search.nodes
        stats["wall_time"] = round(time.monotonic() - start, 3)
        log.warning("Time limit of " + str(time_limit) + "s reached for " + matrix.group + "_" + str(matrix.n) +
                    "; best cover found has " + str(len(incumbent)) + " classes")
        return CoverResult(matrix.n, matrix.group, len(incumbent), _to_classes(matrix, instance, incumbent),
                           conditional=conditional, timed_out=True, stats=stats)

    stats["nodes"] = search.nodes
    stats["wall_time"] = round(time.monotonic() - start, 3)
    log.info("Minimum cover of " + matrix.group + "_" + str(matrix.n) + " has " + str(len(best)) +
             " classes (" + str(search.nodes) + " nodes, " + str(stats["wall_time"]) + "s)")
    return CoverResult(matrix.n, matrix.group, len(best), _to_classes(matrix, instance, canonical),
                       all_minimum_covers=all_covers, truncated=truncated, conditional=conditional, stats=stats)


@dataclass
class CoverShape:
    cover: List[str]
    intransitive: List[int]
    p_min_match: Optional[bool]
    wreath_match: Optional[bool]


@dataclass
class CoverStructureReport:
    n: int
    group: str
    p_min: Optional[List[int]]
    covers: List[CoverShape]
    truncated: bool = False

    @property
    def p_min_agree(self) -> int:
        return sum(1 for shape in self.covers if shape.p_min_match)

    @property
    def p_min_disagree(self) -> int:
        return sum(1 for shape in self.covers if shape.p_min_match is False)

    @property
    def expected_shape(self) -> int:
        return sum(1 for shape in self.covers if shape.p_min_match and shape.wreath_match)

    def to_dict(self) -> dict:
        return {
            "p_min": self.p_min,
            "num_covers": len(self.covers),
            "p_min_agree": self.p_min_agree,
            "p_min_disagree": self.p_min_disagree,
            "expected_shape": self.expected_shape,
            "truncated": self.truncated,
            "covers": [{
                "cover": shape.cover,
                "intransitive": shape.intransitive,
                "p_min_match": shape.p_min_match,
                "wreath_match": shape.wreath_match,
            } for shape in self.covers],
        }


def _wreath_match(n: int, p1: int, p2: int, remainder: List[SubgroupClass]) -> bool:
    """ Whether the non-intransitive part is one class of {S_p1 wr S_n/p1, S_n/p1 wr S_p1}
    and one of the same pair for p2. """
    if len(remainder) != 2 or any(item.kind != IMPRIMITIVE for item in remainder):
        return False
    first = {p1, n // p1}
    second = {p2, n // p2}
    a, b = remainder[0].value, remainder[1].value
    return (a in first and b in second) or (a in second and b in first)


def analyze_min_covers(result: CoverResult, n: Optional[int] = None) -> CoverStructureReport:
    """ Compares the intransitive part of every minimum cover with P_min(n) and the rest with
    one wreath class for each of the two smallest primes. Reports only. """
    n = n or result.n
    if result.all_minimum_covers is None:
        raise InputError("analyze_min_covers needs a result computed with enumerate_all.")

    f = arith.factorize(n)
    expected = p_min(n) if f.r >= 2 else None
    shapes = []
    for cover in result.all_minimum_covers:
        intransitive = sorted(item.value for item in cover if item.kind == INTRANSITIVE)
        remainder = [item for item in cover if item.kind != INTRANSITIVE]
        if expected is None:
            shapes.append(CoverShape([item.label for item in cover], intransitive, None, None))
            continue
        shapes.append(CoverShape([item.label for item in cover], intransitive, intransitive == expected,
                                 _wreath_match(n, f.prime(1), f.prime(2), remainder)))
    return CoverStructureReport(n, result.group, expected, shapes, result.truncated)
