"""The catalog of candidate basic components for (n, group) and the
type-vs-class membership matrix built from it."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from normal_cover import arith, membership
from normal_cover.errors import DataLoadError, DomainError, InputError
from normal_cover.typesys import TypeIndex

log = logging.getLogger(__name__)

INTRANSITIVE = "intransitive"
IMPRIMITIVE = "imprimitive"
ALTERNATING = "alternating"
PRIMITIVE = "primitive"

_KIND_ORDER = {INTRANSITIVE: 0, IMPRIMITIVE: 1, ALTERNATING: 2, PRIMITIVE: 3}

GROUPS = ("S", "A")


@dataclass(frozen=True)
class SubgroupClass:
    kind: str
    # x for intransitive classes, b for imprimitive ones
    value: int = 0
    m: int = 0
    name: str = ""
    covered_types: FrozenSet[Tuple[int, ...]] = field(default=frozenset(), compare=False, repr=False)

    @classmethod
    def intransitive(cls, x: int) -> "SubgroupClass":
        return cls(INTRANSITIVE, x)

    @classmethod
    def imprimitive(cls, b: int, n: int) -> "SubgroupClass":
        return cls(IMPRIMITIVE, b, n // b)

    @classmethod
    def alternating(cls) -> "SubgroupClass":
        return cls(ALTERNATING)

    @classmethod
    def primitive(cls, name: str, types: Iterable[Tuple[int, ...]]) -> "SubgroupClass":
        return cls(PRIMITIVE, name=name, covered_types=frozenset(tuple(parts) for parts in types))

    @property
    def sort_key(self) -> tuple:
        return _KIND_ORDER[self.kind], self.value, self.name

    @property
    def label(self) -> str:
        if self.kind == INTRANSITIVE:
            return "P_" + str(self.value)
        if self.kind == IMPRIMITIVE:
            return "W(b=" + str(self.value) + ",m=" + str(self.m) + ")"
        if self.kind == ALTERNATING:
            return "A_n"
        return self.name

    def __str__(self) -> str:
        return self.label


def _check_group(n: int, group: str):
    if group not in GROUPS:
        raise InputError("Group must be S or A, got " + str(group))
    if group == "S" and n < 3:
        raise InputError("The symmetric universe requires n >= 3, got " + str(n))
    if group == "A" and n < 4:
        raise InputError("The alternating universe requires n >= 4, got " + str(n))


def build_universe(n: int, group: str,
                   primitive_classes: Sequence[SubgroupClass] = ()) -> List[SubgroupClass]:
    """ Intransitive P_x (x < n/2), imprimitive S_b wr S_{n/b}, A_n for the symmetric group
    and the given primitive classes, in canonical order. """
    _check_group(n, group)

    classes = [SubgroupClass.intransitive(x) for x in range(1, (n + 1) // 2)]
    classes += [SubgroupClass.imprimitive(b, n) for b in membership.imprimitive_blocks(n)]
    if group == "S":
        classes.append(SubgroupClass.alternating())

    names = set()
    for primitive_class in sorted(primitive_classes, key=lambda item: item.name):
        if primitive_class.kind != PRIMITIVE:
            raise InputError("Not a primitive class: " + str(primitive_class))
        if primitive_class.name in names:
            raise DataLoadError("Primitive class " + primitive_class.name + " is given twice for n = " + str(n))
        names.add(primitive_class.name)
        for parts in sorted(primitive_class.covered_types, reverse=True):
            if sum(parts) != n:
                raise DataLoadError("Primitive class " + primitive_class.name + ": type " +
                                    ",".join(map(str, parts)) + " is not a partition of n = " + str(n))
            if group == "A" and (n - len(parts)) % 2:
                raise DataLoadError("Primitive class " + primitive_class.name + ": type " +
                                    ",".join(map(str, parts)) + " is odd but the group is A_" + str(n))
        classes.append(primitive_class)

    log.debug("Universe of " + group + "_" + str(n) + ": " + ", ".join(str(item) for item in classes))
    return classes


def p_min_predicate(n: int) -> Callable[[int], bool]:
    """ x -> gcd(x, p_1 p_2) = 1, the intransitive classes of the conjectured minimal basic sets. """
    f = arith.factorize(n)
    if f.r < 2:
        raise DomainError("P_min is undefined for the prime power n = " + str(n))
    product = f.prime(1) * f.prime(2)
    return lambda x: gcd(x, product) == 1


def p_min(n: int) -> List[int]:
    predicate = p_min_predicate(n)
    return [x for x in range(1, (n + 1) // 2) if predicate(x)]


def _class_masks(job) -> List[int]:
    """ Worker: per type the bitmask of classes covering it, bit i for universe[i]. """
    parts_chunk, n, intransitive_count, blocks, alternating_bit, primitive_sets = job
    imprimitive_offset = intransitive_count
    primitive_offset = intransitive_count + len(blocks) + (1 if alternating_bit is not None else 0)
    masks = []
    for parts in parts_chunk:
        mask = membership.intransitive_signature(parts, n) >> 1
        if not membership.parts_coprime_two_part(parts, n):
            for offset, b in enumerate(blocks):
                if membership.parts_in_imprimitive(parts, b):
                    mask |= 1 << (imprimitive_offset + offset)
        if alternating_bit is not None and (n - len(parts)) % 2 == 0:
            mask |= 1 << alternating_bit
        for offset, covered in enumerate(primitive_sets):
            if parts in covered:
                mask |= 1 << (primitive_offset + offset)
        masks.append(mask)
    return masks


class MembershipMatrix:
    """ Type-by-class incidence, stored per type as a packed uint64 class mask. """

    def __init__(self, n: int, group: str, type_index: TypeIndex,
                 classes: List[SubgroupClass], masks: np.ndarray):
        self.n = n
        self.group = group
        self.type_index = type_index
        self.classes = classes
        self.masks = masks

    @property
    def num_types(self) -> int:
        return len(self.type_index)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_mask(self, type_position: int) -> int:
        mask = 0
        for word, value in enumerate(self.masks[type_position]):
            mask |= int(value) << (64 * word)
        return mask

    def covering_classes(self, type_position: int) -> List[SubgroupClass]:
        mask = self.class_mask(type_position)
        return [item for position, item in enumerate(self.classes) if (mask >> position) & 1]

    def column(self, class_position: int) -> np.ndarray:
        """ Boolean vector over types: which types the class covers. """
        word, bit = divmod(class_position, 64)
        return ((self.masks[:, word] >> np.uint64(bit)) & np.uint64(1)).astype(bool)

    def row(self, class_position: int) -> np.ndarray:
        """ The covered type set of one class, bit-packed (big-endian bit order). """
        return np.packbits(self.column(class_position))

    def covered_indices(self, class_position: int) -> List[int]:
        return np.flatnonzero(self.column(class_position)).tolist()

    def position_of(self, subgroup_class: SubgroupClass) -> int:
        try:
            return self.classes.index(subgroup_class)
        except ValueError:
            raise InputError(str(subgroup_class) + " is not part of the universe of " +
                             self.group + "_" + str(self.n))


def _to_words(masks: List[int], num_classes: int) -> np.ndarray:
    words = max(1, (num_classes + 63) // 64)
    packed = np.zeros((len(masks), words), dtype=np.uint64)
    for word in range(words):
        shift = 64 * word
        packed[:, word] = np.fromiter(((mask >> shift) & 0xFFFFFFFFFFFFFFFF for mask in masks),
                                      dtype=np.uint64, count=len(masks))
    return packed


def build_matrix(universe: List[SubgroupClass], type_index: TypeIndex, group: Optional[str] = None,
                 workers: int = 1, chunk_size: int = 20000, show_progress: bool = False) -> MembershipMatrix:
    n = type_index.n
    if group is None:
        group = "A" if type_index.even_only else "S"
    _check_group(n, group)
    if (group == "A") != type_index.even_only:
        raise InputError("The type index of " + group + "_" + str(n) +
                         (" must" if group == "A" else " must not") + " be restricted to even types")

    intransitive = [item.value for item in universe if item.kind == INTRANSITIVE]
    blocks = [item.value for item in universe if item.kind == IMPRIMITIVE]
    has_alternating = any(item.kind == ALTERNATING for item in universe)
    primitive_sets = [item.covered_types for item in universe if item.kind == PRIMITIVE]
    if intransitive != list(range(1, (n + 1) // 2)) or blocks != membership.imprimitive_blocks(n) \
            or has_alternating != (group == "S"):
        raise InputError("The universe does not match " + group + "_" + str(n) + "; use build_universe")
    alternating_bit = len(intransitive) + len(blocks) if has_alternating else None

    parts_list = type_index.parts_list
    chunks = [parts_list[start:start + chunk_size] for start in range(0, len(parts_list), chunk_size)]
    jobs = [(chunk, n, len(intransitive), blocks, alternating_bit, primitive_sets) for chunk in chunks]

    log.info("Building the membership matrix of " + group + "_" + str(n) + ": " +
             str(len(parts_list)) + " types x " + str(len(universe)) + " classes")
    masks: List[int] = []
    progress = tqdm(total=len(parts_list), unit="types", disable=not show_progress)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            # map keeps the chunk order, so the matrix does not depend on the worker count
            for chunk_masks in executor.map(_class_masks, jobs):
                masks.extend(chunk_masks)
                progress.update(len(chunk_masks))
    else:
        for job in jobs:
            chunk_masks = _class_masks(job)
            masks.extend(chunk_masks)
            progress.update(len(chunk_masks))
    progress.close()

    return MembershipMatrix(n, group, type_index, list(universe), _to_words(masks, len(universe)))
