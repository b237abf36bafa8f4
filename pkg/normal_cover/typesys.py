"""Cycle types of S_n, i.e. partitions of n, in canonical nonincreasing form."""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from normal_cover import utils
from normal_cover.errors import InputError, PartitionCapExceeded

log = logging.getLogger(__name__)

# p(70) is about 4.1 million, the largest index a membership matrix is built for by default
DEFAULT_PARTITION_CAP = 70


@dataclass(frozen=True)
class CycleType:
    n: int
    parts: Tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(part < 1 for part in self.parts):
            raise InputError("A cycle type needs positive parts: " + str(self.parts))
        if sum(self.parts) != self.n:
            raise InputError("Parts " + utils.format_parts(self.parts) +
                             " do not sum to n = " + str(self.n))
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise InputError("Parts must be nonincreasing: " + utils.format_parts(self.parts))

    @classmethod
    def of(cls, parts) -> "CycleType":
        parts = tuple(sorted((int(part) for part in parts), reverse=True))
        return cls(sum(parts), parts)

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "CycleType":
        """ Parses "235,17,3" (any order, whitespace allowed). """
        parts = utils.parse_int_list(text)
        if not parts:
            raise InputError("Empty cycle type: " + str(text))
        cycle_type = cls.of(parts)
        if n is not None and cycle_type.n != n:
            raise InputError("Type " + str(cycle_type) + " is not a partition of n = " + str(n))
        return cycle_type

    @property
    def k(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return utils.format_parts(self.parts)


def is_even(t: CycleType) -> bool:
    return (t.n - t.k) % 2 == 0


def partition_count(n: int) -> int:
    """ p(n) by Euler's pentagonal-number recurrence. """
    if n < 0:
        return 0
    counts = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            first = m - k * (3 * k - 1) // 2
            if first < 0:
                break
            sign = 1 if k % 2 == 1 else -1
            total += sign * counts[first]
            second = first - k
            if second >= 0:
                total += sign * counts[second]
            k += 1
        counts[m] = total
    return counts[n]


def iter_partitions(n: int) -> Iterator[Tuple[int, ...]]:
    """ All partitions of n, nonincreasing parts, in descending lexicographic order ([n] first). """
    parts = [n]
    while True:
        yield tuple(parts)
        ones = 0
        while parts and parts[-1] == 1:
            parts.pop()
            ones += 1
        if not parts:
            return
        value = parts.pop() - 1
        remaining = ones + 1
        parts.append(value)
        while remaining >= value:
            parts.append(value)
            remaining -= value
        if remaining:
            parts.append(remaining)


class TypeIndex:
    """ Immutable indexed list of cycle types of S_n (optionally only the even ones). """

    def __init__(self, n: int, parts_list: List[Tuple[int, ...]], even_only: bool = False):
        self.n = n
        self.even_only = even_only
        self._parts = parts_list
        self._positions: Optional[Dict[Tuple[int, ...], int]] = None

    def __len__(self) -> int:
        return len(self._parts)

    def __getitem__(self, index: int) -> CycleType:
        return CycleType(self.n, self._parts[index])

    def __iter__(self) -> Iterator[CycleType]:
        for parts in self._parts:
            yield CycleType(self.n, parts)

    def parts(self, index: int) -> Tuple[int, ...]:
        return self._parts[index]

    @property
    def parts_list(self) -> List[Tuple[int, ...]]:
        return self._parts

    def index_of(self, t: CycleType) -> int:
        if self._positions is None:
            self._positions = {parts: index for index, parts in enumerate(self._parts)}
        if t.n != self.n or t.parts not in self._positions:
            raise InputError("Type " + str(t) + " is not part of the type index of S_" + str(self.n) +
                             (" (even types only)" if self.even_only else ""))
        return self._positions[t.parts]


def enumerate_types(n: int, even_only: bool = False,
                    partition_cap: int = DEFAULT_PARTITION_CAP) -> TypeIndex:
    if n < 1:
        raise InputError("enumerate_types requires n >= 1, got " + str(n))
    if n > partition_cap:
        raise PartitionCapExceeded(n, partition_count(n), partition_cap)

    if even_only:
        parts_list = [parts for parts in iter_partitions(n) if (n - len(parts)) % 2 == 0]
    else:
        parts_list = list(iter_partitions(n))
    log.debug("Enumerated " + str(len(parts_list)) + (" even" if even_only else "") +
              " cycle types of S_" + str(n))
    return TypeIndex(n, parts_list, even_only)


def two_part_types(n: int) -> List[CycleType]:
    """ The types [x, n - x] with 1 <= x < n/2. """
    if n < 3:
        raise InputError("two_part_types requires n >= 3, got " + str(n))
    return [CycleType(n, (n - x, x)) for x in range(1, (n + 1) // 2)]
