"""Decides from a cycle type alone whether a permutation of that type lies in
some conjugate of an intransitive, imprimitive or alternating subgroup class.

Imprimitive membership: a permutation preserving a system of m blocks of size
b permutes the blocks, and the cycles sharing one block orbit of size m_g meet
every block of that orbit in d_i = x_i / m_g points. A type belongs to
S_b wr S_m iff its cycles can be grouped so that in every group m_g divides
each cycle length and the d_i sum to exactly b (the m_g then sum to m)."""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd
from typing import Iterator, List, Optional, Tuple

from normal_cover import arith
from normal_cover.errors import InputError
from normal_cover.typesys import CycleType, is_even

log = logging.getLogger(__name__)

GROUPING_CACHE_SIZE = 1 << 20


@dataclass(frozen=True)
class BlockGroup:
    cycle_indices: Tuple[int, ...]
    lengths: Tuple[int, ...]
    blocks: int

    @property
    def intersections(self) -> Tuple[int, ...]:
        """ d_i = |B cap X_i| for each cycle of the group. """
        return tuple(length // self.blocks for length in self.lengths)

    def __str__(self) -> str:
        return "(" + ",".join(str(length) for length in self.lengths) + ") on " + \
            str(self.blocks) + " block" + ("s" if self.blocks > 1 else "") + \
            " d=" + ",".join(str(d) for d in self.intersections)


@dataclass(frozen=True)
class BlockGrouping:
    b: int
    m: int
    groups: Tuple[BlockGroup, ...]

    def is_valid(self, t: CycleType) -> bool:
        indices = sorted(index for group in self.groups for index in group.cycle_indices)
        if indices != list(range(t.k)):
            return False
        for group in self.groups:
            if any(length % group.blocks for length in group.lengths):
                return False
            if sum(group.intersections) != self.b:
                return False
        return sum(group.blocks for group in self.groups) == self.m

    def __str__(self) -> str:
        return " | ".join(str(group) for group in self.groups)


def subset_sums(parts, limit: int) -> int:
    """ Bitset whose bit s is set iff some sub-multiset of parts sums to s (s <= limit). """
    mask = (1 << (limit + 1)) - 1
    reach = 1
    for part in parts:
        if part <= limit:
            reach |= (reach << part) & mask
    return reach


def intransitive_signature(parts, n: int) -> int:
    """ Bit x set iff the type belongs to P_x, for 1 <= x < n/2. """
    half = (n + 1) // 2 - 1
    return subset_sums(parts, half) & ~1


def in_intransitive(t: CycleType, x: int) -> bool:
    if x < 1 or 2 * x >= t.n:
        raise InputError("Intransitive class needs 1 <= x < n/2, got x = " + str(x) + " for n = " + str(t.n))
    return bool((subset_sums(t.parts, x) >> x) & 1)


def imprimitive_blocks(n: int) -> List[int]:
    """ Block sizes b of the maximal imprimitive classes S_b wr S_{n/b}. """
    return [b for b in arith.divisors(n) if 2 <= b and 2 * b <= n]


def _check_block_size(n: int, b: int):
    if b < 2 or 2 * b > n or n % b:
        raise InputError("Block size b = " + str(b) + " must divide n = " + str(n) + " with 2 <= b <= n/2")


def _completions(rest: Tuple[int, ...], blocks: int, need: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """ Yields (chosen, remainder) for every sub-multiset of rest with all lengths
    divisible by blocks and summing to need; equal lengths are chosen by count. """
    counts = Counter(length for length in rest if length % blocks == 0)
    values = sorted(counts, reverse=True)

    def choose(position: int, left: int):
        if left == 0:
            yield {}
            return
        if position == len(values):
            return
        value = values[position]
        for count in range(min(counts[value], left // value), -1, -1):
            for chosen in choose(position + 1, left - count * value):
                if count:
                    chosen = dict(chosen)
                    chosen[value] = count
                yield chosen

    for chosen in choose(0, need):
        skip = dict(chosen)
        remainder = []
        picked = []
        for length in rest:
            if skip.get(length):
                skip[length] -= 1
                picked.append(length)
            else:
                remainder.append(length)
        yield tuple(picked), tuple(remainder)


@lru_cache(maxsize=GROUPING_CACHE_SIZE)
def _groupable(parts: Tuple[int, ...], b: int) -> bool:
    if not parts:
        return True
    head, rest = parts[0], parts[1:]
    total = head + sum(rest)
    # block count of the head's group, largest first
    for blocks in reversed(arith.divisors(head)):
        target = b * blocks
        if target < head:
            break
        if target > total:
            continue
        for _, remainder in _completions(rest, blocks, target - head):
            if _groupable(remainder, b):
                return True
    return False


def in_imprimitive(t: CycleType, b: int) -> bool:
    _check_block_size(t.n, b)
    return _groupable(t.parts, b)


def parts_in_imprimitive(parts: Tuple[int, ...], b: int) -> bool:
    """ Unchecked variant of in_imprimitive on a canonical parts tuple, for bulk use. """
    return _groupable(parts, b)


def find_block_grouping(t: CycleType, b: int) -> Optional[BlockGrouping]:
    """ A witness grouping for t in S_b wr S_{n/b}, or None. """
    _check_block_size(t.n, b)
    if not _groupable(t.parts, b):
        return None

    groups = []
    parts = t.parts
    free_indices = list(range(t.k))
    while parts:
        head, rest = parts[0], parts[1:]
        found = None
        for blocks in reversed(arith.divisors(head)):
            target = b * blocks
            if target < head:
                break
            if target > sum(parts):
                continue
            for picked, remainder in _completions(rest, blocks, target - head):
                if _groupable(remainder, b):
                    found = (blocks, (head,) + picked, remainder)
                    break
            if found:
                break
        blocks, lengths, parts = found
        indices = []
        for length in lengths:
            index = next(i for i in free_indices if t.parts[i] == length)
            free_indices.remove(index)
            indices.append(index)
        groups.append(BlockGroup(tuple(indices), lengths, blocks))
    return BlockGrouping(b, t.n // b, tuple(groups))


def in_alternating(t: CycleType) -> bool:
    return is_even(t)


def parts_coprime_two_part(parts: Tuple[int, ...], n: int) -> bool:
    """ [x, n - x] with gcd(x, n) = 1; such a type lies in no imprimitive class. """
    return len(parts) == 2 and gcd(parts[1], n) == 1


def is_coprime_two_part(t: CycleType) -> bool:
    return parts_coprime_two_part(t.parts, t.n)


def coprime_two_part_exclusion(t: CycleType, b: int) -> bool:
    """ Membership of a two-part type in S_b wr S_{n/b}: [x, n - x] with gcd(x, n) = 1
    lies in no imprimitive class, so no search is needed. """
    if t.k != 2:
        raise InputError("Expected a type with exactly two parts, got " + str(t))
    _check_block_size(t.n, b)
    if is_coprime_two_part(t):
        return False
    return in_imprimitive(t, b)


def _divides(d: int, value: int) -> bool:
    return value % d == 0


def pattern_verdict(t: CycleType, b: int) -> Optional[bool]:
    """ Imprimitive membership from the explicit block patterns for at most four
    globally coprime cycles; None when the patterns do not apply. """
    _check_block_size(t.n, b)
    parts, n = t.parts, t.n
    if t.k > 4 or reduce(gcd, parts) != 1:
        return None
    if t.k == 2:
        return False

    indices = range(t.k)
    if t.k == 3:
        for single in indices:
            x3 = parts[single]
            others = [parts[i] for i in indices if i != single]
            if _divides(b, x3) and _divides((n - x3) // b, gcd(*others)):
                return True
        return False

    # k == 4: one cycle alone and three sharing blocks
    for single in indices:
        x3 = parts[single]
        others = [parts[i] for i in indices if i != single]
        if _divides(b, x3) and _divides((n - x3) // b, reduce(gcd, others)):
            return True
    # two cycles each a union of blocks, two sharing the rest
    for pair in itertools.combinations(indices, 2):
        x3, x4 = parts[pair[0]], parts[pair[1]]
        x1, x2 = [parts[i] for i in indices if i not in pair]
        if _divides(b, gcd(x3, x4)) and _divides((n - x3 - x4) // b, gcd(x1, x2)):
            return True
    # two pairs, each sharing its own blocks
    for pair in itertools.combinations(indices, 2):
        x3, x4 = parts[pair[0]], parts[pair[1]]
        x1, x2 = [parts[i] for i in indices if i not in pair]
        if _divides(b, x3 + x4) and _divides((x3 + x4) // b, gcd(x3, x4)) \
                and _divides((n - x3 - x4) // b, gcd(x1, x2)):
            return True
    return False
