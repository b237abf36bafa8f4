import re
from typing import List, Tuple

from normal_cover.errors import InputError


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def parse_int_list(text: str) -> List[int]:
    """ Parses "1,2, 3" into [1, 2, 3]. An empty string gives []. """
    if text is None:
        return []
    text = text.strip()
    if not text:
        return []
    try:
        return [int(item) for item in re.split(r"[\s,]+", text) if item]
    except ValueError:
        raise InputError("Not a comma separated list of integers: " + text)


def parse_range(text: str) -> Tuple[int, int]:
    """ Parses an inclusive range written as "A..B" (or a single "A"). """
    match = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*", text or "")
    if not match:
        raise InputError("Range must have the form A..B: " + str(text))
    start = int(match.group(1))
    end = int(match.group(2)) if match.group(2) else start
    if end < start:
        raise InputError("Empty range: " + text)
    return start, end


def parse_groups(text: str) -> List[str]:
    groups = []
    for item in re.split(r"[\s,]+", (text or "").strip().upper()):
        if not item:
            continue
        if item not in ("S", "A"):
            raise InputError("Group must be S or A: " + item)
        if item not in groups:
            groups.append(item)
    if not groups:
        raise InputError("No group given.")
    return groups


def format_parts(parts) -> str:
    return ",".join(str(part) for part in parts)


def simplify_number(num: int) -> str:
    num = float('{:.2g}'.format(num))
    magnitude = 0
    while abs(num) >= 1000:
        magnitude += 1
        num /= 1000.0
    return '{}{}'.format('{:f}'.format(num).rstrip('0').rstrip('.'), ['', 'K', 'M', 'B', 'T'][magnitude])
