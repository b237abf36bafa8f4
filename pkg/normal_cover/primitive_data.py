"""Primitive subgroup classes supplied as data.

A data file lists, for one (n, group), the cycle types met by the union of the
group-conjugates of each primitive class:

    {"n": 12, "group": "A", "classes": [{"name": "M12", "types": [[8, 4], ...]}]}

Files are JSON or YAML. They can be produced from permutation generators with
generate_primitive_data, which enumerates the generated group."""

import json
import logging
import os
import re
from collections import defaultdict
from typing import Dict as TypingDict, Iterable, List, Optional, Sequence, Set, Tuple

import yaml
from addict import Dict
from sympy.combinatorics.perm_groups import PermutationGroup
from sympy.combinatorics.permutations import Permutation
from tqdm import tqdm

from normal_cover import utils
from normal_cover.errors import DataLoadError, InputError
from normal_cover.universe import GROUPS, SubgroupClass

log = logging.getLogger(__name__)

DATA_FILE_EXTENSIONS = (".json", ".yaml", ".yml")


def bundled_data_dir() -> str:
    """ Directory of the primitive data files shipped with the package. """
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "primitive")


def _read_document(path: str) -> Dict:
    try:
        with open(path, "r") as f:
            if path.endswith(".json"):
                document = json.load(f)
            else:
                document = yaml.safe_load(f)
    except (OSError, ValueError, yaml.YAMLError) as ex:
        raise DataLoadError("Failed to read primitive data file " + path + ": " + str(ex))
    if not isinstance(document, dict):
        raise DataLoadError("Primitive data file " + path + " must contain a mapping with n, group and classes.")
    return Dict(document)


def _parse_class(path: str, n: int, group: str, position: int, entry) -> SubgroupClass:
    if not isinstance(entry, dict) or not entry.get("name"):
        raise DataLoadError(path + ": class entry " + str(position) + " needs a name.")
    name = str(entry["name"])
    types = entry.get("types")
    if not isinstance(types, list) or not types:
        raise DataLoadError(path + ": class " + name + " needs a non-empty types list.")

    covered = set()
    for type_position, parts in enumerate(types):
        where = path + ": class " + name + ", type " + str(type_position) + " (" + str(parts) + ")"
        if not isinstance(parts, list) or not parts \
                or any(not isinstance(part, int) or isinstance(part, bool) or part < 1 for part in parts):
            raise DataLoadError(where + " must be a list of positive integers.")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DataLoadError(where + " must have nonincreasing parts.")
        if sum(parts) != n:
            raise DataLoadError(where + " does not sum to n = " + str(n) + ".")
        if group == "A" and (n - len(parts)) % 2:
            raise DataLoadError(where + " is an odd permutation type but the group is A_" + str(n) + ".")
        covered.add(tuple(parts))
    return SubgroupClass.primitive(name, covered)


def load_primitive_data(path: str) -> Tuple[int, str, List[SubgroupClass]]:
    """ Loads one data file and returns (n, group, classes). """
    document = _read_document(path)
    n = document.get("n")
    group = document.get("group")
    if not isinstance(n, int) or n < 1:
        raise DataLoadError(path + ": n must be a positive integer, got " + str(n))
    if group not in GROUPS:
        raise DataLoadError(path + ": group must be S or A, got " + str(group))
    if not isinstance(document.get("classes"), list):
        raise DataLoadError(path + ": classes must be a list.")

    classes = [_parse_class(path, n, group, position, entry)
               for position, entry in enumerate(document.get("classes"))]
    log.debug("Loaded " + str(len(classes)) + " primitive classes of " + group + "_" + str(n) + " from " + path)
    return n, group, classes


def _data_files(directory: str) -> List[str]:
    return sorted(os.path.join(directory, file_name) for file_name in os.listdir(directory)
                  if file_name.endswith(DATA_FILE_EXTENSIONS))


def load_primitive_classes(paths: Iterable[str], n: int, group: str) -> List[SubgroupClass]:
    """ Primitive classes for (n, group) from files and directories. A file given directly
    must match (n, group); files inside a directory are picked only when they match. """
    classes = []
    for path in paths or []:
        if not path:
            continue
        if os.path.isdir(path):
            for file_path in _data_files(path):
                file_n, file_group, file_classes = load_primitive_data(file_path)
                if file_n == n and file_group == group:
                    classes.extend(file_classes)
            continue
        if not os.path.isfile(path):
            raise DataLoadError("Primitive data path does not exist: " + path)
        file_n, file_group, file_classes = load_primitive_data(path)
        if file_n != n or file_group != group:
            raise DataLoadError(path + " holds data for " + file_group + "_" + str(file_n) +
                                ", not for " + group + "_" + str(n) + ".")
        classes.extend(file_classes)

    names = [item.name for item in classes]
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise DataLoadError("Primitive class given more than once for " + group + "_" + str(n) +
                            ": " + ", ".join(duplicates))
    return classes


def parse_cycles(text: str, n: int) -> List[List[int]]:
    """ Parses cycle notation on the points 1..n, e.g. "(1,2,3)(4,10,5,6)", into 0-based cycles. """
    text = (text or "").strip()
    if not text or not re.fullmatch(r"(\(\s*\d+(\s*,\s*\d+)*\s*\)\s*)+", text):
        raise InputError("Generator must be written in cycle notation like (1,2,3)(4,5): " + str(text))
    cycles = []
    seen = set()
    for cycle_text in re.findall(r"\(([^)]*)\)", text):
        cycle = [int(point) - 1 for point in utils.parse_int_list(cycle_text)]
        for point in cycle:
            if point < 0 or point >= n:
                raise InputError("Point " + str(point + 1) + " of " + text + " is outside 1.." + str(n))
            if point in seen:
                raise InputError("Point " + str(point + 1) + " appears twice in " + text)
            seen.add(point)
        cycles.append(cycle)
    return cycles


def _cycle_type(cycles: List[List[int]], n: int) -> Tuple[int, ...]:
    lengths = [len(cycle) for cycle in cycles]
    lengths += [1] * (n - sum(lengths))
    return tuple(sorted(lengths, reverse=True))


def _is_split_type(parts: Sequence[int]) -> bool:
    """ Whether the S_n-class of this type splits into two A_n-classes. """
    return len(set(parts)) == len(parts) and all(part % 2 for part in parts)


def _split_half(cycles: List[List[int]], parts: Tuple[int, ...], n: int) -> int:
    """ 0 or 1: the A_n-class of an element of split type, by the parity of a conjugator
    taking the reference element (consecutive cycles in part order) to it. """
    by_length = {len(cycle): cycle for cycle in cycles}
    conjugator = [0] * n
    offset = 0
    for part in parts:
        cycle = by_length[part]
        for position in range(part):
            conjugator[offset + position] = cycle[position]
        offset += part
    return 0 if Permutation(conjugator).is_even else 1


def generate_primitive_data(name: str, n: int, group: str, generators: Sequence[str],
                            order: Optional[int] = None, show_progress: bool = False) -> Dict:
    """ Enumerates the permutation group generated by the given cycle-notation generators
    and returns a data document with the cycle types it meets.

    For group A every generator must be even. A type whose S_n-class splits in A_n is
    kept only when the subgroup meets both halves; otherwise a conjugate union under A_n
    does not cover the type and it is dropped with a warning."""
    if group not in GROUPS:
        raise InputError("Group must be S or A, got " + str(group))
    if not generators:
        raise InputError("At least one generator is required.")

    permutations = [Permutation(parse_cycles(generator, n), size=n) for generator in generators]
    if group == "A":
        for generator, permutation in zip(generators, permutations):
            if permutation.is_odd:
                raise InputError("Generator " + generator + " is odd, so the group is not inside A_" + str(n))

    subgroup = PermutationGroup(permutations)
    group_order = int(subgroup.order())
    if order is not None and group_order != order:
        raise InputError("The generators of " + name + " generate a group of order " + str(group_order) +
                         ", expected " + str(order))
    log.info("Enumerating the " + str(group_order) + " elements of " + name)

    types: Set[Tuple[int, ...]] = set()
    halves: TypingDict[Tuple[int, ...], Set[int]] = defaultdict(set)
    for element in tqdm(subgroup.generate(af=True), total=group_order, unit="elements",
                        disable=not show_progress):
        cycles = Permutation(element).full_cyclic_form
        parts = _cycle_type(cycles, n)
        types.add(parts)
        if group == "A" and _is_split_type(parts) and len(halves[parts]) < 2:
            halves[parts].add(_split_half(cycles, parts, n))

    for parts in sorted(halves):
        if len(halves[parts]) < 2:
            log.warning(name + " meets only one of the two A_" + str(n) + "-classes of type " +
                        utils.format_parts(parts) + "; the type is dropped.")
            types.discard(parts)

    document = Dict()
    document.n = n
    document.group = group
    document.classes = [{
        "name": name,
        "order": group_order,
        "generators": list(generators),
        "types": [list(parts) for parts in sorted(types, reverse=True)]
    }]
    return document


def write_primitive_data(document: Dict, path: str):
    data = document.to_dict() if isinstance(document, Dict) else dict(document)
    with open(path, "w") as f:
        if path.endswith(".json"):
            json.dump(data, f, indent=2)
            f.write("\n")
        else:
            yaml.dump(data, f, default_flow_style=None, sort_keys=False)
