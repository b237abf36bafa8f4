"""Batch verification of gamma = g(n) against the modeled minimum covers,
comparison with known values, and the machine-checkable claims behind the
n = 15q and n = 6q lower bounds."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from addict import Dict
from tqdm import tqdm

from normal_cover import arith, membership, primitive_data
from normal_cover.__version__ import __version__
from normal_cover.errors import InfeasibleCoverError, InputError, NormalCoverError
from normal_cover.known_values import KnownValue, known_gamma
from normal_cover.solver import CoverResult, analyze_min_covers, build_g_cover, min_cover, verify_cover
from normal_cover.typesys import DEFAULT_PARTITION_CAP, CycleType, enumerate_types
from normal_cover.universe import MembershipMatrix, build_matrix, build_universe

log = logging.getLogger(__name__)

__all__ = ["known_gamma", "prepare_configuration", "compute_gamma", "verify_conjectures",
           "family_fixtures", "imprimitive_example_checks"]

PASS = "PASS"
FAIL = "FAIL"
WARN = "WARN"


def prepare_configuration(config: Optional[dict] = None) -> Dict:
    config = Dict(config or {})

    if "partition_cap" not in config:
        config.partition_cap = DEFAULT_PARTITION_CAP

    if "threads" not in config:
        config.threads = 1

    if "enumerate_all_min" not in config:
        config.enumerate_all_min = False

    if "enumerate_cap" not in config:
        config.enumerate_cap = 100000

    if "time_limit" not in config:
        config.time_limit = None

    if "output_format" not in config:
        config.output_format = "text"

    if "primitive_data" not in config:
        config.primitive_data = []

    if "primitive_data_dir" not in config:
        config.primitive_data_dir = None

    if "show_progress" not in config:
        config.show_progress = True

    if "chunk_size" not in config:
        config.chunk_size = 20000

    if config.threads < 1:
        raise InputError("threads must be at least 1, got " + str(config.threads))
    if config.enumerate_cap < 1:
        raise InputError("enumerate_cap must be at least 1, got " + str(config.enumerate_cap))
    if config.output_format not in ("text", "json", "csv", "md"):
        raise InputError("Unknown output format: " + str(config.output_format))

    return config


def _primitive_paths(config: Dict) -> List[str]:
    paths = list(config.primitive_data or [])
    if config.primitive_data_dir:
        paths.append(config.primitive_data_dir)
    return paths


def solve(n: int, group: str, config: Optional[Dict] = None) -> Tuple[MembershipMatrix, CoverResult]:
    config = prepare_configuration(config)
    classes = primitive_data.load_primitive_classes(_primitive_paths(config), n, group)
    universe = build_universe(n, group, classes)
    type_index = enumerate_types(n, even_only=group == "A", partition_cap=config.partition_cap)
    matrix = build_matrix(universe, type_index, group, workers=config.threads,
                          chunk_size=config.chunk_size, show_progress=config.show_progress)
    result = min_cover(matrix, enumerate_all=config.enumerate_all_min, time_limit=config.time_limit,
                       enumerate_cap=config.enumerate_cap)
    return matrix, result


def compute_gamma(n: int, group: str, config: Optional[Dict] = None) -> CoverResult:
    """ The modeled gamma of S_n or A_n: the exact minimum cover over the implemented universe. """
    return solve(n, group, config)[1]


@dataclass
class VerificationItem:
    n: int
    group: str
    g: Optional[int]
    known: KnownValue
    status: str = "ok"
    gamma: Optional[int] = None
    conditional: Optional[bool] = None
    cover: List[str] = field(default_factory=list)
    known_agrees: Optional[bool] = None
    g_agrees: Optional[bool] = None
    within_g: Optional[bool] = None
    g_cover_valid: Optional[bool] = None
    structure: Optional[dict] = None
    nodes: Optional[int] = None
    witness: Optional[str] = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "group": self.group,
            "g": self.g,
            "known": {"kind": self.known.kind, "low": self.known.low, "high": self.known.high,
                      "expected": self.known.value, "source": self.known.source},
            "status": self.status,
            "gamma_modeled": self.gamma,
            "conditional": self.conditional,
            "canonical_cover": self.cover,
            "known_agrees": self.known_agrees,
            "g_agrees": self.g_agrees,
            "within_g": self.within_g,
            "g_cover_valid": self.g_cover_valid,
            "structure": self.structure,
            "nodes": self.nodes,
            "witness": self.witness,
            "note": self.note,
        }


@dataclass
class VerificationReport:
    start: int
    end: int
    groups: List[str]
    items: List[VerificationItem]
    version: str = __version__

    def item(self, n: int, group: str) -> Optional[VerificationItem]:
        for item in self.items:
            if item.n == n and item.group == group:
                return item
        return None

    @property
    def mismatches(self) -> List[VerificationItem]:
        return [item for item in self.items if item.known_agrees is False]

    def table_rows(self) -> List[dict]:
        """ One row per n with the columns of the small-degree table. """
        rows = []
        for n in range(self.start, self.end + 1):
            items = {group: self.item(n, group) for group in ("S", "A")}
            if not any(items.values()):
                continue
            g = next(item.g for item in items.values() if item)
            row = {"n": n}
            for group in ("S", "A"):
                item = items[group]
                row["gamma_" + group] = item.gamma if item else None
            row["g"] = g
            for group in ("S", "A"):
                item = items[group]
                row["conditional_" + group] = item.conditional if item else None
            for group in ("S", "A"):
                item = items[group]
                row["known_" + group] = str(item.known) if item else None
            rows.append(row)
        return rows

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "range": [self.start, self.end],
            "groups": self.groups,
            "items": [item.to_dict() for item in self.items],
            "mismatches": [[item.n, item.group] for item in self.mismatches],
        }


def _verify_item(n: int, group: str, config: Dict) -> VerificationItem:
    known = known_gamma(n, group)
    f = arith.factorize(n)
    g = arith.g_value(f) if f.r >= 2 else None
    item = VerificationItem(n, group, g, known)

    try:
        matrix, result = solve(n, group, config)
    except InfeasibleCoverError as ex:
        log.warning(group + "_" + str(n) + " has no cover in the modeled universe: " + str(ex))
        item.status = "infeasible"
        item.witness = str(ex.witness)
        item.note = "no class of the universe covers the type " + item.witness + \
            (" (no primitive data)" if not _primitive_paths(config) else "")
        return item
    except NormalCoverError as ex:
        log.error("Failed to compute gamma of " + group + "_" + str(n) + ": " + str(ex), exc_info=ex)
        item.status = "error"
        item.note = str(ex)
        return item

    item.gamma = result.minimum_size
    item.conditional = result.conditional
    item.cover = [subgroup.label for subgroup in result.canonical_cover]
    item.nodes = result.stats.get("nodes")
    if result.timed_out:
        item.status = "timeout"
        item.note = "time limit reached, value is an upper bound"
    elif known.kind != "unknown":
        item.known_agrees = known.admits(result.minimum_size)
    if g is not None:
        item.g_agrees = result.minimum_size == g
        item.within_g = result.minimum_size <= g
        item.g_cover_valid = not verify_cover(matrix, build_g_cover(n, group))
    if result.all_minimum_covers is not None:
        summary = analyze_min_covers(result, n).to_dict()
        summary.pop("covers")
        item.structure = summary

    if item.known_agrees is False:
        log.warning(group + "_" + str(n) + ": modeled gamma " + str(item.gamma) + " vs known " + str(known) +
                    (" (no primitive data)" if item.conditional else ""))
    return item


def verify_conjectures(start: int, end: int, groups: Sequence[str] = ("S", "A"),
                       config: Optional[dict] = None) -> VerificationReport:
    """ Modeled gamma, g(n), and the known value for every n in [start, end] and each group.
    A failing, infeasible or timed out n is recorded and does not stop the batch. """
    config = prepare_configuration(config)
    if start > end:
        raise InputError("Empty range " + str(start) + ".." + str(end))
    if end > config.partition_cap:
        raise InputError("The range ends at " + str(end) + ", above the partition cap " + str(config.partition_cap))

    jobs = [(n, group) for n in range(start, end + 1) for group in groups
            if n >= (3 if group == "S" else 4)]
    # the batch bar replaces the per matrix bars
    item_config = Dict(config)
    item_config.show_progress = False

    items = []
    for n, group in tqdm(jobs, unit="instances", disable=not config.show_progress):
        items.append(_verify_item(n, group, item_config))
    log.info("Verified " + str(len(items)) + " instances, " + str(sum(1 for item in items if item.known_agrees is False)) +
             " disagree with the known values")
    return VerificationReport(start, end, list(groups), items)


@dataclass
class FixtureCheck:
    name: str
    expected: object
    computed: object
    status: str
    note: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": _plain(self.expected), "computed": _plain(self.computed),
                "status": self.status, "note": self.note}


def _plain(value):
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    return value


@dataclass
class FixtureReport:
    family: str
    q: int
    n: int
    checks: List[FixtureCheck]
    note: str = ""

    @property
    def passed(self) -> bool:
        return all(check.status != FAIL for check in self.checks)

    def to_dict(self) -> dict:
        return {"family": self.family, "q": self.q, "n": self.n, "passed": self.passed,
                "note": self.note, "checks": [check.to_dict() for check in self.checks]}


def _check(checks: List[FixtureCheck], name: str, expected, computed, note: str = "", tolerated: bool = False):
    if expected == computed:
        status = PASS
    else:
        status = WARN if tolerated else FAIL
    checks.append(FixtureCheck(name, expected, computed, status, note))


def _intransitive_set(t: CycleType) -> set:
    signature = membership.intransitive_signature(t.parts, t.n)
    return {x for x in range(1, (t.n + 1) // 2) if (signature >> x) & 1}


def _imprimitive_classes(t: CycleType) -> List[int]:
    return [b for b in membership.imprimitive_blocks(t.n) if membership.in_imprimitive(t, b)]


def _two_part(n: int, x: int) -> CycleType:
    return CycleType.of([x, n - x])


def _require_prime(q: int, minimum: int):
    if not arith.is_prime(q):
        raise InputError("q = " + str(q) + " must be prime")
    if q < minimum:
        raise InputError("q = " + str(q) + " must be at least " + str(minimum))


def imprimitive_example_checks(q: int) -> List[FixtureCheck]:
    """ Types of S_15q that lie in no imprimitive class: Z, X and U for prime q >= 7,
    and V when q >= 11 and q != 12 (mod 13). """
    _require_prime(q, 7)
    n = 15 * q
    examples = [
        ("Z", [3, q, 14 * q - 3]),
        ("X", [10, 4 * q, 11 * q - 10]),
        ("U", [5, q - 5, 10 * q + 5, 4 * q - 5]),
    ]
    if q >= 11 and q % 13 != 12:
        examples.append(("V", [q - 7, q + 7, 6 * q - 7, 7 * q + 7]))

    checks = []
    for name, parts in examples:
        t = CycleType.of(parts)
        _check(checks, name + " = [" + str(t) + "] in no imprimitive class of S_" + str(n), [], _imprimitive_classes(t))
    return checks


def _family_15q(q: int) -> FixtureReport:
    if not arith.is_prime(q) or q % 2 == 0:
        raise InputError("The 15q family needs q to be an odd prime, got q = " + str(q))
    if q % 15 != 2:
        raise InputError("The 15q family needs q = 2 (mod 15), got q = " + str(q) + " = " + str(q % 15) + " (mod 15)")
    if q % 13 == 12:
        raise InputError("The 15q family needs q != 12 (mod 13), got q = " + str(q))

    n = 15 * q
    f = arith.factorize(n)
    checks: List[FixtureCheck] = []
    _check(checks, "g(n) = 4q + 2", 4 * q + 2, arith.g_value(f))

    coprime = arith.gcd_class_indices(f, 1)
    _check(checks, "|{x < n/2 : gcd(x, n) = 1}| = 4(q - 1)", 4 * (q - 1), len(coprime))
    _check(checks, "|{x < n/2 : gcd(x, n) = 3}| = 2(q - 1)", 2 * (q - 1), len(arith.gcd_class_indices(f, 3)))
    _check(checks, "|{x < n/2 : gcd(x, n) = 5}| = q - 1", q - 1, len(arith.gcd_class_indices(f, 5)))
    _check(checks, "|{x < n/2 : gcd(x, n) = q}| = 4", 4, len(arith.gcd_class_indices(f, q)))
    # primes of n in increasing order: 3, 5, q
    _check(checks, "count of x < n/2 coprime to n by the divisibility count", 4 * (q - 1),
           arith.count_half_open(f, arith.IndexSpec.of(J=[1, 2, 3])))

    z = CycleType.of([3, q, 14 * q - 3])
    x_type = CycleType.of([10, 4 * q, 11 * q - 10])
    u = CycleType.of([5, q - 5, 10 * q + 5, 4 * q - 5])
    v = CycleType.of([q - 7, q + 7, 6 * q - 7, 7 * q + 7])

    p_z = _intransitive_set(z)
    p_x = _intransitive_set(x_type)
    _check(checks, "intransitive classes of Z = {P_3, P_q, P_q+3}", {3, q, q + 3}, p_z)
    _check(checks, "intransitive classes of X = {P_10, P_4q, P_4q+10}", {10, 4 * q, 4 * q + 10}, p_x)
    _check(checks, "P_Z and P_X are disjoint", set(), p_z & p_x)

    checks.extend(imprimitive_example_checks(q))

    p_u = _intransitive_set(u)
    expected_p_u = {5, q, q - 5, 4 * q - 5, 5 * q - 10, 4 * q, 5 * q - 5}
    _check(checks, "intransitive classes of U", expected_p_u, p_u)
    _check(checks, "U lies in no P_x with gcd(x, n) = 1", set(), p_u & coprime)
    _check(checks, "U is an odd permutation", False, membership.in_alternating(u))
    _check(checks, "U lies in no class of P_Z or P_X", set(), p_u & (p_z | p_x),
           note="5 + (q - 5) = q and 5 + (4q - 5) = 4q put U in P_q and P_4q", tolerated=True)

    p_v = _intransitive_set(v)
    _check(checks, "V lies in no P_x with gcd(x, n) = 1", set(), p_v & coprime)
    _check(checks, "V lies in no class of P_U", set(), p_v & p_u)

    return FixtureReport("15q", q, n, checks,
                         "gamma(S_" + str(n) + ") itself is out of reach (too many partitions of n); "
                         "these checks replace the full minimum cover computation.")


def _family_6q(q: int) -> FixtureReport:
    if not arith.is_prime(q) or q < 11:
        raise InputError("The 6q family needs a prime q >= 11, got q = " + str(q))

    n = 6 * q
    f = arith.factorize(n)
    checks: List[FixtureCheck] = []
    _check(checks, "g(n) = q + 2", q + 2, arith.g_value(f))

    coprime = arith.gcd_class_indices(f, 1) - {1}
    _check(checks, "|{1 < x < n/2 : gcd(x, n) = 1}| = q - 2", q - 2, len(coprime))
    even_class = arith.gcd_class_indices(f, 2)
    _check(checks, "|{x < n/2 : gcd(x, n) = 2}| = q - 1", q - 1, len(even_class))
    _check(checks, "|{x < n/2 : gcd(x, n) = 3}| = (q - 1)/2", (q - 1) // 2, len(arith.gcd_class_indices(f, 3)))
    _check(checks, "|{x < n/2 : gcd(x, n) = q}| = 2", 2, len(arith.gcd_class_indices(f, q)),
           note="only x = q lies below n/2 = 3q, so the stated count of 2 is not reproduced", tolerated=True)
    # primes of n in increasing order: 2, 3, q
    _check(checks, "count of x < n/2 with gcd(x, n) = 2 by the divisibility count", q - 1,
           arith.count_half_open(f, arith.IndexSpec.of(I=[1], J=[2, 3])))

    forced = [x for x in sorted(coprime) if _imprimitive_classes(_two_part(n, x))]
    _check(checks, "[x, n - x] with gcd(x, n) = 1 lies in no imprimitive class", [], forced)
    outside = [x for x in sorted(even_class) if _intransitive_set(_two_part(n, x)) & coprime]
    _check(checks, "[x, n - x] with gcd(x, n) = 2 lies in no P_y with gcd(y, n) = 1", [], outside)
    n_cycle = _two_part(n, 1)
    _check(checks, "[n - 1, 1] lies in no imprimitive class", [], _imprimitive_classes(n_cycle))
    _check(checks, "[n - 1, 1] lies in no P_x with 1 < x, gcd(x, n) = 1", set(), _intransitive_set(n_cycle) & coprime)

    return FixtureReport("6q", q, n, checks)


FAMILIES = {"15q": _family_15q, "6q": _family_6q}


def family_fixtures(q: int, family: str) -> FixtureReport:
    """ Checks every machine-checkable claim behind gamma = g(n) for n = 15q (symmetric group)
    or n = 6q (alternating group). """
    if family not in FAMILIES:
        raise InputError("Unknown family " + str(family) + ", expected one of " + ", ".join(FAMILIES))
    report = FAMILIES[family](q)
    for check in report.checks:
        if check.status == WARN:
            log.warning(check.name + ": expected " + str(_plain(check.expected)) + ", computed " +
                        str(_plain(check.computed)) + ". " + check.note)
        elif check.status == FAIL:
            log.error(check.name + ": expected " + str(_plain(check.expected)) + ", computed " +
                      str(_plain(check.computed)))
    return report


def examples_report(q: int) -> FixtureReport:
    return FixtureReport("examples", q, 15 * q, imprimitive_example_checks(q))
