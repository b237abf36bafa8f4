"""What is known about gamma(S_n) and gamma(A_n), with the strongest statement first:
the small-degree table, exact results for special degrees and families, the
closed formulas for prime powers and two-prime degrees, then the conjecture
gamma = g(n)."""

from dataclasses import dataclass
from typing import Optional

from normal_cover import arith
from normal_cover.errors import InputError

EXACT = "exact"
RANGE = "range"
CONJECTURED_G = "conjectured_g"
UNKNOWN = "unknown"

SOURCE_TABLE = "small-degree table"
SOURCE_SPECIAL = "special degree"
SOURCE_FAMILY_15Q = "n = 15q family"
SOURCE_FAMILY_6Q = "n = 6q family"
SOURCE_PRIME = "prime degree"
SOURCE_PRIME_POWER = "prime power degree"
SOURCE_TWO_PRIMES = "two prime divisors"
SOURCE_CONJECTURE = "conjecture gamma = g(n)"

# gamma for 3 <= n <= 12
small_degree_values = [
    {"n": 3, "S": 2},
    {"n": 4, "S": 2, "A": 2},
    {"n": 5, "S": 2, "A": 2},
    {"n": 6, "S": 2, "A": 2},
    {"n": 7, "S": 3, "A": 2},
    {"n": 8, "S": 3, "A": 2},
    {"n": 9, "S": 4, "A": 3},
    {"n": 10, "S": 3, "A": 3},
    {"n": 11, "S": 5, "A": 4},
    {"n": 12, "S": 4, "A": 3},
]

special_degree_values = [
    {"n": 30, "S": 7, "A": 7},
]


@dataclass(frozen=True)
class KnownValue:
    n: int
    group: str
    kind: str
    low: Optional[int] = None
    high: Optional[int] = None
    source: str = ""
    g: Optional[int] = None

    def __post_init__(self):
        if self.kind in (EXACT, RANGE) and (self.low is None or self.high is None or self.low > self.high):
            raise InputError("Invalid known value range for " + self.group + "_" + str(self.n) +
                             ": [" + str(self.low) + ", " + str(self.high) + "]")

    @classmethod
    def exact(cls, n: int, group: str, value: int, source: str, g: Optional[int] = None) -> "KnownValue":
        return cls(n, group, EXACT, value, value, source, g)

    @property
    def value(self) -> Optional[int]:
        """ The expected gamma: the exact value, or g(n) when only conjectured. """
        if self.kind == EXACT:
            return self.low
        if self.kind == CONJECTURED_G:
            return self.g
        return None

    def admits(self, gamma: int) -> Optional[bool]:
        """ Whether a value is compatible; None when nothing is expected. """
        if self.kind in (EXACT, RANGE):
            return self.low <= gamma <= self.high
        if self.kind == CONJECTURED_G:
            return gamma == self.g
        return None

    def __str__(self) -> str:
        if self.kind == EXACT:
            return str(self.low) + " (" + self.source + ")"
        if self.kind == RANGE:
            return "[" + str(self.low) + ", " + str(self.high) + "] (" + self.source + ")"
        if self.kind == CONJECTURED_G:
            return "g(n) = " + str(self.g) + " (" + self.source + ")"
        return "unknown"


def _lookup(values: list, n: int, group: str) -> Optional[int]:
    for entry in values:
        if entry["n"] == n:
            return entry.get(group)
    return None


def is_15q_family(n: int) -> bool:
    """ n = 15q with q an odd prime, q = 2 (mod 15) and q != 12 (mod 13). """
    if n % 15:
        return False
    q = n // 15
    return q % 2 == 1 and arith.is_prime(q) and q % 15 == 2 and q % 13 != 12


def is_6q_family(n: int) -> bool:
    """ n = 6q with q a prime, q >= 11. """
    return n % 6 == 0 and n // 6 >= 11 and arith.is_prime(n // 6)


def _ceil_div(numerator: int, denominator: int) -> int:
    return -(-numerator // denominator)


def _prime_power_value(n: int, group: str, p: int, a: int) -> Optional[KnownValue]:
    if a == 1:
        if p < 5:
            return None
        if group == "S":
            return KnownValue.exact(n, group, (p - 1) // 2, SOURCE_PRIME)
        return KnownValue(n, group, RANGE, _ceil_div(p - 1, 4), (p + 3) // 3, SOURCE_PRIME)

    upper = n // p * (p - 1) // 2 + 1
    if p == 2:
        if group == "S":
            return KnownValue(n, group, RANGE, _ceil_div(n + 8, 12), (n + 4) // 4, SOURCE_PRIME_POWER)
        if n != 8:
            return KnownValue.exact(n, group, (n + 4) // 4, SOURCE_PRIME_POWER)
        return None
    if group == "S":
        return KnownValue.exact(n, group, upper, SOURCE_PRIME_POWER)
    return KnownValue(n, group, RANGE, _ceil_div(n * (p - 1), 4 * p), upper, SOURCE_PRIME_POWER)


def known_gamma(n: int, group: str) -> KnownValue:
    """ The strongest known statement about gamma(group_n), tagged with its source. """
    if group not in ("S", "A"):
        raise InputError("Group must be S or A, got " + str(group))
    if n < (3 if group == "S" else 4):
        raise InputError("known_gamma requires n >= 3 for S and n >= 4 for A, got " + group + "_" + str(n))

    f = arith.factorize(n)
    g = arith.g_value(f) if f.r >= 2 else None

    value = _lookup(small_degree_values, n, group)
    if value is not None:
        return KnownValue.exact(n, group, value, SOURCE_TABLE, g)
    return derived_gamma(n, group)


def derived_gamma(n: int, group: str) -> KnownValue:
    """ Like known_gamma but without the small-degree table. """
    f = arith.factorize(n)
    g = arith.g_value(f) if f.r >= 2 else None

    value = _lookup(special_degree_values, n, group)
    if value is not None:
        return KnownValue.exact(n, group, value, SOURCE_SPECIAL, g)
    if group == "S" and is_15q_family(n):
        return KnownValue.exact(n, group, g, SOURCE_FAMILY_15Q, g)
    if group == "A" and is_6q_family(n):
        return KnownValue.exact(n, group, g, SOURCE_FAMILY_6Q, g)

    if f.r == 1:
        known = _prime_power_value(n, group, f.prime(1), f.alpha(1))
        return known if known else KnownValue(n, group, UNKNOWN)

    odd = n % 2 == 1
    if f.r == 2:
        offset = 1 if f.alpha(1) + f.alpha(2) == 2 else 0
        # n = 12 is the one even exception for the alternating group
        if (group == "S" and odd) or (group == "A" and not odd and n != 12):
            return KnownValue.exact(n, group, g - offset, SOURCE_TWO_PRIMES, g)

    if group == "S" and n != f.prime(1) * f.prime(2):
        return KnownValue(n, group, CONJECTURED_G, source=SOURCE_CONJECTURE, g=g)
    if group == "A" and not odd and n != 2 * f.prime(2) and n != 12:
        return KnownValue(n, group, CONJECTURED_G, source=SOURCE_CONJECTURE, g=g)
    return KnownValue(n, group, UNKNOWN, g=g)
