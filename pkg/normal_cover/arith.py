"""Exact multiplicative number theory: factorization, g(n) and the
divisibility-pattern counts P_I^J over [1, n] and [1, n/2)."""

from dataclasses import dataclass
from math import gcd
from typing import FrozenSet, Iterable, List, Set, Tuple

from normal_cover.errors import DomainError, InputError


@dataclass(frozen=True)
class Factorization:
    n: int
    # ordered (p_i, alpha_i) with p_1 < p_2 < ... < p_r
    primes: Tuple[Tuple[int, int], ...]

    @property
    def r(self) -> int:
        return len(self.primes)

    def prime(self, index: int) -> int:
        """ Returns p_index using the 1-based indexing of the prime list. """
        return self.primes[index - 1][0]

    def alpha(self, index: int) -> int:
        return self.primes[index - 1][1]

    @property
    def is_prime_power(self) -> bool:
        return self.r == 1

    def __str__(self) -> str:
        return " * ".join(
            str(p) if alpha == 1 else str(p) + "^" + str(alpha) for p, alpha in self.primes)


@dataclass(frozen=True)
class IndexSpec:
    I: FrozenSet[int] = frozenset()
    J: FrozenSet[int] = frozenset()

    @classmethod
    def of(cls, I: Iterable[int] = (), J: Iterable[int] = ()) -> "IndexSpec":
        return cls(frozenset(I), frozenset(J))

    def validate(self, f: Factorization):
        if self.I & self.J:
            raise InputError("Index sets I and J must be disjoint: " + str(self))
        for index in self.I | self.J:
            if index < 1 or index > f.r:
                raise InputError("Index " + str(index) + " is outside 1.." + str(f.r) +
                                 " for n = " + str(f.n) + " = " + str(f))

    def __str__(self) -> str:
        return "I=" + str(sorted(self.I)) + " J=" + str(sorted(self.J))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    divisor = 3
    while divisor * divisor <= n:
        if n % divisor == 0:
            return False
        divisor += 2
    return True


def factorize(n: int) -> Factorization:
    """ Canonical prime-power decomposition by trial division. """
    if not isinstance(n, int) or n < 2:
        raise InputError("factorize requires an integer n >= 2, got " + str(n))

    primes = []
    remainder = n
    divisor = 2
    while divisor * divisor <= remainder:
        if remainder % divisor == 0:
            alpha = 0
            while remainder % divisor == 0:
                remainder //= divisor
                alpha += 1
            primes.append((divisor, alpha))
        divisor += 1 if divisor == 2 else 2
    if remainder > 1:
        primes.append((remainder, 1))
    return Factorization(n, tuple(primes))


def divisors(n: int) -> List[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def g_value(f: Factorization) -> int:
    """ g(n) = (n/2)(1 - 1/p_1)(1 - 1/p_2) + 2, defined when n has at least two prime divisors. """
    if f.r < 2:
        raise DomainError("g(n) is undefined for the prime power n = " + str(f.n))
    p1, p2 = f.prime(1), f.prime(2)
    numerator = f.n * (p1 - 1) * (p2 - 1)
    # integral by the half-interval count of integers coprime to p_1 p_2
    assert numerator % (2 * p1 * p2) == 0
    return numerator // (2 * p1 * p2) + 2


def count_full(f: Factorization, spec: IndexSpec) -> int:
    """ |P_I^J| = n p_I p^J, the x in [1, n] divisible by every p_i (i in I) and by no p_j (j in J). """
    spec.validate(f)
    denominator = 1
    numerator = 1
    for i in spec.I:
        denominator *= f.prime(i)
    for j in spec.J:
        denominator *= f.prime(j)
        numerator *= f.prime(j) - 1
    return f.n // denominator * numerator


def count_half_open(f: Factorization, spec: IndexSpec) -> int:
    """ |P_I^J cap [1, n/2)| by the odd / n = 2 mod 4 / 4 | n case analysis. """
    if f.n < 3:
        raise InputError("count_half_open requires n >= 3, got " + str(f.n))
    full = count_full(f, spec)

    if f.n % 2 == 1:
        return full // 2

    if f.alpha(1) == 1:
        # n = 2 mod 4: n/2 is odd
        if not spec.J and 1 not in spec.I:
            return full // 2 - 1
        return full // 2

    # 4 | n
    if not spec.J:
        return full // 2 - 1
    return full // 2


def contains_half(f: Factorization, spec: IndexSpec) -> bool:
    """ Whether n/2 lies in P_I^J. """
    spec.validate(f)
    if f.n % 2 == 1:
        return False
    if f.alpha(1) == 1:
        return 1 not in spec.I and spec.J in (frozenset(), frozenset({1}))
    return not spec.J


def euler_phi(f: Factorization) -> int:
    return count_full(f, IndexSpec.of(J=range(1, f.r + 1)))


def gcd_class_indices(f: Factorization, d: int) -> Set[int]:
    """ {x : 1 <= x < n/2, gcd(x, n) = d} with exact-gcd semantics. """
    if d < 1 or f.n % d != 0:
        raise InputError(str(d) + " is not a divisor of n = " + str(f.n))
    return {x for x in range(d, (f.n + 1) // 2, d) if gcd(x, f.n) == d}


def g_table(start: int, end: int) -> List[Tuple[int, int]]:
    """ (n, g(n)) for every n in [start, end] that is not a prime power. """
    rows = []
    for n in range(max(start, 2), end + 1):
        f = factorize(n)
        if f.r < 2:
            continue
        rows.append((n, g_value(f)))
    return rows
