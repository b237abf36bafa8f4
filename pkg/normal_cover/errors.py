class NormalCoverError(Exception):
    """Base class of all errors raised by normal_cover."""


class InputError(NormalCoverError, ValueError):
    """Invalid user input (bad n, divisor, index set, type string, ...)."""


class DomainError(NormalCoverError, ValueError):
    """Operation is not defined for the given input (e.g. g(n) for prime powers)."""


class PartitionCapExceeded(InputError):
    def __init__(self, n: int, count: int, cap: int):
        super().__init__(
            "Enumerating the " + str(count) + " cycle types of S_" + str(n) +
            " exceeds the partition cap (n <= " + str(cap) + "). Raise --partition-cap to force it.")
        self.n = n
        self.count = count
        self.cap = cap


class DataLoadError(NormalCoverError):
    """A primitive data file is malformed or does not match (n, group)."""


class InfeasibleCoverError(NormalCoverError):
    def __init__(self, witness):
        super().__init__("No class of the universe covers the type " + str(witness))
        self.witness = witness


class SearchTimeout(NormalCoverError):
    def __init__(self, best_cover: list, nodes: int):
        super().__init__("Time limit exceeded after " + str(nodes) +
                         " search nodes (best cover size so far: " + str(len(best_cover)) + ")")
        self.best_cover = best_cover
        self.nodes = nodes
