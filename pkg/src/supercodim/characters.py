"""Irreducible characters of symmetric groups and of their products.

Character values come from the border-strip recursion on beta-sets
(first-column hook lengths): removing a strip of length t is moving one
beta number down by t, with sign (-1)**(number of beta numbers jumped
over).  All values are integers and the recursion is memoized.

Multiplicities of irreducibles inside a module known only through its
trace are recovered by the standard inner product over conjugacy classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinatorics import Partition, enumerate_partitions, hook_dimension
from .errors import IntegrityError, PreconditionError


@dataclass(frozen=True)
class CycleType:
    """A conjugacy class of a symmetric group, given by its cycle lengths."""

    cycles: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(self.cycles))
        Partition(self.cycles)  # validates weakly decreasing positive

    @classmethod
    def identity(cls, degree: int) -> "CycleType":
        return cls((1,) * degree)

    @property
    def degree(self) -> int:
        return sum(self.cycles)

    @property
    def class_size(self) -> int:
        """degree! / (prod of cycle lengths * prod of multiplicities!)."""
        z = 1
        mult: dict[int, int] = {}
        for length in self.cycles:
            z *= length
            mult[length] = mult.get(length, 0) + 1
        for m in mult.values():
            z *= math.factorial(m)
        return math.factorial(self.degree) // z

    def representative(self) -> tuple[int, ...]:
        """Canonical permutation of this class, one-line 0-based: consecutive cycles."""
        img = list(range(self.degree))
        start = 0
        for length in self.cycles:
            for t in range(length):
                img[start + t] = start + (t + 1) % length
            start += length
        return tuple(img)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.cycles) + ")"


def all_cycle_types(degree: int) -> list[CycleType]:
    """All conjugacy classes of the symmetric group of the given degree."""
    if degree == 0:
        return [CycleType(())]
    return [CycleType(p.parts) for p in enumerate_partitions(degree, degree)]


@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1
    t = cycles[0]
    rest = cycles[1:]
    h = len(lam)
    beta = [lam[i] + (h - 1 - i) for i in range(h)]  # strictly decreasing
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - t
        if nb < 0 or nb in bset:
            continue
        jumped = sum(1 for x in beta if nb < x < b)
        newbeta = sorted((bset - {b}) | {nb}, reverse=True)
        mu = []
        for i, x in enumerate(newbeta):
            part = x - (h - 1 - i)
            if part:
                mu.append(part)
        sub = _mn(tuple(mu), rest)
        total += -sub if jumped % 2 else sub
    return total


def character_value(lam: Partition, c: CycleType) -> int:
    """Value of the irreducible character of shape ``lam`` on class ``c``."""
    if lam.weight != c.degree:
        raise PreconditionError(f"shape weight {lam.weight} != class degree {c.degree}")
    cycles = tuple(sorted(c.cycles, reverse=True))
    return _mn(lam.parts, cycles)


def product_character_value(lam: Partition, mu: Partition, c_lam: CycleType, c_mu: CycleType) -> int:
    """Character of the outer tensor product: the product of the two values."""
    return character_value(lam, c_lam) * character_value(mu, c_mu)


class TraceFunction:
    """Exact trace of a module for a product of two symmetric groups.

    Values are stored per pair of conjugacy classes and must be defined on
    every pair; the value at the identity pair is the module dimension.
    """

    def __init__(self, k: int, n_minus_k: int, values: dict):
        self.k = k
        self.n_minus_k = n_minus_k
        self.values = {
            (tuple(c1), tuple(c2)): Fraction(v) for (c1, c2), v in values.items()
        }
        for c1 in all_cycle_types(k):
            for c2 in all_cycle_types(n_minus_k):
                if (c1.cycles, c2.cycles) not in self.values:
                    raise PreconditionError(f"trace undefined on class pair ({c1}, {c2})")

    def at(self, c1: CycleType, c2: CycleType) -> Fraction:
        return self.values[(c1.cycles, c2.cycles)]

    @property
    def dimension(self) -> Fraction:
        return self.values[((1,) * self.k, (1,) * self.n_minus_k)]


def decompose(
    trace: TraceFunction, k: int, n_minus_k: int, max_height: int | None = None
) -> list[tuple[Partition, Partition, int]]:
    """Multiplicities of the irreducibles of S_k x S_{n-k} in a traced module.

    m(lam, mu) = (1 / (k! (n-k)!)) * sum over class pairs of
    |class pair| * chi_lam * chi_mu * trace.  Only nonzero multiplicities are
    returned, in shape enumeration order.  A negative or non-integral
    multiplicity raises IntegrityError (the trace is then not the trace of a
    genuine module).  When ``max_height`` caps the shape enumeration, the
    recovered dimensions must still add up to the traced dimension,
    otherwise the cap truncated real components and IntegrityError is
    raised.
    """
    classes1 = all_cycle_types(k)
    classes2 = all_cycle_types(n_minus_k)
    pair_data = [
        (c1, c2, c1.class_size * c2.class_size, trace.at(c1, c2))
        for c1 in classes1
        for c2 in classes2
    ]
    order = math.factorial(k) * math.factorial(n_minus_k)
    h1 = min(k, max_height) if max_height is not None else k
    h2 = min(n_minus_k, max_height) if max_height is not None else n_minus_k
    lambdas = enumerate_partitions(k, max(h1, 1))
    mus = enumerate_partitions(n_minus_k, max(h2, 1))
    lines: list[tuple[Partition, Partition, int]] = []
    recovered = Fraction(0)
    for lam in lambdas:
        for mu in mus:
            s = Fraction(0)
            for c1, c2, size, tr in pair_data:
                if tr:
                    s += size * character_value(lam, c1) * character_value(mu, c2) * tr
            m = s / order
            if m.denominator != 1 or m < 0:
                raise IntegrityError(
                    f"multiplicity of ({lam}, {mu}) is {m}, not a non-negative integer"
                )
            if m:
                lines.append((lam, mu, int(m)))
                recovered += m * hook_dimension(lam) * hook_dimension(mu)
    if recovered != trace.dimension:
        raise IntegrityError(
            f"recovered dimension {recovered} != traced dimension {trace.dimension}"
            f" (components above height {max_height} truncated?)"
        )
    return lines
