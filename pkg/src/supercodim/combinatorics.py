"""Partitions, Young diagrams, character degrees, and the growth functional.

Everything in this module is exact.  The growth functional of a partition
``nu`` of weight ``m`` is handled through its m-th power

    m**m / prod(nu_i ** nu_i)

which is a rational number, so every inequality the verifiers check is a
big-integer comparison.  Real approximations are dyadic rationals with a
stated relative error, produced by integer root extraction, never by
floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .errors import InvalidMoveError, PreconditionError

#: Largest weight accepted by the exhaustive tableau counter.
SYT_ENUMERATION_LIMIT = 12


@dataclass(frozen=True)
class Partition:
    """A partition: weakly decreasing positive parts.

    Zero parts are never stored; ``padded`` gives the zero-extended view
    used when partitions of height below some dimension bound are written
    with trailing zero components.
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or p < 1:
                raise PreconditionError(f"partition parts must be positive integers: {parts!r}")
            if i + 1 < len(parts) and parts[i + 1] > p:
                raise PreconditionError(f"partition parts must be weakly decreasing: {parts!r}")

    @classmethod
    def of(cls, it) -> "Partition":
        """Build a partition from an iterable, dropping trailing zeros."""
        parts = list(it)
        while parts and parts[-1] == 0:
            parts.pop()
        return cls(tuple(parts))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def height(self) -> int:
        return len(self.parts)

    def padded(self, length: int) -> tuple[int, ...]:
        """Zero-extended view of length ``length`` (>= height)."""
        if length < self.height:
            raise PreconditionError(f"cannot pad {self} to length {length} below height {self.height}")
        return self.parts + (0,) * (length - self.height)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(tuple(cols))

    def doubled(self) -> "Partition":
        """The partition with every part doubled."""
        return Partition(tuple(2 * p for p in self.parts))

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def enumerate_partitions(m: int, max_height: int) -> list[Partition]:
    """All partitions of ``m`` with height <= ``max_height``.

    Order is lexicographically decreasing on the part tuples, so ``(m)``
    comes first and the most balanced shape last.  ``m = 0`` yields the
    single empty partition.
    """
    if m < 0 or max_height < 1:
        raise PreconditionError(f"need m >= 0 and max_height >= 1, got {m}, {max_height}")

    out: list[Partition] = []

    def rec(remaining, max_part, rows_left, prefix):
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        if rows_left == 0:
            return
        top = min(remaining, max_part)
        for first in range(top, 0, -1):
            if first * rows_left < remaining:
                break
            prefix.append(first)
            rec(remaining - first, first, rows_left - 1, prefix)
            prefix.pop()

    rec(m, m, max_height, [])
    return out


def hook_dimension(lam: Partition) -> int:
    """Number of standard Young tableaux of shape ``lam`` (hook length formula).

    The empty partition counts as 1 (the trivial character of the trivial
    group has degree one).
    """
    if not lam.parts:
        return 1
    conj = lam.conjugate().parts
    num = math.factorial(lam.weight)
    den = 1
    for i, row in enumerate(lam.parts):
        for j in range(row):
            den *= row - j + conj[j] - i - 1
    q, r = divmod(num, den)
    assert r == 0
    return q


def syt_count_oracle(lam: Partition) -> int:
    """Count standard Young tableaux by exhaustive backtracking.

    Independent of the hook length formula: places 1..n one at a time into
    every cell whose left and upper neighbours are already filled.  Refuses
    weights above ``SYT_ENUMERATION_LIMIT``.
    """
    if lam.weight > SYT_ENUMERATION_LIMIT:
        raise PreconditionError(
            f"weight {lam.weight} exceeds enumeration bound {SYT_ENUMERATION_LIMIT}"
        )
    if not lam.parts:
        return 1
    parts = lam.parts
    filled = [0] * len(parts)  # filled[r] = number of cells already placed in row r

    def place(v):
        if v > lam.weight:
            return 1
        total = 0
        for r in range(len(parts)):
            if filled[r] < parts[r] and (r == 0 or filled[r - 1] > filled[r]):
                filled[r] += 1
                total += place(v + 1)
                filled[r] -= 1
        return total

    return place(1)


@dataclass(frozen=True)
class PhiPower:
    """The m-th power of the growth functional of a partition of weight m.

    ``value`` is the exact rational m**m / prod(nu_i ** nu_i).  Padded zero
    parts contribute a factor 1 (the 0**0 = 1 convention that makes the
    functional well defined on zero-extended part tuples).
    """

    value: Fraction
    weight: int

    def real(self, precision_bits: int = 128) -> Fraction:
        """Dyadic approximation of the weight-th root, relative error <= 2**(-precision_bits + 2)."""
        return nth_root_dyadic(self.value, self.weight, precision_bits)


def phi_power(nu: Partition) -> PhiPower:
    """Exact m-th power of the growth functional of ``nu`` (weight m >= 1)."""
    m = nu.weight
    if m < 1:
        raise PreconditionError("growth functional needs a nonempty partition")
    den = 1
    for p in nu.parts:
        den *= p**p
    return PhiPower(Fraction(m**m, den), m)


def phi_real(nu: Partition, precision_bits: int) -> Fraction:
    """The growth functional itself, as a dyadic rational.

    Relative error is at most 2**(-precision_bits + 2); the approximation is
    a plain Fraction with a power-of-two denominator so it serializes and
    compares exactly.
    """
    if precision_bits < 64:
        raise PreconditionError(f"precision_bits must be >= 64, got {precision_bits}")
    return phi_power(nu).real(precision_bits)


def nth_root_dyadic(value: Fraction, m: int, precision_bits: int) -> Fraction:
    """Dyadic r with |r - value**(1/m)| / value**(1/m) <= 2**(-precision_bits - 1).

    Computed as floor(((num << m*t) // den) ** (1/m)) / 2**t by exact integer
    root extraction, enlarging the scale t until the integer root carries
    precision_bits + 2 significant bits.
    """
    if value < 0:
        raise PreconditionError("cannot take an even-degree real root of a negative rational")
    if m < 1:
        raise PreconditionError(f"root degree must be positive, got {m}")
    if value == 0:
        return Fraction(0)
    t = precision_bits + 8
    while True:
        shifted = (value.numerator << (m * t)) // value.denominator
        root = int(gmpy2.iroot(gmpy2.mpz(shifted), m)[0])
        if root >= 1 << (precision_bits + 2):
            return Fraction(root, 1 << t)
        t *= 2


def approximate_fraction(value: Fraction, precision_bits: int) -> Fraction:
    """Dyadic approximation of a positive rational, relative error <= 2**(-precision_bits)."""
    return nth_root_dyadic(value, 1, precision_bits)


def push_down(nu: Partition, i: int, j: int) -> Partition:
    """Move one box from row ``i`` down to row ``j`` (1-based, padded view).

    Raises InvalidMoveError unless 1 <= i < j and the result is again
    weakly decreasing with nonnegative parts.
    """
    if not (1 <= i < j):
        raise InvalidMoveError(f"need 1 <= i < j, got i={i}, j={j}")
    width = max(j, nu.height)
    rows = list(nu.padded(width))
    rows[i - 1] -= 1
    rows[j - 1] += 1
    if rows[i - 1] < 0:
        raise InvalidMoveError(f"row {i} of {nu} has no box to move")
    for a in range(width - 1):
        if rows[a] < rows[a + 1]:
            raise InvalidMoveError(f"moving ({i} -> {j}) in {nu} gives non-partition {tuple(rows)}")
    return Partition.of(rows)


def legal_push_downs(nu: Partition):
    """Yield (i, j, result) over every legal single box push-down of ``nu``."""
    for i in range(1, nu.height + 1):
        for j in range(i + 1, nu.height + 2):
            try:
                yield i, j, push_down(nu, i, j)
            except InvalidMoveError:
                continue


@dataclass(frozen=True)
class DimensionBoundsCheck:
    """Outcome of the two-sided bound between a character degree and the growth power.

    For nu of weight m and a height bound d, the checked inequalities are

        m**m <= dim * m**(d*d + d) * prod(nu_i ** nu_i)      (lower)
        dim * prod(nu_i ** nu_i) <= m**(m + 1)               (upper)

    i.e. growth_power / m**(d*d+d) <= dim <= m * growth_power, compared as
    big integers.  The three exact quantities are carried as witnesses.
    """

    lower_ok: bool
    upper_ok: bool
    dimension: int
    power_numerator: int  # m**m
    power_denominator: int  # prod(nu_i ** nu_i)

    @property
    def holds(self) -> bool:
        return self.lower_ok and self.upper_ok

    def __bool__(self):
        return self.holds

    @property
    def growth_power(self) -> Fraction:
        return Fraction(self.power_numerator, self.power_denominator)


def verify_dimension_phi_bounds(nu: Partition, d: int) -> DimensionBoundsCheck:
    """Exact check that the tableau count of ``nu`` is sandwiched by growth-power bounds.

    Hypotheses: weight m >= 100 and height(nu) <= d.
    """
    m = nu.weight
    if m < 100:
        raise PreconditionError(f"the bound is only claimed for weight >= 100, got {m}")
    if nu.height > d:
        raise PreconditionError(f"height {nu.height} exceeds d = {d}")
    dim = hook_dimension(nu)
    power_num = m**m
    power_den = 1
    for p in nu.parts:
        power_den *= p**p
    lower_ok = power_num <= dim * m ** (d * d + d) * power_den
    upper_ok = dim * power_den <= m ** (m + 1)
    return DimensionBoundsCheck(lower_ok, upper_ok, dim, power_num, power_den)


def verify_push_down_monotone(nu: Partition) -> bool:
    """True iff every legal push-down of ``nu`` does not decrease the growth functional.

    Both sides have the same weight, so the comparison of m-th powers is
    equivalent and exact.
    """
    if not nu.parts:
        raise PreconditionError("need a nonempty partition")
    base = phi_power(nu).value
    for _i, _j, rho in legal_push_downs(nu):
        if phi_power(rho).value < base:
            return False
    return True


def verify_stirling_bounds(n: int, k: int) -> bool:
    """Exact check of (1/n) * n**n / (k**k (n-k)**(n-k)) <= C(n,k) <= n * n**n / (...).

    Cleared of denominators:  n**n <= n * C(n,k) * k**k * (n-k)**(n-k)  and
    C(n,k) * k**k * (n-k)**(n-k) <= n**(n+1).
    """
    if not 0 < k < n:
        raise PreconditionError(f"need 0 < k < n (the two-part weights must be positive), got n={n}, k={k}")
    c = math.comb(n, k)
    w = k**k * (n - k) ** (n - k)
    return n**n <= n * c * w and c * w <= n ** (n + 1)
