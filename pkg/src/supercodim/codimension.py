"""Codimension sequences of a Lie superalgebra, exactly.

A multilinear polynomial with k even and n-k odd variables is a graded
identity iff it vanishes under every substitution of basis elements (by
multilinearity), so the quotient of the multilinear space by the
identities is isomorphic, as a module over the product of symmetric
groups, to the span of the evaluation vectors of the spanning monomials.
That span is realized as the row space of an evaluation matrix; its exact
rank is the partial codimension, column permutations induced by place
permutations give the module action, and class-by-class traces feed the
multiplicity extraction.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import linalg
from .characters import CycleType, TraceFunction, all_cycle_types, decompose
from .combinatorics import Partition, hook_dimension
from .errors import IntegrityError, PreconditionError, ResourceLimitError
from .multilinear import Monomial, evaluate_word, even_slot, odd_slot, spanning_monomials
from .superalgebra import SuperAlgebra

#: Default ceiling on the number of matrix entries, overridable per call or
#: via the SUPERCODIM_CEILING environment variable.
DEFAULT_ENTRY_CEILING = 10**8

#: Classes at least this small get their trace recomputed on a second
#: representative as a class-function integrity check.
SECOND_REP_CLASS_LIMIT = 720


def entry_ceiling(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("SUPERCODIM_CEILING")
    if env:
        try:
            return int(env)
        except ValueError:
            raise PreconditionError(f"SUPERCODIM_CEILING must be an integer, got {env!r}") from None
    return DEFAULT_ENTRY_CEILING


@dataclass
class EvaluationMatrix:
    """Evaluations of the spanning monomials on all basis substitutions.

    Rows follow ``monomials``; column (t, c) holds coordinate c of the
    value of the monomial under substitution tuple t, laid out as
    ``t * dim + c``.  Substitution tuples assign, in slot order
    (x_1..x_k, y_1..y_{n-k}), a global basis index to each slot: even
    slots range over 0..d0-1 and odd slots over d0..d-1, enumerated
    lexicographically.
    """

    algebra: SuperAlgebra
    k: int
    n_minus_k: int
    monomials: tuple
    substitutions: tuple
    rows: list

    @property
    def ncols(self) -> int:
        return len(self.substitutions) * self.algebra.dim

    def column_permutation(self, sigma, tau) -> list[int]:
        """Tuple-index permutation realizing the place permutation (sigma, tau).

        Entry t of the result is the index of the substitution tuple
        "t composed with (sigma, tau)": slot x_i reads what x_sigma(i) read
        before, so the permuted tuple picks components at sigma/tau images.
        """
        index = {t: i for i, t in enumerate(self.substitutions)}
        k = self.k
        out = []
        for t in self.substitutions:
            moved = tuple(t[sigma[i] - 1] for i in range(k)) + tuple(
                t[k + tau[j] - 1] for j in range(self.n_minus_k)
            )
            out.append(index[moved])
        return out


def _substitution_tuples(algebra: SuperAlgebra, k: int, n_minus_k: int) -> list[tuple[int, ...]]:
    evens = range(algebra.even_dim)
    odds = range(algebra.even_dim, algebra.dim)
    return [
        e + o
        for e in product(evens, repeat=k)
        for o in product(odds, repeat=n_minus_k)
    ]


def evaluation_matrix(
    algebra: SuperAlgebra,
    k: int,
    n_minus_k: int,
    ceiling: int | None = None,
    workers: int = 1,
) -> EvaluationMatrix:
    """Build the evaluation matrix of P_{k,n-k} on the given algebra."""
    n = k + n_minus_k
    if n < 1 or k < 0 or n_minus_k < 0:
        raise PreconditionError(f"need k, n-k >= 0 and total degree >= 1, got ({k}, {n_minus_k})")
    monos = spanning_monomials(k, n_minus_k)
    subs = _substitution_tuples(algebra, k, n_minus_k)
    limit = entry_ceiling(ceiling)
    estimate = len(monos) * len(subs) * algebra.dim
    if estimate > limit:
        raise ResourceLimitError(
            f"evaluation matrix for (k, n-k) = ({k}, {n_minus_k}) on {algebra.name}"
            f" would hold {len(monos)} x {len(subs) * algebra.dim} = {estimate} entries,"
            f" above the ceiling {limit}"
        )
    slots = [even_slot(i) for i in range(1, k + 1)] + [odd_slot(j) for j in range(1, n_minus_k + 1)]

    def block(sub_tuple):
        sub = {slot: algebra.basis_vector(b) for slot, b in zip(slots, sub_tuple)}
        cache: dict = {}
        return [evaluate_word(m.word, sub, algebra, cache) for m in monos]

    if workers > 1 and len(subs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(block, subs))
    else:
        blocks = [block(t) for t in subs]

    rows = [[] for _ in monos]
    for blk in blocks:
        for r, vec in enumerate(blk):
            rows[r].extend(vec)
    return EvaluationMatrix(algebra, k, n_minus_k, tuple(monos), tuple(subs), rows)


def rank_exact(matrix: EvaluationMatrix) -> int:
    """Exact rank of the evaluation matrix over the rationals."""
    return linalg.rank_exact(matrix.rows)


def partial_codimension(
    algebra: SuperAlgebra, k: int, n_minus_k: int, ceiling: int | None = None, workers: int = 1
) -> int:
    """Dimension of the multilinear (k, n-k) space modulo the graded identities."""
    return rank_exact(evaluation_matrix(algebra, k, n_minus_k, ceiling, workers))


def total_codimension(algebra: SuperAlgebra, n: int, ceiling: int | None = None, workers: int = 1) -> int:
    """Binomially weighted sum of the partial codimensions in total degree n."""
    if n < 1:
        raise PreconditionError(f"total degree must be >= 1, got {n}")
    return sum(
        math.comb(n, k) * partial_codimension(algebra, k, n - k, ceiling, workers)
        for k in range(n + 1)
    )


def trace_on_quotient(
    algebra: SuperAlgebra,
    k: int,
    n_minus_k: int,
    matrix: EvaluationMatrix | None = None,
) -> TraceFunction:
    """Trace of every class pair acting on the quotient module.

    The action permutes substitution-tuple column blocks; the trace is read
    off by expressing the permuted basis rows in the RREF basis of the row
    space (pivot-column coordinates) and summing the diagonal.  Values are
    exact; for small classes the trace is recomputed on a second
    representative and must agree.
    """
    if matrix is None:
        matrix = evaluation_matrix(algebra, k, n_minus_k)
    basis, pivots = linalg.rref(matrix.rows)
    dim = algebra.dim
    values: dict = {}

    nsub = len(matrix.substitutions)

    def trace_of(sigma, tau) -> Fraction:
        perm = matrix.column_permutation(sigma, tau)
        total = Fraction(0)
        for i, b in enumerate(basis):
            # image of b under the action: the column at (t, c) reads b at (perm[t], c)
            image = [b[perm[t] * dim + c] for t in range(nsub) for c in range(dim)]
            coords = linalg.coordinates_in_rowspace(basis, list(pivots), image)
            if coords is None:
                raise IntegrityError(
                    f"permuted row left the row space for class pair at (k, n-k) = ({k}, {n_minus_k})"
                )
            total += coords[i]
        return total

    for c1 in all_cycle_types(k):
        for c2 in all_cycle_types(n_minus_k):
            sigma = _one_based(c1.representative())
            tau = _one_based(c2.representative())
            tr = trace_of(sigma, tau)
            size = c1.class_size * c2.class_size
            if 1 < size <= SECOND_REP_CLASS_LIMIT:
                sigma2 = _conjugate_by_reversal(sigma)
                tau2 = _conjugate_by_reversal(tau)
                tr2 = trace_of(sigma2, tau2)
                if tr2 != tr:
                    raise IntegrityError(
                        f"trace is not constant on the class pair ({c1}, {c2}): {tr} vs {tr2}"
                    )
            values[(c1.cycles, c2.cycles)] = tr
    return TraceFunction(k, n_minus_k, values)


def _one_based(perm0) -> tuple[int, ...]:
    return tuple(p + 1 for p in perm0)


def _conjugate_by_reversal(perm) -> tuple[int, ...]:
    """r o perm o r for the reversal r(i) = k+1-i; same cycle type."""
    k = len(perm)
    return tuple(k + 1 - perm[k - i] for i in range(1, k + 1))


@dataclass(frozen=True)
class CocharacterLine:
    """One irreducible constituent of the quotient module."""

    lam: Partition
    mu: Partition
    multiplicity: int

    def product_degree(self) -> int:
        return hook_dimension(self.lam) * hook_dimension(self.mu)


def cocharacter(
    algebra: SuperAlgebra,
    k: int,
    n_minus_k: int,
    matrix: EvaluationMatrix | None = None,
) -> list[CocharacterLine]:
    """Nonzero multiplicities of the (k, n-k) quotient, heights capped at dim L.

    The cap is the structural bound on constituent heights; decompose
    verifies that nothing was truncated by it, and every returned
    multiplicity is a checked non-negative integer.
    """
    trace = trace_on_quotient(algebra, k, n_minus_k, matrix)
    lines = [
        CocharacterLine(lam, mu, m)
        for lam, mu, m in decompose(trace, k, n_minus_k, max_height=algebra.dim)
    ]
    for line in lines:
        if line.lam.height > algebra.dim or line.mu.height > algebra.dim:
            raise IntegrityError(f"constituent ({line.lam}, {line.mu}) exceeds height bound {algebra.dim}")
    return lines


def colength(algebra: SuperAlgebra, n: int, ceiling: int | None = None, workers: int = 1) -> int:
    """Total number of irreducible constituents across all k in degree n."""
    total = 0
    for k in range(n + 1):
        matrix = evaluation_matrix(algebra, k, n - k, ceiling, workers)
        total += sum(line.multiplicity for line in cocharacter(algebra, k, n - k, matrix))
    return total


def verify_cocharacter_identity(
    algebra: SuperAlgebra, k: int, n_minus_k: int, ceiling: int | None = None, workers: int = 1
) -> bool:
    """Exact check that the multiplicity-weighted degrees sum to the partial codimension."""
    matrix = evaluation_matrix(algebra, k, n_minus_k, ceiling, workers)
    c = rank_exact(matrix)
    lines = cocharacter(algebra, k, n_minus_k, matrix)
    return sum(line.multiplicity * line.product_degree() for line in lines) == c


@dataclass
class CodimensionTable:
    """Partial and total codimensions, constituents, and colengths up to n_max."""

    algebra: SuperAlgebra
    n_max: int
    partials: dict = field(default_factory=dict)  # (k, n-k) -> int
    totals: dict = field(default_factory=dict)  # n -> int
    lines: dict = field(default_factory=dict)  # (k, n-k) -> tuple[CocharacterLine]
    partial_colengths: dict = field(default_factory=dict)  # (k, n-k) -> int
    total_colengths: dict = field(default_factory=dict)  # n -> int

    def partial(self, k: int, n_minus_k: int) -> int:
        return self.partials[(k, n_minus_k)]

    def total(self, n: int) -> int:
        return self.totals[n]

    def verify_degree_sum(self) -> bool:
        """The stored totals must equal the binomially weighted partial sums."""
        for n in range(1, self.n_max + 1):
            s = sum(math.comb(n, k) * self.partials[(k, n - k)] for k in range(n + 1))
            if s != self.totals[n]:
                return False
        return True


def compute_table(
    algebra: SuperAlgebra,
    n_max: int,
    with_cocharacters: bool = True,
    ceiling: int | None = None,
    workers: int = 1,
) -> CodimensionTable:
    """Compute the codimension table of an algebra up to total degree n_max."""
    if n_max < 1:
        raise PreconditionError(f"n_max must be >= 1, got {n_max}")
    table = CodimensionTable(algebra, n_max)
    d = algebra.dim
    for n in range(1, n_max + 1):
        total = 0
        for k in range(n + 1):
            matrix = evaluation_matrix(algebra, k, n - k, ceiling, workers)
            c = rank_exact(matrix)
            table.partials[(k, n - k)] = c
            total += math.comb(n, k) * c
            if with_cocharacters:
                lines = cocharacter(algebra, k, n - k, matrix) if c else []
                table.lines[(k, n - k)] = tuple(lines)
                table.partial_colengths[(k, n - k)] = sum(l.multiplicity for l in lines)
        table.totals[n] = total
        if total > d**n:
            raise IntegrityError(f"total codimension {total} in degree {n} exceeds dim**n = {d**n}")
        if with_cocharacters:
            table.total_colengths[n] = sum(table.partial_colengths[(k, n - k)] for k in range(n + 1))
    return table


@dataclass(frozen=True)
class MonotonicityResult:
    """Outcome of the degree-monotonicity check of the codimension sequence."""

    partial_ok: bool
    total_ok: bool
    outside_hypothesis: bool  # the algebra did not probe as simple
    failures: tuple = ()

    @property
    def holds(self) -> bool:
        return self.partial_ok and self.total_ok

    def __bool__(self):
        return self.holds


def verify_monotonicity(
    algebra: SuperAlgebra,
    n_max: int,
    table: CodimensionTable | None = None,
    trials: int = 20,
    seed: int = 0,
    ceiling: int | None = None,
    workers: int = 1,
) -> MonotonicityResult:
    """Check that adding an odd variable never drops a partial codimension.

    Also checks the induced monotonicity of the total sequence.  The
    argument behind the inequality needs a simple algebra; for an algebra
    whose probe says not_simple the check still runs but is flagged as
    outside that hypothesis.
    """
    if table is None:
        table = compute_table(algebra, n_max, with_cocharacters=False, ceiling=ceiling, workers=workers)
    verdict = algebra.simplicity_verdict(trials=trials, seed=seed)
    failures = []
    partial_ok = True
    for (k, j) in sorted(table.partials):
        if (k, j + 1) in table.partials and table.partials[(k, j + 1)] < table.partials[(k, j)]:
            partial_ok = False
            failures.append(("partial", k, j))
    total_ok = True
    for n in range(2, n_max + 1):
        if table.totals[n] < table.totals[n - 1]:
            total_ok = False
            failures.append(("total", n))
    return MonotonicityResult(partial_ok, total_ok, verdict.is_not_simple, tuple(failures))
