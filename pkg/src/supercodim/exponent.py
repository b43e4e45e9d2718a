"""Growth-rate estimates for the total codimension sequence.

The report collects, per degree, the exact total codimension, its n-th
root as a dyadic rational, and a lower estimate assembled from the
constituents: the largest product of the two-row growth functional of
(k/n, (n-k)/n) with the growth functionals of a constituent pair of
shapes.  The amplification search realizes, degree by degree, the gluing
of two non-identities through at most dim-1 connecting basis elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .codimension import CodimensionTable, compute_table
from .combinatorics import Partition, nth_root_dyadic, phi_power
from .errors import IntegrityError, PreconditionError, ResourceLimitError
from .multilinear import (
    Monomial,
    Polynomial,
    evaluate,
    even_slot,
    odd_slot,
    slot_name,
    _word_bracket,
)
from .superalgebra import SuperAlgebra

#: Extra working precision for products of dyadic approximations.
GUARD_BITS = 32

#: Relative gap under which two lower-estimate candidates count as tied.
TIE_BITS = 64


def _phi_real_or_one(p: Partition, bits: int) -> Fraction:
    """Growth functional of a shape; the empty shape contributes 1."""
    if not p.parts:
        return Fraction(1)
    return phi_power(p).real(bits)


def binomial_phi_real(k: int, n: int, bits: int) -> Fraction:
    """Growth functional of the two-part weights (k/n, (n-k)/n).

    Its n-th power is n**n / (k**k (n-k)**(n-k)); the degenerate split
    k in {0, n} contributes 1.
    """
    if not 0 <= k <= n:
        raise PreconditionError(f"need 0 <= k <= n, got k={k}, n={n}")
    if k in (0, n):
        return Fraction(1)
    return nth_root_dyadic(Fraction(n**n, k**k * (n - k) ** (n - k)), n, bits)


@dataclass(frozen=True)
class PhiLowerEstimate:
    """Largest constituent product estimate at one degree.

    ``value`` is a dyadic rational with relative error below
    2**(-precision_bits); candidates within relative 2**(-TIE_BITS) of the
    maximum are reported as ties.
    """

    n: int
    value: Fraction
    precision_bits: int
    achieved_at: tuple | None  # (k, lam, mu) or None when no constituents
    ties: tuple = ()


def phi_lower_estimate(
    algebra: SuperAlgebra,
    n: int,
    precision_bits: int = 128,
    table: CodimensionTable | None = None,
) -> PhiLowerEstimate:
    """Maximum over constituents of the three-factor growth product.

    Needs the cocharacters of every (k, n-k) at this degree; an algebra
    with no constituents (everything is an identity) reports 0.
    """
    if table is None or (0, n) not in table.lines:
        table = compute_table(algebra, n, with_cocharacters=True)
    bits = precision_bits + GUARD_BITS
    candidates = []
    for k in range(n + 1):
        lines = table.lines.get((k, n - k), ())
        if not lines:
            continue
        binom = binomial_phi_real(k, n, bits)
        for line in lines:
            value = binom * _phi_real_or_one(line.lam, bits) * _phi_real_or_one(line.mu, bits)
            candidates.append((value, (k, line.lam, line.mu)))
    if not candidates:
        return PhiLowerEstimate(n, Fraction(0), precision_bits, None)
    candidates.sort(key=lambda item: item[0], reverse=True)
    best, where = candidates[0]
    tie_gap = best / (1 << TIE_BITS)
    ties = tuple(w for v, w in candidates[1:] if best - v <= tie_gap)
    return PhiLowerEstimate(n, best, precision_bits, where, ties)


@dataclass(frozen=True)
class ExponentRow:
    n: int
    total_codimension: int
    root: Fraction  # dyadic approximation of total**(1/n)
    phi_lower: Fraction
    running_root_max: Fraction
    running_root_min: Fraction


@dataclass(frozen=True)
class ExponentReport:
    """Per-degree growth data plus the structural flags of the algebra."""

    algebra_name: str
    dimension: int
    n_max: int
    precision_bits: int
    rows: tuple[ExponentRow, ...]
    even_part_solvable: bool
    simplicity: str
    seed: int
    #: set when the even part is not solvable: the growth rate of a
    #: non-solvable even part is an integer >= 2, so the envelope is
    #: expected to reach at least 2 asymptotically (reported, not asserted).
    expect_exponent_at_least_two: bool


def exponent_report(
    algebra: SuperAlgebra,
    n_max: int,
    precision_bits: int = 128,
    trials: int = 20,
    seed: int = 0,
    ceiling: int | None = None,
    workers: int = 1,
    table: CodimensionTable | None = None,
) -> ExponentReport:
    """Assemble the growth report up to total degree n_max."""
    if table is None:
        table = compute_table(algebra, n_max, with_cocharacters=True, ceiling=ceiling, workers=workers)
    d = algebra.dim
    rows = []
    run_max = None
    run_min = None
    for n in range(1, n_max + 1):
        total = table.total(n)
        if total > d**n:
            raise IntegrityError(f"total codimension {total} exceeds {d}**{n}")
        root = nth_root_dyadic(Fraction(total), n, precision_bits) if total else Fraction(0)
        run_max = root if run_max is None else max(run_max, root)
        run_min = root if run_min is None else min(run_min, root)
        est = phi_lower_estimate(algebra, n, precision_bits, table)
        rows.append(ExponentRow(n, total, root, est.value, run_max, run_min))
    _, solvable = algebra.derived_series_even()
    verdict = algebra.simplicity_verdict(trials=trials, seed=seed)
    return ExponentReport(
        algebra.name,
        d,
        n_max,
        precision_bits,
        tuple(rows),
        solvable,
        verdict.status,
        seed,
        not solvable,
    )


# ---------------------------------------------------------------------------
# amplification


@dataclass(frozen=True)
class AmplificationWitness:
    """A successful gluing [v, c_1, ..., c_t, v'] != 0.

    ``connectors`` are global basis indices; ``second_substitution`` is the
    tuple of basis indices (slot order) at which the second copy takes the
    nonzero value v'.
    """

    connectors: tuple[int, ...]
    second_substitution: tuple[int, ...]
    value: tuple

    @property
    def t(self) -> int:
        return len(self.connectors)


@dataclass(frozen=True)
class AmplificationFailure:
    """Exhausted search: no gluing worked up to t = dim - 1.

    For a centerless simple algebra this cannot happen, so a failure is an
    integrity alarm on the input algebra rather than a plain negative.
    """

    max_t: int
    reason: str


def _sorted_slots(p: Polynomial):
    return sorted(p.slots)


def _value_candidates(algebra: SuperAlgebra, f: Polynomial):
    """Nonzero values of f on all basis substitutions, in lexicographic order."""
    slots = _sorted_slots(f)
    pools = [
        range(algebra.even_dim) if s[0] == 0 else range(algebra.even_dim, algebra.dim)
        for s in slots
    ]
    out = []
    for combo in product(*pools):
        sub = {s: algebra.basis_vector(b) for s, b in zip(slots, combo)}
        val = evaluate(f, sub, algebra)
        if any(val):
            out.append((combo, val))
    return out


def _amplify_pair(algebra: SuperAlgebra, first_value, f: Polynomial):
    """Search [first_value, c_1..c_t, v'] != 0 over t <= dim-1, jointly with v'.

    Search order: by sequence length, then lexicographically over basis
    indices, then over the second substitution; the first hit is returned,
    so the witness is minimal and deterministic.
    """
    d = algebra.dim
    candidates = _value_candidates(algebra, f)
    if not candidates:
        raise PreconditionError("second factor is identically zero on basis substitutions")
    for t in range(d):
        for seq in product(range(d), repeat=t):
            chain = first_value
            for c in seq:
                chain = algebra.bracket(chain, algebra.basis_vector(c))
                if not any(chain):
                    break
            if not any(chain):
                continue
            for combo, val in candidates:
                glued = algebra.bracket(chain, val)
                if any(glued):
                    return AmplificationWitness(seq, combo, tuple(glued))
    return AmplificationFailure(d - 1, "no connector sequence produced a nonzero bracket")


def amplify(algebra: SuperAlgebra, f: Polynomial, sub):
    """Glue two copies of a non-identity into one of roughly doubled degree.

    ``sub`` must be a witness substitution with a nonzero value (checked).
    Returns an AmplificationWitness, or an AmplificationFailure after an
    exhausted search.
    """
    value = evaluate(f, sub, algebra)
    if not any(value):
        raise PreconditionError("the given substitution does not witness a non-identity")
    return _amplify_pair(algebra, value, f)


def _shift_polynomial(p: Polynomial, even_shift: int, odd_shift: int) -> Polynomial:
    def move(slot):
        parity, idx = slot
        return (parity, idx + (even_shift if parity == 0 else odd_shift))

    terms = {Monomial(tuple(move(s) for s in m.word)): c for m, c in p.terms.items()}
    return Polynomial(terms, slots=frozenset(move(s) for s in p.slots))


def _append_slot(p: Polynomial, slot) -> Polynomial:
    terms = {Monomial(m.word + (slot,)): c for m, c in p.terms.items()}
    return Polynomial(terms, slots=p.slots | {slot})


def _poly_bracket(p: Polynomial, q: Polynomial) -> Polynomial:
    out: dict = {}
    for mp, cp in p.terms.items():
        for mq, cq in q.terms.items():
            for w, c in _word_bracket(mp.word, mq.word).items():
                out[w] = out.get(w, Fraction(0)) + cp * cq * c
    terms = {Monomial(w): c for w, c in out.items() if c}
    return Polynomial(terms, slots=p.slots | q.slots)


def build_amplification(algebra: SuperAlgebra, g: Polynomial, sub_g: dict, f: Polynomial, witness: AmplificationWitness):
    """Construct the glued polynomial and its witness substitution, verified.

    The new polynomial is [g, z_1, ..., z_t, f'] with f' a disjoint copy of
    f; its evaluation at the assembled substitution must equal the witness
    value exactly (and in particular be nonzero).
    """
    evens_g = g.even_indices()
    odds_g = g.odd_indices()
    a, b = len(evens_g), len(odds_g)
    parities = [algebra.parity(c) for c in witness.connectors]
    conn_even = sum(1 for p in parities if p == 0)
    conn_odd = len(parities) - conn_even

    glued = g
    sub_next = dict(sub_g)
    next_even, next_odd = a, b
    for c, parity in zip(witness.connectors, parities):
        if parity == 0:
            next_even += 1
            slot = even_slot(next_even)
        else:
            next_odd += 1
            slot = odd_slot(next_odd)
        glued = _append_slot(glued, slot)
        sub_next[slot] = algebra.basis_vector(c)

    f_copy = _shift_polynomial(f, a + conn_even, b + conn_odd)
    for slot, basis_idx in zip(sorted(f.slots), witness.second_substitution):
        parity, idx = slot
        moved = (parity, idx + (a + conn_even if parity == 0 else b + conn_odd))
        sub_next[moved] = algebra.basis_vector(basis_idx)
    glued = _poly_bracket(glued, f_copy)

    check = evaluate(glued, sub_next, algebra)
    if tuple(check) != tuple(witness.value) or not any(check):
        raise IntegrityError("re-evaluation of the glued polynomial does not match the witness value")
    return glued, sub_next


@dataclass(frozen=True)
class AmplificationStep:
    degree: int
    gap: int
    connectors: tuple[int, ...]
    gap_ok: bool
    verified_nonzero: bool


@dataclass(frozen=True)
class AmplificationRun:
    """Chain of glued non-identities with their degree gaps."""

    base_degree: int
    degrees: tuple[int, ...]
    steps: tuple[AmplificationStep, ...]
    gap_bound: int  # base degree + dim
    completed: bool
    alarm: str | None = None


#: Guard against runaway polynomial growth during iteration.
MAX_GLUED_TERMS = 200000


def iterate_amplification(
    algebra: SuperAlgebra, f: Polynomial, sub, q_max: int
) -> AmplificationRun:
    """Repeatedly glue a fresh copy of f onto the running non-identity.

    Produces the degrees of the constructed non-identities; each step's
    degree gap must stay within base degree + dim (it does: at most dim-1
    connectors plus one copy of f).  Stops with a partial run and an alarm
    if a gluing search fails.
    """
    if q_max < 0:
        raise PreconditionError("q_max must be >= 0")
    value = evaluate(f, sub, algebra)
    if not any(value):
        raise PreconditionError("the given substitution does not witness a non-identity")
    n0 = f.degree
    bound = n0 + algebra.dim
    degrees = [n0]
    steps: list[AmplificationStep] = []
    g, sub_g = f, dict(sub)
    for _q in range(q_max):
        outcome = _amplify_pair(algebra, evaluate(g, sub_g, algebra), f)
        if isinstance(outcome, AmplificationFailure):
            return AmplificationRun(
                n0, tuple(degrees), tuple(steps), bound, False, outcome.reason
            )
        g, sub_g = build_amplification(algebra, g, sub_g, f, outcome)
        if len(g.terms) > MAX_GLUED_TERMS:
            raise ResourceLimitError(
                f"glued polynomial grew to {len(g.terms)} terms, above {MAX_GLUED_TERMS}"
            )
        gap = g.degree - degrees[-1]
        steps.append(
            AmplificationStep(
                g.degree,
                gap,
                outcome.connectors,
                gap <= bound,
                True,  # build_amplification re-verified the value
            )
        )
        degrees.append(g.degree)
    return AmplificationRun(n0, tuple(degrees), tuple(steps), bound, True)
