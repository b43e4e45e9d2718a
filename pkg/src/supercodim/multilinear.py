"""Multilinear polynomials in even and odd variables.

A variable slot is a pair (parity, index): (0, i) is the even variable
x_i, (1, j) the odd variable y_j.  A monomial is a left-normed bracket
word [z_1, z_2, ..., z_n] over distinct slots.  Arbitrary bracketings
(full binary trees) are rewritten onto the spanning set of left-normed
words whose first slot is the least even variable present (least odd when
there is none), using

    [u, [v, w]] = [[u, v], w] - (-1)^(|v| |w|) [[u, w], v]
    [u, v] = -(-1)^(|u| |v|) [v, u]

The first rule strictly shrinks the right argument, the second is applied
once at the front, so rewriting terminates.  Coefficients stay integers
(signs) under rewriting; Polynomial supports rational coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .errors import PreconditionError

EVEN, ODD = 0, 1

Slot = tuple[int, int]


def slot_name(slot: Slot) -> str:
    parity, index = slot
    return f"{'x' if parity == EVEN else 'y'}{index}"


_SLOT_RE = re.compile(r"^([xy])(\d+)$")


def parse_slot(text: str) -> Slot:
    m = _SLOT_RE.match(text.strip())
    if not m:
        raise PreconditionError(f"bad variable name {text!r} (expected x<i> or y<j>)")
    return (EVEN if m.group(1) == "x" else ODD, int(m.group(2)))


def even_slot(i: int) -> Slot:
    return (EVEN, i)


def odd_slot(j: int) -> Slot:
    return (ODD, j)


def word_parity(word) -> int:
    return sum(p for p, _ in word) % 2


@dataclass(frozen=True)
class Monomial:
    """A left-normed bracket word over distinct slots."""

    word: tuple[Slot, ...]

    def __post_init__(self):
        word = tuple((int(p), int(i)) for p, i in self.word)
        object.__setattr__(self, "word", word)
        if len(set(word)) != len(word):
            raise PreconditionError(f"monomial slots must be distinct: {self}")

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def even_count(self) -> int:
        return sum(1 for p, _ in self.word if p == EVEN)

    def slot_set(self) -> frozenset:
        return frozenset(self.word)

    def __str__(self):
        return "[" + ",".join(slot_name(s) for s in self.word) + "]"


class Polynomial:
    """Rational linear combination of monomials over one common slot set."""

    def __init__(self, terms, slots=None):
        clean: dict[Monomial, Fraction] = {}
        slot_set = frozenset(slots) if slots is not None else None
        for mono, coeff in dict(terms).items():
            if not isinstance(mono, Monomial):
                mono = Monomial(tuple(mono))
            coeff = Fraction(coeff)
            if not coeff:
                continue
            if slot_set is None:
                slot_set = mono.slot_set()
            elif mono.slot_set() != slot_set:
                raise PreconditionError(
                    f"monomial {mono} does not live on the slot set of this polynomial"
                )
            clean[mono] = coeff
        if slot_set is None:
            raise PreconditionError("a polynomial needs an explicit slot set when it has no terms")
        self.terms = clean
        self.slots = slot_set

    @classmethod
    def from_word(cls, word, coeff=1) -> "Polynomial":
        mono = Monomial(tuple(word))
        return cls({mono: Fraction(coeff)}, slots=mono.slot_set())

    @classmethod
    def zero(cls, slots) -> "Polynomial":
        return cls({}, slots=slots)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        """Terms in lexicographic word order (deterministic)."""
        return sorted(self.terms.items(), key=lambda kv: kv[0].word)

    @property
    def degree(self) -> int:
        return len(self.slots)

    def even_indices(self) -> tuple[int, ...]:
        return tuple(sorted(i for p, i in self.slots if p == EVEN))

    def odd_indices(self) -> tuple[int, ...]:
        return tuple(sorted(i for p, i in self.slots if p == ODD))

    def __add__(self, other):
        if self.slots != other.slots:
            raise PreconditionError("cannot add polynomials over different slot sets")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(out, slots=self.slots)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        return Polynomial({m: scalar * c for m, c in self.terms.items()}, slots=self.slots)

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.slots == other.slots and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono, coeff in self.items():
            if coeff == 1:
                lead = ""
            elif coeff == -1:
                lead = "-"
            else:
                lead = f"{coeff}*"
            bits.append(f"{lead}{mono}")
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self})"


_TERM_RE = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?\[([^\]]*)\]")


def parse_polynomial(text: str) -> Polynomial:
    """Inverse of str(): signed terms like "[x1,y1,x2] - 1/2*[x1,x2,y1]"."""
    s = text.strip()
    if not s:
        raise PreconditionError("empty polynomial text")
    pos = 0
    terms: dict[Monomial, Fraction] = {}
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m:
            raise PreconditionError(f"cannot parse polynomial near {s[pos:pos+20]!r}")
        sign, coeff_text, inner = m.groups()
        coeff = Fraction(coeff_text) if coeff_text else Fraction(1)
        if sign == "-":
            coeff = -coeff
        word = tuple(parse_slot(part) for part in inner.split(",") if part.strip())
        mono = Monomial(word)
        terms[mono] = terms.get(mono, Fraction(0)) + coeff
        pos = m.end()
    return Polynomial(terms)


# ---------------------------------------------------------------------------
# bracket trees


@dataclass(frozen=True)
class Leaf:
    slot: Slot

    def leaves(self):
        return [self.slot]

    def parity(self):
        return self.slot[0]


@dataclass(frozen=True)
class Node:
    left: "Leaf | Node"
    right: "Leaf | Node"

    def leaves(self):
        return self.left.leaves() + self.right.leaves()

    def parity(self):
        return (self.left.parity() + self.right.parity()) % 2


def tree_from_word(word) -> "Leaf | Node":
    """Left-normed tree [[..[z1,z2],..],zn] for a slot sequence."""
    word = list(word)
    if not word:
        raise PreconditionError("empty word has no bracket tree")
    t: Leaf | Node = Leaf(tuple(word[0]))
    for slot in word[1:]:
        t = Node(t, Leaf(tuple(slot)))
    return t


# ---------------------------------------------------------------------------
# rewriting


def designated_first_slot(slots) -> Slot:
    """Least even slot of the set, or least odd when no even slot exists."""
    return min(slots)  # (0, i) sorts before (1, j), indices ascending


def _word_bracket(a: tuple, b: tuple) -> dict[tuple, int]:
    """[a, b] of two left-normed words as left-normed words starting with a[0].

    Recursion on len(b): a single-slot right factor is appended; otherwise
    [a, [b', t]] = [[a, b'], t] - (-1)^(|b'| |t|) [[a, t], b'].
    """
    if len(b) == 1:
        return {a + b: 1}
    head, last = b[:-1], b[-1]
    out: dict[tuple, int] = {}
    for w, c in _word_bracket(a, head).items():
        key = w + (last,)
        out[key] = out.get(key, 0) + c
    sign = -1 if (word_parity(head) and last[0]) else 1
    for w, c in _word_bracket(a + (last,), head).items():
        out[w] = out.get(w, 0) - sign * c
    return {w: c for w, c in out.items() if c}


def _front_normalize(word: tuple) -> dict[tuple, int]:
    """Rewrite a left-normed word so every term starts with the designated slot."""
    first = designated_first_slot(word)
    p = word.index(first)
    if p == 0:
        return {word: 1}
    prefix, tail = word[:p], word[p + 1 :]
    # word = [[prefix, first], tail...];  [prefix, first] = -(-1)^(|prefix|) [first, prefix]
    sign = 1 if (word_parity(prefix) and first[0]) else -1
    out: dict[tuple, int] = {}
    for w, c in _word_bracket((first,), prefix).items():
        key = w + tail
        out[key] = out.get(key, 0) + sign * c
    return out


def _tree_words(t) -> dict[tuple, int]:
    if isinstance(t, Leaf):
        return {(t.slot,): 1}
    left = _tree_words(t.left)
    right = _tree_words(t.right)
    out: dict[tuple, int] = {}
    for wl, cl in left.items():
        for wr, cr in right.items():
            for w, c in _word_bracket(wl, wr).items():
                out[w] = out.get(w, 0) + cl * cr * c
    return {w: c for w, c in out.items() if c}


def normalize(t: "Leaf | Node") -> Polynomial:
    """Express a bracket tree over the spanning left-normed monomials.

    The result is an equal element of the free Lie superalgebra, written
    over words that all start with the designated first slot.
    """
    leaves = t.leaves()
    if len(set(leaves)) != len(leaves):
        raise PreconditionError(f"bracket tree has repeated slots: {sorted(leaves)}")
    combined: dict[tuple, int] = {}
    for w, c in _tree_words(t).items():
        for w2, c2 in _front_normalize(w).items():
            combined[w2] = combined.get(w2, 0) + c * c2
    terms = {Monomial(w): Fraction(c) for w, c in combined.items() if c}
    return Polynomial(terms, slots=frozenset(leaves))


def spanning_monomials(k: int, n_minus_k: int) -> list[Monomial]:
    """The (n-1)! left-normed words with fixed first slot, in lexicographic order.

    First slot is x_1 (y_1 when k = 0); the remaining slots run over all
    permutations of the other variables.
    """
    n = k + n_minus_k
    if n < 1:
        raise PreconditionError("spanning monomials need total degree >= 1")
    slots = [even_slot(i) for i in range(1, k + 1)] + [odd_slot(j) for j in range(1, n_minus_k + 1)]
    first = slots[0]
    rest = slots[1:]
    return [Monomial((first,) + perm) for perm in permutations(rest)]


# ---------------------------------------------------------------------------
# evaluation


def _check_substitution(slots, sub, algebra):
    for slot in slots:
        if slot not in sub:
            raise PreconditionError(f"substitution is missing slot {slot_name(slot)}")
        vec = sub[slot]
        if len(vec) != algebra.dim:
            raise PreconditionError(f"substituted vector for {slot_name(slot)} has wrong length")
        parity, _ = slot
        if parity == EVEN and any(vec[algebra.even_dim :]):
            raise PreconditionError(f"even slot {slot_name(slot)} substituted with a non-even element")
        if parity == ODD and any(vec[: algebra.even_dim]):
            raise PreconditionError(f"odd slot {slot_name(slot)} substituted with a non-odd element")


def evaluate_word(word, sub, algebra, _cache=None):
    """Evaluate a left-normed word; prefix results are cached in ``_cache``."""
    if _cache is None:
        _cache = {}
    known = _cache.get(word)
    if known is not None:
        return known
    if len(word) == 1:
        vec = list(sub[word[0]])
    else:
        vec = algebra.bracket(evaluate_word(word[:-1], sub, algebra, _cache), sub[word[-1]])
    _cache[word] = vec
    return vec


def evaluate(p: Polynomial, sub, algebra, _cache=None) -> list:
    """Value of a polynomial under a parity-respecting substitution.

    ``sub`` maps each slot to a coefficient vector in the algebra; even
    slots must receive even elements and odd slots odd elements (this is
    the graded evaluation contract).
    """
    _check_substitution(p.slots, sub, algebra)
    acc = [0] * algebra.dim
    cache = {} if _cache is None else _cache
    for mono, coeff in p.terms.items():
        vec = evaluate_word(mono.word, sub, algebra, cache)
        for i, v in enumerate(vec):
            if v:
                acc[i] += coeff * v
    return acc


def evaluate_tree(t, sub, algebra) -> list:
    """Evaluate a bracket tree directly by structural recursion.

    Deliberately independent of ``normalize``; used as the semantic
    reference for rewriting.
    """
    leaves = t.leaves()
    if len(set(leaves)) != len(leaves):
        raise PreconditionError("bracket tree has repeated slots")
    _check_substitution(leaves, sub, algebra)

    def rec(node):
        if isinstance(node, Leaf):
            return list(sub[node.slot])
        return algebra.bracket(rec(node.left), rec(node.right))

    return rec(t)


# ---------------------------------------------------------------------------
# place permutations and symmetrization


def _check_permutation(perm, degree, what):
    if sorted(perm) != list(range(1, degree + 1)):
        raise PreconditionError(f"{what} is not a permutation of 1..{degree}: {perm}")


def permutation_sign(perm) -> int:
    perm = list(perm)
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def compose_permutations(outer, inner) -> tuple:
    """(outer o inner)(i) = outer(inner(i)) in 1-based one-line notation."""
    return tuple(outer[inner[i - 1] - 1] for i in range(1, len(inner) + 1))


def place_permute(p: Polynomial, sigma, tau) -> Polynomial:
    """Rename even indices by sigma and odd indices by tau, then renormalize.

    Both permutations are in 1-based one-line notation and must match the
    polynomial's variable ranges exactly (x_1..x_k and y_1..y_{n-k}).
    """
    sigma = tuple(sigma)
    tau = tuple(tau)
    evens = p.even_indices()
    odds = p.odd_indices()
    if evens != tuple(range(1, len(sigma) + 1)):
        raise PreconditionError(
            f"even permutation degree {len(sigma)} does not match slots x{list(evens)}"
        )
    if odds != tuple(range(1, len(tau) + 1)):
        raise PreconditionError(
            f"odd permutation degree {len(tau)} does not match slots y{list(odds)}"
        )
    _check_permutation(sigma, len(sigma), "sigma")
    _check_permutation(tau, len(tau), "tau")

    def rename(slot: Slot) -> Slot:
        parity, idx = slot
        return (parity, sigma[idx - 1] if parity == EVEN else tau[idx - 1])

    combined: dict[tuple, Fraction] = {}
    for mono, coeff in p.terms.items():
        renamed = tuple(rename(s) for s in mono.word)
        for w, c in _front_normalize(renamed).items():
            combined[w] = combined.get(w, Fraction(0)) + coeff * c
    terms = {Monomial(w): c for w, c in combined.items() if c}
    return Polynomial(terms, slots=p.slots)


def _check_tableau(tab, degree, what) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(v) for v in row) for row in tab)
    shape = [len(r) for r in rows]
    if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)) or (shape and shape[-1] == 0):
        raise PreconditionError(f"{what} does not have partition shape: {shape}")
    entries = sorted(v for row in rows for v in row)
    if entries != list(range(1, degree + 1)):
        raise PreconditionError(f"{what} must contain 1..{degree} exactly once")
    return rows


def _row_group(rows, degree):
    """All permutations preserving each row, 1-based one-line notation."""
    perms = [tuple(range(1, degree + 1))]
    for row in rows:
        new = []
        for base in perms:
            for arrangement in permutations(row):
                perm = list(base)
                for src, dst in zip(row, arrangement):
                    perm[src - 1] = dst
                new.append(tuple(perm))
        perms = new
    return perms


def _column_group(rows, degree):
    if not rows:
        return [tuple(range(1, degree + 1))]
    cols = []
    for c in range(len(rows[0])):
        col = [row[c] for row in rows if c < len(row)]
        cols.append(tuple(col))
    return _row_group(cols, degree)


def young_symmetrize(p: Polynomial, tableau_even, tableau_odd) -> Polynomial:
    """Row-symmetrize then column-antisymmetrize along two tableaux.

    The even tableau is filled with the even variable indices, the odd one
    with the odd indices.  The result lies in the isotypic component of the
    pair of shapes (or is zero).
    """
    k = len(p.even_indices())
    j = len(p.odd_indices())
    rows_e = _check_tableau(tableau_even, k, "even tableau")
    rows_o = _check_tableau(tableau_odd, j, "odd tableau")
    acc = Polynomial.zero(p.slots)
    for se in _row_group(rows_e, k):
        for so in _row_group(rows_o, j):
            acc = acc + place_permute(p, se, so)
    out = Polynomial.zero(p.slots)
    for qe in _column_group(rows_e, k):
        sign_e = permutation_sign(qe)
        for qo in _column_group(rows_o, j):
            sign = sign_e * permutation_sign(qo)
            out = out + sign * place_permute(acc, qe, qo)
    return out
