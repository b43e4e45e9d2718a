"""Finite-dimensional Lie superalgebras over the rationals.

An algebra is a table of exact structure constants over a homogeneous
basis whose first ``even_dim`` elements are even.  Elements are coefficient
vectors (lists of ints/Fractions).  Structural probes (center, derived
series of the even part, ideal closure, simplicity probing) are exact rank
computations, so a returned witness is certificate-grade.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import AlgebraFormatError, PreconditionError


class Subspace:
    """A subspace of Q^n held as a canonical (RREF) basis of row vectors."""

    def __init__(self, ambient: int, vectors=()):
        self.ambient = ambient
        rows = [list(v) for v in vectors if any(v)]
        for r in rows:
            if len(r) != ambient:
                raise PreconditionError(f"vector length {len(r)} != ambient {ambient}")
        basis, pivots = linalg.rref(rows)
        self.basis = tuple(tuple(row) for row in basis)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient)

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        eye = [[Fraction(int(i == j)) for j in range(ambient)] for i in range(ambient)]
        return cls(ambient, eye)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, vec) -> bool:
        if not any(vec):
            return True
        return linalg.coordinates_in_rowspace([list(r) for r in self.basis], list(self.pivots), list(vec)) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def sum(self, vectors) -> "Subspace":
        return Subspace(self.ambient, [list(r) for r in self.basis] + [list(v) for v in vectors])

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient})"


@dataclass(frozen=True)
class ValidationReport:
    """Every axiom violation found in a structure-constant table."""

    grading_violations: tuple = ()
    skew_violations: tuple = ()
    jacobi_violations: tuple = ()

    @property
    def valid(self) -> bool:
        return not (self.grading_violations or self.skew_violations or self.jacobi_violations)

    def __bool__(self):
        return self.valid


@dataclass(frozen=True)
class SimplicityVerdict:
    """One-sided simplicity probe result.

    ``not_simple`` comes with a proper graded ideal as a certificate
    (checked by construction); ``heuristically_simple`` only means no probe
    found an ideal and is not a proof.
    """

    status: str  # "not_simple" | "heuristically_simple"
    witness: Subspace | None = None
    probe: str | None = None
    trials: int = 0
    seed: int = 0

    @property
    def is_not_simple(self) -> bool:
        return self.status == "not_simple"


class SuperAlgebra:
    """L = L0 (+) L1 with exact structure constants.

    ``table[i][j]`` lists the nonzero components of the bracket of basis
    elements i and j as (index, coefficient) pairs; the dense coefficient
    of e_l is the sum over matching pairs (there is at most one).
    """

    def __init__(self, name: str, even_dim: int, odd_dim: int, labels, table):
        self.name = name
        self.even_dim = even_dim
        self.odd_dim = odd_dim
        self.dim = even_dim + odd_dim
        self.labels = tuple(labels)
        if len(self.labels) != self.dim:
            raise PreconditionError(f"{len(self.labels)} labels for dimension {self.dim}")
        if len(set(self.labels)) != self.dim:
            raise PreconditionError("basis labels must be distinct")
        d = self.dim
        dense = [[[_as_number(0)] * d for _ in range(d)] for _ in range(d)]
        for i in range(d):
            for j in range(d):
                for l, coeff in table[i][j]:
                    dense[i][j][l] = _as_number(coeff)
        self.dense = dense
        self.sparse = tuple(
            tuple(tuple((l, c) for l, c in enumerate(dense[i][j]) if c) for j in range(d))
            for i in range(d)
        )

    def parity(self, i: int) -> int:
        return 0 if i < self.even_dim else 1

    def basis_vector(self, i: int) -> list:
        v = [0] * self.dim
        v[i] = 1
        return v

    def basis_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise PreconditionError(f"unknown basis label {label!r} in algebra {self.name}") from None

    def bracket(self, u, v) -> list:
        """Bilinear extension of the structure constants to coefficient vectors."""
        if len(u) != self.dim or len(v) != self.dim:
            raise PreconditionError(f"vectors must have length {self.dim}")
        acc = [0] * self.dim
        sparse = self.sparse
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = sparse[i]
            for j, vj in enumerate(v):
                if not vj:
                    continue
                scale = ui * vj
                for l, c in row[j]:
                    acc[l] += scale * c
        return acc

    def is_homogeneous(self, vec) -> int | None:
        """Parity of a homogeneous vector, or None if mixed/zero-ambiguous."""
        has_even = any(vec[: self.even_dim])
        has_odd = any(vec[self.even_dim :])
        if has_even and has_odd:
            return None
        return 1 if has_odd else 0

    # -- structural probes ------------------------------------------------

    def validate(self) -> ValidationReport:
        """Check grading, super skew-symmetry, and the super Jacobi identity.

        Violations are returned, not raised; each list names the offending
        index pair/triple exactly.
        """
        d = self.dim
        dense = self.dense
        grading = []
        for i in range(d):
            for j in range(d):
                want = (self.parity(i) + self.parity(j)) % 2
                for l in range(d):
                    if dense[i][j][l] and self.parity(l) != want:
                        grading.append((i, j, l))
        skew = []
        for i in range(d):
            for j in range(i, d):
                # [e_i, e_j] = -(-1)^(p_i p_j) [e_j, e_i]
                factor = 1 if (self.parity(i) and self.parity(j)) else -1
                if any(dense[i][j][l] != factor * dense[j][i][l] for l in range(d)):
                    skew.append((i, j))
        jacobi = []
        for i in range(d):
            ei = self.basis_vector(i)
            for j in range(d):
                ej = self.basis_vector(j)
                eij = self.bracket(ei, ej)
                for l in range(d):
                    el = self.basis_vector(l)
                    # [e_i, [e_j, e_l]] = [[e_i, e_j], e_l] - (-1)^(p_j p_l) [[e_i, e_l], e_j]
                    lhs = self.bracket(ei, self.bracket(ej, el))
                    rhs1 = self.bracket(eij, el)
                    rhs2 = self.bracket(self.bracket(ei, el), ej)
                    s = -1 if (self.parity(j) and self.parity(l)) else 1
                    if any(a - b + s * c for a, b, c in zip(lhs, rhs1, rhs2)):
                        jacobi.append((i, j, l))
        return ValidationReport(tuple(grading), tuple(skew), tuple(jacobi))

    def center(self) -> Subspace:
        """Null space of all adjoint maps, exact."""
        d = self.dim
        # u is central iff sum_j u_j c[j][i][l] = 0 for every i, l
        rows = []
        for i in range(d):
            for l in range(d):
                rows.append([self.dense[j][i][l] for j in range(d)])
        return Subspace(d, linalg.nullspace(rows, d))

    def derived_series_even(self) -> tuple[list[Subspace], bool]:
        """Derived series of the even part; solvable iff it reaches zero."""
        d = self.dim
        g = Subspace(d, [self.basis_vector(i) for i in range(self.even_dim)])
        series = [g]
        while True:
            cur = series[-1]
            brackets = [
                self.bracket(list(u), list(v)) for u in cur.basis for v in cur.basis
            ]
            nxt = Subspace(d, brackets)
            if nxt == cur:
                return series, cur.is_zero()
            series.append(nxt)
            if nxt.is_zero():
                return series, True

    def ideal_closure(self, seed: Subspace) -> Subspace:
        """Smallest subspace containing ``seed`` closed under bracketing with the algebra."""
        if seed.ambient != self.dim:
            raise PreconditionError("seed lives in the wrong ambient space")
        cur = seed
        while True:
            new = []
            for v in cur.basis:
                for i in range(self.dim):
                    new.append(self.bracket(list(v), self.basis_vector(i)))
            nxt = cur.sum(new)
            if nxt == cur:
                return cur
            cur = nxt

    def derived_subalgebra(self) -> Subspace:
        vecs = [
            self.bracket(self.basis_vector(i), self.basis_vector(j))
            for i in range(self.dim)
            for j in range(self.dim)
        ]
        return Subspace(self.dim, vecs)

    def simplicity_verdict(self, trials: int = 20, seed: int = 0) -> SimplicityVerdict:
        """Probe for proper nonzero graded ideals.

        Probes, in order: the center, the derived subalgebra, the ideal
        generated by each basis vector, and the ideals generated by
        ``trials`` seeded pseudo-random homogeneous vectors.  Finding one
        certifies not_simple; exhausting them only returns
        heuristically_simple.
        """
        if self.dim == 0:
            raise PreconditionError("the zero algebra has no simplicity verdict")
        center = self.center()
        if not center.is_zero() and center.dim < self.dim:
            return SimplicityVerdict("not_simple", center, "center", trials, seed)
        derived = self.derived_subalgebra()
        if derived.dim < self.dim:
            # [L, L] is always an ideal; if zero, L is abelian and any line works.
            if not derived.is_zero():
                return SimplicityVerdict("not_simple", derived, "derived_subalgebra", trials, seed)
            if self.dim >= 2:
                line = self.ideal_closure(Subspace(self.dim, [self.basis_vector(0)]))
                return SimplicityVerdict("not_simple", line, "abelian_line", trials, seed)
            return SimplicityVerdict("not_simple", derived, "abelian_trivial_bracket", trials, seed)
        if not center.is_zero():
            return SimplicityVerdict("not_simple", center, "center", trials, seed)
        for i in range(self.dim):
            ideal = self.ideal_closure(Subspace(self.dim, [self.basis_vector(i)]))
            if 0 < ideal.dim < self.dim:
                return SimplicityVerdict("not_simple", ideal, f"basis_vector:{self.labels[i]}", trials, seed)
        rng = random.Random(seed)
        for t in range(trials):
            par = t % 2 if self.odd_dim and self.even_dim else (0 if self.even_dim else 1)
            lo, hi = (0, self.even_dim) if par == 0 else (self.even_dim, self.dim)
            vec = [0] * self.dim
            for idx in range(lo, hi):
                vec[idx] = rng.randint(-2, 2)
            if not any(vec):
                continue
            ideal = self.ideal_closure(Subspace(self.dim, [vec]))
            if 0 < ideal.dim < self.dim:
                return SimplicityVerdict("not_simple", ideal, f"random_vector:{t}", trials, seed)
        return SimplicityVerdict("heuristically_simple", None, None, trials, seed)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "even_dim": self.even_dim,
            "odd_dim": self.odd_dim,
            "labels": list(self.labels),
        }

    def __repr__(self):
        return f"SuperAlgebra({self.name}, d0={self.even_dim}, d1={self.odd_dim})"


def _as_number(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise PreconditionError(f"structure constants must be rational, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# construction helpers


def _table_from_pairs(dim: int, entries: dict) -> list:
    table = [[[] for _ in range(dim)] for _ in range(dim)]
    for (i, j), comps in entries.items():
        table[i][j] = list(comps)
    return table


def _complete_by_skew(dim, parity, given: dict) -> dict:
    """Fill omitted brackets by super skew-symmetry; reject contradictions."""
    full = {}
    for (i, j), comps in given.items():
        dense = {}
        for l, c in comps:
            dense[l] = dense.get(l, 0) + c
        full[(i, j)] = {l: c for l, c in dense.items() if c}
    for (i, j) in list(full.keys()):
        factor = 1 if (parity[i] and parity[j]) else -1  # -(-1)^(p_i p_j)
        mirrored = {l: factor * c for l, c in full[(i, j)].items()}
        if (j, i) in full:
            if full[(j, i)] != mirrored:
                raise AlgebraFormatError(
                    f"brackets for ({i},{j}) and ({j},{i}) contradict super skew-symmetry"
                )
        elif i != j:
            full[(j, i)] = mirrored
        else:
            if parity[i] == 0 and mirrored != full[(i, j)]:
                raise AlgebraFormatError(
                    f"diagonal bracket [{i},{i}] of an even element must vanish"
                )
    out = {}
    for (i, j), dense in full.items():
        out[(i, j)] = [(l, c) for l, c in sorted(dense.items())]
    return out


def parse_rational(text) -> Fraction:
    """Parse "p/q" or "p" (ints also accepted)."""
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise AlgebraFormatError(f"bad rational {text!r}: {exc}") from None
    raise AlgebraFormatError(f"rationals must be strings or integers, got {type(text).__name__}")


def loads_algebra(text: str, source: str = "<string>") -> SuperAlgebra:
    """Parse the JSON algebra format and validate the result.

    Format: an object with ``name``, ``even_basis``, ``odd_basis`` and
    ``brackets``: a list of ``{left, right, result: [{basis, coeff}]}``
    entries.  Omitted brackets are zero; the table is completed by super
    skew-symmetry and contradictions are rejected.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise AlgebraFormatError(f"{source}: top level must be an object")
    try:
        name = doc["name"]
        even = list(doc["even_basis"])
        odd = list(doc["odd_basis"])
        brackets = doc.get("brackets", [])
    except KeyError as exc:
        raise AlgebraFormatError(f"{source}: missing field {exc.args[0]!r}") from None
    labels = even + odd
    if len(set(labels)) != len(labels):
        raise AlgebraFormatError(f"{source}: duplicate basis labels")
    index = {lab: i for i, lab in enumerate(labels)}
    parity = [0] * len(even) + [1] * len(odd)
    given: dict = {}
    for pos, entry in enumerate(brackets):
        where = f"{source}: brackets[{pos}]"
        try:
            left, right = entry["left"], entry["right"]
            result = entry["result"]
        except (TypeError, KeyError) as exc:
            raise AlgebraFormatError(f"{where}: missing field {exc}") from None
        for lab in (left, right):
            if lab not in index:
                raise AlgebraFormatError(f"{where}: unknown basis label {lab!r}")
        comps = []
        for cpos, comp in enumerate(result):
            try:
                target = comp["basis"]
                coeff = parse_rational(comp["coeff"])
            except (TypeError, KeyError) as exc:
                raise AlgebraFormatError(f"{where}.result[{cpos}]: missing field {exc}") from None
            if target not in index:
                raise AlgebraFormatError(f"{where}.result[{cpos}]: unknown basis label {target!r}")
            comps.append((index[target], coeff))
        key = (index[left], index[right])
        if key in given:
            raise AlgebraFormatError(f"{where}: duplicate bracket for ({left}, {right})")
        given[key] = comps
    completed = _complete_by_skew(len(labels), parity, given)
    algebra = SuperAlgebra(name, len(even), len(odd), labels, _table_from_pairs(len(labels), completed))
    report = algebra.validate()
    if not report:
        bad = (report.grading_violations or report.jacobi_violations or report.skew_violations)[0]
        kind = (
            "grading" if report.grading_violations
            else ("jacobi" if report.jacobi_violations else "skew")
        )
        raise AlgebraFormatError(f"{source}: {kind} violation at indices {bad}")
    return algebra


def load_algebra(path) -> SuperAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_algebra(fh.read(), source=str(path))


BUILTIN_NAMES = ("abelian:<d0>:<d1>", "heisenberg", "sl2", "osp12")


def builtin(name: str) -> SuperAlgebra:
    """Built-in algebras: abelian:<d0>:<d1>, heisenberg, sl2, osp12."""
    if name.startswith("abelian"):
        bits = name.split(":")
        if len(bits) != 3:
            raise PreconditionError(f"abelian builtin must look like abelian:<d0>:<d1>, got {name!r}")
        try:
            d0, d1 = int(bits[1]), int(bits[2])
        except ValueError:
            raise PreconditionError(f"bad abelian dimensions in {name!r}") from None
        if d0 < 0 or d1 < 0 or d0 + d1 == 0:
            raise PreconditionError(f"abelian dimensions must be nonnegative and not both zero: {name!r}")
        labels = [f"a{i+1}" for i in range(d0)] + [f"b{i+1}" for i in range(d1)]
        return SuperAlgebra(name, d0, d1, labels, _table_from_pairs(d0 + d1, {}))
    if name == "heisenberg":
        # [p, q] = z, purely even
        entries = {(0, 1): [(2, 1)], (1, 0): [(2, -1)]}
        return SuperAlgebra("heisenberg", 3, 0, ["p", "q", "z"], _table_from_pairs(3, entries))
    if name == "sl2":
        # basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f
        e, f, h = 0, 1, 2
        given = {
            (e, f): [(h, 1)],
            (h, e): [(e, 2)],
            (h, f): [(f, -2)],
        }
        parity = [0, 0, 0]
        completed = _complete_by_skew(3, parity, given)
        return SuperAlgebra("sl2", 3, 0, ["e", "f", "h"], _table_from_pairs(3, completed))
    if name == "osp12":
        # Even part sl2 = span(h, e, f) acting on the odd pair (x, y); derived
        # from the matrix realization on a (1|2)-dimensional space preserving
        # the split even-symmetric/odd-symplectic form.
        h, e, f, x, y = 0, 1, 2, 3, 4
        given = {
            (h, e): [(e, 2)],
            (h, f): [(f, -2)],
            (e, f): [(h, 1)],
            (h, x): [(x, 1)],
            (h, y): [(y, -1)],
            (e, x): [],
            (e, y): [(x, 1)],
            (f, x): [(y, 1)],
            (f, y): [],
            (x, x): [(e, -2)],
            (x, y): [(h, 1)],
            (y, y): [(f, 2)],
        }
        parity = [0, 0, 0, 1, 1]
        completed = _complete_by_skew(5, parity, given)
        return SuperAlgebra("osp12", 3, 2, ["h", "e", "f", "x", "y"], _table_from_pairs(5, completed))
    raise PreconditionError(f"unknown builtin algebra {name!r}; known: {', '.join(BUILTIN_NAMES)}")
