"""Brute-force ground truth: the group algebra over GF(p) made explicit.

Elements of KG are length-|G| coefficient vectors.  Upper and lower Lie
power chains, both nilpotency indices, and the dimension subgroups are
computed directly from their definitions with dense linear algebra over
the prime field.  Everything here is deliberately simple and serves as
the independent check for the subgroup-series formulas.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionMismatchError,
    NoConvergenceError,
    NotLieNilpotentError,
    OracleCapExceededError,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    is_p_group,
    lower_central_series,
    trivial_subgroup,
)

DEFAULT_ORACLE_CAP = 128


def _mod_inverse(a: int, p: int) -> int:
    return pow(int(a), p - 2, p)


def _rref(matrix: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form over GF(p); returns (rows, pivot columns)."""
    m = np.array(matrix, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        lead = r + nz[0]
        if lead != r:
            m[[r, lead]] = m[[lead, r]]
        m[r] = (m[r] * _mod_inverse(m[r, c], p)) % p
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], tuple(pivots)


class FpSubspace:
    """A subspace of GF(p)^width held as a reduced row echelon basis."""

    __slots__ = ("p", "width", "basis", "pivots")

    def __init__(self, p: int, width: int, basis: np.ndarray,
                 pivots: tuple[int, ...]):
        self.p = p
        self.width = width
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def from_vectors(cls, vectors, p: int, width: int | None = None
                     ) -> "FpSubspace":
        mat = np.atleast_2d(np.asarray(list(vectors), dtype=np.int64))
        if mat.size == 0:
            if width is None:
                raise DimensionMismatchError(
                    "empty generating set needs an explicit width")
            mat = np.zeros((0, width), dtype=np.int64)
        if width is None:
            width = mat.shape[1]
        if mat.shape[1] != width:
            raise DimensionMismatchError(
                f"vectors of length {mat.shape[1]} in a space of width "
                f"{width}")
        rows, pivots = _rref(mat, p)
        return cls(p, width, rows, pivots)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def reduce(self, vec) -> np.ndarray:
        v = np.asarray(vec, dtype=np.int64) % self.p
        if v.shape != (self.width,):
            raise DimensionMismatchError(
                f"vector of length {v.shape} in a space of width "
                f"{self.width}")
        if self.dim:
            coeff = v[list(self.pivots)]
            v = (v - coeff @ self.basis) % self.p
        return v

    def contains(self, vec) -> bool:
        return not self.reduce(vec).any()

    def contains_all(self, mat) -> bool:
        m = np.asarray(mat, dtype=np.int64) % self.p
        if m.shape[0] == 0:
            return True
        if self.dim:
            m = (m - m[:, list(self.pivots)] @ self.basis) % self.p
        return not m.any()

    def sum(self, other: "FpSubspace") -> "FpSubspace":
        if self.p != other.p or self.width != other.width:
            raise DimensionMismatchError("subspaces live in different spaces")
        stacked = np.vstack([self.basis, other.basis])
        rows, pivots = _rref(stacked, self.p)
        return FpSubspace(self.p, self.width, rows, pivots)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpSubspace):
            return NotImplemented
        return (self.p == other.p and self.width == other.width
                and self.pivots == other.pivots
                and np.array_equal(self.basis, other.basis))

    def __hash__(self) -> int:
        return hash((self.p, self.width, self.pivots))

    def __repr__(self) -> str:
        return f"FpSubspace(p={self.p}, width={self.width}, dim={self.dim})"


def echelonize(vectors, p: int, width: int | None = None) -> FpSubspace:
    """Row-reduce a list of vectors into a subspace."""
    return FpSubspace.from_vectors(vectors, p, width)


def subspace_sum(a: FpSubspace, b: FpSubspace) -> FpSubspace:
    return a.sum(b)


def subspace_contains(s: FpSubspace, vec) -> bool:
    return s.contains(vec)


class _SpanBuilder:
    """Mutable accumulator keeping a fully reduced echelon basis."""

    def __init__(self, p: int, width: int):
        self.p = p
        self.width = width
        self.rows = np.zeros((0, width), dtype=np.int64)
        self.pivots: list[int] = []

    def absorb(self, candidates: np.ndarray) -> np.ndarray:
        """Add rows to the span; returns the newly inserted basis rows."""
        p = self.p
        c = np.atleast_2d(np.asarray(candidates, dtype=np.int64)) % p
        if c.size == 0:
            return np.zeros((0, self.width), dtype=np.int64)
        if self.rows.shape[0]:
            coeff = c[:, self.pivots].astype(np.float64)
            c = (c - np.rint(coeff @ self.rows.astype(np.float64))
                 .astype(np.int64)) % p
        c = c[c.any(axis=1)]
        added = []
        while c.shape[0]:
            lead_cols = np.argmax(c != 0, axis=1)
            pick = int(np.argmin(lead_cols))
            row = c[pick].copy()
            pc = int(lead_cols[pick])
            row = (row * _mod_inverse(row[pc], p)) % p
            if self.rows.shape[0]:
                factors = self.rows[:, pc]
                if factors.any():
                    self.rows = (self.rows - np.outer(factors, row)) % p
            insert_at = np.searchsorted(self.pivots, pc)
            self.rows = np.insert(self.rows, insert_at, row, axis=0)
            self.pivots.insert(insert_at, pc)
            factors = c[:, pc]
            if factors.any():
                c = (c - np.outer(factors, row)) % p
            c = c[c.any(axis=1)]
            added.append(row)
        if not added:
            return np.zeros((0, self.width), dtype=np.int64)
        return np.array(added)

    def snapshot(self) -> FpSubspace:
        return FpSubspace(self.p, self.width, self.rows.copy(),
                          tuple(self.pivots))


class GroupAlgebra:
    """The convolution algebra of a finite group over GF(p)."""

    def __init__(self, group: FiniteGroup, p: int, *,
                 oracle_cap: int = DEFAULT_ORACLE_CAP):
        if group.order > oracle_cap:
            raise OracleCapExceededError(
                f"group order {group.order} exceeds the oracle cap "
                f"{oracle_cap}")
        self.group = group
        self.p = p
        self.n = group.order
        table = group.dense_table().astype(np.int64)
        self._table = table
        inv = np.fromiter((group.inverse(i) for i in range(self.n)),
                          count=self.n, dtype=np.int64)
        # x -> delta_g * x permutes coordinates by h -> g^-1 h;
        # x -> x * delta_g permutes them by h -> h g^-1.
        self._left_perm = table[inv, :]
        self._right_perm = table[:, inv].T

    # -- elements -----------------------------------------------------------

    def zero(self) -> np.ndarray:
        return np.zeros(self.n, dtype=np.int64)

    def delta(self, g: int) -> np.ndarray:
        v = self.zero()
        v[g] = 1
        return v

    def multiply(self, x, y) -> np.ndarray:
        """Convolution product: (xy)_g = sum over uv = g of x_u y_v."""
        x = np.asarray(x, dtype=np.int64) % self.p
        y = np.asarray(y, dtype=np.int64) % self.p
        if x.shape != (self.n,) or y.shape != (self.n,):
            raise DimensionMismatchError("element length must equal |G|")
        out = self.zero()
        for u in np.flatnonzero(x):
            out[self._table[u]] = (out[self._table[u]] + x[u] * y) % self.p
        return out

    def bracket(self, x, y) -> np.ndarray:
        return (self.multiply(x, y) - self.multiply(y, x)) % self.p

    # -- span machinery ------------------------------------------------------

    def full_space(self) -> FpSubspace:
        eye = np.eye(self.n, dtype=np.int64)
        return FpSubspace(self.p, self.n, eye, tuple(range(self.n)))

    def _bracket_rows(self, basis: np.ndarray) -> np.ndarray:
        """All [b, delta_g] for basis rows b and non-identity g."""
        if basis.shape[0] == 0 or self.n == 1:
            return np.zeros((0, self.n), dtype=np.int64)
        blocks = []
        for g in range(1, self.n):
            right = basis[:, self._right_perm[g]]
            left = basis[:, self._left_perm[g]]
            blocks.append((right - left) % self.p)
        return np.vstack(blocks)

    def ideal_closure(self, span: FpSubspace) -> FpSubspace:
        """Least subspace containing the span and closed under left and
        right multiplication by every group basis element."""
        builder = _SpanBuilder(self.p, self.n)
        worklist = builder.absorb(span.basis)
        while worklist.shape[0]:
            blocks = []
            for g in range(1, self.n):
                blocks.append(worklist[:, self._left_perm[g]])
                blocks.append(worklist[:, self._right_perm[g]])
            if not blocks:
                break
            worklist = builder.absorb(np.vstack(blocks))
        return builder.snapshot()


def ideal_generated(gens: FpSubspace, group: FiniteGroup, *,
                    oracle_cap: int = DEFAULT_ORACLE_CAP) -> FpSubspace:
    """Two-sided associative ideal generated by a subspace of KG."""
    algebra = GroupAlgebra(group, gens.p, oracle_cap=oracle_cap)
    if gens.width != algebra.n:
        raise DimensionMismatchError("generating span has the wrong width")
    return algebra.ideal_closure(gens)


def algebra_multiply(group: FiniteGroup, p: int, x, y, *,
                     oracle_cap: int = DEFAULT_ORACLE_CAP) -> np.ndarray:
    return GroupAlgebra(group, p, oracle_cap=oracle_cap).multiply(x, y)


def lie_bracket(group: FiniteGroup, p: int, x, y, *,
                oracle_cap: int = DEFAULT_ORACLE_CAP) -> np.ndarray:
    return GroupAlgebra(group, p, oracle_cap=oracle_cap).bracket(x, y)


def _default_limit(group: FiniteGroup) -> int:
    gamma = lower_central_series(group)
    derived = gamma[1] if len(gamma) > 1 else trivial_subgroup(group)
    return derived.order + 2


def upper_lie_powers(group: FiniteGroup, p: int,
                     limit: int | None = None, *,
                     oracle_cap: int = DEFAULT_ORACLE_CAP
                     ) -> tuple[list[int], int]:
    """Dimension chain of the upper Lie powers and the first index where
    the chain reaches zero.

    Each step takes the ideal generated by all brackets of the previous
    term against KG.  A chain that stabilises above zero (or runs past
    the limit) signals a non-Lie-nilpotent input via NoConvergenceError.
    """
    algebra = GroupAlgebra(group, p, oracle_cap=oracle_cap)
    if limit is None:
        limit = _default_limit(group)
    current = algebra.full_space()
    dims = [current.dim]
    for step in range(2, limit + 1):
        brackets = algebra._bracket_rows(current.basis)
        span = FpSubspace.from_vectors(brackets, p, algebra.n)
        nxt = algebra.ideal_closure(span)
        dims.append(nxt.dim)
        if nxt.dim == 0:
            return dims, step
        if nxt.dim == current.dim:
            raise NoConvergenceError(
                f"upper Lie power chain stabilises at dimension {nxt.dim}",
                dims)
        current = nxt
    raise NoConvergenceError(
        f"upper Lie power chain did not reach zero within {limit} steps",
        dims)


def lower_lie_powers(group: FiniteGroup, p: int,
                     limit: int | None = None, *,
                     oracle_cap: int = DEFAULT_ORACLE_CAP
                     ) -> tuple[list[int], int]:
    """Dimension chain of the lower Lie powers and its vanishing index.

    The span of left-normed brackets is advanced one weight at a time
    (basis elements suffice by multilinearity); each reported dimension
    is that of the ideal the span generates.
    """
    algebra = GroupAlgebra(group, p, oracle_cap=oracle_cap)
    if limit is None:
        limit = _default_limit(group)
    span = algebra.full_space()
    dims = [span.dim]
    for step in range(2, limit + 1):
        brackets = algebra._bracket_rows(span.basis)
        nxt_span = FpSubspace.from_vectors(brackets, p, algebra.n)
        ideal = algebra.ideal_closure(nxt_span)
        dims.append(ideal.dim)
        if ideal.dim == 0:
            return dims, step
        if nxt_span.dim == span.dim:
            raise NoConvergenceError(
                f"lower Lie power chain stabilises at dimension "
                f"{nxt_span.dim}", dims)
        span = nxt_span
    raise NoConvergenceError(
        f"lower Lie power chain did not reach zero within {limit} steps",
        dims)


def _upper_power_chain(algebra: GroupAlgebra, upto: int) -> list[FpSubspace]:
    chain = [algebra.full_space()]
    while len(chain) < upto:
        current = chain[-1]
        if current.dim == 0:
            chain.append(current)
            continue
        brackets = algebra._bracket_rows(current.basis)
        span = FpSubspace.from_vectors(brackets, algebra.p, algebra.n)
        chain.append(algebra.ideal_closure(span))
    return chain


def _members_of(algebra: GroupAlgebra, space: FpSubspace) -> list[int]:
    """Indices g with delta_g - delta_1 inside the given subspace."""
    n = algebra.n
    deltas = np.eye(n, dtype=np.int64)
    deltas[:, 0] -= 1
    deltas %= algebra.p
    if space.dim:
        coeff = deltas[:, list(space.pivots)]
        deltas = (deltas - coeff @ space.basis) % algebra.p
    return [g for g in range(n) if not deltas[g].any()]


def dimension_subgroup_direct(group: FiniteGroup, p: int, m: int, *,
                              oracle_cap: int = DEFAULT_ORACLE_CAP
                              ) -> Subgroup:
    """The m-th dimension subgroup straight from the definition:
    elements g with delta_g - delta_1 in the m-th upper Lie power."""
    if m < 1:
        raise ValueError("series index must be positive")
    algebra = GroupAlgebra(group, p, oracle_cap=oracle_cap)
    chain = _upper_power_chain(algebra, m)
    return Subgroup(group, _members_of(algebra, chain[m - 1]))


def dimension_series_direct(group: FiniteGroup, p: int, *,
                            oracle_cap: int = DEFAULT_ORACLE_CAP
                            ) -> list[Subgroup]:
    """All dimension subgroups from the definition, cut at the first
    trivial term.  The input must be Lie nilpotent."""
    if not is_lie_nilpotent(group, p):
        raise NotLieNilpotentError(
            "direct dimension series needs a Lie nilpotent input")
    algebra = GroupAlgebra(group, p, oracle_cap=oracle_cap)
    chain = [algebra.full_space()]
    series: list[Subgroup] = []
    m = 1
    while True:
        members = _members_of(algebra, chain[-1])
        sub = Subgroup(group, members)
        series.append(sub)
        if sub.is_trivial:
            return series
        current = chain[-1]
        brackets = algebra._bracket_rows(current.basis)
        span = FpSubspace.from_vectors(brackets, p, algebra.n)
        chain.append(algebra.ideal_closure(span))
        m += 1


def is_lie_nilpotent(group: FiniteGroup, p: int) -> bool:
    """True iff the group is nilpotent with a p-group commutator
    subgroup (abelian groups count: KG is then commutative)."""
    gamma = lower_central_series(group)
    if not gamma[-1].is_trivial:
        return False
    derived = gamma[1] if len(gamma) > 1 else trivial_subgroup(group)
    return is_p_group(derived, p)
