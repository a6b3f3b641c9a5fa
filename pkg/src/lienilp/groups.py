"""Finite group arithmetic on integer element indices.

Every group enumerates its elements as 0..order-1 with the identity at
index 0.  Small groups carry a dense multiplication table; larger ones
store each element as a permutation of a finite set and multiply by
composition followed by an index lookup.  Groups and subgroups are
immutable after construction, so all operations here are pure functions.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CapExceededError,
    NoIdentityError,
    NoInverseError,
    NotAbelianError,
    NotAssociativeError,
    NotAutomorphismError,
    NotHomomorphismError,
    NotNilpotentError,
    NotNormalError,
)

DEFAULT_ORDER_CAP = 65536
TABLE_BACKING_LIMIT = 4096
_EXHAUSTIVE_ASSOC_LIMIT = 512


class FiniteGroup:
    """A finite group on element indices.

    Do not call the constructor directly; use the module-level builders
    (``from_multiplication_table``, ``from_permutation_generators``,
    ``cyclic_group``, ...) which validate their input.
    """

    __slots__ = ("order", "generators", "labels", "degree",
                 "_table", "_perms", "_perm_index", "_inverses")

    def __init__(self, *, table=None, perms=None, generators=(),
                 labels=None, inverses=None):
        if table is not None:
            self._table = np.ascontiguousarray(table, dtype=np.int32)
            self.order = int(self._table.shape[0])
            self._perms = None
            self._perm_index = None
            self.degree = None
            if inverses is None:
                rows, cols = np.nonzero(self._table == 0)
                inv = np.empty(self.order, dtype=np.int32)
                inv[rows] = cols
                inverses = inv
            self._inverses = np.asarray(inverses, dtype=np.int32)
        else:
            self._table = None
            self._perms = tuple(tuple(p) for p in perms)
            self.order = len(self._perms)
            self.degree = len(self._perms[0]) if self._perms else 0
            self._perm_index = {p: i for i, p in enumerate(self._perms)}
            inv = np.empty(self.order, dtype=np.int32)
            for i, p in enumerate(self._perms):
                q = [0] * self.degree
                for a, b in enumerate(p):
                    q[b] = a
                inv[i] = self._perm_index[tuple(q)]
            self._inverses = inv
        self.generators = tuple(int(x) for x in generators)
        self.labels = tuple(labels) if labels is not None else None

    @property
    def backing(self) -> str:
        return "table" if self._table is not None else "permutation"

    def multiply(self, i: int, j: int) -> int:
        if self._table is not None:
            return int(self._table[i, j])
        a = self._perms[i]
        b = self._perms[j]
        return self._perm_index[tuple(map(a.__getitem__, b))]

    def inverse(self, i: int) -> int:
        return int(self._inverses[i])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse(x), -k
        result, base = 0, x
        while k:
            if k & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            k >>= 1
        return result

    def conjugate(self, x: int, t: int) -> int:
        """t^-1 * x * t."""
        return self.multiply(self.inverse(t), self.multiply(x, t))

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(self.multiply(s, t) == self.multiply(t, s)
                   for s in gens for t in gens)

    def dense_table(self) -> np.ndarray:
        if self._table is None:
            raise CapExceededError(
                "no dense multiplication table for a permutation-backed "
                f"group of order {self.order}")
        return self._table

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return str(i)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, backing={self.backing!r})"


class Subgroup:
    """An element-index subset of a parent group, closed under its operations."""

    __slots__ = ("parent", "members", "generators", "_member_set")

    def __init__(self, parent: FiniteGroup, members: Iterable[int],
                 generators: Iterable[int] = (), *, closed: bool = False):
        mem = tuple(sorted({int(x) for x in members}))
        self.parent = parent
        self.members = mem
        gens = tuple(int(x) for x in generators)
        self.generators = gens if gens else tuple(x for x in mem if x != 0)
        self._member_set = frozenset(mem)
        if not mem or mem[0] != 0:
            raise ValueError("subgroup must contain the identity (index 0)")
        if parent.order % len(mem) != 0:
            raise ValueError(
                f"subset of size {len(mem)} cannot be a subgroup of a group "
                f"of order {parent.order}")
        if not closed:
            ms = self._member_set
            for x in mem:
                if parent.inverse(x) not in ms:
                    raise ValueError(f"subset not closed under inverse at {x}")
                for y in mem:
                    if parent.multiply(x, y) not in ms:
                        raise ValueError(
                            f"subset not closed under multiplication at "
                            f"({x}, {y})")

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def __contains__(self, x: int) -> bool:
        return x in self._member_set

    def member_set(self) -> frozenset[int]:
        return self._member_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.order})"


@dataclass(frozen=True)
class AbelianType:
    """Isomorphism type of a finite abelian group: non-increasing prime powers."""

    factors: tuple[int, ...]

    def __post_init__(self):
        prev = None
        for f in self.factors:
            if f < 2 or not _is_prime_power(f):
                raise ValueError(f"{f} is not a prime power > 1")
            if prev is not None and f > prev:
                raise ValueError("factors must be non-increasing")
            prev = f

    @property
    def order(self) -> int:
        return math.prod(self.factors) if self.factors else 1

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) <= 1

    def is_elementary(self, p: int) -> bool:
        return all(f == p for f in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " x ".join(f"C{f}" for f in self.factors)


@dataclass(frozen=True)
class Quotient:
    """A quotient group together with the element-index projection map."""

    group: FiniteGroup
    projection: tuple[int, ...]


# --------------------------------------------------------------------------
# small number-theory helpers
# --------------------------------------------------------------------------


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _is_prime_power(n: int) -> bool:
    return len(_factorize(n)) == 1 if n > 1 else False


def _p_log(n: int, p: int) -> int | None:
    """Exact base-p logarithm of n, or None when n is not a power of p."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


# --------------------------------------------------------------------------
# table validation
# --------------------------------------------------------------------------


def _find_identity(table: np.ndarray) -> int:
    n = table.shape[0]
    idx = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
            return e
    raise NoIdentityError()


def _check_associative_exhaustive(table: np.ndarray) -> None:
    n = table.shape[0]
    flat = table.reshape(-1)
    block = max(1, (1 << 22) // max(1, n * n))
    for start in range(0, n, block):
        rows = table[start:start + block]
        left = table[rows.reshape(-1), :].reshape(rows.shape[0], n, n)
        right = rows[:, flat].reshape(rows.shape[0], n, n)
        if not np.array_equal(left, right):
            a, j, k = np.argwhere(left != right)[0]
            raise NotAssociativeError(int(start + a), int(j), int(k))


def _closure_indices(table: np.ndarray, seed: Sequence[int]) -> np.ndarray:
    """Close a set of indices under the (possibly non-associative) product."""
    n = table.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[list(seed)] = True
    while True:
        idx = np.flatnonzero(mask)
        prods = np.unique(table[np.ix_(idx, idx)])
        before = mask.sum()
        mask[prods] = True
        if mask.sum() == before:
            return idx


def _greedy_generators(table: np.ndarray) -> tuple[int, ...]:
    n = table.shape[0]
    gens: list[int] = []
    covered = _closure_indices(table, [0])
    while len(covered) < n:
        missing = np.setdiff1d(np.arange(n), covered)[0]
        gens.append(int(missing))
        covered = _closure_indices(table, [0] + gens)
    return tuple(gens)


def _check_associative_light(table: np.ndarray,
                             gens: Sequence[int]) -> None:
    # Light's test: with S generating the magma, a(sb) == (as)b for all
    # s in S and all a, b implies full associativity.
    for s in gens:
        left = table[:, table[s, :]]
        right = table[table[:, s], :]
        if not np.array_equal(left, right):
            a, b = np.argwhere(left != right)[0]
            raise NotAssociativeError(int(a), int(s), int(b))


def from_multiplication_table(table, *, cap: int = DEFAULT_ORDER_CAP,
                              labels: Sequence[str] | None = None
                              ) -> FiniteGroup:
    """Validate a square multiplication table and wrap it as a group.

    The identity is relocated to index 0 when necessary.  Raises
    NotAssociativeError / NoIdentityError / NoInverseError naming the
    violating triple or element, and CapExceededError past the order cap.
    """
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError("multiplication table must be square")
    n = t.shape[0]
    if n == 0:
        raise ValueError("multiplication table must be nonempty")
    if n > cap:
        raise CapExceededError(f"table order {n} exceeds cap {cap}")
    if t.min() < 0 or t.max() >= n:
        raise ValueError("table entries must lie in [0, order)")

    e = _find_identity(t)
    if e != 0:
        perm = np.arange(n)
        perm[0], perm[e] = e, 0
        t = perm[t[np.ix_(perm, perm)]]
        if labels is not None:
            labels = list(labels)
            labels[0], labels[e] = labels[e], labels[0]

    if n <= _EXHAUSTIVE_ASSOC_LIMIT:
        _check_associative_exhaustive(t)
        gens = _greedy_generators(t)
    else:
        gens = _greedy_generators(t)
        _check_associative_light(t, gens)

    inverses = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        js = np.flatnonzero(t[i] == 0)
        ok = [j for j in js if t[j, i] == 0]
        if not ok:
            raise NoInverseError(i)
        inverses[i] = ok[0]

    return FiniteGroup(table=t, generators=gens, labels=labels,
                       inverses=inverses)


# --------------------------------------------------------------------------
# permutation closure
# --------------------------------------------------------------------------


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """(a . b)(x) = a(b(x)); the product 'apply b, then a'."""
    return tuple(map(a.__getitem__, b))


def from_permutation_generators(degree: int, generators, *,
                                cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Close a set of permutations of {0..degree-1} under composition.

    Element 0 is the identity permutation.  Groups whose order stays
    within TABLE_BACKING_LIMIT are materialised as dense tables; bigger
    closures keep the permutation backing.
    """
    ident = tuple(range(degree))
    gens: list[tuple[int, ...]] = []
    for g in generators:
        p = tuple(int(x) for x in g)
        if len(p) != degree or sorted(p) != list(ident):
            raise ValueError(f"{p} is not a permutation of 0..{degree - 1}")
        if p != ident and p not in gens:
            gens.append(p)

    elements: list[tuple[int, ...]] = [ident]
    index: dict[tuple[int, ...], int] = {ident: 0}
    words: list[tuple[int, int]] = [(-1, -1)]  # (parent index, generator slot)
    frontier = [0]
    while frontier:
        nxt = []
        for ei in frontier:
            e = elements[ei]
            for gi, gp in enumerate(gens):
                prod = _compose(e, gp)
                if prod not in index:
                    if len(elements) >= cap:
                        raise CapExceededError(
                            f"permutation closure exceeds cap {cap}")
                    index[prod] = len(elements)
                    elements.append(prod)
                    words.append((ei, gi))
                    nxt.append(index[prod])
        frontier = nxt

    n = len(elements)
    gen_indices = tuple(index[g] for g in gens)
    if n > TABLE_BACKING_LIMIT:
        return FiniteGroup(perms=elements, generators=gen_indices)

    # Materialise the dense table column by column: each element e was
    # discovered as parent*g, so T[:, e] = T[T[:, parent], g].
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n)
    gen_cols = {}
    for gi, gp in enumerate(gens):
        col = np.fromiter(
            (index[_compose(elements[i], gp)] for i in range(n)),
            count=n, dtype=np.int32)
        gen_cols[gi] = col
        table[:, index[gp]] = col
    for e in range(1, n):
        parent, gi = words[e]
        if elements[e] in gens:
            continue
        table[:, e] = gen_cols[gi][table[:, parent]]
    return FiniteGroup(table=table, generators=gen_indices)


# --------------------------------------------------------------------------
# product constructions
# --------------------------------------------------------------------------


def _pair_labels(a: FiniteGroup, b: FiniteGroup) -> list[str] | None:
    if a.labels is None or b.labels is None:
        return None
    return [f"({la},{lb})" for la in a.labels for lb in b.labels]


def _faithful_generator_perms(g: FiniteGroup):
    """Generators of g as permutations of a faithful action: the stored
    points for permutation backing, the regular action otherwise."""
    if g.backing == "permutation":
        return g.degree, [g._perms[i] for i in g.generators]
    table = g.dense_table()
    return g.order, [tuple(int(v) for v in table[i]) for i in g.generators]


def direct_product(a: FiniteGroup, b: FiniteGroup, *,
                   cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Componentwise product on pairs; index (i, j) -> i * |b| + j."""
    order = a.order * b.order
    if order > cap:
        raise CapExceededError(f"product order {order} exceeds cap {cap}")
    if order <= TABLE_BACKING_LIMIT:
        ta = a.dense_table().astype(np.int64)
        tb = b.dense_table().astype(np.int64)
        nb = b.order
        t = ta[:, None, :, None] * nb + tb[None, :, None, :]
        t = t.reshape(order, order)
        gens = tuple(g * nb for g in a.generators) + tuple(b.generators)
        return FiniteGroup(table=t, generators=gens,
                           labels=_pair_labels(a, b))
    da, pa = _faithful_generator_perms(a)
    db, pb = _faithful_generator_perms(b)
    gens = [tuple(p) + tuple(range(da, da + db)) for p in pa]
    gens += [tuple(range(da)) + tuple(x + da for x in p) for p in pb]
    return from_permutation_generators(da + db, gens, cap=cap)


def _as_action_arrays(n: FiniteGroup, h: FiniteGroup, action) -> np.ndarray:
    """Normalise an action to an (|h| x |n|) array of index maps."""
    arr = np.empty((h.order, n.order), dtype=np.int64)
    if isinstance(action, dict):
        for j in range(h.order):
            if j not in action:
                raise NotHomomorphismError(
                    f"action is missing an image for element {j}")
            arr[j] = np.asarray(action[j], dtype=np.int64)
    else:
        mats = list(action)
        if len(mats) != h.order:
            raise NotHomomorphismError(
                f"action must give one automorphism per element of the "
                f"acting group ({h.order} expected, {len(mats)} given)")
        for j, m in enumerate(mats):
            arr[j] = np.asarray(m, dtype=np.int64)
    return arr


def semidirect_product(n: FiniteGroup, h: FiniteGroup, action, *,
                       cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build n x| h with multiplication (n1,h1)(n2,h2) = (n1*h1(n2), h1 h2).

    ``action`` maps every element of h to an automorphism of n given as a
    permutation of n's element indices (a dict keyed by h-index or a
    sequence ordered by h-index).  The map is checked to be a
    homomorphism into Aut(n).
    """
    order = n.order * h.order
    if order > cap:
        raise CapExceededError(f"product order {order} exceeds cap {cap}")
    if order > TABLE_BACKING_LIMIT:
        raise CapExceededError(
            "semidirect products above the table limit are not supported; "
            "use a permutation construction such as wreath_cyclic")
    tn = n.dense_table().astype(np.int64)
    th = h.dense_table().astype(np.int64)
    acts = _as_action_arrays(n, h, action)

    idx = np.arange(n.order)
    for j in range(h.order):
        a = acts[j]
        if not np.array_equal(np.sort(a), idx):
            raise NotAutomorphismError(
                f"action of element {j} is not a bijection on the normal "
                f"part")
        if a[0] != 0 or not np.array_equal(a[tn], tn[np.ix_(a, a)]):
            raise NotAutomorphismError(
                f"action of element {j} does not preserve multiplication")
    if not np.array_equal(acts[0], idx):
        raise NotHomomorphismError("identity must act trivially")
    for j in range(h.order):
        for k in range(h.order):
            if not np.array_equal(acts[int(th[j, k])], acts[j][acts[k]]):
                raise NotHomomorphismError(
                    f"action is not multiplicative at the pair ({j}, {k})")

    nh = h.order
    table = np.empty((order, order), dtype=np.int64)
    for j1 in range(nh):
        twisted = tn[:, acts[j1]]                     # n1 * act(h1)(n2)
        block = twisted[:, :, None] * nh + th[j1][None, None, :]
        rows = np.arange(n.order) * nh + j1
        table[rows] = block.reshape(n.order, order)
    gens = tuple(g * nh for g in n.generators) + tuple(h.generators)
    return FiniteGroup(table=table, generators=gens)


def wreath_cyclic(p: int, q: int, *, cap: int = DEFAULT_ORDER_CAP
                  ) -> FiniteGroup:
    """The wreath product of cyclic groups: base (C_p)^q plus a q-step
    coordinate shift, realised as permutations of p*q points."""
    if p < 1 or q < 1:
        raise ValueError("wreath factors must be positive")
    if p ** q * q > cap:
        raise CapExceededError(
            f"wreath order {p ** q * q} exceeds cap {cap}")
    degree = p * q
    base = list(range(degree))
    for x in range(p):
        base[x] = (x + 1) % p
    shift = [(x + p) % degree for x in range(degree)]
    return from_permutation_generators(degree, [base, shift], cap=cap)


# --------------------------------------------------------------------------
# named constructions
# --------------------------------------------------------------------------


def _pow_label(sym: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return sym
    return f"{sym}^{k}"


def cyclic_group(order: int, *, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if order < 1:
        raise ValueError("order must be positive")
    if order > cap:
        raise CapExceededError(f"order {order} exceeds cap {cap}")
    i = np.arange(order)
    table = (i[:, None] + i[None, :]) % order
    labels = ["1"] + [_pow_label("g", k) for k in range(1, order)]
    gens = (1,) if order > 1 else ()
    return FiniteGroup(table=table, generators=gens, labels=labels)


def dihedral_group(order: int, *, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Dihedral group of the given (even) order: rotations then reflections."""
    if order < 2 or order % 2:
        raise ValueError("dihedral order must be even and at least 2")
    if order > cap:
        raise CapExceededError(f"order {order} exceeds cap {cap}")
    m = order // 2
    i = np.arange(order)
    r, f = i % m, i // m
    r1, r2 = r[:, None], r[None, :]
    f1, f2 = f[:, None], f[None, :]
    rot = np.where(f1 == 0, r1 + r2, r1 - r2) % m
    table = rot + m * (f1 ^ f2)
    labels = [("1" if not (rr or ff) else
               _pow_label("a", rr) + ("b" if ff else ""))
              for ff in (0, 1) for rr in range(m)]
    gens = (1, m) if m > 1 else (m,)
    return FiniteGroup(table=table, generators=gens, labels=labels)


def quaternion_group8(*, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """The quaternion group of order 8: a^4 = 1, b^2 = a^2, a^b = a^-1."""
    if 8 > cap:
        raise CapExceededError("order 8 exceeds cap")
    i = np.arange(8)
    r, f = i % 4, i // 4
    r1, r2 = r[:, None], r[None, :]
    f1, f2 = f[:, None], f[None, :]
    rot = (np.where(f1 == 0, r1 + r2, r1 - r2) + 2 * (f1 & f2)) % 4
    table = rot + 4 * (f1 ^ f2)
    labels = ["1", "a", "a^2", "a^3", "b", "ab", "a^2b", "a^3b"]
    return FiniteGroup(table=table, generators=(1, 4), labels=labels)


def extraspecial_exponent_p(p: int, *, cap: int = DEFAULT_ORDER_CAP
                            ) -> FiniteGroup:
    """Extraspecial group of order p^3 and exponent p (odd p only),
    realised as unitriangular coordinate triples (a, b, c)."""
    if p < 3 or _factorize(p) != {p: 1}:
        raise ValueError("p must be an odd prime")
    order = p ** 3
    if order > cap:
        raise CapExceededError(f"order {order} exceeds cap {cap}")
    i = np.arange(order)
    a, rem = np.divmod(i, p * p)
    b, c = np.divmod(rem, p)
    a1, a2 = a[:, None], a[None, :]
    b1, b2 = b[:, None], b[None, :]
    c1, c2 = c[:, None], c[None, :]
    table = (((a1 + a2) % p) * p * p
             + ((b1 + b2) % p) * p
             + (c1 + c2 + a1 * b2) % p)
    return FiniteGroup(table=table, generators=(p * p, p))


def trivial_group() -> FiniteGroup:
    return FiniteGroup(table=[[0]], generators=(), labels=["1"])


# --------------------------------------------------------------------------
# element operations
# --------------------------------------------------------------------------


def commutator(g: FiniteGroup, x: int, y: int) -> int:
    """(x, y) = x^-1 y^-1 x y."""
    return g.multiply(g.multiply(g.inverse(x), g.inverse(y)),
                      g.multiply(x, y))


def element_order(g: FiniteGroup, x: int) -> int:
    k, cur = 1, x
    while cur != 0:
        cur = g.multiply(cur, x)
        k += 1
    return k


# --------------------------------------------------------------------------
# subgroup machinery
# --------------------------------------------------------------------------


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, (0,), (), closed=True)


def full_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, range(g.order), g.generators, closed=True)


def subgroup_generated(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the given elements."""
    seeds = sorted({int(x) for x in gens} - {0})
    if not seeds:
        return trivial_subgroup(g)
    if g._table is not None:
        t = g._table
        garr = np.asarray(seeds)
        mask = np.zeros(g.order, dtype=bool)
        mask[0] = True
        frontier = np.array([0])
        while frontier.size:
            prods = np.unique(t[np.ix_(frontier, garr)])
            new = prods[~mask[prods]]
            mask[new] = True
            frontier = new
        members = np.flatnonzero(mask).tolist()
    else:
        members_set = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in seeds:
                    prod = g.multiply(x, s)
                    if prod not in members_set:
                        members_set.add(prod)
                        nxt.append(prod)
            frontier = nxt
        members = sorted(members_set)
    return Subgroup(g, members, seeds, closed=True)


def normal_closure(g: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    """Smallest normal subgroup of g containing the seed elements."""
    gens = sorted({int(x) for x in seeds} - {0})
    if not gens:
        return trivial_subgroup(g)
    sub = subgroup_generated(g, gens)
    while True:
        added = []
        for t in g.generators:
            for s in gens:
                c = g.conjugate(s, t)
                if c not in sub and c not in added:
                    added.append(c)
        if not added:
            return Subgroup(g, sub.members, gens, closed=True)
        gens.extend(added)
        sub = subgroup_generated(g, gens)


def is_normal(h: Subgroup) -> tuple[bool, tuple[int, int] | None]:
    g = h.parent
    for t in g.generators:
        for x in h.members:
            if g.conjugate(x, t) not in h:
                return False, (x, t)
    return True, None


def commutator_subgroup(h: Subgroup, g: FiniteGroup) -> Subgroup:
    """The subgroup generated by all (x, y) with x in h, y in g.

    Generated as the normal closure of generator commutators, which
    agrees with the all-pairs definition because (h, g) is normalised
    by the whole group.
    """
    if h.parent is not g:
        raise ValueError("subgroup does not belong to the given group")
    seeds = {commutator(g, s, t)
             for s in h.generators for t in g.generators}
    return normal_closure(g, seeds)


@functools.lru_cache(maxsize=256)
def lower_central_series(g: FiniteGroup) -> tuple[Subgroup, ...]:
    """[G, (G,G), ...] until the series stabilises; the repeated final
    term is not duplicated.  Nilpotent groups end at the trivial term."""
    series = [full_subgroup(g)]
    while True:
        nxt = commutator_subgroup(series[-1], g)
        if nxt == series[-1]:
            return tuple(series)
        series.append(nxt)
        if nxt.is_trivial:
            return tuple(series)


def nilpotency_class(g: FiniteGroup) -> int:
    series = lower_central_series(g)
    if not series[-1].is_trivial:
        raise NotNilpotentError(
            f"lower central series stabilises at order {series[-1].order}")
    return len(series) - 1


def center(g: FiniteGroup) -> Subgroup:
    members = [z for z in range(g.order)
               if all(g.multiply(z, t) == g.multiply(t, z)
                      for t in g.generators)]
    return Subgroup(g, members, closed=True)


def quotient(g: FiniteGroup, n: Subgroup, *,
             cap: int = DEFAULT_ORDER_CAP) -> Quotient:
    """Coset group of g by a normal subgroup, with minimal-index coset
    representatives and the element -> coset projection."""
    if n.parent is not g:
        raise ValueError("subgroup does not belong to the given group")
    ok, witness = is_normal(n)
    if not ok:
        raise NotNormalError(*witness)
    q = g.order // n.order
    if q > TABLE_BACKING_LIMIT or q > cap:
        raise CapExceededError(f"quotient order {q} exceeds the table limit")
    proj = [-1] * g.order
    reps: list[int] = []
    for x in range(g.order):
        if proj[x] < 0:
            c = len(reps)
            reps.append(x)
            for m in n.members:
                proj[g.multiply(x, m)] = c
    if g._table is not None:
        parr = np.asarray(proj, dtype=np.int32)
        table = parr[g._table[np.ix_(reps, reps)]]
    else:
        table = np.empty((q, q), dtype=np.int32)
        for c1, r1 in enumerate(reps):
            for c2, r2 in enumerate(reps):
                table[c1, c2] = proj[g.multiply(r1, r2)]
    gens = tuple(dict.fromkeys(proj[t] for t in g.generators if proj[t] != 0))
    labels = ([g.labels[r] for r in reps] if g.labels is not None else None)
    return Quotient(FiniteGroup(table=table, generators=gens, labels=labels),
                    tuple(proj))


def power_subgroup(h: Subgroup, q: int) -> Subgroup:
    """Subgroup generated by the q-th powers of all members of h."""
    if q < 1:
        raise ValueError("exponent must be positive")
    g = h.parent
    seeds = {g.power(x, q) for x in h.members}
    return subgroup_generated(g, seeds)


def product_of_subgroups(a: Subgroup, b: Subgroup) -> Subgroup:
    """Product of two normal subgroups (the subgroup they generate)."""
    if a.parent is not b.parent:
        raise ValueError("subgroups must share a parent group")
    for s in (a, b):
        ok, witness = is_normal(s)
        if not ok:
            raise NotNormalError(*witness)
    return subgroup_generated(a.parent, a.generators + b.generators)


def is_abelian_subgroup(h: Subgroup) -> bool:
    g = h.parent
    gens = h.generators
    return all(g.multiply(s, t) == g.multiply(t, s)
               for s in gens for t in gens)


def abelian_invariants(h: Subgroup) -> AbelianType:
    """Cyclic prime-power decomposition of an abelian subgroup.

    For each prime, the partition is recovered from the order statistics
    |{x : x^(p^k) = 1}|, which determine it uniquely.
    """
    if not is_abelian_subgroup(h):
        raise NotAbelianError("subgroup is not abelian")
    if h.order == 1:
        return AbelianType(())
    g = h.parent
    orders = [element_order(g, x) for x in h.members]
    factors: list[int] = []
    for p in _factorize(h.order):
        p_orders = [o for o in orders if _p_log(o, p) is not None]
        max_e = max(_p_log(o, p) for o in p_orders)
        cum = [sum(1 for o in p_orders if _p_log(o, p) <= k)
               for k in range(max_e + 1)]
        exps = []
        for count in cum:
            e = _p_log(count, p)
            if e is None:
                raise NotAbelianError(
                    "order statistics are not p-power sized; subgroup is "
                    "not an abelian p-group")
            exps.append(e)
        ranks = [exps[k] - exps[k - 1] for k in range(1, max_e + 1)]
        ranks.append(0)
        for k in range(1, max_e + 1):
            factors.extend([p ** k] * (ranks[k - 1] - ranks[k]))
    return AbelianType(tuple(sorted(factors, reverse=True)))


def exponent(h: Subgroup) -> int:
    g = h.parent
    return math.lcm(*(element_order(g, x) for x in h.members))


def is_p_group(h: Subgroup, p: int) -> bool:
    return _p_log(h.order, p) is not None
