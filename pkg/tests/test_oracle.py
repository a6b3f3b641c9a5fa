"""Explicit group-algebra computations over GF(p)."""

import numpy as np
import pytest

from lienilp.errors import (
    DimensionMismatchError,
    NoConvergenceError,
    OracleCapExceededError,
)
from lienilp.groups import cyclic_group, lower_central_series
from lienilp.oracle import (
    GroupAlgebra,
    dimension_series_direct,
    dimension_subgroup_direct,
    echelonize,
    ideal_generated,
    is_lie_nilpotent,
    lower_lie_powers,
    subspace_contains,
    subspace_sum,
    upper_lie_powers,
)
from lienilp.dimension import d_vector as series_d_vector, \
    series_recursive, upper_index_jennings


def naive_convolution(g, p, x, y):
    """Reference product: all |G|^2 coefficient pairs."""
    out = [0] * g.order
    for u in range(g.order):
        for v in range(g.order):
            out[g.multiply(u, v)] = (out[g.multiply(u, v)]
                                     + int(x[u]) * int(y[v])) % p
    return np.array(out)


# --- products and brackets ----------------------------------------------------


def test_delta_products(built):
    d8 = built("D8")
    alg = GroupAlgebra(d8, 2)
    x = np.array([1, 0, 1, 1, 0, 1, 0, 0])
    assert np.array_equal(alg.multiply(alg.delta(0), x), x)
    for g in range(8):
        for h in range(8):
            prod = alg.multiply(alg.delta(g), alg.delta(h))
            assert np.array_equal(prod, alg.delta(d8.multiply(g, h)))


def test_multiply_matches_naive(built):
    rng = np.random.default_rng(3)
    for name, p in (("D8", 2), ("H27", 3), ("S3", 5)):
        g = built(name)
        alg = GroupAlgebra(g, p)
        for _ in range(5):
            x = rng.integers(0, p, g.order)
            y = rng.integers(0, p, g.order)
            assert np.array_equal(alg.multiply(x, y),
                                  naive_convolution(g, p, x, y))


def test_square_of_one_plus_central_involution():
    c2 = cyclic_group(2)
    alg = GroupAlgebra(c2, 2)
    v = np.array([1, 1])      # 1 + g with g^2 = 1
    assert not alg.multiply(v, v).any()


def test_module_level_product_and_bracket(built):
    from lienilp.oracle import algebra_multiply, lie_bracket
    d8 = built("D8")
    x, y = np.eye(8, dtype=int)[1], np.eye(8, dtype=int)[4]
    assert np.array_equal(algebra_multiply(d8, 2, x, y),
                          np.eye(8, dtype=int)[d8.multiply(1, 4)])
    assert lie_bracket(d8, 2, x, y).any()


def test_brackets(built):
    d8 = built("D8")
    alg = GroupAlgebra(d8, 2)
    x = np.array([1, 1, 0, 0, 1, 0, 0, 1])
    assert not alg.bracket(x, x).any()
    c4 = cyclic_group(4)
    ab = GroupAlgebra(c4, 2)
    for g in range(4):
        for h in range(4):
            assert not ab.bracket(ab.delta(g), ab.delta(h)).any()
    assert alg.bracket(alg.delta(1), alg.delta(4)).any()


# --- subspaces ------------------------------------------------------------------


def test_echelonize_basics():
    s = echelonize([[1, 0, 0], [1, 0, 0], [2, 0, 0]], 3)
    assert s.dim == 1
    z = echelonize([[0, 0, 0]], 5, 3)
    assert z.dim == 0
    span = echelonize([[1, 0, 0], [1, 1, 0]], 2)
    assert subspace_contains(span, [0, 1, 0])
    assert not subspace_contains(span, [0, 0, 1])


def test_echelonize_shape_errors():
    with pytest.raises(DimensionMismatchError):
        echelonize([[1, 0]], 2, width=3)
    with pytest.raises(DimensionMismatchError):
        echelonize([], 2)
    s = echelonize([[1, 0]], 2)
    with pytest.raises(DimensionMismatchError):
        s.contains([1, 0, 0])


def test_subspace_sum():
    a = echelonize([[1, 0, 0]], 2)
    b = echelonize([[0, 1, 0]], 2)
    assert subspace_sum(a, b).dim == 2
    assert subspace_sum(a, a) == a


def test_rref_canonical():
    rows = [[1, 2, 0], [0, 1, 1]]
    shuffled = [[0, 1, 1], [1, 0, 1]]  # same row space mod 3
    assert echelonize(rows, 3) == echelonize(shuffled, 3)


# --- ideals ---------------------------------------------------------------------


def test_ideal_of_identity_is_everything(built):
    d8 = built("D8")
    gens = echelonize([GroupAlgebra(d8, 2).delta(0)], 2)
    assert ideal_generated(gens, d8).dim == 8


def test_ideal_of_nothing_is_zero(built):
    d8 = built("D8")
    gens = echelonize([], 2, width=8)
    assert ideal_generated(gens, d8).dim == 0


def test_augmentation_ideal_of_c2():
    c2 = cyclic_group(2)
    gens = echelonize([[1, 1]], 2)
    assert ideal_generated(gens, c2).dim == 1


# --- Lie power chains -------------------------------------------------------------


def test_upper_powers_abelian(built):
    dims, t = upper_lie_powers(built("C4xC2"), 2)
    assert dims == [8, 0] and t == 2


def test_upper_powers_golden(built):
    assert upper_lie_powers(built("D8"), 2)[1] == 3
    assert upper_lie_powers(built("Q8"), 2)[1] == 3
    assert upper_lie_powers(built("D8xD8"), 2)[1] == 4


def test_lower_powers(built):
    assert lower_lie_powers(built("C4xC2"), 2)[1] == 2
    assert lower_lie_powers(built("D8"), 2)[1] == 3


def test_p5_equality(built):
    h125 = built("H125")
    _, t_up = upper_lie_powers(h125, 5)
    _, t_low = lower_lie_powers(h125, 5)
    assert t_up == t_low == 6


def test_chains_decrease(catalog):
    for name in ("D8", "Q8", "D16", "C4xC2", "H27"):
        g = catalog.build(name)
        p = 3 if name == "H27" else 2
        for dims, _ in (upper_lie_powers(g, p), lower_lie_powers(g, p)):
            assert all(a > b for a, b in zip(dims, dims[1:])), name
            assert dims[-1] == 0


def test_weight_two_powers_coincide(built):
    """Both weight-two Lie powers equal the ideal generated by all
    basis-pair brackets, computed here directly."""
    for name, p in (("D8", 2), ("Q8", 2), ("H27", 3), ("C4xC2", 2)):
        g = built(name)
        alg = GroupAlgebra(g, p)
        pair_brackets = [alg.bracket(alg.delta(a), alg.delta(b))
                         for a in range(g.order) for b in range(a)]
        direct = ideal_generated(
            echelonize(pair_brackets or [], p, g.order), g)
        up, _ = upper_lie_powers(g, p)
        low, _ = lower_lie_powers(g, p)
        assert direct.dim == up[1] == low[1], name


def test_oracle_agrees_with_formula_index(catalog):
    """Oracle upper index equals the closed-form index on every
    Lie nilpotent catalog group of order <= 64 (p = 2, 3) and <= 128
    (p = 5)."""
    for entry in catalog.entries:
        g = catalog.build(entry.name)
        for p, bound in ((2, 64), (3, 64), (5, 128)):
            if g.order > bound or not is_lie_nilpotent(g, p):
                continue
            t_formula = upper_index_jennings(
                series_d_vector(series_recursive(g, p)))
            assert upper_lie_powers(g, p)[1] == t_formula, \
                f"{entry.name}@p{p}"


def test_no_convergence_on_s3(built):
    with pytest.raises(NoConvergenceError):
        upper_lie_powers(built("S3"), 2)
    with pytest.raises(NoConvergenceError):
        lower_lie_powers(built("S3"), 3, limit=50)


def test_oracle_cap(built):
    with pytest.raises(OracleCapExceededError):
        upper_lie_powers(built("C3wrC3"), 3, oracle_cap=64)
    with pytest.raises(OracleCapExceededError):
        GroupAlgebra(built("C5wrC5"), 5)


# --- dimension subgroups straight from the definition ------------------------------


def test_dimension_subgroup_direct(built):
    d8 = built("D8")
    assert dimension_subgroup_direct(d8, 2, 1).order == 8
    derived = lower_central_series(d8)[1]
    assert dimension_subgroup_direct(d8, 2, 2) == derived
    assert dimension_subgroup_direct(d8, 2, 3).is_trivial


def test_direct_series_matches_formula(catalog):
    """Definition-level dimension subgroups equal the formula series on
    every oracle-sized Lie nilpotent catalog pair."""
    for entry in catalog.entries:
        g = catalog.build(entry.name)
        if g.order > 128:
            continue
        for p in (2, 3, 5):
            if not is_lie_nilpotent(g, p):
                continue
            direct = dimension_series_direct(g, p)
            formula = series_recursive(g, p)
            assert tuple(direct) == formula.terms, f"{entry.name}@p{p}"


# --- Lie nilpotency test -------------------------------------------------------------


def test_is_lie_nilpotent(built):
    assert is_lie_nilpotent(built("D8"), 2)
    assert not is_lie_nilpotent(built("D8"), 3)
    assert not is_lie_nilpotent(built("S3"), 2)
    assert not is_lie_nilpotent(built("S3"), 3)
    assert is_lie_nilpotent(built("C3xC3"), 2)   # abelian at any prime
