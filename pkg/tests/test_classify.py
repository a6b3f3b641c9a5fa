"""Structural, profile-based, and numeric extremal-index detection."""

import pytest

from lienilp.classify import (
    _bucket,
    classify,
    corollary_sharpness,
    cross_validate,
    lemma2_profile,
    theorem1_structural_case,
)
from lienilp.dimension import DVector, d_vector, series_recursive, \
    upper_index_jennings
from lienilp.errors import NoWitnessFoundError, NotLieNilpotentError
from lienilp.groups import abelian_invariants, lower_central_series
from lienilp.oracle import is_lie_nilpotent


def test_structural_cases(built):
    assert theorem1_structural_case(built("D8xD8"), 2) == "i"
    assert theorem1_structural_case(built("C2wrC4"), 2) == "iii"
    assert theorem1_structural_case(built("C3wrC3"), 3) == "iv"
    assert theorem1_structural_case(built("D8"), 2) is None
    assert theorem1_structural_case(built("C4xC2"), 2) is None
    with pytest.raises(NotLieNilpotentError):
        theorem1_structural_case(built("S3"), 2)


def test_case_iv_witness_has_cyclic_third_term(built):
    w = built("C3wrC3")
    gamma3 = lower_central_series(w)[2]
    assert abelian_invariants(gamma3).factors == (3,)


def test_structural_cases_mutually_exclusive(catalog):
    """At most one case predicate fires for any (group, prime)."""
    for entry in catalog.entries:
        g = catalog.build(entry.name)
        for p in (2, 3):
            if not is_lie_nilpotent(g, p):
                continue
            from lienilp.classify import _gamma_type, AbelianType
            from lienilp.groups import nilpotency_class
            cl = nilpotency_class(g)
            g2, g3 = _gamma_type(g, 2), _gamma_type(g, 3)
            hits = [
                p == 2 and cl == 2 and g2 == AbelianType((2, 2)),
                p == 2 and cl == 4 and g2 == AbelianType((4, 2))
                and g3 == AbelianType((2, 2)),
                p == 2 and cl == 4 and g2 == AbelianType((2, 2, 2)),
                p == 3 and cl == 3 and g2 == AbelianType((3, 3)),
            ]
            assert sum(hits) <= 1, entry.name


def test_lemma2_profiles():
    assert lemma2_profile(DVector(2, {2: 2}, n=2, l=1)) == "i"
    assert lemma2_profile(DVector(2, {2: 1, 3: 1, 4: 1}, n=3, l=1)) == "ii"
    assert lemma2_profile(DVector(3, {2: 1, 3: 1}, n=2, l=1)) == "iii"
    assert lemma2_profile(DVector(3, {2: 1, 4: 1, 9: 1}, n=3, l=1)) == "iv"
    # maximal-profile counterexample: t = 2 + 1 + 2 = 5 = 2^2 + 1
    assert lemma2_profile(DVector(2, {2: 1, 3: 1}, n=2, l=2)) is None
    assert lemma2_profile(DVector(5, {2: 1}, n=1, l=1)) is None
    assert lemma2_profile(DVector(2, {}, n=0, l=0)) is None


def test_profile_positions_count():
    """Profile (ii)/(iv) requires exactly n positive entries."""
    from lienilp.classify import _profile_positions
    for p in (2, 3):
        for n in (3, 4, 5, 6):
            pos = _profile_positions(p, n)
            assert sum(pos.values()) == n
            assert pos[p ** (n - 1)] == 1


def test_classify_verdicts(built):
    v = classify(built("D8"), 2)
    assert v.status == "maximal" and v.t_upper == 3 and v.tag == "maximal"
    v = classify(built("D8xD8"), 2)
    assert v.tag == "almost_maximal.i" and v.t_upper == 4
    v = classify(built("C2wrC4"), 2)
    assert v.tag == "almost_maximal.iii" and v.t_upper == 8
    v = classify(built("C3wrC3"), 3, run_oracle=False)
    assert v.tag == "almost_maximal.iv" and v.t_upper == 8
    v = classify(built("C4xC2"), 2)
    assert v.status == "abelian" and v.t_upper == 2 and v.n == 0
    v = classify(built("S3"), 5)
    assert v.status == "not_lie_nilpotent" and v.t_upper is None


def test_classify_attaches_oracle_indices(built):
    v = classify(built("D8"), 2)
    assert v.evidence["oracle_t_upper"] == 3
    assert v.evidence["oracle_t_lower"] == 3
    bare = classify(built("D8"), 2, run_oracle=False)
    assert "oracle_t_upper" not in bare.evidence
    assert bare.status == v.status      # evidence never moves the bucket


def test_bucket_depends_only_on_numbers():
    assert _bucket(2, 0, 2) == "abelian"
    assert _bucket(3, 1, 2) == "maximal"
    assert _bucket(4, 2, 2) == "almost_maximal"
    assert _bucket(3, 2, 2) == "below"
    assert _bucket(8, 2, 3) == "almost_maximal"
    assert _bucket(10, 2, 3) == "maximal"
    assert _bucket(42, 4, 5) == "below"


def test_cross_validate(built):
    rep = cross_validate(built("D8"), 2)
    assert rep.consistent
    assert rep.structural_case is None and rep.profile_case is None
    assert not rep.numeric_almost_maximal
    for name, p in (("C2wrC4", 2), ("C3wrC3", 3), ("D8xD8", 2)):
        rep = cross_validate(built(name), p)
        assert rep.consistent and rep.numeric_almost_maximal
        assert rep.structural_case is not None
        assert rep.profile_case is not None
    with pytest.raises(NotLieNilpotentError):
        cross_validate(built("S3"), 2)


def test_maximal_iff_cyclic_derived(catalog):
    """Nontrivial cyclic commutator subgroup forces the maximal verdict."""
    from lienilp.groups import is_abelian_subgroup
    for entry in catalog.entries:
        g = catalog.build(entry.name)
        for p in (2, 3, 5):
            if not is_lie_nilpotent(g, p) or g.is_abelian():
                continue
            derived = lower_central_series(g)[1]
            if not is_abelian_subgroup(derived):
                continue
            v = classify(g, p, run_oracle=False)
            if abelian_invariants(derived).is_cyclic:
                assert v.status == "maximal", entry.name


def test_p5_bound_for_noncyclic_derived(catalog):
    """Above characteristic 3 the index stays under p^(n-1) + 2p - 1
    whenever the commutator subgroup is noncyclic."""
    checked = 0
    for entry in catalog.entries:
        g = catalog.build(entry.name)
        if not is_lie_nilpotent(g, 5) or g.is_abelian():
            continue
        derived = lower_central_series(g)[1]
        if abelian_invariants(derived).is_cyclic:
            continue
        d = d_vector(series_recursive(g, 5))
        t = upper_index_jennings(d)
        assert t <= 5 ** (d.n - 1) + 2 * 5 - 1, entry.name
        checked += 1
    assert checked >= 1      # C5wrC5 keeps this non-vacuous


def test_corollary_sharpness(catalog):
    witnesses = [(e.name, catalog.build(e.name)) for e in catalog.entries]
    rep2 = corollary_sharpness(2, witnesses)
    names2 = {w.name: w for w in rep2.witnesses}
    assert "C2wrC4" in names2 and names2["C2wrC4"].t_upper == 8 == 2 ** 3
    assert rep2.bound_fails_for_small_p
    rep3 = corollary_sharpness(3, witnesses)
    names3 = {w.name: w for w in rep3.witnesses}
    assert "C3wrC3" in names3
    w = names3["C3wrC3"]
    assert w.t_upper == 8 == 3 ** 2 - 1
    assert w.small_p_bound == 8       # met with equality, so no stronger gap
    with pytest.raises(NoWitnessFoundError):
        corollary_sharpness(2, [("C4", catalog.build("C4"))])
    with pytest.raises(ValueError):
        corollary_sharpness(5, witnesses)
