"""Three independent detectors for the (almost) extremal upper index.

A Lie nilpotent KG with |G'| = p^n satisfies t <= p^n + 1.  The top
value and the next attainable one, p^n - p + 2, can each be recognised
structurally (class plus abelian types of the lower-central terms),
numerically from the jump-exponent profile, and directly from the
computed index.  The three detectors must agree; cross_validate reports
any disagreement instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .dimension import (
    DVector,
    d_vector,
    series_recursive,
    upper_index_jennings,
)
from .errors import NotLieNilpotentError, NoWitnessFoundError
from .groups import (
    AbelianType,
    FiniteGroup,
    abelian_invariants,
    is_abelian_subgroup,
    lower_central_series,
    nilpotency_class,
    trivial_subgroup,
)
from .oracle import (
    DEFAULT_ORACLE_CAP,
    is_lie_nilpotent,
    lower_lie_powers,
    upper_lie_powers,
)

STRUCTURAL_CASES = ("i", "ii", "iii", "iv")


def _gamma_type(g: FiniteGroup, i: int) -> AbelianType | None:
    """Abelian type of the i-th lower central term (1-based), or None
    when the term is nonabelian."""
    gamma = lower_central_series(g)
    term = gamma[i - 1] if i <= len(gamma) else trivial_subgroup(g)
    if not is_abelian_subgroup(term):
        return None
    return abelian_invariants(term)


def theorem1_structural_case(g: FiniteGroup, p: int) -> str | None:
    """Match the structural conditions that characterise an almost
    maximal upper index; the four cases are mutually exclusive."""
    if not is_lie_nilpotent(g, p):
        raise NotLieNilpotentError(
            f"KG is not Lie nilpotent for p = {p}")
    cl = nilpotency_class(g)
    g2 = _gamma_type(g, 2)
    g3 = _gamma_type(g, 3)
    if p == 2 and cl == 2 and g2 == AbelianType((2, 2)):
        return "i"
    if p == 2 and cl == 4 and g2 == AbelianType((4, 2)) \
            and g3 == AbelianType((2, 2)):
        return "ii"
    if p == 2 and cl == 4 and g2 == AbelianType((2, 2, 2)):
        return "iii"
    if p == 3 and cl == 3 and g2 == AbelianType((3, 3)):
        return "iv"
    return None


def _profile_positions(p: int, n: int) -> dict[int, int]:
    positions: dict[int, int] = {}
    for i in range(n - 1):
        k = p ** i + 1
        positions[k] = positions.get(k, 0) + 1
    k = p ** (n - 1)
    positions[k] = positions.get(k, 0) + 1
    return positions


def lemma2_profile(d: DVector) -> str | None:
    """Match the jump-exponent profiles equivalent to an almost maximal
    index; every entry outside the profile must vanish."""
    p, n = d.prime, d.n
    if p == 2 and n == 2 and d.entries == {2: 2}:
        return "i"
    if p == 2 and n > 2 and d.entries == _profile_positions(2, n):
        return "ii"
    if p == 3 and n == 2 and d.entries == {2: 1, 3: 1}:
        return "iii"
    if p == 3 and n > 2 and d.entries == _profile_positions(3, n):
        return "iv"
    return None


@dataclass
class Verdict:
    """Classification of (G, p) by its upper Lie nilpotency index."""

    status: str          # not_lie_nilpotent | abelian | maximal |
                         # almost_maximal | below
    case: str | None     # structural case when almost maximal
    t_upper: int | None
    n: int | None
    p: int
    evidence: dict = field(default_factory=dict)

    @property
    def tag(self) -> str:
        if self.status == "almost_maximal" and self.case:
            return f"almost_maximal.{self.case}"
        return self.status


def _bucket(t: int, n: int, p: int) -> str:
    """Status as a function of (t, n, p) alone."""
    if n == 0:
        return "abelian"
    if t == p ** n + 1:
        return "maximal"
    if t == p ** n - p + 2:
        return "almost_maximal"
    return "below"


def classify(g: FiniteGroup, p: int, *,
             oracle_cap: int = DEFAULT_ORACLE_CAP,
             run_oracle: bool | None = None) -> Verdict:
    """Bucket (G, p) by the computed upper index and attach evidence.

    The oracle indices are attached when the group fits under the
    oracle cap (or run_oracle forces/disables it); they never change
    the bucket.
    """
    if not is_lie_nilpotent(g, p):
        return Verdict(status="not_lie_nilpotent", case=None, t_upper=None,
                       n=None, p=p)
    d = d_vector(series_recursive(g, p))
    t = upper_index_jennings(d)
    status = _bucket(t, d.n, p)
    evidence: dict = {
        "class": nilpotency_class(g),
        "gamma2_type": getattr(_gamma_type(g, 2), "factors", None),
        "gamma3_type": getattr(_gamma_type(g, 3), "factors", None),
        "profile_case": lemma2_profile(d),
    }
    case = theorem1_structural_case(g, p)
    evidence["structural_case"] = case
    if run_oracle is None:
        run_oracle = g.order <= oracle_cap
    if run_oracle:
        _, t_up = upper_lie_powers(g, p, oracle_cap=max(oracle_cap, g.order))
        _, t_low = lower_lie_powers(g, p, oracle_cap=max(oracle_cap, g.order))
        evidence["oracle_t_upper"] = t_up
        evidence["oracle_t_lower"] = t_low
    return Verdict(status=status,
                   case=case if status == "almost_maximal" else None,
                   t_upper=t, n=d.n, p=p, evidence=evidence)


@dataclass
class ConsistencyReport:
    """Agreement record for the three almost-maximal detectors."""

    p: int
    n: int
    t_upper: int
    structural_case: str | None
    profile_case: str | None
    numeric_almost_maximal: bool
    consistent: bool
    detail: str


def cross_validate(g: FiniteGroup, p: int) -> ConsistencyReport:
    """Assert the three-way biconditional between the structural case,
    the jump profile, and the computed index; disagreement is reported,
    not raised."""
    if not is_lie_nilpotent(g, p):
        raise NotLieNilpotentError(f"KG is not Lie nilpotent for p = {p}")
    d = d_vector(series_recursive(g, p))
    t = upper_index_jennings(d)
    structural = theorem1_structural_case(g, p)
    profile = lemma2_profile(d)
    numeric = (d.n > 0) and t == p ** d.n - p + 2
    consistent = (structural is not None) == numeric \
        and (profile is not None) == numeric
    detail = "all three detectors agree" if consistent else (
        f"disagreement: structural={structural!r} profile={profile!r} "
        f"numeric={numeric} (t={t}, n={d.n}, p={p})")
    return ConsistencyReport(p=p, n=d.n, t_upper=t,
                             structural_case=structural,
                             profile_case=profile,
                             numeric_almost_maximal=numeric,
                             consistent=consistent, detail=detail)


@dataclass
class SharpnessWitness:
    name: str
    order: int
    n: int
    t_upper: int
    small_p_bound: int   # p^(n-1) + 2p - 1, the bound valid for p >= 5


@dataclass
class SharpnessReport:
    p: int
    witnesses: list[SharpnessWitness]

    @property
    def bound_fails_for_small_p(self) -> bool:
        """True when some witness meets or exceeds the p >= 5 bound,
        so that bound cannot hold at this characteristic."""
        return any(w.t_upper >= w.small_p_bound for w in self.witnesses)


def corollary_sharpness(p: int,
                        witnesses: Sequence[tuple[str, FiniteGroup]]
                        ) -> SharpnessReport:
    """Exhibit catalog groups attaining the second-highest index value
    (2^n for p = 2, 3^n - 1 for p = 3), showing the bound for p >= 5
    does not extend down to p = 2, 3."""
    if p not in (2, 3):
        raise ValueError("sharpness targets exist only for p = 2 and p = 3")
    found: list[SharpnessWitness] = []
    for name, g in witnesses:
        if not is_lie_nilpotent(g, p):
            continue
        d = d_vector(series_recursive(g, p))
        if d.n == 0:
            continue
        t = upper_index_jennings(d)
        if t == p ** d.n - p + 2:
            found.append(SharpnessWitness(
                name=name, order=g.order, n=d.n, t_upper=t,
                small_p_bound=p ** (d.n - 1) + 2 * p - 1))
    if not found:
        raise NoWitnessFoundError(
            f"catalog holds no almost-maximal witness for p = {p}")
    return SharpnessReport(p=p, witnesses=found)
