"""Monogamy and polygamy relations of LCREN/LCRENoA and the tangle.

Relations are evaluated on a ``MeasureProfile``: the measure across ``focus | rest`` together with
the measure on every reduced pair ``(focus, B_j)``. Profiles come from a state
(``measure_profile``) or from published numbers (``quoted_profile``); evaluation itself is pure
arithmetic.

Lower bounds on the total (monogamy, CKW and the positive-weight half of the negative-alpha
relations) report ``margin = lhs - rhs``; upper bounds report ``margin = rhs - lhs``.
"""

import logging
import math
from collections import defaultdict
from collections.abc import Callable, Iterable, Sequence
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from entanglion.config import (
    LCREN_SCALE,
    LCRENOA_SCALE,
    NONZERO_MEASURE_TOL,
    VIOLATION_TOL,
)
from entanglion.errors import (
    AlphaRangeError,
    BipartitionError,
    DimensionError,
    EntanglionError,
    SchemeError,
)
from entanglion.measures import Bipartition, lcren, lcrenoa, tangle
from entanglion.models.measures import MeasureMethod, MeasureName, MeasureValue
from entanglion.models.reports import (
    ConditionVerdict,
    InequalityReport,
    RhsTerm,
    TheoremId,
    TightnessVerdict,
    Verdict,
)
from entanglion.roof import RoofConfig
from entanglion.states import QuantumState

logger = logging.getLogger("entanglion.inequalities")

MONOGAMY_THEOREMS = (TheoremId.BASELINE_MONO, TheoremId.THM1, TheoremId.THM2, TheoremId.THM3)
POLYGAMY_THEOREMS = (TheoremId.BASELINE_POLY, TheoremId.THM5, TheoremId.THM6, TheoremId.THM7)
NEGATIVE_ALPHA_THEOREMS = (TheoremId.THM4, TheoremId.THM8)
HYBRID_THEOREMS = (TheoremId.THM3, TheoremId.THM7)

# Lower bound on the LCRENoA total for alpha < 0. Since the pairwise values never exceed the
# total, this fails whenever the pairwise values differ from the total.
KNOWN_FAILING_THEOREMS = (TheoremId.THM8,)


def measure_for(theorem: TheoremId) -> MeasureName:
    """Measure a relation is stated for."""
    if theorem in MONOGAMY_THEOREMS or theorem == TheoremId.THM4:
        return MeasureName.LCREN
    if theorem in POLYGAMY_THEOREMS or theorem == TheoremId.THM8:
        return MeasureName.LCRENOA
    return MeasureName.TANGLE


_ALPHA_EDGE_TOL = 1e-12
_MIN_PARTIES = 3


class Scheme(StrEnum):
    """How the weight exponent of the j-th (sorted) term is chosen."""

    HAMMING = "hamming"
    GEOMETRIC = "geometric"
    HYBRID = "hybrid"


class BinaryVector(BaseModel):
    """Binary expansion of ``source_index``, least significant bit first."""

    model_config = ConfigDict(frozen=True)

    source_index: int = Field(..., ge=0)
    bits: tuple[int, ...]

    @model_validator(mode="after")
    def validate_bits(self) -> "BinaryVector":
        """Bits are 0/1 and spell out ``source_index``."""
        if any(b not in {0, 1} for b in self.bits):
            msg = f"Bits must be 0 or 1, got {self.bits}"
            raise ValueError(msg)
        if sum(b << i for i, b in enumerate(self.bits)) != self.source_index:
            msg = f"Bits {self.bits} do not encode {self.source_index}"
            raise ValueError(msg)
        return self

    @classmethod
    def from_index(cls, j: int, length: int | None = None) -> "BinaryVector":
        """Expand ``j`` into at least ``length`` bits."""
        if j < 0:
            msg = f"Binary vectors encode nonnegative integers, got {j}"
            raise EntanglionError(msg)
        width = max(length or 0, j.bit_length())
        return cls(source_index=j, bits=tuple((j >> i) & 1 for i in range(width)))

    @property
    def hamming_weight(self) -> int:
        """Number of ones."""
        return sum(self.bits)


def hamming_weight(j: int) -> int:
    """Number of ones in the binary expansion of ``j``."""
    if j < 0:
        msg = f"Hamming weight is defined for nonnegative integers, got {j}"
        raise EntanglionError(msg)
    return j.bit_count()


def lemma1_check(x: float, alpha: float) -> bool:
    """(1+x)^a >= 1 + a x^a for a >= 1, and <= for 0 <= a <= 1 (x in [0, 1])."""
    if not 0.0 <= x <= 1.0:
        msg = f"x must lie in [0, 1], got {x}"
        raise EntanglionError(msg)
    if alpha < 0:
        msg = f"alpha must be nonnegative, got {alpha}"
        raise AlphaRangeError(msg)
    lhs = (1.0 + x) ** alpha
    rhs = 1.0 + alpha * x**alpha
    tol = 1e-12 * max(1.0, abs(lhs), abs(rhs))
    if alpha >= 1.0:
        return lhs >= rhs - tol
    return lhs <= rhs + tol


class MeasureProfile(BaseModel):
    """Measure across ``focus | rest`` and on every pair ``(focus, B_j)``.

    ``tails[i]`` is the measure across ``focus | B_i ... B_{N-1}`` (label order), needed only by
    the split-exponent relations.
    """

    model_config = ConfigDict(frozen=True)

    measure: MeasureName
    focus: int = Field(..., ge=0)
    others: tuple[int, ...]
    total: MeasureValue
    pairwise: tuple[MeasureValue, ...]
    tails: tuple[MeasureValue, ...] | None = None

    @model_validator(mode="after")
    def validate_lengths(self) -> "MeasureProfile":
        """One pairwise value (and tail) per other party."""
        if not self.others or len(self.pairwise) != len(self.others):
            msg = "A profile needs one pairwise value per other party"
            raise ValueError(msg)
        if self.tails is not None and len(self.tails) != len(self.others):
            msg = "A profile needs one tail value per other party"
            raise ValueError(msg)
        return self

    @property
    def size(self) -> int:
        """Number N of other parties."""
        return len(self.others)

    @property
    def pairwise_values(self) -> list[float]:
        """Pairwise values in label order."""
        return [v.value for v in self.pairwise]

    @property
    def is_quoted(self) -> bool:
        """True when the values were supplied rather than computed."""
        return self.total.method == MeasureMethod.QUOTED


_PROFILE_FUNCTIONS: dict[
    MeasureName, Callable[[QuantumState, Bipartition, RoofConfig | None], MeasureValue]
] = {
    MeasureName.LCREN: lcren,
    MeasureName.LCRENOA: lcrenoa,
    MeasureName.TANGLE: tangle,
}


def measure_profile(
    state: QuantumState,
    focus: int,
    measure: MeasureName,
    *,
    include_tails: bool = False,
    config: RoofConfig | None = None,
) -> MeasureProfile:
    """Evaluate ``measure`` across ``focus | rest`` and on each reduced pair."""
    size = state.shape.size
    if size < _MIN_PARTIES:
        msg = f"Profiles need at least {_MIN_PARTIES} parties, got {size}"
        raise DimensionError(msg)
    if not 0 <= focus < size:
        msg = f"Focus {focus} out of range for a {size}-party state"
        raise BipartitionError(msg)
    try:
        function = _PROFILE_FUNCTIONS[measure]
    except KeyError as err:
        msg = f"Profiles support {[m.value for m in _PROFILE_FUNCTIONS]}, got {measure}"
        raise EntanglionError(msg) from err

    others = tuple(i for i in range(size) if i != focus)
    total = function(state, Bipartition.split(focus, others), config)
    pairwise = tuple(function(state, Bipartition.split(focus, [b]), config) for b in others)
    tails = None
    if include_tails:
        middle = [
            function(state, Bipartition.split(focus, others[i:]), config)
            for i in range(1, len(others) - 1)
        ]
        tails = (total, *middle, pairwise[-1])
    logger.debug("Profile %s focus=%d total=%.12g", measure, focus, total.value)
    return MeasureProfile(
        measure=measure,
        focus=focus,
        others=others,
        total=total,
        pairwise=pairwise,
        tails=tails,
    )


def quoted_profile(  # noqa: PLR0913
    total: float,
    pairwise: Sequence[float],
    measure: MeasureName = MeasureName.LCREN,
    *,
    focus: int = 0,
    tails: Sequence[float] | None = None,
    error_bound: float = 0.0,
) -> MeasureProfile:
    """Profile built from published (rounded) values."""

    def quoted(value: float) -> MeasureValue:
        return MeasureValue(
            name=measure,
            value=value,
            method=MeasureMethod.QUOTED,
            error_bound=error_bound,
        )

    others = tuple(i for i in range(len(pairwise) + 1) if i != focus)
    return MeasureProfile(
        measure=measure,
        focus=focus,
        others=others,
        total=quoted(total),
        pairwise=tuple(quoted(v) for v in pairwise),
        tails=tuple(quoted(v) for v in tails) if tails is not None else None,
    )


# --- Weights ---
def _power(value: float, alpha: float) -> float:
    if value == 0.0:
        if alpha > 0:
            return 0.0
        return 1.0 if alpha == 0 else math.inf
    return value**alpha


def _power_spread(value: float, error: float, alpha: float) -> float:
    """Largest change of ``value**alpha`` within ``value +- error``."""
    if error == 0.0:
        return 0.0
    mid = _power(value, alpha)
    spread = max(
        abs(_power(value + error, alpha) - mid),
        abs(mid - _power(max(value - error, 0.0), alpha)),
    )
    return spread if math.isfinite(spread) else math.inf


def _check_scale_alpha(scale: float, alpha: float) -> None:
    if math.isclose(scale, LCREN_SCALE):
        if alpha < LCREN_SCALE - _ALPHA_EDGE_TOL:
            msg = f"alpha must be >= 4 ln 2 for the LCREN scale, got {alpha}"
            raise AlphaRangeError(msg)
    elif math.isclose(scale, LCRENOA_SCALE):
        if not -_ALPHA_EDGE_TOL <= alpha <= LCRENOA_SCALE + _ALPHA_EDGE_TOL:
            msg = f"alpha must lie in [0, 2] for the LCRENoA scale, got {alpha}"
            raise AlphaRangeError(msg)
    else:
        msg = f"scale must be 4 ln 2 or 2, got {scale}"
        raise SchemeError(msg)


def weight_exponents(n: int, scheme: Scheme, split: int | None = None) -> list[int]:
    """Exponent of ``alpha / c`` for each of the ``n`` terms."""
    match scheme:
        case Scheme.HAMMING:
            return [hamming_weight(j) for j in range(n)]
        case Scheme.GEOMETRIC:
            return list(range(n))
        case Scheme.HYBRID:
            if n < _MIN_PARTIES or split is None or not 0 <= split <= n - _MIN_PARTIES:
                msg = f"hybrid weights need N >= 3 and 0 <= t <= N - 3, got N={n}, t={split}"
                raise SchemeError(msg)
            return [j if j <= split else (split + 1 if j == n - 1 else split + 2) for j in range(n)]
    msg = f"Unknown scheme {scheme}"
    raise SchemeError(msg)


def weighted_bound(  # noqa: PLR0913
    values: Sequence[float],
    alpha: float,
    scheme: Scheme,
    scale: float,
    split: int | None = None,
    labels: Sequence[int] | None = None,
) -> list[RhsTerm]:
    """Terms ``(alpha/c)^w(j) * E_j^alpha`` for values given in weight order."""
    _check_scale_alpha(scale, alpha)
    exponents = weight_exponents(len(values), scheme, split)
    labels = list(labels) if labels is not None else list(range(len(values)))
    ratio = alpha / scale
    terms = []
    for label, value, exponent in zip(labels, values, exponents, strict=True):
        weight = ratio**exponent
        powered = _power(value, alpha)
        terms.append(
            RhsTerm(
                index=label, exponent=exponent, weight=weight, value=powered, term=weight * powered
            )
        )
    return terms


def _uniform_terms(
    values: Sequence[float],
    alpha: float,
    labels: Sequence[int],
    weight: float = 1.0,
) -> list[RhsTerm]:
    return [
        RhsTerm(
            index=label,
            exponent=0,
            weight=weight,
            value=_power(value, alpha),
            term=weight * _power(value, alpha),
        )
        for label, value in zip(labels, values, strict=True)
    ]


# --- Side conditions ---
def _tail_sum_conditions(values: Sequence[float], scale: float) -> list[ConditionVerdict]:
    """E_i^c >= sum_{j > i} E_j^c for every i < N - 1."""
    powered = [_power(v, scale) for v in values]
    verdicts = []
    for i in range(len(values) - 1):
        rest = math.fsum(powered[i + 1 :])
        verdicts.append(
            ConditionVerdict(
                condition=f"dominates_tail_sum[{i}]",
                satisfied=powered[i] >= rest - _ALPHA_EDGE_TOL,
                detail=f"{powered[i]:.12g} vs {rest:.12g}",
            )
        )
    return verdicts


def _hybrid_conditions(
    values: Sequence[float],
    tails: Sequence[float],
    split: int,
    scale: float,
) -> list[ConditionVerdict]:
    """E(B_i)^c >= E(B_{i+1..})^c for i <= t and E(B_j)^c <= E(B_{j+1..})^c for t < j <= N - 2."""
    n = len(values)
    verdicts = []
    for i in range(n - 1):
        own = _power(values[i], scale)
        tail = _power(tails[i + 1], scale)
        if i <= split:
            verdicts.append(
                ConditionVerdict(
                    condition=f"dominates_tail[{i}]",
                    satisfied=own >= tail - _ALPHA_EDGE_TOL,
                    detail=f"{own:.12g} vs {tail:.12g}",
                )
            )
        else:
            verdicts.append(
                ConditionVerdict(
                    condition=f"dominated_by_tail[{i}]",
                    satisfied=own <= tail + _ALPHA_EDGE_TOL,
                    detail=f"{own:.12g} vs {tail:.12g}",
                )
            )
    return verdicts


# --- Report assembly ---
def _uncertainty(
    total: MeasureValue,
    pairs: Sequence[tuple[int, MeasureValue]],
    terms: Sequence[RhsTerm],
    alpha: float,
) -> float:
    by_label = {t.index: t.weight for t in terms}
    spread = _power_spread(total.value, total.error_bound, alpha)
    for label, value in pairs:
        if label in by_label:
            spread += by_label[label] * _power_spread(value.value, value.error_bound, alpha)
    return spread


def _profile_flags(profile: MeasureProfile, order: Sequence[int]) -> list[str]:
    flags = []
    if list(order) != sorted(order):
        flags.append("relabelled_descending")
    if profile.is_quoted:
        flags.append("quoted_profile")
    values = [profile.total, *profile.pairwise, *(profile.tails or ())]
    if not all(v.converged for v in values):
        flags.append("unconverged_roof")
    return flags


def _build_report(  # noqa: PLR0913
    theorem: TheoremId,
    profile_measure: MeasureName,
    alpha: float,
    lhs: float,
    terms: list[RhsTerm],
    *,
    lower_bound: bool,
    conditions: list[ConditionVerdict],
    uncertainty: float,
    flags: list[str],
    split: int | None = None,
) -> InequalityReport:
    rhs = math.fsum(t.term for t in terms)
    margin: float | None = lhs - rhs if lower_bound else rhs - lhs
    if margin is not None and not math.isfinite(margin):
        margin = None

    holds: bool | None
    if not all(c.satisfied for c in conditions):
        verdict, holds = Verdict.CONDITION_FAILED, None
    elif margin is None:
        msg = f"{theorem} produced a non-finite margin with its conditions met"
        raise EntanglionError(msg)
    elif margin >= -VIOLATION_TOL:
        verdict, holds = Verdict.HOLDS, True
    elif abs(margin) > uncertainty:
        verdict, holds = Verdict.VIOLATED, False
    else:
        verdict, holds = Verdict.INCONCLUSIVE, False

    if verdict == Verdict.VIOLATED:
        logger.info("%s violated at alpha=%g (margin %.3e)", theorem, alpha, margin)
    return InequalityReport(
        theorem_id=theorem,
        measure=profile_measure,
        alpha=alpha,
        lhs=lhs,
        rhs_terms=terms,
        rhs=rhs,
        margin=margin,
        holds=holds,
        verdict=verdict,
        uncertainty=uncertainty,
        condition_verdicts=conditions,
        split=split,
        effective_terms=len(terms),
        flags=flags,
    )


def _require_measure(profile: MeasureProfile, measure: MeasureName, theorem: TheoremId) -> None:
    if profile.measure != measure:
        msg = f"{theorem} is stated for {measure}, got a {profile.measure} profile"
        raise SchemeError(msg)


def _evaluate_weighted(  # noqa: PLR0913
    profile: MeasureProfile,
    alpha: float,
    theorem: TheoremId,
    split: int | None,
    *,
    scale: float,
    lower_bound: bool,
    baseline: TheoremId,
    hamming: TheoremId,
    geometric: TheoremId,
) -> InequalityReport:
    """Shared body of the positive-alpha monogamy and polygamy families."""
    _check_scale_alpha(scale, alpha)
    values = profile.pairwise_values
    labels = list(profile.others)
    lhs = _power(profile.total.value, alpha)

    if theorem in HYBRID_THEOREMS:
        order = list(range(profile.size))
    else:
        order = sorted(range(profile.size), key=lambda i: -values[i])
    ordered = [values[i] for i in order]
    ordered_labels = [labels[i] for i in order]

    conditions: list[ConditionVerdict] = []
    used_split = None
    if theorem == baseline:
        terms = _uniform_terms(ordered, alpha, ordered_labels)
    elif theorem == hamming:
        terms = weighted_bound(ordered, alpha, Scheme.HAMMING, scale, labels=ordered_labels)
    elif theorem == geometric:
        terms = weighted_bound(ordered, alpha, Scheme.GEOMETRIC, scale, labels=ordered_labels)
        conditions = _tail_sum_conditions(ordered, scale)
    else:
        if profile.tails is None:
            msg = f"{theorem} needs tail measures; build the profile with include_tails=True"
            raise EntanglionError(msg)
        if split is None:
            msg = f"{theorem} needs a split t"
            raise SchemeError(msg)
        terms = weighted_bound(ordered, alpha, Scheme.HYBRID, scale, split, labels=ordered_labels)
        conditions = _hybrid_conditions(ordered, [t.value for t in profile.tails], split, scale)
        used_split = split

    flags = _profile_flags(profile, order)
    return _build_report(
        theorem,
        profile.measure,
        alpha,
        lhs,
        terms,
        lower_bound=lower_bound,
        conditions=conditions,
        uncertainty=_uncertainty(
            profile.total, list(zip(labels, profile.pairwise, strict=True)), terms, alpha
        ),
        flags=flags,
        split=used_split,
    )


def evaluate_monogamy(
    profile: MeasureProfile,
    alpha: float,
    theorem: TheoremId = TheoremId.THM1,
    split: int | None = None,
) -> InequalityReport:
    """Lower bound on ``E(A|rest)^alpha`` for ``alpha >= 4 ln 2`` (LCREN)."""
    if theorem not in MONOGAMY_THEOREMS:
        msg = f"{theorem} is not a monogamy relation"
        raise SchemeError(msg)
    _require_measure(profile, MeasureName.LCREN, theorem)
    return _evaluate_weighted(
        profile,
        alpha,
        theorem,
        split,
        scale=LCREN_SCALE,
        lower_bound=True,
        baseline=TheoremId.BASELINE_MONO,
        hamming=TheoremId.THM1,
        geometric=TheoremId.THM2,
    )


def evaluate_polygamy(
    profile: MeasureProfile,
    alpha: float,
    theorem: TheoremId = TheoremId.THM5,
    split: int | None = None,
) -> InequalityReport:
    """Upper bound on ``E_a(A|rest)^alpha`` for ``0 <= alpha <= 2`` (LCRENoA)."""
    if theorem not in POLYGAMY_THEOREMS:
        msg = f"{theorem} is not a polygamy relation"
        raise SchemeError(msg)
    _require_measure(profile, MeasureName.LCRENOA, theorem)
    report = _evaluate_weighted(
        profile,
        alpha,
        theorem,
        split,
        scale=LCRENOA_SCALE,
        lower_bound=False,
        baseline=TheoremId.BASELINE_POLY,
        hamming=TheoremId.THM5,
        geometric=TheoremId.THM6,
    )
    if math.isclose(alpha, 1.0):
        report = report.model_copy(update={"flags": [*report.flags, "alpha_equals_one"]})
    return report


def evaluate_negative_alpha(
    profile: MeasureProfile,
    alpha: float,
    theorem: TheoremId = TheoremId.THM4,
) -> InequalityReport:
    """Average bound ``(1/N') sum E_j^alpha`` for ``alpha < 0`` over the N' nonzero pairs."""
    if theorem not in NEGATIVE_ALPHA_THEOREMS:
        msg = f"{theorem} is not a negative-alpha relation"
        raise SchemeError(msg)
    if alpha >= 0:
        msg = f"alpha must be negative for {theorem}, got {alpha}"
        raise AlphaRangeError(msg)
    measure = MeasureName.LCREN if theorem == TheoremId.THM4 else MeasureName.LCRENOA
    _require_measure(profile, measure, theorem)

    labels = list(profile.others)
    values = profile.pairwise_values
    kept = [i for i, v in enumerate(values) if v > NONZERO_MEASURE_TOL]
    total = profile.total.value
    conditions = [
        ConditionVerdict(
            condition="nonzero_terms",
            satisfied=bool(kept),
            detail=f"{len(kept)} of {len(values)} pairwise terms nonzero",
        ),
        ConditionVerdict(
            condition="nonzero_total",
            satisfied=total > NONZERO_MEASURE_TOL,
            detail=f"{total:.12g}",
        ),
    ]
    weight = 1.0 / len(kept) if kept else 0.0
    terms = _uniform_terms([values[i] for i in kept], alpha, [labels[i] for i in kept], weight)
    flags = _profile_flags(profile, range(profile.size))
    if len(kept) < len(values):
        flags.append("reduced_terms")
    kept_pairs = [(labels[i], profile.pairwise[i]) for i in kept]
    return _build_report(
        theorem,
        profile.measure,
        alpha,
        _power(total, alpha),
        terms,
        lower_bound=theorem == TheoremId.THM8,
        conditions=conditions,
        uncertainty=_uncertainty(profile.total, kept_pairs, terms, alpha),
        flags=flags,
    )


def check_monogamy(  # noqa: PLR0913
    state: QuantumState,
    focus: int,
    alpha: float,
    theorem: TheoremId = TheoremId.THM1,
    split: int | None = None,
    config: RoofConfig | None = None,
) -> InequalityReport:
    """Compute the LCREN profile of ``state`` and evaluate a monogamy relation."""
    profile = measure_profile(
        state, focus, MeasureName.LCREN, include_tails=theorem == TheoremId.THM3, config=config
    )
    return evaluate_monogamy(profile, alpha, theorem, split)


def check_polygamy(  # noqa: PLR0913
    state: QuantumState,
    focus: int,
    alpha: float,
    theorem: TheoremId = TheoremId.THM5,
    split: int | None = None,
    config: RoofConfig | None = None,
) -> InequalityReport:
    """Compute the LCRENoA profile of ``state`` and evaluate a polygamy relation."""
    profile = measure_profile(
        state, focus, MeasureName.LCRENOA, include_tails=theorem == TheoremId.THM7, config=config
    )
    return evaluate_polygamy(profile, alpha, theorem, split)


def check_negative_alpha(
    state: QuantumState,
    focus: int,
    alpha: float,
    theorem: TheoremId = TheoremId.THM4,
    config: RoofConfig | None = None,
) -> InequalityReport:
    """Compute the matching profile of ``state`` and evaluate a negative-alpha relation."""
    measure = MeasureName.LCREN if theorem == TheoremId.THM4 else MeasureName.LCRENOA
    profile = measure_profile(state, focus, measure, config=config)
    return evaluate_negative_alpha(profile, alpha, theorem)


def scan_hybrid_splits(
    profile: MeasureProfile,
    alpha: float,
    theorem: TheoremId = TheoremId.THM3,
) -> list[InequalityReport]:
    """Evaluate a split-exponent relation for every admissible t = 0 .. N - 3."""
    if theorem not in HYBRID_THEOREMS:
        msg = f"{theorem} has no split parameter"
        raise SchemeError(msg)
    if profile.size < _MIN_PARTIES:
        msg = f"{theorem} needs at least 3 other parties, got {profile.size}"
        raise SchemeError(msg)
    evaluate = evaluate_monogamy if theorem == TheoremId.THM3 else evaluate_polygamy
    reports = [evaluate(profile, alpha, theorem, t) for t in range(profile.size - 2)]
    admissible = [r.split for r in reports if r.conditions_met]
    logger.debug("%s admissible splits at alpha=%g: %s", theorem, alpha, admissible)
    return reports


def evaluate_theorem(
    profile: MeasureProfile,
    alpha: float,
    theorem: TheoremId,
    split: int | None = None,
) -> list[InequalityReport]:
    """Evaluate any profile-based relation; split relations without a split scan every t."""
    if theorem in HYBRID_THEOREMS and split is None:
        return scan_hybrid_splits(profile, alpha, theorem)
    if theorem in MONOGAMY_THEOREMS:
        return [evaluate_monogamy(profile, alpha, theorem, split)]
    if theorem in POLYGAMY_THEOREMS:
        return [evaluate_polygamy(profile, alpha, theorem, split)]
    if theorem in NEGATIVE_ALPHA_THEOREMS:
        return [evaluate_negative_alpha(profile, alpha, theorem)]
    msg = f"{theorem} is not evaluated on a profile"
    raise SchemeError(msg)


_TIGHTNESS_PAIRS = (
    (TheoremId.THM1, TheoremId.BASELINE_MONO, True),
    (TheoremId.THM2, TheoremId.THM1, True),
    (TheoremId.THM5, TheoremId.BASELINE_POLY, False),
    (TheoremId.THM6, TheoremId.THM5, False),
)


def compare_tightness(reports: Iterable[InequalityReport]) -> list[TightnessVerdict]:
    """Check that refined bounds are at least as tight as the ones they refine, per alpha."""
    by_alpha: dict[float, dict[TheoremId, InequalityReport]] = defaultdict(dict)
    for report in reports:
        by_alpha[report.alpha][report.theorem_id] = report

    verdicts = []
    for alpha in sorted(by_alpha):
        group = by_alpha[alpha]
        for tighter, looser, lower_bound in _TIGHTNESS_PAIRS:
            if tighter not in group or looser not in group:
                continue
            a, b = group[tighter], group[looser]
            if a.verdict == Verdict.CONDITION_FAILED or b.verdict == Verdict.CONDITION_FAILED:
                verdicts.append(
                    TightnessVerdict(
                        alpha=alpha, tighter=tighter, looser=looser, gap=None, holds=None
                    )
                )
                continue
            gap = a.rhs - b.rhs if lower_bound else b.rhs - a.rhs
            tol = 1e-12 * (1.0 + abs(a.rhs) + abs(b.rhs))
            verdicts.append(
                TightnessVerdict(
                    alpha=alpha, tighter=tighter, looser=looser, gap=gap, holds=gap >= -tol
                )
            )
    return verdicts


def ckw_check(
    state: QuantumState,
    focus: int = 0,
    config: RoofConfig | None = None,
) -> InequalityReport:
    """Tangle monogamy ``tau(A|BC) >= tau(AB) + tau(AC)`` on a pure three-party state."""
    if not state.is_pure or state.shape.size != _MIN_PARTIES:
        msg = "The tangle relation is evaluated on pure three-party states"
        raise DimensionError(msg)
    profile = measure_profile(state, focus, MeasureName.TANGLE, config=config)
    labels = list(profile.others)
    terms = _uniform_terms(profile.pairwise_values, 1.0, labels)
    return _build_report(
        TheoremId.CKW,
        MeasureName.TANGLE,
        1.0,
        profile.total.value,
        terms,
        lower_bound=True,
        conditions=[],
        uncertainty=_uncertainty(
            profile.total, list(zip(labels, profile.pairwise, strict=True)), terms, 1.0
        ),
        flags=_profile_flags(profile, range(profile.size)),
    )
