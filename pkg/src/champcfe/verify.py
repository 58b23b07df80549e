"""Ground-truth verification of the convergent predictions.

Each convergent is rebuilt from the prediction formulas, its decimal
expansion is compared digit-for-digit against generated constant digits,
and every observation (correct-digit count, failing integer, substituted
tail, error, coefficient statistics) is checked off against its predictor.
A mismatch is not an exception: it is reported as a violation with a
machine-readable field diff.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import arith, cfe, predict
from .digits import (
    DEFAULT_DIGIT_BUDGET,
    DigitLocation,
    DigitPrefix,
    digits_up_to,
    locate_position,
    position_of_integer,
)
from .predict import SciDecimal

CONFIRMED = "confirmed"
VIOLATION = "violation"

PROFILE_VERSION = 1


class InsufficientTruthError(Exception):
    """The generated digits do not reach far enough for the measurement."""

    def __init__(self, required: int, detail: str = ""):
        self.required = required
        msg = f"at least {required} constant digits are required"
        super().__init__(msg + (f" ({detail})" if detail else ""))


@dataclass(frozen=True)
class FieldCheck:
    field: str
    predicted: object
    observed: object
    ok: bool

    def as_dict(self) -> dict:
        return {
            "field": self.field,
            "predicted": _jsonable(self.predicted),
            "observed": _jsonable(self.observed),
            "ok": self.ok,
        }


def _jsonable(value):
    if isinstance(value, SciDecimal):
        return str(value)
    if isinstance(value, DigitLocation):
        return {"integer": value.integer, "digit_ordinal": value.digit_ordinal}
    if isinstance(value, tuple):
        return list(value)
    return value


def long_divide(
    numerator: int,
    denominator: int,
    ndigits: int,
    max_digits: int = DEFAULT_DIGIT_BUDGET,
) -> str:
    """First ndigits fractional digits of numerator/denominator < 1 by exact
    integer division, truncated."""
    if denominator <= 0:
        raise ValueError("denominator must be positive")
    if not 0 <= numerator < denominator:
        raise ValueError("value must lie in [0, 1)")
    if ndigits < 1:
        raise ValueError("ndigits must be >= 1")
    if ndigits > max_digits:
        from .digits import DigitBudgetError

        raise DigitBudgetError(requested=ndigits, budget=max_digits)
    q = arith.scaled_quotient(numerator, denominator, ndigits)
    return arith.to_digits(q).rjust(ndigits, "0")


def _expansion_mismatch(
    numerator: int, denominator: int, truth: DigitPrefix, limit: int
) -> tuple[int | None, str]:
    """Expand numerator/denominator to min(limit, len(truth)) positions and
    return (first differing position, the expansion window)."""
    w = min(limit, truth.last_position)
    conv = "0" + long_divide(numerator, denominator, w, max_digits=w)
    return arith.first_difference(conv, truth.digits[: w + 1]), conv


def measure_ncd(
    numerator: int, denominator: int, truth: DigitPrefix
) -> tuple[int, DigitLocation]:
    """Number of correct digits (the position of the first wrong one,
    counting the leading '0') and where that digit lives."""
    pos, _ = _expansion_mismatch(numerator, denominator, truth, truth.last_position)
    if pos is None:
        raise InsufficientTruthError(
            required=truth.last_position + 2,
            detail="no mismatch within the supplied digits",
        )
    return pos, locate_position(pos)


def measure_error(
    numerator: int,
    denominator: int,
    truth: DigitPrefix,
    mantissa_digits: int,
    guard_digits: int = 10,
) -> SciDecimal:
    """Leading mantissa digits and exponent of (convergent - truncation),
    exact. Positive while the convergent runs above the constant.

    The truncation stands in for the constant itself, so the prefix must
    reach guard_digits past the last reported mantissa digit; the check is
    made against the measured exponent and failure names the requirement.
    On a prefix far too short the measurement sees only the truncation
    artifact, so the named requirement is a lower bound that grows on
    retry until it stabilizes.
    """
    if mantissa_digits < 1:
        raise ValueError("mantissa_digits must be >= 1")
    v = truth.as_scaled_integer()
    p = truth.last_position
    diff = arith.mz(numerator) * arith.pow10(p) - arith.mz(v) * arith.mz(denominator)
    if diff == 0:
        raise InsufficientTruthError(
            required=p + 2, detail="convergent equals the truncation exactly"
        )
    sign = 1 if diff > 0 else -1
    ad = -diff if diff < 0 else diff
    dv = arith.mz(denominator) * arith.pow10(p)
    e0 = arith.digit_count(ad) - arith.digit_count(dv)
    shift = mantissa_digits - e0
    if shift >= 0:
        t = (ad * arith.pow10(shift)) // dv
    else:
        t = ad // (dv * arith.pow10(-shift))
    ts = arith.to_digits(t)
    exponent = e0 + (len(ts) - 1 - mantissa_digits)
    required = max(0, -exponent) + mantissa_digits + guard_digits
    if p < required:
        raise InsufficientTruthError(required=required)
    return SciDecimal(sign, ts[:mantissa_digits], exponent)


@dataclass
class ConvergentProfile:
    """Everything observed about the convergent before HWM #n, next to the
    matching predictions."""

    hwm_n: int
    coefficient_index: int
    observed_ncd: int
    predicted_ncd: int
    first_fail: DigitLocation
    fails_as: int
    error_observed: SciDecimal | None
    error_predicted: SciDecimal
    denominator_digits: int
    coefficient_count: int
    total_coefficient_digits: int
    c10_digits_used: int
    next_hwm_length: int | None
    checks: list[FieldCheck] = field(default_factory=list)

    @property
    def status(self) -> str:
        return CONFIRMED if all(c.ok for c in self.checks) else VIOLATION

    def violations(self) -> list[FieldCheck]:
        return [c for c in self.checks if not c.ok]

    def as_dict(self) -> dict:
        return {
            "profile_version": PROFILE_VERSION,
            "kind": "hwm",
            "hwm_n": self.hwm_n,
            "coefficient_index": self.coefficient_index,
            "observed_ncd": self.observed_ncd,
            "predicted_ncd": self.predicted_ncd,
            "first_fail": _jsonable(self.first_fail),
            "fails_as": self.fails_as,
            "error_observed": _jsonable(self.error_observed),
            "error_predicted": _jsonable(self.error_predicted),
            "denominator_digits": self.denominator_digits,
            "coefficient_count": self.coefficient_count,
            "total_coefficient_digits": self.total_coefficient_digits,
            "c10_digits_used": self.c10_digits_used,
            "next_hwm_length": self.next_hwm_length,
            "status": self.status,
            "checks": [c.as_dict() for c in self.checks],
        }


def verify_hwm(
    n: int,
    *,
    compute_error: bool = True,
    check_next_hwm: bool = True,
    guard_digits: int = 10,
    max_digits: int = DEFAULT_DIGIT_BUDGET,
) -> ConvergentProfile:
    """Full pipeline for HWM #n: predicted denominator, ceiling numerator,
    coefficient extraction, digit comparison, error measurement, and the
    next-level length check, each observation scored against its predictor.

    Checking the length of HWM #n itself requires the coefficients of the
    convergent before HWM #(n+1), where that term finally appears; with
    check_next_hwm the n+1 level is computed and its term at this level's
    terminal index is measured.
    """
    if n < 4:
        raise ValueError("verification starts at HWM #4")

    p_ncd = predict.ncd(n)
    p_err = predict.error_profile(n)
    p_fail, p_fails_as = predict.failing_integer(n)
    p_tail = predict.failure_tail(n)
    p_den_digits = predict.denominator_digit_count(n)

    prefix_pos = cfe.required_prefix_position(n)
    scan_limit = p_ncd + len(p_tail) + 64
    need = max(prefix_pos, scan_limit)
    if compute_error:
        need = max(need, (p_ncd + n - 2) + len(p_err.digits) + 1 + guard_digits)
    if check_next_hwm:
        need = max(need, cfe.required_prefix_position(n + 1))
    truth = digits_up_to(need, max_digits=max_digits)

    den = cfe.hwm_denominator(n)
    num = cfe.numerator_for_hwm(n, truth)
    coprime = arith.gcd(num, den) == 1
    terms = cfe.cfe_extract(num, den, final_index_parity="odd")
    k = len(terms)
    total_digits = sum(arith.digit_count(t) for t in terms)

    pos, conv = _expansion_mismatch(num, den, truth, scan_limit)
    if pos is None:
        # prediction undershoots; rescan across everything we generated
        pos, conv = _expansion_mismatch(num, den, truth, truth.last_position)
        if pos is None:
            raise InsufficientTruthError(
                required=truth.last_position + 2,
                detail="no mismatch found; expansion window exhausted",
            )
    loc = locate_position(pos)
    obs_tail = conv[pos : pos + len(p_tail)]
    fail_start = position_of_integer(loc.integer)
    fail_width = len(str(loc.integer))
    fails_as = int(conv[fail_start : fail_start + fail_width])

    checks = [
        FieldCheck("ncd", p_ncd, pos, pos == p_ncd),
        FieldCheck("failing_integer", p_fail, loc.integer, loc.integer == p_fail),
        FieldCheck("fails_as", p_fails_as, fails_as, fails_as == p_fails_as),
        FieldCheck("failure_tail", p_tail, obs_tail, obs_tail == p_tail),
        FieldCheck(
            "denominator_digits",
            p_den_digits,
            arith.digit_count(den),
            arith.digit_count(den) == p_den_digits,
        ),
        FieldCheck("lowest_terms", True, coprime, coprime),
        FieldCheck(
            "coefficient_parity",
            "even",
            "even" if predict.parity_consistent(k) else "odd",
            predict.parity_consistent(k),
        ),
    ]

    err_obs = None
    if compute_error:
        err_obs = measure_error(
            num, den, truth, mantissa_digits=len(p_err.digits) + 1, guard_digits=guard_digits
        )
        rounded = err_obs.round_to(len(p_err.digits))
        checks.append(FieldCheck("error", p_err, rounded, rounded == p_err))

    if n >= 6:
        tails = cfe.numerator_tail_checks(n, num)
        checks.append(
            FieldCheck("numerator_tail", tails.ends_with, tails.tail_ok, bool(tails.tail_ok))
        )
        if tails.expected_nines_run is not None:
            checks.append(
                FieldCheck(
                    "nines_run",
                    tails.expected_nines_run,
                    tails.longest_nines_run,
                    bool(tails.nines_run_ok),
                )
            )
    elif n == 5:
        tails = cfe.numerator_tail_checks(n, num)
        checks.append(
            FieldCheck(
                "nines_run",
                tails.expected_nines_run,
                tails.longest_nines_run,
                bool(tails.nines_run_ok),
            )
        )

    next_len = None
    if check_next_hwm:
        num2 = cfe.numerator_for_hwm(n + 1, truth)
        den2 = cfe.hwm_denominator(n + 1)
        terms2 = cfe.cfe_extract(num2, den2, final_index_parity="odd")
        stable = terms2[:k] == terms
        next_len = arith.digit_count(terms2[k])
        p_next_len = predict.hwm_length(n)
        checks.append(FieldCheck("prefix_stability", True, stable, stable))
        checks.append(
            FieldCheck("hwm_length", p_next_len, next_len, next_len == p_next_len)
        )

    return ConvergentProfile(
        hwm_n=n,
        coefficient_index=k,
        observed_ncd=pos,
        predicted_ncd=p_ncd,
        first_fail=loc,
        fails_as=fails_as,
        error_observed=err_obs,
        error_predicted=p_err,
        denominator_digits=arith.digit_count(den),
        coefficient_count=k,
        total_coefficient_digits=total_digits,
        c10_digits_used=prefix_pos + 1,
        next_hwm_length=next_len,
        checks=checks,
    )


@dataclass
class ChildProfile:
    """Observations for the convergent truncated before a child (2nd
    generation) coefficient, including the denominator block contents the
    shape rule leaves open."""

    coefficient_index: int
    follows_hwm: int
    observed_ncd: int
    first_fail: DigitLocation
    fails_as: int
    error_observed: SciDecimal
    error_predicted: SciDecimal
    denominator_shape: predict.DenominatorShape
    shape_predicted: predict.DenominatorShape
    child_length: int | None
    child_length_predicted: int
    checks: list[FieldCheck] = field(default_factory=list)

    @property
    def status(self) -> str:
        return CONFIRMED if all(c.ok for c in self.checks) else VIOLATION

    def violations(self) -> list[FieldCheck]:
        return [c for c in self.checks if not c.ok]

    def as_dict(self) -> dict:
        shape = self.denominator_shape
        return {
            "profile_version": PROFILE_VERSION,
            "kind": "child",
            "coefficient_index": self.coefficient_index,
            "follows_hwm": self.follows_hwm,
            "observed_ncd": self.observed_ncd,
            "first_fail": _jsonable(self.first_fail),
            "fails_as": self.fails_as,
            "error_observed": _jsonable(self.error_observed),
            "error_predicted": _jsonable(self.error_predicted),
            "denominator_shape": {
                "preamble": shape.preamble,
                "nines_count": shape.nines_count,
                "penultimate": shape.penultimate,
                "zeroes_count": shape.zeroes_count,
                "total_length": shape.total_length,
            },
            "shape_lengths_predicted": list(self.shape_predicted.lengths()),
            "child_length": self.child_length,
            "child_length_predicted": self.child_length_predicted,
            "status": self.status,
            "checks": [c.as_dict() for c in self.checks],
        }


def _hwm_number_before(lengths: Sequence[int], index: int) -> int:
    """HWM number of the last first-generation maximum before index.

    The running length maxima land at coefficients 0, 4, 18, 40, ...; the
    conventional numbering calls index 4 HWM #4 (indices 1 and 2 of the
    classic value-based count never exceed one digit), so maxima after the
    seed are numbered 4, 5, 6, ...
    """
    best = 0
    rank = 0
    for i in range(1, min(index, len(lengths))):
        if lengths[i] > lengths[best]:
            best = i
            rank += 1
    if rank == 0:
        raise ValueError("no first-generation maximum precedes the index")
    return rank + 3


def verify_child(
    coefficient_index: int,
    terms: Sequence[int],
    *,
    guard_digits: int = 10,
    max_digits: int = DEFAULT_DIGIT_BUDGET,
) -> ChildProfile:
    """Verify the convergent truncated immediately before the coefficient at
    coefficient_index, treating it as a child HWM: measure its error and
    failing digit, split its denominator into preamble / nines /
    penultimate / zeroes, and score everything against the predictors.
    """
    k = coefficient_index
    if not 1 <= k <= len(terms):
        raise ValueError("coefficient index outside the supplied list")
    lengths = [arith.digit_count(t) for t in terms[: k + 1]]
    m = _hwm_number_before(lengths, k)
    if m < 6:
        raise ValueError("children are predicted only after HWM #6")

    p_err = predict.child_error_profile(m)
    p_shape = predict.child_denominator_shape(m)
    p_len = predict.child_length(m - 1)

    r = cfe.convergent_from_coefficients(terms[:k])
    num, den = r.numerator, r.denominator

    exp = -p_err.exponent
    need = exp + len(p_err.digits) + 1 + guard_digits
    truth = digits_up_to(need, max_digits=max_digits)

    err_obs = measure_error(
        num, den, truth, mantissa_digits=len(p_err.digits) + 1, guard_digits=guard_digits
    )
    rounded = err_obs.round_to(len(p_err.digits))

    pos, conv = _expansion_mismatch(num, den, truth, exp + 32)
    if pos is None:
        raise InsufficientTruthError(required=exp + 34)
    loc = locate_position(pos)
    fail_start = position_of_integer(loc.integer)
    fail_width = len(str(loc.integer))
    fails_as = int(conv[fail_start : fail_start + fail_width])

    shape = predict.parse_denominator_shape(arith.to_digits(den))

    checks = [
        FieldCheck("error", p_err, rounded, rounded == p_err),
        FieldCheck("failing_position", exp - 1, pos, pos == exp - 1),
        FieldCheck(
            "coefficient_parity",
            "odd",
            "odd" if predict.parity_consistent(k, generation=2) else "even",
            predict.parity_consistent(k, generation=2),
        ),
        FieldCheck(
            "shape_lengths",
            list(p_shape.lengths()),
            list(shape.lengths()),
            shape.lengths() == p_shape.lengths(),
        ),
        FieldCheck(
            "shape_total_length",
            p_shape.total_length,
            shape.total_length,
            shape.total_length == p_shape.total_length,
        ),
    ]

    child_len = None
    if k < len(terms):
        child_len = lengths[k]
        checks.append(FieldCheck("child_length", p_len, child_len, child_len == p_len))

    return ChildProfile(
        coefficient_index=k,
        follows_hwm=m,
        observed_ncd=pos,
        first_fail=loc,
        fails_as=fails_as,
        error_observed=err_obs,
        error_predicted=p_err,
        denominator_shape=shape,
        shape_predicted=p_shape,
        child_length=child_len,
        child_length_predicted=p_len,
        checks=checks,
    )
