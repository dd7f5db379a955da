"""Most reliable discrimination between two outcome distributions.

The test family is the likelihood-ratio threshold family: observing outcome
``k`` with ratio ``r_k = q_k / p_k`` (``+inf`` when ``p_k = 0 < q_k``;
outcomes impossible under both hypotheses are dropped), the first hypothesis
is kept when ``r_k < t``, rejected when ``r_k > t``, and kept with probability
``gamma`` on ties.  Every member obeys two bounds tied to the distribution
overlap ``U``:

* ``err1 + err2 >= 1 - sqrt(1 - U^2)``
* ``err1 * err2 <= U^2 / 4``

where ``err1`` is the probability of rejecting the first hypothesis when it is
true and ``err2`` of keeping it when the second is true.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measures import OutcomeDistribution, _align, bhattacharyya


@dataclass(frozen=True)
class NPTest:
    """A likelihood-ratio threshold test with tie randomization."""

    threshold: float
    gamma: float

    def __post_init__(self):
        if not (self.threshold >= 0.0):
            raise ValueError(f"threshold must be >= 0, got {self.threshold!r}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma!r}")


@dataclass(frozen=True)
class TestErrors:
    """Error probabilities of a two-hypothesis test."""

    err1: float  # reject the first hypothesis although it is true
    err2: float  # keep the first hypothesis although the second is true

    @property
    def total(self) -> float:
        return self.err1 + self.err2

    @property
    def product(self) -> float:
        return self.err1 * self.err2


@dataclass(frozen=True)
class ErrorBoundReport:
    """Worst-case slack of both error bounds over the whole test family."""

    u: float
    sum_floor: float  # 1 - sqrt(1 - U^2)
    product_cap: float  # U^2 / 4
    min_sum_slack: float  # min over tests of (err1 + err2) - sum_floor
    min_product_slack: float  # min over tests of product_cap - err1*err2
    tests_checked: int

    def holds(self, tol: float = 1e-10) -> bool:
        return self.min_sum_slack >= -tol and self.min_product_slack >= -tol


def likelihood_ratios(
    p: OutcomeDistribution, q: OutcomeDistribution
) -> tuple[tuple[str, ...], np.ndarray]:
    """Labels and ratios ``q_k / p_k`` of the outcomes kept by the test.

    Outcomes with ``p_k = q_k = 0`` carry no evidence and are removed; a
    ratio is ``+inf`` where only ``p_k`` vanishes.
    """
    pv = p.probabilities
    qv = _align(p, q)
    keep = (pv > 0.0) | (qv > 0.0)
    pv, qv = pv[keep], qv[keep]
    labels = tuple(label for label, used in zip(p.labels, keep) if used)
    ratios = np.where(pv > 0.0, qv / np.where(pv > 0.0, pv, 1.0), math.inf)
    return labels, ratios


def np_test_errors(
    p: OutcomeDistribution, q: OutcomeDistribution, test: NPTest
) -> TestErrors:
    """Both error probabilities of a threshold test.

    Ties mean exact floating-point equality of the ratio with the threshold;
    thresholds taken from :func:`likelihood_ratios` therefore tie reliably.
    """
    pv = p.probabilities
    qv = _align(p, q)
    keep = (pv > 0.0) | (qv > 0.0)
    pv, qv = pv[keep], qv[keep]
    ratios = np.where(pv > 0.0, qv / np.where(pv > 0.0, pv, 1.0), math.inf)
    above = ratios > test.threshold
    tied = ratios == test.threshold
    below = ratios < test.threshold
    err1 = float(pv[above].sum() + (1.0 - test.gamma) * pv[tied].sum())
    err2 = float(qv[below].sum() + test.gamma * qv[tied].sum())
    return TestErrors(err1=min(err1, 1.0), err2=min(err2, 1.0))


def _candidate_tests(ratios: np.ndarray):
    for t in np.unique(ratios):
        yield NPTest(float(t), 0.0)
        yield NPTest(float(t), 1.0)


def best_np_test(
    p: OutcomeDistribution, q: OutcomeDistribution, objective: str = "sum"
) -> tuple[NPTest, TestErrors]:
    """Minimize ``err1 + err2`` (``"sum"``) or ``err1 * err2`` (``"product"``).

    Only the distinct ratio values with ``gamma`` in {0, 1} need to be
    searched: a threshold strictly between two consecutive ratio values gives
    the same errors as the next value with ``gamma = 0``, and one beyond the
    largest value the same as the largest with ``gamma = 1``.
    """
    if objective not in ("sum", "product"):
        raise ValueError(f"objective must be 'sum' or 'product', got {objective!r}")
    _, ratios = likelihood_ratios(p, q)
    best: tuple[NPTest, TestErrors] | None = None
    best_value = math.inf
    for test in _candidate_tests(ratios):
        errors = np_test_errors(p, q, test)
        value = errors.total if objective == "sum" else errors.product
        if value < best_value:
            best_value = value
            best = (test, errors)
    assert best is not None  # ratios is non-empty for valid distributions
    return best


def verify_bounds(
    p: OutcomeDistribution, q: OutcomeDistribution
) -> ErrorBoundReport:
    """Check both error bounds against every candidate threshold test.

    Scans all distinct ratio values with ``gamma`` in {0, 1} (the extreme
    points of the family) and records the tightest slack of each bound.
    """
    u = bhattacharyya(p, q)
    sum_floor = 1.0 - math.sqrt(max(0.0, 1.0 - u * u))
    product_cap = 0.25 * u * u
    _, ratios = likelihood_ratios(p, q)
    min_sum_slack = math.inf
    min_product_slack = math.inf
    checked = 0
    for test in _candidate_tests(ratios):
        errors = np_test_errors(p, q, test)
        checked += 1
        min_sum_slack = min(min_sum_slack, errors.total - sum_floor)
        min_product_slack = min(min_product_slack, product_cap - errors.product)
    return ErrorBoundReport(
        u=u,
        sum_floor=sum_floor,
        product_cap=product_cap,
        min_sum_slack=float(min_sum_slack),
        min_product_slack=float(min_product_slack),
        tests_checked=checked,
    )
