"""Closed-form Bayes factor for the normal point-null model with known
unit variance.

With z = sqrt(n) * xbar and k = n * tau^2 (the prior precision relative
to the data), the Bayes factor in favour of the null is

    BF01(z; k) = sqrt(1 + k) * exp(-z^2 k / (2 (1 + k))),

computed in log space throughout.  The module also carries the exact
log-derivative in k, the location of the Bayes-factor minimum, the
posterior probability of the null, and two-sided p-values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

__all__ = [
    "Direction",
    "TestSetup",
    "NormalPrior",
    "BayesFactorResult",
    "NEUTRAL_LOG_BAND",
    "log_bf01",
    "bf01",
    "dlogbf_dk",
    "bf_argmin_k",
    "posterior_prob_h0",
    "two_sided_p",
]

_SQRT2 = math.sqrt(2.0)

# |log BF| at or below this counts as a tie: exact BF = 1 is measure-zero,
# but float comparisons need a band.
NEUTRAL_LOG_BAND = 1e-12


class Direction(Enum):
    """Which hypothesis the Bayes factor favours."""

    FAVOURS_H1 = "favours_h1"
    NEUTRAL = "neutral"
    FAVOURS_H0 = "favours_h0"


@dataclass(frozen=True)
class TestSetup:
    """Data summary: sample size n and z-statistic z = sqrt(n) * xbar.

    The model fixes the known standard deviation at exactly 1; other
    values are rejected rather than silently rescaled.
    """

    __test__ = False  # bare data, despite the Test* name pytest looks for

    n: int
    z: float
    sigma: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"sample size must be >= 1, got {self.n}")
        if self.sigma != 1.0:
            raise DomainError(f"the model fixes sigma = 1, got {self.sigma}")

    @property
    def xbar(self) -> float:
        """Sample mean implied by the z-statistic: z / sqrt(n)."""
        return self.z / math.sqrt(self.n)

    @classmethod
    def from_sample_mean(cls, n: int, xbar: float) -> "TestSetup":
        return cls(n=n, z=math.sqrt(n) * xbar)


@dataclass(frozen=True)
class NormalPrior:
    """Zero-centred normal prior on the mean under H1, standard deviation tau."""

    tau: float

    def __post_init__(self):
        if not self.tau > 0.0:
            raise DomainError(f"tau must be positive, got {self.tau}")

    def k(self, setup: TestSetup) -> float:
        """Derived prior precision relative to the data: n * tau^2."""
        return setup.n * self.tau * self.tau


@dataclass(frozen=True)
class BayesFactorResult:
    """BF01 with its natural log and the direction of evidence."""

    bf01: float
    log_bf01: float
    direction: Direction

    @classmethod
    def from_log(cls, log_bf: float) -> "BayesFactorResult":
        if abs(log_bf) <= NEUTRAL_LOG_BAND:
            direction = Direction.NEUTRAL
        elif log_bf < 0.0:
            direction = Direction.FAVOURS_H1
        else:
            direction = Direction.FAVOURS_H0
        return cls(bf01=math.exp(log_bf), log_bf01=log_bf, direction=direction)


def log_bf01(z: float, k: float) -> float:
    """log BF01(z; k) = 0.5*log(1+k) - z^2 k / (2 (1+k)).

    Equals 0 at k = 0 for every z and is finite for all finite inputs.
    """
    if k < 0.0:
        raise DomainError(f"k must be nonnegative, got {k}")
    return 0.5 * math.log1p(k) - z * z * k / (2.0 * (1.0 + k))


def bf01(setup: TestSetup, prior: NormalPrior) -> BayesFactorResult:
    """Bayes factor in favour of the null for the given data and prior."""
    return BayesFactorResult.from_log(log_bf01(setup.z, prior.k(setup)))


def dlogbf_dk(z: float, k: float) -> float:
    """Exact derivative of log BF01 in k: ((1+k) - z^2) / (2 (1+k)^2).

    Negative at k = 0 when |z| > 1, zero at k = z^2 - 1.
    """
    if k < 0.0:
        raise DomainError(f"k must be nonnegative, got {k}")
    kp1 = 1.0 + k
    return (kp1 - z * z) / (2.0 * kp1 * kp1)


def bf_argmin_k(z: float) -> float | None:
    """Location k = z^2 - 1 of the Bayes-factor minimum when |z| > 1;
    None when |z| <= 1 (BF01 is nondecreasing on k >= 0)."""
    if abs(z) <= 1.0:
        return None
    return z * z - 1.0


def posterior_prob_h0(bf: float, pi0: float = 0.5) -> float:
    """Posterior probability of the null:
    pi0 * BF01 / (pi0 * BF01 + 1 - pi0).

    Under zero-one loss the decision flips exactly where BF01 crosses 1
    (at pi0 = 1/2), so the flip point moves the decision, not just the
    evidence summary.
    """
    if not bf > 0.0:
        raise DomainError(f"bf01 must be positive, got {bf}")
    if not 0.0 < pi0 < 1.0:
        raise DomainError(f"pi0 must lie in (0, 1), got {pi0}")
    return pi0 * bf / (pi0 * bf + 1.0 - pi0)


def two_sided_p(z: float) -> float:
    """Two-sided p-value 2 * (1 - Phi(|z|)), via erfc for tail accuracy."""
    return math.erfc(abs(z) / _SQRT2)
