"""Flip-point machinery.

For |z| > 1 there is a unique prior precision k* > z^2 - 1 at which
BF01(z; k*) = 1, the solution of

    (1 + k) log(1 + k) = z^2 k.

Below k* the evidence favours H1, above it H0.  The module computes k*
by two independent routes (a bracketed root solve and the Lambert-W
closed form exp(W0(-z^2 e^{-z^2}) + z^2) - 1), exposes the strictly
increasing map phi(k) = (1+k) log(1+k) / k whose inverse at z^2 is k*,
converts k* to the critical prior standard deviation sqrt(k*/n), and
builds/validates scale pairs that reverse the direction of evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .bayes_factor import Direction, NormalPrior, TestSetup, bf01
from .errors import ConvergenceError, DomainError, NoFlipPoint, NotAReversal
from .numerics import DEFAULT_CONFIG, Bracket, SolverConfig, find_root, lambert_w0

__all__ = [
    "FlipMethod",
    "FlipPointResult",
    "ReversalPair",
    "phi",
    "phi_inverse",
    "flip_point",
    "tau_star",
    "reversal_pair",
    "validate_pair",
]


class FlipMethod(Enum):
    BRACKETED = "bracketed"
    LAMBERT_W = "lambert_w"


# Below this |z| the Lambert argument -z^2 exp(-z^2) sits so close to the
# branch point -1/e that W0 loses precision; use the bracketed solve.
_LAMBERT_SAFE_Z = 1.001

# |(1+k*) log(1+k*) - z^2 k*| must stay within this times z^2 * k*.
_RESIDUAL_BOUND = 1e-9


@dataclass(frozen=True)
class FlipPointResult:
    """Flip point k* with the residual of its characterizing equation and
    the method that produced it."""

    k_star: float
    residual: float
    method: FlipMethod
    z: float


@dataclass(frozen=True)
class ReversalPair:
    """Two prior scales bracketing tau* whose Bayes factors point in
    opposite directions on the same data."""

    tau1: float
    tau2: float
    tau_star: float
    bf1: float
    bf2: float


def phi(k: float) -> float:
    """phi(k) = (1+k) log(1+k) / k: strictly increasing bijection from
    (0, inf) onto (1, inf), with phi(0+) = 1."""
    if not k > 0.0:
        raise DomainError(f"phi domain is k > 0, got {k}")
    return (1.0 + k) * math.log1p(k) / k


def phi_inverse(y: float, cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """The k > 0 with phi(k) = y, for y > 1.

    phi(y - 1) = y log(y) / (y - 1) < y because log(y) < y - 1, so y - 1
    always works as the lower bracket end; the upper end doubles until
    phi exceeds y (phi is unbounded).
    """
    if not y > 1.0:
        raise DomainError(f"phi_inverse domain is y > 1, got {y}")
    lo = y - 1.0
    hi = max(2.0 * lo, 2.0)
    while phi(hi) < y:
        hi *= 2.0
    return find_root(lambda k: phi(k) - y, Bracket(lo, hi), cfg)


def _flip_residual(k: float, z2: float) -> float:
    return (1.0 + k) * math.log1p(k) - z2 * k


def flip_point(z: float, method: FlipMethod = FlipMethod.BRACKETED,
               cfg: SolverConfig = DEFAULT_CONFIG) -> FlipPointResult:
    """The unique k* > z^2 - 1 with BF01(z; k*) = 1; requires |z| > 1.

    BRACKETED solves (1+k) log(1+k) - z^2 k = 0 starting from the
    Bayes-factor minimum at z^2 - 1 (negative there) and doubling the
    upper end until the residual turns positive.  LAMBERT_W evaluates
    exp(W0(-z^2 e^{-z^2}) + z^2) - 1; the principal branch picks out the
    nontrivial root (W-1 only recovers k = 0).  For 1 < |z| < 1.001 the
    bracketed route is used regardless of the requested method.
    """
    if abs(z) <= 1.0:
        raise NoFlipPoint(
            f"|z| must exceed 1 for a flip point (BF01 >= 1 for all k); got z = {z}"
        )
    z2 = z * z
    used = method
    if method is FlipMethod.LAMBERT_W and abs(z) >= _LAMBERT_SAFE_Z:
        k_star = math.expm1(lambert_w0(-z2 * math.exp(-z2), cfg) + z2)
    else:
        used = FlipMethod.BRACKETED
        lo = z2 - 1.0
        hi = max(2.0 * lo, 2.0)
        while _flip_residual(hi, z2) <= 0.0:
            hi *= 2.0
        k_star = find_root(lambda k: _flip_residual(k, z2), Bracket(lo, hi), cfg)
    residual = _flip_residual(k_star, z2)
    if not k_star > z2 - 1.0 or abs(residual) > _RESIDUAL_BOUND * z2 * k_star:
        raise ConvergenceError(
            f"flip point failed validation: k* = {k_star}, residual = {residual}"
        )
    return FlipPointResult(k_star=k_star, residual=residual, method=used, z=z)


def tau_star(k_star: float, n: int) -> float:
    """Critical prior standard deviation sqrt(k*/n) for sample size n."""
    if not k_star > 0.0:
        raise DomainError(f"k_star must be positive, got {k_star}")
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    return math.sqrt(k_star / n)


def reversal_pair(setup: TestSetup, spread: float = 0.5,
                  cfg: SolverConfig = DEFAULT_CONFIG) -> ReversalPair:
    """A symmetric multiplicative pair tau* (1 - spread), tau* / (1 - spread)
    demonstrating the reversal: bf1 < 1 < bf2 on identical data.

    If either side lands inside the neutral band, the spread widens
    geometrically until both directions are strict.
    """
    if not 0.0 < spread < 1.0:
        raise DomainError(f"spread must lie in (0, 1), got {spread}")
    fp = flip_point(setup.z, FlipMethod.BRACKETED, cfg)
    ts = tau_star(fp.k_star, setup.n)
    shrink = 1.0 - spread
    if shrink == 1.0:  # spread below float resolution; start just under 1
        shrink = 1.0 - 1e-15
    for _ in range(64):
        tau1 = ts * shrink
        tau2 = ts / shrink
        r1 = bf01(setup, NormalPrior(tau1))
        r2 = bf01(setup, NormalPrior(tau2))
        if r1.direction is Direction.FAVOURS_H1 and r2.direction is Direction.FAVOURS_H0:
            return ReversalPair(tau1=tau1, tau2=tau2, tau_star=ts,
                                bf1=r1.bf01, bf2=r2.bf01)
        shrink *= shrink
    raise NotAReversal("could not separate the pair from the neutral band")


def validate_pair(setup: TestSetup, tau1: float, tau2: float,
                  cfg: SolverConfig = DEFAULT_CONFIG) -> ReversalPair:
    """Check that (tau1, tau2) is a legal reversal pair for the data:
    tau1 < tau* < tau2 with BF01(tau1) < 1 < BF01(tau2).

    Raises NotAReversal naming every condition that failed.
    """
    if not tau1 > 0.0 or not tau2 > 0.0:
        raise DomainError(f"prior scales must be positive, got ({tau1}, {tau2})")
    fp = flip_point(setup.z, FlipMethod.BRACKETED, cfg)
    ts = tau_star(fp.k_star, setup.n)
    r1 = bf01(setup, NormalPrior(tau1))
    r2 = bf01(setup, NormalPrior(tau2))
    problems = []
    if not tau1 < ts:
        problems.append(f"tau1 = {tau1:g} is not below tau* = {ts:.6g}")
    if not ts < tau2:
        problems.append(f"tau2 = {tau2:g} is not above tau* = {ts:.6g}")
    if r1.direction is not Direction.FAVOURS_H1:
        problems.append(f"BF01(tau1) = {r1.bf01:.6g} does not favour H1")
    if r2.direction is not Direction.FAVOURS_H0:
        problems.append(f"BF01(tau2) = {r2.bf01:.6g} does not favour H0")
    if problems:
        raise NotAReversal("; ".join(problems))
    return ReversalPair(tau1=tau1, tau2=tau2, tau_star=ts, bf1=r1.bf01, bf2=r2.bf01)
