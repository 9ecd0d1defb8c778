"""Finite-shot simulation of the repeated-run estimation protocol.

Each circuit run yields a +/-1 outcome per measured quadrature; expectation
values are estimated as (N+ - N-)/(N+ + N-). Shot budgets follow the
two-sided Hoeffding bound L = ln(2/P_e) / (2 eps^2), inflated by 1/alpha^2
when the control qubit is only partially pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dqc1 import UnitaryMatrix, exact_expectations, normalized_trace

SAMPLING_MODES = ("binomial", "poisson")


def rng_stream(master_seed: int, *path: int) -> np.random.Generator:
    """Independent reproducible stream for (master seed, task index, ...)."""
    entropy = [int(master_seed), *(int(p) for p in path)]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def _as_rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class ShotPlan:
    """Accuracy target and the shot count that meets it."""

    epsilon: float
    p_error: float
    alpha: float
    shots: int

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if not 0.0 < self.p_error < 1.0:
            raise ValueError(f"p_error must be in (0, 1), got {self.p_error}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")

    @classmethod
    def from_target(cls, epsilon: float, p_error: float, alpha: float) -> "ShotPlan":
        return cls(epsilon, p_error, alpha, shots_required(epsilon, p_error, alpha))


@dataclass(frozen=True)
class MeasurementRecord:
    """Counts in the +/- ports of one measurement basis."""

    basis_label: str
    n_plus: int
    n_minus: int
    duration_tag: str | None = None

    def __post_init__(self):
        if self.n_plus < 0 or self.n_minus < 0:
            raise ValueError("counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.n_plus + self.n_minus

    @property
    def expectation(self) -> float:
        if self.total < 1:
            raise ValueError("no counts recorded, cannot form a ratio")
        return (self.n_plus - self.n_minus) / self.total


def shots_required(epsilon: float, p_error: float, alpha: float) -> int:
    """Shot budget ceil(ln(2/P_e) / (2 eps^2) / alpha^2).

    Monotone decreasing in every argument; the 1/alpha^2 factor is the
    purity overhead L' = L / alpha^2.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if not 0.0 < p_error < 1.0:
        raise ValueError(f"p_error must be in (0, 1), got {p_error}")
    if alpha == 0.0:
        raise ValueError("no pure fraction: estimation impossible")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    return math.ceil(math.log(2.0 / p_error) / (2.0 * epsilon**2) / alpha**2)


def sample_expectation(true_expectation: float, shots: int, seed) -> float:
    """Finite-shot estimate (N+ - N-)/L with N+ ~ Binomial(L, (1+e)/2).

    Deterministic for a fixed seed; seed may be an int, a SeedSequence, or
    an existing Generator.
    """
    if not -1.0 <= true_expectation <= 1.0:
        raise ValueError(f"expectation must be in [-1, 1], got {true_expectation}")
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    rng = _as_rng(seed)
    n_plus = int(rng.binomial(shots, (1.0 + true_expectation) / 2.0))
    return (2 * n_plus - shots) / shots


def poisson_counts(rate_plus: float, rate_minus: float, seed,
                   basis_label: str = "", duration_tag: str | None = None,
                   ) -> MeasurementRecord:
    """Independent Poisson draws for the two detector ports."""
    if rate_plus < 0 or rate_minus < 0:
        raise ValueError("rates must be nonnegative")
    if rate_plus == 0 and rate_minus == 0:
        raise ValueError("no signal")
    rng = _as_rng(seed)
    return MeasurementRecord(
        basis_label=basis_label,
        n_plus=int(rng.poisson(rate_plus)),
        n_minus=int(rng.poisson(rate_minus)),
        duration_tag=duration_tag,
    )


def _sampled_quadrature(true_expectation: float, shots: int, rng,
                        mode: str, basis_label: str) -> float:
    if mode == "binomial":
        return sample_expectation(true_expectation, shots, rng)
    p_plus = (1.0 + true_expectation) / 2.0
    rec = poisson_counts(shots * p_plus, shots * (1.0 - p_plus), rng,
                         basis_label=basis_label)
    return rec.expectation


def estimate_trace(u: UnitaryMatrix, alpha: float, shots: int, seed,
                   mode: str = "binomial") -> complex:
    """Sampled estimate of the normalized trace Tr(U)/N.

    The X and Y quadratures use independent shot streams derived from the
    seed, and the result is divided by alpha so it estimates the trace
    itself. shots = 0 bypasses sampling and returns the exact value.
    """
    if alpha == 0.0:
        raise ValueError("no pure fraction: estimation impossible")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    if mode not in SAMPLING_MODES:
        raise ValueError(f"unknown sampling mode {mode!r}, expected one of {SAMPLING_MODES}")
    if shots == 0:
        return normalized_trace(u)
    if shots < 0:
        raise ValueError(f"shots must be >= 0, got {shots}")
    x, y = exact_expectations(u, alpha)
    if isinstance(seed, np.random.Generator):
        gen_x, gen_y = seed.spawn(2)
    else:
        ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(int(seed))
        gen_x, gen_y = (np.random.default_rng(c) for c in ss.spawn(2))
    x_est = _sampled_quadrature(x, shots, gen_x, mode, "x")
    y_est = _sampled_quadrature(y, shots, gen_y, mode, "y")
    return complex(x_est, y_est) / alpha


def chi2_reduced(observed, expected, sigma, dof_subtract: int = 3) -> float:
    """Reduced chi-square: sum(((obs-exp)/sigma)^2) / (len - dof_subtract)."""
    obs = np.asarray(observed, dtype=float)
    exp = np.asarray(expected, dtype=float)
    sig = np.asarray(sigma, dtype=float)
    if not (obs.shape == exp.shape == sig.shape) or obs.ndim != 1:
        raise ValueError("observed, expected, and sigma must be 1-d and equal length")
    if len(obs) < dof_subtract + 1:
        raise ValueError(
            f"need at least {dof_subtract + 1} points for {dof_subtract} degrees of freedom"
        )
    if np.any(sig <= 0):
        raise ValueError("sigma values must be positive")
    return float(np.sum(((obs - exp) / sig) ** 2) / (len(obs) - dof_subtract))


def chi2_report(observed, expected, sigma, dof_subtract: int = 3) -> dict:
    """JSON-ready reduced chi-square summary."""
    value = chi2_reduced(observed, expected, sigma, dof_subtract)
    n = len(np.asarray(observed))
    return {"chi2_reduced": value, "dof": n - dof_subtract, "n_points": n}
