"""Non-classical correlation measures on bipartite states.

Mutual information H(A) + H(B) - H(AB) captures total correlations. The
classical share accessible by measuring one side is J = H(other) - Hmin,
where Hmin is the average post-measurement entropy of the unmeasured side,
minimized over all rank-1 projective measurements on the measured qubit.
Quantum discord is the gap I - J; it is directional, since measuring one
side is not equivalent to measuring the other. Entanglement is tracked
separately by the Wootters concurrence and its square, the tangle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .qmath import (
    DensityMatrix,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    partial_trace,
    repartition,
    vn_entropy,
)

MEASURE_CONTROL = "measure_control"
MEASURE_REGISTER = "measure_register"

GRID_POLAR = 64
GRID_AZIMUTH = 128
OBJECTIVE_TOL = 1e-8


@dataclass(frozen=True)
class BlochDirection:
    """Measurement axis on the Bloch sphere."""

    polar: float
    azimuth: float

    def __post_init__(self):
        if not 0.0 <= self.polar <= np.pi:
            raise ValueError(f"polar angle must be in [0, pi], got {self.polar}")
        if not 0.0 <= self.azimuth < 2.0 * np.pi:
            raise ValueError(f"azimuth must be in [0, 2*pi), got {self.azimuth}")

    @property
    def unit_vector(self) -> np.ndarray:
        sp = np.sin(self.polar)
        return np.array(
            [sp * np.cos(self.azimuth), sp * np.sin(self.azimuth), np.cos(self.polar)]
        )


@dataclass(frozen=True)
class CorrelationReport:
    """All correlation measures for one two-qubit state.

    discord_rc measures on the control (subsystem 0), discord_cr on the
    register; argmin_direction is the minimizing measurement axis on the
    control.
    """

    mutual_info: float
    discord_rc: float
    discord_cr: float
    tangle: float
    argmin_direction: BlochDirection
    optimizer_evals: int

    def __post_init__(self):
        if self.discord_rc < -1e-9 or self.discord_cr < -1e-9:
            raise ValueError("discord values must be >= -1e-9")
        if not -1e-9 <= self.tangle <= 1.0 + 1e-9:
            raise ValueError(f"tangle must be in [0, 1], got {self.tangle}")

    def to_dict(self) -> dict:
        return {
            "mutual_info": self.mutual_info,
            "discord_rc": self.discord_rc,
            "discord_cr": self.discord_cr,
            "tangle": self.tangle,
            "argmin_direction": {
                "polar": self.argmin_direction.polar,
                "azimuth": self.argmin_direction.azimuth,
            },
            "optimizer_evals": self.optimizer_evals,
        }


def _bipartite(rho: DensityMatrix, split) -> DensityMatrix:
    if split is not None:
        rho = repartition(rho, split)
    if len(rho.qubit_dims) != 2:
        raise ValueError(
            f"state is not bipartite: qubit_dims = {rho.qubit_dims}"
        )
    return rho


def mutual_information(rho: DensityMatrix, split=None) -> float:
    """H(A) + H(B) - H(AB) in bits; nonnegative up to round-off."""
    rho = _bipartite(rho, split)
    h_a = vn_entropy(partial_trace(rho, 0))
    h_b = vn_entropy(partial_trace(rho, 1))
    return h_a + h_b - vn_entropy(rho)


def _weighted_entropy(mu: np.ndarray) -> np.ndarray:
    """-sum mu log2(mu/p) over the last axis, with p = sum(mu) and 0 log 0 = 0.

    mu holds eigenvalues of unnormalized conditional blocks, so each term is
    the outcome probability times the entropy of the normalized state.
    """
    mu = np.clip(mu, 0.0, None)
    p = mu.sum(axis=-1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = mu * (np.log2(mu) - np.log2(p))
    terms = np.where(mu > 0.0, terms, 0.0)
    return -terms.sum(axis=-1)


def _measurement_blocks(rho: DensityMatrix, measured: int):
    """Reduce the conditional-state computation to B(n) = (R + n.K)/2.

    For a projector (I + n.sigma)/2 on the measured qubit, the unnormalized
    conditional state of the other side is (R + sum_k n_k K_k)/2 with R the
    reduced other-side state and K_k fixed Hermitian matrices.
    """
    d0, d1 = rho.subsystem_dims
    t = rho.entries.reshape(d0, d1, d0, d1)
    if measured == 0:
        r = np.einsum("iaib->ab", t)
        k = np.stack(
            [np.einsum("ij,jaib->ab", s, t) for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)]
        )
    else:
        r = np.einsum("arbr->ab", t)
        k = np.stack(
            [np.einsum("rs,asbr->ab", s, t) for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)]
        )
    return r, k


def _grid_directions():
    polar = np.linspace(0.0, np.pi, GRID_POLAR)
    azim = np.linspace(0.0, 2.0 * np.pi, GRID_AZIMUTH, endpoint=False)
    pg, ag = np.meshgrid(polar, azim, indexing="ij")
    nvec = np.stack(
        [np.sin(pg) * np.cos(ag), np.sin(pg) * np.sin(ag), np.cos(pg)], axis=-1
    )
    return nvec.reshape(-1, 3), pg.ravel(), ag.ravel()


def _canonical_angles(polar: float, azimuth: float) -> tuple[float, float]:
    polar = float(polar) % (2.0 * np.pi)
    if polar > np.pi:
        polar = 2.0 * np.pi - polar
        azimuth = azimuth + np.pi
    azimuth = float(azimuth) % (2.0 * np.pi)
    if azimuth >= 2.0 * np.pi:  # float modulo can round up to the period
        azimuth = 0.0
    return polar, azimuth


def _minimize_conditional_entropy(rho: DensityMatrix, measured: int):
    """Two-stage minimization: vectorized coarse grid, then Nelder-Mead.

    Returns (value, BlochDirection, objective evaluations). Both stages are
    deterministic.
    """
    if len(rho.qubit_dims) != 2:
        raise ValueError(f"state is not bipartite: qubit_dims = {rho.qubit_dims}")
    if measured not in (0, 1):
        raise ValueError(f"measured subsystem index must be 0 or 1, got {measured}")
    if rho.qubit_dims[measured] != 1:
        raise ValueError("measured subsystem must be a single qubit")

    r, k = _measurement_blocks(rho, measured)

    def objective(angles) -> float:
        pol, az = angles
        sp = np.sin(pol)
        n = np.array([sp * np.cos(az), sp * np.sin(az), np.cos(pol)])
        m = np.tensordot(n, k, axes=1)
        mu = np.linalg.eigvalsh(np.stack([(r + m) / 2.0, (r - m) / 2.0]))
        return float(_weighted_entropy(mu).sum())

    nvec, polars, azims = _grid_directions()
    m_all = np.einsum("gk,kab->gab", nvec, k)
    blocks = np.stack([(r + m_all) / 2.0, (r - m_all) / 2.0], axis=1)
    mu = np.linalg.eigvalsh(blocks)
    grid_vals = _weighted_entropy(mu).sum(axis=1)
    best = int(np.argmin(grid_vals))
    evals = len(grid_vals)

    counter = [0]

    def counted(angles):
        counter[0] += 1
        return objective(angles)

    res = minimize(
        counted,
        x0=np.array([polars[best], azims[best]]),
        method="Nelder-Mead",
        options={"xatol": 1e-7, "fatol": OBJECTIVE_TOL * 1e-2, "maxiter": 500},
    )
    evals += counter[0]
    if res.fun <= grid_vals[best]:
        value, (pol, az) = float(res.fun), res.x
    else:
        value, (pol, az) = float(grid_vals[best]), (polars[best], azims[best])
    pol, az = _canonical_angles(pol, az)
    return value, BlochDirection(pol, az), evals


def min_conditional_entropy(rho: DensityMatrix, measured: int):
    """Minimum average entropy of the unmeasured side over projective
    measurements on the measured qubit, with the achieving direction."""
    value, direction, _ = _minimize_conditional_entropy(rho, measured)
    return value, direction


def _discord_detail(rho: DensityMatrix, measured: int):
    other = 1 - measured
    info = mutual_information(rho)
    h_other = vn_entropy(partial_trace(rho, other))
    h_min, direction, evals = _minimize_conditional_entropy(rho, measured)
    return info - (h_other - h_min), direction, evals


def discord(rho: DensityMatrix, direction: str) -> float:
    """Quantum discord I - J in bits for the given measurement side.

    measure_control measures subsystem 0, measure_register subsystem 1; the
    measured subsystem must be a single qubit.
    """
    if direction == MEASURE_CONTROL:
        measured = 0
    elif direction == MEASURE_REGISTER:
        measured = 1
    else:
        raise ValueError(
            f"direction must be {MEASURE_CONTROL!r} or {MEASURE_REGISTER!r}, got {direction!r}"
        )
    value, _, _ = _discord_detail(rho, measured)
    return value


def concurrence(rho: DensityMatrix) -> float:
    """Wootters spin-flip concurrence of a two-qubit state."""
    if rho.dim != 4:
        raise ValueError(f"concurrence requires a two-qubit state, got dim {rho.dim}")
    yy = np.kron(SIGMA_Y, SIGMA_Y)
    rt = rho.entries @ yy @ rho.entries.conj() @ yy
    lam = np.linalg.eigvals(rt)
    # eigenvalues of rho rho~ are real and nonnegative up to round-off
    lam = np.sqrt(np.clip(np.sort(lam.real)[::-1], 0.0, None))
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def tangle(rho: DensityMatrix) -> float:
    """Concurrence squared."""
    return concurrence(rho) ** 2


def correlation_report(rho: DensityMatrix) -> CorrelationReport:
    """Full correlation analysis of a two-qubit state."""
    if rho.qubit_dims != (1, 1):
        rho = repartition(rho, (1, 1))
    info = mutual_information(rho)
    d_rc, direction, evals_c = _discord_detail(rho, 0)
    d_cr, _, evals_r = _discord_detail(rho, 1)
    return CorrelationReport(
        mutual_info=info,
        discord_rc=d_rc,
        discord_cr=d_cr,
        tangle=tangle(rho),
        argmin_direction=direction,
        optimizer_evals=evals_c + evals_r,
    )
