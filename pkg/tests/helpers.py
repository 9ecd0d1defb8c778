"""Shared test utilities: random states and independent brute-force oracles.

The oracles here deliberately avoid the package's optimized code paths
(block reductions, vectorized grids) so they can serve as independent
cross-checks: explicit projectors, dense conjugation, plain loops.
"""

from __future__ import annotations

import numpy as np

from dqc1sim import DensityMatrix
from dqc1sim.clifford import CliffordCircuit, Gate, SignedPauliString

I2 = np.eye(2, dtype=complex)
PX = np.array([[0, 1], [1, 0]], dtype=complex)
PY = np.array([[0, -1j], [1j, 0]], dtype=complex)
PZ = np.array([[1, 0], [0, -1]], dtype=complex)


def random_density_matrix(rng, qubit_dims, rank=None) -> DensityMatrix:
    """Random mixed state from a Ginibre factor (full rank by default)."""
    dim = 2 ** sum(qubit_dims)
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, tuple(qubit_dims))


def random_pure_density(rng, qubit_dims) -> DensityMatrix:
    return random_density_matrix(rng, qubit_dims, rank=1)


def random_unitary(rng, dim) -> np.ndarray:
    """Haar-ish unitary via QR of a Ginibre matrix with phase fixing."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def bell_state() -> DensityMatrix:
    v = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    return DensityMatrix(np.outer(v, v.conj()), (1, 1))


def oracle_min_conditional_entropy(rho: DensityMatrix, measured: int,
                                   n_polar: int = 100, n_azimuth: int = 200) -> float:
    """Brute-force grid minimum of the average post-measurement entropy.

    Uses explicit rank-1 projectors and dense partial traces; independent of
    the production optimizer.
    """
    d0, d1 = rho.subsystem_dims
    other_dim = d1 if measured == 0 else d0
    m = rho.entries
    best = np.inf
    for pol in np.linspace(0.0, np.pi, n_polar):
        for az in np.linspace(0.0, 2 * np.pi, n_azimuth, endpoint=False):
            n = np.array([np.sin(pol) * np.cos(az), np.sin(pol) * np.sin(az), np.cos(pol)])
            proj = (I2 + n[0] * PX + n[1] * PY + n[2] * PZ) / 2.0
            val = 0.0
            for p_op in (proj, I2 - proj):
                full = (np.kron(p_op, np.eye(d1)) if measured == 0
                        else np.kron(np.eye(d0), p_op))
                after = full @ m @ full
                p = float(np.trace(after).real)
                if p < 1e-14:
                    continue
                t = after.reshape(d0, d1, d0, d1)
                cond = (np.einsum("iaib->ab", t) if measured == 0
                        else np.einsum("arbr->ab", t)) / p
                lam = np.clip(np.linalg.eigvalsh(cond), 0.0, None)
                lam = lam[lam > 0]
                val += p * float(-(lam * np.log2(lam)).sum())
            if val < best:
                best = val
    return best


def oracle_discord(rho: DensityMatrix, measured: int, n_polar: int = 100,
                   n_azimuth: int = 200) -> float:
    """Grid-oracle discord: entropies computed from scratch."""
    def entropy(mat):
        lam = np.clip(np.linalg.eigvalsh(mat), 0.0, None)
        lam = lam[lam > 0]
        return float(-(lam * np.log2(lam)).sum())

    d0, d1 = rho.subsystem_dims
    t = rho.entries.reshape(d0, d1, d0, d1)
    rho_c = np.einsum("arbr->ab", t)
    rho_r = np.einsum("iaib->ab", t)
    info = entropy(rho_c) + entropy(rho_r) - entropy(rho.entries)
    h_other = entropy(rho_r if measured == 0 else rho_c)
    hmin = oracle_min_conditional_entropy(rho, measured, n_polar, n_azimuth)
    return info - (h_other - hmin)


def controlled_pauli_circuit(labels: str, phase_power: int) -> CliffordCircuit:
    """Full DQC1 circuit (Hadamard + controlled-U) for U = i^k * Pauli string.

    The control is qubit 0; the i^k phase becomes S^k on the control, and
    each non-identity register factor becomes a controlled X, Y, or Z.
    """
    gates = [Gate("H", (0,))] + [Gate("S", (0,))] * (phase_power % 4)
    for i, lab in enumerate(labels):
        target = i + 1
        if lab == "X":
            gates.append(Gate("CNOT", (0, target)))
        elif lab == "Z":
            gates.append(Gate("CZ", (0, target)))
        elif lab == "Y":
            # CY = (I (x) S^3) CNOT (I (x) S)
            gates += [Gate("S", (target,))] * 3
            gates.append(Gate("CNOT", (0, target)))
            gates.append(Gate("S", (target,)))
    return CliffordCircuit(len(labels) + 1, tuple(gates))


def dense_pauli(labels: str, phase: complex = 1.0) -> np.ndarray:
    m = np.array([[phase]], dtype=complex)
    for c in labels:
        m = np.kron(m, {"I": I2, "X": PX, "Y": PY, "Z": PZ}[c])
    return m


def random_pauli_string(rng, n_qubits: int, allow_identity: bool = True) -> SignedPauliString:
    labels = "".join("IXYZ"[int(k)] for k in rng.integers(0, 4, n_qubits))
    if not allow_identity and set(labels) == {"I"}:
        labels = "Z" + labels[1:]
    return SignedPauliString(1 if rng.random() < 0.5 else -1, labels)
