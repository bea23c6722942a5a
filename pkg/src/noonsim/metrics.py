"""Entanglement and overlap quantities for two-qubit states.

Conventions: negativity is ||rho^T2||_1 - 1 (twice the absolute sum of
negative partial-transpose eigenvalues), so a Bell state scores 1 and, for
Bell-mixture states, negativity numerically equals concurrence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import DensityMatrix, TWO_QUBIT_BASIS

_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(_Y, _Y)

EIG_CLIP = -1e-9


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        m = rho.matrix
    else:
        m = np.asarray(rho, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square density matrix")
    # tolerate reconstruction noise: work with the Hermitian part
    return (m + m.conj().T) / 2.0


def _require_two_qubit(m: np.ndarray) -> None:
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 two-qubit state, got {m.shape}")


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(m)
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit state.

    max(0, l1 - l2 - l3 - l4) where the l_i are the decreasing square roots
    of the eigenvalues of rho (Y x Y) rho* (Y x Y).
    """
    m = _as_matrix(rho)
    _require_two_qubit(m)
    tilde = _YY @ m.conj() @ _YY
    s = _psd_sqrt(m)
    vals = np.linalg.eigvalsh(s @ tilde @ s)
    if vals.min() < EIG_CLIP:
        raise ValueError("state is too far from positive semidefinite")
    # eigenvalues at the numerical noise floor are exact zeros of the
    # product; without the floor the square root amplifies them to ~1e-8
    floor = 1e-13 * max(vals.max(), 0.0)
    vals = np.where(vals < floor, 0.0, vals)
    lam = np.sqrt(np.clip(vals, 0.0, None))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def partial_transpose(rho) -> np.ndarray:
    """Transpose of the second qubit's indices."""
    m = _as_matrix(rho)
    _require_two_qubit(m)
    r = m.reshape(2, 2, 2, 2)
    return r.transpose(0, 3, 2, 1).reshape(4, 4)


def negativity(rho) -> float:
    """||rho^T2||_1 - 1: twice the absolute sum of negative eigenvalues of
    the partial transpose over the second arm."""
    vals = np.linalg.eigvalsh(partial_transpose(rho))
    return float(2.0 * sum(-v for v in vals if v < 0.0))


def fidelity_to_pure(rho, target: np.ndarray) -> float:
    """<psi| rho |psi> for a normalized pure target of matching dimension."""
    m = _as_matrix(rho)
    v = np.asarray(target, dtype=complex)
    if v.shape != (m.shape[0],):
        raise ValueError("target dimension does not match the state")
    n = np.linalg.norm(v)
    if abs(n - 1.0) > 1e-9:
        raise ValueError("target state must be normalized")
    return float(np.real(v.conj() @ m @ v))


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2."""
    a = _as_matrix(rho)
    b = _as_matrix(sigma)
    sa = _psd_sqrt(a)
    inner = _psd_sqrt(sa @ b @ sa)
    return float(np.real(np.trace(inner)) ** 2)


def purity(rho) -> float:
    """tr(rho^2)."""
    m = _as_matrix(rho)
    return float(np.real(np.trace(m @ m)))


def trace_distance(rho, sigma) -> float:
    """(1/2) ||rho - sigma||_1."""
    d = _as_matrix(rho) - _as_matrix(sigma)
    vals = np.linalg.eigvalsh(d)
    return float(0.5 * np.sum(np.abs(vals)))


# Bell-like targets in the ++, +-, -+, -- helicity basis.
def bell_phi(sign: int = +1) -> np.ndarray:
    """(|++> ± |-->)/sqrt(2); the two-qubit images of the NOON states."""
    v = np.zeros(4, dtype=complex)
    v[0] = 1.0
    v[3] = float(sign)
    return v / np.sqrt(2.0)


def bell_psi(sign: int = +1) -> np.ndarray:
    """(|+-> ± |-+>)/sqrt(2); the + case is the image of the "zero" state."""
    v = np.zeros(4, dtype=complex)
    v[1] = 1.0
    v[2] = float(sign)
    return v / np.sqrt(2.0)


@dataclass(frozen=True)
class MetricReport:
    """Entanglement summary of a reconstructed or modeled two-qubit state."""

    concurrence: float
    negativity: float
    fidelity: float
    purity: float
    target_label: str = ""

    def __post_init__(self):
        slack = 1e-9
        for name in ("concurrence", "negativity", "fidelity", "purity"):
            v = getattr(self, name)
            if not -slack <= v <= 1.0 + slack:
                raise ValueError(f"{name} = {v} outside [0, 1]")


def metric_report(rho, target: np.ndarray, target_label: str = "") -> MetricReport:
    return MetricReport(
        concurrence=concurrence(rho),
        negativity=negativity(rho),
        fidelity=fidelity_to_pure(rho, target),
        purity=purity(rho),
        target_label=target_label,
    )
