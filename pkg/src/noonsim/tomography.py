"""Two-qubit state tomography: settings, inversion, MLE, bootstrap errors.

Scheme: the overcomplete 36-setting set (all pairs of H, V, D, A, R, L per
arm).  Counts are modeled as independent Poisson draws per setting with a
common unknown scale, which is profiled out of the likelihood.  The MLE
search runs over physical states parameterized as rho = T^† T / tr(T^† T)
with T lower triangular (16 real parameters), warm-started from a linear
inversion projected onto the physical cone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy.optimize import minimize

from .fock import DensityMatrix, TWO_QUBIT_BASIS
from .measurement import CountRecord, MeasurementSetting, seed_sequence

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_PAULI_PAIRS = [
    np.kron(_PAULI[i], _PAULI[j]) for i in "IXYZ" for j in "IXYZ"
]

_ARM_LABELS = ("H", "V", "D", "A", "R", "L")
_BASIS_OF = {"H": "HV", "V": "HV", "D": "DA", "A": "DA", "R": "RL", "L": "RL"}

# Lower-triangular parameter layout: 4 real diagonal entries, then
# (re, im) for each strictly lower entry in a fixed order.
_LOWER = [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]


def standard_settings() -> list[MeasurementSetting]:
    """All 36 pairs of the six canonical polarization projectors per arm."""
    return [
        MeasurementSetting(a, b) for a in _ARM_LABELS for b in _ARM_LABELS
    ]


def _setting_operators(settings: Sequence[MeasurementSetting]) -> np.ndarray:
    return np.stack([s.operator() for s in settings])


def setting_probabilities(rho: np.ndarray, settings: Sequence[MeasurementSetting]) -> np.ndarray:
    ops = _setting_operators(settings)
    return np.real(np.einsum("sij,ji->s", ops, rho))


def predicted_counts(
    rho, settings: Sequence[MeasurementSetting], scale: float
) -> np.ndarray:
    """Expected counts scale * tr[(P1 x P2) rho] per setting."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    return scale * setting_probabilities(m, settings)


def _counts_array(counts) -> np.ndarray:
    vals = [c.counts if isinstance(c, CountRecord) else c for c in counts]
    arr = np.asarray(vals, dtype=float)
    if np.any(arr < 0):
        raise ValueError("counts must be non-negative")
    return arr


@dataclass(frozen=True)
class LinearInversionResult:
    """Least-squares estimate; Hermitian and unit trace but possibly with
    negative eigenvalues (flagged via ``is_physical``)."""

    matrix: np.ndarray
    min_eigenvalue: float
    is_physical: bool


def linear_inversion(
    counts, settings: Sequence[MeasurementSetting] | None = None
) -> LinearInversionResult:
    """Least-squares solve for the 16 Pauli coefficients of rho.

    Counts are converted to probabilities within each (basis1, basis2)
    group of four outcomes, so the unknown per-basis scale cancels.
    """
    if settings is None:
        settings = standard_settings()
    n = _counts_array(counts)
    if len(n) != len(settings):
        raise ValueError("counts and settings length mismatch")

    groups: dict[tuple[str, str], list[int]] = {}
    for i, s in enumerate(settings):
        try:
            key = (_BASIS_OF[s.arm1], _BASIS_OF[s.arm2])
        except (KeyError, TypeError):
            raise ValueError(
                "linear inversion needs named polarization settings (H/V/D/A/R/L)"
            ) from None
        groups.setdefault(key, []).append(i)
    probs = np.empty_like(n)
    for idx in groups.values():
        total = n[idx].sum()
        if total <= 0:
            raise ValueError("a measurement basis has zero total counts")
        probs[idx] = n[idx] / total

    ops = _setting_operators(settings)
    design = np.real(
        np.einsum("sij,kji->sk", ops, np.stack(_PAULI_PAIRS)) / 4.0
    )
    if np.linalg.matrix_rank(design) < 16:
        raise ValueError("setting set is rank-deficient, not tomographically complete")
    x, *_ = np.linalg.lstsq(design, probs, rcond=None)
    rho = sum(c * p for c, p in zip(x, _PAULI_PAIRS)) / 4.0
    tr = float(np.real(np.trace(rho)))
    if abs(tr) < 1e-12:
        raise ValueError("degenerate inversion: zero trace estimate")
    rho = rho / tr
    rho = (rho + rho.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(rho)
    return LinearInversionResult(rho, float(eigs.min()), bool(eigs.min() >= 0.0))


def project_to_physical(matrix: np.ndarray, floor: float = 0.0) -> np.ndarray:
    """Clip negative eigenvalues (to ``floor``) and renormalize the trace."""
    m = (np.asarray(matrix, dtype=complex) + np.asarray(matrix).conj().T) / 2.0
    vals, vecs = np.linalg.eigh(m)
    vals = np.clip(vals, floor, None)
    out = (vecs * vals) @ vecs.conj().T
    return out / np.real(np.trace(out))


@dataclass(frozen=True)
class MleOptions:
    max_iterations: int = 5000
    gradient_tol: float = 1e-8
    init_floor: float = 1e-6


@dataclass(frozen=True)
class TomographyResult:
    """Physical MLE state with optimizer diagnostics and bootstrap errors."""

    rho: DensityMatrix
    log_likelihood: float
    iterations: int
    converged: bool
    bootstrap_std: Mapping[str, float] | None = None
    ll_trace: tuple[float, ...] = field(default=())


def _t_from_params(t: np.ndarray) -> np.ndarray:
    T = np.zeros((4, 4), dtype=complex)
    T[np.diag_indices(4)] = t[:4]
    for k, (r, c) in enumerate(_LOWER):
        T[r, c] = t[4 + 2 * k] + 1j * t[5 + 2 * k]
    return T


def _params_from_t(T: np.ndarray) -> np.ndarray:
    t = np.zeros(16)
    t[:4] = np.real(np.diag(T))
    for k, (r, c) in enumerate(_LOWER):
        t[4 + 2 * k] = T[r, c].real
        t[5 + 2 * k] = T[r, c].imag
    return t


def _grad_params_from_wirtinger(G: np.ndarray) -> np.ndarray:
    g = np.zeros(16)
    g[:4] = 2.0 * np.real(np.diag(G))
    for k, (r, c) in enumerate(_LOWER):
        g[4 + 2 * k] = 2.0 * G[r, c].real
        g[5 + 2 * k] = 2.0 * G[r, c].imag
    return g


def mle_reconstruct(
    counts,
    settings: Sequence[MeasurementSetting] | None = None,
    options: MleOptions | None = None,
) -> TomographyResult:
    """Maximum-likelihood reconstruction under the Poisson count model.

    Maximizes sum_s [n_s log(mu_s) - mu_s] with mu_s = N p_s(rho) and the
    overall scale N profiled out analytically.  Deterministic: fixed
    initialization from the projected linear inversion and a BFGS schedule.
    """
    if settings is None:
        settings = standard_settings()
    opts = options or MleOptions()
    n = _counts_array(counts)
    n_total = n.sum()
    if n_total <= 0:
        raise ValueError("all counts are zero; nothing to reconstruct")
    ops = _setting_operators(settings)

    def probs_of(T: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
        rho_un = T.conj().T @ T
        tau = float(np.real(np.trace(rho_un)))
        p = np.real(np.einsum("sij,ji->s", ops, rho_un)) / tau
        return np.maximum(p, 1e-15), rho_un, tau

    def objective(t: np.ndarray) -> tuple[float, np.ndarray]:
        T = _t_from_params(t)
        p, _, tau = probs_of(T)
        p_sum = p.sum()
        f = float(-(n / n_total) @ np.log(p) + math.log(p_sum))
        w = -(n / n_total) / p + 1.0 / p_sum
        wsum = float(w @ p)
        Gmat = np.einsum("s,sij->ij", w, ops)
        G = (T @ Gmat - wsum * T) / tau
        return f, _grad_params_from_wirtinger(G)

    start = linear_inversion(counts, settings).matrix
    rho0 = project_to_physical(start, floor=opts.init_floor)
    T0 = np.linalg.cholesky(rho0).conj().T  # upper; transpose to lower layout
    t0 = _params_from_t(T0.conj().T)

    trace: list[float] = []

    def record(tk):
        f, _ = objective(tk)
        trace.append(-f)

    record(t0)
    res = minimize(
        objective,
        t0,
        jac=True,
        method="BFGS",
        callback=record,
        options={"gtol": opts.gradient_tol, "maxiter": opts.max_iterations},
    )
    T = _t_from_params(res.x)
    p, rho_un, tau = probs_of(T)
    rho = rho_un / tau
    n_hat = n_total / p.sum()
    mu = n_hat * p
    log_l = float(n @ np.log(mu) - mu.sum())
    converged = bool(res.success or np.max(np.abs(res.jac)) < opts.gradient_tol)
    return TomographyResult(
        rho=DensityMatrix(rho, TWO_QUBIT_BASIS),
        log_likelihood=log_l,
        iterations=int(res.nit),
        converged=converged,
        ll_trace=tuple(trace),
    )


@dataclass(frozen=True)
class BootstrapResult:
    stds: Mapping[str, float]
    means: Mapping[str, float]
    n_resamples: int


def bootstrap_errors(
    counts,
    settings: Sequence[MeasurementSetting] | None,
    metric_fns: Mapping[str, Callable[[np.ndarray], float]],
    n_resamples: int,
    seed,
    options: MleOptions | None = None,
) -> BootstrapResult:
    """Parametric bootstrap: Poisson-resample the observed counts, re-run the
    MLE, and report the sample standard deviation of each metric.

    Deterministic under ``seed``; replica results are aggregated from a
    sorted list so the answer is independent of evaluation order.
    """
    if n_resamples < 2:
        raise ValueError("need at least two bootstrap resamples")
    if settings is None:
        settings = standard_settings()
    n = _counts_array(counts)
    values: dict[str, list[float]] = {name: [] for name in metric_fns}
    for child in seed_sequence(seed).spawn(n_resamples):
        rng = np.random.default_rng(child)
        resampled = rng.poisson(n)
        result = mle_reconstruct(resampled, settings, options)
        for name, fn in metric_fns.items():
            values[name].append(float(fn(result.rho.matrix)))
    stds = {}
    means = {}
    for name, vals in values.items():
        ordered = np.sort(np.asarray(vals))
        stds[name] = float(ordered.std(ddof=1))
        means[name] = float(ordered.mean())
    return BootstrapResult(stds, means, n_resamples)
