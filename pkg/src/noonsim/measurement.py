"""Coincidence probabilities, delay scans, visibility, count sampling.

The scanned observable of a delay scan is the cross-circular coincidence
rate: arm 1 projected on helicity +1 with arm 2 on -1, summed with the
mirrored pairing, and summed over temporal modes (bucket detectors).  Scans
are normalized by the large-delay asymptote, which is computed analytically
(zero temporal overlap), not sampled.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence, Union

import numpy as np

from .aperture import ApertureCoefficients, aperture_mixture
from .elements import jones_vector, linear_to_helicity
from .fock import DensityMatrix, StateMixture, TwoPhotonState, to_two_qubit
from .source import SourceModel, prepare_state


def seed_sequence(seed) -> np.random.SeedSequence:
    """Coerce ints, None, or SeedSequence children into a SeedSequence."""
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


def arm_projector(spec) -> np.ndarray:
    """Rank-1 single-photon projector in the helicity basis.

    ``spec`` is a polarization label (H, V, D, A, R, L) or a Jones vector in
    the linear basis.
    """
    v = linear_to_helicity(jones_vector(spec))
    return np.outer(v, v.conj())


@dataclass(frozen=True)
class MeasurementSetting:
    """Polarization analysis of the two splitter arms."""

    arm1: object
    arm2: object
    label: str = ""

    def __post_init__(self):
        if not self.label:
            a1 = self.arm1 if isinstance(self.arm1, str) else "custom"
            a2 = self.arm2 if isinstance(self.arm2, str) else "custom"
            object.__setattr__(self, "label", f"{a1}{a2}")

    def operator(self) -> np.ndarray:
        return np.kron(arm_projector(self.arm1), arm_projector(self.arm2))


@dataclass(frozen=True)
class CountRecord:
    """One measured setting: integer counts over a duration."""

    label: str
    counts: int
    duration: float = 1.0
    seed_info: str = ""

    def __post_init__(self):
        if self.counts < 0:
            raise ValueError("counts must be non-negative")


def coincidence_probability(rho, setting: MeasurementSetting) -> float:
    """Born rule tr[(P1 x P2) rho] on the conditional two-qubit state."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    p = np.trace(setting.operator() @ m)
    return float(np.real(p))


_CROSS_SETTINGS = (MeasurementSetting("R", "L"), MeasurementSetting("L", "R"))


@dataclass(frozen=True)
class PipelineOutput:
    """Conditional two-qubit state with its post-selection bookkeeping."""

    rho: DensityMatrix
    coincidence: float
    transmission: float

    @property
    def weight(self) -> float:
        """Absolute probability scale: transmission times coincidence."""
        return self.transmission * self.coincidence


def conditioned_two_qubit(
    source: SourceModel,
    prep,
    coeffs: ApertureCoefficients | None = None,
    gamma: float | None = None,
) -> PipelineOutput:
    """Propagate source -> preparation -> (aperture) -> splitter reduction.

    ``prep`` is a half-wave-plate angle or an explicit element chain, as
    accepted by prepare_state.
    """
    prepared: Union[StateMixture, TwoPhotonState] = prepare_state(prep, source, gamma)
    transmission = 1.0
    if coeffs is not None:
        prepared, transmission = aperture_mixture(prepared, coeffs)
    rho, p_coinc = to_two_qubit(prepared)
    return PipelineOutput(rho, p_coinc, transmission)


def cross_circular_rate(
    source: SourceModel,
    prep,
    coeffs: ApertureCoefficients | None = None,
    gamma: float | None = None,
) -> float:
    """Absolute cross-circular coincidence probability per emitted pair."""
    out = conditioned_two_qubit(source, prep, coeffs, gamma)
    p = sum(coincidence_probability(out.rho, s) for s in _CROSS_SETTINGS)
    return out.weight * p


@dataclass(frozen=True)
class HomScan:
    """Normalized cross-circular rates over a set of delays."""

    delays: np.ndarray
    rates: np.ndarray
    stds: np.ndarray | None
    asymptote: float
    analytic_rates: np.ndarray
    label: str = ""


def hom_scan(
    source: SourceModel,
    prep,
    delays: Sequence[float],
    coeffs: ApertureCoefficients | None = None,
    *,
    pairs_per_point: float | None = None,
    repeats: int = 1,
    seed=None,
    label: str = "",
) -> HomScan:
    """Delay scan of the normalized cross-circular coincidence rate.

    Without sampling the returned rates are the analytic normalized curve.
    With ``pairs_per_point`` they are Poisson count estimates (mean over
    ``repeats`` draws per point, sample std when repeats > 1), normalized by
    the analytic asymptote.
    """
    delays = np.asarray(list(delays), dtype=float)
    asym = cross_circular_rate(source, prep, coeffs, gamma=0.0)
    if asym <= 0.0:
        raise ValueError("zero asymptotic rate: degenerate scan scenario")
    analytic = np.array(
        [
            cross_circular_rate(replace(source, delay=float(tau)), prep, coeffs)
            for tau in delays
        ]
    )
    analytic_norm = analytic / asym
    if pairs_per_point is None:
        return HomScan(delays, analytic_norm, None, asym, analytic_norm, label)

    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    seeds = seed_sequence(seed).spawn(len(delays))
    rates = np.empty(len(delays))
    stds = np.empty(len(delays)) if repeats > 1 else None
    denom = pairs_per_point * asym
    for i, ss in enumerate(seeds):
        rng = np.random.default_rng(ss)
        draws = rng.poisson(pairs_per_point * analytic[i], size=repeats) / denom
        rates[i] = draws.mean()
        if stds is not None:
            stds[i] = draws.std(ddof=1)
    return HomScan(delays, rates, stds, asym, analytic_norm, label)


@dataclass(frozen=True)
class VisibilityResult:
    value: float
    raw: float


def visibility(scan: HomScan) -> VisibilityResult:
    """V = 1 - R(0) of a normalized scan; clipped to [0, 1], raw retained."""
    zeros = np.flatnonzero(scan.delays == 0.0)
    if zeros.size == 0:
        raise ValueError("scan has no zero-delay baseline point")
    raw = 1.0 - float(scan.rates[zeros[0]])
    return VisibilityResult(min(1.0, max(0.0, raw)), raw)


def sample_counts(prob: float, mean_total: float, seed) -> int:
    """Poisson draw with mean prob * mean_total; deterministic under seed.

    ``seed`` may be anything np.random.default_rng accepts, including a
    SeedSequence child for derived streams.
    """
    if not 0.0 <= prob <= 1.0:
        raise ValueError("prob must lie in [0, 1]")
    if mean_total < 0.0:
        raise ValueError("mean_total must be non-negative")
    rng = np.random.default_rng(seed)
    return int(rng.poisson(prob * mean_total))
