"""Photon-pair source: SPDC pair with relative delay, state selection, noise.

The pair is generated with orthogonal linear polarizations (H and V) in
fundamental (l = 0) spatial modes.  A birefringent delay controls the
temporal overlap gamma of the two photons; the delayed photon's temporal
mode is decomposed over an orthonormal basis as

    |t_2> = gamma |t_1> + sqrt(1 - gamma^2) |t_perp>

so partial distinguishability is an explicit basis decomposition, never a
non-orthogonal stored mode.  A half-wave plate followed by a q=1/2 q-plate
converts the pair into the m = 0 helicity subspace; under this package's
conventions hwp(0) selects the mirror-antisymmetric "minus" state and
hwp(pi/8) the "plus" state.  Residual experimental impurity is modeled as a
single incoherent admixture of the "zero" state with weight 1 - noise_lambda.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .elements import hwp, qplate, QPlateSpec, temporal_overlap
from .fock import (
    Mode,
    StateMixture,
    TwoPhotonState,
    apply_single_photon_map,
    basis_state,
    mix,
)

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SourceModel:
    """Pair source parameters.

    visibility : two-photon interference visibility ceiling V in [0, 1]
    sigma_tau : temporal width of the overlap Gaussian (seconds)
    delay : birefringent delay tau between the two photons (seconds)
    noise_lambda : weight of the intended pure state; the remainder is an
        incoherent "zero"-state admixture
    pair_flux : expected detected pairs per second (bookkeeping only)
    """

    visibility: float = 0.9
    sigma_tau: float = 100e-15
    delay: float = 0.0
    noise_lambda: float = 1.0
    pair_flux: float = 1000.0

    def __post_init__(self):
        if not 0.0 <= self.visibility <= 1.0:
            raise ValueError("visibility must lie in [0, 1]")
        if self.sigma_tau <= 0.0:
            raise ValueError("sigma_tau must be positive")
        if not 0.0 <= self.noise_lambda <= 1.0:
            raise ValueError("noise_lambda must lie in [0, 1]")
        if self.pair_flux < 0.0:
            raise ValueError("pair_flux must be non-negative")


def _ell_zero_linear_ops(gamma: float) -> list[tuple[complex, Mode, Mode]]:
    """Operator terms of a_H,0^† (gamma a_V,0^† + sqrt(1-g^2) a_V,1^†) |0>.

    H and V photons are expanded over the helicity modes of the l = 0 sector:
    a_H^† = (a_R^† + a_L^†)/sqrt(2), a_V^† = i (a_R^† - a_L^†)/sqrt(2), with
    R the (m=+1, helicity=+1) mode and L the (m=-1, helicity=-1) mode.
    """
    terms = []
    weights = [(gamma, 0)]
    resid = 1.0 - gamma * gamma
    if resid > 0.0:
        weights.append((math.sqrt(resid), 1))
    for w, t_v in weights:
        if w == 0.0:
            continue
        for h_sign, h_mode in ((1.0, Mode(+1, +1, 0)), (1.0, Mode(-1, -1, 0))):
            for v_sign, v_mode in ((1.0j, Mode(+1, +1, t_v)), (-1.0j, Mode(-1, -1, t_v))):
                c = w * h_sign * v_sign / 2.0
                terms.append((c, h_mode, v_mode))
    return terms


def spdc_pair(source: SourceModel, gamma: float | None = None) -> TwoPhotonState:
    """Down-converted photon pair with the source's temporal overlap.

    ``gamma`` overrides the overlap computed from the delay (used for exact
    asymptotes in delay scans).
    """
    if gamma is None:
        gamma = temporal_overlap(source.delay, source)
    state = TwoPhotonState.from_operator_terms(_ell_zero_linear_ops(gamma))
    return state.unit()


def prepare_state(
    prep, source: SourceModel, gamma: float | None = None
) -> StateMixture:
    """Prepared input mixture: selected coherent state plus noise admixture.

    ``prep`` is either the half-wave-plate angle in radians (the plate is
    followed by a forward q = 1/2 q-plate) or an explicit ordered chain of
    single-photon maps replacing that default pair.  The incoherent "zero"
    component is mixed in at weight 1 - noise_lambda.
    """
    coherent = prepare_coherent(prep, source, gamma)
    lam = source.noise_lambda
    if lam >= 1.0:
        return mix([(1.0, coherent)])
    return mix([(lam, coherent), (1.0 - lam, basis_state("zero"))])


def prepare_coherent(
    prep, source: SourceModel, gamma: float | None = None
) -> TwoPhotonState:
    """Coherent part of the prepared state (no noise admixture)."""
    if isinstance(prep, (int, float)):
        chain = [hwp(float(prep)), qplate(QPlateSpec(0.5, "forward"))]
    else:
        chain = list(prep)
    state = spdc_pair(source, gamma)
    for element in chain:
        state = apply_single_photon_map(state, element)
    return state.unit()


# Canonical half-wave-plate angles selecting the two NOON states.
HWP_MINUS = 0.0
HWP_PLUS = math.pi / 8
