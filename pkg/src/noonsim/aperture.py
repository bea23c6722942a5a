"""The nanoaperture as a quantum channel on m = 0 two-photon states.

Coherent action per photon (total angular momentum conserved, helicity mixed):

    a_{0,+}^† -> alpha b_{0,+}^† + beta b_{0,-}^†
    a_{0,-}^† -> alpha b_{0,-}^† + beta b_{0,+}^†

alpha and beta are independent complex amplitudes constrained only by
sub-unitarity |alpha|^2 + |beta|^2 <= 1; the channel is conditional on
transmission, so outputs carry their squared norm as post-selection weight.

Dephasing: each helicity flip is tagged by an environment kick whose state
depends only on the parity of the total flip count; eta is the overlap
between the even- and odd-parity environment records.  Tracing the
environment is then exactly a two-branch mixture of the coherent map with
beta and with -beta, at weights (1 ± eta)/2.  This reduces to the pure map
at eta = 1, decoheres the odd-flip sector (the "zero"-state component fed by
one-flip events) from the even sector at eta = 0, and never perturbs the
mirror-antisymmetric state, whose one-flip amplitudes cancel identically and
whose even branches are both proportional to itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Union

import numpy as np

from .elements import tam_preserving_map
from .fock import (
    DensityMatrix,
    PairKey,
    SinglePhotonMap,
    StateMixture,
    TwoPhotonState,
    apply_single_photon_map,
    as_mixture,
    pair_basis_labels,
    state_vector_in_pair_basis,
)

_M0 = frozenset({0})


@dataclass(frozen=True)
class ApertureCoefficients:
    """Transmission amplitudes of the aperture.

    alpha : helicity-preserving amplitude
    beta : helicity-flipping amplitude
    eta : coherence between even- and odd-flip-parity pathways, in [0, 1]
    table : optional per-(m, helicity) amplitudes for mirror-symmetry checks
    """

    alpha: complex
    beta: complex
    eta: float = 1.0
    table: Mapping[tuple[int, int], tuple[complex, complex]] | None = field(
        default=None
    )

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        t = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if t > 1.0 + 1e-12:
            raise ValueError(
                f"|alpha|^2 + |beta|^2 = {t} exceeds 1: transmission above unity"
            )
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError("eta must lie in [0, 1]")


def check_mirror_symmetry(c: ApertureCoefficients) -> bool:
    """True iff the per-(m, helicity) table satisfies a(m,h) = a(-m,-h) and
    b(m,h) = b(-m,-h) exactly.  A scalar coefficient set (no table) is the
    self-mirror m = 0 case and always passes."""
    if c.table is None:
        return True
    for (m, h), (a, b) in c.table.items():
        mirror = c.table.get((-m, -h))
        if mirror is None:
            return False
        am, bm = mirror
        if complex(a) != complex(am) or complex(b) != complex(bm):
            return False
    return True


def single_photon_mixer(alpha: complex, beta: complex) -> SinglePhotonMap:
    """The aperture's single-photon action, restricted to m = 0 modes."""
    mat = np.array([[alpha, beta], [beta, alpha]], dtype=complex)
    return tam_preserving_map(mat, f"aperture(a={alpha:.3g},b={beta:.3g})", restrict_m=_M0)


def aperture_pure(state: TwoPhotonState, c: ApertureCoefficients) -> TwoPhotonState:
    """Coherent (eta-ignored) channel action; output is unnormalized and
    carries its squared norm as conditional transmission weight."""
    return apply_single_photon_map(state, single_photon_mixer(c.alpha, c.beta))


def transmission_probability(state: TwoPhotonState, c: ApertureCoefficients) -> float:
    """Squared norm of the coherent output for a normalized input.

    May transiently exceed 1: bosonic bunching into the doubly mixed |1,1>
    term enhances the conditional weight even under sub-unitary single-photon
    coefficients.
    """
    return aperture_pure(state, c).norm_sq()


def aperture_mixture(
    input_state: Union[TwoPhotonState, StateMixture], c: ApertureCoefficients
) -> tuple[StateMixture, float]:
    """Conditional output mixture and overall two-photon transmission.

    The environment trace leaves a two-branch decomposition per input
    component: the coherent map applied with +beta and with -beta, weighted
    (1 + eta)/2 and (1 - eta)/2.
    """
    c_flip = ApertureCoefficients(c.alpha, -c.beta, c.eta)
    branches: list[tuple[float, TwoPhotonState]] = []
    transmission = 0.0
    for weight, state in as_mixture(input_state).components:
        for coeff, env_w in ((c, (1.0 + c.eta) / 2.0), ((c_flip), (1.0 - c.eta) / 2.0)):
            if env_w == 0.0:
                continue
            out = aperture_pure(state, coeff)
            w = weight * env_w * out.norm_sq()
            if w > 0.0:
                branches.append((w, out.unit()))
                transmission += w
    if not branches:
        raise ValueError("state is fully blocked by the aperture (zero transmission)")
    mixture = StateMixture(tuple((w / transmission, s) for w, s in branches))
    return mixture, transmission


def aperture_channel(
    input_state: Union[TwoPhotonState, StateMixture], c: ApertureCoefficients
) -> tuple[DensityMatrix, float]:
    """Conditional normalized density operator over the m = 0 two-photon
    space, plus the overall transmission probability."""
    mixture, transmission = aperture_mixture(input_state, c)
    pairs: list[PairKey] = sorted(
        {k for _, s in mixture.components for k in s.amps.keys()}
    )
    dim = len(pairs)
    rho = np.zeros((dim, dim), dtype=complex)
    for w, s in mixture.components:
        v = state_vector_in_pair_basis(s, pairs)
        rho += w * np.outer(v, v.conj())
    dm = DensityMatrix(rho, pair_basis_labels(pairs), conditional_weight=transmission)
    return dm, transmission


def channel_fidelity_to_state(
    dm: DensityMatrix, pairs: list[PairKey], target: TwoPhotonState
) -> float:
    """<target| rho |target> for a channel output in the given pair basis."""
    v = state_vector_in_pair_basis(target, pairs)
    return float(np.real(v.conj() @ dm.matrix @ v))


def output_pair_basis(
    input_state: Union[TwoPhotonState, StateMixture], c: ApertureCoefficients
) -> list[PairKey]:
    """Pair basis the channel output density matrix is expressed in."""
    mixture, _ = aperture_mixture(input_state, c)
    return sorted({k for _, s in mixture.components for k in s.amps.keys()})


def jittered_coefficients(
    base: ApertureCoefficients, jitter: float, rng: np.random.Generator
) -> ApertureCoefficients:
    """Fabrication-spread sample: relative Gaussian jitter on |alpha|, |beta|
    and eta, clipped back into the valid parameter region."""
    if jitter < 0.0:
        raise ValueError("jitter must be non-negative")
    fa = max(0.0, 1.0 + jitter * rng.standard_normal())
    fb = max(0.0, 1.0 + jitter * rng.standard_normal())
    fe = max(0.0, 1.0 + jitter * rng.standard_normal())
    alpha = base.alpha * fa
    beta = base.beta * fb
    scale = abs(alpha) ** 2 + abs(beta) ** 2
    if scale > 1.0:
        alpha /= math.sqrt(scale)
        beta /= math.sqrt(scale)
    eta = min(1.0, max(0.0, base.eta * fe))
    return ApertureCoefficients(alpha, beta, eta)
