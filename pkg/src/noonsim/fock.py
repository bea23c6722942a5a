"""Bosonic two-photon states over (m, helicity, temporal) photon modes.

States are stored in the orthonormal occupation basis over unordered mode
pairs: an amplitude ``c`` on a pair of distinct modes (mu, nu) stands for
``c * a_mu^† a_nu^† |0>``, and on a doubly occupied mode for
``c * (a_mu^†)^2 / sqrt(2) |0>``.  Every stored amplitude then contributes
|c|^2 to the squared norm, so norms and inner products are plain sums.

The sqrt(2) of a doubly occupied creation-operator product is handled once,
here, in the conversions between operator products and occupation amplitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence, Union

import numpy as np

SQRT2 = math.sqrt(2.0)

# Two-qubit computational basis used everywhere downstream.  Helicity +1 is
# the first single-qubit basis vector.
TWO_QUBIT_BASIS = ("++", "+-", "-+", "--")


class UnsupportedModeError(ValueError):
    """A single-photon map was applied to a mode outside its domain."""


@dataclass(frozen=True, order=True)
class Mode:
    """One photon's quantum numbers.

    m : total angular momentum (orbital + spin) in units of hbar
    helicity : spin projection along propagation, +1 or -1
    temporal : index into an orthonormal temporal-mode basis
    """

    m: int
    helicity: int
    temporal: int = 0

    def __post_init__(self):
        if self.helicity not in (+1, -1):
            raise ValueError(f"helicity must be +1 or -1, got {self.helicity}")
        if self.temporal < 0:
            raise ValueError("temporal index must be non-negative")

    @property
    def orbital(self) -> int:
        """Orbital angular momentum l = m - helicity."""
        return self.m - self.helicity


PairKey = tuple[Mode, Mode]


def _pair(mu: Mode, nu: Mode) -> PairKey:
    return (mu, nu) if mu <= nu else (nu, mu)


@dataclass(frozen=True)
class TwoPhotonState:
    """Symmetrized two-photon amplitude vector over unordered mode pairs.

    May be sub-normalized; then the squared norm is the relative
    post-selection weight of the state.
    """

    amps: Mapping[PairKey, complex]
    normalized: bool = False

    def __post_init__(self):
        clean = {}
        for (mu, nu), c in self.amps.items():
            c = complex(c)
            if c != 0:
                clean[_pair(mu, nu)] = c
        object.__setattr__(self, "amps", clean)
        if self.normalized:
            n2 = self.norm_sq()
            if abs(n2 - 1.0) > 1e-12:
                raise ValueError(f"state flagged normalized but |psi|^2 = {n2!r}")

    def norm_sq(self) -> float:
        return float(sum(abs(c) ** 2 for c in self.amps.values()))

    def modes(self) -> set[Mode]:
        out = set()
        for mu, nu in self.amps:
            out.add(mu)
            out.add(nu)
        return out

    def scaled(self, z: complex) -> "TwoPhotonState":
        return TwoPhotonState({k: z * c for k, c in self.amps.items()})

    def plus(self, other: "TwoPhotonState") -> "TwoPhotonState":
        amps = dict(self.amps)
        for k, c in other.amps.items():
            amps[k] = amps.get(k, 0.0) + c
        return TwoPhotonState(amps)

    def unit(self) -> "TwoPhotonState":
        n = math.sqrt(self.norm_sq())
        if n == 0.0:
            raise ValueError("cannot normalize the zero state")
        return TwoPhotonState({k: c / n for k, c in self.amps.items()}, normalized=True)

    def to_operator_terms(self) -> list[tuple[complex, Mode, Mode]]:
        """Expand into creation-operator products c * a_mu^† a_nu^† |0>."""
        terms = []
        for (mu, nu), c in self.amps.items():
            if mu == nu:
                terms.append((c / SQRT2, mu, nu))
            else:
                terms.append((c, mu, nu))
        return terms

    @staticmethod
    def from_operator_terms(
        terms: Iterable[tuple[complex, Mode, Mode]]
    ) -> "TwoPhotonState":
        """Collect creation-operator products back into occupation amplitudes."""
        ops: dict[PairKey, complex] = {}
        for c, mu, nu in terms:
            key = _pair(mu, nu)
            ops[key] = ops.get(key, 0.0) + complex(c)
        amps = {}
        for (mu, nu), c in ops.items():
            amps[(mu, nu)] = c * SQRT2 if mu == nu else c
        return TwoPhotonState(amps)


def inner(a: TwoPhotonState, b: TwoPhotonState) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    keys = a.amps.keys() & b.amps.keys()
    return complex(sum(a.amps[k].conjugate() * b.amps[k] for k in keys))


def state_fidelity(a: TwoPhotonState, b: TwoPhotonState) -> float:
    """|<a|b>|^2 for normalized pure states."""
    return abs(inner(a, b)) ** 2


_PLUS_MODE = Mode(m=0, helicity=+1, temporal=0)
_MINUS_MODE = Mode(m=0, helicity=-1, temporal=0)

BASIS_KINDS = ("plus", "minus", "zero")


def basis_state(kind: str, temporal: int = 0) -> TwoPhotonState:
    """One of the three two-photon basis states of the m = 0 subspace.

    "plus"/"minus" are the two-photon NOON states with +/- relative phase
    between the doubly occupied helicity modes; "minus" is the unique
    mirror-antisymmetric one.  "zero" has one photon in each helicity mode.
    """
    p = Mode(0, +1, temporal)
    m = Mode(0, -1, temporal)
    if kind == "plus":
        return TwoPhotonState({(p, p): 1 / SQRT2, (m, m): 1 / SQRT2}, normalized=True)
    if kind == "minus":
        return TwoPhotonState({(p, p): 1 / SQRT2, (m, m): -1 / SQRT2}, normalized=True)
    if kind == "zero":
        return TwoPhotonState({_pair(p, m): 1.0}, normalized=True)
    raise ValueError(f"unknown basis state kind {kind!r}; expected one of {BASIS_KINDS}")


# ---------------------------------------------------------------------------
# Single-photon maps


@dataclass(frozen=True)
class SinglePhotonMap:
    """Linear map on the single-photon mode space.

    ``action(mode)`` returns the image of a_mode^† as a dict
    {output mode: coefficient}.  Raises UnsupportedModeError outside the
    declared domain.  ``matrix`` carries the 2x2 helicity-basis action when
    the map has one (wave plates, polarizers, helicity mixers), for
    unitarity / idempotency checks.
    """

    label: str
    action: Callable[[Mode], dict[Mode, complex]] = field(compare=False)
    matrix: np.ndarray | None = field(default=None, compare=False)

    def apply(self, mode: Mode) -> dict[Mode, complex]:
        return self.action(mode)


def compose(outer: SinglePhotonMap, inner_map: SinglePhotonMap) -> SinglePhotonMap:
    """Map applying ``inner_map`` first, then ``outer``."""

    def act(mode: Mode) -> dict[Mode, complex]:
        out: dict[Mode, complex] = {}
        for mid, c1 in inner_map.apply(mode).items():
            for fin, c2 in outer.apply(mid).items():
                out[fin] = out.get(fin, 0.0) + c1 * c2
        return out

    mat = None
    if outer.matrix is not None and inner_map.matrix is not None:
        mat = outer.matrix @ inner_map.matrix
    return SinglePhotonMap(f"{outer.label}∘{inner_map.label}", act, mat)


def apply_single_photon_map(
    state: TwoPhotonState, sp_map: SinglePhotonMap
) -> TwoPhotonState:
    """Apply a single-photon map to both creation operators of the state.

    Bilinear and exact; the output may be unnormalized (e.g. for projective
    or lossy maps).
    """
    out_terms: list[tuple[complex, Mode, Mode]] = []
    for c, mu, nu in state.to_operator_terms():
        img_mu = sp_map.apply(mu)
        img_nu = sp_map.apply(nu)
        for rho, a in img_mu.items():
            for sig, b in img_nu.items():
                out_terms.append((c * a * b, rho, sig))
    return TwoPhotonState.from_operator_terms(out_terms)


# ---------------------------------------------------------------------------
# Mixtures


@dataclass(frozen=True)
class StateMixture:
    """Incoherent mixture of normalized two-photon states."""

    components: tuple[tuple[float, TwoPhotonState], ...]

    def __post_init__(self):
        w = sum(weight for weight, _ in self.components)
        if abs(w - 1.0) > 1e-10:
            raise ValueError(f"mixture weights sum to {w!r}, expected 1")
        for weight, state in self.components:
            if weight < 0:
                raise ValueError("mixture weights must be non-negative")
            if abs(state.norm_sq() - 1.0) > 1e-10:
                raise ValueError("mixture components must be normalized")


def mix(components: Sequence[tuple[float, TwoPhotonState]]) -> StateMixture:
    """Build a mixture, renormalizing the weights to sum to one."""
    total = float(sum(w for w, _ in components))
    if total <= 0.0:
        raise ValueError("mixture needs at least one positive weight")
    return StateMixture(
        tuple((w / total, s) for w, s in components if w > 0.0)
    )


def as_mixture(obj: Union[TwoPhotonState, StateMixture]) -> StateMixture:
    if isinstance(obj, StateMixture):
        return obj
    return StateMixture(((1.0, obj),))


# ---------------------------------------------------------------------------
# Density matrices


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian positive-semidefinite operator with unit (or recorded) trace.

    ``basis`` carries human-readable labels for rows/columns.  When the
    matrix describes a conditional (post-selected) state, the selection
    probability is recorded in ``conditional_weight`` rather than folded
    into the trace.
    """

    matrix: np.ndarray
    basis: tuple[str, ...]
    conditional_weight: float | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        if len(self.basis) != m.shape[0]:
            raise ValueError("basis labels must match matrix dimension")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def validate(self, *, herm_atol=1e-10, eig_atol=1e-9, trace_atol=1e-10) -> None:
        m = self.matrix
        if np.max(np.abs(m - m.conj().T)) > herm_atol:
            raise ValueError("density matrix is not Hermitian")
        eigs = np.linalg.eigvalsh((m + m.conj().T) / 2)
        if eigs.min() < -eig_atol:
            raise ValueError(f"density matrix has negative eigenvalue {eigs.min()}")
        tr = float(np.real(np.trace(m)))
        if self.conditional_weight is None:
            if abs(tr - 1.0) > trace_atol:
                raise ValueError(f"trace {tr} is not 1")
        else:
            if tr > 1.0 + trace_atol:
                raise ValueError(f"conditional trace {tr} exceeds 1")

    @staticmethod
    def from_pure(vector: np.ndarray, basis: tuple[str, ...]) -> "DensityMatrix":
        v = np.asarray(vector, dtype=complex)
        v = v / np.linalg.norm(v)
        return DensityMatrix(np.outer(v, v.conj()), basis)


def pair_basis_labels(pairs: Sequence[PairKey]) -> tuple[str, ...]:
    def lab(mode: Mode) -> str:
        sign = "+" if mode.helicity > 0 else "-"
        return f"(m={mode.m},{sign},t={mode.temporal})"

    return tuple(f"{lab(mu)}{lab(nu)}" for mu, nu in pairs)


def state_vector_in_pair_basis(
    state: TwoPhotonState, pairs: Sequence[PairKey]
) -> np.ndarray:
    index = {k: i for i, k in enumerate(pairs)}
    v = np.zeros(len(pairs), dtype=complex)
    for k, c in state.amps.items():
        if k not in index:
            raise ValueError(f"state has support outside the given pair basis: {k}")
        v[index[k]] = c
    return v


# ---------------------------------------------------------------------------
# Reduction to the effective two-qubit picture

_POL_INDEX = {+1: 0, -1: 1}


def _arm_amplitudes(state: TwoPhotonState) -> dict[tuple, complex]:
    """Coincidence branch of a 50:50 splitter, one photon per output arm.

    Each input creation operator splits as a^† -> (u^† + d^†)/sqrt(2); keeping
    the one-photon-per-arm terms gives, per unordered input pair:

        |1_mu 1_nu>  ->  (|mu>_u |nu>_d + |nu>_u |mu>_d) / 2
        |2_mu>       ->  |mu>_u |mu>_d / sqrt(2)

    Arm photons are keyed by (helicity, temporal); m must be 0 throughout.
    """
    amp: dict[tuple, complex] = {}
    for (mu, nu), c in state.amps.items():
        if mu.m != 0 or nu.m != 0:
            raise ValueError(
                "two-qubit reduction requires support on the m=0 subspace only"
            )
        a = (mu.helicity, mu.temporal)
        b = (nu.helicity, nu.temporal)
        if mu == nu:
            key = (a, b)
            amp[key] = amp.get(key, 0.0) + c / SQRT2
        else:
            for key, v in (((a, b), c / 2), ((b, a), c / 2)):
                amp[key] = amp.get(key, 0.0) + v
    return amp


def _two_qubit_unnormalized(state: TwoPhotonState) -> tuple[np.ndarray, float]:
    """(unnormalized 4x4 rho with temporal labels traced out, coincidence prob)."""
    amp = _arm_amplitudes(state)
    p_coinc = float(sum(abs(v) ** 2 for v in amp.values()))
    rho = np.zeros((4, 4), dtype=complex)
    # group amplitudes by the traced-out temporal labels
    by_temporal: dict[tuple[int, int], np.ndarray] = {}
    for ((p1, t1), (p2, t2)), v in amp.items():
        vec = by_temporal.setdefault((t1, t2), np.zeros(4, dtype=complex))
        vec[2 * _POL_INDEX[p1] + _POL_INDEX[p2]] += v
    for vec in by_temporal.values():
        rho += np.outer(vec, vec.conj())
    return rho, p_coinc


def to_two_qubit(
    obj: Union[TwoPhotonState, StateMixture]
) -> tuple[DensityMatrix, float]:
    """Two-qubit state conditioned on one photon per splitter output arm.

    Basis order ++, +-, -+, -- with helicity +1 first.  Temporal labels are
    traced out (coarse detector timing).  Also returns the coincidence
    post-selection probability, which is exactly 1/2 for any normalized
    two-photon input.
    """
    rho = np.zeros((4, 4), dtype=complex)
    p_total = 0.0
    for weight, state in as_mixture(obj).components:
        r, p = _two_qubit_unnormalized(state)
        rho += weight * r
        p_total += weight * p
    if p_total <= 0.0:
        raise ValueError("zero coincidence probability; cannot condition")
    return DensityMatrix(rho / p_total, TWO_QUBIT_BASIS), p_total
