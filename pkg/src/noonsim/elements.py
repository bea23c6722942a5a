"""Single-photon linear-optics elements as maps on (m, helicity, temporal) modes.

Phase conventions, fixed once for the whole package:

    |R> = (|H> - i|V>)/sqrt(2),  helicity +1 = |R>  (beam along +z)

Retarders with fast axis at angle ``theta`` from H act in the linear basis as
R(theta) diag(1, exp(-i*delta)) R(-theta); delta = pi for a half-wave plate
and pi/2 for a quarter-wave plate.  The convention is locked by one canonical
test: qwp(pi/4) followed by an H polarizer transmits |R> fully.

Wave plates and polarizers preserve the photon's orbital angular momentum
(l = m - helicity); q-plates flip the helicity and shift l by 2*q*helicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import Mode, SinglePhotonMap, UnsupportedModeError

SQRT2 = math.sqrt(2.0)

# Jones vectors in the linear (H, V) basis.
JONES = {
    "H": np.array([1.0, 0.0], dtype=complex),
    "V": np.array([0.0, 1.0], dtype=complex),
    "D": np.array([1.0, 1.0], dtype=complex) / SQRT2,
    "A": np.array([1.0, -1.0], dtype=complex) / SQRT2,
    "R": np.array([1.0, -1.0j], dtype=complex) / SQRT2,
    "L": np.array([1.0, 1.0j], dtype=complex) / SQRT2,
}

# Columns are R and L expressed in the linear basis: maps helicity
# coordinates to linear coordinates.
_C = np.column_stack([JONES["R"], JONES["L"]])
_POL_INDEX = {+1: 0, -1: 1}


def jones_vector(axis) -> np.ndarray:
    """Normalized Jones vector in the linear basis from a label or 2-vector."""
    if isinstance(axis, str):
        try:
            return JONES[axis].copy()
        except KeyError:
            raise ValueError(f"unknown polarization label {axis!r}") from None
    v = np.asarray(axis, dtype=complex)
    if v.shape != (2,):
        raise ValueError("polarization vector must have two components")
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ValueError("zero polarization vector")
    return v / n


def linear_to_helicity(v: np.ndarray) -> np.ndarray:
    """Components (on R, on L) of a linear-basis Jones vector."""
    return _C.conj().T @ np.asarray(v, dtype=complex)


def helicity_matrix_from_linear(u_lin: np.ndarray) -> np.ndarray:
    """Conjugate a linear-basis 2x2 operator into the helicity basis."""
    return _C.conj().T @ np.asarray(u_lin, dtype=complex) @ _C


def orbital_preserving_map(matrix: np.ndarray, label: str) -> SinglePhotonMap:
    """Helicity-space action that leaves the orbital part untouched.

    This is the thin-element (wave plate / polarizer) behaviour: the 2x2
    ``matrix`` is given in the helicity basis, ordered (+1, -1).
    """
    mat = np.asarray(matrix, dtype=complex)

    def act(mode: Mode) -> dict[Mode, complex]:
        ell = mode.orbital
        col = _POL_INDEX[mode.helicity]
        out = {}
        for hel_out, row in ((+1, 0), (-1, 1)):
            c = mat[row, col]
            if c != 0:
                out[Mode(ell + hel_out, hel_out, mode.temporal)] = complex(c)
        return out

    return SinglePhotonMap(label, act, mat)


def tam_preserving_map(
    matrix: np.ndarray, label: str, *, restrict_m: frozenset[int] | None = None
) -> SinglePhotonMap:
    """Helicity-space action at fixed total angular momentum m.

    Used for structures that conserve m while mixing helicity (the
    nanoaperture).  ``restrict_m`` limits the declared domain.
    """
    mat = np.asarray(matrix, dtype=complex)

    def act(mode: Mode) -> dict[Mode, complex]:
        if restrict_m is not None and mode.m not in restrict_m:
            raise UnsupportedModeError(
                f"{label}: mode with m={mode.m} outside domain {sorted(restrict_m)}"
            )
        col = _POL_INDEX[mode.helicity]
        out = {}
        for hel_out, row in ((+1, 0), (-1, 1)):
            c = mat[row, col]
            if c != 0:
                out[Mode(mode.m, hel_out, mode.temporal)] = complex(c)
        return out

    return SinglePhotonMap(label, act, mat)


def _rot(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def wave_plate(theta: float, retardance: float, label: str) -> SinglePhotonMap:
    """Retarder with fast axis at ``theta`` (radians from H)."""
    u_lin = _rot(theta) @ np.diag([1.0, np.exp(-1j * retardance)]) @ _rot(-theta)
    return orbital_preserving_map(helicity_matrix_from_linear(u_lin), label)


def hwp(theta: float) -> SinglePhotonMap:
    """Half-wave plate; in the linear basis R(theta) diag(1, -1) R(-theta)."""
    return wave_plate(theta, math.pi, f"hwp({theta:g})")


def qwp(theta: float) -> SinglePhotonMap:
    """Quarter-wave plate; qwp(pi/4) + H polarizer projects onto |R>."""
    return wave_plate(theta, math.pi / 2, f"qwp({theta:g})")


def polarizer(axis) -> SinglePhotonMap:
    """Rank-1 polarization projector onto ``axis`` (label or Jones vector)."""
    v = linear_to_helicity(jones_vector(axis))
    proj = np.outer(v, v.conj())
    name = axis if isinstance(axis, str) else "custom"
    return orbital_preserving_map(proj, f"polarizer({name})")


@dataclass(frozen=True)
class QPlateSpec:
    """Topological charge and traversal direction of a q-plate."""

    q: float
    direction: str = "forward"

    def __post_init__(self):
        if abs(2 * self.q - round(2 * self.q)) > 1e-12:
            raise ValueError("2q must be an integer")
        if self.direction not in ("forward", "reverse"):
            raise ValueError("direction must be 'forward' or 'reverse'")


def qplate(spec: QPlateSpec) -> SinglePhotonMap:
    """q-plate: flips helicity and shifts the orbital part by 2*q*helicity.

    l_out = l_in + 2*q*helicity_in, helicity_out = -helicity_in.  With this
    convention the map is its own inverse, so 'reverse' undoes 'forward' on
    every tracked mode.
    """
    two_q = round(2 * spec.q)

    def act(mode: Mode) -> dict[Mode, complex]:
        ell_out = mode.orbital + two_q * mode.helicity
        hel_out = -mode.helicity
        return {Mode(ell_out + hel_out, hel_out, mode.temporal): 1.0}

    return SinglePhotonMap(f"qplate(q={spec.q},{spec.direction})", act)


def element_from_spec(spec: dict) -> SinglePhotonMap:
    """Build an element from its scenario-file description.

    Wire format, one dict per element: {"element": "hwp"|"qwp", "angle_deg": x},
    {"element": "polarizer", "axis": "H"|...|[re, im] pair list}, or
    {"element": "qplate", "q": 0.5, "direction": "forward"|"reverse"}.
    """
    if not isinstance(spec, dict) or "element" not in spec:
        raise ValueError("element spec must be a dict with an 'element' key")
    kind = spec["element"]
    if kind in ("hwp", "qwp"):
        angle = spec.get("angle_deg")
        if not isinstance(angle, (int, float)):
            raise ValueError(f"{kind}: angle_deg must be a number")
        theta = math.radians(float(angle))
        return hwp(theta) if kind == "hwp" else qwp(theta)
    if kind == "polarizer":
        axis = spec.get("axis")
        if isinstance(axis, (list, tuple)) and len(axis) == 2:
            if all(isinstance(v, (list, tuple)) and len(v) == 2 for v in axis):
                axis = np.array([complex(v[0], v[1]) for v in axis])
            else:
                axis = np.asarray(axis, dtype=complex)
        elif not isinstance(axis, str):
            raise ValueError("polarizer: axis must be a label or a 2-vector")
        return polarizer(axis)
    if kind == "qplate":
        q = spec.get("q")
        if not isinstance(q, (int, float)):
            raise ValueError("qplate: q must be a number")
        return qplate(QPlateSpec(float(q), spec.get("direction", "forward")))
    raise ValueError(f"unknown element kind {kind!r}")


def chain_from_specs(specs) -> list[SinglePhotonMap]:
    """Ordered element chain from a scenario-file list."""
    return [element_from_spec(s) for s in specs]


def temporal_overlap(tau: float, source) -> float:
    """Amplitude overlap gamma(tau) of the two photons' temporal modes.

    Gaussian spectral model: gamma(tau) = gamma0 * exp(-tau^2 / (4 sigma^2))
    with gamma0 = sqrt(V), so the interference visibility ceiling at zero
    delay equals the source's V.  ``source`` needs ``visibility`` and
    ``sigma_tau`` attributes.
    """
    sigma = float(source.sigma_tau)
    if sigma <= 0.0:
        raise ValueError("sigma_tau must be positive")
    v = float(source.visibility)
    if not 0.0 <= v <= 1.0:
        raise ValueError("visibility must lie in [0, 1]")
    return math.sqrt(v) * math.exp(-(tau * tau) / (4.0 * sigma * sigma))
