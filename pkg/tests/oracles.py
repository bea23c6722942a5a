"""Independent oracle implementations used to freeze expected test values.

Everything here is deliberately written from first principles (explicit
operator expansions, dense linear algebra) without reusing the package's
computation paths, so the tests compare two separate derivations.
"""

import itertools
import math

import numpy as np

SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# Bosonic splitter oracle: expand each creation operator into two output arms
# and keep the one-photon-per-arm terms.

def splitter_two_qubit(op_terms):
    """op_terms: list of (coeff, (hel1, t1), (hel2, t2)) creation products.

    Returns (unnormalized 4x4 rho in ++,+-,-+,-- order with temporal labels
    traced, coincidence probability).
    """
    # arm amplitudes: key ((hel_u, t_u), (hel_d, t_d))
    amp = {}
    for c, x, y in op_terms:
        # a_x^† a_y^† -> 1/2 (u_x + d_x)(u_y + d_y); coincidence part:
        # 1/2 (u_x d_y + u_y d_x)
        for u, d in ((x, y), (y, x)):
            key = (u, d)
            amp[key] = amp.get(key, 0.0) + 0.5 * c
    p_coin = sum(abs(v) ** 2 for v in amp.values())
    idx = {+1: 0, -1: 1}
    rho = np.zeros((4, 4), dtype=complex)
    temporal_pairs = {(u[1], d[1]) for u, d in amp}
    for tp in temporal_pairs:
        vec = np.zeros(4, dtype=complex)
        for (u, d), v in amp.items():
            if (u[1], d[1]) == tp:
                vec[2 * idx[u[0]] + idx[d[0]]] += v
        rho += np.outer(vec, vec.conj())
    return rho, p_coin


def occupation_to_op_terms(amps):
    """amps: dict {((hel,t),(hel,t)) sorted pair: amplitude} occupation form."""
    terms = []
    for (x, y), c in amps.items():
        if x == y:
            terms.append((c / SQRT2, x, y))
        else:
            terms.append((c, x, y))
    return terms


# ---------------------------------------------------------------------------
# Explicit environment-branch oracle for the helicity-mixing channel.
# Expand the two-photon operator product branch by branch (no flip / flip per
# operator factor), attach an environment record that depends only on the
# total flip count, with overlap eta between records of opposite parity and
# unit overlap at equal parity, then trace the environment.

def channel_env_branches(amps, alpha, beta, eta):
    """amps: occupation dict over ((hel, t), (hel, t)) m=0 modes.

    Returns (unnormalized rho over the sorted pair basis, transmission,
    pair basis list).
    """
    # collect branch vectors by flip count
    branch_ops = {0: {}, 1: {}, 2: {}}
    for c, x, y in occupation_to_op_terms(amps):
        for fx, fy in itertools.product((0, 1), repeat=2):
            cx = alpha if fx == 0 else beta
            cy = alpha if fy == 0 else beta
            ox = x if fx == 0 else (-x[0], x[1])
            oy = y if fy == 0 else (-y[0], y[1])
            key = tuple(sorted((ox, oy)))
            d = branch_ops[fx + fy]
            d[key] = d.get(key, 0.0) + c * cx * cy
    # operator products back to occupation amplitudes
    branches = {}
    for k, ops in branch_ops.items():
        occ = {}
        for (x, y), c in ops.items():
            occ[(x, y)] = c * SQRT2 if x == y else c
        branches[k] = occ
    pairs = sorted({key for occ in branches.values() for key in occ})
    index = {p: i for i, p in enumerate(pairs)}
    vecs = {}
    for k, occ in branches.items():
        v = np.zeros(len(pairs), dtype=complex)
        for key, c in occ.items():
            v[index[key]] = c
        vecs[k] = v
    rho = np.zeros((len(pairs), len(pairs)), dtype=complex)
    for j in range(3):
        for k in range(3):
            g = 1.0 if (j - k) % 2 == 0 else eta
            rho += g * np.outer(vecs[j], vecs[k].conj())
    return rho, float(np.real(np.trace(rho))), pairs


# ---------------------------------------------------------------------------
# Entanglement metric oracles (different numerical routes than the package).

_Y = np.array([[0, -1j], [1j, 0]])
_YY = np.kron(_Y, _Y)


def wootters_concurrence_nonhermitian(rho):
    """Concurrence via the eigenvalues of the non-Hermitian product."""
    rho = np.asarray(rho, dtype=complex)
    prod = rho @ _YY @ rho.conj() @ _YY
    vals = np.sort(np.abs(np.real(np.linalg.eigvals(prod))))
    lam = np.sqrt(vals)[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def negativity_explicit_pt(rho):
    """Negativity with the partial transpose built entry by entry."""
    rho = np.asarray(rho, dtype=complex)
    pt = np.zeros((4, 4), dtype=complex)
    for a, b, c, d in itertools.product(range(2), repeat=4):
        pt[2 * a + b, 2 * c + d] = rho[2 * a + d, 2 * c + b]
    vals = np.linalg.eigvalsh(pt)
    return float(2.0 * sum(-v for v in vals if v < 0))


# ---------------------------------------------------------------------------
# Jones-calculus oracle in the linear basis.

def rot(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def retarder_linear(theta, delta):
    return rot(theta) @ np.diag([1.0, np.exp(-1j * delta)]) @ rot(-theta)


H = np.array([1.0, 0.0], dtype=complex)
V = np.array([0.0, 1.0], dtype=complex)
D = (H + V) / SQRT2
R = (H - 1j * V) / SQRT2
L = (H + 1j * V) / SQRT2


def random_density_matrix(rng, dim=4, rank=None):
    """Haar-ish random mixed state from a Ginibre matrix."""
    rank = rank or dim
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_two_photon_m0_amps(rng, temporal_labels=(0,)):
    """Random normalized occupation dict over the m=0 modes."""
    modes = [(h, t) for t in temporal_labels for h in (+1, -1)]
    pairs = [
        tuple(sorted((a, b)))
        for i, a in enumerate(modes)
        for b in modes[i:]
    ]
    pairs = sorted(set(pairs))
    vec = rng.standard_normal(len(pairs)) + 1j * rng.standard_normal(len(pairs))
    vec = vec / np.linalg.norm(vec)
    return dict(zip(pairs, vec))
