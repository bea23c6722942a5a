"""Serialization: density matrices and states as JSON, tables as CSV.

All outputs are byte-stable for fixed inputs: dict keys are sorted, floats
are written with Python's shortest-roundtrip repr (JSON) or a fixed %.12g
format (CSV).
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Mapping, Sequence

import numpy as np

from .fock import DensityMatrix, Mode, TwoPhotonState
from .measurement import CountRecord, HomScan


def _c2pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def density_matrix_to_dict(dm: DensityMatrix) -> dict:
    return {
        "kind": "density_matrix",
        "dim": dm.dim,
        "basis": list(dm.basis),
        "entries": [[_c2pair(z) for z in row] for row in dm.matrix],
        "conditional_weight": dm.conditional_weight,
    }


def density_matrix_from_dict(d: Mapping) -> DensityMatrix:
    dim = int(d["dim"])
    entries = d["entries"]
    m = np.array(
        [[complex(re, im) for re, im in row] for row in entries], dtype=complex
    )
    if m.shape != (dim, dim):
        raise ValueError("entries do not match the declared dimension")
    return DensityMatrix(m, tuple(d["basis"]), d.get("conditional_weight"))


def state_to_dict(state: TwoPhotonState) -> dict:
    terms = []
    for (mu, nu), amp in sorted(state.amps.items()):
        terms.append(
            {
                "modes": [
                    [mu.m, mu.helicity, mu.temporal],
                    [nu.m, nu.helicity, nu.temporal],
                ],
                "amplitude": _c2pair(amp),
            }
        )
    return {"kind": "two_photon_state", "normalized": state.normalized, "terms": terms}


def state_from_dict(d: Mapping) -> TwoPhotonState:
    amps = {}
    for term in d["terms"]:
        (m1, h1, t1), (m2, h2, t2) = term["modes"]
        re, im = term["amplitude"]
        mu, nu = Mode(m1, h1, t1), Mode(m2, h2, t2)
        key = (mu, nu) if mu <= nu else (nu, mu)
        amps[key] = complex(re, im)
    return TwoPhotonState(amps, normalized=bool(d.get("normalized", False)))


def dump_json(obj, path) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])


def hom_scan_rows(scan: HomScan) -> tuple[list[str], list[list]]:
    """CSV layout: tau_fs, rate_normalized, rate_std (when repeats were
    requested), state_label."""
    if scan.stds is not None:
        header = ["tau_fs", "rate_normalized", "rate_std", "state_label"]
        rows = [
            [tau * 1e15, float(r), float(s), scan.label]
            for tau, r, s in zip(scan.delays, scan.rates, scan.stds)
        ]
    else:
        header = ["tau_fs", "rate_normalized", "state_label"]
        rows = [
            [tau * 1e15, float(r), scan.label]
            for tau, r in zip(scan.delays, scan.rates)
        ]
    return header, rows


METRICS_HEADER = [
    "state_label",
    "scenario",
    "concurrence",
    "concurrence_std",
    "negativity",
    "negativity_std",
    "fidelity",
    "fidelity_std",
]


def counts_rows(
    records: Sequence[CountRecord], settings
) -> tuple[list[str], list[list]]:
    header = ["setting_label", "arm1", "arm2", "counts", "duration_s"]
    rows = [
        [rec.label, s.arm1, s.arm2, rec.counts, rec.duration]
        for rec, s in zip(records, settings)
    ]
    return header, rows


def counts_from_csv(path) -> list[CountRecord]:
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(
                CountRecord(
                    label=row["setting_label"],
                    counts=int(row["counts"]),
                    duration=float(row["duration_s"]),
                )
            )
    return out


def csv_bytes(header: Sequence[str], rows: Iterable[Sequence]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue().encode()
