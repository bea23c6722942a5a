"""Command-line front end: run scenario files and emit figure-ready data.

One executable, subcommand per task:

    noonsim <task> --scenario <path> --out <dir> [--seed N] [--repeats N]

Exit codes: 0 success (including reconstructions flagged non-converged in
the manifest), 2 scenario parse error, 3 validation error, 1 output I/O
error.  All randomness flows from the master seed through derived child
seeds, so outputs are byte-identical across repeated runs.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .aperture import jittered_coefficients
from .fock import DensityMatrix
from .measurement import (
    CountRecord,
    conditioned_two_qubit,
    cross_circular_rate,
    hom_scan,
    seed_sequence,
)
from .metrics import concurrence, fidelity_to_pure, negativity, purity
from .scenario import (
    Scenario,
    ScenarioParseError,
    ScenarioValidationError,
    TASKS,
    load_scenario,
)
from .serialize import (
    METRICS_HEADER,
    counts_rows,
    density_matrix_to_dict,
    dump_json,
    hom_scan_rows,
    write_csv,
)
from .source import SourceModel
from .tomography import bootstrap_errors, mle_reconstruct, predicted_counts, standard_settings


def _ideal_target(prep) -> np.ndarray:
    """Pure two-qubit image of the ideal (V=1, no-noise) preparation."""
    ideal = SourceModel(visibility=1.0, sigma_tau=1e-13, delay=0.0, noise_lambda=1.0)
    rho = conditioned_two_qubit(ideal, prep).rho.matrix
    vals, vecs = np.linalg.eigh(rho)
    return vecs[:, -1]


def _metric_fns(target: np.ndarray) -> dict:
    return {
        "concurrence": concurrence,
        "negativity": negativity,
        "fidelity": lambda r: fidelity_to_pure(r, target),
        "purity": purity,
    }


def _coefficients(scn: Scenario):
    return scn.aperture.coefficients() if scn.aperture is not None else None


def _manifest(scn: Scenario, seed, outputs, extra=None) -> dict:
    man = {
        "package": "noonsim",
        "version": __version__,
        "task": scn.task,
        "label": scn.label,
        "master_seed": seed,
        "resolved": {
            "source": {
                "visibility": scn.source.visibility,
                "sigma_tau_fs": scn.source.sigma_tau / 1e-15,
                "delay_fs": scn.source.delay / 1e-15,
                "noise_lambda": scn.source.noise_lambda,
                "pair_flux": scn.source.pair_flux,
            },
            "prep": {
                "hwp_deg": list(scn.prep.hwp_deg),
                "labels": list(scn.prep.labels),
            },
        },
        "outputs": sorted(outputs),
    }
    if scn.prep.chain is not None:
        man["resolved"]["prep"]["elements"] = [m.label for m in scn.prep.chain]
    if scn.aperture is not None:
        ap = scn.aperture
        man["resolved"]["aperture"] = {
            "alpha": [ap.alpha.real, ap.alpha.imag],
            "beta": [ap.beta.real, ap.beta.imag],
            "eta": ap.eta,
            "jitter": ap.jitter,
            "count": ap.count,
        }
    if scn.sampling is not None:
        man["resolved"]["sampling"] = {
            "scale": scn.sampling.scale,
            "repeats": scn.sampling.repeats,
            "seed": seed,
            "bootstrap_resamples": scn.sampling.bootstrap_resamples,
        }
    if scn.delay_scan is not None:
        man["resolved"]["delay_scan_fs"] = {
            "start": scn.delay_scan.start_fs,
            "stop": scn.delay_scan.stop_fs,
            "points": scn.delay_scan.points,
        }
    if extra:
        man.update(extra)
    return man


def _task_prepare(scn: Scenario, out: Path, seed) -> dict:
    outputs = []
    for label, prep in scn.states():
        result = conditioned_two_qubit(scn.source, prep, _coefficients(scn))
        dm = DensityMatrix(
            result.rho.matrix, result.rho.basis, conditional_weight=result.weight
        )
        name = f"rho_{label}.json"
        dump_json(density_matrix_to_dict(dm), out / name)
        outputs.append(name)
        print(
            f"prepare {label}: coincidence={result.coincidence:.6g} "
            f"transmission={result.transmission:.6g}"
        )
    return _manifest(scn, seed, outputs)


def _task_metrics(scn: Scenario, out: Path, seed) -> dict:
    rows = []
    for label, prep in scn.states():
        result = conditioned_two_qubit(scn.source, prep, _coefficients(scn))
        target = _ideal_target(prep)
        fns = _metric_fns(target)
        vals = {name: fn(result.rho.matrix) for name, fn in fns.items()}
        rows.append(
            [
                label,
                scn.label,
                vals["concurrence"],
                0.0,
                vals["negativity"],
                0.0,
                vals["fidelity"],
                0.0,
            ]
        )
        print(
            f"metrics {label}: C={vals['concurrence']:.4f} "
            f"N={vals['negativity']:.4f} F={vals['fidelity']:.4f}"
        )
    write_csv(out / "metrics.csv", METRICS_HEADER, rows)
    return _manifest(scn, seed, ["metrics.csv"])


def _task_hom_scan(scn: Scenario, out: Path, seed) -> dict:
    delays = scn.delay_scan.delays_s()
    coeffs = _coefficients(scn)
    header = None
    all_rows = []
    children = seed_sequence(seed).spawn(len(scn.states()))
    for (label, prep), child in zip(scn.states(), children):
        kwargs = {}
        if scn.sampling is not None:
            kwargs = {
                "pairs_per_point": scn.sampling.scale,
                "repeats": scn.sampling.repeats,
                "seed": child,
            }
        scan = hom_scan(scn.source, prep, delays, coeffs, label=label, **kwargs)
        header, rows = hom_scan_rows(scan)
        all_rows.extend(rows)
        i0 = int(np.argmin(np.abs(scan.delays)))
        print(f"hom-scan {label}: R(0)={scan.rates[i0]:.4f}")
    write_csv(out / "hom_scan.csv", header, all_rows)
    return _manifest(scn, seed, ["hom_scan.csv"])


def _task_tomography(scn: Scenario, out: Path, seed) -> dict:
    settings = standard_settings()
    outputs = []
    rows = []
    converged = {}
    children = seed_sequence(seed).spawn(2 * len(scn.states()))
    for i, (label, prep) in enumerate(scn.states()):
        result = conditioned_two_qubit(scn.source, prep, _coefficients(scn))
        expected = predicted_counts(result.rho, settings, scn.sampling.scale)
        rng = np.random.default_rng(children[2 * i])
        counts = rng.poisson(expected)
        duration = scn.sampling.scale / max(scn.source.pair_flux, 1.0)
        records = [
            CountRecord(s.label, int(n), duration, seed_info=f"seed={seed}/{label}")
            for s, n in zip(settings, counts)
        ]
        name_counts = f"counts_{label}.csv"
        h, r = counts_rows(records, settings)
        write_csv(out / name_counts, h, r)
        outputs.append(name_counts)

        reco = mle_reconstruct(counts, settings)
        converged[label] = reco.converged
        name_rho = f"rho_{label}.json"
        dump_json(density_matrix_to_dict(reco.rho), out / name_rho)
        outputs.append(name_rho)

        target = _ideal_target(prep)
        fns = _metric_fns(target)
        vals = {name: fn(reco.rho.matrix) for name, fn in fns.items()}
        stds = {name: 0.0 for name in fns}
        if scn.sampling.bootstrap_resamples >= 2:
            boot = bootstrap_errors(
                counts,
                settings,
                fns,
                scn.sampling.bootstrap_resamples,
                children[2 * i + 1],
            )
            stds = dict(boot.stds)
        rows.append(
            [
                label,
                scn.label,
                vals["concurrence"],
                stds["concurrence"],
                vals["negativity"],
                stds["negativity"],
                vals["fidelity"],
                stds["fidelity"],
            ]
        )
        print(
            f"tomography {label}: C={vals['concurrence']:.4f}(±{stds['concurrence']:.4f}) "
            f"N={vals['negativity']:.4f} F={vals['fidelity']:.4f} "
            f"converged={reco.converged}"
        )
    write_csv(out / "metrics.csv", METRICS_HEADER, rows)
    outputs.append("metrics.csv")
    return _manifest(scn, seed, outputs, {"converged": converged})


def _task_aperture_sweep(scn: Scenario, out: Path, seed) -> dict:
    base = scn.aperture.coefficients()
    n_ap = scn.aperture.count
    ss = seed_sequence(seed)
    jitter_children = ss.spawn(n_ap)
    sample_children = ss.spawn(n_ap) if scn.sampling is not None else [None] * n_ap
    header = [
        "aperture_index",
        "state_label",
        "visibility",
        "visibility_std",
        "visibility_analytic",
        "alpha_re",
        "alpha_im",
        "beta_re",
        "beta_im",
        "eta",
    ]
    rows = []
    for i in range(n_ap):
        if scn.aperture.jitter > 0:
            rng = np.random.default_rng(jitter_children[i])
            coeffs = jittered_coefficients(base, scn.aperture.jitter, rng)
        else:
            coeffs = base
        state_children = (
            sample_children[i].spawn(len(scn.states()))
            if scn.sampling is not None
            else [None] * len(scn.states())
        )
        for (label, prep), child in zip(scn.states(), state_children):
            asym = cross_circular_rate(scn.source, prep, coeffs, gamma=0.0)
            if asym <= 0.0:
                raise ValueError("degenerate sweep scenario: zero asymptote")
            rate0 = cross_circular_rate(scn.source, prep, coeffs)
            vis_analytic = 1.0 - rate0 / asym
            vis, vis_std = vis_analytic, 0.0
            if scn.sampling is not None:
                rng = np.random.default_rng(child)
                draws = rng.poisson(
                    scn.sampling.scale * rate0, size=scn.sampling.repeats
                ) / (scn.sampling.scale * asym)
                vis = float(1.0 - draws.mean())
                if scn.sampling.repeats > 1:
                    vis_std = float(draws.std(ddof=1))
            rows.append(
                [
                    i,
                    label,
                    vis,
                    vis_std,
                    vis_analytic,
                    coeffs.alpha.real,
                    coeffs.alpha.imag,
                    coeffs.beta.real,
                    coeffs.beta.imag,
                    coeffs.eta,
                ]
            )
            print(f"aperture {i} {label}: visibility={vis:.4f} (analytic {vis_analytic:.4f})")
    write_csv(out / "sweep.csv", header, rows)
    return _manifest(scn, seed, ["sweep.csv"])


_RUNNERS = {
    "prepare": _task_prepare,
    "metrics": _task_metrics,
    "hom-scan": _task_hom_scan,
    "tomography": _task_tomography,
    "aperture-sweep": _task_aperture_sweep,
}


def run_scenario(
    task: str,
    scenario_path,
    out_dir,
    seed_override: int | None = None,
    repeats_override: int | None = None,
) -> int:
    try:
        scn = load_scenario(scenario_path, task)
    except ScenarioParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ScenarioValidationError as exc:
        for problem in exc.problems:
            print(f"validation error: {problem}", file=sys.stderr)
        return 3

    if repeats_override is not None and scn.sampling is not None:
        scn = replace(scn, sampling=replace(scn.sampling, repeats=repeats_override))
    seed = seed_override
    if seed is None and scn.sampling is not None:
        seed = scn.sampling.seed

    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        manifest = _RUNNERS[task](scn, out, seed)
        dump_json(manifest, out / "manifest.json")
    except OSError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="noonsim",
        description="Two-photon NOON states through a helicity-mixing nanoaperture",
    )
    sub = parser.add_subparsers(dest="task", required=True)
    for task in TASKS:
        p = sub.add_parser(task, help=f"run a {task} scenario")
        p.add_argument("--scenario", required=True, help="scenario JSON file")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="master seed override")
        p.add_argument("--repeats", type=int, default=None, help="repeats override")
    args = parser.parse_args(argv)
    return run_scenario(args.task, args.scenario, args.out, args.seed, args.repeats)


if __name__ == "__main__":
    sys.exit(main())
