"""Scenario files: the structured-text (JSON) front end of the simulator.

A scenario names a task and the parameter blocks it needs.  Angles are
degrees and times femtoseconds in files; radians and seconds internally.
Validation collects every violation with its field path instead of failing
on the first.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .aperture import ApertureCoefficients
from .source import SourceModel

TASKS = ("prepare", "hom-scan", "tomography", "aperture-sweep", "metrics")

FS = 1e-15


class ScenarioParseError(ValueError):
    """The scenario file is not readable JSON or not an object."""


class ScenarioValidationError(ValueError):
    """One or more scenario fields violate their invariants."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(problems))


@dataclass(frozen=True)
class DelayScan:
    start_fs: float
    stop_fs: float
    points: int

    def delays_s(self) -> list[float]:
        if self.points == 1:
            return [self.start_fs * FS]
        step = (self.stop_fs - self.start_fs) / (self.points - 1)
        return [(self.start_fs + i * step) * FS for i in range(self.points)]


@dataclass(frozen=True)
class PrepBlock:
    hwp_deg: tuple[float, ...]
    labels: tuple[str, ...]
    # optional explicit element chain (single custom state) replacing the
    # default half-wave plate + forward q-plate pair
    chain: tuple | None = None

    def hwp_rad(self) -> tuple[float, ...]:
        return tuple(math.radians(a) for a in self.hwp_deg)


@dataclass(frozen=True)
class ApertureBlock:
    alpha: complex
    beta: complex
    eta: float
    jitter: float = 0.0
    count: int = 1

    def coefficients(self) -> ApertureCoefficients:
        return ApertureCoefficients(self.alpha, self.beta, self.eta)


@dataclass(frozen=True)
class SamplingBlock:
    scale: float
    repeats: int = 1
    seed: int | None = None
    bootstrap_resamples: int = 0


@dataclass(frozen=True)
class Scenario:
    task: str
    label: str
    source: SourceModel
    prep: PrepBlock
    aperture: ApertureBlock | None = None
    sampling: SamplingBlock | None = None
    delay_scan: DelayScan | None = None

    def states(self) -> list[tuple[str, object]]:
        """(label, preparation) pairs; the preparation is a wave-plate angle
        in radians or an explicit element chain."""
        if self.prep.chain is not None:
            return [(self.prep.labels[0], list(self.prep.chain))]
        return list(zip(self.prep.labels, self.prep.hwp_rad()))


def _default_label(angle_deg: float) -> str:
    # the two canonical preparation angles get their figure names
    if math.isclose(angle_deg % 45.0, 0.0, abs_tol=1e-9):
        return "minus"
    if math.isclose(angle_deg % 45.0, 22.5, abs_tol=1e-9):
        return "plus"
    return f"hwp{angle_deg:g}"


def _complex_pair(value, path: str, problems: list[str]) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) for v in value)
    ):
        problems.append(f"{path}: expected [re, im]")
        return 0j
    return complex(value[0], value[1])


def _number(d, key, path, problems, default=None, lo=None, hi=None, strict_lo=False):
    if key not in d:
        if default is None:
            problems.append(f"{path}.{key}: missing")
            return 0.0
        return default
    v = d[key]
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        problems.append(f"{path}.{key}: expected a number")
        return 0.0
    v = float(v)
    if lo is not None and (v <= lo if strict_lo else v < lo):
        cmp = ">" if strict_lo else ">="
        problems.append(f"{path}.{key}: must be {cmp} {lo}")
    if hi is not None and v > hi:
        problems.append(f"{path}.{key}: must be <= {hi}")
    return v


def parse_scenario(d: dict, task: str | None = None) -> Scenario:
    """Validate a scenario dict against ``task`` (or its own task field)."""
    if not isinstance(d, dict):
        raise ScenarioParseError("scenario must be a JSON object")
    problems: list[str] = []

    declared = d.get("task")
    if declared is not None and declared not in TASKS:
        problems.append(f"task: unknown task {declared!r}")
    if task is None:
        task = declared
    elif declared is not None and declared != task:
        problems.append(f"task: scenario declares {declared!r}, invoked as {task!r}")
    if task is None:
        problems.append("task: missing")
        task = "prepare"
    elif task not in TASKS:
        problems.append(f"task: unknown task {task!r}")
        task = "prepare"

    label = d.get("label", task)

    src_d = d.get("source")
    delay_scan = None
    if not isinstance(src_d, dict):
        problems.append("source: missing block")
        source = SourceModel()
    else:
        vis = _number(src_d, "visibility", "source", problems, lo=0.0, hi=1.0)
        sig = _number(src_d, "sigma_tau_fs", "source", problems, lo=0.0, strict_lo=True)
        lam = _number(src_d, "noise_lambda", "source", problems, default=1.0, lo=0.0, hi=1.0)
        flux = _number(src_d, "pair_flux", "source", problems, default=1000.0, lo=0.0)
        delay_v = src_d.get("delay_fs", 0.0)
        delay_fs = 0.0
        if isinstance(delay_v, dict):
            start = _number(delay_v, "start", "source.delay_fs", problems)
            stop = _number(delay_v, "stop", "source.delay_fs", problems)
            pts = delay_v.get("points")
            if not isinstance(pts, int) or pts < 2:
                problems.append("source.delay_fs.points: expected an integer >= 2")
                pts = 2
            delay_scan = DelayScan(start, stop, pts)
        elif isinstance(delay_v, (int, float)):
            delay_fs = float(delay_v)
        else:
            problems.append("source.delay_fs: expected a number or a scan object")
        try:
            source = SourceModel(
                visibility=min(max(vis, 0.0), 1.0),
                sigma_tau=max(sig, 1e-30) * FS,
                delay=delay_fs * FS,
                noise_lambda=min(max(lam, 0.0), 1.0),
                pair_flux=max(flux, 0.0),
            )
        except ValueError as exc:
            problems.append(f"source: {exc}")
            source = SourceModel()

    prep_d = d.get("prep")
    if not isinstance(prep_d, dict):
        problems.append("prep: missing block")
        prep = PrepBlock((0.0,), ("minus",))
    elif "elements" in prep_d:
        from .elements import chain_from_specs

        if "hwp_deg" in prep_d:
            problems.append("prep: give either hwp_deg or elements, not both")
        label = prep_d.get("labels", ["custom"])
        if isinstance(label, str):
            label = [label]
        if not (isinstance(label, list) and len(label) == 1 and isinstance(label[0], str)):
            problems.append("prep.labels: an elements chain takes one label")
            label = ["custom"]
        chain = None
        try:
            chain = tuple(chain_from_specs(prep_d["elements"]))
        except (ValueError, TypeError) as exc:
            problems.append(f"prep.elements: {exc}")
        prep = PrepBlock((), (label[0],), chain)
    else:
        angles = prep_d.get("hwp_deg", 0.0)
        if isinstance(angles, (int, float)):
            angles = [float(angles)]
        elif isinstance(angles, list) and all(
            isinstance(a, (int, float)) for a in angles
        ) and angles:
            angles = [float(a) for a in angles]
        else:
            problems.append("prep.hwp_deg: expected a number or non-empty list")
            angles = [0.0]
        labels = prep_d.get("labels")
        if labels is None:
            labels = [_default_label(a) for a in angles]
        elif not (
            isinstance(labels, list)
            and len(labels) == len(angles)
            and all(isinstance(x, str) for x in labels)
        ):
            problems.append("prep.labels: expected one string per hwp angle")
            labels = [_default_label(a) for a in angles]
        if len(set(labels)) != len(labels):
            problems.append("prep.labels: labels must be distinct")
        prep = PrepBlock(tuple(angles), tuple(labels))

    ap_d = d.get("aperture")
    aperture = None
    if ap_d is not None:
        if not isinstance(ap_d, dict):
            problems.append("aperture: expected a block")
        else:
            alpha = _complex_pair(ap_d.get("alpha"), "aperture.alpha", problems)
            beta = _complex_pair(ap_d.get("beta"), "aperture.beta", problems)
            eta = _number(ap_d, "eta", "aperture", problems, default=1.0, lo=0.0, hi=1.0)
            jitter = _number(ap_d, "jitter", "aperture", problems, default=0.0, lo=0.0)
            count = ap_d.get("count", 1)
            if not isinstance(count, int) or count < 1:
                problems.append("aperture.count: expected an integer >= 1")
                count = 1
            if abs(alpha) ** 2 + abs(beta) ** 2 > 1.0 + 1e-12:
                problems.append(
                    "aperture: |alpha|^2 + |beta|^2 exceeds 1 (sub-unitarity)"
                )
            else:
                aperture = ApertureBlock(alpha, beta, min(max(eta, 0.0), 1.0), jitter, count)

    samp_d = d.get("sampling")
    sampling = None
    if samp_d is not None:
        if not isinstance(samp_d, dict):
            problems.append("sampling: expected a block")
        else:
            scale = _number(samp_d, "scale", "sampling", problems, lo=0.0, strict_lo=True)
            repeats = samp_d.get("repeats", 1)
            if not isinstance(repeats, int) or repeats < 1:
                problems.append("sampling.repeats: expected an integer >= 1")
                repeats = 1
            seed = samp_d.get("seed")
            if seed is not None and not isinstance(seed, int):
                problems.append("sampling.seed: expected an integer")
                seed = None
            boots = samp_d.get("bootstrap_resamples", 0)
            if not isinstance(boots, int) or boots < 0:
                problems.append("sampling.bootstrap_resamples: expected an integer >= 0")
                boots = 0
            sampling = SamplingBlock(scale, repeats, seed, boots)

    # task-specific requirements
    if task == "hom-scan" and delay_scan is None:
        problems.append("source.delay_fs: hom-scan needs a {start, stop, points} scan")
    if task == "tomography" and sampling is None:
        problems.append("sampling: tomography needs a sampling block")
    if task == "aperture-sweep" and aperture is None:
        problems.append("aperture: aperture-sweep needs an aperture block")
    samples_randomness = (
        (task == "hom-scan" and sampling is not None)
        or task == "tomography"
        or (task == "aperture-sweep" and aperture is not None
            and (aperture.jitter > 0 or sampling is not None))
    )
    if samples_randomness and (sampling is None or sampling.seed is None):
        problems.append("sampling.seed: mandatory whenever sampling occurs")

    if problems:
        raise ScenarioValidationError(problems)
    return Scenario(task, label, source, prep, aperture, sampling, delay_scan)


def load_scenario(path, task: str | None = None) -> Scenario:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioParseError(f"cannot read scenario {path}: {exc}") from exc
    return parse_scenario(data, task)
