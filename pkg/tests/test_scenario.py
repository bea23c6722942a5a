import json
import math

import pytest

from noonsim.scenario import (
    ScenarioParseError,
    ScenarioValidationError,
    load_scenario,
    parse_scenario,
)


def base_scenario(**overrides):
    d = {
        "task": "hom-scan",
        "label": "test",
        "source": {
            "visibility": 0.9,
            "sigma_tau_fs": 100.0,
            "delay_fs": {"start": -300.0, "stop": 300.0, "points": 5},
            "noise_lambda": 1.0,
        },
        "prep": {"hwp_deg": [0.0, 22.5]},
        "sampling": {"scale": 1000, "repeats": 2, "seed": 7},
    }
    d.update(overrides)
    return d


class TestParsing:
    def test_valid_scenario(self):
        scn = parse_scenario(base_scenario())
        assert scn.task == "hom-scan"
        assert scn.prep.labels == ("minus", "plus")
        assert scn.source.sigma_tau == pytest.approx(100e-15)
        assert len(scn.delay_scan.delays_s()) == 5
        assert 0.0 in scn.delay_scan.delays_s()

    def test_default_labels_from_angles(self):
        scn = parse_scenario(base_scenario(prep={"hwp_deg": [45.0, 67.5, 30.0]}))
        assert scn.prep.labels == ("minus", "plus", "hwp30")

    def test_angles_to_radians(self):
        scn = parse_scenario(base_scenario(prep={"hwp_deg": 22.5}))
        assert scn.prep.hwp_rad()[0] == pytest.approx(math.pi / 8)

    def test_scalar_delay(self):
        d = base_scenario(task="metrics")
        d["source"]["delay_fs"] = 50.0
        del d["sampling"]
        scn = parse_scenario(d)
        assert scn.source.delay == pytest.approx(50e-15)
        assert scn.delay_scan is None

    def test_file_roundtrip(self, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps(base_scenario()))
        scn = load_scenario(path)
        assert scn.label == "test"


class TestValidation:
    def test_unreadable_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ScenarioParseError):
            load_scenario(path)

    def test_missing_source(self):
        d = base_scenario()
        del d["source"]
        with pytest.raises(ScenarioValidationError) as err:
            parse_scenario(d)
        assert any("source" in p for p in err.value.problems)

    def test_visibility_out_of_range(self):
        d = base_scenario()
        d["source"]["visibility"] = 1.5
        with pytest.raises(ScenarioValidationError) as err:
            parse_scenario(d)
        assert any("visibility" in p for p in err.value.problems)

    def test_task_mismatch(self):
        with pytest.raises(ScenarioValidationError):
            parse_scenario(base_scenario(), task="tomography")

    def test_unknown_task(self):
        with pytest.raises(ScenarioValidationError):
            parse_scenario(base_scenario(task="teleport"))

    def test_seed_required_for_sampling(self):
        d = base_scenario()
        del d["sampling"]["seed"]
        with pytest.raises(ScenarioValidationError) as err:
            parse_scenario(d)
        assert any("seed" in p for p in err.value.problems)

    def test_hom_scan_needs_delay_scan(self):
        d = base_scenario()
        d["source"]["delay_fs"] = 0.0
        with pytest.raises(ScenarioValidationError) as err:
            parse_scenario(d)
        assert any("delay_fs" in p for p in err.value.problems)

    def test_tomography_needs_sampling(self):
        d = base_scenario(task="tomography")
        d["source"]["delay_fs"] = 0.0
        del d["sampling"]
        with pytest.raises(ScenarioValidationError):
            parse_scenario(d)

    def test_aperture_subunitarity(self):
        d = base_scenario()
        d["aperture"] = {"alpha": [1.0, 0.0], "beta": [0.5, 0.0], "eta": 1.0}
        with pytest.raises(ScenarioValidationError) as err:
            parse_scenario(d)
        assert any("sub-unitarity" in p for p in err.value.problems)

    def test_aperture_required_for_sweep(self):
        d = base_scenario(task="aperture-sweep")
        d["source"]["delay_fs"] = 0.0
        with pytest.raises(ScenarioValidationError) as err:
            parse_scenario(d)
        assert any("aperture" in p for p in err.value.problems)

    def test_multiple_problems_collected(self):
        d = base_scenario()
        d["source"]["visibility"] = -2
        d["source"]["sigma_tau_fs"] = -1
        del d["sampling"]["seed"]
        with pytest.raises(ScenarioValidationError) as err:
            parse_scenario(d)
        assert len(err.value.problems) >= 3

    def test_duplicate_labels_rejected(self):
        d = base_scenario(prep={"hwp_deg": [0.0, 45.0]})
        with pytest.raises(ScenarioValidationError) as err:
            parse_scenario(d)
        assert any("distinct" in p for p in err.value.problems)


class TestElementChains:
    def chain_scenario(self):
        d = base_scenario(task="prepare")
        d["source"]["delay_fs"] = 0.0
        del d["sampling"]
        d["prep"] = {
            "labels": ["custom"],
            "elements": [
                {"element": "hwp", "angle_deg": 22.5},
                {"element": "qplate", "q": 0.5, "direction": "forward"},
            ],
        }
        return d

    def test_chain_parses(self):
        scn = parse_scenario(self.chain_scenario())
        states = scn.states()
        assert len(states) == 1
        assert states[0][0] == "custom"
        assert len(states[0][1]) == 2

    def test_chain_and_angles_mutually_exclusive(self):
        d = self.chain_scenario()
        d["prep"]["hwp_deg"] = 0.0
        with pytest.raises(ScenarioValidationError):
            parse_scenario(d)

    def test_bad_element_reported(self):
        d = self.chain_scenario()
        d["prep"]["elements"].append({"element": "prism"})
        with pytest.raises(ScenarioValidationError) as err:
            parse_scenario(d)
        assert any("elements" in p for p in err.value.problems)


class TestGoldenScenariosParse:
    @pytest.mark.parametrize(
        "name",
        [
            "table1_no_interaction",
            "table1_with_aperture",
            "fig5_hom_glass",
            "fig5_hom_aperture",
            "fig6_sweep",
        ],
    )
    def test_golden_parses(self, name):
        import pathlib

        root = pathlib.Path(__file__).resolve().parents[1]
        scn = load_scenario(root / "scenarios" / f"{name}.json")
        assert scn.label == name
        assert scn.sampling.seed is not None
