from __future__ import annotations

import json

import pytest

from mclab.cli import main

ROT_SPEC = {
    "space": "vec2-p2",
    "kind": "rotation",
    "parameters": {"turns": "1/7", "center": [0, 0]},
    "domain": {"repr": "ball", "center": [0, 0], "radius": 1},
    "alpha": 1,
    "beta": 0,
    "x0": [1, 0],
}

DOUBLING_SPEC = {
    "space": "vec2-p2",
    "kind": "affine",
    "parameters": {"matrix": [[2, 0], [0, 2]], "offset": [0, 0]},
    "domain": {"repr": "all", "radius": 8},
    "alpha": 1,
    "beta": 0,
    "x0": [1, 0],
}

TRANSLATION_SPEC = {
    "space": "vec2-p2",
    "kind": "affine",
    "parameters": {"matrix": [[1, 0], [0, 1]], "offset": [1, 0]},
    "domain": {"repr": "all", "radius": 1e7},
    "alpha": 1,
    "beta": 0,
    "x0": [0, 0],
}


def write_json(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


class TestReproduce:
    @pytest.mark.parametrize(
        "fixture", ["l1-aij", "linf-box", "ex1-betweenness", "L1-ha", "Linf-hp"]
    )
    def test_known_fixtures_exit_zero(self, fixture, tmp_path):
        assert main(["reproduce", fixture, "--out", str(tmp_path)]) == 0
        report = json.loads((tmp_path / f"reproduce-{fixture}.json").read_text())
        assert report["report"]["ok"] is True

    def test_unknown_fixture_exits_two(self, tmp_path):
        assert main(["reproduce", "nosuch", "--out", str(tmp_path)]) == 2


class TestCheck:
    def test_euclidean_suite_all_holds(self, tmp_path):
        code = main(
            [
                "check",
                "--space",
                "vec3-p2",
                "--props",
                "menger,A,B,Bprime,Bdoubleprime,C",
                "--out",
                str(tmp_path),
                "--seed",
                "7",
            ]
        )
        assert code == 0

    def test_sup_suite_with_expected_failures(self, tmp_path):
        code = main(
            [
                "check",
                "--space",
                "vec3-pinf",
                "--props",
                "A,C",
                "--expect",
                "A=fails,C=fails",
                "--out",
                str(tmp_path),
                "--seed",
                "7",
            ]
        )
        assert code == 0
        report = json.loads((tmp_path / "check-vec3-pinf.json").read_text())
        fails = {r["property"]: r for r in report["reports"]}
        assert fails["A"]["witness"] is not None
        assert fails["C"]["witness"] is not None

    def test_wrong_expectation_exits_one(self, tmp_path):
        code = main(
            [
                "check",
                "--space",
                "vec3-p2",
                "--props",
                "A",
                "--expect",
                "A=fails",
                "--out",
                str(tmp_path),
            ]
        )
        assert code == 1

    def test_refusal_can_be_expected(self, tmp_path):
        code = main(
            [
                "check",
                "--space",
                "vec3-pinf",
                "--props",
                "B",
                "--expect",
                "B=refused",
                "--out",
                str(tmp_path),
            ]
        )
        assert code == 0

    def test_bad_space_id_exits_two(self, tmp_path):
        assert (
            main(["check", "--space", "nope", "--props", "A", "--out", str(tmp_path)])
            == 2
        )

    def test_bad_expectation_exits_two(self, tmp_path):
        code = main(
            [
                "check",
                "--space",
                "vec3-p2",
                "--props",
                "A",
                "--expect",
                "A=maybe",
                "--out",
                str(tmp_path),
            ]
        )
        assert code == 2

    def test_reports_embed_the_resolved_config(self, tmp_path):
        main(
            [
                "check",
                "--space",
                "vec2-p2",
                "--props",
                "A",
                "--out",
                str(tmp_path),
                "--seed",
                "99",
            ]
        )
        report = json.loads((tmp_path / "check-vec2-p2.json").read_text())
        assert report["config"]["seed"] == 99
        assert report["reports"][0]["plan"]["seed"] == 99


class TestFixedpointCommand:
    def test_rotation_spec_converges(self, tmp_path):
        spec = write_json(tmp_path / "rot.json", ROT_SPEC)
        assert main(["fixedpoint", spec, "--out", str(tmp_path)]) == 0
        report = json.loads((tmp_path / "fixedpoint.json").read_text())
        assert report["result"]["residual"] <= 1e-6

    def test_doubling_spec_fails_verification(self, tmp_path):
        spec = write_json(tmp_path / "double.json", DOUBLING_SPEC)
        assert main(["fixedpoint", spec, "--out", str(tmp_path)]) == 1
        report = json.loads((tmp_path / "fixedpoint.json").read_text())
        assert report["hybrid"]["outcome"] == "fails"
        assert "witness" in report["hybrid"]

    def test_translation_spec_unbounded_orbit(self, tmp_path, monkeypatch):
        monkeypatch.setenv("MCLAB_FP_RMAX", "100")
        spec = write_json(tmp_path / "translate.json", TRANSLATION_SPEC)
        assert main(["fixedpoint", spec, "--out", str(tmp_path)]) == 1
        report = json.loads((tmp_path / "fixedpoint.json").read_text())
        assert "unbounded" in report["error"]

    def test_missing_file_exits_two(self, tmp_path):
        assert main(["fixedpoint", str(tmp_path / "none.json"), "--out", str(tmp_path)]) == 2


class TestNestedCommand:
    def test_family_feasible(self, tmp_path):
        fam = [
            [{"center": [0.5, 0], "radius": 1.5}],
            [{"center": [0.25, 0], "radius": 1.25}],
            [{"center": [0.125, 0], "radius": 1.125}],
        ]
        path = write_json(tmp_path / "fam.json", fam)
        assert main(["nested", path, "--out", str(tmp_path)]) == 0
        report = json.loads((tmp_path / "nested.json").read_text())
        assert report["result"]["max_violation"] <= 1e-6

    def test_disjoint_family_exits_one(self, tmp_path):
        fam = [[{"center": [0, 0], "radius": 1}, {"center": [5, 0], "radius": 1}]]
        path = write_json(tmp_path / "bad.json", fam)
        assert main(["nested", path, "--out", str(tmp_path)]) == 1

    def test_cantor_flag(self, tmp_path):
        fam = [[{"center": [0.25, 0.25], "radius": 0.5**n}] for n in range(1, 40)]
        path = write_json(tmp_path / "cantor.json", fam)
        assert main(["nested", path, "--cantor", "--out", str(tmp_path)]) == 0


class TestDeterminism:
    def test_identical_bytes_across_runs_and_directories(self, tmp_path):
        d1, d2 = tmp_path / "a", tmp_path / "b"
        for out in (d1, d2):
            main(
                [
                    "check",
                    "--space",
                    "vec2-p2",
                    "--props",
                    "A,Bprime",
                    "--out",
                    str(out),
                    "--seed",
                    "5",
                ]
            )
        assert (d1 / "check-vec2-p2.json").read_bytes() == (
            d2 / "check-vec2-p2.json"
        ).read_bytes()
        assert (d1 / "check-vec2-p2.md").read_bytes() == (
            d2 / "check-vec2-p2.md"
        ).read_bytes()

    def test_seed_env_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv("MCLAB_SEED", "321")
        main(["check", "--space", "vec2-p2", "--props", "A", "--out", str(tmp_path)])
        report = json.loads((tmp_path / "check-vec2-p2.json").read_text())
        assert report["config"]["seed"] == 321

    def test_config_file_applies(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"seed": 777, "sample_count": 50}), encoding="utf-8")
        main(
            [
                "check",
                "--space",
                "vec2-p2",
                "--props",
                "A",
                "--config",
                str(cfg),
                "--out",
                str(tmp_path),
            ]
        )
        report = json.loads((tmp_path / "check-vec2-p2.json").read_text())
        assert report["config"]["seed"] == 777
        assert report["config"]["sample_count"] == 50

    def test_bad_config_exits_two(self, tmp_path):
        cfg = tmp_path / "bad.json"
        cfg.write_text("{not json", encoding="utf-8")
        code = main(
            [
                "check",
                "--space",
                "vec2-p2",
                "--props",
                "A",
                "--config",
                str(cfg),
                "--out",
                str(tmp_path),
            ]
        )
        assert code == 2
