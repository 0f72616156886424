import json

import pytest

from funnelgroup import cli


def run(argv):
    return cli.main(argv)


def write_json(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


class TestConfigLoading:
    def test_schema_violation_exit_2(self, tmp_path):
        bad = write_json(tmp_path, "bad.json", {"rank": 2, "intervals": [[2, 8]]})
        assert run(["verify", bad]) == 2

    def test_unknown_key_rejected(self, tmp_path):
        bad = write_json(
            tmp_path, "bad.json",
            {"rank": 1, "intervals": [[2, 8]], "extra": 1},
        )
        assert run(["verify", bad]) == 2

    def test_overlapping_intervals_exit_2(self, tmp_path):
        bad = write_json(tmp_path, "bad.json", {"rank": 2, "intervals": [[2, 8], [7, 9]]})
        assert run(["verify", bad]) == 2

    def test_malformed_json_exit_2(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert run(["verify", str(path)]) == 2

    def test_missing_file_exit_2(self, tmp_path):
        assert run(["verify", str(tmp_path / "absent.json")]) == 2

    def test_needs_exactly_one_input(self, worked_config_file, gamma2_file):
        assert run(["verify"]) == 2
        assert run(["verify", worked_config_file, "--raw-generators", gamma2_file]) == 2


class TestVerify:
    def test_worked_config_passes(self, worked_config_file, tmp_path):
        out = str(tmp_path / "report.json")
        assert run(["verify", worked_config_file, "--out", out]) == 0
        report = json.loads(open(out).read())
        assert report["passed"] is True
        assert report["schema_version"] == 1
        assert report["checks"]["purely_hyperbolic"]["passed"] is True
        assert report["checks"]["freeness"]["min_identity_deviation"] > 1e-9
        assert report["classification"]["is_fuchsian_schottky"] is True

    def test_gamma2_rejected(self, gamma2_file, tmp_path):
        out = str(tmp_path / "gamma2_report.json")
        assert run(["verify", "--raw-generators", gamma2_file, "--out", out]) == 1
        report = json.loads(open(out).read())
        assert report["passed"] is False
        assert report["classification"]["is_fuchsian_schottky"] is False
        assert report["classification"]["offending_word"] == [1]
        assert report["checks"]["purely_hyperbolic"]["offending_word"] == [1]

    def test_near_tangent_config_fails_checks(self, tmp_path):
        cfg = write_json(
            tmp_path, "tangent.json",
            {"rank": 2, "intervals": [[1, 2], [2.0000000001, 3]]},
        )
        out = str(tmp_path / "r.json")
        assert run(["verify", cfg, "--out", out]) == 1
        report = json.loads(open(out).read())
        assert report["checks"]["non_tangency"]["passed"] is False


class TestLimitset:
    def test_layer_counts(self, worked_config_file, tmp_path):
        out = str(tmp_path / "ls.json")
        assert run(["limitset", worked_config_file, "--depth", "5", "--out", out]) == 0
        report = json.loads(open(out).read())
        assert [l["cells"] for l in report["layers"]] == [4, 12, 36, 108, 324]
        seq = report["total_length_sequence"]
        assert all(b < a for a, b in zip(seq, seq[1:]))

    def test_rank1_two_cells_per_layer(self, rank1_config_file, tmp_path):
        out = str(tmp_path / "ls1.json")
        assert run(["limitset", rank1_config_file, "--depth", "3", "--out", out]) == 0
        report = json.loads(open(out).read())
        assert [l["cells"] for l in report["layers"]] == [2, 2, 2]

    def test_svg_contents(self, rank1_config_file, tmp_path):
        out = str(tmp_path / "ls.json")
        svg = tmp_path / "pic.svg"
        assert run([
            "limitset", rank1_config_file, "--depth", "3",
            "--svg", str(svg), "--out", out,
        ]) == 0
        text = svg.read_text()
        assert text.count("<path") == 2  # one semicircle per configured interval
        assert text.count("<circle") == 2  # one sample point per depth-3 cell
        assert "svg" in text

    def test_depth_overflow_exit_1(self, worked_config_file, tmp_path, monkeypatch):
        monkeypatch.setenv("FUNNELGROUP_WORD_CAP", "50")
        assert run(["limitset", worked_config_file, "--depth", "5"]) == 1


class TestDimension:
    def test_both_methods(self, worked_config_file, tmp_path):
        out = str(tmp_path / "dim.json")
        assert run(["dimension", worked_config_file, "--out", out]) == 0
        report = json.loads(open(out).read())
        assert abs(report["pressure"]["value"] - report["boxcount"]["value"]) <= 0.05
        assert report["cross_method_gap"] <= 0.05
        assert report["convergence_type"] is True
        assert report["dimension_at_most_half"] is True

    def test_single_method(self, worked_config_file, tmp_path):
        out = str(tmp_path / "dim.json")
        assert run(["dimension", worked_config_file, "--method", "pressure", "--out", out]) == 0
        report = json.loads(open(out).read())
        assert "boxcount" not in report
        assert 0 < report["pressure"]["value"] < 1

    def test_rank1_zero(self, rank1_config_file, tmp_path):
        out = str(tmp_path / "dim1.json")
        assert run(["dimension", rank1_config_file, "--out", out]) == 0
        report = json.loads(open(out).read())
        assert report["pressure"]["value"] == 0.0
        assert report["boxcount"]["value"] == 0.0

    def test_rank4_default_depth_within_cap(self, tmp_path):
        # 8 letters at the default depth must stay under the word cap
        cfg = write_json(
            tmp_path, "rank4.json",
            {"rank": 4, "intervals": [[1, 2], [3, 4], [5, 6], [7, 8]]},
        )
        out = str(tmp_path / "dim4.json")
        assert run(["dimension", cfg, "--out", out]) == 0
        report = json.loads(open(out).read())
        assert 0 < report["pressure"]["value"] < 1


class TestTopologyAndPants:
    def test_topology_rank6(self, tmp_path):
        out = str(tmp_path / "t.json")
        assert run(["topology", "--rank", "6", "--out", out]) == 0
        report = json.loads(open(out).read())
        assert report["fuchsian"]["genus"] == 3
        assert report["fuchsian"]["funnels"] == 1
        assert [o["funnels"] for o in report["classical"]["options"]] == [30, 9, 2]

    def test_topology_rank9_options(self, tmp_path):
        out = str(tmp_path / "t9.json")
        assert run(["topology", "--rank", "9", "--out", out]) == 0
        report = json.loads(open(out).read())
        assert [o["funnels"] for o in report["classical"]["options"]] == [72, 12]

    def test_topology_from_config(self, worked_config_file, tmp_path):
        out = str(tmp_path / "tc.json")
        assert run(["topology", worked_config_file, "--out", out]) == 0
        report = json.loads(open(out).read())
        assert report["rank"] == 2
        assert report["ends"]["cusps"] == 0
        assert report["ends"]["convex_cocompact"] is True

    def test_topology_bad_rank(self):
        assert run(["topology", "--rank", "0"]) == 2

    def test_pants_rank3(self, tmp_path):
        out = str(tmp_path / "p.json")
        assert run(["pants", "--rank", "3", "--out", out]) == 0
        report = json.loads(open(out).read())
        assert report["num_pants"] == 4
        assert report["twist_count"] == 7
        assert report["signature"] == [1, 4]
        assert len(report["gluing_graph"]["edges"]) == 4
        assert len(report["gluing_graph"]["free_boundaries"]) == 4
        assert any("ambient" in f for f in report["consistency_flags"])

    def test_pants_rank1_rejected(self):
        assert run(["pants", "--rank", "1"]) == 2

    def test_pants_with_config_attaches_lengths(self, worked_config_file, tmp_path):
        out = str(tmp_path / "p2.json")
        assert run(["pants", worked_config_file, "--out", out]) == 0
        report = json.loads(open(out).read())
        assert set(report["curve_lengths"]) == {"g1", "g2", "g1*g2"}


class TestReversingFlags:
    def test_verify_reports_extended_classes(self, tmp_path):
        cfg = write_json(
            tmp_path, "ext.json",
            {"rank": 2, "intervals": [[2, 8], [10, 12]], "reversing": [True, False]},
        )
        out = str(tmp_path / "r.json")
        run(["verify", cfg, "--out", out])
        report = json.loads(open(out).read())
        assert report["extended"]["generator_classes"] == ["glide_reflection", "hyperbolic"]
        assert report["extended"]["orientation_subgroup_index"] == 2
        assert report["extended"]["reversing_generators"] == [1]

    def test_geometry_commands_reject_reversing(self, tmp_path):
        cfg = write_json(
            tmp_path, "ext.json",
            {"rank": 1, "intervals": [[2, 8]], "reversing": [True]},
        )
        assert run(["limitset", cfg]) == 2
        assert run(["dimension", cfg]) == 2
        assert run(["render", cfg, "--out", str(tmp_path / "x.svg")]) == 2

    def test_all_false_flags_are_harmless(self, tmp_path):
        cfg = write_json(
            tmp_path, "plain.json",
            {"rank": 1, "intervals": [[2, 8]], "reversing": [False]},
        )
        out = str(tmp_path / "ls.json")
        assert run(["limitset", cfg, "--depth", "2", "--out", out]) == 0


class TestDeterminism:
    CASES = [
        ("verify", lambda cfg, g2: ["verify", cfg]),
        ("verify-raw", lambda cfg, g2: ["verify", "--raw-generators", g2]),
        ("limitset", lambda cfg, g2: ["limitset", cfg, "--depth", "5"]),
        ("dimension", lambda cfg, g2: ["dimension", cfg]),
        ("topology", lambda cfg, g2: ["topology", cfg]),
        ("pants", lambda cfg, g2: ["pants", cfg]),
    ]

    @pytest.mark.parametrize("name,builder", CASES, ids=[c[0] for c in CASES])
    def test_reports_byte_identical(self, name, builder, worked_config_file, gamma2_file, tmp_path):
        argv = builder(worked_config_file, gamma2_file)
        out1 = str(tmp_path / "a.json")
        out2 = str(tmp_path / "b.json")
        run(argv + ["--out", out1])
        run(argv + ["--out", out2])
        assert open(out1, "rb").read() == open(out2, "rb").read()

    def test_svg_byte_identical(self, worked_config_file, tmp_path):
        s1 = str(tmp_path / "a.svg")
        s2 = str(tmp_path / "b.svg")
        assert run(["render", worked_config_file, "--out", s1]) == 0
        assert run(["render", worked_config_file, "--out", s2]) == 0
        assert open(s1, "rb").read() == open(s2, "rb").read()

    def test_report_round_trip(self, worked_config_file, tmp_path):
        out = str(tmp_path / "r.json")
        run(["verify", worked_config_file, "--out", out])
        raw = open(out).read()
        assert json.dumps(json.loads(raw), indent=2, sort_keys=True) + "\n" == raw
