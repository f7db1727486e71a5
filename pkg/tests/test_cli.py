"""Command-line surface: outputs, JSON schemas, and exit codes."""

import json
import math

import pytest

from confidist import cli, inference
from confidist.errors import NumericError

SUMMARY_CSV = "group,n,mean,sd\nA,10,2.0,1.0\nB,10,1.0,1.5\n"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def summary_file(tmp_path):
    path = tmp_path / "two_groups.csv"
    path.write_text(SUMMARY_CSV, encoding="utf-8")
    return str(path)


class TestDescribe:
    def test_bundled_table(self, capsys):
        code, out, _ = run_cli(capsys, "describe", "--bundled", "happiness")
        assert code == 0
        assert "Happyland" in out and "6.3" in out
        assert "Otherland" in out and "4.0" in out
        assert "Sadland" in out and "6.0" in out

    def test_json_field_names(self, capsys):
        code, out, _ = run_cli(capsys, "describe", "--bundled", "happiness",
                               "--format", "json")
        rows = json.loads(out)
        assert code == 0
        assert [r["group"] for r in rows] == ["Happyland", "Otherland", "Sadland"]
        assert set(rows[0]) == {"group", "n", "mean", "sd"}
        assert rows[0]["n"] == 10 and rows[0]["mean"] == 6.3

    def test_raw_file(self, capsys, tmp_path):
        path = tmp_path / "raw.csv"
        path.write_text("group,value\nA,1\nA,3\n", encoding="utf-8")
        code, out, _ = run_cli(capsys, "describe", str(path))
        assert code == 0 and "2.0" in out

    def test_single_observation_group_has_null_sd(self, capsys, tmp_path):
        path = tmp_path / "raw.csv"
        path.write_text("group,value\nA,5\nB,1\nB,3\n", encoding="utf-8")
        code, out, _ = run_cli(capsys, "describe", str(path), "--format", "json")
        rows = json.loads(out)
        assert code == 0
        assert rows[0]["sd"] is None and rows[0]["n"] == 1

    def test_empty_file_exits_2(self, capsys, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("", encoding="utf-8")
        code, _, err = run_cli(capsys, "describe", str(path))
        assert code == 2 and "header" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "describe", "/no/such/file.csv")
        assert code == 2 and "cannot read" in err

    def test_no_input_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "describe")
        assert code == 2

    def test_no_ansi_escapes(self, capsys):
        _, out, err = run_cli(capsys, "describe", "--bundled", "happiness")
        assert "\x1b" not in out + err


class TestCi:
    @pytest.mark.parametrize("level, expected", [
        ("0.95", "5.5 to 7.1"),
        ("0.90", "5.6 to 7.0"),
        ("0.80", "5.8 to 6.8"),
    ])
    def test_happyland_strings(self, capsys, level, expected):
        code, out, _ = run_cli(capsys, "ci", "--bundled", "happiness",
                               "--group", "Happyland", "--level", level)
        assert code == 0 and expected in out

    def test_json_carries_full_numbers_and_display(self, capsys):
        code, out, _ = run_cli(capsys, "ci", "--bundled", "happiness",
                               "--group", "Happyland", "--format", "json")
        payload = json.loads(out)
        assert payload["display"] == "5.5 to 7.1"
        assert payload["lower"] == pytest.approx(5.47197, abs=1e-5)
        assert payload["upper"] == pytest.approx(7.12803, abs=1e-5)
        assert payload["level"] == 0.95

    def test_unknown_group_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "ci", "--bundled", "happiness",
                               "--group", "Atlantis")
        assert code == 2 and "Atlantis" in err

    def test_full_rounding(self, capsys):
        code, out, _ = run_cli(capsys, "ci", "--bundled", "happiness",
                               "--group", "Happyland", "--rounding", "full")
        assert code == 0 and "5.47" in out


class TestCompare:
    def test_table_block(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--bundled", "happiness",
                               "--group-a", "Happyland", "--group-b", "Sadland")
        assert code == 0
        assert "p value: 0.673" in out
        assert "-1.2 to +1.8" in out
        assert "Estimated probability that Happyland exceeds Sadland: 66%" in out
        assert "Estimated probability that Sadland exceeds Happyland: 34%" in out
        assert "by at least 1: 17%" in out
        assert "differ by less than 1: 79%" in out
        assert "by at least 1: 4%" in out.split("differ by less than 1")[1]
        assert "On the assumption that" in out

    def test_json_schema(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--bundled", "happiness",
                               "--group-a", "Happyland", "--group-b", "Sadland",
                               "--format", "json")
        payload = json.loads(out)
        assert set(payload) == {"group_a", "group_b", "method", "estimate", "se",
                                "df", "statistic", "p_value", "ci", "delta",
                                "hypotheses", "report"}
        assert payload["method"] == "pooled"
        assert payload["estimate"] == pytest.approx(0.3, abs=1e-12)
        assert 0.663 <= payload["p_value"] <= 0.683
        assert payload["ci"]["display"] == "-1.2 to +1.8"
        assert len(payload["hypotheses"]) == 5
        kinds = [(h["kind"], h["bounds"]) for h in payload["hypotheses"]]
        assert kinds == [("at_least", [0.0]), ("at_most", [0.0]),
                         ("at_least", [1.0]), ("within", [-1.0, 1.0]),
                         ("at_most", [-1.0])]

    def test_welch_switch(self, capsys):
        _, pooled_out, _ = run_cli(capsys, "compare", "--bundled", "happiness",
                                   "--group-a", "Happyland", "--group-b", "Sadland",
                                   "--format", "json")
        _, welch_out, _ = run_cli(capsys, "compare", "--bundled", "happiness",
                                  "--group-a", "Happyland", "--group-b", "Sadland",
                                  "--welch", "--format", "json")
        pooled, welch = json.loads(pooled_out), json.loads(welch_out)
        assert welch["method"] == "welch"
        assert welch["estimate"] == pooled["estimate"]
        assert welch["df"] != pooled["df"]

    def test_small_band_on_replicated_data(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--bundled", "happiness-x40",
                               "--group-a", "Happyland", "--group-b", "Sadland",
                               "--delta", "0.1", "--format", "json")
        payload = json.loads(out)
        within = next(h for h in payload["hypotheses"] if h["kind"] == "within")
        assert within["probability"] == pytest.approx(0.03, abs=0.01)

    def test_same_group_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "compare", "--bundled", "happiness",
                               "--group-a", "Happyland", "--group-b", "Happyland")
        assert code == 2 and "differ" in err


class TestAnova:
    def test_three_countries(self, capsys):
        code, out, _ = run_cli(capsys, "anova", "--bundled", "happiness")
        assert code == 0 and "p value: 0.04" in out

    def test_replicated_displays_zero(self, capsys):
        code, out, _ = run_cli(capsys, "anova", "--bundled", "happiness-x40")
        assert code == 0 and "p value: 0.000" in out

    def test_json(self, capsys):
        _, out, _ = run_cli(capsys, "anova", "--bundled", "happiness",
                            "--format", "json")
        payload = json.loads(out)
        assert set(payload) == {"groups", "f", "df_between", "df_within",
                                "p_value", "p_display"}
        assert payload["df_between"] == 2.0 and payload["df_within"] == 27.0

    def test_single_group_exits_2(self, capsys, tmp_path):
        path = tmp_path / "one.csv"
        path.write_text("group,n,mean,sd\nA,10,2.0,1.0\n", encoding="utf-8")
        code, _, err = run_cli(capsys, "anova", str(path))
        assert code == 2


class TestP2Prob:
    def test_statement_form(self, capsys):
        code, out, _ = run_cli(capsys, "p2prob", "--p", "p < 0.001")
        assert code == 0
        assert "positive > 99.95%" in out
        assert "negative < 0.05%" in out

    def test_value_form(self, capsys):
        code, out, _ = run_cli(capsys, "p2prob", "--value", "0.673")
        assert code == 0 and "positive = 66.35%" in out

    def test_negative_sign(self, capsys):
        _, out, _ = run_cli(capsys, "p2prob", "--value", "0.673", "--sign", "negative")
        assert "negative = 66.35%" in out

    def test_json(self, capsys):
        _, out, _ = run_cli(capsys, "p2prob", "--p", "p < 0.01", "--format", "json")
        payload = json.loads(out)
        assert payload["prob_positive"]["display"] == "> 99.5%"
        assert payload["prob_positive"]["value"] == 0.995
        assert payload["prob_negative"]["relation"] == "<"

    def test_percent_form_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "p2prob", "--p", "p < 5%")
        assert code == 2 and "fraction" in err

    def test_out_of_range_value_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "p2prob", "--value", "1.5")
        assert code == 2


class TestBayes:
    def test_json(self, capsys):
        _, out, _ = run_cli(capsys, "bayes", "--prior", "0.01",
                            "--lik-h1", "1", "--lik-h0", "0.02", "--format", "json")
        payload = json.loads(out)
        assert set(payload) == {"prior", "lik_h1", "lik_h0", "posterior"}
        assert payload["posterior"] == pytest.approx(0.33557, abs=1e-5)

    def test_table(self, capsys):
        code, out, _ = run_cli(capsys, "bayes", "--prior", "0.5",
                               "--lik-h1", "1", "--lik-h0", "0.02")
        assert code == 0 and "98.04%" in out

    def test_bad_prior_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "bayes", "--prior", "1.5",
                             "--lik-h1", "1", "--lik-h0", "0.02")
        assert code == 2


class TestGuess:
    def test_telepathy_experiment(self, capsys):
        code, out, _ = run_cli(capsys, "guess", "--k", "1", "--n", "1", "--p0", "0.02")
        assert code == 0
        assert "Probability of getting this result by guesswork = 2%" in out

    def test_json(self, capsys):
        _, out, _ = run_cli(capsys, "guess", "--k", "10", "--n", "10",
                            "--p0", "0.02", "--format", "json")
        payload = json.loads(out)
        assert set(payload) == {"k", "n", "p0", "p_value", "estimate", "report"}
        assert payload["p_value"] == pytest.approx(1.024e-17, rel=1e-12)
        assert payload["estimate"] == 1.0

    def test_k_above_n_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "guess", "--k", "3", "--n", "2", "--p0", "0.02")
        assert code == 2


class TestDistcurve:
    @staticmethod
    def parse_csv(out):
        lines = out.strip().splitlines()
        assert lines[0] == "x,density,cdf"
        return [tuple(float(v) for v in line.split(",")) for line in lines[1:]]

    def test_happyland_curve(self, capsys):
        code, out, _ = run_cli(capsys, "distcurve", "--bundled", "happiness",
                               "--group", "Happyland", "--points", "201")
        rows = self.parse_csv(out)
        assert code == 0 and len(rows) == 201
        peak_x = max(rows, key=lambda r: r[1])[0]
        assert peak_x == pytest.approx(6.3, abs=1e-9)  # peaked at the mean

    def test_cdf_strictly_increasing(self, capsys):
        _, out, _ = run_cli(capsys, "distcurve", "--bundled", "happiness",
                            "--group", "Otherland")
        cdfs = [r[2] for r in self.parse_csv(out)]
        assert all(a < b for a, b in zip(cdfs, cdfs[1:]))

    def test_density_integrates_to_one_with_tails(self, capsys):
        _, out, _ = run_cli(capsys, "distcurve", "--bundled", "happiness",
                            "--group", "Happyland", "--points", "201")
        rows = self.parse_csv(out)
        trapezoid = sum(0.5 * (rows[i][1] + rows[i + 1][1]) * (rows[i + 1][0] - rows[i][0])
                        for i in range(len(rows) - 1))
        tails = rows[0][2] + (1.0 - rows[-1][2])
        assert trapezoid + tails == pytest.approx(1.0, abs=0.001)

    def test_difference_curve_mass_split(self, capsys):
        # the mass below zero mirrors the mass above twice-the-estimate;
        # each is near a third of the distribution for the survey data
        _, out, _ = run_cli(capsys, "distcurve", "--bundled", "happiness",
                            "--diff", "Happyland", "Sadland", "--points", "2001")
        rows = self.parse_csv(out)
        cdf_at = lambda x: min(rows, key=lambda r: abs(r[0] - x))[2]
        assert cdf_at(0.0) == pytest.approx(0.3365, abs=0.01)
        assert 1.0 - cdf_at(0.6) == pytest.approx(0.3365, abs=0.01)
        peak_x = max(rows, key=lambda r: r[1])[0]
        assert peak_x == pytest.approx(0.3, abs=1e-6)

    def test_json_format(self, capsys):
        _, out, _ = run_cli(capsys, "distcurve", "--bundled", "happiness",
                            "--group", "Happyland", "--points", "5",
                            "--format", "json")
        payload = json.loads(out)
        assert set(payload) == {"center", "scale", "df", "points"}
        assert len(payload["points"]) == 5
        assert set(payload["points"][0]) == {"x", "density", "cdf"}

    def test_too_few_points_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "distcurve", "--bundled", "happiness",
                             "--group", "Happyland", "--points", "1")
        assert code == 2

    def test_unknown_group_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "distcurve", "--bundled", "happiness",
                             "--group", "Nowhere")
        assert code == 2


class TestCalibrateCommand:
    def test_json_report(self, capsys):
        code, out, _ = run_cli(capsys, "calibrate", "--trials", "500",
                               "--seed", "11", "--level", "0.9")
        payload = json.loads(out)
        assert code == 0
        assert list(payload) == ["coverage", "ks_statistic", "trials", "seed", "generator"]
        assert payload["trials"] == 500 and payload["seed"] == 11

    def test_seed_determinism(self, capsys):
        _, first, _ = run_cli(capsys, "calibrate", "--trials", "300", "--seed", "5")
        _, second, _ = run_cli(capsys, "calibrate", "--trials", "300", "--seed", "5")
        assert first == second

    def test_bad_config_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "calibrate", "--trials", "0")
        assert code == 2


class TestExitCodes:
    def test_usage_error_is_2(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["no-such-command"])
        assert exc.value.code == 2

    def test_numeric_failure_is_3(self, capsys, monkeypatch):
        def boom(groups):
            raise NumericError("forced failure")
        monkeypatch.setattr(inference, "anova_oneway", boom)
        monkeypatch.setattr(cli.inf, "anova_oneway", boom)
        code, _, err = run_cli(capsys, "anova", "--bundled", "happiness")
        assert code == 3 and "numeric failure" in err

    def test_file_and_bundled_together_exits_2(self, capsys, summary_file):
        code, _, _ = run_cli(capsys, "describe", summary_file,
                             "--bundled", "happiness")
        assert code == 2

    def test_success_is_0(self, capsys, summary_file):
        code, _, _ = run_cli(capsys, "describe", summary_file)
        assert code == 0
