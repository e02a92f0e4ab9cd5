import pathlib
import textwrap

import numpy as np
import pytest

from vocalis.common.errors import ConfigurationError, ParseError, ValidationError
from vocalis.features.compare.agent import CompareAgent, preflight
from vocalis.features.compare.api import CompareAPI
from vocalis.features.compare.config import load_compare_config
from vocalis.features.compare.display import TABLE_HEADER, emit, emit_distances
from vocalis.features.compare.graph import nodes
from vocalis.features.compare.models import FormantRow, FormantTable
from vocalis.features.formant.lpc import formants_from_wave
from vocalis.features.formant.wavio import read_wav
from vocalis.features.geometry.io import write_area_function
from vocalis.features.helmholtz.models import Method

SYNTHETIC = pathlib.Path(__file__).parents[1] / "configs" / "synthetic.ini"

FAST = """\
[global]
c = 350
alpha = 0
glottis_admittance = 0

[tube]
fs = 16000
duration = 0.3

"""


def _config(tmp_path, body: str, name: str = "compare.ini"):
    path = tmp_path / name
    path.write_text(FAST + textwrap.dedent(body), encoding="utf-8")
    return path


class TestFormantTable:
    def test_rows_sort_by_vowel_then_method(self):
        table = FormantTable(
            (
                FormantRow("u", Method.A_F, 300.0, 800.0),
                FormantRow("a", Method.W_F, 700.0, 1200.0),
                FormantRow("a", Method.H_R, 710.0, 1210.0),
            )
        )
        assert [(r.vowel, r.method) for r in table.rows] == [("a", Method.H_R), ("a", Method.W_F), ("u", Method.A_F)]

    def test_duplicate_rows_are_rejected(self):
        row = FormantRow("a", Method.W_R, 700.0, 1200.0)
        with pytest.raises(ValidationError, match="Duplicate"):
            FormantTable((row, row))

    def test_formants_must_be_ordered(self):
        with pytest.raises(ValidationError):
            FormantRow("a", Method.W_R, 1200.0, 700.0)

    def test_empty_table_emits_header_only(self):
        assert emit(FormantTable(), "csv") == ",".join(TABLE_HEADER) + "\n"
        assert emit(FormantTable(), "tsv") == "\t".join(TABLE_HEADER) + "\n"

    def test_one_decimal(self):
        text = emit(FormantTable((FormantRow("a", Method.W_R, 512.345, 1498.96),)), "csv")
        assert text.splitlines()[1] == "a,W_R,512.3,1499.0"

    def test_distances_to_audio(self):
        table = FormantTable((FormantRow("a", Method.W_R, 703.0, 1204.0), FormantRow("a", Method.A_F, 700.0, 1200.0)))
        assert table.distances_to_audio()["a"][Method.W_R] == pytest.approx(5.0)
        assert emit_distances(table).splitlines()[1] == "a,W_R,5.0"

    def test_pretty_lists_every_row(self):
        text = emit(FormantTable((FormantRow("a", Method.W_R, 500.0, 1500.0),)), "pretty")
        assert "W_R" in text and "500.0" in text


class TestConfig:
    def test_relative_paths_and_overrides(self, tmp_path, uniform_tube):
        write_area_function(uniform_tube, tmp_path / "a.txt")
        cfg = load_compare_config(_config(tmp_path, "[vowel a]\narea = a.txt\n"), use_env=False)
        assert cfg.vowels[0].area == tmp_path / "a.txt"
        assert cfg.settings["acoustics"]["glottis_admittance"] == "0"
        assert cfg.duration == pytest.approx(0.3)

    def test_sound_speed_is_required(self, tmp_path):
        path = tmp_path / "bad.ini"
        path.write_text("[global]\nalpha = 0\n[vowel a]\ntube = cylinder 0.175 3e-4 20\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="'c'"):
            load_compare_config(path, use_env=False)

    @pytest.mark.parametrize(
        "body, message",
        [
            ("[vowel a]\ntube = cylinder 0.175 3e-4 20\narea = a.txt\n", "not both"),
            ("[vowel a]\nmesh = m.txt\n", "needs an area function"),
            ("[vowel a]\ntube = cone 0.175 3e-4 20\n", "tube"),
            ("[vowel a]\ntube = cylinder 0.175 3e-4 20\ncolour = red\n", "unknown key"),
            ("[vowels]\nx = 1\n", "unknown section"),
            ("[walls]\nthickness = 1\n[vowel a]\ntube = cylinder 0.175 3e-4 20\n", "unknown key"),
        ],
    )
    def test_invalid_entries(self, tmp_path, body, message):
        with pytest.raises(ConfigurationError, match=message):
            load_compare_config(_config(tmp_path, body), use_env=False)

    def test_undecodable_config(self, tmp_path):
        path = tmp_path / "bad.ini"
        path.write_bytes(b"[global]\nc = 350\n# caf\xe9\n")
        with pytest.raises(ConfigurationError, match="UTF-8"):
            load_compare_config(path, use_env=False)

    def test_duplicate_labels(self, tmp_path):
        path = tmp_path / "dup.ini"
        path.write_text(
            "[global]\nc = 350\nalpha = 0\n[vowel a]\ntube = cylinder 0.175 3e-4 20\n[vowel  a]\ntube = cylinder 0.16 3e-4 20\n",
            encoding="utf-8",
        )
        with pytest.raises(ConfigurationError, match="unique"):
            load_compare_config(path, use_env=False)

    def test_preflight_names_the_missing_file(self, tmp_path):
        cfg = load_compare_config(_config(tmp_path, "[vowel a]\narea = missing.txt\n"), use_env=False)
        with pytest.raises(ParseError, match="missing.txt"):
            preflight(cfg)


class TestCompare:
    def test_tube_only_vowel(self, tmp_path):
        path = _config(tmp_path, "[vowel a]\ntube = cylinder 0.175 3e-4 20\n")
        result = CompareAPI().compare_file(path, use_env=False)
        assert {r.method for r in result.table.rows} == {Method.W_R, Method.W_F}
        w_r = result.table.get("a", Method.W_R)
        assert w_r.f1 == pytest.approx(500.0, rel=0.01)
        assert w_r.f2 == pytest.approx(1500.0, rel=0.01)
        assert result.complete

    def test_repeated_recordings_average_to_one_take(self, tmp_path, wav_file):
        audio = ", ".join([wav_file.name] * 10)
        path = _config(tmp_path, f"[vowel a]\ntube = cylinder 0.175 3e-4 20\naudio = {audio}\n")
        result = CompareAPI().compare_file(path, use_env=False)
        single = formants_from_wave(read_wav(wav_file))
        a_f = result.table.get("a", Method.A_F)
        assert a_f.f1 == pytest.approx(single.f1)
        assert a_f.f2 == pytest.approx(single.f2)
        assert Method.W_R in result.table.distances_to_audio()["a"]

    def test_failed_method_is_reported_not_fatal(self, tmp_path):
        path = _config(tmp_path, "[formant]\nmax_bandwidth = 1\n\n[vowel a]\ntube = cylinder 0.175 3e-4 20\n")
        result = CompareAPI().compare_file(path, use_env=False)
        assert result.table.get("a", Method.W_R) is not None
        assert result.table.get("a", Method.W_F) is None
        assert any("W_F" in f for f in result.failures)
        assert not result.complete

    @pytest.mark.slow
    def test_mesh_vowel_adds_helmholtz_and_scaled_rows(self, tmp_path):
        body = "[vowel i]\ntube = cylinder 0.16 3.1416e-4 20\ncylinder_mesh = 0.175 0.01 0.005\n"
        result = CompareAPI().compare_file(_config(tmp_path, body), use_env=False)
        methods = [r.method for r in result.table.rows]
        assert methods[:3] == [Method.H_R, Method.W_R, Method.S_R]
        h_r, w_r, s_r = (result.table.get("i", m) for m in (Method.H_R, Method.W_R, Method.S_R))
        assert abs(s_r.f1 - h_r.f1) < abs(w_r.f1 - h_r.f1)

    @pytest.mark.slow
    def test_jobs_do_not_change_the_table(self, tmp_path):
        body = "[vowel a]\ntube = cylinder 0.175 3e-4 20\n\n[vowel o]\ntube = cosine-horn 0.175 3e-4 40\n"
        cfg = load_compare_config(_config(tmp_path, body), use_env=False)
        agent = CompareAgent()
        serial = agent.compare(cfg, jobs=1)
        parallel = agent.compare(cfg, jobs=2)
        assert emit(serial.table) == emit(parallel.table)
        assert emit(serial.table) == emit(agent.compare(cfg, jobs=1).table)

    def test_unexpected_error_fails_only_its_method(self, tmp_path, monkeypatch):
        def singular(*args, **kwargs):
            raise np.linalg.LinAlgError("singular matrix")

        monkeypatch.setattr(nodes, "simulate", singular)
        result = CompareAPI().compare_file(_config(tmp_path, "[vowel a]\ntube = cylinder 0.175 3e-4 20\n"), use_env=False)
        assert result.table.get("a", Method.W_R) is not None
        assert any("W_F" in f and "singular matrix" in f for f in result.failures)

    @pytest.mark.slow
    def test_bundled_config_is_reproducible(self):
        api = CompareAPI()
        first = emit(api.compare_file(SYNTHETIC, use_env=False).table)
        assert emit(api.compare_file(SYNTHETIC, use_env=False).table) == first
        assert emit(api.compare_file(SYNTHETIC, jobs=2, use_env=False).table) == first
        assert "uniform,W_R" in first

    def test_jobs_must_be_positive(self, tmp_path):
        cfg = load_compare_config(_config(tmp_path, "[vowel a]\ntube = cylinder 0.175 3e-4 20\n"), use_env=False)
        with pytest.raises(ValidationError):
            CompareAgent().compare(cfg, jobs=0)
