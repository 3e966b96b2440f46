from lexicomp.cli import main

from conftest import DATA


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


MINI = DATA / "minicorpus"
GRAN = DATA / "granularity"


class TestCompare:
    def test_manual_mode_writes_two_reports(self, capsys, tmp_path):
        code, out, _ = run(capsys, "compare", MINI / "study.cfg",
                           "--mode", "manual", "--out", tmp_path)
        assert code == 0
        assert (tmp_path / "pairs.tsv").is_file()
        assert (tmp_path / "groups.tsv").is_file()
        assert out.splitlines()[1].startswith("TOTAL\t4\t")

    def test_matches_golden_files(self, capsys, tmp_path):
        run(capsys, "compare", MINI / "study.cfg", "--mode", "manual", "--out", tmp_path)
        for name in ("pairs.tsv", "groups.tsv"):
            got = (tmp_path / name).read_bytes()
            assert got == (MINI / "golden" / name).read_bytes()

    def test_repeated_runs_byte_identical(self, capsys, tmp_path):
        run(capsys, "compare", MINI / "study.cfg", "--mode", "manual",
            "--out", tmp_path / "one")
        run(capsys, "compare", MINI / "study.cfg", "--mode", "manual",
            "--out", tmp_path / "two", "--jobs", "4")
        for name in ("pairs.tsv", "groups.tsv"):
            assert (tmp_path / "one" / name).read_bytes() == \
                (tmp_path / "two" / name).read_bytes()

    def test_bad_threshold_is_usage_error(self, capsys, tmp_path):
        code, _, err = run(capsys, "compare", MINI / "study.cfg",
                           "--threshold", "1.5", "--out", tmp_path)
        assert code == 1
        assert "threshold" in err

    def test_glottocode_vs_manual_pair_counts(self, capsys, tmp_path):
        code, _, _ = run(capsys, "compare", GRAN / "study.cfg",
                         "--mode", "glottocode", "--out", tmp_path / "g")
        assert code == 0
        g_rows = (tmp_path / "g" / "pairs.tsv").read_text(encoding="utf-8")
        code, _, _ = run(capsys, "compare", GRAN / "study.cfg",
                         "--mode", "manual", "--out", tmp_path / "m")
        assert code == 0
        m_rows = (tmp_path / "m" / "pairs.tsv").read_text(encoding="utf-8")
        count = lambda text: sum(1 for line in text.splitlines()
                                 if line and not line.startswith(("#", "Group")))
        assert count(g_rows) == 2
        assert count(m_rows) == 1

    def test_markdown_format(self, capsys, tmp_path):
        code, _, _ = run(capsys, "compare", MINI / "study.cfg", "--mode", "manual",
                         "--format", "markdown", "--out", tmp_path)
        assert code == 0
        assert (tmp_path / "groups.md").read_text(encoding="utf-8").startswith("| Group |")

    def test_missing_dataset_is_data_error(self, capsys, tmp_path):
        cfg = tmp_path / "study.cfg"
        cfg.write_text("[g]\ndataset_a = nope_a\ndataset_b = nope_b\n", encoding="utf-8")
        code, _, _ = run(capsys, "compare", cfg, "--out", tmp_path)
        assert code == 2

    def test_no_comparable_pairs_is_study_error(self, capsys, tmp_path):
        # shared glottocodes but disjoint concepts
        import test_corpus
        test_corpus.simple_dataset(tmp_path / "a", concepts=("1",))
        test_corpus.simple_dataset(tmp_path / "b", concepts=("2",))
        cfg = tmp_path / "study.cfg"
        cfg.write_text("[g]\ndataset_a = a\ndataset_b = b\n", encoding="utf-8")
        code, _, _ = run(capsys, "compare", cfg, "--mode", "glottocode",
                         "--out", tmp_path / "out")
        assert code == 3


class TestEval:
    def test_config_mode(self, capsys):
        code, out, _ = run(capsys, "eval", "--config", MINI / "study.cfg",
                           "--mode", "manual", MINI / "gold.tsv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "Language\tPrecision\tRecall\tF-Score"
        assert lines[-1] == "TOTAL\t1.00\t1.00\t1.00"

    def test_predictions_mode(self, capsys, tmp_path):
        preds = tmp_path / "preds.tsv"
        preds.write_text("L1\t1\ta\tb\tIdentical\nL1\t1\ta\tc\tDifferent\n",
                         encoding="utf-8")
        gold = tmp_path / "gold.tsv"
        gold.write_text("L1\t1\ta\tb\tsame\nL1\t1\ta\tc\tdifferent\n", encoding="utf-8")
        code, out, _ = run(capsys, "eval", "--predictions", preds, gold)
        assert code == 0
        assert "TOTAL\t1.00\t1.00\t1.00" in out

    def test_gold_with_unknown_form_exits_3(self, capsys, tmp_path):
        gold = tmp_path / "gold.tsv"
        gold.write_text("a1/b1\t101\ta1-1\tghost\tsame\n", encoding="utf-8")
        code, _, _ = run(capsys, "eval", "--config", MINI / "study.cfg",
                         "--mode", "manual", gold)
        assert code == 3

    def test_empty_gold_exits_2(self, capsys, tmp_path):
        gold = tmp_path / "gold.tsv"
        gold.write_text("", encoding="utf-8")
        code, _, _ = run(capsys, "eval", "--config", MINI / "study.cfg",
                         "--mode", "manual", gold)
        assert code == 2

    def test_malformed_gold_exits_2(self, capsys, tmp_path):
        gold = tmp_path / "gold.tsv"
        gold.write_text("a1/b1\ta1-1\tsame\n", encoding="utf-8")
        code, _, _ = run(capsys, "eval", "--predictions", gold, gold)
        assert code == 2


class TestStats:
    def test_tiny_fixture(self, capsys):
        code, out, _ = run(capsys, "stats", DATA / "tiny")
        assert code == 0
        assert "concepts\t5" in out
        assert "varieties\t2" in out
        assert "forms\t10" in out
        assert "synonymy (per-variety mean)\t1.00" in out
        assert "synonymy (pooled)\t1.00" in out

    def test_nonexistent_directory(self, capsys, tmp_path):
        code, _, _ = run(capsys, "stats", tmp_path / "nope")
        assert code == 2

    def test_coordinate_export(self, capsys, tmp_path):
        out_file = tmp_path / "coords.tsv"
        code, _, _ = run(capsys, "stats", DATA / "tiny", "--coords", out_file)
        assert code == 0
        text = out_file.read_text(encoding="utf-8")
        assert text.startswith("variety_id\tname\tglottocode\tlatitude\tlongitude\n")
        assert "v1\tTiny One\teeee5555\t1.0\t2.0" in text


class TestPairs:
    def test_lists_glottocode_pairs(self, capsys):
        code, out, _ = run(capsys, "pairs", GRAN / "study.cfg", "--mode", "glottocode")
        assert code == 0
        assert len(out.strip().splitlines()) == 2

    def test_lists_manual_pairs(self, capsys):
        code, out, _ = run(capsys, "pairs", GRAN / "study.cfg", "--mode", "manual")
        assert code == 0
        assert out.strip().splitlines() == ["granularity\tnew\tmod\tmanual"]


class TestDist:
    def test_identical(self, capsys):
        code, out, _ = run(capsys, "dist", "v j ã d", "v j ã d")
        assert code == 0
        assert "sca 0.0000" in out
        assert "category Identical" in out

    def test_different(self, capsys):
        code, out, _ = run(capsys, "dist", "v j ã d", "ʃ ɛ ʁ")
        assert code == 0
        assert "category Different" in out
        assert "ed 4" in out

    def test_empty_form_exits_1(self, capsys):
        code, _, err = run(capsys, "dist", "+", "t a")
        assert code == 1

    def test_custom_model(self, capsys, tmp_path):
        custom = tmp_path / "model.tsv"
        custom.write_text(
            "#classes\nt\tT\na\tA\nd\tD\n#scores\nT\tT\t4\nA\tA\t4\nD\tD\t4\n"
            "T\tA\t-2\nT\tD\t-2\nA\tD\t-2\n#gap\n-2\n", encoding="utf-8")
        code, out, _ = run(capsys, "dist", "t a", "d a", "--model", custom)
        assert code == 0
        # t and d are separate classes in the custom model
        assert "category Different" in out

    def test_usage_error_on_unknown_flag(self, capsys):
        code, _, _ = run(capsys, "dist", "t a", "d a", "--bogus")
        assert code == 1
