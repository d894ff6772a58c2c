"""End-to-end command-line tests."""

import json
import shutil

import pytest
from click.testing import CliRunner

from ontomatch.cli import main
from ontomatch.ontio import load_alignment


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args):
    result = runner.invoke(main, [str(a) for a in args], catch_exceptions=False)
    return result


class TestMatch:
    def test_micro_pair(self, runner, micro_dir, tmp_path):
        out = tmp_path / "out.rdf"
        result = run(
            runner, "match", micro_dir / "source.rdf", micro_dir / "target.rdf",
            "--pipeline", "T,N,R,S:porter", "--out", out,
        )
        assert result.exit_code == 0
        alignment = load_alignment(out)
        assert alignment.pairs() == {
            ("http://ontomatch.test/src#reviews", "http://ontomatch.test/tgt#isReviewing")
        }
        assert "1 correspondences" in result.output

    def test_plain_tokenisation_finds_nothing(self, runner, micro_dir, tmp_path):
        out = tmp_path / "out.rdf"
        result = run(
            runner, "match", micro_dir / "source.rdf", micro_dir / "target.rdf",
            "--pipeline", "T,N", "--out", out,
        )
        assert result.exit_code == 0
        assert len(load_alignment(out)) == 0

    def test_bad_pipeline_spec(self, runner, micro_dir, tmp_path):
        result = runner.invoke(main, [
            "match", str(micro_dir / "source.rdf"), str(micro_dir / "target.rdf"),
            "--pipeline", "N,T", "--out", str(tmp_path / "x.rdf"),
        ])
        assert result.exit_code != 0


class TestEval:
    def test_plain_and_json(self, runner, micro_dir, tmp_path):
        out = tmp_path / "out.rdf"
        run(runner, "match", micro_dir / "source.rdf", micro_dir / "target.rdf",
            "--pipeline", "T,N,R,S:porter", "--out", out)
        plain = run(runner, "eval", out, micro_dir / "reference.rdf")
        assert "precision=1.0000" in plain.output
        assert "recall=1.0000" in plain.output
        as_json = run(runner, "eval", out, micro_dir / "reference.rdf", "--json")
        payload = json.loads(as_json.output)
        assert payload["tp"] == 1
        assert payload["f1"] == 1.0


class TestRepairLogic:
    def test_reserved_file_and_rematch(self, runner, track_dir, tmp_path):
        reserved = tmp_path / "reserved.txt"
        rematch = tmp_path / "repaired.rdf"
        result = run(
            runner, "repair-logic", track_dir / "cmt.rdf", track_dir / "conf.rdf",
            "--pipeline", "T,N,R,S:lancaster", "--out", reserved, "--rematch", rematch,
        )
        assert result.exit_code == 0
        words = reserved.read_text().split()
        assert words == sorted(words)
        assert len(words) > 0
        assert rematch.exists()

    def test_reserved_set_feeds_match(self, runner, track_dir, tmp_path):
        reserved = tmp_path / "reserved.txt"
        direct = tmp_path / "direct.rdf"
        via_match = tmp_path / "via_match.rdf"
        run(runner, "repair-logic", track_dir / "cmt.rdf", track_dir / "conf.rdf",
            "--pipeline", "T,N,R,S:lancaster", "--out", reserved, "--rematch", direct)
        run(runner, "match", track_dir / "cmt.rdf", track_dir / "conf.rdf",
            "--pipeline", "T,N,R,S:lancaster", "--reserved", reserved, "--out", via_match)
        assert load_alignment(via_match).pairs() == load_alignment(direct).pairs()


class TestRepairLlm:
    def test_stub_provider(self, runner, micro_dir, tmp_path):
        produced = tmp_path / "produced.rdf"
        repaired = tmp_path / "repaired.rdf"
        run(runner, "match", micro_dir / "source.rdf", micro_dir / "target.rdf",
            "--pipeline", "T,N,R,S:porter", "--out", produced)
        result = run(
            runner, "repair-llm", produced, micro_dir / "source.rdf", micro_dir / "target.rdf",
            "--cache", tmp_path / "cache.jsonl", "--out", repaired,
        )
        assert result.exit_code == 0
        # the stub only confirms pairs whose plain tokenisations agree,
        # so the stemmed-only match is removed
        assert len(load_alignment(repaired)) == 0
        assert "requests=1" in result.output
        rerun = run(
            runner, "repair-llm", produced, micro_dir / "source.rdf", micro_dir / "target.rdf",
            "--cache", tmp_path / "cache.jsonl", "--out", repaired,
        )
        assert "requests=0" in rerun.output


class TestReservedDensity:
    def test_value(self, runner, track_dir, tmp_path):
        reserved = tmp_path / "reserved.txt"
        run(runner, "repair-logic", track_dir / "cmt.rdf", track_dir / "conf.rdf",
            "--pipeline", "T,N,R,S:lancaster", "--out", reserved)
        result = run(runner, "reserved-density", reserved,
                     track_dir / "cmt.rdf", track_dir / "conf.rdf")
        assert result.exit_code == 0
        assert 0.0 < float(result.output) < 10.0


class TestSweep:
    def test_full_run_and_resume(self, runner, track_dir, tmp_path):
        out_dir = tmp_path / "out"
        result = run(runner, "sweep", track_dir / "manifest.toml", "--out", out_dir)
        assert result.exit_code == 0
        csv_text = (out_dir / "results.csv").read_text()
        lines = csv_text.strip().split("\n")
        assert lines[0] == "track,alignment_id,config_id,tp,fp,fn,precision,recall,f1"
        assert len(lines) == 1 + 5 * 4 * 2  # pairs x pipelines x repair modes
        assert not (out_dir / "errors.log").exists()

        # tamper with one sidecar: the resumed run must trust it verbatim,
        # proving completed jobs are skipped rather than recomputed
        sidecar = out_dir / "cmt-conf__TN__none.json"
        record = json.loads(sidecar.read_text())
        record["row"]["tp"] = "999"
        sidecar.write_text(json.dumps(record))
        rerun = run(runner, "sweep", track_dir / "manifest.toml", "--out", out_dir)
        assert rerun.exit_code == 0
        assert ",999," in (out_dir / "results.csv").read_text()

    def test_rerun_is_byte_identical(self, runner, track_dir, tmp_path):
        out_dir = tmp_path / "out"
        run(runner, "sweep", track_dir / "manifest.toml", "--out", out_dir)
        first = (out_dir / "results.csv").read_bytes()
        run(runner, "sweep", track_dir / "manifest.toml", "--out", out_dir)
        assert (out_dir / "results.csv").read_bytes() == first

    def test_changed_input_invalidates_sidecar(self, runner, micro_dir, tmp_path):
        workdir = tmp_path / "work"
        workdir.mkdir()
        for name in ("source.rdf", "target.rdf", "reference.rdf"):
            shutil.copy(micro_dir / name, workdir / name)
        manifest = workdir / "manifest.toml"
        manifest.write_text(
            'output_dir = "out"\n'
            'repair = ["none"]\n'
            '[[pairs]]\nid = "micro"\nsource = "source.rdf"\n'
            'target = "target.rdf"\nreference = "reference.rdf"\n'
            '[[pipelines]]\nid = "stem"\nspec = "T,N,R,S:porter"\n'
        )
        run(runner, "sweep", manifest)
        out_dir = workdir / "out"
        assert ",1,0,0," in (out_dir / "results.csv").read_text()
        # drop the only matching entity from the source: stale sidecar must not survive
        text = (workdir / "source.rdf").read_text().replace("reviews", "submits")
        (workdir / "source.rdf").write_text(text)
        run(runner, "sweep", manifest)
        assert ",0,0,1," in (out_dir / "results.csv").read_text()

    def test_partial_failure_exits_two(self, runner, micro_dir, tmp_path):
        workdir = tmp_path / "work"
        workdir.mkdir()
        for name in ("source.rdf", "target.rdf", "reference.rdf"):
            shutil.copy(micro_dir / name, workdir / name)
        (workdir / "broken.rdf").write_text("<rdf:RDF><oops>")
        manifest = workdir / "manifest.toml"
        manifest.write_text(
            'output_dir = "out"\n'
            '[[pairs]]\nid = "good"\nsource = "source.rdf"\n'
            'target = "target.rdf"\nreference = "reference.rdf"\n'
            '[[pairs]]\nid = "bad"\nsource = "broken.rdf"\n'
            'target = "target.rdf"\nreference = "reference.rdf"\n'
            '[[pipelines]]\nid = "TN"\nspec = "T,N"\n'
        )
        result = runner.invoke(main, ["sweep", str(manifest)])
        assert result.exit_code == 2
        out_dir = workdir / "out"
        errors = (out_dir / "errors.log").read_text()
        assert "bad__TN__none" in errors
        rows = (out_dir / "results.csv").read_text().strip().split("\n")
        assert len(rows) == 2  # header + the good pair

    def test_parallel_matches_serial(self, runner, track_dir, tmp_path):
        serial_dir = tmp_path / "serial"
        parallel_dir = tmp_path / "parallel"
        run(runner, "sweep", track_dir / "manifest.toml", "--out", serial_dir)
        run(runner, "sweep", track_dir / "manifest.toml", "--out", parallel_dir, "--jobs", "4")
        assert (
            (serial_dir / "results.csv").read_bytes()
            == (parallel_dir / "results.csv").read_bytes()
        )

    def test_missing_input_rejected_up_front(self, runner, tmp_path):
        manifest = tmp_path / "manifest.toml"
        manifest.write_text(
            '[[pairs]]\nid = "x"\nsource = "missing.rdf"\n'
            'target = "missing.rdf"\nreference = "missing.rdf"\n'
            '[[pipelines]]\nid = "TN"\nspec = "T,N"\n'
        )
        result = runner.invoke(main, ["sweep", str(manifest)])
        assert result.exit_code != 0
        assert "missing input file" in result.output
