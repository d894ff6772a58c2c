"""Evaluation metrics and diagnostic quantities."""

import math

import pytest
from hypothesis import given, strategies as st

from ontomatch.errors import EmptyInput
from ontomatch.llm_repair import Answer, LlmVerdict
from ontomatch.metrics import (
    discovery_rate,
    evaluate,
    improvement_condition,
    report_to_json,
    reserved_density,
    write_csv,
    csv_row,
)
from ontomatch.model import Alignment, Correspondence

from conftest import make_ontology


def alignment_of(pairs):
    return Alignment(cells=tuple(Correspondence(f"http://s#{a}", f"http://t#{b}") for a, b in pairs))


class TestEvaluate:
    def test_worked_example(self):
        produced = alignment_of([("a", "a"), ("b", "b"), ("x", "y")])
        gold = alignment_of([("a", "a"), ("b", "b"), ("c", "c"), ("d", "d")])
        report = evaluate(produced, gold)
        assert (report.tp, report.fp, report.fn) == (2, 1, 2)
        assert report.precision == pytest.approx(2 / 3, abs=1e-12)
        assert report.recall == pytest.approx(1 / 2, abs=1e-12)
        assert report.f1 == pytest.approx(4 / 7, abs=1e-12)

    def test_perfect(self):
        gold = alignment_of([(str(i), str(i)) for i in range(5)])
        report = evaluate(gold, gold)
        assert report.precision == report.recall == report.f1 == 1.0

    def test_disjoint(self):
        report = evaluate(alignment_of([("a", "b")]), alignment_of([("c", "d")]))
        assert report.precision == report.recall == report.f1 == 0.0

    def test_empty_alignment(self):
        report = evaluate(Alignment(), alignment_of([("a", "a")]))
        assert (report.precision, report.recall, report.f1) == (0.0, 0.0, 0.0)

    def test_empty_reference(self):
        report = evaluate(alignment_of([("a", "a")]), Alignment())
        assert (report.recall, report.f1) == (0.0, 0.0)

    def test_size_invariants(self):
        produced = alignment_of([("a", "a"), ("x", "y")])
        gold = alignment_of([("a", "a"), ("b", "b")])
        report = evaluate(produced, gold)
        assert report.tp + report.fp == report.alignment_size
        assert report.tp + report.fn == report.reference_size

    @given(
        st.sets(st.tuples(st.integers(0, 20), st.integers(0, 20)), max_size=30),
        st.sets(st.tuples(st.integers(0, 20), st.integers(0, 20)), max_size=30),
    )
    def test_duality(self, a_pairs, r_pairs):
        produced = alignment_of(a_pairs)
        gold = alignment_of(r_pairs)
        assert evaluate(produced, gold).recall == evaluate(gold, produced).precision


class TestImprovementCondition:
    def test_examples(self):
        assert improvement_condition(3, 1, 10, 10) is True
        assert improvement_condition(1, 3, 10, 10) is False
        assert improvement_condition(0, 0, 10, 10) is False

    @given(
        st.integers(0, 50), st.integers(0, 50),
        st.integers(0, 50), st.integers(0, 50),
    )
    def test_matches_brute_force(self, delta_tp, delta_fp, tp, fp):
        if tp + fp == 0:
            return
        before = tp / (tp + fp)
        total = tp + delta_tp + fp + delta_fp
        after = (tp + delta_tp) / total if total else 0.0
        assert improvement_condition(delta_tp, delta_fp, tp, fp) == (after > before)

    def test_ratio_form(self):
        # with both deltas positive the condition reduces to
        # delta_tp/delta_fp > tp/fp
        for delta_tp, delta_fp, tp, fp in [(3, 1, 10, 10), (2, 4, 6, 3), (5, 5, 1, 1)]:
            assert improvement_condition(delta_tp, delta_fp, tp, fp) == (
                delta_tp / delta_fp > tp / fp
            )


class TestDiscoveryRate:
    def make(self, answer):
        return LlmVerdict(answer, raw_text="", model="stub", template="PT1")

    def test_fraction(self):
        verdicts = [self.make(Answer.YES)] * 8 + [self.make(Answer.NO)] * 2
        assert discovery_rate(verdicts, Answer.YES) == pytest.approx(0.8)

    def test_all_expected(self):
        assert discovery_rate([self.make(Answer.NO)] * 4, Answer.NO) == 1.0

    def test_unparseable_counts_against(self):
        verdicts = [self.make(Answer.YES), self.make(Answer.UNPARSEABLE)]
        assert discovery_rate(verdicts, Answer.YES) == 0.5

    def test_empty_rejected(self):
        with pytest.raises(EmptyInput):
            discovery_rate([], Answer.YES)


class TestReservedDensity:
    def test_arithmetic(self):
        source = make_ontology([f"a{i}" for i in range(120)])
        target = make_ontology([f"b{i}" for i in range(80)], prefix="http://t#")
        assert reserved_density({"v", "w", "x", "y", "z"}, source, target) == 2.5
        assert reserved_density(set(), source, target) == 0.0

    def test_per_hundred(self):
        source = make_ontology([f"a{i}" for i in range(60)])
        target = make_ontology([f"b{i}" for i in range(40)], prefix="http://t#")
        assert reserved_density(set("abcdefghij"), source, target) == 10.0

    def test_no_entities_rejected(self):
        from ontomatch.model import OntologyDoc

        with pytest.raises(EmptyInput):
            reserved_density({"x"}, OntologyDoc("s", ()), OntologyDoc("t", ()))


class TestSerialisation:
    def test_json_has_all_fields(self):
        report = evaluate(alignment_of([("a", "a")]), alignment_of([("a", "a")]))
        payload = report_to_json(report, provenance="pipeline=T,N")
        for field in ("tp", "fp", "fn", "precision", "recall", "f1", "provenance"):
            assert field in payload

    def test_csv_layout(self):
        report = evaluate(alignment_of([("a", "a")]), alignment_of([("a", "a")]))
        text = write_csv([csv_row(report, "conf", "cmt-conf", "TN")])
        header, row = text.strip().split("\n")
        assert header == "track,alignment_id,config_id,tp,fp,fn,precision,recall,f1"
        assert row.startswith("conf,cmt-conf,TN,1,0,0,")

    def test_csv_metrics_rederive(self):
        report = evaluate(alignment_of([("a", "a"), ("x", "y")]), alignment_of([("a", "a"), ("b", "b")]))
        row = csv_row(report, "t", "p", "c")
        tp, fp, fn = int(row["tp"]), int(row["fp"]), int(row["fn"])
        assert math.isclose(float(row["precision"]), tp / (tp + fp), abs_tol=1e-12)
        assert math.isclose(float(row["recall"]), tp / (tp + fn), abs_tol=1e-12)
