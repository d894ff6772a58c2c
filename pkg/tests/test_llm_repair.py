"""Prompt rendering, verdict parsing, caching, and two-step repair."""

import pytest

from ontomatch.errors import EmptyEntityText, ProviderUnavailable, QuotaExceeded
from ontomatch.llm_repair import (
    Answer,
    HttpProvider,
    PromptTemplate,
    ProviderConfig,
    StubProvider,
    VerdictCache,
    classify_pair,
    parse_verdict,
    render_prompt,
    repair_alignment,
)
from ontomatch.model import (
    Alignment,
    Correspondence,
    EntityKind,
    EntityRef,
    OntologyDoc,
)


class TestTemplates:
    def test_bodies_are_exact(self):
        assert PromptTemplate.PT1.value == "Is {Entity1} equivalent to {Entity2}? Answer yes or no."
        assert PromptTemplate.PT2.value == (
            "Example: Hair_root is equivalent to Hair_Root.\n"
            "Is {Entity1} equivalent to {Entity2}? Answer yes or no."
        )
        assert PromptTemplate.PT3.value == (
            "Is {Entity1} equivalent to {Entity2}? Answer yes or no.\n"
            "Write a short explanation."
        )
        assert PromptTemplate.PT4.value == (
            "Example: Hair_root is equivalent to Hair_Root.\n"
            "Is {Entity1} equivalent to {Entity2}? Answer yes or no.\n"
            "Write a short explanation."
        )

    def test_render(self):
        assert render_prompt(PromptTemplate.PT1, "reviews", "isReviewing") == (
            "Is reviews equivalent to isReviewing? Answer yes or no."
        )

    def test_no_escaping_or_truncation(self):
        rendered = render_prompt(PromptTemplate.PT1, "<a & b>", "x" * 500)
        assert "<a & b>" in rendered
        assert "x" * 500 in rendered

    def test_empty_text_rejected(self):
        with pytest.raises(EmptyEntityText):
            render_prompt(PromptTemplate.PT1, "", "x")


class TestParseVerdict:
    @pytest.mark.parametrize(
        "raw,expected",
        [
            ("Yes, they are equivalent.", Answer.YES),
            ("no", Answer.NO),
            ("NO.", Answer.NO),
            ("These entities are related.", Answer.UNPARSEABLE),
            ("Yes and no, hard to say.", Answer.UNPARSEABLE),
            ("I think about it. Yes.", Answer.YES),
            ("It is ambiguous. Yes. Or no.", Answer.UNPARSEABLE),
            ("", Answer.UNPARSEABLE),
            ("The answer is yes", Answer.YES),
            ("yesterday", Answer.UNPARSEABLE),
        ],
    )
    def test_examples(self, raw, expected):
        assert parse_verdict(raw) == expected


def tiny_docs():
    source = OntologyDoc("s", (
        EntityRef("http://s#Hair_root", EntityKind.CLASS, "Hair_root"),
        EntityRef("http://s#isReviewing", EntityKind.OBJECT_PROPERTY, "isReviewing"),
    ))
    target = OntologyDoc("t", (
        EntityRef("http://t#Hair_Root", EntityKind.CLASS, "Hair_Root"),
        EntityRef("http://t#isReviewedBy", EntityKind.OBJECT_PROPERTY, "isReviewedBy"),
    ))
    alignment = Alignment("s", "t", (
        Correspondence("http://s#Hair_root", "http://t#Hair_Root"),
        Correspondence("http://s#isReviewing", "http://t#isReviewedBy"),
    ))
    return source, target, alignment


class TestClassifyPair:
    def test_stub_verdicts(self):
        cache = VerdictCache()
        stub = StubProvider()
        assert classify_pair(stub, PromptTemplate.PT1, "Heart", "heart", cache).answer is Answer.YES
        assert (
            classify_pair(stub, PromptTemplate.PT1, "isReviewing", "isReviewedBy", cache).answer
            is Answer.NO
        )

    def test_cache_hit_issues_no_request(self):
        cache = VerdictCache()
        stub = StubProvider()
        first = classify_pair(stub, PromptTemplate.PT1, "a", "b", cache)
        second = classify_pair(stub, PromptTemplate.PT1, "a", "b", cache)
        assert stub.requests_issued == 1
        assert (first.answer, first.cached) == (second.answer, False)
        assert second.cached is True

    def test_cache_keyed_by_template_and_model(self):
        cache = VerdictCache()
        stub = StubProvider()
        classify_pair(stub, PromptTemplate.PT1, "a", "b", cache)
        classify_pair(stub, PromptTemplate.PT2, "a", "b", cache)
        assert stub.requests_issued == 2

    def test_cache_persists_across_instances(self, tmp_path):
        path = tmp_path / "cache.jsonl"
        stub = StubProvider()
        classify_pair(stub, PromptTemplate.PT1, "a", "b", VerdictCache(path))
        verdict = classify_pair(stub, PromptTemplate.PT1, "a", "b", VerdictCache(path))
        assert verdict.cached is True
        assert stub.requests_issued == 1


class TestRepairAlignment:
    def test_two_step_repair(self):
        source, target, alignment = tiny_docs()
        stub = StubProvider()
        result = repair_alignment(alignment, source, target, stub)
        assert result.alignment.pairs() == {("http://s#Hair_root", "http://t#Hair_Root")}
        assert result.step1_kept == 1
        assert result.removed == 1
        # step-1 cells never consult the provider
        assert result.requests_issued == 1

    def test_output_subset_of_input(self):
        source, target, alignment = tiny_docs()
        result = repair_alignment(alignment, source, target, StubProvider())
        assert result.alignment.pairs() <= alignment.pairs()

    def test_empty_alignment(self):
        source, target, _ = tiny_docs()
        result = repair_alignment(Alignment(), source, target, StubProvider())
        assert len(result.alignment) == 0
        assert result.requests_issued == 0

    def test_deterministic_bytes(self):
        from ontomatch.ontio import write_alignment

        source, target, alignment = tiny_docs()
        first = write_alignment(repair_alignment(alignment, source, target, StubProvider()).alignment)
        second = write_alignment(repair_alignment(alignment, source, target, StubProvider()).alignment)
        assert first == second

    def test_warm_cache_issues_zero_requests(self, tmp_path):
        source, target, alignment = tiny_docs()
        cache_path = tmp_path / "cache.jsonl"
        repair_alignment(alignment, source, target, StubProvider(), cache=VerdictCache(cache_path))
        rerun = repair_alignment(
            alignment, source, target, StubProvider(), cache=VerdictCache(cache_path)
        )
        assert rerun.requests_issued == 0

    def test_unparseable_keeps_cell(self):
        class MumbleProvider:
            model_name = "mumble"
            requests_issued = 0

            def complete(self, prompt, entity1_text, entity2_text):
                self.requests_issued += 1
                return "It is hard to tell."

        source, target, alignment = tiny_docs()
        result = repair_alignment(alignment, source, target, MumbleProvider())
        assert result.unparseable_kept == 1
        assert result.alignment.pairs() == alignment.pairs()


class TestProviderConfig:
    def test_temperature_locked_to_zero(self):
        with pytest.raises(ValueError):
            ProviderConfig(endpoint="http://api", temperature=0.7)


class TestHttpProvider:
    class FakeResponse:
        def __init__(self, status_code, payload=None, text=""):
            self.status_code = status_code
            self._payload = payload
            self.text = text

        def json(self):
            return self._payload

    class FakeSession:
        def __init__(self, responses):
            self.responses = list(responses)
            self.calls = []

        def post(self, url, json=None, headers=None, timeout=None):
            self.calls.append({"url": url, "json": json, "headers": headers})
            return self.responses.pop(0)

    def make(self, responses, **kwargs):
        config = ProviderConfig(endpoint="http://api.test/v1/chat", model_name="m", **kwargs)
        session = self.FakeSession(responses)
        return HttpProvider(config, session=session), session

    def test_success_and_wire_format(self, monkeypatch):
        monkeypatch.setenv("LLM_API_KEY", "sekrit")
        payload = {"choices": [{"message": {"content": "Yes."}}]}
        provider, session = self.make([self.FakeResponse(200, payload)])
        assert provider.complete("prompt", "a", "b") == "Yes."
        body = session.calls[0]["json"]
        assert body["temperature"] == 0
        assert body["messages"] == [{"role": "user", "content": "prompt"}]
        assert session.calls[0]["headers"]["Authorization"] == "Bearer sekrit"

    def test_quota_error(self):
        provider, _ = self.make([self.FakeResponse(429)])
        with pytest.raises(QuotaExceeded):
            provider.complete("p", "a", "b")

    def test_retries_then_unavailable(self):
        provider, session = self.make(
            [self.FakeResponse(500)] * 3, retry_limit=2
        )
        with pytest.raises(ProviderUnavailable):
            provider.complete("p", "a", "b")
        assert len(session.calls) == 3

    def test_server_error_then_success(self):
        payload = {"choices": [{"message": {"content": "No."}}]}
        provider, _ = self.make([self.FakeResponse(500), self.FakeResponse(200, payload)])
        assert provider.complete("p", "a", "b") == "No."
