"""Post hoc alignment repair through yes/no LLM verdicts.

Step 1 keeps every cell whose Tokenise+Normalise keys already agree — a
deterministic check that needs no model call. Step 2 asks a provider
whether the remaining pairs are equivalent; "no" removes the cell,
"yes" keeps it, and unparseable answers keep it conservatively.
"""

from __future__ import annotations

import json
import os
import re
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path

import requests

from ontomatch.errors import EmptyEntityText, ProviderUnavailable, QuotaExceeded
from ontomatch.model import Alignment, LabelPolicy, OntologyDoc, display_text
from ontomatch.pipeline import Normalise, PipelineConfig, Tokenise, apply_pipeline


class Answer(Enum):
    YES = "yes"
    NO = "no"
    UNPARSEABLE = "unparseable"


class PromptTemplate(Enum):
    PT1 = "Is {Entity1} equivalent to {Entity2}? Answer yes or no."
    PT2 = (
        "Example: Hair_root is equivalent to Hair_Root.\n"
        "Is {Entity1} equivalent to {Entity2}? Answer yes or no."
    )
    PT3 = (
        "Is {Entity1} equivalent to {Entity2}? Answer yes or no.\n"
        "Write a short explanation."
    )
    PT4 = (
        "Example: Hair_root is equivalent to Hair_Root.\n"
        "Is {Entity1} equivalent to {Entity2}? Answer yes or no.\n"
        "Write a short explanation."
    )


def render_prompt(template: PromptTemplate, entity1_text: str, entity2_text: str) -> str:
    if not entity1_text or not entity2_text:
        raise EmptyEntityText("both entity texts must be non-empty")
    return template.value.replace("{Entity1}", entity1_text).replace("{Entity2}", entity2_text)


_WORD = re.compile(r"[a-z]+")
_SENTENCE_END = re.compile(r"[.!?\n]")


def parse_verdict(raw: str) -> Answer:
    """Decide yes/no from free text; ambiguity falls back to a whole-text scan."""
    text = raw.lower()
    split = _SENTENCE_END.search(text)
    first_sentence = text[: split.start()] if split else text
    in_first = {w for w in _WORD.findall(first_sentence) if w in ("yes", "no")}
    if len(in_first) == 1:
        return Answer(next(iter(in_first)))
    everywhere = {w for w in _WORD.findall(text) if w in ("yes", "no")}
    if len(everywhere) == 1:
        return Answer(next(iter(everywhere)))
    return Answer.UNPARSEABLE


@dataclass(frozen=True)
class LlmVerdict:
    answer: Answer
    raw_text: str
    model: str
    template: str
    cached: bool = False


@dataclass(frozen=True)
class ProviderConfig:
    endpoint: str = ""
    model_name: str = "stub"
    temperature: float = 0.0
    max_in_flight: int = 1
    retry_limit: int = 2
    timeout: float = 30.0
    auth_header: str = "Authorization"
    auth_scheme: str = "Bearer"

    def __post_init__(self):
        if self.temperature != 0:
            raise ValueError("temperature is fixed at 0 for reproducible verdicts")


class StubProvider:
    """Deterministic offline provider: yes iff the T+N keys are equal."""

    model_name = "stub"

    def __init__(self):
        self.requests_issued = 0
        self._config = PipelineConfig(steps=(Tokenise(), Normalise()))

    def complete(self, prompt: str, entity1_text: str, entity2_text: str) -> str:
        self.requests_issued += 1
        key1 = apply_pipeline(entity1_text, self._config)
        key2 = apply_pipeline(entity2_text, self._config)
        return "Yes." if key1 == key2 else "No."


class HttpProvider:
    """Chat-completion-style JSON POST provider."""

    def __init__(self, config: ProviderConfig, session: requests.Session | None = None):
        self.config = config
        self.model_name = config.model_name
        self.requests_issued = 0
        self._session = session or requests.Session()

    def complete(self, prompt: str, entity1_text: str, entity2_text: str) -> str:
        body = {
            "model": self.config.model_name,
            "temperature": 0,
            "messages": [{"role": "user", "content": prompt}],
        }
        headers = {}
        api_key = os.environ.get("LLM_API_KEY")
        if api_key:
            scheme = f"{self.config.auth_scheme} " if self.config.auth_scheme else ""
            headers[self.config.auth_header] = f"{scheme}{api_key}"
        last_error = None
        for _ in range(self.config.retry_limit + 1):
            self.requests_issued += 1
            try:
                response = self._session.post(
                    self.config.endpoint, json=body, headers=headers, timeout=self.config.timeout
                )
            except requests.RequestException as exc:
                last_error = exc
                continue
            if response.status_code == 429:
                raise QuotaExceeded(f"provider returned 429 for model {self.config.model_name}")
            if response.status_code >= 500:
                last_error = RuntimeError(f"server error {response.status_code}")
                continue
            if response.status_code != 200:
                raise ProviderUnavailable(
                    f"provider returned {response.status_code}: {response.text[:200]}"
                )
            payload = response.json()
            return payload["choices"][0]["message"]["content"]
        raise ProviderUnavailable(f"provider unreachable after retries: {last_error}")


class VerdictCache:
    """Append-only JSONL store keyed by (model, template, entity1, entity2)."""

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path else None
        self._records: dict[tuple[str, str, str, str], tuple[str, str]] = {}
        if self.path and self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                record = json.loads(line)
                key = (record["model"], record["template"], record["e1"], record["e2"])
                self._records[key] = (record["answer"], record["raw_text"])

    def get(self, model: str, template: str, e1: str, e2: str):
        return self._records.get((model, template, e1, e2))

    def put(self, model: str, template: str, e1: str, e2: str, answer: Answer, raw_text: str):
        key = (model, template, e1, e2)
        if key in self._records:
            return
        self._records[key] = (answer.value, raw_text)
        if self.path:
            record = {
                "model": model,
                "template": template,
                "e1": e1,
                "e2": e2,
                "answer": answer.value,
                "raw_text": raw_text,
                "timestamp": time.time(),
            }
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(json.dumps(record) + "\n")


def classify_pair(
    provider,
    template: PromptTemplate,
    entity1_text: str,
    entity2_text: str,
    cache: VerdictCache,
) -> LlmVerdict:
    """One cached yes/no decision for an entity-text pair."""
    model = provider.model_name
    hit = cache.get(model, template.name, entity1_text, entity2_text)
    if hit is not None:
        answer, raw_text = hit
        return LlmVerdict(Answer(answer), raw_text, model, template.name, cached=True)
    prompt = render_prompt(template, entity1_text, entity2_text)
    raw_text = provider.complete(prompt, entity1_text, entity2_text)
    answer = parse_verdict(raw_text)
    cache.put(model, template.name, entity1_text, entity2_text, answer, raw_text)
    return LlmVerdict(answer, raw_text, model, template.name, cached=False)


@dataclass(frozen=True)
class RepairAudit:
    entity1: str
    entity2: str
    outcome: str  # "step1-kept", "kept-yes", "kept-unparseable", "removed-no"
    verdict: LlmVerdict | None = None


@dataclass(frozen=True)
class RepairResult:
    alignment: Alignment
    audits: tuple[RepairAudit, ...]
    step1_kept: int
    removed: int
    unparseable_kept: int
    requests_issued: int


def repair_alignment(
    alignment: Alignment,
    source: OntologyDoc,
    target: OntologyDoc,
    provider,
    template: PromptTemplate = PromptTemplate.PT1,
    cache: VerdictCache | None = None,
    policy: LabelPolicy = LabelPolicy.NAME_THEN_LABEL,
) -> RepairResult:
    """Two-step repair: T+N key confirmation, then LLM filtering of the rest."""
    cache = cache if cache is not None else VerdictCache()
    tn_config = PipelineConfig(steps=(Tokenise(), Normalise()))
    source_map = source.iri_map()
    target_map = target.iri_map()
    issued_before = getattr(provider, "requests_issued", 0)
    kept = []
    audits = []
    step1_kept = removed = unparseable_kept = 0
    for cell in alignment.sorted_cells():
        e1 = source_map.get(cell.entity1)
        e2 = target_map.get(cell.entity2)
        text1 = display_text(e1, policy) if e1 else ""
        text2 = display_text(e2, policy) if e2 else ""
        if text1 and text2 and apply_pipeline(text1, tn_config) == apply_pipeline(text2, tn_config):
            kept.append(cell)
            step1_kept += 1
            audits.append(RepairAudit(cell.entity1, cell.entity2, "step1-kept"))
            continue
        verdict = classify_pair(provider, template, text1 or cell.entity1, text2 or cell.entity2, cache)
        if verdict.answer is Answer.NO:
            removed += 1
            audits.append(RepairAudit(cell.entity1, cell.entity2, "removed-no", verdict))
        elif verdict.answer is Answer.YES:
            kept.append(cell)
            audits.append(RepairAudit(cell.entity1, cell.entity2, "kept-yes", verdict))
        else:
            kept.append(cell)
            unparseable_kept += 1
            audits.append(RepairAudit(cell.entity1, cell.entity2, "kept-unparseable", verdict))
    repaired = replace(alignment, cells=tuple(kept),
                       provenance=(alignment.provenance + " llm-repair=" + template.name).strip())
    issued_after = getattr(provider, "requests_issued", 0)
    return RepairResult(
        alignment=repaired,
        audits=tuple(audits),
        step1_kept=step1_kept,
        removed=removed,
        unparseable_kept=unparseable_kept,
        requests_issued=issued_after - issued_before,
    )
