"""Command-line interface: match, evaluate, repair, and sweep experiments."""

from __future__ import annotations

import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from ontomatch import metrics, ontio
from ontomatch.errors import OntomatchError
from ontomatch.llm_repair import (
    HttpProvider,
    PromptTemplate,
    ProviderConfig,
    StubProvider,
    VerdictCache,
    repair_alignment,
)
from ontomatch.logic_repair import build_joint_reserved_set, load_reserved_set, save_reserved_set
from ontomatch.matcher import match_ontologies
from ontomatch.metrics import evaluate, reserved_density
from ontomatch.model import LabelPolicy
from ontomatch.pipeline import PipelineConfig, parse_pipeline_spec
from ontomatch.lemmatizer import MorphyLexicon


_POLICIES = {p.value: p for p in LabelPolicy}


def _build_config(pipeline: str, stop_keep: str | None, wordnet: str | None) -> PipelineConfig:
    kwargs = {}
    if stop_keep:
        keep = Path(stop_keep).read_text(encoding="utf-8").split()
        kwargs["stop_list_keep"] = frozenset(w.lower() for w in keep)
    if wordnet:
        kwargs["lexicon"] = MorphyLexicon(wordnet)
    return parse_pipeline_spec(pipeline, **kwargs)


def _load_provider(provider_path: str | None):
    if not provider_path:
        return StubProvider()
    with open(provider_path, "rb") as handle:
        data = tomllib.load(handle)
    if data.get("type", "http") == "stub":
        return StubProvider()
    config = ProviderConfig(
        endpoint=data["endpoint"],
        model_name=data.get("model", "gpt"),
        retry_limit=int(data.get("retry_limit", 2)),
        timeout=float(data.get("timeout", 30.0)),
        auth_header=data.get("auth_header", "Authorization"),
        auth_scheme=data.get("auth_scheme", "Bearer"),
        max_in_flight=int(data.get("max_in_flight", 1)),
    )
    return HttpProvider(config)


format_option = click.option(
    "--format", "fmt", type=click.Choice(["rdfxml", "turtle"]), default=None,
    help="Ontology format (default: guessed from the file suffix).",
)
pipeline_option = click.option(
    "--pipeline", default="T,N", show_default=True,
    help='Preprocessing steps, e.g. "T,N,R,S:porter" or "T,N,L:pos".',
)
policy_option = click.option(
    "--label-policy", type=click.Choice(sorted(_POLICIES)), default="name-first",
    show_default=True, help="Which entity text to match on first.",
)
stop_keep_option = click.option(
    "--stop-keep", type=click.Path(exists=True), default=None,
    help="File of stop words to retain (one per line).",
)
wordnet_option = click.option(
    "--wordnet", type=click.Path(exists=True), default=None,
    help="Directory with morphy lexicon files (defaults to the bundled one).",
)


def _load_pair(source, target, fmt):
    return (
        ontio.load_ontology(source, format=fmt),
        ontio.load_ontology(target, format=fmt),
    )


@click.group()
def main():
    """Syntactic ontology matching, evaluation, and mapping repair."""


@main.command()
@click.argument("source", type=click.Path(exists=True))
@click.argument("target", type=click.Path(exists=True))
@format_option
@pipeline_option
@policy_option
@stop_keep_option
@wordnet_option
@click.option("--reserved", type=click.Path(exists=True), default=None,
              help="Reserved-word file produced by repair-logic.")
@click.option("--out", type=click.Path(), required=True, help="Alignment output file.")
def match(source, target, fmt, pipeline, label_policy, stop_keep, wordnet, reserved, out):
    """Match two ontologies by canonical-key equality."""
    config = _build_config(pipeline, stop_keep, wordnet)
    reserved_set = load_reserved_set(reserved) if reserved else None
    src, tgt = _load_pair(source, target, fmt)
    alignment = match_ontologies(src, tgt, config, reserved_set, _POLICIES[label_policy])
    ontio.save_alignment(alignment, out)
    click.echo(f"{len(alignment)} correspondences -> {out}")


@main.command("eval")
@click.argument("alignment", type=click.Path(exists=True))
@click.argument("reference", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True, help="Emit the full report as JSON.")
def eval_command(alignment, reference, as_json):
    """Score an alignment against a gold reference."""
    produced = ontio.load_alignment(alignment)
    gold = ontio.load_alignment(reference)
    report = evaluate(produced, gold)
    if as_json:
        click.echo(metrics.report_to_json(report, produced.provenance))
    else:
        click.echo(
            f"tp={report.tp} fp={report.fp} fn={report.fn} "
            f"precision={report.precision:.4f} recall={report.recall:.4f} f1={report.f1:.4f}"
        )


@main.command("repair-logic")
@click.argument("source", type=click.Path(exists=True))
@click.argument("target", type=click.Path(exists=True))
@format_option
@pipeline_option
@policy_option
@stop_keep_option
@wordnet_option
@click.option("--out", type=click.Path(), required=True, help="Reserved-word output file.")
@click.option("--rematch", type=click.Path(), default=None,
              help="Also write the repaired alignment to this file.")
def repair_logic(source, target, fmt, pipeline, label_policy, stop_keep, wordnet, out, rematch):
    """Compute the reserved-word set preventing within-ontology collisions."""
    config = _build_config(pipeline, stop_keep, wordnet)
    policy = _POLICIES[label_policy]
    src, tgt = _load_pair(source, target, fmt)
    reserved = build_joint_reserved_set(src, tgt, config, policy)
    save_reserved_set(reserved, out)
    click.echo(f"{len(reserved)} reserved words -> {out}")
    if rematch:
        alignment = match_ontologies(src, tgt, config, reserved, policy)
        ontio.save_alignment(alignment, rematch)
        click.echo(f"{len(alignment)} correspondences -> {rematch}")


@main.command("repair-llm")
@click.argument("alignment", type=click.Path(exists=True))
@click.argument("source", type=click.Path(exists=True))
@click.argument("target", type=click.Path(exists=True))
@format_option
@policy_option
@click.option("--template", type=click.Choice([t.name for t in PromptTemplate]), default="PT1",
              show_default=True)
@click.option("--provider", "provider_path", type=click.Path(exists=True), default=None,
              help="Provider TOML config; omitted -> offline stub provider.")
@click.option("--cache", "cache_path", type=click.Path(), default=None,
              help="JSONL verdict cache file (reused across runs).")
@click.option("--out", type=click.Path(), required=True, help="Repaired alignment output file.")
def repair_llm(alignment, source, target, fmt, label_policy, template, provider_path, cache_path, out):
    """Filter false mappings with yes/no LLM verdicts (two-step repair)."""
    src, tgt = _load_pair(source, target, fmt)
    produced = ontio.load_alignment(alignment)
    provider = _load_provider(provider_path)
    cache = VerdictCache(cache_path)
    result = repair_alignment(
        produced, src, tgt, provider, PromptTemplate[template], cache, _POLICIES[label_policy]
    )
    ontio.save_alignment(result.alignment, out)
    click.echo(
        f"kept {len(result.alignment)}/{len(produced)} "
        f"(step1={result.step1_kept} removed={result.removed} "
        f"unparseable={result.unparseable_kept} requests={result.requests_issued}) -> {out}"
    )


@main.command("reserved-density")
@click.argument("reserved", type=click.Path(exists=True))
@click.argument("source", type=click.Path(exists=True))
@click.argument("target", type=click.Path(exists=True))
@format_option
def reserved_density_command(reserved, source, target, fmt):
    """Reserved words per 100 entities for an ontology pair."""
    src, tgt = _load_pair(source, target, fmt)
    value = reserved_density(load_reserved_set(reserved), src, tgt)
    click.echo(f"{value:.4f}")


def _checksum(*parts: bytes) -> str:
    digest = hashlib.sha256()
    for part in parts:
        digest.update(part)
        digest.update(b"\x00")
    return digest.hexdigest()


def _run_job(job, manifest_dir, out_dir, provider, cache, fmt):
    """One (pair × pipeline × repair) unit; returns (row, error_or_None)."""
    pair, config_id, spec, repair_mode, policy, stop_keep, wordnet = job
    pair_id = pair["id"]
    job_name = f"{pair_id}__{config_id}__{repair_mode}"
    sidecar = out_dir / f"{job_name}.json"
    source_path = manifest_dir / pair["source"]
    target_path = manifest_dir / pair["target"]
    reference_path = manifest_dir / pair["reference"]
    checksum = _checksum(
        source_path.read_bytes(),
        target_path.read_bytes(),
        reference_path.read_bytes(),
        spec.encode(),
        repair_mode.encode(),
        policy.value.encode(),
    )
    if sidecar.exists():
        record = json.loads(sidecar.read_text(encoding="utf-8"))
        if record.get("checksum") == checksum:
            return record["row"], None
    try:
        config = _build_config(spec, stop_keep, wordnet)
        src = ontio.load_ontology(source_path, format=fmt)
        tgt = ontio.load_ontology(target_path, format=fmt)
        reference = ontio.load_alignment(reference_path)
        reserved = None
        if repair_mode in ("logic", "combined"):
            reserved = build_joint_reserved_set(src, tgt, config, policy)
        alignment = match_ontologies(src, tgt, config, reserved, policy)
        if repair_mode in ("llm", "combined"):
            alignment = repair_alignment(alignment, src, tgt, provider, cache=cache, policy=policy).alignment
        ontio.save_alignment(alignment, out_dir / f"{job_name}.rdf")
        report = evaluate(alignment, reference)
        row = metrics.csv_row(report, pair.get("track", ""), pair_id, f"{config_id}+{repair_mode}")
        sidecar.write_text(json.dumps({"checksum": checksum, "row": row}), encoding="utf-8")
        return row, None
    except (OntomatchError, OSError, ValueError, KeyError) as exc:
        return None, f"{job_name}: {type(exc).__name__}: {exc}"


@main.command()
@click.argument("manifest", type=click.Path(exists=True))
@format_option
@stop_keep_option
@wordnet_option
@click.option("--provider", "provider_path", type=click.Path(exists=True), default=None)
@click.option("--cache", "cache_path", type=click.Path(), default=None)
@click.option("--jobs", type=int, default=1, show_default=True, help="Parallel job bound.")
@click.option("--out", "out_dir", type=click.Path(), default=None,
              help="Output directory (default: manifest's output_dir).")
def sweep(manifest, fmt, stop_keep, wordnet, provider_path, cache_path, jobs, out_dir):
    """Run every (pair × pipeline × repair) combination from a TOML manifest.

    Completed jobs whose inputs are unchanged are skipped on rerun.
    Exit code 2 signals partial failure (details in errors.log).
    """
    manifest_path = Path(manifest)
    with manifest_path.open("rb") as handle:
        data = tomllib.load(handle)
    manifest_dir = manifest_path.parent
    out_path = Path(out_dir or manifest_dir / data.get("output_dir", "out"))
    out_path.mkdir(parents=True, exist_ok=True)
    policy = _POLICIES[data.get("label_policy", "name-first")]
    repair_modes = data.get("repair", ["none"])
    if isinstance(repair_modes, str):
        repair_modes = [repair_modes]
    config_ids = [p["id"] for p in data["pipelines"]]
    if len(set(config_ids)) != len(config_ids):
        raise click.ClickException("pipeline config_ids must be unique")
    for pair in data["pairs"]:
        for key in ("source", "target", "reference"):
            if not (manifest_dir / pair[key]).exists():
                raise click.ClickException(f"missing input file: {pair[key]}")
    provider = _load_provider(provider_path or data.get("provider_file"))
    cache = VerdictCache(cache_path)
    job_list = [
        (pair, p["id"], p["spec"], mode, policy, stop_keep, wordnet)
        for pair in data["pairs"]
        for p in data["pipelines"]
        for mode in repair_modes
    ]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(
                pool.map(lambda j: _run_job(j, manifest_dir, out_path, provider, cache, fmt), job_list)
            )
    else:
        outcomes = [_run_job(j, manifest_dir, out_path, provider, cache, fmt) for j in job_list]
    rows = [row for row, _ in outcomes if row is not None]
    errors = [err for _, err in outcomes if err is not None]
    (out_path / "results.csv").write_text(metrics.write_csv(rows), encoding="utf-8")
    if errors:
        (out_path / "errors.log").write_text("".join(e + "\n" for e in errors), encoding="utf-8")
        click.echo(f"{len(rows)} ok, {len(errors)} failed (see {out_path / 'errors.log'})", err=True)
        sys.exit(2)
    click.echo(f"{len(rows)} results -> {out_path / 'results.csv'}")


if __name__ == "__main__":
    main()
