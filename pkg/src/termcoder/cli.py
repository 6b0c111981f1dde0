"""Command line interface: encode, bench and serve subcommands."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .config import CoderConfig
from .evaluation import EvaluationError, load_corpus, run_benchmark, write_report_csv, write_report_json
from .terminology import TerminologyError


def _build_coder(dict_path: str, config_path: str | None, max_terms: int | None):
    config = CoderConfig.from_file(config_path) if config_path else CoderConfig()
    coder = config.make_coder(max_terms=max_terms)
    return coder.fit(dict_path)


def _winner_payload(result) -> list[dict]:
    tokens = {t.index: t for t in result.tokens}
    payload = []
    for w in result.winners:
        payload.append(
            {
                "llt_id": w.llt_id,
                "llt_text": w.llt_text,
                "pt_id": w.pt_id,
                "pt_text": w.pt_text,
                "weights": w.weights.to_dict(),
                "voters": [
                    {
                        "index": i,
                        "surface": tokens[i].surface,
                        "char_span": [tokens[i].start, tokens[i].end],
                    }
                    for i in w.voters
                ],
                "stem_used": w.stem_used,
                "via_synonym": w.via_synonym,
            }
        )
    return payload


@click.group()
def main():
    """Terminology auto-coding for narrative reaction descriptions."""


@main.command()
@click.option("--dict", "dict_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Terminology CSV.")
@click.option("--text", default=None, help="Description to encode.")
@click.option("--stdin", "use_stdin", is_flag=True, help="Read the description from stdin.")
@click.option("--max-terms", type=int, default=None, help="Cap on released terms (default 6).")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              help="YAML config file.")
@click.option("--json", "as_json", is_flag=True, help="Print winners as a JSON array.")
@click.option("--table", "as_table", is_flag=True, help="Print winners as a table (default).")
def encode(dict_path, text, use_stdin, max_terms, config_path, as_json, as_table):
    """Encode one description against a terminology."""
    if text is None and not use_stdin:
        raise click.UsageError("provide --text or --stdin")
    if text is None:
        text = sys.stdin.read()
    try:
        coder = _build_coder(dict_path, config_path, max_terms)
        result = coder.encode(text)
    except (TerminologyError, ValueError) as exc:
        raise click.ClickException(str(exc))
    if result.negation_alert:
        click.echo("warning: possible negation in the description", err=True)
    if as_json:
        click.echo(json.dumps(_winner_payload(result), ensure_ascii=False, indent=2))
        return
    if not result.winners:
        click.echo("no candidate terms")
        return
    header = f"{'llt_id':<12} {'term':<40} {'pt':<30} {'weights (cov/stem/dist/dens)'}"
    click.echo(header)
    click.echo("-" * len(header))
    for w in result.winners:
        weights = w.weights
        wtxt = f"{weights.coverage:.2f}/{weights.stem_flag}/{weights.text_distance:.2f}/{weights.density:.2f}"
        note = f"  (via synonym: {w.via_synonym})" if w.via_synonym else ""
        click.echo(f"{w.llt_id:<12} {w.llt_text:<40} {w.pt_text:<30} {wtxt}{note}")


@main.command()
@click.option("--dict", "dict_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Terminology CSV.")
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Gold corpus (JSON lines).")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False),
              help="Output directory for report.csv and report.json.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              help="YAML config file.")
def bench(dict_path, corpus, out_dir, config_path):
    """Benchmark the coder against a gold-annotated corpus."""
    try:
        coder = _build_coder(dict_path, config_path, None)
        cases = load_corpus(corpus)
        report = run_benchmark(cases, coder)
    except (TerminologyError, EvaluationError, ValueError) as exc:
        raise click.ClickException(str(exc))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_report_csv(report, out / "report.csv")
    write_report_json(report, out / "report.json")
    overall = report.overall
    click.echo(f"cases: {overall.reports} scored, {overall.excluded} excluded")
    click.echo(f"recall: {overall.recall:.2f}%  precision: {overall.precision:.2f}%")
    click.echo(f"reports written to {out / 'report.csv'} and {out / 'report.json'}")


@main.command()
@click.option("--dict", "dict_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Terminology CSV.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              help="YAML config file.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--review-log", default="review_log.jsonl", show_default=True,
              help="Append-only review decision log.")
@click.option("--ui", "ui_dir", type=click.Path(file_okay=False, exists=True), default=None,
              help="Directory with the built reviewer UI to serve at /.")
def serve(dict_path, config_path, host, port, review_log, ui_dir):
    """Run the HTTP encoding and review service."""
    import uvicorn

    from .service import create_app

    config = CoderConfig.from_file(config_path) if config_path else CoderConfig()
    app = create_app(dict_path=dict_path, config=config, review_log=review_log, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
