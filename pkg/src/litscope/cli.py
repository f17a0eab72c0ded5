"""Command-line interface: run inquiries, serve the API, fetch and
generate corpora.

Exit codes are distinct per failure class so scripts can branch on them:
0 success, 2 configuration problem, 3 corpus problem, 4 other I/O failure.
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click

from .aggregate import InquiryResult, OverviewTable, overview, run_inquiry
from .corpus import Corpus, CorpusError, load_corpus, save_corpus, synthetic_corpus
from .entrez import EntrezClient, EntrezError, fetch_entrez
from .inquiry import InquiryValidationError, validate
from .lexicon import LexiconError, load_synonyms
from .service import ENV_PORT, create_app, default_synonyms

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CORPUS = 3
EXIT_IO = 4


class CliFailure(click.ClickException):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def _read_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            config = json.load(fh)
    except OSError as exc:
        raise CliFailure(f"cannot read config {path}: {exc}", EXIT_CONFIG) from exc
    except json.JSONDecodeError as exc:
        raise CliFailure(f"config {path} is not valid JSON: {exc.msg}", EXIT_CONFIG) from exc
    if not isinstance(config, dict):
        raise CliFailure(f"config {path} must be a JSON object", EXIT_CONFIG)
    return config


def _load_corpus(path: str) -> Corpus:
    try:
        return load_corpus(path)
    except CorpusError as exc:
        raise CliFailure(f"corpus {path}: {exc}", EXIT_CORPUS) from exc
    except OSError as exc:
        raise CliFailure(f"cannot read corpus {path}: {exc}", EXIT_CORPUS) from exc


def _load_lexicon(path: str | None):
    if path is None:
        return default_synonyms()
    try:
        return load_synonyms(path)
    except (LexiconError, OSError) as exc:
        raise CliFailure(f"lexicon {path}: {exc}", EXIT_CONFIG) from exc


def format_csv(table: OverviewTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["row", "column", "count", "percent"])
    for row in table.rows:
        for col in table.columns:
            cell = table.cells[row][col]
            percent = f"{cell.percent:.1f}" if cell.percent is not None else ""
            writer.writerow([row, col, cell.count, percent])
    return buf.getvalue()


def format_table(table: OverviewTable) -> str:
    headers = ["main variant", *table.columns]
    body: list[list[str]] = []
    for row in table.rows:
        cells = [row]
        for col in table.columns:
            cell = table.cells[row][col]
            percent = f"{cell.percent:.1f}%" if cell.percent is not None else "-"
            cells.append(f"{cell.count} ({percent})")
        body.append(cells)
    widths = [max(len(line[k]) for line in [headers, *body]) for k in range(len(headers))]
    lines = [" | ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("-+-".join("-" * w for w in widths))
    for cells in body:
        lines.append(" | ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip())
    return "\n".join(lines) + "\n"


def format_flat_object(table: OverviewTable, result: InquiryResult | None = None) -> str:
    payload: dict = {"overview": table.to_payload()}
    if result is not None:
        payload["result"] = result.to_payload()
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


@click.group()
@click.version_option(package_name="litscope")
def main() -> None:
    """Juxtaposed co-occurrence search over literature corpora."""


@main.command("run")
@click.option("--config", "config_path", required=True, help="Inquiry config file (JSON).")
@click.option("--corpus", "corpus_path", required=True, help="Corpus interchange file (JSON Lines).")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["table", "flat-object", "csv"]),
    default="table",
    show_default=True,
    help="Overview output format.",
)
@click.option("--fields", type=click.Choice(["title", "abstract", "all"]), help="Override config fields.")
@click.option("--window", type=int, help="Override config window (max intermediate words).")
@click.option("--after", type=int, help="Include only documents published in or after this year.")
@click.option("--before", type=int, help="Include only documents published in or before this year.")
@click.option("--lexicon", "lexicon_path", help="Synonym lexicon file; defaults to the built-in one.")
@click.option("--full", is_flag=True, help="With flat-object: include the full result payload.")
def run_cmd(
    config_path: str,
    corpus_path: str,
    fmt: str,
    fields: str | None,
    window: int | None,
    after: int | None,
    before: int | None,
    lexicon_path: str | None,
    full: bool,
) -> None:
    """Execute an inquiry and print the overview table."""
    config = _read_config(config_path)
    corpus = _load_corpus(corpus_path)
    synonyms = _load_lexicon(lexicon_path)

    draft = dict(config)
    if fields is not None:
        draft["fields"] = fields
    if window is not None:
        draft["window"] = window
    if after is not None or before is not None:
        base = draft.get("interval") or {}
        year_range = corpus.year_range()
        begin = after if after is not None else base.get("begin")
        end = before if before is not None else base.get("end")
        if begin is None:
            begin = year_range.begin if year_range else 1000
        if end is None:
            end = year_range.end if year_range else 9999
        draft["interval"] = {"begin": begin, "end": end}

    try:
        inquiry = validate(draft, synonyms=synonyms)
    except InquiryValidationError as exc:
        raise CliFailure(f"invalid inquiry: {exc}", EXIT_CONFIG) from exc

    result = run_inquiry(inquiry, corpus)
    table = overview(result)
    for warning in result.warnings:
        click.echo(f"warning: {warning}", err=True)

    if fmt == "csv":
        output = format_csv(table)
    elif fmt == "flat-object":
        output = format_flat_object(table, result if full else None)
    else:
        output = format_table(table)
    try:
        click.echo(output, nl=False)
    except OSError as exc:
        raise CliFailure(f"cannot write output: {exc}", EXIT_IO) from exc


@main.command("serve")
@click.option("--corpus", "corpus_path", required=True, help="Corpus interchange file.")
@click.option("--lexicon", "lexicon_path", help="Synonym lexicon file.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=None, help=f"Defaults to ${ENV_PORT} or 8000.")
@click.option("--ui-origin", help="Origin allowed for cross-origin requests.")
def serve_cmd(
    corpus_path: str,
    lexicon_path: str | None,
    host: str,
    port: int | None,
    ui_origin: str | None,
) -> None:
    """Serve the HTTP API over the given corpus."""
    import os

    import uvicorn

    corpus = _load_corpus(corpus_path)
    synonyms = _load_lexicon(lexicon_path)
    app = create_app(corpus=corpus, synonyms=synonyms, ui_origin=ui_origin)
    if port is None:
        port = int(os.environ.get(ENV_PORT, "8000"))
    click.echo(f"serving {corpus.source_label!r} ({len(corpus)} documents) on {host}:{port}")
    uvicorn.run(app, host=host, port=port)


@main.command("fetch")
@click.argument("term")
@click.option("--out", "out_path", required=True, help="Output corpus interchange file.")
@click.option("--rate-limit", type=float, default=3.0, show_default=True, help="Requests per second.")
@click.option("--page-size", type=int, default=200, show_default=True)
def fetch_cmd(term: str, out_path: str, rate_limit: float, page_size: int) -> None:
    """Fetch records matching TERM and write them as an interchange file."""
    client = EntrezClient(rate_limit=rate_limit, page_size=page_size)
    try:
        records = fetch_entrez(term, client=client, warn=lambda m: click.echo(f"warning: {m}", err=True))
    except EntrezError as exc:
        raise CliFailure(str(exc), EXIT_IO) from exc
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            for rec in records:
                obj: dict = {"id": rec.id, "title": rec.title, "abstract": rec.abstract}
                if rec.year is not None:
                    obj["year"] = rec.year
                if rec.doi:
                    obj["doi"] = rec.doi
                fh.write(json.dumps(obj, ensure_ascii=False) + "\n")
    except OSError as exc:
        raise CliFailure(f"cannot write {out_path}: {exc}", EXIT_IO) from exc
    click.echo(f"wrote {len(records)} records to {out_path}")


@main.command("generate")
@click.option("--seed", type=int, required=True, help="RNG seed; same seed, same corpus.")
@click.option("--docs", type=int, default=50, show_default=True)
@click.option("--vocab", type=int, default=40, show_default=True)
@click.option("--out", "out_path", required=True, help="Output corpus interchange file.")
def generate_cmd(seed: int, docs: int, vocab: int, out_path: str) -> None:
    """Write a deterministic synthetic corpus (for tests and demos)."""
    corpus = synthetic_corpus(seed, n_docs=docs, vocab_size=vocab)
    try:
        save_corpus(corpus, out_path)
    except OSError as exc:
        raise CliFailure(f"cannot write {out_path}: {exc}", EXIT_IO) from exc
    click.echo(f"wrote {len(corpus)} documents to {out_path}")


if __name__ == "__main__":
    sys.exit(main())
