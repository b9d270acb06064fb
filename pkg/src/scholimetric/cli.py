"""Command-line interface: every pipeline stage as a subcommand.

All subcommands are deterministic: identical inputs (and seed, where one
applies) produce byte-identical output files. Validation failures exit with
status 2 and a single ``error: ...`` line on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .benchmarks import build_benchmark, distribution_export, render_benchmark_text
from .corpus import (
    Corpus,
    Window,
    export_corpus,
    ingest,
    load_archive,
    save_archive,
    select,
)
from .errors import ScholimetricError, ValidationError
from .evaluation import (
    BandScheme,
    confusion_matrix,
    gaming_analysis,
    h2_percentile_table,
    render_rec_table_text,
    report_for_set,
)
from .metrics import (
    MetricOptions,
    citation_count,
    hirsch_of_set,
    indirect_h2,
    single_publication_h,
)
from .synth import SynthSpec, synthesize_corpus


def fixtures_dir() -> Path:
    """Bundled fixture directory; SCHOLIMETRIC_FIXTURES overrides it."""
    override = os.environ.get("SCHOLIMETRIC_FIXTURES")
    if override:
        return Path(override)
    return Path(__file__).parent / "fixtures"


DEFAULT_JOURNALS = "journals_0705.csv"
DEFAULT_INSTITUTIONS = "institutions_forestry.csv"


class _Parser(argparse.ArgumentParser):
    """argparse with the single-line machine-parseable error contract."""

    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _add_corpus_args(p: argparse.ArgumentParser):
    p.add_argument("--corpus", help="corpus archive written by 'ingest'")
    p.add_argument("--pubs", help="publications JSONL")
    p.add_argument("--cites", help="citations JSONL")
    p.add_argument("--journals", help=f"journals CSV (default: bundled {DEFAULT_JOURNALS})")
    p.add_argument("--institutions",
                   help=f"institutions CSV (default: bundled {DEFAULT_INSTITUTIONS})")


def _add_filter_args(p: argparse.ArgumentParser, *, field_required=False,
                     window_required=True):
    p.add_argument("--field", required=field_required, help="4-digit field code")
    p.add_argument("--window", required=window_required,
                   help="publication window START:END:CENSUS")
    p.add_argument("--institution", action="append", default=None,
                   help="institution id (repeatable)")
    p.add_argument("--eligibility", choices=("strict", "implicit", "all"),
                   default="strict")
    p.add_argument("--exclude-self-citations", action="store_true")


def _load_corpus(args) -> Corpus:
    if args.corpus:
        return load_archive(args.corpus)
    if not args.pubs or not args.cites:
        raise ValidationError("need --corpus, or --pubs and --cites")
    journals = args.journals or fixtures_dir() / DEFAULT_JOURNALS
    institutions = args.institutions or fixtures_dir() / DEFAULT_INSTITUTIONS
    return ingest(args.pubs, args.cites, journals, institutions)


def _options(args, window: Window) -> MetricOptions:
    return MetricOptions(args.exclude_self_citations, window.census_year)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_text(path: Path, text: str):
    path.write_text(text, encoding="utf-8", newline="")
    print(f"wrote {path}")


def _write_json(path: Path, obj):
    _write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def cmd_ingest(args) -> int:
    """Validate the four source files and snapshot them into an archive."""
    corpus = _load_corpus(args)
    out = _out_dir(args)
    save_archive(corpus, out / "corpus.zip")
    print(f"wrote {out / 'corpus.zip'}")
    print(f"ingested {corpus.n_pubs} publications ({len(corpus.declared_ids())} declared), "
          f"{corpus.n_edges} citation edges, {len(corpus.journals)} journals, "
          f"{len(corpus.institutions)} institutions")
    return 0


def cmd_synth(args) -> int:
    """Write a synthetic corpus (seed mandatory, runs are reproducible)."""
    year_start, year_end = _parse_years(args.years)
    spec = SynthSpec(
        n_pubs=args.n_pubs, seed=args.seed, year_start=year_start,
        year_end=year_end, skew_mu=args.skew_mu, skew_sigma=args.skew_sigma,
        n_journals=args.n_journals, n_institutions=args.n_institutions,
        field_code=args.field or "0705",
    )
    corpus = synthesize_corpus(spec)
    out = _out_dir(args)
    for path in export_corpus(corpus, out).values():
        print(f"wrote {path}")
    print(f"synthesized {corpus.n_pubs} publications, {corpus.n_edges} citation edges")
    return 0


def _parse_years(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValidationError(f"years must be START:END, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ValidationError(f"years must be integers, got {text!r}") from None


def cmd_benchmark(args) -> int:
    """Write the per-year global benchmark table as JSON."""
    corpus = _load_corpus(args)
    window = Window.from_string(args.window)
    table = build_benchmark(corpus, args.field, window, _options(args, window))
    out = _out_dir(args)
    _write_json(out / "benchmark.json", table.to_json_dict())
    _write_text(out / "benchmark.txt", render_benchmark_text(table))
    return 0


def _selection(corpus, args, window):
    return select(corpus, window, institutions=args.institution,
                  field_code=args.field, eligibility=args.eligibility)


def cmd_metrics(args) -> int:
    """h, per-publication single-publication h, and indirect H2 for a selection."""
    corpus = _load_corpus(args)
    window = Window.from_string(args.window)
    options = _options(args, window)
    pubs = sorted(_selection(corpus, args, window))
    h = hirsch_of_set(corpus, pubs, options)
    h2 = indirect_h2(corpus, pubs, options)
    per_pub = [
        {
            "id": pid,
            "citations": citation_count(corpus, pid, options),
            "single_publication_h": single_publication_h(corpus, pid, options).value,
        }
        for pid in pubs
    ]
    _write_json(_out_dir(args) / "metrics.json", {
        "window": str(window),
        "field": args.field,
        "institutions": sorted(args.institution) if args.institution else None,
        "eligibility": args.eligibility,
        "n_selected": len(pubs),
        "hirsch_h": h.value,
        "hirsch_core": list(h.core),
        "indirect_h2": h2.value,
        "h2_core": list(h2.core),
        "per_publication": per_pub,
    })
    return 0


def cmd_rec_table(args) -> int:
    """Committee-shape report, one column per institution (plus combined)."""
    corpus = _load_corpus(args)
    window = Window.from_string(args.window)
    options = _options(args, window)
    institutions = args.institution or []
    if not institutions:
        raise ValidationError("rec-table needs at least one --institution")
    benchmark = build_benchmark(corpus, args.field, window, options)
    reports = []
    union: set[str] = set()
    for inst in institutions:
        pubs = select(corpus, window, institutions=[inst], field_code=args.field,
                      eligibility=args.eligibility)
        union.update(pubs)
        reports.append(report_for_set(corpus, pubs, benchmark, window, options,
                                      label=inst, field_code=args.field))
    if len(institutions) > 1:
        reports.append(report_for_set(corpus, union, benchmark, window, options,
                                      label="combined", field_code=args.field))
    out = _out_dir(args)
    _write_json(out / "rec_table.json",
                {"field": args.field, "window": str(window),
                 "columns": [r.to_json_dict() for r in reports]})
    _write_text(out / "rec_table.txt",
                render_rec_table_text(reports, title=f"Field {args.field}, window {window}"))
    return 0


def cmd_game(args) -> int:
    """Three-case submission report: all-inclusive / strict / selective."""
    corpus = _load_corpus(args)
    window = Window.from_string(args.window)
    options = _options(args, window)
    if not args.institution or len(args.institution) != 1:
        raise ValidationError("game needs exactly one --institution")
    keywords = [k.strip() for k in (args.keywords or "").split(",") if k.strip()]
    if not keywords:
        raise ValidationError("game needs --keywords (comma-separated list)")
    benchmark = build_benchmark(corpus, args.field, window, options)
    result = gaming_analysis(corpus, args.institution[0], args.field, window,
                             keywords, args.min_size, benchmark, options)
    out = _out_dir(args)
    _write_json(out / "game.json", result.to_json_dict())
    text = render_rec_table_text(
        list(result.reports()),
        title=(f"Institution {args.institution[0]}, field {args.field}, "
               f"window {window}, selective size {args.min_size}"))
    text += ("note: the selective case maximizes mean RCI only; share rows are "
             "reported, not optimized\n")
    _write_text(out / "game.txt", text)
    return 0


def cmd_confusion(args) -> int:
    """Cross-tabulate external ratings against H2 bands from a ratings CSV."""
    import csv as _csv

    with open(args.ratings, newline="", encoding="utf-8") as fh:
        reader = _csv.DictReader(fh)
        if reader.fieldnames is None or not {"rating", "h2"} <= set(reader.fieldnames):
            raise ValidationError("ratings CSV needs 'rating' and 'h2' columns")
        try:
            pairs = [(row["rating"].strip(), int(row["h2"])) for row in reader]
        except (TypeError, KeyError, ValueError):
            raise ValidationError("ratings CSV has a malformed row") from None
    scheme = BandScheme.parse(args.bands)
    result = confusion_matrix(pairs, scheme)
    _write_text(_out_dir(args) / "confusion.csv", result.to_csv())
    return 0


def cmd_percentiles(args) -> int:
    """H2 percentile bars across institutions.

    Reads institution H2 values from --values, or computes them from the
    corpus (each registry institution's field submission) when omitted.
    """
    import csv as _csv

    if args.values:
        with open(args.values, newline="", encoding="utf-8") as fh:
            reader = _csv.DictReader(fh)
            if reader.fieldnames is None or not {"institution", "h2"} <= set(reader.fieldnames):
                raise ValidationError("values CSV needs 'institution' and 'h2' columns")
            try:
                values = {row["institution"]: int(row["h2"]) for row in reader}
            except (TypeError, KeyError, ValueError):
                raise ValidationError("values CSV has a malformed row") from None
    else:
        corpus = _load_corpus(args)
        if not args.field or not args.window:
            raise ValidationError("computing H2 values needs --field and --window")
        window = Window.from_string(args.window)
        options = _options(args, window)
        values = {}
        for inst in corpus.institutions:
            pubs = select(corpus, window, institutions=[inst], field_code=args.field,
                          eligibility=args.eligibility)
            values[inst] = indirect_h2(corpus, pubs, options).value
    table = h2_percentile_table(values)
    _write_json(_out_dir(args) / "percentiles.json", {
        "n_institutions": len(values),
        "thresholds": {str(p): v for p, v in table.items()},
    })
    return 0


def cmd_distribution(args) -> int:
    """Per-year descending citation curves plus mean markers."""
    corpus = _load_corpus(args)
    window = Window.from_string(args.window)
    options = _options(args, window)
    pubs = None
    if args.institution:
        pubs = select(corpus, window, institutions=args.institution,
                      field_code=args.field, eligibility=args.eligibility)
    dist = distribution_export(corpus, args.field, window, options, pubs=pubs)
    out = _out_dir(args)
    _write_text(out / "distribution.csv", dist.to_csv())
    _write_json(out / "distribution_means.json", dist.means_dict())
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="scholimetric",
                     description="Citation-graph analytics: indirect H2, benchmarks, "
                                 "committee tables and gaming analyses")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and snapshot a corpus", parents=[])
    _add_corpus_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("synth", help="write a deterministic synthetic corpus")
    p.add_argument("--n-pubs", type=int, required=True)
    p.add_argument("--seed", type=int, required=True,
                   help="mandatory; there is no time-derived default")
    p.add_argument("--years", default="2005:2010", help="START:END publication years")
    p.add_argument("--skew-mu", type=float, default=1.1)
    p.add_argument("--skew-sigma", type=float, default=1.3)
    p.add_argument("--n-journals", type=int, default=8)
    p.add_argument("--n-institutions", type=int, default=12)
    p.add_argument("--field", help="field code for the synthetic journals")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("benchmark", help="per-year global benchmark table")
    _add_corpus_args(p)
    _add_filter_args(p, field_required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("metrics", help="h, single-publication h, indirect H2")
    _add_corpus_args(p)
    _add_filter_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("rec-table", help="committee-shape report per institution")
    _add_corpus_args(p)
    _add_filter_args(p, field_required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_rec_table)

    p = sub.add_parser("game", help="all-inclusive / strict / selective comparison")
    _add_corpus_args(p)
    _add_filter_args(p, field_required=True)
    p.add_argument("--keywords", help="comma-separated reassignment keywords")
    p.add_argument("--min-size", type=int, default=50,
                   help="selective submission size (default 50)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("confusion", help="ratings vs H2 bands confusion matrix")
    p.add_argument("--ratings", required=True, help="CSV with rating,h2 columns")
    p.add_argument("--bands", required=True, help="e.g. \"4;5;6-7;8+\"")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_confusion)

    p = sub.add_parser("percentiles", help="H2 percentile bars across institutions")
    _add_corpus_args(p)
    _add_filter_args(p, window_required=False)
    p.add_argument("--values", help="CSV with institution,h2 columns")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_percentiles)

    p = sub.add_parser("distribution", help="per-year citation curves")
    _add_corpus_args(p)
    _add_filter_args(p, field_required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_distribution)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse validation or --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ScholimetricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
