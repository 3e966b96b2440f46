"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error (missing or malformed
files), 3 study error (e.g. no shared concepts, missing predictions).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import compare as cmp
from . import corpus, evaluate
from .errors import DataError, EmptyForm, StudyError
from .metrics import (
    DistanceParams,
    classify_pair,
    edit_distance,
    normalized_edit_distance,
    sca_distance,
)
from .phonoseg import PreprocessOptions, default_model, load_sound_class_model, parse_form

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_STUDY = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _model(args):
    if getattr(args, "model", None):
        return load_sound_class_model(args.model)
    return default_model()


def _params(args):
    try:
        return DistanceParams(model=_model(args), threshold=args.threshold)
    except ValueError as err:
        raise UsageError(str(err))


def cmd_compare(args):
    config = cmp.load_config(args.config)
    params = _params(args)
    report = cmp.run_study(config, mode=args.mode, params=params, jobs=args.jobs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.format == "markdown":
        (out / "pairs.tsv").write_text(cmp.render_pairs_tsv(report), encoding="utf-8")
        (out / "groups.md").write_text(cmp.render_groups_markdown(report), encoding="utf-8")
    else:
        (out / "pairs.tsv").write_text(cmp.render_pairs_tsv(report), encoding="utf-8")
        (out / "groups.tsv").write_text(cmp.render_groups_tsv(report), encoding="utf-8")
    total = report.group_rows[-1]
    header = ["Group", "Pairs"]
    for m in ("Identical", "Similar", "SCA", "NED", "ED"):
        header += [m, "STD"]
    cells = [total.group, str(total.n_pairs)]
    for m in cmp.METRICS:
        cells += [f"{total.means[m]:.2f}", f"{total.stds[m]:.2f}"]
    print("\t".join(header))
    print("\t".join(cells))
    return EXIT_OK


def cmd_eval(args):
    gold = evaluate.load_gold(args.gold)
    params = _params(args)
    if args.config:
        config = cmp.load_config(args.config)
        records = []
        for gc in config.groups:
            ds_a = corpus.load_dataset(
                gc.dataset_a, PreprocessOptions(strip_tones=gc.strip_tones_a))
            ds_b = corpus.load_dataset(
                gc.dataset_b, PreprocessOptions(strip_tones=gc.strip_tones_b))
            if args.mode == "glottocode":
                pairs = corpus.glottocode_pairs(ds_a, ds_b)
            else:
                if gc.pair_file is None:
                    raise DataError(f"group {gc.name}: manual mode needs a pair file")
                pairs = corpus.load_manual_pairs(gc.pair_file, ds_a, ds_b)
            for pair in pairs:
                records.extend(cmp.iter_predictions(pair, ds_a, ds_b, params))
    else:
        records = evaluate.load_predictions(args.predictions)
    predictions = evaluate.predictions_from_records(records)
    result = evaluate.evaluate_predictions(predictions, gold, positive=args.positive)
    print(evaluate.render_eval_tsv(result), end="")
    return EXIT_OK


def cmd_stats(args):
    opts = PreprocessOptions(strip_tones=not args.keep_tones)
    ds = corpus.load_dataset(args.dataset, opts)
    print(f"dataset\t{ds.id}")
    print(f"varieties\t{len(ds.varieties)}")
    print(f"concepts\t{len(ds.concepts)}")
    print(f"forms\t{len(ds.forms)}")
    print(f"synonymy (per-variety mean)\t{corpus.synonymy(ds):.2f}")
    print(f"synonymy (pooled)\t{corpus.synonymy_pooled(ds):.2f}")
    for what, count in sorted(ds.drop_counts.items()):
        if count:
            print(f"dropped ({what})\t{count}")
    if args.coords:
        Path(args.coords).write_text(corpus.export_coordinates(ds), encoding="utf-8")
    return EXIT_OK


def cmd_pairs(args):
    config = cmp.load_config(args.config)
    for gc in config.groups:
        ds_a = corpus.load_dataset(gc.dataset_a)
        ds_b = corpus.load_dataset(gc.dataset_b)
        if args.mode == "glottocode":
            pairs = corpus.glottocode_pairs(ds_a, ds_b)
        else:
            if gc.pair_file is None:
                raise DataError(f"group {gc.name}: manual mode needs a pair file")
            pairs = corpus.load_manual_pairs(gc.pair_file, ds_a, ds_b)
        for pair in pairs:
            print(f"{gc.name}\t{pair.variety_a}\t{pair.variety_b}\t{pair.origin.value}")
    return EXIT_OK


def cmd_dist(args):
    params = _params(args)
    opts = PreprocessOptions(strip_tones=not args.keep_tones)
    try:
        a = parse_form(args.form_a, opts)
        b = parse_form(args.form_b, opts)
    except EmptyForm as err:
        raise UsageError(str(err))
    print("\t".join([
        f"sca {sca_distance(a, b, params.model):.4f}",
        f"ed {edit_distance(a, b)}",
        f"ned {normalized_edit_distance(a, b):.4f}",
        f"category {classify_pair(a, b, params)}",
    ]))
    return EXIT_OK


def _add_metric_flags(parser):
    parser.add_argument("--threshold", type=float, default=0.5,
                        help="similar/different boundary on the alignment distance")
    parser.add_argument("--model", help="path to an alternative sound-class model")


def build_parser():
    parser = _Parser(prog="lexicomp",
                     description="Compare concept translations across wordlists.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="run a full wordlist comparison study")
    p.add_argument("config")
    p.add_argument("--mode", choices=["glottocode", "manual"], default="glottocode")
    p.add_argument("--format", choices=["tsv", "markdown"], default="tsv")
    p.add_argument("--out", default=".")
    p.add_argument("--jobs", type=int, default=1)
    _add_metric_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("eval", help="score predictions against gold annotations")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--predictions", help="predictions file to score")
    src.add_argument("--config", help="study config to predict from")
    p.add_argument("gold")
    p.add_argument("--mode", choices=["glottocode", "manual"], default="manual")
    p.add_argument("--positive", choices=["same", "different"], default="same")
    _add_metric_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("stats", help="print dataset statistics")
    p.add_argument("dataset")
    p.add_argument("--coords", help="write a coordinate export to this file")
    p.add_argument("--keep-tones", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("pairs", help="list variety pairings for a study config")
    p.add_argument("config")
    p.add_argument("--mode", choices=["glottocode", "manual"], default="glottocode")
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("dist", help="distances and category for two raw forms")
    p.add_argument("form_a")
    p.add_argument("form_b")
    p.add_argument("--keep-tones", action="store_true")
    _add_metric_flags(p)
    p.set_defaults(func=cmd_dist)

    return parser


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as err:
        print(f"data error: {err}", file=sys.stderr)
        return EXIT_DATA
    except StudyError as err:
        print(f"study error: {err}", file=sys.stderr)
        return EXIT_STUDY


if __name__ == "__main__":
    sys.exit(main())
