"""The study engine: slot, pair and group comparison plus report assembly.

For each variety pair, every shared concept slot is compared over the full
cross-product of its translations; slot scores are averaged (unweighted) into
pair-level means, and pairs are aggregated per group with population standard
deviations, plus a TOTAL row pooling all pairs.
"""

from __future__ import annotations

import configparser
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import (
    VarietyPair,
    glottocode_pairs,
    load_dataset,
    load_manual_pairs,
)
from .errors import (
    EmptyGroup,
    EmptySlot,
    MalformedRow,
    NoSharedConcepts,
    StudyError,
)
from .metrics import (
    PairCategory,
    classify_pair,
    edit_distance,
    normalized_edit_distance,
    sca_distance,
)
from .phonoseg import PreprocessOptions

METRICS = ("identical", "similar", "sca", "ned", "ed")


@dataclass(frozen=True)
class SlotScores:
    concept_id: str
    n_pairs: int
    identical: float
    similar: float
    sca: float
    ned: float
    ed: float


@dataclass(frozen=True)
class PairResult:
    pair: VarietyPair
    n_concepts: int
    identical: float
    similar: float
    sca: float
    ned: float
    ed: float


@dataclass(frozen=True)
class GroupSummary:
    group: str
    n_pairs: int
    means: dict  # metric -> mean
    stds: dict  # metric -> population std


def compare_slot(forms_a, forms_b, params, concept_id=""):
    """Average all metrics over the cross-product of two synonym sets."""
    if not forms_a or not forms_b:
        raise EmptySlot(f"concept {concept_id or '?'}: empty synonym set")
    n = 0
    sums = dict.fromkeys(METRICS, 0.0)
    for fa in forms_a:
        for fb in forms_b:
            cat = classify_pair(fa, fb, params)
            sums["identical"] += cat is PairCategory.IDENTICAL
            sums["similar"] += cat is not PairCategory.DIFFERENT
            sums["sca"] += sca_distance(fa, fb, params.model)
            sums["ned"] += normalized_edit_distance(fa, fb)
            sums["ed"] += edit_distance(fa, fb)
            n += 1
    return SlotScores(concept_id=concept_id, n_pairs=n,
                      **{k: v / n for k, v in sums.items()})


def shared_concepts(pair, a, b):
    """Concepts with at least one form on both sides of the pair."""
    return sorted(a.concepts_of(pair.variety_a) & b.concepts_of(pair.variety_b))


def compare_pair(pair, a, b, params):
    """Unweighted mean of slot scores over all shared concepts of a pair."""
    concepts = shared_concepts(pair, a, b)
    if not concepts:
        raise NoSharedConcepts(f"pair {pair.id}: no shared concepts with forms")
    slots = [
        compare_slot(
            [f.form for f in a.forms_of(pair.variety_a, cid)],
            [f.form for f in b.forms_of(pair.variety_b, cid)],
            params, concept_id=cid)
        for cid in concepts
    ]
    means = {m: sum(getattr(s, m) for s in slots) / len(slots) for m in METRICS}
    return PairResult(pair=pair, n_concepts=len(slots), **means)


def aggregate_group(results, group):
    """Per-metric mean and population standard deviation over pair results."""
    if not results:
        raise EmptyGroup(f"group {group!r} has no pair results")
    means, stds = {}, {}
    for m in METRICS:
        values = [getattr(r, m) for r in results]
        means[m] = statistics.fmean(values)
        stds[m] = statistics.pstdev(values)
    return GroupSummary(group=group, n_pairs=len(results), means=means, stds=stds)


def iter_predictions(pair, a, b, params):
    """Categorize every form pair in every shared concept slot of a pair.

    Yields (pair_id, concept_id, form_a_id, form_b_id, category) tuples; this
    is the prediction stream scored against gold annotations.
    """
    for cid in shared_concepts(pair, a, b):
        for fa in a.forms_of(pair.variety_a, cid):
            for fb in b.forms_of(pair.variety_b, cid):
                yield (pair.id, cid, fa.id, fb.id,
                       classify_pair(fa.form, fb.form, params))


@dataclass(frozen=True)
class GroupConfig:
    name: str
    dataset_a: Path
    dataset_b: Path
    pair_file: Path | None = None
    strip_tones_a: bool = True
    strip_tones_b: bool = True


@dataclass(frozen=True)
class StudyConfig:
    groups: tuple[GroupConfig, ...]


def load_config(path):
    """Parse a study configuration (INI-style, one section per group)."""
    path = Path(path)
    parser = configparser.ConfigParser()
    read = parser.read(path, encoding="utf-8")
    if not read:
        raise MalformedRow(f"cannot read config {path}")
    groups = []
    base = path.parent
    for section in parser.sections():
        sec = parser[section]
        for key in ("dataset_a", "dataset_b"):
            if key not in sec:
                raise MalformedRow(f"{path}: [{section}] missing {key}")
        groups.append(GroupConfig(
            name=section,
            dataset_a=base / sec["dataset_a"],
            dataset_b=base / sec["dataset_b"],
            pair_file=(base / sec["pairs"]) if "pairs" in sec else None,
            strip_tones_a=sec.getboolean("strip_tones_a", fallback=True),
            strip_tones_b=sec.getboolean("strip_tones_b", fallback=True),
        ))
    if not groups:
        raise MalformedRow(f"{path}: no group sections")
    return StudyConfig(groups=tuple(groups))


@dataclass(frozen=True)
class Report:
    pair_rows: tuple  # (group, PairResult), ordered by (group, pair id)
    group_rows: tuple  # GroupSummary per group plus TOTAL
    logs: tuple
    metadata: dict


def run_study(config, mode, params, jobs=1):
    """Run the full comparison described by a StudyConfig.

    mode is "glottocode" or "manual"; manual requires a pair file per group.
    Pair comparisons may run in parallel; the report is a deterministic fold
    over results ordered by (group, pair id).
    """
    if mode not in ("glottocode", "manual"):
        raise ValueError(f"unknown pairing mode {mode!r}")
    logs = []
    tasks = []  # (group, pair, dataset_a, dataset_b)
    for gc in config.groups:
        try:
            ds_a = load_dataset(gc.dataset_a, PreprocessOptions(strip_tones=gc.strip_tones_a))
            ds_b = load_dataset(gc.dataset_b, PreprocessOptions(strip_tones=gc.strip_tones_b))
        except Exception as err:
            err.args = (f"group {gc.name}: {err}",)
            raise
        for name, ds in (("A", ds_a), ("B", ds_b)):
            for what, count in sorted(ds.drop_counts.items()):
                if count:
                    logs.append(f"{gc.name}/{name} ({ds.id}): dropped {count} {what}")
        if mode == "glottocode":
            pairs = glottocode_pairs(ds_a, ds_b)
        else:
            if gc.pair_file is None:
                raise MalformedRow(f"group {gc.name}: manual mode needs a pair file")
            pairs = load_manual_pairs(gc.pair_file, ds_a, ds_b)
        if not pairs:
            logs.append(f"{gc.name}: no variety pairs in {mode} mode")
        for pair in pairs:
            tasks.append((gc.name, pair, ds_a, ds_b))

    def run_one(task):
        group, pair, ds_a, ds_b = task
        try:
            return group, compare_pair(pair, ds_a, ds_b, params)
        except NoSharedConcepts:
            return group, None

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_one, tasks))
    else:
        outcomes = [run_one(t) for t in tasks]

    by_group = {gc.name: [] for gc in config.groups}
    for (group, pair, _, _), (_, result) in zip(tasks, outcomes):
        if result is None:
            logs.append(f"{group}: skipped pair {pair.id} (no shared concepts)")
        else:
            by_group[group].append(result)

    all_results = []
    pair_rows = []
    group_rows = []
    for gc in config.groups:
        results = sorted(by_group[gc.name], key=lambda r: r.pair.id)
        if not results:
            raise EmptyGroup(f"group {gc.name!r}: no comparable pairs")
        pair_rows.extend((gc.name, r) for r in results)
        group_rows.append(aggregate_group(results, gc.name))
        all_results.extend(results)
    if not all_results:
        raise StudyError("no comparable pairs in the whole study")
    group_rows.append(aggregate_group(all_results, "TOTAL"))

    metadata = {
        "mode": mode,
        "threshold": params.threshold,
        "model": params.model.name,
        "std": "population",
        "total_row": "pooled over all pair results",
        "synonymy": "per-variety mean",
    }
    return Report(pair_rows=tuple(pair_rows), group_rows=tuple(group_rows),
                  logs=tuple(logs), metadata=metadata)


def _meta_lines(report):
    lines = [f"# {key}: {value}" for key, value in sorted(report.metadata.items())]
    lines.extend(f"# log: {entry}" for entry in report.logs)
    return lines


def render_pairs_tsv(report):
    lines = _meta_lines(report)
    lines.append("Group\tPair\tConcepts\tIdentical\tSimilar\tSCA\tNED\tED")
    for group, r in report.pair_rows:
        cells = [group, r.pair.id, str(r.n_concepts)]
        cells += [f"{getattr(r, m):.2f}" for m in METRICS]
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def render_groups_tsv(report):
    lines = _meta_lines(report)
    lines.append("Group\tPairs\tIdentical\tSTD\tSimilar\tSTD\tSCA\tSTD\tNED\tSTD\tED\tSTD")
    for g in report.group_rows:
        cells = [g.group, str(g.n_pairs)]
        for m in METRICS:
            cells += [f"{g.means[m]:.2f}", f"{g.stds[m]:.2f}"]
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def render_groups_markdown(report):
    header = ["Group", "Pairs"]
    for m in ("Identical", "Similar", "SCA", "NED", "ED"):
        header += [m, "STD"]
    lines = ["| " + " | ".join(header) + " |",
             "|" + "---|" * len(header)]
    for g in report.group_rows:
        cells = [g.group, str(g.n_pairs)]
        for m in METRICS:
            cells += [f"{g.means[m]:.2f}", f"{g.stds[m]:.2f}"]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"
