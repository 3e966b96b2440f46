"""Loading CLDF-shaped wordlist directories and pairing varieties.

A dataset directory must contain forms.csv, languages.csv and parameters.csv
(UTF-8, with headers). Concepts are keyed by Concepticon ID; parameters
without a Concepticon mapping are dropped, as are forms whose Segments are
empty after preprocessing. Varieties from two datasets are paired either by
matching Glottocode (full cross-product per code) or by a manual pair file.
"""

from __future__ import annotations

import csv
import enum
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DuplicateId,
    EmptyDataset,
    EmptyForm,
    MalformedRow,
    MissingFile,
    UnknownVariety,
)
from .phonoseg import PreprocessOptions, SegmentedForm, parse_form

log = logging.getLogger(__name__)

GLOTTOCODE_RE = re.compile(r"[a-z0-9]{4}[0-9]{4}$")


@dataclass(frozen=True)
class Variety:
    id: str
    name: str
    glottocode: str | None = None
    latitude: float | None = None
    longitude: float | None = None


@dataclass(frozen=True)
class FormEntry:
    id: str
    variety_id: str
    concept_id: str  # Concepticon ID
    form: SegmentedForm


@dataclass(frozen=True)
class Dataset:
    id: str
    varieties: tuple[Variety, ...]
    concepts: dict  # Concepticon ID -> gloss
    forms: tuple[FormEntry, ...]
    drop_counts: dict = field(default_factory=dict)

    def variety(self, variety_id):
        for v in self.varieties:
            if v.id == variety_id:
                return v
        raise UnknownVariety(f"no variety {variety_id!r} in dataset {self.id}")

    def forms_of(self, variety_id, concept_id):
        return [f for f in self.forms
                if f.variety_id == variety_id and f.concept_id == concept_id]

    def concepts_of(self, variety_id):
        return {f.concept_id for f in self.forms if f.variety_id == variety_id}


class PairOrigin(enum.Enum):
    GLOTTOCODE_MATCH = "glottocode"
    MANUAL_SELECTION = "manual"


@dataclass(frozen=True)
class VarietyPair:
    dataset_a: str
    variety_a: str
    dataset_b: str
    variety_b: str
    origin: PairOrigin

    @property
    def id(self):
        return f"{self.variety_a}/{self.variety_b}"


def _read_rows(path, required):
    if not path.is_file():
        raise MissingFile(str(path))
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in required if c not in header]
        if missing:
            raise MalformedRow(f"{path}: missing columns {missing}")
        rows = []
        for lineno, row in enumerate(reader, 2):
            if any(row.get(c) is None for c in required):
                raise MalformedRow(f"{path}:{lineno}: short row")
            rows.append((lineno, row))
    return rows


def load_dataset(directory, opts=PreprocessOptions(), dataset_id=None):
    """Load a dataset from a CLDF-shaped directory."""
    directory = Path(directory)
    if not directory.is_dir():
        raise MissingFile(str(directory))
    dataset_id = dataset_id or directory.name

    varieties = []
    seen = set()
    for lineno, row in _read_rows(directory / "languages.csv",
                                  ["ID", "Name", "Glottocode", "Latitude", "Longitude"]):
        vid = row["ID"]
        if vid in seen:
            raise DuplicateId(f"{directory}/languages.csv:{lineno}: duplicate ID {vid!r}")
        seen.add(vid)
        glottocode = row["Glottocode"].strip() or None
        if glottocode and not GLOTTOCODE_RE.match(glottocode):
            raise MalformedRow(
                f"{directory}/languages.csv:{lineno}: bad glottocode {glottocode!r}")
        varieties.append(Variety(
            id=vid,
            name=row["Name"],
            glottocode=glottocode,
            latitude=_coord(row["Latitude"], directory, lineno),
            longitude=_coord(row["Longitude"], directory, lineno),
        ))
    variety_ids = {v.id for v in varieties}

    concept_of_param = {}
    concepts = {}
    params_dropped = 0
    seen = set()
    for lineno, row in _read_rows(directory / "parameters.csv",
                                  ["ID", "Name", "Concepticon_ID"]):
        pid = row["ID"]
        if pid in seen:
            raise DuplicateId(f"{directory}/parameters.csv:{lineno}: duplicate ID {pid!r}")
        seen.add(pid)
        cid = row["Concepticon_ID"].strip()
        if not cid:
            params_dropped += 1
            continue
        concept_of_param[pid] = cid
        concepts.setdefault(cid, row["Name"])

    forms = []
    forms_dropped_empty = 0
    forms_dropped_unmapped = 0
    seen = set()
    for lineno, row in _read_rows(directory / "forms.csv",
                                  ["ID", "Language_ID", "Parameter_ID", "Form", "Segments"]):
        fid = row["ID"]
        if fid in seen:
            raise DuplicateId(f"{directory}/forms.csv:{lineno}: duplicate ID {fid!r}")
        seen.add(fid)
        if row["Language_ID"] not in variety_ids:
            raise MalformedRow(
                f"{directory}/forms.csv:{lineno}: unknown language {row['Language_ID']!r}")
        concept_id = concept_of_param.get(row["Parameter_ID"])
        if concept_id is None:
            forms_dropped_unmapped += 1
            continue
        try:
            form = parse_form(row["Segments"], opts, source_id=fid)
        except EmptyForm:
            forms_dropped_empty += 1
            continue
        forms.append(FormEntry(id=fid, variety_id=row["Language_ID"],
                               concept_id=concept_id, form=form))

    drop_counts = {
        "parameters_unmapped": params_dropped,
        "forms_unmapped_parameter": forms_dropped_unmapped,
        "forms_empty_segments": forms_dropped_empty,
    }
    for what, count in drop_counts.items():
        if count:
            log.info("%s: dropped %d rows (%s)", dataset_id, count, what)

    return Dataset(id=dataset_id, varieties=tuple(varieties), concepts=concepts,
                   forms=tuple(forms), drop_counts=drop_counts)


def _coord(value, directory, lineno):
    value = value.strip()
    if not value:
        return None
    try:
        return float(value)
    except ValueError:
        raise MalformedRow(f"{directory}/languages.csv:{lineno}: bad coordinate {value!r}")


def synonymy(ds, variety_ids=None):
    """Mean over varieties of forms-per-concept, rounded to 2 decimals."""
    ratios = _synonymy_ratios(ds, variety_ids)
    if not ratios:
        raise EmptyDataset(f"dataset {ds.id} has no forms to compute synonymy over")
    return round(sum(ratios) / len(ratios), 2)


def synonymy_pooled(ds, variety_ids=None):
    """Total forms divided by total filled concept slots, rounded to 2 decimals."""
    ids = set(variety_ids) if variety_ids is not None else {v.id for v in ds.varieties}
    forms = [f for f in ds.forms if f.variety_id in ids]
    slots = {(f.variety_id, f.concept_id) for f in forms}
    if not slots:
        raise EmptyDataset(f"dataset {ds.id} has no forms to compute synonymy over")
    return round(len(forms) / len(slots), 2)


def _synonymy_ratios(ds, variety_ids):
    ids = set(variety_ids) if variety_ids is not None else {v.id for v in ds.varieties}
    ratios = []
    for vid in sorted(ids):
        forms = [f for f in ds.forms if f.variety_id == vid]
        concepts = {f.concept_id for f in forms}
        if concepts:
            ratios.append(len(forms) / len(concepts))
    return ratios


def concept_intersection(a, b):
    """Concepticon IDs attested in at least one variety of each dataset."""
    return {f.concept_id for f in a.forms} & {f.concept_id for f in b.forms}


def glottocode_pairs(a, b):
    """All cross-products of varieties sharing a Glottocode across datasets."""
    by_code_b = {}
    for v in b.varieties:
        if v.glottocode:
            by_code_b.setdefault(v.glottocode, []).append(v)
    pairs = []
    for va in a.varieties:
        if not va.glottocode:
            continue
        for vb in by_code_b.get(va.glottocode, []):
            pairs.append(VarietyPair(a.id, va.id, b.id, vb.id,
                                     PairOrigin.GLOTTOCODE_MATCH))
    return pairs


def load_manual_pairs(path, a, b):
    """Read a tab-separated pair file of (variety in a, variety in b) rows."""
    path = Path(path)
    if not path.is_file():
        raise MissingFile(str(path))
    a_ids = {v.id for v in a.varieties}
    b_ids = {v.id for v in b.varieties}
    pairs = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise MalformedRow(f"{path}:{lineno}: expected 2 columns, got {len(parts)}")
        va, vb = parts
        if va not in a_ids:
            raise UnknownVariety(f"{path}:{lineno}: {va!r} not in dataset {a.id}")
        if vb not in b_ids:
            raise UnknownVariety(f"{path}:{lineno}: {vb!r} not in dataset {b.id}")
        pairs.append(VarietyPair(a.id, va, b.id, vb, PairOrigin.MANUAL_SELECTION))
    return pairs


def export_coordinates(ds):
    """Tab-separated variety coordinates for external map tooling."""
    lines = ["variety_id\tname\tglottocode\tlatitude\tlongitude"]
    for v in ds.varieties:
        lines.append("\t".join([
            v.id,
            v.name,
            v.glottocode or "",
            "" if v.latitude is None else repr(v.latitude),
            "" if v.longitude is None else repr(v.longitude),
        ]))
    return "\n".join(lines) + "\n"
