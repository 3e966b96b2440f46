"""Segmented-transcription parsing and sound-class mapping.

Forms arrive as space-separated IPA segment tokens. Preprocessing removes
morpheme boundary markers ("+") and, optionally, tone tokens. Tokens are then
mapped to sound classes via longest-prefix lookup in a replaceable model
table; the default model ships as a package data asset.
"""

from __future__ import annotations

import os
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import EmptyForm, MalformedModel

# Characters that may make up a tone token: Chao tone letters, superscript
# digits 1-5, plain digits 1-5.
_TONE_CHARS = set("˥˦˧˨˩" "¹²³⁴⁵" "12345")

UNKNOWN_CLASS = "?"

MODEL_ENV_VAR = "LEXICOMP_SOUND_CLASSES"


@dataclass(frozen=True)
class PreprocessOptions:
    strip_morpheme_boundaries: bool = True
    strip_tones: bool = True


@dataclass(frozen=True)
class SegmentedForm:
    """An ordered, preprocessed sequence of phonetic segment tokens."""

    tokens: tuple[str, ...]
    source_id: str = ""

    def __len__(self):
        return len(self.tokens)


def is_tone_token(token):
    """True iff every character of *token* is a tone character."""
    return bool(token) and all(ch in _TONE_CHARS for ch in token)


def parse_form(raw, opts=PreprocessOptions(), source_id=""):
    """Split a raw space-separated transcription into a SegmentedForm.

    Raises EmptyForm if nothing remains after preprocessing.
    """
    tokens = raw.split()
    if opts.strip_morpheme_boundaries:
        tokens = [t for t in tokens if t != "+"]
    if opts.strip_tones:
        tokens = [t for t in tokens if not is_tone_token(t)]
    if not tokens:
        raise EmptyForm(f"form {source_id or raw!r} is empty after preprocessing")
    return SegmentedForm(tokens=tuple(tokens), source_id=source_id)


@dataclass(frozen=True)
class ClassSequence:
    classes: tuple[str, ...]

    def __len__(self):
        return len(self.classes)


@dataclass(frozen=True)
class SoundClassModel:
    """Segment-prefix to sound-class mapping plus a class-pair score table.

    Prefixes are stored NFD-normalized so that precomposed and combining
    diacritics behave identically. The unknown class scores 0 against
    everything, including itself.
    """

    name: str
    class_of: dict = field(repr=False)
    scores: dict = field(repr=False)  # (class, class) -> score, both orders
    gap_penalty: float = -2.0
    unknown_class: str = UNKNOWN_CLASS
    _max_prefix_len: int = 0

    def classify(self, token):
        """Map one segment token to its class by longest matching prefix."""
        t = unicodedata.normalize("NFD", token)
        for k in range(min(len(t), self._max_prefix_len), 0, -1):
            cls = self.class_of.get(t[:k])
            if cls is not None:
                return cls
        return self.unknown_class

    def score(self, x, y):
        if x == self.unknown_class or y == self.unknown_class:
            return 0.0
        return self.scores[(x, y)]

    @property
    def classes(self):
        return sorted(set(self.class_of.values()))


def to_classes(form, model):
    """Map a SegmentedForm to its sound-class sequence (length-preserving)."""
    return ClassSequence(tuple(model.classify(t) for t in form.tokens))


def _parse_model_text(text, name):
    class_of = {}
    scores = {}
    gap = None
    section = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line in ("#classes", "#scores", "#gap"):
            section = line
            continue
        if line.startswith("#"):
            continue
        if section == "#classes":
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise MalformedModel(f"{name}:{lineno}: bad class row {line!r}")
            prefix = unicodedata.normalize("NFD", parts[0])
            if prefix in class_of:
                raise MalformedModel(f"{name}:{lineno}: duplicate prefix {parts[0]!r}")
            class_of[prefix] = parts[1]
        elif section == "#scores":
            parts = line.split("\t")
            if len(parts) != 3:
                raise MalformedModel(f"{name}:{lineno}: bad score row {line!r}")
            a, b, val = parts
            try:
                s = float(val)
            except ValueError:
                raise MalformedModel(f"{name}:{lineno}: bad score value {val!r}")
            if (a, b) in scores and scores[(a, b)] != s:
                raise MalformedModel(
                    f"{name}:{lineno}: asymmetric score for ({a}, {b})")
            scores[(a, b)] = s
            scores[(b, a)] = s
        elif section == "#gap":
            try:
                gap = float(line)
            except ValueError:
                raise MalformedModel(f"{name}:{lineno}: bad gap penalty {line!r}")
        else:
            raise MalformedModel(f"{name}:{lineno}: content before a section marker")

    if not class_of:
        raise MalformedModel(f"{name}: no classes defined")
    if gap is None:
        raise MalformedModel(f"{name}: no gap penalty defined")
    if gap >= 0:
        raise MalformedModel(f"{name}: gap penalty must be negative, got {gap}")

    labels = sorted(set(class_of.values()))
    if UNKNOWN_CLASS in labels:
        raise MalformedModel(f"{name}: class label {UNKNOWN_CLASS!r} is reserved")
    for a in labels:
        for b in labels:
            if (a, b) not in scores:
                raise MalformedModel(f"{name}: missing score for ({a}, {b})")
        if scores[(a, a)] <= 0:
            raise MalformedModel(f"{name}: self score for {a} must be positive")

    return SoundClassModel(
        name=name,
        class_of=class_of,
        scores=scores,
        gap_penalty=gap,
        _max_prefix_len=max(len(p) for p in class_of),
    )


def load_sound_class_model(path):
    """Load and validate a sound-class model from a three-section TSV file."""
    path = Path(path)
    return _parse_model_text(path.read_text(encoding="utf-8"), path.stem)


def default_model():
    """The packaged default model; overridable via LEXICOMP_SOUND_CLASSES."""
    override = os.environ.get(MODEL_ENV_VAR)
    if override:
        return load_sound_class_model(override)
    text = resources.files("lexicomp.data").joinpath("sound_classes.tsv").read_text(
        encoding="utf-8")
    return _parse_model_text(text, "sound_classes")
