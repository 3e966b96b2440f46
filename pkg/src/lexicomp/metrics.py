"""Distance and classification primitives over segmented forms.

The core is a Needleman-Wunsch global alignment of sound-class sequences
with a linear gap penalty. The alignment score feeds a self-score-normalized
distance in [0, 1]; token-level Levenshtein distance and its length-normalized
variant complete the metric set. A threshold on the alignment distance
separates transcription variants of the same word (Similar) from genuine
translation differences (Different).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import BothEmpty
from .phonoseg import SoundClassModel, to_classes

GAP = "-"


class PairCategory(enum.Enum):
    IDENTICAL = "Identical"
    SIMILAR = "Similar"
    DIFFERENT = "Different"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Alignment:
    aligned_a: tuple
    aligned_b: tuple
    score: float


@dataclass(frozen=True)
class DistanceParams:
    model: SoundClassModel
    threshold: float = 0.5

    def __post_init__(self):
        if not 0 < self.threshold < 1:
            raise ValueError(f"threshold must be in (0, 1), got {self.threshold}")


def align_global(x, y, model):
    """Maximum-score global alignment of two class sequences.

    Ties are broken deterministically during traceback: match/mismatch is
    preferred over a gap in y, which is preferred over a gap in x.
    """
    a, b = x.classes, y.classes
    n, m = len(a), len(b)
    gap = model.gap_penalty
    # F[i][j] = best score aligning a[:i] with b[:j]
    F = [[0.0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        F[i][0] = i * gap
    for j in range(1, m + 1):
        F[0][j] = j * gap
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            F[i][j] = max(
                F[i - 1][j - 1] + model.score(a[i - 1], b[j - 1]),
                F[i - 1][j] + gap,
                F[i][j - 1] + gap,
            )
    cols_a, cols_b = [], []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and F[i][j] == F[i - 1][j - 1] + model.score(a[i - 1], b[j - 1]):
            cols_a.append(a[i - 1])
            cols_b.append(b[j - 1])
            i -= 1
            j -= 1
        elif i > 0 and F[i][j] == F[i - 1][j] + gap:  # gap in y
            cols_a.append(a[i - 1])
            cols_b.append(GAP)
            i -= 1
        else:  # gap in x
            cols_a.append(GAP)
            cols_b.append(b[j - 1])
            j -= 1
    cols_a.reverse()
    cols_b.reverse()
    return Alignment(tuple(cols_a), tuple(cols_b), F[n][m])


def sca_distance(a, b, model):
    """Alignment-score distance in [0, 1]; 0 means (near) identity.

    d = 1 - 2*S(a,b) / (S(a,a) + S(b,b)), clamped to [0, 1].
    """
    ca, cb = to_classes(a, model), to_classes(b, model)
    s_ab = align_global(ca, cb, model).score
    s_aa = align_global(ca, ca, model).score
    s_bb = align_global(cb, cb, model).score
    denom = s_aa + s_bb
    if denom <= 0:
        # all-unknown sequences carry no scorable signal
        return 0.0 if a.tokens == b.tokens else 1.0
    d = 1.0 - 2.0 * s_ab / denom
    return min(1.0, max(0.0, d))


def edit_distance(a, b):
    """Token-level Levenshtein distance between two forms."""
    s, t = a.tokens, b.tokens
    n, m = len(s), len(t)
    prev = list(range(m + 1))
    for i in range(1, n + 1):
        cur = [i] + [0] * m
        for j in range(1, m + 1):
            cur[j] = min(
                prev[j] + 1,
                cur[j - 1] + 1,
                prev[j - 1] + (s[i - 1] != t[j - 1]),
            )
        prev = cur
    return prev[m]


def normalized_edit_distance(a, b):
    """Edit distance divided by the length of the longer form."""
    longer = max(len(a), len(b))
    if longer == 0:
        raise BothEmpty("normalized edit distance of two empty forms")
    return edit_distance(a, b) / longer


def classify_pair(a, b, params):
    """Identical (token equality), Similar (below threshold) or Different."""
    if a.tokens == b.tokens:
        return PairCategory.IDENTICAL
    if sca_distance(a, b, params.model) < params.threshold:
        return PairCategory.SIMILAR
    return PairCategory.DIFFERENT
