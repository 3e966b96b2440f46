"""Measure translation robustness across independently compiled wordlists."""

from .compare import (
    GroupSummary,
    PairResult,
    Report,
    SlotScores,
    aggregate_group,
    compare_pair,
    compare_slot,
    load_config,
    run_study,
)
from .corpus import (
    Dataset,
    FormEntry,
    Variety,
    VarietyPair,
    concept_intersection,
    glottocode_pairs,
    load_dataset,
    load_manual_pairs,
    synonymy,
    synonymy_pooled,
)
from .evaluate import EvalResult, GoldAnnotations, evaluate_predictions, load_gold
from .metrics import (
    Alignment,
    DistanceParams,
    PairCategory,
    align_global,
    classify_pair,
    edit_distance,
    normalized_edit_distance,
    sca_distance,
)
from .phonoseg import (
    ClassSequence,
    PreprocessOptions,
    SegmentedForm,
    SoundClassModel,
    default_model,
    is_tone_token,
    load_sound_class_model,
    parse_form,
    to_classes,
)

__version__ = "0.1.0"
