"""Explainability personas: empathy maps from Likert surveys, persona synthesis and PPS evaluation."""
from .empathy import (
    EmpathyMap,
    PersonaGroup,
    QuadrantScore,
    aggregate,
    build_map,
    classify,
    raw_score,
    signature,
)
from .estimators import EmpathyMapTransformer, EmpathyPersonaModel, PerceptionScaleSummarizer
from .ingest import load_run_config, parse_pps_dataset, parse_survey_dataset
from .model import (
    DESIGNER_INSTRUMENT,
    USER_INSTRUMENT,
    Audience,
    Construct,
    DemographicSchema,
    MapSignature,
    Polarity,
    PPSInstrument,
    PPSResponse,
    QuadrantKind,
    RunConfig,
    ScoringMode,
    SurveyResponse,
)
from .persona import Persona, modal_demographics, quadrant_narrative, synthesize
from .pps import (
    BoxplotStats,
    ConstructStats,
    construct_stats,
    item_boxplot,
    overall_stats,
    participant_construct_mean,
    selection_counts,
)

__version__ = "0.1.0"
