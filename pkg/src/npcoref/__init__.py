"""Named person coreference: scoring, filtering and an NER-driven resolver."""

from .conll import emit_conll, parse_conll
from .filtering import (
    NpcEntity,
    classify_mention,
    filter_chains,
    is_person_headed,
    mention_head,
    name_variants,
)
from .gazetteer import Gazetteer, Gender
from .jsondoc import emit_json_docs, parse_json_doc, parse_json_docs
from .metrics import (
    MetricScore,
    ScoreReport,
    conll_average,
    score_all,
    score_bcubed,
    score_ceaf,
    score_corpus,
    score_lea,
    score_muc,
)
from .model import (
    AnnotatedDocument,
    Chain,
    MalformedInputError,
    Mention,
    MentionType,
    NerSpan,
    PreconditionError,
    Token,
)
from .npc_metrics import (
    EntityMatch,
    NpcReport,
    chains_not_found,
    detect_overmerge,
    detect_oversplit,
    evaluate,
    match_entity,
    npc_f1,
    per_type_f1,
)
from .resolver import (
    ResolverConfig,
    chain_gender,
    cluster_names,
    derive_mention_span,
    resolve_document,
    resolve_pronoun,
    run_ner_de,
)
from .similarity import name_similarity
from .stats import PronounReport, StatsReport, corpus_stats, pronoun_stats

__version__ = "0.1.0"
