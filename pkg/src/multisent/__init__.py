"""Multilevel sentiment analysis toolkit.

Term-level and document-level polarity classification built on multi-sense
lexicon aggregation, negation/intensification rules, hand-rolled ANN,
decision-tree, and SVM classifiers, stratified cross-validation, and
Zipf/KL corpus quality statistics.
"""

__version__ = "0.1.0"

from .corpus_io import (LemmaDictionary, RawDocument, Token,
                        TokenizedDocument, load_corpus,
                        load_lemma_dictionary, prepare_document)
from .corpus_quality import (FrequencyTable, QualityReport, kl_divergence,
                             ideal_zipf_frequency, quality_report,
                             rank_frequencies)
from .errors import ConfigurationError, DataError, ParseError
from .features import Dataset, Variant, doc_features, term_features
from .lexicon import (LexiconEntry, PolarityPair, PriorFormula, PriorScore,
                      SenseScore, aggregate_prior, f_avg, f_max,
                      load_lexicon, prior_table)
from .pipeline import PipelineConfig, build_dataset, run_pipeline, sweep
from .scoring import (RuleConfig, ScoredToken, SentenceFormula,
                      SentenceScore, apply_rules, s_max, score_tokens,
                      sentence_score, sentence_scores)
from .synth import SynthConfig, generate
