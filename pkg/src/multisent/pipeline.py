"""End-to-end orchestration: corpus -> priors -> rules -> features ->
cross-validated report, plus the configuration-grid sweep.

Every artifact write is atomic and every random choice derives from the
single configured seed, so rerunning a pipeline with the same
configuration reproduces its outputs byte for byte.
"""

import json
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from . import classifiers
from .corpus_io import load_corpus, load_lemma_dictionary, prepare_document
from .errors import ConfigurationError, DataError
from .evaluation import EvalReport, run_cv
from .features import (Dataset, Variant, dataset_from_rows, doc_features,
                       term_features, write_features_csv)
from .lexicon import PriorFormula, load_lexicon, prior_table
from .scoring import (RuleConfig, SentenceFormula, apply_rules,
                      load_word_list, score_tokens, sentence_scores)
from .util import atomic_write_text

SWEEP_HEADER = ("classifier,prior_formula,sentence_formula,variant,rules,"
                "test_f_pos,test_f_neg,mean_test_f,best")


@dataclass
class PipelineConfig:
    corpus_dir: str
    lexicon_path: str
    lemma_dict_path: str
    out_dir: str
    negations_path: str | None = None
    intensifiers_path: str | None = None
    level: str = "term"
    prior_formula: str = "max_sub"
    sentence_formula: str | None = None
    variant: int = 8
    rules: bool = False
    window: int = 1
    classifier: str = "ann"
    classifier_options: dict = field(default_factory=dict)
    k: int = 5
    seed: int = 7

    def resolve(self):
        """Validate and resolve the string fields into enums.

        Returns (Variant, PriorFormula, SentenceFormula | None); raises
        ConfigurationError before any data is touched.
        """
        if self.level not in ("term", "document"):
            raise ConfigurationError(
                f"level must be 'term' or 'document', got {self.level!r}")
        try:
            variant = Variant.from_level_and_width(self.level, int(self.variant))
        except ValueError as exc:
            raise ConfigurationError(str(exc))
        try:
            prior = PriorFormula.from_name(self.prior_formula)
        except ValueError as exc:
            raise ConfigurationError(str(exc))
        sentence = None
        if self.level == "document":
            if not self.sentence_formula:
                raise ConfigurationError(
                    "document level requires a sentence formula")
            try:
                sentence = SentenceFormula.from_name(self.sentence_formula)
            except ValueError as exc:
                raise ConfigurationError(str(exc))
        elif self.sentence_formula:
            raise ConfigurationError(
                "sentence formula only applies at document level")
        if self.classifier not in classifiers.KINDS:
            raise ConfigurationError(
                f"unknown classifier {self.classifier!r} "
                f"(one of: {classifiers.KINDS})")
        if self.rules and not (self.negations_path and self.intensifiers_path):
            raise ConfigurationError(
                "rules are enabled but negation/intensifier word lists "
                "are not configured")
        if self.k < 2:
            raise ConfigurationError(f"k must be >= 2, got {self.k}")
        if self.window < 1:
            raise ConfigurationError(f"window must be >= 1, got {self.window}")
        return variant, prior, sentence


def prepare_corpus(corpus_dir, lemma_dict_path):
    lemma_dict = load_lemma_dictionary(lemma_dict_path)
    return [prepare_document(raw, lemma_dict)
            for raw in load_corpus(corpus_dir)]


def build_dataset(docs, priors, variant: Variant,
                  rule_cfg: RuleConfig | None = None,
                  sentence_formula: SentenceFormula | None = None) -> Dataset:
    """Score documents and assemble feature rows in corpus order."""
    rule_words = rule_cfg.all_words if rule_cfg else frozenset()
    rows = []
    labels = []
    for doc in docs:
        scored = score_tokens(doc, priors, rule_words)
        if rule_cfg is not None:
            scored = apply_rules(scored, doc, rule_cfg)
        if variant.level == "term":
            row = term_features([t.adjusted for t in scored], doc.label,
                                variant)
        else:
            values = [s.value for s in
                      sentence_scores(doc, scored, sentence_formula)]
            row = doc_features(values, doc.label, variant)
        rows.append(row)
        labels.append(doc.label)
    return dataset_from_rows(rows, labels, variant)


@contextmanager
def _stage(name: str):
    """Prefix stage names onto errors so failures carry their origin."""
    try:
        yield
    except (ConfigurationError, DataError) as exc:
        raise type(exc)(f"{name}: {exc}") from exc


def run_pipeline(cfg: PipelineConfig) -> EvalReport:
    """Execute the full pipeline and write its artifacts.

    Writes ``features.csv``, one ``model_fold<j>.json`` per fold, and
    ``report.json`` under ``cfg.out_dir``.
    """
    variant, prior_formula, sentence_formula = cfg.resolve()

    with _stage("corpus loading"):
        docs = prepare_corpus(cfg.corpus_dir, cfg.lemma_dict_path)
    with _stage("prior aggregation"):
        priors = prior_table(load_lexicon(cfg.lexicon_path), prior_formula)

    rule_cfg = None
    if cfg.rules:
        with _stage("rule word lists"):
            rule_cfg = RuleConfig(
                negation_words=load_word_list(cfg.negations_path),
                intensifier_words=load_word_list(cfg.intensifiers_path),
                window=cfg.window)

    with _stage("feature extraction"):
        dataset = build_dataset(docs, priors, variant, rule_cfg,
                                sentence_formula)

    out = Path(cfg.out_dir)
    write_features_csv(dataset, out / "features.csv")

    try:
        clf_config = classifiers.make_config(cfg.classifier,
                                             **cfg.classifier_options)
    except TypeError as exc:
        raise ConfigurationError(f"bad {cfg.classifier} options: {exc}")
    meta = {
        "classifier": cfg.classifier,
        "formula": prior_formula.value,
        "sentence_formula": sentence_formula.value if sentence_formula else None,
        "level": cfg.level,
        "variant": variant.name,
        "rules": cfg.rules,
        "k": cfg.k,
        "seed": cfg.seed,
    }
    with _stage("cross-validation"):
        report = run_cv(dataset, cfg.classifier, clf_config, k=cfg.k,
                        seed=cfg.seed, meta=meta)
    for j, model in enumerate(report.models):
        classifiers.save_model(model, out / f"model_fold{j}.json")
    atomic_write_text(out / "report.json",
                      json.dumps(report.to_dict(), sort_keys=True, indent=2)
                      + "\n")
    return report


@dataclass
class SweepCell:
    classifier: str
    prior_formula: str
    sentence_formula: str | None
    variant: int
    rules: bool
    report: EvalReport

    @property
    def test_f_pos(self) -> float:
        return self.report.average()["test"]["pos"]["f"]

    @property
    def test_f_neg(self) -> float:
        return self.report.average()["test"]["neg"]["f"]

    @property
    def mean_test_f(self) -> float:
        return (self.test_f_pos + self.test_f_neg) / 2.0

    def name(self) -> str:
        parts = [self.classifier, self.prior_formula]
        if self.sentence_formula:
            parts.append(self.sentence_formula)
        parts.append(f"{self.variant}f")
        parts.append("rules" if self.rules else "norules")
        return "_".join(parts)


def sweep(base: PipelineConfig, prior_formulas, variants, rules_options,
          classifier_kinds, sentence_formulas=None,
          options_by_kind=None) -> list:
    """Run the pipeline over a configuration grid.

    Writes each cell's artifacts under ``<out_dir>/cells/<name>/`` and a
    ``sweep.csv`` comparison table marking the best cell (highest mean
    test F across classes). Returns the cells in grid order.
    """
    levels = {_level_of(v) for v in variants}
    if len(levels) > 1:
        raise ConfigurationError("sweep variants must all share one level")

    options_by_kind = options_by_kind or {}
    sentence_formulas = list(sentence_formulas or [None])
    cells = []
    for kind in classifier_kinds:
        for formula in prior_formulas:
            for sf in sentence_formulas:
                for variant in variants:
                    for rules in rules_options:
                        cell_cfg = PipelineConfig(
                            corpus_dir=base.corpus_dir,
                            lexicon_path=base.lexicon_path,
                            lemma_dict_path=base.lemma_dict_path,
                            out_dir="",  # set below from the cell name
                            negations_path=base.negations_path,
                            intensifiers_path=base.intensifiers_path,
                            level=_level_of(variant),
                            prior_formula=formula,
                            sentence_formula=sf,
                            variant=int(variant),
                            rules=bool(rules),
                            window=base.window,
                            classifier=kind,
                            classifier_options=dict(
                                options_by_kind.get(kind, {})),
                            k=base.k,
                            seed=base.seed)
                        cell = SweepCell(classifier=kind, prior_formula=formula,
                                         sentence_formula=sf,
                                         variant=int(variant),
                                         rules=bool(rules), report=None)
                        cell_cfg.out_dir = str(Path(base.out_dir) / "cells"
                                               / cell.name())
                        cell_cfg.resolve()   # fail fast before any cell runs
                        cells.append((cell, cell_cfg))

    finished = []
    for cell, cell_cfg in cells:
        cell.report = run_pipeline(cell_cfg)
        finished.append(cell)

    best = max(range(len(finished)), key=lambda i: finished[i].mean_test_f)
    lines = [SWEEP_HEADER]
    for i, cell in enumerate(finished):
        lines.append(",".join([
            cell.classifier, cell.prior_formula,
            cell.sentence_formula or "", str(cell.variant),
            "true" if cell.rules else "false",
            repr(cell.test_f_pos), repr(cell.test_f_neg),
            repr(cell.mean_test_f), "1" if i == best else "0"]))
    atomic_write_text(Path(base.out_dir) / "sweep.csv",
                      "\n".join(lines) + "\n")
    return finished


def _level_of(variant_width) -> str:
    for v in Variant:
        if v.width == int(variant_width):
            return v.level
    raise ConfigurationError(f"no variant has {variant_width} features")


def read_config_file(path) -> dict:
    """Parse a flat ``key = value`` configuration file.

    Values may be quoted strings, booleans (true/false), integers,
    floats, or bare strings; ``#`` starts a comment line. Keys mirror
    PipelineConfig field names.
    """
    values = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except FileNotFoundError:
        raise ConfigurationError(f"config file not found: {path}")
    except UnicodeDecodeError:
        raise ConfigurationError(f"config file is not valid UTF-8: {path}")
    for n, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigurationError(f"{path}:{n}: expected 'key = value'")
        key, _, raw = stripped.partition("=")
        values[key.strip()] = _parse_value(raw.strip())
    return values


def _parse_value(raw: str):
    if len(raw) >= 2 and raw[0] == raw[-1] and raw[0] in "\"'":
        return raw[1:-1]
    low = raw.lower()
    if low == "true":
        return True
    if low == "false":
        return False
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        pass
    return raw
