#pragma once

// EvalReport: one evaluation run aggregated into a stable JSON document and a
// TSV table shaped like the usual per-SES summaries (rule, casing, edits,
// accuracy, weight, examples).

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "lemtag/conllu.hpp"
#include "lemtag/error.hpp"
#include "lemtag/eval.hpp"

namespace lemtag {

constexpr int kReportSchemaVersion = 1;

struct EvalOptions {
  FeatsFormat feats_format = FeatsFormat::unimorph;
  bool allow_copy = false;
  std::optional<std::string> train_vocab_path;  // corpus whose forms define IV
  std::optional<std::string> compare_path;      // second prediction for McNemar
  std::optional<McNemarMethod> mcnemar_method;  // default: by discordant count
  std::size_t per_ses_limit = 0;                // 0 = all rows in the TSV
};

struct EvalReport {
  std::size_t token_count = 0;
  std::size_t sentence_count = 0;
  double word_accuracy = 0.0;
  double sentence_accuracy = 0.0;
  SesReport per_ses;
  std::optional<VocabSplit> vocab;
  std::optional<McNemarResult> mcnemar;
  // provenance
  std::string gold_path, pred_path;
  EvalOptions options;
};

inline Corpus load_conllu_file(const std::string& path, FeatsFormat format,
                               bool nfc_normalize = false) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  ParseOptions opts;
  opts.feats_format = format;
  opts.nfc_normalize = nfc_normalize;
  opts.source = path;
  return parse_conllu(in, opts);
}

inline EvalReport evaluate_corpora(const Corpus& gold, const Corpus& pred,
                                   const EvalOptions& options,
                                   const Corpus* pred_b = nullptr,
                                   const Corpus* train = nullptr) {
  EvalReport report;
  report.options = options;
  report.token_count = gold.token_count();
  report.sentence_count = gold.sentences.size();
  report.word_accuracy = word_accuracy(gold, pred);
  report.sentence_accuracy = sentence_accuracy(gold, pred);
  report.per_ses = per_ses_report(gold, pred, options.allow_copy);
  if (train) report.vocab = vocab_split_accuracy(gold, pred, vocabulary(*train));
  if (pred_b) report.mcnemar = mcnemar(gold, pred, *pred_b, options.mcnemar_method);
  return report;
}

inline EvalReport evaluate_run(const std::string& gold_path, const std::string& pred_path,
                               const EvalOptions& options) {
  Corpus gold = load_conllu_file(gold_path, options.feats_format);
  Corpus pred = load_conllu_file(pred_path, options.feats_format);
  std::optional<Corpus> pred_b, train;
  if (options.compare_path)
    pred_b = load_conllu_file(*options.compare_path, options.feats_format);
  if (options.train_vocab_path)
    train = load_conllu_file(*options.train_vocab_path, options.feats_format);
  EvalReport report = evaluate_corpora(gold, pred, options, pred_b ? &*pred_b : nullptr,
                                       train ? &*train : nullptr);
  report.gold_path = gold_path;
  report.pred_path = pred_path;
  return report;
}

inline nlohmann::json report_to_json(const EvalReport& r) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["token_count"] = r.token_count;
  j["sentence_count"] = r.sentence_count;
  j["word_accuracy"] = r.word_accuracy;
  j["sentence_accuracy"] = r.sentence_accuracy;
  nlohmann::json rows = nlohmann::json::array();
  for (const SesRow& row : r.per_ses.rows) {
    nlohmann::json o;
    o["rule"] = row.rule;
    o["count"] = row.count;
    o["weight_percent"] = row.weight_percent;
    o["accuracy"] = row.accuracy;
    nlohmann::json ex = nlohmann::json::array();
    for (const auto& [form, lemma] : row.examples) ex.push_back({{"form", form}, {"lemma", lemma}});
    o["examples"] = std::move(ex);
    rows.push_back(std::move(o));
  }
  j["per_ses"] = std::move(rows);
  j["per_ses_skipped"] = r.per_ses.skipped;
  if (r.vocab) {
    nlohmann::json v;
    v["iv_accuracy"] = r.vocab->iv_accuracy ? nlohmann::json(*r.vocab->iv_accuracy)
                                            : nlohmann::json(nullptr);
    v["oov_accuracy"] = r.vocab->oov_accuracy ? nlohmann::json(*r.vocab->oov_accuracy)
                                              : nlohmann::json(nullptr);
    v["iv_count"] = r.vocab->iv_count;
    v["oov_count"] = r.vocab->oov_count;
    j["iv_oov"] = std::move(v);
  }
  if (r.mcnemar) {
    nlohmann::json m;
    m["b"] = r.mcnemar->b;
    m["c"] = r.mcnemar->c;
    m["statistic"] = r.mcnemar->statistic;
    m["p_value"] = r.mcnemar->p_value;
    m["method"] = to_string(r.mcnemar->method);
    j["mcnemar"] = std::move(m);
  }
  nlohmann::json prov;
  prov["gold"] = r.gold_path;
  prov["pred"] = r.pred_path;
  prov["allow_copy"] = r.options.allow_copy;
  prov["feats_format"] = to_string(r.options.feats_format);
  if (r.options.compare_path) prov["pred_b"] = *r.options.compare_path;
  if (r.options.train_vocab_path) prov["train_vocab"] = *r.options.train_vocab_path;
  j["provenance"] = std::move(prov);
  return j;
}

namespace report_detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed << v;
  return os.str();
}

}  // namespace report_detail

inline std::string report_to_tsv(const EvalReport& r) {
  std::ostringstream out;
  out << "metric\tvalue\n";
  out << "token_count\t" << r.token_count << '\n';
  out << "sentence_count\t" << r.sentence_count << '\n';
  out << "word_accuracy\t" << report_detail::fmt(r.word_accuracy) << '\n';
  out << "sentence_accuracy\t" << report_detail::fmt(r.sentence_accuracy) << '\n';
  if (r.vocab) {
    out << "iv_accuracy\t"
        << (r.vocab->iv_accuracy ? report_detail::fmt(*r.vocab->iv_accuracy) : "n/a") << '\n';
    out << "oov_accuracy\t"
        << (r.vocab->oov_accuracy ? report_detail::fmt(*r.vocab->oov_accuracy) : "n/a") << '\n';
    out << "iv_count\t" << r.vocab->iv_count << '\n';
    out << "oov_count\t" << r.vocab->oov_count << '\n';
  }
  if (r.mcnemar) {
    out << "mcnemar_b\t" << r.mcnemar->b << '\n';
    out << "mcnemar_c\t" << r.mcnemar->c << '\n';
    out << "mcnemar_statistic\t" << report_detail::fmt(r.mcnemar->statistic) << '\n';
    out << "mcnemar_p_value\t" << report_detail::fmt(r.mcnemar->p_value) << '\n';
    out << "mcnemar_method\t" << to_string(r.mcnemar->method) << '\n';
  }
  out << '\n';
  out << "rule\tcasing\tedits\taccuracy\tweight_percent\tcount\texamples\n";
  std::size_t limit = r.options.per_ses_limit ? r.options.per_ses_limit : r.per_ses.rows.size();
  for (std::size_t i = 0; i < r.per_ses.rows.size() && i < limit; ++i) {
    const SesRow& row = r.per_ses.rows[i];
    LemmaRule rule = parse_rule(row.rule);
    out << row.rule << '\t' << describe_casing(rule) << '\t' << describe_edits(rule) << '\t'
        << report_detail::fmt(row.accuracy) << '\t' << report_detail::fmt(row.weight_percent)
        << '\t' << row.count << '\t';
    for (std::size_t e = 0; e < row.examples.size(); ++e) {
      if (e) out << ", ";
      out << row.examples[e].first << "→" << row.examples[e].second;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace lemtag
