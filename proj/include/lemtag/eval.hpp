#pragma once

// Metric suite over aligned gold/predicted corpora: word and sentence
// accuracy, per-SES breakdown, in-vocabulary splits and McNemar comparison.
// Lemma equality is exact code-point comparison; casing differences count as
// errors on purpose.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lemtag/conllu.hpp"
#include "lemtag/error.hpp"
#include "lemtag/ses.hpp"

namespace lemtag {

inline void check_alignment(const Corpus& gold, const Corpus& pred) {
  if (gold.sentences.size() != pred.sentences.size())
    throw AlignmentError("sentence count mismatch: gold has " +
                         std::to_string(gold.sentences.size()) + ", prediction has " +
                         std::to_string(pred.sentences.size()));
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    const auto& g = gold.sentences[s].tokens;
    const auto& p = pred.sentences[s].tokens;
    if (g.size() != p.size())
      throw AlignmentError("token count mismatch at sentence " + std::to_string(s + 1) +
                           ": gold has " + std::to_string(g.size()) + ", prediction has " +
                           std::to_string(p.size()));
    for (std::size_t t = 0; t < g.size(); ++t)
      if (g[t].form() != p[t].form())
        throw AlignmentError("form mismatch at sentence " + std::to_string(s + 1) +
                             ", token " + std::to_string(t + 1) + ": \"" + g[t].form() +
                             "\" vs \"" + p[t].form() + "\"");
  }
}

inline double word_accuracy(const Corpus& gold, const Corpus& pred) {
  check_alignment(gold, pred);
  std::size_t total = 0, correct = 0;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s)
    for (std::size_t t = 0; t < gold.sentences[s].tokens.size(); ++t) {
      ++total;
      if (gold.sentences[s].tokens[t].lemma() == pred.sentences[s].tokens[t].lemma())
        ++correct;
    }
  return total == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(total);
}

inline double sentence_accuracy(const Corpus& gold, const Corpus& pred) {
  check_alignment(gold, pred);
  std::size_t total = 0, correct = 0;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    ++total;
    bool all = true;
    for (std::size_t t = 0; t < gold.sentences[s].tokens.size(); ++t)
      if (gold.sentences[s].tokens[t].lemma() != pred.sentences[s].tokens[t].lemma())
        all = false;
    if (all) ++correct;
  }
  return total == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(total);
}

struct SesRow {
  std::string rule;
  std::size_t count = 0;
  double weight_percent = 0.0;
  double accuracy = 0.0;
  std::vector<std::pair<std::string, std::string>> examples;  // up to 3 gold (form, lemma)
};

struct SesReport {
  std::vector<SesRow> rows;   // descending count, then rule text
  std::size_t total = 0;      // tokens grouped (gold lemma != "_")
  std::size_t skipped = 0;    // tokens with gold lemma "_"
};

/// Tokens grouped by their *gold* SES class, so the weights describe the data
/// rather than any particular system.
inline SesReport per_ses_report(const Corpus& gold, const Corpus& pred, bool allow_copy) {
  check_alignment(gold, pred);
  struct Bucket {
    std::size_t count = 0, correct = 0;
    std::vector<std::pair<std::string, std::string>> examples;
  };
  std::map<std::string, Bucket> buckets;
  SesReport report;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    for (std::size_t t = 0; t < gold.sentences[s].tokens.size(); ++t) {
      const Token& g = gold.sentences[s].tokens[t];
      if (g.lemma() == "_") {
        ++report.skipped;
        continue;
      }
      Bucket& b = buckets[encode_rule_text(g.form(), g.lemma(), allow_copy)];
      ++b.count;
      ++report.total;
      if (g.lemma() == pred.sentences[s].tokens[t].lemma()) ++b.correct;
      auto pair = std::make_pair(g.form(), g.lemma());
      if (b.examples.size() < 3 &&
          std::find(b.examples.begin(), b.examples.end(), pair) == b.examples.end())
        b.examples.push_back(std::move(pair));
    }
  }
  report.rows.reserve(buckets.size());
  for (auto& [rule, b] : buckets) {
    SesRow row;
    row.rule = rule;
    row.count = b.count;
    row.weight_percent =
        report.total ? 100.0 * static_cast<double>(b.count) / static_cast<double>(report.total)
                     : 0.0;
    row.accuracy = static_cast<double>(b.correct) / static_cast<double>(b.count);
    row.examples = std::move(b.examples);
    report.rows.push_back(std::move(row));
  }
  std::sort(report.rows.begin(), report.rows.end(), [](const SesRow& a, const SesRow& b) {
    return a.count != b.count ? a.count > b.count : a.rule < b.rule;
  });
  return report;
}

struct VocabSplit {
  std::optional<double> iv_accuracy;   // empty when the split has no tokens
  std::optional<double> oov_accuracy;
  std::size_t iv_count = 0;
  std::size_t oov_count = 0;
};

inline VocabSplit vocab_split_accuracy(const Corpus& gold, const Corpus& pred,
                                       const std::set<std::string>& train_vocab) {
  check_alignment(gold, pred);
  std::size_t iv_correct = 0, oov_correct = 0;
  VocabSplit split;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s)
    for (std::size_t t = 0; t < gold.sentences[s].tokens.size(); ++t) {
      const Token& g = gold.sentences[s].tokens[t];
      bool correct = g.lemma() == pred.sentences[s].tokens[t].lemma();
      if (train_vocab.count(g.form())) {
        ++split.iv_count;
        if (correct) ++iv_correct;
      } else {
        ++split.oov_count;
        if (correct) ++oov_correct;
      }
    }
  if (split.iv_count)
    split.iv_accuracy = static_cast<double>(iv_correct) / static_cast<double>(split.iv_count);
  if (split.oov_count)
    split.oov_accuracy = static_cast<double>(oov_correct) / static_cast<double>(split.oov_count);
  return split;
}

// --- McNemar -------------------------------------------------------------------

enum class McNemarMethod { exact, chi2_corrected };

inline const char* to_string(McNemarMethod m) {
  return m == McNemarMethod::exact ? "exact" : "chi2_corrected";
}

struct McNemarResult {
  std::size_t b = 0;  // A correct, B wrong
  std::size_t c = 0;  // A wrong, B correct
  double statistic = 0.0;
  double p_value = 1.0;
  McNemarMethod method = McNemarMethod::exact;
};

namespace eval_detail {

// Two-sided binomial test at p = 1/2: 2 * P(X <= min(b, c)), capped at 1.
inline double binomial_two_sided(std::size_t b, std::size_t c) {
  const std::size_t n = b + c;
  if (n == 0) return 1.0;
  const std::size_t k = std::min(b, c);
  long double sum = 0.0L;
  for (std::size_t i = 0; i <= k; ++i) {
    long double log_pmf = std::lgamma(static_cast<long double>(n) + 1) -
                          std::lgamma(static_cast<long double>(i) + 1) -
                          std::lgamma(static_cast<long double>(n - i) + 1) -
                          static_cast<long double>(n) * std::log(2.0L);
    sum += std::exp(log_pmf);
  }
  double p = static_cast<double>(2.0L * sum);
  return p > 1.0 ? 1.0 : p;
}

// Survival function of chi-square with one degree of freedom.
inline double chi2_sf_1df(double x) { return std::erfc(std::sqrt(x / 2.0)); }

}  // namespace eval_detail

/// McNemar test from the discordant counts. The corrected chi-square variant
/// uses the continuity-corrected statistic (|b-c|-1)^2/(b+c), clamped at zero
/// so the p-value stays monotone in |b-c|.
inline McNemarResult mcnemar_from_counts(std::size_t b, std::size_t c, McNemarMethod method) {
  McNemarResult r;
  r.b = b;
  r.c = c;
  r.method = method;
  if (b + c == 0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    return r;
  }
  if (method == McNemarMethod::exact) {
    r.statistic = static_cast<double>(std::min(b, c));
    r.p_value = eval_detail::binomial_two_sided(b, c);
  } else {
    double diff = std::abs(static_cast<double>(b) - static_cast<double>(c)) - 1.0;
    if (diff < 0.0) diff = 0.0;
    r.statistic = diff * diff / static_cast<double>(b + c);
    r.p_value = eval_detail::chi2_sf_1df(r.statistic);
  }
  return r;
}

/// Default method selection: exact for small discordant counts (< 25), the
/// corrected chi-square approximation otherwise.
inline McNemarMethod default_mcnemar_method(std::size_t b, std::size_t c) {
  return b + c < 25 ? McNemarMethod::exact : McNemarMethod::chi2_corrected;
}

inline McNemarResult mcnemar(const Corpus& gold, const Corpus& pred_a, const Corpus& pred_b,
                             std::optional<McNemarMethod> method = std::nullopt) {
  check_alignment(gold, pred_a);
  check_alignment(gold, pred_b);
  std::size_t b = 0, c = 0;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s)
    for (std::size_t t = 0; t < gold.sentences[s].tokens.size(); ++t) {
      const std::string& lemma = gold.sentences[s].tokens[t].lemma();
      bool a_ok = pred_a.sentences[s].tokens[t].lemma() == lemma;
      bool b_ok = pred_b.sentences[s].tokens[t].lemma() == lemma;
      if (a_ok && !b_ok) ++b;
      if (!a_ok && b_ok) ++c;
    }
  return mcnemar_from_counts(b, c, method.value_or(default_mcnemar_method(b, c)));
}

}  // namespace lemtag
