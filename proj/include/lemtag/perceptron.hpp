#pragma once

// Averaged-perceptron sequence tagger with greedy left-to-right decoding and
// predicted-label history. Instantiated twice: labels are morphological
// labels (task "morph") or rendered lemma rules (task "lemma"). An optional
// morphology channel feeds per-token labels into the feature set.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lemtag/conllu.hpp"
#include "lemtag/error.hpp"
#include "lemtag/labels.hpp"
#include "lemtag/ses.hpp"
#include "lemtag/unicode.hpp"

namespace lemtag {

enum class TaskKind { morph, lemma };

inline const char* to_string(TaskKind t) { return t == TaskKind::morph ? "morph" : "lemma"; }

inline TaskKind task_from_string(std::string_view s) {
  if (s == "morph") return TaskKind::morph;
  if (s == "lemma") return TaskKind::lemma;
  throw ConfigError("unknown task: " + std::string(s));
}

enum class MorphChannel { none, gold, model };

inline const char* to_string(MorphChannel c) {
  switch (c) {
    case MorphChannel::none: return "none";
    case MorphChannel::gold: return "gold";
    case MorphChannel::model: return "model";
  }
  return "?";
}

inline MorphChannel channel_from_string(std::string_view s) {
  if (s == "none") return MorphChannel::none;
  if (s == "gold") return MorphChannel::gold;
  if (s == "model") return MorphChannel::model;
  throw ConfigError("unknown morph channel: " + std::string(s));
}

struct FeatureTemplates {
  bool context = true;  // neighboring forms at i±1, i±2
  bool affixes = true;  // suffixes of length 1–4, prefixes of length 1–3
  bool shape = true;
  bool history = true;  // previous one and two predicted labels

  friend bool operator==(const FeatureTemplates&, const FeatureTemplates&) = default;
};

inline std::string to_string(const FeatureTemplates& t) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(t.context, "context");
  add(t.affixes, "affixes");
  add(t.shape, "shape");
  add(t.history, "history");
  return out.empty() ? "none" : out;
}

inline FeatureTemplates templates_from_string(std::string_view s) {
  FeatureTemplates t{false, false, false, false};
  if (s == "none") return t;
  for (std::string_view part : feats_detail::split(s, ',')) {
    if (part == "context") t.context = true;
    else if (part == "affixes") t.affixes = true;
    else if (part == "shape") t.shape = true;
    else if (part == "history") t.history = true;
    else throw ConfigError("unknown feature template: " + std::string(part));
  }
  return t;
}

struct TrainConfig {
  int epochs = 10;
  std::uint64_t seed = 42;
  MorphChannel channel = MorphChannel::none;
  LabelScheme scheme = LabelScheme::kUpos;
  PosSource pos_source = PosSource::bundle;
  bool allow_copy = false;  // lemma task
  bool average = true;
  FeatureTemplates templates;
};

constexpr const char* kPadForm = "__PAD__";
constexpr const char* kPadLabel = "__BOS__";

/// Word shape classes used as a single categorical feature.
inline std::string shape_class(std::u32string_view form) {
  bool any_digit = false, any_upper = false, any_lower = false;
  for (char32_t c : form) {
    if (uni::is_ascii_digit(c)) any_digit = true;
    else if (uni::is_upper_char(c)) any_upper = true;
    else if (uni::is_lower_char(c)) any_lower = true;
  }
  if (!any_upper && !any_lower && !any_digit) return "punct";
  if (any_digit) return "has-digit";
  if (!any_upper) return "all-lower";
  if (!any_lower) return "all-upper";
  bool rest_has_upper = false;
  for (std::size_t i = 1; i < form.size(); ++i)
    if (uni::is_upper_char(form[i])) rest_has_upper = true;
  if (uni::is_upper_char(form[0]) && !rest_has_upper) return "first-upper";
  return "mixed";
}

/// A sentence prepared for tagging: raw forms plus cached lowercase variants,
/// shape classes, the optional morphology channel and the optional gold
/// labels. An empty gold string marks a position that is decoded but never
/// drives updates (e.g. a token with lemma "_").
struct PreparedSentence {
  std::vector<std::string> forms;
  std::vector<std::string> lower;
  std::vector<std::u32string> lower32;
  std::vector<std::string> shapes;
  std::vector<std::string> morph;  // empty vector = no channel content
  std::vector<std::string> gold;   // empty vector = prediction only

  std::size_t size() const { return forms.size(); }
};

inline PreparedSentence prepare_sentence(const std::vector<std::string>& forms) {
  PreparedSentence p;
  p.forms = forms;
  p.lower.reserve(forms.size());
  p.lower32.reserve(forms.size());
  p.shapes.reserve(forms.size());
  for (const auto& f : forms) {
    std::u32string f32 = uni::decode_utf8(f);
    p.shapes.push_back(shape_class(f32));
    std::u32string lo = uni::lower_safe(std::u32string_view(f32));
    p.lower.push_back(uni::encode_utf8(lo));
    p.lower32.push_back(std::move(lo));
  }
  return p;
}

inline void extract_features(const PreparedSentence& s, std::size_t i,
                             const std::string& prev1, const std::string& prev2,
                             const FeatureTemplates& t, bool use_morph,
                             std::vector<std::string>& keys) {
  keys.clear();
  const std::size_t n = s.size();
  auto form_at = [&](long j) -> const std::string& {
    static const std::string pad = kPadForm;
    return (j < 0 || j >= static_cast<long>(n)) ? pad : s.lower[j];
  };
  keys.push_back("b");
  keys.push_back("w0=" + s.lower[i]);
  if (t.context) {
    keys.push_back("w-1=" + form_at(static_cast<long>(i) - 1));
    keys.push_back("w-2=" + form_at(static_cast<long>(i) - 2));
    keys.push_back("w+1=" + form_at(static_cast<long>(i) + 1));
    keys.push_back("w+2=" + form_at(static_cast<long>(i) + 2));
  }
  if (t.affixes) {
    const std::u32string& f = s.lower32[i];
    for (std::size_t k = 1; k <= 4 && k <= f.size(); ++k)
      keys.push_back("suf" + std::to_string(k) + "=" +
                     uni::encode_utf8(std::u32string_view(f).substr(f.size() - k)));
    for (std::size_t k = 1; k <= 3 && k <= f.size(); ++k)
      keys.push_back("pre" + std::to_string(k) + "=" +
                     uni::encode_utf8(std::u32string_view(f).substr(0, k)));
  }
  if (t.shape) keys.push_back("shape=" + s.shapes[i]);
  if (t.history) {
    keys.push_back("p1=" + prev1);
    keys.push_back("p2=" + prev2);
  }
  if (use_morph) {
    auto morph_at = [&](long j) -> const std::string& {
      static const std::string pad = kPadForm;
      return (j < 0 || j >= static_cast<long>(n)) ? pad : s.morph[j];
    };
    keys.push_back("m0=" + s.morph[i]);
    keys.push_back("m-1=" + morph_at(static_cast<long>(i) - 1));
    keys.push_back("m+1=" + morph_at(static_cast<long>(i) + 1));
    const std::u32string& f = s.lower32[i];
    std::size_t k = std::min<std::size_t>(2, f.size());
    keys.push_back("m0s2=" + s.morph[i] + "¦" +
                   uni::encode_utf8(std::u32string_view(f).substr(f.size() - k)));
  }
}

/// Trained tagger: label inventory plus averaged weights per feature key.
struct TaggerModel {
  TaskKind task = TaskKind::morph;
  LabelScheme scheme = LabelScheme::kUpos;
  MorphChannel channel = MorphChannel::none;
  PosSource pos_source = PosSource::bundle;
  bool allow_copy = false;
  bool averaged = true;
  int epochs = 0;
  std::uint64_t seed = 0;
  FeatureTemplates templates;
  std::vector<std::string> labels;  // sorted lexicographically
  std::unordered_map<std::string, std::vector<std::pair<std::uint32_t, double>>> weights;
  std::vector<LemmaRule> rules;  // parsed labels, lemma task only (not serialized)

  void build_rule_cache() {
    rules.clear();
    if (task != TaskKind::lemma) return;
    rules.reserve(labels.size());
    for (const auto& l : labels) rules.push_back(parse_rule(l));
  }
};

namespace tagger_detail {

inline void score_keys(
    const std::unordered_map<std::string, std::vector<std::pair<std::uint32_t, double>>>& weights,
    const std::vector<std::string>& keys, std::vector<double>& scores) {
  std::fill(scores.begin(), scores.end(), 0.0);
  for (const auto& key : keys) {
    auto it = weights.find(key);
    if (it == weights.end()) continue;
    for (const auto& [label, w] : it->second) scores[label] += w;
  }
}

// Highest score wins; the lexicographically smallest label wins ties (labels
// are kept sorted, so the smallest index does).
inline std::uint32_t argmax(const std::vector<double>& scores) {
  std::uint32_t best = 0;
  for (std::uint32_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return best;
}

}  // namespace tagger_detail

inline std::vector<std::string> predict(const TaggerModel& model, const PreparedSentence& s) {
  if (model.channel != MorphChannel::none && s.morph.size() != s.size())
    throw ModelError("model expects a morphology channel but none was supplied");
  if (model.labels.empty()) throw ModelError("model has an empty label inventory");
  std::vector<std::string> out;
  out.reserve(s.size());
  std::vector<std::string> keys;
  std::vector<double> scores(model.labels.size());
  std::string prev1 = kPadLabel, prev2 = kPadLabel;
  const bool use_morph = model.channel != MorphChannel::none;
  for (std::size_t i = 0; i < s.size(); ++i) {
    extract_features(s, i, prev1, prev2, model.templates, use_morph, keys);
    tagger_detail::score_keys(model.weights, keys, scores);
    const std::string& label = model.labels[tagger_detail::argmax(scores)];
    out.push_back(label);
    prev2 = prev1;
    prev1 = label;
  }
  return out;
}

/// Lemma-task decode: predicted rules applied leniently to the forms.
inline std::vector<std::string> predict_lemmas(const TaggerModel& model,
                                               const PreparedSentence& s) {
  if (model.task != TaskKind::lemma)
    throw ModelError("predict_lemmas requires a lemma-task model");
  std::vector<std::string> labels = predict(model, s);
  std::vector<std::string> lemmas;
  lemmas.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::size_t id = std::lower_bound(model.labels.begin(), model.labels.end(), labels[i]) -
                     model.labels.begin();
    const LemmaRule& rule = model.rules[id];
    lemmas.push_back(apply_rule(rule, s.forms[i], ApplyMode::lenient));
  }
  return lemmas;
}

/// Mistake-driven trainer. One epoch shuffles the sentences with the seeded
/// generator, decodes greedily and, on each mispredicted labeled token, bumps
/// the gold label's weights and drops the predicted label's over the active
/// feature keys. The averaging clock advances once per decoded token so the
/// finalized weights are the per-step means.
class Trainer {
public:
  Trainer(TaskKind task, const TrainConfig& config, const std::vector<PreparedSentence>& data)
      : task_(task), config_(config), data_(data), rng_(config.seed) {
    if (data.empty()) throw ConfigError("training data is empty");
    std::vector<std::string> labels;
    for (const auto& s : data) {
      if (!s.gold.empty() && s.gold.size() != s.size())
        throw ConfigError("gold labels do not cover the sentence");
      if (config.channel != MorphChannel::none && s.morph.size() != s.size())
        throw ConfigError("morph channel enabled but sentence has no morph labels");
      for (const auto& g : s.gold)
        if (!g.empty()) labels.push_back(g);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.empty()) throw ConfigError("training data has no labeled tokens");
    labels_ = std::move(labels);
    for (std::uint32_t i = 0; i < labels_.size(); ++i) label_ids_[labels_[i]] = i;
  }

  int epochs_run() const { return epochs_run_; }

  /// Mispredictions seen during the epoch (before each update).
  std::size_t run_epoch() {
    std::vector<std::size_t> order(data_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    // Own Fisher-Yates: std::shuffle's output is implementation-defined and
    // model files must be reproducible across toolchains.
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng_() % i]);

    std::size_t mistakes = 0;
    std::vector<std::string> keys;
    std::vector<double> scores(labels_.size());
    const bool use_morph = config_.channel != MorphChannel::none;
    for (std::size_t idx : order) {
      const PreparedSentence& s = data_[idx];
      std::string prev1 = kPadLabel, prev2 = kPadLabel;
      for (std::size_t i = 0; i < s.size(); ++i) {
        ++t_;
        extract_features(s, i, prev1, prev2, config_.templates, use_morph, keys);
        score_raw(keys, scores);
        std::uint32_t pred = tagger_detail::argmax(scores);
        if (!s.gold.empty() && !s.gold[i].empty()) {
          std::uint32_t gold = label_ids_.at(s.gold[i]);
          if (gold != pred) {
            ++mistakes;
            for (const auto& key : keys) {
              update(key, gold, +1.0);
              update(key, pred, -1.0);
            }
          }
        }
        prev2 = prev1;
        prev1 = labels_[pred];
      }
    }
    ++epochs_run_;
    return mistakes;
  }

  /// Greedy decode with the current raw (un-averaged) weights.
  std::vector<std::string> predict_raw(const PreparedSentence& s) const {
    std::vector<std::string> out;
    out.reserve(s.size());
    std::vector<std::string> keys;
    std::vector<double> scores(labels_.size());
    std::string prev1 = kPadLabel, prev2 = kPadLabel;
    const bool use_morph = config_.channel != MorphChannel::none;
    for (std::size_t i = 0; i < s.size(); ++i) {
      extract_features(s, i, prev1, prev2, config_.templates, use_morph, keys);
      score_raw(keys, scores);
      const std::string& label = labels_[tagger_detail::argmax(scores)];
      out.push_back(label);
      prev2 = prev1;
      prev1 = label;
    }
    return out;
  }

  TaggerModel finalize() const {
    TaggerModel model;
    model.task = task_;
    model.scheme = config_.scheme;
    model.channel = config_.channel;
    model.pos_source = config_.pos_source;
    model.allow_copy = config_.allow_copy;
    model.averaged = config_.average;
    model.epochs = epochs_run_;
    model.seed = config_.seed;
    model.templates = config_.templates;
    model.labels = labels_;
    for (const auto& [key, entries] : weights_) {
      std::vector<std::pair<std::uint32_t, double>> out;
      for (const Entry& e : entries) {
        double w = e.w;
        if (config_.average && t_ > 0) {
          double total = e.total + static_cast<double>(t_ - e.tstamp + 1) * e.w;
          w = total / static_cast<double>(t_);
        }
        if (w != 0.0) out.emplace_back(e.label, w);
      }
      if (out.empty()) continue;
      std::sort(out.begin(), out.end());
      model.weights.emplace(key, std::move(out));
    }
    model.build_rule_cache();
    return model;
  }

private:
  struct Entry {
    std::uint32_t label;
    double w = 0.0;
    double total = 0.0;     // sum of per-step values up to tstamp
    std::uint64_t tstamp = 0;  // step of the last change
  };

  void score_raw(const std::vector<std::string>& keys, std::vector<double>& scores) const {
    std::fill(scores.begin(), scores.end(), 0.0);
    for (const auto& key : keys) {
      auto it = weights_.find(key);
      if (it == weights_.end()) continue;
      for (const Entry& e : it->second) scores[e.label] += e.w;
    }
  }

  void update(const std::string& key, std::uint32_t label, double delta) {
    auto& entries = weights_[key];
    for (Entry& e : entries) {
      if (e.label == label) {
        e.total += static_cast<double>(t_ - e.tstamp) * e.w;
        e.w += delta;
        e.tstamp = t_;
        return;
      }
    }
    entries.push_back(Entry{label, delta, 0.0, t_});
  }

  TaskKind task_;
  TrainConfig config_;
  const std::vector<PreparedSentence>& data_;
  std::mt19937_64 rng_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> label_ids_;
  std::unordered_map<std::string, std::vector<Entry>> weights_;
  std::uint64_t t_ = 0;
  int epochs_run_ = 0;
};

inline TaggerModel train(TaskKind task, const std::vector<PreparedSentence>& data,
                         const TrainConfig& config) {
  if (config.epochs < 1) throw ConfigError("epochs must be >= 1");
  Trainer trainer(task, config, data);
  for (int e = 0; e < config.epochs; ++e) trainer.run_epoch();
  return trainer.finalize();
}

// --- data preparation ---------------------------------------------------------

inline PreparedSentence prepare_sentence(const Sentence& sentence) {
  std::vector<std::string> forms;
  forms.reserve(sentence.tokens.size());
  for (const auto& t : sentence.tokens) forms.push_back(t.form());
  return prepare_sentence(forms);
}

/// Gold = composed morphological labels.
inline std::vector<PreparedSentence> build_morph_data(const Corpus& corpus, LabelScheme scheme,
                                                      PosSource pos_source) {
  std::vector<PreparedSentence> out;
  out.reserve(corpus.sentences.size());
  for (const auto& sentence : corpus.sentences) {
    PreparedSentence p = prepare_sentence(sentence);
    p.gold.reserve(sentence.tokens.size());
    for (const auto& tok : sentence.tokens)
      p.gold.push_back(compose_label(tok, scheme, pos_source));
    out.push_back(std::move(p));
  }
  return out;
}

/// Gold = rendered lemma rules; tokens with lemma "_" stay unlabeled.
/// Returns the number of such skipped tokens through `skipped` if given.
inline std::vector<PreparedSentence> build_lemma_data(const Corpus& corpus, bool allow_copy,
                                                      std::size_t* skipped = nullptr) {
  std::vector<PreparedSentence> out;
  out.reserve(corpus.sentences.size());
  std::size_t skip_count = 0;
  for (const auto& sentence : corpus.sentences) {
    PreparedSentence p = prepare_sentence(sentence);
    p.gold.reserve(sentence.tokens.size());
    for (const auto& tok : sentence.tokens) {
      if (tok.lemma() == "_") {
        ++skip_count;
        p.gold.push_back("");
      } else {
        p.gold.push_back(encode_rule_text(tok.form(), tok.lemma(), allow_copy));
      }
    }
    out.push_back(std::move(p));
  }
  if (skipped) *skipped = skip_count;
  return out;
}

/// Gold morphological labels for the channel content.
inline void attach_gold_morph(std::vector<PreparedSentence>& data, const Corpus& corpus,
                              LabelScheme scheme, PosSource pos_source) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i].morph.clear();
    data[i].morph.reserve(corpus.sentences[i].tokens.size());
    for (const auto& tok : corpus.sentences[i].tokens)
      data[i].morph.push_back(compose_label(tok, scheme, pos_source));
  }
}

/// Morph labels predicted by a trained morph model, e.g. for pipeline decode.
inline void attach_model_morph(std::vector<PreparedSentence>& data, const TaggerModel& morph) {
  if (morph.task != TaskKind::morph)
    throw ModelError("the morphology channel needs a morph-task model");
  for (auto& s : data) s.morph = predict(morph, s);
}

/// K-fold jackknife: each contiguous fold is tagged by a morph model trained
/// on the remaining folds, so every token gets a realistic predicted label.
inline std::vector<std::vector<std::string>> jackknife_tags(const Corpus& corpus, int k,
                                                            const TrainConfig& config) {
  const std::size_t n = corpus.sentences.size();
  if (k < 2) throw ConfigError("jackknifing needs at least 2 folds");
  if (static_cast<std::size_t>(k) > n)
    throw ConfigError("jackknife fold count exceeds the sentence count");
  std::vector<PreparedSentence> all = build_morph_data(corpus, config.scheme, config.pos_source);
  std::vector<std::vector<std::string>> tags(n);
  TrainConfig fold_config = config;
  fold_config.channel = MorphChannel::none;
  for (int f = 0; f < k; ++f) {
    std::size_t lo = n * static_cast<std::size_t>(f) / static_cast<std::size_t>(k);
    std::size_t hi = n * static_cast<std::size_t>(f + 1) / static_cast<std::size_t>(k);
    std::vector<PreparedSentence> train_split;
    train_split.reserve(n - (hi - lo));
    for (std::size_t i = 0; i < n; ++i)
      if (i < lo || i >= hi) train_split.push_back(all[i]);
    TaggerModel model = train(TaskKind::morph, train_split, fold_config);
    for (std::size_t i = lo; i < hi; ++i) tags[i] = predict(model, all[i]);
  }
  return tags;
}

// --- serialization --------------------------------------------------------------

namespace tagger_detail {

constexpr int kModelVersion = 1;

inline std::string format_weight(double w) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  return buf;
}

inline std::string expect_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw ModelFormatError(std::string("model file truncated at ") + what);
  return line;
}

inline std::string expect_field(const std::string& line, const std::string& key) {
  if (line.rfind(key + " ", 0) != 0)
    throw ModelFormatError("model file: expected \"" + key + "\", got \"" + line + "\"");
  return line.substr(key.size() + 1);
}

}  // namespace tagger_detail

inline void save_model(const TaggerModel& model, std::ostream& out) {
  out << "lemtag-model " << tagger_detail::kModelVersion << '\n';
  out << "task " << to_string(model.task) << '\n';
  out << "scheme " << to_string(model.scheme) << '\n';
  out << "channel " << to_string(model.channel) << '\n';
  out << "pos-source " << to_string(model.pos_source) << '\n';
  out << "allow-copy " << (model.allow_copy ? 1 : 0) << '\n';
  out << "averaged " << (model.averaged ? 1 : 0) << '\n';
  out << "epochs " << model.epochs << '\n';
  out << "seed " << model.seed << '\n';
  out << "templates " << to_string(model.templates) << '\n';
  out << "labels " << model.labels.size() << '\n';
  for (const auto& label : model.labels) out << label << '\n';
  std::vector<const std::string*> keys;
  keys.reserve(model.weights.size());
  for (const auto& [key, entries] : model.weights) keys.push_back(&key);
  std::sort(keys.begin(), keys.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  out << "features " << keys.size() << '\n';
  for (const std::string* key : keys) {
    out << *key;
    for (const auto& [label, w] : model.weights.at(*key))
      out << '\t' << label << ':' << tagger_detail::format_weight(w);
    out << '\n';
  }
  out << "end\n";
  if (!out) throw IoError("failed writing model");
}

inline void save_model(const TaggerModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open model file for writing: " + path);
  save_model(model, out);
}

inline TaggerModel load_model(std::istream& in) {
  using tagger_detail::expect_field;
  using tagger_detail::expect_line;
  std::string header = expect_line(in, "header");
  std::string version = expect_field(header, "lemtag-model");
  if (version != std::to_string(tagger_detail::kModelVersion))
    throw ModelError("unsupported model format version: " + version);
  TaggerModel model;
  model.task = task_from_string(expect_field(expect_line(in, "task"), "task"));
  model.scheme = scheme_from_string(expect_field(expect_line(in, "scheme"), "scheme"));
  model.channel = channel_from_string(expect_field(expect_line(in, "channel"), "channel"));
  model.pos_source =
      pos_source_from_string(expect_field(expect_line(in, "pos-source"), "pos-source"));
  model.allow_copy = expect_field(expect_line(in, "allow-copy"), "allow-copy") == "1";
  model.averaged = expect_field(expect_line(in, "averaged"), "averaged") == "1";
  model.epochs = std::atoi(expect_field(expect_line(in, "epochs"), "epochs").c_str());
  model.seed = std::strtoull(expect_field(expect_line(in, "seed"), "seed").c_str(), nullptr, 10);
  model.templates =
      templates_from_string(expect_field(expect_line(in, "templates"), "templates"));
  std::size_t n_labels =
      std::strtoull(expect_field(expect_line(in, "labels"), "labels").c_str(), nullptr, 10);
  model.labels.reserve(n_labels);
  for (std::size_t i = 0; i < n_labels; ++i)
    model.labels.push_back(expect_line(in, "label list"));
  std::size_t n_features =
      std::strtoull(expect_field(expect_line(in, "features"), "features").c_str(), nullptr, 10);
  for (std::size_t i = 0; i < n_features; ++i) {
    std::string line = expect_line(in, "feature records");
    auto fields = feats_detail::split(line, '\t');
    if (fields.empty() || fields[0].empty())
      throw ModelFormatError("model file: bad feature record: " + line);
    std::vector<std::pair<std::uint32_t, double>> entries;
    entries.reserve(fields.size() - 1);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      std::size_t colon = fields[f].find(':');
      if (colon == std::string_view::npos)
        throw ModelFormatError("model file: bad weight entry: " + std::string(fields[f]));
      std::uint32_t label = static_cast<std::uint32_t>(
          std::strtoul(std::string(fields[f].substr(0, colon)).c_str(), nullptr, 10));
      if (label >= model.labels.size())
        throw ModelFormatError("model file: weight entry for unknown label id");
      double w = std::strtod(std::string(fields[f].substr(colon + 1)).c_str(), nullptr);
      entries.emplace_back(label, w);
    }
    model.weights.emplace(std::string(fields[0]), std::move(entries));
  }
  if (expect_line(in, "trailer") != "end")
    throw ModelFormatError("model file: missing end marker");
  try {
    model.build_rule_cache();
  } catch (const DataError& e) {
    throw ModelFormatError(std::string("model file: unparsable lemma rule label: ") + e.what());
  }
  return model;
}

inline TaggerModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model file: " + path);
  return load_model(in);
}

}  // namespace lemtag
