// lemtag: contextual lemmatization as SES-class sequence labeling.
//
// Subcommands: encode, train-morph, train-lemma, predict, eval, stats,
// classes. Exit codes: 0 success, 1 usage or configuration problem, 2 data
// problem (parse, encoding, alignment, I/O), 3 model problem.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lemtag/conllu.hpp"
#include "lemtag/error.hpp"
#include "lemtag/eval.hpp"
#include "lemtag/labels.hpp"
#include "lemtag/perceptron.hpp"
#include "lemtag/report.hpp"
#include "lemtag/ses.hpp"
#include "lemtag/stats.hpp"

namespace {

using namespace lemtag;

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit OutputTarget(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path, std::ios::binary);
    if (!file) throw IoError("cannot open output file: " + path);
    stream = &file;
  }
};

struct CommonInputFlags {
  std::string feats_format = "unimorph";
  bool nfc = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--feats-format", feats_format,
                    "FEATS column format: unimorph (\";\"-separated bundles) or ud "
                    "(\"|\"-separated Key=Value pairs)")
        ->check(CLI::IsMember({"unimorph", "ud"}))
        ->capture_default_str();
    cmd->add_flag("--nfc", nfc, "NFC-normalize input lines while parsing");
  }

  Corpus load(const std::string& path) const {
    return load_conllu_file(path, feats_format_from_string(feats_format), nfc);
  }
};

// --- encode -------------------------------------------------------------------

struct EncodeArgs {
  std::string input, output = "-", scheme = "ucg";
  bool allow_copy = false, pos_column4 = false;
  CommonInputFlags in;
};

void run_encode(const EncodeArgs& args) {
  Corpus corpus = args.in.load(args.input);
  OutputTarget out(args.output);
  LabelScheme scheme = scheme_from_string(args.scheme);
  PosSource pos = args.pos_column4 ? PosSource::column4 : PosSource::bundle;
  std::size_t skipped = 0;
  for (const auto& sentence : corpus.sentences) {
    for (const auto& tok : sentence.tokens) {
      if (tok.lemma() == "_") {
        ++skipped;
        continue;
      }
      *out.stream << tok.form() << '\t' << compose_label(tok, scheme, pos) << '\t'
                  << encode_rule_text(tok.form(), tok.lemma(), args.allow_copy) << '\n';
    }
    *out.stream << '\n';
  }
  if (!*out.stream) throw IoError("failed writing encoded output");
  if (skipped)
    std::cerr << "warning: skipped " << skipped << " token(s) with lemma \"_\"\n";
}

// --- training -----------------------------------------------------------------

struct TrainArgs {
  std::string train, dev, model_out, scheme = "ucg";
  int epochs = 10;
  std::uint64_t seed = 42;
  bool pos_column4 = false, allow_copy = false, no_average = false;
  bool no_context = false, no_affixes = false, no_shape = false, no_history = false;
  std::string channel = "none";  // train-lemma only; accepts "model:PATH"
  std::string morph_model_path;
  int jackknife = 0;
  bool scheme_explicit = false;  // set after parsing
  CommonInputFlags in;

  TrainConfig config() const {
    TrainConfig cfg;
    cfg.epochs = epochs;
    cfg.seed = seed;
    cfg.scheme = scheme_from_string(scheme);
    cfg.pos_source = pos_column4 ? PosSource::column4 : PosSource::bundle;
    cfg.allow_copy = allow_copy;
    cfg.average = !no_average;
    cfg.templates.context = !no_context;
    cfg.templates.affixes = !no_affixes;
    cfg.templates.shape = !no_shape;
    cfg.templates.history = !no_history;
    return cfg;
  }
};

void add_train_flags(CLI::App* cmd, TrainArgs& args, bool lemma_task) {
  cmd->add_option("--train", args.train, "training corpus (CoNLL-U)")->required();
  cmd->add_option("--dev", args.dev, "development corpus (CoNLL-U)")->required();
  cmd->add_option("-m,--model-out", args.model_out, "path for the trained model")->required();
  cmd->add_option("--scheme", args.scheme, "morphological label scheme")
      ->check(CLI::IsMember({"no-tag", "upos", "ucg", "ucn", "ucgn", "uallo", "uall-unordered"}))
      ->capture_default_str();
  cmd->add_option("--epochs", args.epochs)->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--seed", args.seed)->capture_default_str();
  cmd->add_flag("--pos-from-column4", args.pos_column4,
                "take the POS component from the UPOS column instead of the bundle");
  cmd->add_flag("--no-average", args.no_average, "store final instead of averaged weights");
  cmd->add_flag("--no-context", args.no_context, "disable neighboring-form features");
  cmd->add_flag("--no-affixes", args.no_affixes, "disable prefix/suffix features");
  cmd->add_flag("--no-shape", args.no_shape, "disable the word-shape feature");
  cmd->add_flag("--no-history", args.no_history, "disable predicted-label history features");
  if (lemma_task) {
    cmd->add_option("--channel", args.channel,
                    "morphology channel: none, gold, or model:PATH (a trained morph model)")
        ->capture_default_str();
    cmd->add_option("--morph-model", args.morph_model_path,
                    "morph model for --channel model");
    cmd->add_option("--jackknife", args.jackknife,
                    "train on K-fold jackknifed morph tags instead of gold ones")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--allow-copy", args.allow_copy, "allow the copy op in lemma rules");
  }
  args.in.add_to(cmd);
}

double dev_lemma_accuracy(const Trainer& trainer, const std::vector<PreparedSentence>& dev,
                          const Corpus& dev_corpus) {
  std::size_t total = 0, correct = 0;
  for (std::size_t s = 0; s < dev.size(); ++s) {
    std::vector<std::string> labels = trainer.predict_raw(dev[s]);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      std::string lemma = apply_rule(labels[i], dev[s].forms[i], ApplyMode::lenient);
      ++total;
      if (lemma == dev_corpus.sentences[s].tokens[i].lemma()) ++correct;
    }
  }
  return total ? static_cast<double>(correct) / static_cast<double>(total) : 1.0;
}

double dev_label_accuracy(const Trainer& trainer, const std::vector<PreparedSentence>& dev) {
  std::size_t total = 0, correct = 0;
  for (const auto& s : dev) {
    std::vector<std::string> labels = trainer.predict_raw(s);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      ++total;
      if (labels[i] == s.gold[i]) ++correct;
    }
  }
  return total ? static_cast<double>(correct) / static_cast<double>(total) : 1.0;
}

void run_train_morph(const TrainArgs& args) {
  TrainConfig cfg = args.config();
  cfg.channel = MorphChannel::none;
  Corpus train_corpus = args.in.load(args.train);
  Corpus dev_corpus = args.in.load(args.dev);
  auto train_data = build_morph_data(train_corpus, cfg.scheme, cfg.pos_source);
  auto dev_data = build_morph_data(dev_corpus, cfg.scheme, cfg.pos_source);
  Trainer trainer(TaskKind::morph, cfg, train_data);
  for (int e = 1; e <= cfg.epochs; ++e) {
    std::size_t mistakes = trainer.run_epoch();
    std::cout << "epoch " << e << " train-mistakes " << mistakes << " dev-accuracy "
              << dev_label_accuracy(trainer, dev_data) << '\n';
  }
  TaggerModel model = trainer.finalize();
  save_model(model, args.model_out);
  std::cout << "model written to " << args.model_out << '\n';
}

void run_train_lemma(const TrainArgs& args) {
  TrainConfig cfg = args.config();
  std::string channel = args.channel;
  std::string morph_path = args.morph_model_path;
  if (channel.rfind("model:", 0) == 0) {
    morph_path = channel.substr(6);
    channel = "model";
  }
  cfg.channel = channel_from_string(channel);

  std::optional<TaggerModel> morph_model;
  if (cfg.channel == MorphChannel::model) {
    if (morph_path.empty())
      throw ModelError("--channel model requires a morph model path");
    morph_model = load_model(morph_path);
    if (morph_model->task != TaskKind::morph)
      throw ModelError("--morph-model must point to a morph-task model");
    if (args.scheme_explicit && scheme_from_string(args.scheme) != morph_model->scheme)
      throw ModelError("--scheme disagrees with the morph model's scheme");
    cfg.scheme = morph_model->scheme;
    cfg.pos_source = morph_model->pos_source;
  }
  if (args.jackknife > 0 && cfg.channel == MorphChannel::none)
    throw ConfigError("--jackknife needs a morphology channel");

  Corpus train_corpus = args.in.load(args.train);
  Corpus dev_corpus = args.in.load(args.dev);
  std::size_t skipped = 0;
  auto train_data = build_lemma_data(train_corpus, cfg.allow_copy, &skipped);
  if (skipped)
    std::cerr << "warning: " << skipped << " training token(s) with lemma \"_\" excluded\n";
  auto dev_data = build_lemma_data(dev_corpus, cfg.allow_copy);

  if (cfg.channel != MorphChannel::none) {
    if (args.jackknife > 0) {
      TrainConfig jk = cfg;
      jk.channel = MorphChannel::none;
      auto tags = jackknife_tags(train_corpus, args.jackknife, jk);
      for (std::size_t i = 0; i < train_data.size(); ++i)
        train_data[i].morph = std::move(tags[i]);
    } else {
      attach_gold_morph(train_data, train_corpus, cfg.scheme, cfg.pos_source);
    }
    if (cfg.channel == MorphChannel::model)
      attach_model_morph(dev_data, *morph_model);
    else
      attach_gold_morph(dev_data, dev_corpus, cfg.scheme, cfg.pos_source);
  }

  Trainer trainer(TaskKind::lemma, cfg, train_data);
  for (int e = 1; e <= cfg.epochs; ++e) {
    std::size_t mistakes = trainer.run_epoch();
    std::cout << "epoch " << e << " train-mistakes " << mistakes << " dev-word-accuracy "
              << dev_lemma_accuracy(trainer, dev_data, dev_corpus) << '\n';
  }
  TaggerModel model = trainer.finalize();
  save_model(model, args.model_out);
  std::cout << "model written to " << args.model_out << '\n';
}

// --- predict ------------------------------------------------------------------

struct PredictArgs {
  std::string model, input, output = "-", morph_model_path;
  CommonInputFlags in;
};

void run_predict(const PredictArgs& args) {
  TaggerModel model = load_model(args.model);
  if (model.task != TaskKind::lemma)
    throw ModelError("predict needs a lemma-task model; use the morphology channel for "
                     "morph models");
  std::optional<TaggerModel> morph_model;
  if (model.channel == MorphChannel::model) {
    if (args.morph_model_path.empty())
      throw ModelError("model was trained with --channel model; pass --morph-model");
    morph_model = load_model(args.morph_model_path);
    if (morph_model->task != TaskKind::morph)
      throw ModelError("--morph-model must point to a morph-task model");
    if (morph_model->scheme != model.scheme)
      throw ModelError("morph model scheme does not match the lemma model");
  }

  Corpus corpus = args.in.load(args.input);
  for (auto& sentence : corpus.sentences) {
    PreparedSentence p = prepare_sentence(sentence);
    if (model.channel == MorphChannel::gold) {
      p.morph.reserve(sentence.tokens.size());
      for (const auto& tok : sentence.tokens)
        p.morph.push_back(compose_label(tok, model.scheme, model.pos_source));
    } else if (model.channel == MorphChannel::model) {
      p.morph = predict(*morph_model, p);
    }
    std::vector<std::string> lemmas = predict_lemmas(model, p);
    for (std::size_t i = 0; i < lemmas.size(); ++i)
      sentence.tokens[i].set_lemma(std::move(lemmas[i]));
  }
  OutputTarget out(args.output);
  write_conllu(corpus, *out.stream);
}

// --- eval ---------------------------------------------------------------------

struct EvalArgs {
  std::string gold, pred, compare, train_vocab, format = "json", output = "-";
  std::string mcnemar = "auto";
  std::size_t per_ses = 10;
  bool allow_copy = false;
  CommonInputFlags in;
};

void run_eval(const EvalArgs& args) {
  EvalOptions options;
  options.feats_format = feats_format_from_string(args.in.feats_format);
  options.allow_copy = args.allow_copy;
  options.per_ses_limit = args.per_ses;
  if (!args.train_vocab.empty()) options.train_vocab_path = args.train_vocab;
  if (!args.compare.empty()) options.compare_path = args.compare;
  if (args.mcnemar == "exact") options.mcnemar_method = McNemarMethod::exact;
  if (args.mcnemar == "chi2") options.mcnemar_method = McNemarMethod::chi2_corrected;
  EvalReport report = evaluate_run(args.gold, args.pred, options);
  OutputTarget out(args.output);
  if (args.format == "json")
    *out.stream << report_to_json(report).dump(2) << '\n';
  else
    *out.stream << report_to_tsv(report);
  if (!*out.stream) throw IoError("failed writing report");
}

// --- stats / classes ------------------------------------------------------------

struct StatsArgs {
  std::string input, format = "tsv", output = "-";
  bool allow_copy = false, both_copy_modes = false, pos_column4 = false;
  CommonInputFlags in;
};

void run_stats(const StatsArgs& args) {
  Corpus corpus = args.in.load(args.input);
  StatsRow row = corpus_stats(corpus, args.allow_copy,
                              args.pos_column4 ? PosSource::column4 : PosSource::bundle,
                              args.both_copy_modes);
  OutputTarget out(args.output);
  if (args.format == "json")
    *out.stream << stats_to_json(row, args.allow_copy).dump(2) << '\n';
  else
    *out.stream << stats_to_tsv(row, args.allow_copy);
}

struct LabelsArgs {
  std::string input, output = "-", scheme = "ucg";
  bool pos_column4 = false;
  CommonInputFlags in;
};

void run_labels(const LabelsArgs& args) {
  Corpus corpus = args.in.load(args.input);
  SchemeInventory inv = scheme_inventory(corpus, scheme_from_string(args.scheme),
                                         args.pos_column4 ? PosSource::column4
                                                          : PosSource::bundle);
  std::vector<std::pair<std::string, std::size_t>> rows(inv.counts.begin(), inv.counts.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  OutputTarget out(args.output);
  *out.stream << "label\tcount\n";
  for (const auto& [label, count] : rows) *out.stream << label << '\t' << count << '\n';
}

struct ClassesArgs {
  std::string input, output = "-";
  bool allow_copy = false;
  CommonInputFlags in;
};

void run_classes(const ClassesArgs& args) {
  Corpus corpus = args.in.load(args.input);
  ClassInventory inv = collect_classes(corpus, args.allow_copy);
  OutputTarget out(args.output);
  *out.stream << "rule\tcount\tweight_percent\texamples\n";
  for (const LemmaClass& cls : inv.classes) {
    double weight =
        inv.total ? 100.0 * static_cast<double>(cls.count) / static_cast<double>(inv.total) : 0.0;
    std::ostringstream w;
    w.setf(std::ios::fixed);
    w.precision(6);
    w << weight;
    *out.stream << cls.rule << '\t' << cls.count << '\t' << w.str() << '\t';
    for (std::size_t e = 0; e < cls.examples.size(); ++e) {
      if (e) *out.stream << ", ";
      *out.stream << cls.examples[e].first << "→" << cls.examples[e].second;
    }
    *out.stream << '\n';
  }
  if (inv.skipped)
    std::cerr << "warning: skipped " << inv.skipped << " token(s) with lemma \"_\"\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contextual lemmatization toolkit: SES lemma classes, perceptron taggers "
               "and an evaluation harness"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file supplying option defaults");

  EncodeArgs encode_args;
  auto* encode = app.add_subcommand(
      "encode", "emit (form, morph label, SES rule) training triples as TSV");
  encode->add_option("input", encode_args.input, "input corpus (CoNLL-U)")->required();
  encode->add_option("-o,--output", encode_args.output, "output path (default stdout)");
  encode->add_option("--scheme", encode_args.scheme, "morphological label scheme")
      ->check(CLI::IsMember({"no-tag", "upos", "ucg", "ucn", "ucgn", "uallo", "uall-unordered"}))
      ->capture_default_str();
  encode->add_flag("--allow-copy", encode_args.allow_copy, "allow the copy op in lemma rules");
  encode->add_flag("--pos-from-column4", encode_args.pos_column4,
                   "take the POS component from the UPOS column");
  encode_args.in.add_to(encode);

  TrainArgs train_morph_args;
  auto* train_morph = app.add_subcommand("train-morph", "train a morphological tagger");
  add_train_flags(train_morph, train_morph_args, false);

  TrainArgs train_lemma_args;
  auto* train_lemma = app.add_subcommand("train-lemma", "train a lemmatizer over SES classes");
  add_train_flags(train_lemma, train_lemma_args, true);

  PredictArgs predict_args;
  auto* predict_cmd = app.add_subcommand(
      "predict", "rewrite the LEMMA column of a corpus with model predictions");
  predict_cmd->add_option("--model", predict_args.model, "trained lemma model")->required();
  predict_cmd->add_option("input", predict_args.input, "input corpus (CoNLL-U)")->required();
  predict_cmd->add_option("-o,--output", predict_args.output, "output path (default stdout)");
  predict_cmd->add_option("--morph-model", predict_args.morph_model_path,
                          "morph model when the lemma model uses --channel model");
  predict_args.in.add_to(predict_cmd);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate predictions against a gold corpus");
  eval_cmd->add_option("gold", eval_args.gold, "gold corpus (CoNLL-U)")->required();
  eval_cmd->add_option("pred", eval_args.pred, "predicted corpus (CoNLL-U)")->required();
  eval_cmd->add_option("--compare", eval_args.compare,
                       "second prediction; adds a McNemar comparison");
  eval_cmd->add_option("--train-vocab", eval_args.train_vocab,
                       "training corpus whose forms define the in-vocabulary split");
  eval_cmd->add_option("--per-ses", eval_args.per_ses,
                       "rows in the per-SES TSV table (0 = all)")
      ->capture_default_str();
  eval_cmd->add_option("--format", eval_args.format, "report format")
      ->check(CLI::IsMember({"json", "tsv"}))
      ->capture_default_str();
  eval_cmd->add_option("--mcnemar", eval_args.mcnemar, "McNemar variant")
      ->check(CLI::IsMember({"auto", "exact", "chi2"}))
      ->capture_default_str();
  eval_cmd->add_flag("--allow-copy", eval_args.allow_copy,
                     "allow the copy op when grouping by SES class");
  eval_cmd->add_option("-o,--output", eval_args.output, "output path (default stdout)");
  eval_args.in.add_to(eval_cmd);

  StatsArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "corpus complexity summary");
  stats_cmd->add_option("input", stats_args.input, "input corpus (CoNLL-U)")->required();
  stats_cmd->add_flag("--allow-copy", stats_args.allow_copy,
                      "allow the copy op in lemma rules");
  stats_cmd->add_flag("--both-copy-modes", stats_args.both_copy_modes,
                      "report SES counts for both copy settings");
  stats_cmd->add_flag("--pos-from-column4", stats_args.pos_column4,
                      "take the POS component from the UPOS column");
  stats_cmd->add_option("--format", stats_args.format, "output format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  stats_cmd->add_option("-o,--output", stats_args.output, "output path (default stdout)");
  stats_args.in.add_to(stats_cmd);

  LabelsArgs labels_args;
  auto* labels_cmd =
      app.add_subcommand("labels", "export a scheme's label inventory as TSV");
  labels_cmd->add_option("input", labels_args.input, "input corpus (CoNLL-U)")->required();
  labels_cmd->add_option("--scheme", labels_args.scheme, "morphological label scheme")
      ->check(CLI::IsMember({"no-tag", "upos", "ucg", "ucn", "ucgn", "uallo", "uall-unordered"}))
      ->capture_default_str();
  labels_cmd->add_flag("--pos-from-column4", labels_args.pos_column4,
                       "take the POS component from the UPOS column");
  labels_cmd->add_option("-o,--output", labels_args.output, "output path (default stdout)");
  labels_args.in.add_to(labels_cmd);

  ClassesArgs classes_args;
  auto* classes_cmd =
      app.add_subcommand("classes", "export the induced SES class inventory as TSV");
  classes_cmd->add_option("input", classes_args.input, "input corpus (CoNLL-U)")->required();
  classes_cmd->add_flag("--allow-copy", classes_args.allow_copy,
                        "allow the copy op in lemma rules");
  classes_cmd->add_option("-o,--output", classes_args.output, "output path (default stdout)");
  classes_args.in.add_to(classes_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  train_lemma_args.scheme_explicit = train_lemma->get_option("--scheme")->count() > 0;

  try {
    if (encode->parsed()) run_encode(encode_args);
    if (train_morph->parsed()) run_train_morph(train_morph_args);
    if (train_lemma->parsed()) run_train_lemma(train_lemma_args);
    if (predict_cmd->parsed()) run_predict(predict_args);
    if (eval_cmd->parsed()) run_eval(eval_args);
    if (stats_cmd->parsed()) run_stats(stats_args);
    if (labels_cmd->parsed()) run_labels(labels_args);
    if (classes_cmd->parsed()) run_classes(classes_args);
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
