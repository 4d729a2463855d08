#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "lemtag/eval.hpp"
#include "lemtag/report.hpp"
#include "test_support.hpp"

using namespace lemtag;
using testsupport::make_corpus;

namespace {

using Pairs = std::vector<std::vector<std::pair<std::string, std::string>>>;

// Gold/pred corpus pair over the same forms with per-token predicted lemmas.
std::pair<Corpus, Corpus> gold_pred(const Pairs& gold_pairs, const Pairs& pred_pairs) {
  return {make_corpus(gold_pairs), make_corpus(pred_pairs)};
}

std::pair<Corpus, Corpus> random_gold_pred(std::mt19937& rng, int max_sentences = 6) {
  static const char* forms[] = {"walks", "cats",  "red",  "МИР", "Paris",
                                "things", "driving", "la", "is",  "."};
  static const char* lemmas[] = {"walk", "cat", "red", "мир", "Paris",
                                 "thing", "drive", "el", "be", "."};
  Pairs gold, pred;
  int sentences = 1 + rng() % max_sentences;
  for (int s = 0; s < sentences; ++s) {
    std::vector<std::pair<std::string, std::string>> g, p;
    int tokens = 1 + rng() % 8;
    for (int t = 0; t < tokens; ++t) {
      int i = rng() % std::size(forms);
      g.emplace_back(forms[i], lemmas[i]);
      // 70% correct, else a wrong lemma
      p.emplace_back(forms[i], rng() % 10 < 7 ? lemmas[i] : "WRONG");
    }
    gold.push_back(g);
    pred.push_back(p);
  }
  return gold_pred(gold, pred);
}

}  // namespace

TEST_CASE("word accuracy: exact and casing-sensitive") {
  auto [g0, p0] = gold_pred({{{"a", "x"}, {"b", "y"}}}, {{{"a", "x"}, {"b", "y"}}});
  CHECK(word_accuracy(g0, p0) == 1.0);

  auto [g1, p1] = gold_pred({{{"a", "w"}, {"b", "x"}, {"c", "y"}, {"d", "z"}}},
                            {{{"a", "w"}, {"b", "x"}, {"c", "y"}, {"d", "?"}}});
  CHECK(word_accuracy(g1, p1) == 0.75);

  // 10 tokens, 2 casing-only mismatches: casing differences are errors.
  Pairs gold(1), pred(1);
  for (int i = 0; i < 10; ++i) {
    std::string form = "w" + std::to_string(i);
    std::string lemma = i < 2 ? "Paris" : "x";
    gold[0].emplace_back(form, lemma);
    pred[0].emplace_back(form, i < 2 ? "paris" : "x");
  }
  auto [g2, p2] = gold_pred(gold, pred);
  CHECK(word_accuracy(g2, p2) == 0.8);
}

TEST_CASE("sentence accuracy") {
  Pairs gold = {{{"a", "x"}}, {{"b", "y"}}, {{"c", "z"}}, {{"d", "w"}}};
  Pairs pred = {{{"a", "x"}}, {{"b", "y"}}, {{"c", "?"}}, {{"d", "?"}}};
  auto [g, p] = gold_pred(gold, pred);
  CHECK(sentence_accuracy(g, p) == 0.5);

  // One long all-wrong sentence plus one correct single-token sentence:
  // sentence accuracy 0.5 with word accuracy 1/11.
  Pairs gold2(2), pred2(2);
  for (int i = 0; i < 10; ++i) {
    gold2[0].emplace_back("w" + std::to_string(i), "x");
    pred2[0].emplace_back("w" + std::to_string(i), "?");
  }
  gold2[1].emplace_back("ok", "ok");
  pred2[1].emplace_back("ok", "ok");
  auto [g2, p2] = gold_pred(gold2, pred2);
  CHECK(sentence_accuracy(g2, p2) == 0.5);
  CHECK(word_accuracy(g2, p2) == 1.0 / 11.0);
  CHECK(sentence_accuracy(g2, p2) > word_accuracy(g2, p2));
}

TEST_CASE("sentence accuracy is 1 iff word accuracy is 1") {
  std::mt19937 rng(4242);
  for (int i = 0; i < 100; ++i) {
    auto [g, p] = random_gold_pred(rng);
    CHECK((word_accuracy(g, p) == 1.0) == (sentence_accuracy(g, p) == 1.0));
  }
}

TEST_CASE("alignment errors name the first divergent position") {
  auto [g, p] = gold_pred({{{"a", "x"}, {"b", "y"}}}, {{{"a", "x"}, {"DIFFERENT", "y"}}});
  try {
    word_accuracy(g, p);
    FAIL("expected AlignmentError");
  } catch (const AlignmentError& e) {
    std::string what = e.what();
    CHECK(what.find("sentence 1") != std::string::npos);
    CHECK(what.find("token 2") != std::string::npos);
  }
  Corpus longer = make_corpus({{{"a", "x"}}, {{"b", "y"}}});
  Corpus shorter = make_corpus({{{"a", "x"}}});
  CHECK_THROWS_AS(word_accuracy(longer, shorter), AlignmentError);
}

TEST_CASE("per-SES report: grouping, weights, accuracy") {
  // Two classes: identity (3 tokens, all correct) and strip-s (2 tokens, 1 correct).
  Pairs gold = {{{"red", "red"}, {"blue", "blue"}, {"cats", "cat"}},
                {{"dogs", "dog"}, {"x", "x"}}};
  Pairs pred = {{{"red", "red"}, {"blue", "blue"}, {"cats", "cat"}},
                {{"dogs", "WRONG"}, {"x", "x"}}};
  auto [g, p] = gold_pred(gold, pred);
  SesReport report = per_ses_report(g, p, false);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].rule == "↓0;d¦");
  CHECK(report.rows[0].count == 3);
  CHECK(report.rows[0].accuracy == 1.0);
  CHECK(report.rows[0].weight_percent == 60.0);
  CHECK(report.rows[1].rule == "↓0;d¦-");
  CHECK(report.rows[1].count == 2);
  CHECK(report.rows[1].accuracy == 0.5);
  CHECK(report.rows[1].examples.size() == 2);

  double weighted = 0.0;
  for (const auto& row : report.rows)
    weighted += static_cast<double>(row.count) * row.accuracy;
  CHECK(weighted / static_cast<double>(report.total) == word_accuracy(g, p));
}

TEST_CASE("per-SES weighted accuracy equals word accuracy (randomized)") {
  std::mt19937 rng(777);
  for (int i = 0; i < 200; ++i) {
    auto [g, p] = random_gold_pred(rng);
    SesReport report = per_ses_report(g, p, false);
    double weighted = 0.0, weight_sum = 0.0;
    for (const auto& row : report.rows) {
      weighted += static_cast<double>(row.count) * row.accuracy;
      weight_sum += row.weight_percent;
    }
    CHECK(std::abs(weighted / static_cast<double>(report.total) - word_accuracy(g, p)) <= 1e-12);
    CHECK(std::abs(weight_sum - 100.0) <= 1e-9);
  }
}

TEST_CASE("vocab split: edge cases and the weighted identity") {
  auto [g, p] = gold_pred({{{"a", "x"}, {"b", "y"}}}, {{{"a", "x"}, {"b", "?"}}});

  VocabSplit full = vocab_split_accuracy(g, p, {"a", "b"});
  CHECK(full.oov_count == 0);
  CHECK_FALSE(full.oov_accuracy.has_value());
  CHECK(full.iv_accuracy == word_accuracy(g, p));

  VocabSplit none = vocab_split_accuracy(g, p, {});
  CHECK(none.iv_count == 0);
  CHECK_FALSE(none.iv_accuracy.has_value());
  CHECK(none.oov_accuracy == word_accuracy(g, p));

  std::mt19937 rng(31337);
  for (int i = 0; i < 200; ++i) {
    auto [gr, pr] = random_gold_pred(rng);
    std::set<std::string> vocab = {"walks", "cats", "красивый", "."};
    VocabSplit split = vocab_split_accuracy(gr, pr, vocab);
    CHECK(split.iv_count + split.oov_count == gr.token_count());
    if (split.iv_accuracy && split.oov_accuracy) {
      double combined = (static_cast<double>(split.iv_count) * *split.iv_accuracy +
                         static_cast<double>(split.oov_count) * *split.oov_accuracy) /
                        static_cast<double>(gr.token_count());
      CHECK(std::abs(combined - word_accuracy(gr, pr)) <= 1e-12);
    }
  }
}

TEST_CASE("mcnemar: counts, statistic, p-values") {
  auto [g, p] = gold_pred({{{"a", "x"}}}, {{{"a", "x"}}});
  McNemarResult same = mcnemar(g, p, p);
  CHECK(same.b == 0);
  CHECK(same.c == 0);
  CHECK(same.p_value == 1.0);
  CHECK(same.statistic == 0.0);

  McNemarResult r = mcnemar_from_counts(5, 15, McNemarMethod::chi2_corrected);
  CHECK(r.statistic == 4.05);
  CHECK(std::abs(r.p_value - 0.0441) <= 0.001);

  // Exact two-sided binomial values, hand-computed: 2*P(X<=2 | n=10) = 112/1024.
  CHECK(mcnemar_from_counts(2, 8, McNemarMethod::exact).p_value == Catch::Approx(0.109375).epsilon(1e-12));
  CHECK(mcnemar_from_counts(0, 5, McNemarMethod::exact).p_value == Catch::Approx(0.0625).epsilon(1e-12));
  CHECK(mcnemar_from_counts(3, 3, McNemarMethod::exact).p_value == 1.0);

  // Default method switches on the discordant total.
  CHECK(default_mcnemar_method(5, 15) == McNemarMethod::exact);
  CHECK(default_mcnemar_method(10, 15) == McNemarMethod::chi2_corrected);
}

TEST_CASE("mcnemar: swap symmetry and monotonicity on a grid") {
  for (McNemarMethod method : {McNemarMethod::exact, McNemarMethod::chi2_corrected}) {
    for (std::size_t b = 0; b < 20; ++b)
      for (std::size_t c = 0; c < 20; ++c)
        CHECK(mcnemar_from_counts(b, c, method).p_value ==
              mcnemar_from_counts(c, b, method).p_value);
    // |b-c| grows with b+c fixed: p must not increase.
    for (std::size_t n : {10u, 20u, 25u, 36u}) {
      double prev = 2.0;
      for (std::size_t d = n % 2; d <= n; d += 2) {
        std::size_t b = (n + d) / 2, c = (n - d) / 2;
        double p = mcnemar_from_counts(b, c, method).p_value;
        CHECK(p <= prev + 1e-15);
        prev = p;
      }
    }
  }
}

TEST_CASE("evaluate_run aggregates and matches the component metrics") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "lemtag_eval_test";
  fs::create_directories(dir);
  Pairs gold = {{{"cats", "cat"}, {"red", "red"}}, {{"is", "be"}, {"Paris", "Paris"}}};
  Pairs pred = {{{"cats", "cat"}, {"red", "red"}}, {{"is", "was"}, {"Paris", "paris"}}};
  Pairs predb = {{{"cats", "cat"}, {"red", "red"}}, {{"is", "be"}, {"Paris", "paris"}}};
  auto [g, p] = gold_pred(gold, pred);
  Corpus pb = make_corpus(predb);

  auto write = [&](const char* name, const Corpus& c) {
    std::ofstream out(dir / name, std::ios::binary);
    write_conllu(c, out);
    return (dir / name).string();
  };
  std::string gold_path = write("gold.conllu", g);
  std::string pred_path = write("pred.conllu", p);
  std::string predb_path = write("predb.conllu", pb);

  EvalOptions options;
  options.compare_path = predb_path;
  options.train_vocab_path = gold_path;
  EvalReport report = evaluate_run(gold_path, pred_path, options);

  CHECK(report.word_accuracy == word_accuracy(g, p));
  CHECK(report.sentence_accuracy == sentence_accuracy(g, p));
  CHECK(report.token_count == 4);
  REQUIRE(report.vocab.has_value());
  CHECK(report.vocab->iv_count == 4);
  REQUIRE(report.mcnemar.has_value());
  CHECK(report.mcnemar->b == 0);
  CHECK(report.mcnemar->c == 1);

  nlohmann::json j = report_to_json(report);
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["word_accuracy"] == report.word_accuracy);
  CHECK(j["per_ses"].is_array());
  CHECK(j["iv_oov"]["oov_accuracy"].is_null());
  CHECK(j["mcnemar"]["method"] == "exact");
  // deterministic rendering
  CHECK(j.dump(2) == report_to_json(evaluate_run(gold_path, pred_path, options)).dump(2));

  std::string tsv = report_to_tsv(report);
  CHECK(tsv.find("word_accuracy\t0.5") != std::string::npos);
  CHECK(tsv.find("do nothing") != std::string::npos);

  CHECK_THROWS_AS(evaluate_run((dir / "missing.conllu").string(), pred_path, options), IoError);
  fs::remove_all(dir);
}

TEST_CASE("perfect predictions give a perfect report") {
  auto [g, p] = gold_pred({{{"cats", "cat"}, {"is", "be"}}}, {{{"cats", "cat"}, {"is", "be"}}});
  EvalReport report = evaluate_corpora(g, p, EvalOptions{}, nullptr, nullptr);
  CHECK(report.word_accuracy == 1.0);
  CHECK(report.sentence_accuracy == 1.0);
  for (const auto& row : report.per_ses.rows) CHECK(row.accuracy == 1.0);
}
