#include <catch2/catch_amalgamated.hpp>

#include "lemtag/stats.hpp"
#include "test_support.hpp"

using namespace lemtag;
using testsupport::load_fixture;

TEST_CASE("corpus_stats: empty corpus is all zeros") {
  StatsRow row = corpus_stats(Corpus{}, false);
  CHECK(row.tokens == 0);
  CHECK(row.upos == 0);
  CHECK(row.ucgn == 0);
  CHECK(row.uallo == 0);
  CHECK(row.uall_unordered == 0);
  CHECK(row.ses == 0);
  CHECK(row.skipped_lemmas == 0);
}

TEST_CASE("corpus_stats: hand-counted fixture") {
  Corpus corpus = load_fixture("mixed.conllu");
  StatsRow row = corpus_stats(corpus, false);
  CHECK(row.tokens == 10);
  CHECK(row.upos == 5);   // DET, N, V, _, PART
  CHECK(row.ucg == 8);
  CHECK(row.ucn == 7);
  CHECK(row.ucgn == 9);
  CHECK(row.uallo == 9);
  CHECK(row.uall_unordered == 9);
  CHECK(row.ses == 6);
  CHECK(row.skipped_lemmas == 0);
}

TEST_CASE("corpus_stats: row-internal monotonicity and reproducibility") {
  for (const auto& path : testsupport::fixture_corpora_paths()) {
    std::ifstream in(path, std::ios::binary);
    Corpus corpus = parse_conllu(in, {});
    StatsRow row = corpus_stats(corpus, false);
    CHECK(row.upos <= row.ucgn);
    CHECK(row.ucgn <= row.uallo);
    CHECK(row.uallo <= row.uall_unordered);
    StatsRow again = corpus_stats(corpus, false);
    CHECK(stats_to_tsv(row, false) == stats_to_tsv(again, false));
  }
}

TEST_CASE("corpus_stats: both copy modes and skipped lemmas") {
  Corpus corpus = load_fixture("underscore.conllu");
  StatsRow row = corpus_stats(corpus, false, PosSource::bundle, true);
  CHECK(row.tokens == 2);
  CHECK(row.skipped_lemmas == 1);
  REQUIRE(row.ses_other_copy_mode.has_value());

  std::string tsv = stats_to_tsv(row, false);
  CHECK(tsv.find("ses_copy") != std::string::npos);
  nlohmann::json j = stats_to_json(row, false);
  CHECK(j["ses_nocopy"] == row.ses);
  CHECK(j["tokens"] == 2);
}
