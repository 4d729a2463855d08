#pragma once

// Corpus-complexity summary: token count, distinct labels per scheme and the
// number of induced SES lemma classes.

#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "lemtag/conllu.hpp"
#include "lemtag/labels.hpp"
#include "lemtag/ses.hpp"

namespace lemtag {

struct StatsRow {
  std::string corpus;
  std::size_t tokens = 0;
  std::size_t upos = 0;
  std::size_t ucg = 0;
  std::size_t ucn = 0;
  std::size_t ucgn = 0;
  std::size_t uallo = 0;
  std::size_t uall_unordered = 0;
  std::size_t ses = 0;
  std::optional<std::size_t> ses_other_copy_mode;  // with --both-copy-modes
  std::size_t skipped_lemmas = 0;
};

inline StatsRow corpus_stats(const Corpus& corpus, bool allow_copy,
                             PosSource pos_source = PosSource::bundle,
                             bool both_copy_modes = false) {
  StatsRow row;
  row.corpus = corpus.source;
  row.tokens = corpus.token_count();
  row.upos = scheme_inventory(corpus, LabelScheme::kUpos, pos_source).distinct();
  row.ucg = scheme_inventory(corpus, LabelScheme::kUcg, pos_source).distinct();
  row.ucn = scheme_inventory(corpus, LabelScheme::kUcn, pos_source).distinct();
  row.ucgn = scheme_inventory(corpus, LabelScheme::kUcgn, pos_source).distinct();
  row.uallo = scheme_inventory(corpus, LabelScheme::kUallo, pos_source).distinct();
  row.uall_unordered =
      scheme_inventory(corpus, LabelScheme::kUallUnordered, pos_source).distinct();
  ClassInventory inv = collect_classes(corpus, allow_copy);
  row.ses = inv.classes.size();
  row.skipped_lemmas = inv.skipped;
  if (both_copy_modes)
    row.ses_other_copy_mode = collect_classes(corpus, !allow_copy).classes.size();
  return row;
}

inline std::string stats_to_tsv(const StatsRow& row, bool allow_copy) {
  std::ostringstream out;
  out << "corpus\ttokens\tupos\tucg\tucn\tucgn\tuallo\tuall_unordered\tses";
  if (row.ses_other_copy_mode) out << "\tses_copy\tses_nocopy";
  out << "\tskipped_lemmas\n";
  out << row.corpus << '\t' << row.tokens << '\t' << row.upos << '\t' << row.ucg << '\t'
      << row.ucn << '\t' << row.ucgn << '\t' << row.uallo << '\t' << row.uall_unordered << '\t'
      << row.ses;
  if (row.ses_other_copy_mode) {
    std::size_t with_copy = allow_copy ? row.ses : *row.ses_other_copy_mode;
    std::size_t without = allow_copy ? *row.ses_other_copy_mode : row.ses;
    out << '\t' << with_copy << '\t' << without;
  }
  out << '\t' << row.skipped_lemmas << '\n';
  return out.str();
}

inline nlohmann::json stats_to_json(const StatsRow& row, bool allow_copy) {
  nlohmann::json j;
  j["corpus"] = row.corpus;
  j["tokens"] = row.tokens;
  j["upos"] = row.upos;
  j["ucg"] = row.ucg;
  j["ucn"] = row.ucn;
  j["ucgn"] = row.ucgn;
  j["uallo"] = row.uallo;
  j["uall_unordered"] = row.uall_unordered;
  j["ses"] = row.ses;
  j["allow_copy"] = allow_copy;
  if (row.ses_other_copy_mode) {
    j["ses_copy"] = allow_copy ? row.ses : *row.ses_other_copy_mode;
    j["ses_nocopy"] = allow_copy ? *row.ses_other_copy_mode : row.ses;
  }
  j["skipped_lemmas"] = row.skipped_lemmas;
  return j;
}

}  // namespace lemtag
