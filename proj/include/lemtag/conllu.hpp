#pragma once

// CoNLL-U reading and writing for treebanks whose FEATS column carries either
// ";"-separated UniMorph bundles or "|"-separated UD Key=Value pairs.

#include <array>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "lemtag/error.hpp"
#include "lemtag/unicode.hpp"

namespace lemtag {

enum class FeatsFormat { unimorph, ud };

inline const char* to_string(FeatsFormat f) {
  return f == FeatsFormat::unimorph ? "unimorph" : "ud";
}

inline FeatsFormat feats_format_from_string(std::string_view s) {
  if (s == "unimorph") return FeatsFormat::unimorph;
  if (s == "ud") return FeatsFormat::ud;
  throw ConfigError("unknown feats format: " + std::string(s));
}

/// Morphological tag bundle with the dimensions the label schemes care about.
/// The leading tag of a UniMorph bundle is the part of speech; Case, Gender
/// and Number are pulled into slots via a fixed tag table and everything else
/// keeps corpus order in `rest`.
struct FeatureBundle {
  std::optional<std::string> pos;
  std::optional<std::string> case_;
  std::optional<std::string> gender;
  std::optional<std::string> number;
  std::vector<std::string> rest;
  std::vector<std::string> original_order;

  bool empty() const {
    return !pos && !case_ && !gender && !number && rest.empty();
  }
};

namespace feats_detail {

inline const std::unordered_set<std::string>& case_tags() {
  // UniMorph case dimension values, plus LOC which converted UD data uses.
  static const std::unordered_set<std::string> tags = {
      "ABL",  "ABS",  "ACC",   "ALL",  "ANTE", "APPRX", "APUD", "AT",   "AVR",
      "BEN",  "BYWAY", "CIRC", "COM",  "COMPV", "DAT",  "EQTV", "ERG",  "ESS",
      "FRML", "GEN",  "IN",    "INS",  "INTER", "LOC",  "NOM",  "NOMS", "ON",
      "ONHR", "ONVR", "POST",  "PRIV", "PROL",  "PROPR", "PROX", "PRP", "PRT",
      "REF",  "REL",  "REM",   "SUB",  "TERM",  "TRANS", "VERS", "VOC"};
  return tags;
}

inline const std::unordered_set<std::string>& gender_tags() {
  static const std::unordered_set<std::string> tags = {"MASC", "FEM", "NEUT"};
  return tags;
}

inline const std::unordered_set<std::string>& number_tags() {
  static const std::unordered_set<std::string> tags = {
      "SG", "PL", "DU", "TRI", "PAUC", "GRPL", "GRSG", "INVN"};
  return tags;
}

inline void place_tag(FeatureBundle& b, const std::string& tag) {
  if (case_tags().count(tag) && !b.case_) {
    b.case_ = tag;
  } else if (gender_tags().count(tag) && !b.gender) {
    b.gender = tag;
  } else if (number_tags().count(tag) && !b.number) {
    b.number = tag;
  } else {
    b.rest.push_back(tag);
  }
  b.original_order.push_back(tag);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace feats_detail

/// Builds a bundle from a UniMorph feats string ("N;NOM;MASC"). The first tag
/// is the POS; duplicates of an already filled dimension fall into rest.
inline FeatureBundle parse_unimorph_feats(std::string_view feats) {
  FeatureBundle b;
  if (feats.empty() || feats == "_") return b;
  bool first = true;
  for (std::string_view part : feats_detail::split(feats, ';')) {
    if (part.empty()) continue;
    std::string tag(part);
    if (first) {
      b.pos = tag;
      b.original_order.push_back(tag);
      first = false;
    } else {
      feats_detail::place_tag(b, tag);
    }
  }
  return b;
}

/// Builds a bundle from UD feats ("Case=Nom|Number=Sing") plus the UPOS
/// column. Slot values keep the UD value text; unrecognized pairs go to rest
/// verbatim.
inline FeatureBundle parse_ud_feats(std::string_view feats, std::string_view upos) {
  FeatureBundle b;
  if (!upos.empty() && upos != "_") {
    b.pos = std::string(upos);
    b.original_order.push_back(*b.pos);
  }
  if (feats.empty() || feats == "_") return b;
  for (std::string_view part : feats_detail::split(feats, '|')) {
    if (part.empty()) continue;
    std::size_t eq = part.find('=');
    std::string_view key = eq == std::string_view::npos ? std::string_view() : part.substr(0, eq);
    std::string value(eq == std::string_view::npos ? part : part.substr(eq + 1));
    if (key == "Case" && !b.case_) {
      b.case_ = value;
      b.original_order.push_back(value);
    } else if (key == "Gender" && !b.gender) {
      b.gender = value;
      b.original_order.push_back(value);
    } else if (key == "Number" && !b.number) {
      b.number = value;
      b.original_order.push_back(value);
    } else {
      b.rest.emplace_back(part);
      b.original_order.emplace_back(part);
    }
  }
  return b;
}

/// One surface token: the ten verbatim CoNLL-U columns plus the parsed bundle.
struct Token {
  std::array<std::string, 10> cols;
  FeatureBundle feats;

  const std::string& id() const { return cols[0]; }
  const std::string& form() const { return cols[1]; }
  const std::string& lemma() const { return cols[2]; }
  const std::string& upos() const { return cols[3]; }
  const std::string& raw_feats() const { return cols[5]; }
  void set_lemma(std::string lemma) { cols[2] = std::move(lemma); }
};

struct Sentence {
  std::vector<std::string> comments;
  std::vector<Token> tokens;
};

struct Corpus {
  std::vector<Sentence> sentences;
  std::string source;

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.tokens.size();
    return n;
  }
};

struct ParseOptions {
  FeatsFormat feats_format = FeatsFormat::unimorph;
  bool nfc_normalize = false;  // off by default: keep corpus bytes untouched
  std::string source;
};

namespace conllu_detail {

// "1-2" multiword ranges and "1.1" empty nodes carry no lemma of their own.
inline bool is_skippable_id(std::string_view id) {
  return id.find('-') != std::string_view::npos ||
         id.find('.') != std::string_view::npos;
}

}  // namespace conllu_detail

inline Corpus parse_conllu(std::istream& in, const ParseOptions& opts = {}) {
  Corpus corpus;
  corpus.source = opts.source;
  Sentence current;
  std::string line;
  std::size_t line_no = 0;
  bool first_line = true;

  auto flush = [&] {
    if (!current.tokens.empty() || !current.comments.empty()) {
      if (current.tokens.empty())
        throw ParseError("comment block without token lines", line_no);
      corpus.sentences.push_back(std::move(current));
      current = Sentence{};
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first_line) {
      if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      first_line = false;
    }
    if (line.empty()) {
      flush();
      continue;
    }
    try {
      (void)uni::decode_utf8(line);
    } catch (const Utf8Error& e) {
      throw Utf8Error(std::string(e.what()) + " (line " + std::to_string(line_no) + ")");
    }
    if (opts.nfc_normalize) line = uni::nfc_utf8(line);
    if (line[0] == '#') {
      current.comments.push_back(line);
      continue;
    }
    auto fields = feats_detail::split(line, '\t');
    if (fields.size() != 10)
      throw ParseError("expected 10 tab-separated columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    if (conllu_detail::is_skippable_id(fields[0])) continue;
    Token tok;
    for (std::size_t i = 0; i < 10; ++i) tok.cols[i] = std::string(fields[i]);
    if (tok.form().empty()) throw ParseError("empty FORM column", line_no);
    if (tok.lemma().empty()) throw ParseError("empty LEMMA column", line_no);
    tok.feats = opts.feats_format == FeatsFormat::unimorph
                    ? parse_unimorph_feats(tok.raw_feats())
                    : parse_ud_feats(tok.raw_feats(), tok.upos());
    current.tokens.push_back(std::move(tok));
  }
  flush();
  return corpus;
}

inline void write_conllu(const Corpus& corpus, std::ostream& out) {
  for (const auto& sentence : corpus.sentences) {
    for (const auto& comment : sentence.comments) out << comment << '\n';
    for (const auto& tok : sentence.tokens) {
      for (std::size_t i = 0; i < 10; ++i) {
        if (i) out << '\t';
        out << tok.cols[i];
      }
      out << '\n';
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing CoNLL-U output");
}

/// Distinct token forms, case-sensitive.
inline std::set<std::string> vocabulary(const Corpus& corpus) {
  std::set<std::string> vocab;
  for (const auto& s : corpus.sentences)
    for (const auto& t : s.tokens) vocab.insert(t.form());
  return vocab;
}

}  // namespace lemtag
