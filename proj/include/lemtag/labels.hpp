#pragma once

// Morphological label schemes of graded granularity, from the uninformative
// "no-tag" control up to UPOS plus every feature in the bundle.

#include <algorithm>
#include <map>
#include <string>
#include <string_view>

#include "lemtag/conllu.hpp"
#include "lemtag/error.hpp"

namespace lemtag {

enum class LabelScheme {
  kNoTag,          // constant "no-tag"
  kUpos,           // POS only
  kUcg,            // POS + Case + Gender
  kUcn,            // POS + Case + Number
  kUcgn,           // POS + Case + Gender + Number
  kUallo,          // POS + Case + Gender + Number + rest, rest sorted
  kUallUnordered,  // same, rest in corpus order
};

inline const char* to_string(LabelScheme s) {
  switch (s) {
    case LabelScheme::kNoTag: return "no-tag";
    case LabelScheme::kUpos: return "upos";
    case LabelScheme::kUcg: return "ucg";
    case LabelScheme::kUcn: return "ucn";
    case LabelScheme::kUcgn: return "ucgn";
    case LabelScheme::kUallo: return "uallo";
    case LabelScheme::kUallUnordered: return "uall-unordered";
  }
  return "?";
}

inline LabelScheme scheme_from_string(std::string_view s) {
  if (s == "no-tag" || s == "notag") return LabelScheme::kNoTag;
  if (s == "upos") return LabelScheme::kUpos;
  if (s == "ucg") return LabelScheme::kUcg;
  if (s == "ucn") return LabelScheme::kUcn;
  if (s == "ucgn") return LabelScheme::kUcgn;
  if (s == "uallo") return LabelScheme::kUallo;
  if (s == "uall-unordered" || s == "uall_unordered") return LabelScheme::kUallUnordered;
  throw ConfigError("unknown label scheme: " + std::string(s));
}

/// Where the POS component of a label comes from: the leading tag of the
/// UniMorph bundle (default) or the CoNLL-U UPOS column.
enum class PosSource { bundle, column4 };

inline const char* to_string(PosSource s) {
  return s == PosSource::bundle ? "bundle" : "column4";
}

inline PosSource pos_source_from_string(std::string_view s) {
  if (s == "bundle") return PosSource::bundle;
  if (s == "column4") return PosSource::column4;
  throw ConfigError("unknown POS source: " + std::string(s));
}

namespace label_detail {

inline bool uses_case(LabelScheme s) { return s != LabelScheme::kUpos; }
inline bool uses_gender(LabelScheme s) {
  return s == LabelScheme::kUcg || s == LabelScheme::kUcgn || s == LabelScheme::kUallo ||
         s == LabelScheme::kUallUnordered;
}
inline bool uses_number(LabelScheme s) {
  return s == LabelScheme::kUcn || s == LabelScheme::kUcgn || s == LabelScheme::kUallo ||
         s == LabelScheme::kUallUnordered;
}
inline bool uses_rest(LabelScheme s) {
  return s == LabelScheme::kUallo || s == LabelScheme::kUallUnordered;
}

}  // namespace label_detail

/// Concatenates the scheme's components without separators ("NNOMMASC").
/// An empty result renders as "_"; the no-tag scheme is constant.
inline std::string compose_label(const FeatureBundle& bundle, LabelScheme scheme) {
  if (scheme == LabelScheme::kNoTag) return "no-tag";
  std::string out;
  if (bundle.pos) out += *bundle.pos;
  if (label_detail::uses_case(scheme) && bundle.case_) out += *bundle.case_;
  if (label_detail::uses_gender(scheme) && bundle.gender) out += *bundle.gender;
  if (label_detail::uses_number(scheme) && bundle.number) out += *bundle.number;
  if (label_detail::uses_rest(scheme) && !bundle.rest.empty()) {
    if (scheme == LabelScheme::kUallo) {
      auto sorted = bundle.rest;
      std::sort(sorted.begin(), sorted.end());
      for (const auto& tag : sorted) out += tag;
    } else {
      for (const auto& tag : bundle.rest) out += tag;
    }
  }
  return out.empty() ? "_" : out;
}

inline std::string compose_label(const Token& token, LabelScheme scheme,
                                 PosSource pos_source = PosSource::bundle) {
  if (pos_source == PosSource::bundle) return compose_label(token.feats, scheme);
  FeatureBundle adjusted = token.feats;
  if (!token.upos().empty() && token.upos() != "_")
    adjusted.pos = token.upos();
  else
    adjusted.pos.reset();
  return compose_label(adjusted, scheme);
}

struct SchemeInventory {
  std::map<std::string, std::size_t> counts;  // label -> frequency

  std::size_t distinct() const { return counts.size(); }
};

inline SchemeInventory scheme_inventory(const Corpus& corpus, LabelScheme scheme,
                                        PosSource pos_source = PosSource::bundle) {
  SchemeInventory inv;
  for (const auto& sentence : corpus.sentences)
    for (const auto& tok : sentence.tokens)
      ++inv.counts[compose_label(tok, scheme, pos_source)];
  return inv;
}

}  // namespace lemtag
