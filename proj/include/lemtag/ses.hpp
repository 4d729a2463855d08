#pragma once

// Shortest-edit-script lemma rules. A rule is the pair of a casing script
// (which character runs of the lemma are uppercase) and an edit body that
// turns the lowercased form into the lowercased lemma, either as an absolute
// replacement or as prefix/suffix edit scripts around the longest common
// substring. Rendered as "<casing>;<body>", e.g. "↓0;d¦-" (drop last char),
// "↑0¦↓1;d¦" (first char up, no edits), "↓0;abe" (always the lemma "be").

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lemtag/conllu.hpp"
#include "lemtag/error.hpp"
#include "lemtag/unicode.hpp"

namespace lemtag {

struct EditOp {
  enum Kind : std::uint8_t { kDelete, kInsert, kCopy };
  Kind kind = kDelete;
  char32_t ch = 0;  // payload for kInsert

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

using EditScript = std::vector<EditOp>;

struct CasingSegment {
  bool up = false;
  int index = 0;  // run start; negative counts from the lemma end

  friend bool operator==(const CasingSegment&, const CasingSegment&) = default;
};

struct CasingScript {
  std::vector<CasingSegment> segments;

  friend bool operator==(const CasingScript&, const CasingScript&) = default;
};

struct LemmaRule {
  CasingScript casing;
  bool absolute = false;
  std::u32string absolute_text;  // lowercased lemma, when absolute
  EditScript prefix, suffix;     // around the common substring, otherwise

  friend bool operator==(const LemmaRule&, const LemmaRule&) = default;
};

enum class ApplyMode { strict, lenient };

/// Minimum edit script from source to target: kDelete consumes one source
/// char, kInsert emits one target char, kCopy (only when allowed) moves one
/// matching char across. The cell update order (copy, then delete, then
/// insert, each overwriting when the predecessor cost beats the current cell)
/// pins the tie-breaking so that equal-cost regions come out as deletes
/// followed by inserts: ("ar","b") -> "--+b", never "+b--".
inline EditScript min_edit_script(std::u32string_view source, std::u32string_view target,
                                  bool allow_copy) {
  const std::size_t m = source.size(), n = target.size();
  const int sentinel = static_cast<int>(m + n + 1);
  struct Cell {
    int cost;
    std::int8_t op;  // -1 none, 0 copy, 1 delete, 2 insert
  };
  std::vector<Cell> cells((m + 1) * (n + 1), Cell{sentinel, -1});
  auto at = [&](std::size_t i, std::size_t j) -> Cell& { return cells[i * (n + 1) + j]; };
  at(0, 0) = {0, -1};
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      if (i == 0 && j == 0) continue;
      Cell& cur = at(i, j);
      if (allow_copy && i && j && source[i - 1] == target[j - 1] &&
          at(i - 1, j - 1).cost < cur.cost)
        cur = {at(i - 1, j - 1).cost, 0};
      if (i && at(i - 1, j).cost < cur.cost) cur = {at(i - 1, j).cost + 1, 1};
      if (j && at(i, j - 1).cost < cur.cost) cur = {at(i, j - 1).cost + 1, 2};
    }
  }
  EditScript script;
  std::size_t i = m, j = n;
  while (i || j) {
    switch (at(i, j).op) {
      case 0:
        script.push_back({EditOp::kCopy, 0});
        --i, --j;
        break;
      case 1:
        script.push_back({EditOp::kDelete, 0});
        --i;
        break;
      default:
        script.push_back({EditOp::kInsert, target[j - 1]});
        --j;
        break;
    }
  }
  std::reverse(script.begin(), script.end());
  return script;
}

/// One segment per maximal run of same-cased characters; run starts in the
/// first half of the lemma are stored as-is, later ones from the end.
inline CasingScript casing_script(std::u32string_view lemma) {
  CasingScript cs;
  const int n = static_cast<int>(lemma.size());
  bool prev = false;
  for (int i = 0; i < n; ++i) {
    bool up = uni::is_upper_char(lemma[i]);
    if (i == 0 || up != prev) {
      int index = (i <= n / 2) ? i : i - n;
      cs.segments.push_back({up, index});
    }
    prev = up;
  }
  return cs;
}

namespace ses_detail {

struct CommonSubstring {
  std::size_t len = 0, form_start = 0, lemma_start = 0;
};

// Longest common substring of the lowercased texts; ties go to the smallest
// lemma start, then the smallest form start.
inline CommonSubstring longest_common_substring(std::u32string_view form,
                                                std::u32string_view lemma) {
  CommonSubstring best;
  for (std::size_t l = 0; l < lemma.size(); ++l) {
    for (std::size_t f = 0; f < form.size(); ++f) {
      std::size_t k = 0;
      while (f + k < form.size() && l + k < lemma.size() && form[f + k] == lemma[l + k]) ++k;
      if (k > best.len) best = {k, f, l};
    }
  }
  return best;
}

inline std::size_t source_width(const EditScript& script) {
  std::size_t w = 0;
  for (const EditOp& op : script)
    if (op.kind != EditOp::kInsert) ++w;
  return w;
}

inline void replay(const EditScript& script, std::u32string_view form, std::size_t offset,
                   std::u32string& out) {
  for (const EditOp& op : script) {
    switch (op.kind) {
      case EditOp::kDelete:
        ++offset;
        break;
      case EditOp::kCopy:
        out.push_back(form[offset++]);
        break;
      case EditOp::kInsert:
        out.push_back(op.ch);
        break;
    }
  }
}

}  // namespace ses_detail

inline LemmaRule encode_rule(std::u32string_view form, std::u32string_view lemma,
                             bool allow_copy) {
  if (form.empty() || lemma.empty())
    throw DataError("encode_rule requires non-empty form and lemma");
  LemmaRule rule;
  rule.casing = casing_script(lemma);
  std::u32string f = uni::lower_safe(form), l = uni::lower_safe(lemma);
  auto match = ses_detail::longest_common_substring(f, l);
  if (match.len == 0) {
    rule.absolute = true;
    rule.absolute_text = l;
  } else {
    rule.prefix = min_edit_script(std::u32string_view(f).substr(0, match.form_start),
                                  std::u32string_view(l).substr(0, match.lemma_start),
                                  allow_copy);
    rule.suffix = min_edit_script(std::u32string_view(f).substr(match.form_start + match.len),
                                  std::u32string_view(l).substr(match.lemma_start + match.len),
                                  allow_copy);
  }
  return rule;
}

inline std::string render_rule(const LemmaRule& rule);

inline std::string apply_rule(const LemmaRule& rule, std::string_view form_utf8,
                              ApplyMode mode) {
  if (form_utf8.empty()) throw DataError("apply_rule requires a non-empty form");
  std::u32string form = uni::decode_utf8(form_utf8);
  std::u32string out;
  if (rule.absolute) {
    out = rule.absolute_text;
  } else {
    std::u32string f = uni::lower_safe(std::u32string_view(form));
    std::size_t pw = ses_detail::source_width(rule.prefix);
    std::size_t sw = ses_detail::source_width(rule.suffix);
    if (pw + sw > f.size()) {
      if (mode == ApplyMode::strict)
        throw ApplyError("rule \"" + render_rule(rule) + "\" does not fit form \"" +
                         std::string(form_utf8) + "\"");
      out = f;  // lenient fallback: lowercased form, casing still applied
    } else {
      ses_detail::replay(rule.prefix, f, 0, out);
      out.append(f, pw, f.size() - pw - sw);
      ses_detail::replay(rule.suffix, f, f.size() - sw, out);
    }
  }
  for (const CasingSegment& seg : rule.casing.segments) {
    if (!seg.up && seg.index == 0) continue;  // text is already lowercase
    long start = seg.index < 0 ? static_cast<long>(out.size()) + seg.index : seg.index;
    start = std::clamp(start, 0L, static_cast<long>(out.size()));
    for (std::size_t k = static_cast<std::size_t>(start); k < out.size(); ++k)
      out[k] = seg.up ? uni::upper_safe(out[k]) : uni::lower_safe(out[k]);
  }
  return uni::encode_utf8(out);
}

inline std::string encode_rule_text(std::string_view form, std::string_view lemma,
                                    bool allow_copy);

// --- rendering and parsing ---------------------------------------------------

namespace ses_detail {

constexpr char32_t kUpArrow = U'↑';    // ↑
constexpr char32_t kDownArrow = U'↓';  // ↓
constexpr char32_t kBar = U'¦';        // ¦
constexpr char32_t kCopyArrow = U'→';  // →

inline void render_ops(const EditScript& script, std::string& out) {
  for (const EditOp& op : script) {
    switch (op.kind) {
      case EditOp::kDelete:
        out.push_back('-');
        break;
      case EditOp::kCopy:
        uni::append_utf8(out, kCopyArrow);
        break;
      case EditOp::kInsert:
        out.push_back('+');
        uni::append_utf8(out, op.ch);
        break;
    }
  }
}

}  // namespace ses_detail

inline std::string render_rule(const LemmaRule& rule) {
  std::string out;
  for (std::size_t i = 0; i < rule.casing.segments.size(); ++i) {
    const CasingSegment& seg = rule.casing.segments[i];
    if (i) uni::append_utf8(out, ses_detail::kBar);
    uni::append_utf8(out, seg.up ? ses_detail::kUpArrow : ses_detail::kDownArrow);
    out += std::to_string(seg.index);
  }
  out.push_back(';');
  if (rule.absolute) {
    out.push_back('a');
    out += uni::encode_utf8(rule.absolute_text);
  } else {
    out.push_back('d');
    ses_detail::render_ops(rule.prefix, out);
    uni::append_utf8(out, ses_detail::kBar);
    ses_detail::render_ops(rule.suffix, out);
  }
  return out;
}

/// Parses a rendered rule. With `accept_trailing_plus` (the default) a lone
/// "+" at the very end of a diff body is ignored; some rule tables in the wild
/// carry that variant. It is never produced on render.
inline LemmaRule parse_rule(std::string_view text, bool accept_trailing_plus = true) {
  std::u32string s = uni::decode_utf8(text);
  std::size_t semi = s.find(U';');
  if (semi == std::u32string::npos)
    throw DataError("lemma rule is missing the ';' separator: " + std::string(text));

  LemmaRule rule;
  std::size_t i = 0;
  while (i < semi) {
    CasingSegment seg;
    if (s[i] == ses_detail::kUpArrow) {
      seg.up = true;
    } else if (s[i] == ses_detail::kDownArrow) {
      seg.up = false;
    } else {
      throw DataError("bad casing direction in lemma rule: " + std::string(text));
    }
    ++i;
    bool negative = false;
    if (i < semi && s[i] == U'-') {
      negative = true;
      ++i;
    }
    if (i >= semi || s[i] < U'0' || s[i] > U'9')
      throw DataError("bad casing index in lemma rule: " + std::string(text));
    long value = 0;
    while (i < semi && s[i] >= U'0' && s[i] <= U'9') {
      value = value * 10 + (s[i] - U'0');
      ++i;
    }
    seg.index = static_cast<int>(negative ? -value : value);
    rule.casing.segments.push_back(seg);
    if (i < semi) {
      if (s[i] != ses_detail::kBar)
        throw DataError("bad casing segment separator in lemma rule: " + std::string(text));
      ++i;
      if (i == semi)
        throw DataError("dangling casing separator in lemma rule: " + std::string(text));
    }
  }

  std::size_t b = semi + 1;
  if (b >= s.size())
    throw DataError("lemma rule has an empty body: " + std::string(text));
  if (s[b] == U'a') {
    rule.absolute = true;
    rule.absolute_text.assign(s, b + 1);
    return rule;
  }
  if (s[b] != U'd')
    throw DataError("unknown lemma rule body tag: " + std::string(text));
  ++b;
  EditScript* target = &rule.prefix;
  bool seen_separator = false;
  while (b < s.size()) {
    char32_t c = s[b];
    if (c == ses_detail::kBar) {
      if (seen_separator)
        throw DataError("duplicate prefix/suffix separator in lemma rule: " +
                        std::string(text));
      seen_separator = true;
      target = &rule.suffix;
      ++b;
    } else if (c == U'-') {
      target->push_back({EditOp::kDelete, 0});
      ++b;
    } else if (c == ses_detail::kCopyArrow) {
      target->push_back({EditOp::kCopy, 0});
      ++b;
    } else if (c == U'+') {
      if (b + 1 < s.size()) {
        target->push_back({EditOp::kInsert, s[b + 1]});
        b += 2;
      } else if (accept_trailing_plus) {
        ++b;  // tolerated variant: terminal '+' with no payload
      } else {
        throw DataError("dangling '+' in lemma rule: " + std::string(text));
      }
    } else {
      throw DataError("stray edit op in lemma rule: " + std::string(text));
    }
  }
  if (!seen_separator)
    throw DataError("diff body without prefix/suffix separator: " + std::string(text));
  return rule;
}

inline std::string encode_rule_text(std::string_view form, std::string_view lemma,
                                    bool allow_copy) {
  return render_rule(encode_rule(uni::decode_utf8(form), uni::decode_utf8(lemma), allow_copy));
}

inline std::string apply_rule(std::string_view rule_text, std::string_view form,
                              ApplyMode mode) {
  return apply_rule(parse_rule(rule_text), form, mode);
}

// --- class inventories -------------------------------------------------------

struct LemmaClass {
  std::string rule;
  std::size_t count = 0;
  std::vector<std::pair<std::string, std::string>> examples;  // up to 3 (form, lemma)
};

struct ClassInventory {
  std::vector<LemmaClass> classes;  // by descending count, then rule text
  std::size_t total = 0;            // encoded tokens
  std::size_t skipped = 0;          // tokens with lemma "_"
};

inline ClassInventory collect_classes(const Corpus& corpus, bool allow_copy) {
  std::map<std::string, LemmaClass> by_rule;
  ClassInventory inv;
  for (const auto& sentence : corpus.sentences) {
    for (const auto& tok : sentence.tokens) {
      if (tok.lemma() == "_") {
        ++inv.skipped;
        continue;
      }
      std::string rule = encode_rule_text(tok.form(), tok.lemma(), allow_copy);
      LemmaClass& cls = by_rule[rule];
      if (cls.count == 0) cls.rule = rule;
      ++cls.count;
      ++inv.total;
      auto pair = std::make_pair(tok.form(), tok.lemma());
      if (cls.examples.size() < 3 &&
          std::find(cls.examples.begin(), cls.examples.end(), pair) == cls.examples.end())
        cls.examples.push_back(std::move(pair));
    }
  }
  inv.classes.reserve(by_rule.size());
  for (auto& [rule, cls] : by_rule) inv.classes.push_back(std::move(cls));
  std::sort(inv.classes.begin(), inv.classes.end(), [](const LemmaClass& a, const LemmaClass& b) {
    return a.count != b.count ? a.count > b.count : a.rule < b.rule;
  });
  return inv;
}

// --- human-readable summaries -------------------------------------------------

/// Short description of the casing half, in the style of SES summary tables.
inline std::string describe_casing(const LemmaRule& rule) {
  const auto& segs = rule.casing.segments;
  if (segs.size() == 1 && !segs[0].up) return "all low";
  if (segs.size() == 1 && segs[0].up) return "all up";
  if (segs.size() == 2 && segs[0].up && segs[0].index == 0 && !segs[1].up &&
      segs[1].index == 1)
    return "1st up";
  std::string out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (i) out += "; ";
    out += segs[i].up ? "up from " : "low from ";
    out += std::to_string(segs[i].index);
  }
  return out;
}

namespace ses_detail {

inline bool only_deletes(const EditScript& s) {
  return std::all_of(s.begin(), s.end(),
                     [](const EditOp& op) { return op.kind == EditOp::kDelete; });
}

inline std::string describe_half(const EditScript& script, bool is_suffix) {
  if (script.empty()) return "";
  std::size_t dels = 0;
  std::string inserted;
  bool plain = true;  // deletes followed by inserts only
  bool seen_insert = false;
  for (const EditOp& op : script) {
    if (op.kind == EditOp::kDelete) {
      if (seen_insert) plain = false;
      ++dels;
    } else if (op.kind == EditOp::kInsert) {
      seen_insert = true;
      uni::append_utf8(inserted, op.ch);
    } else {
      plain = false;
    }
  }
  const char* end = is_suffix ? "last" : "first";
  if (!plain) return std::string("edit ") + end + " part";
  std::string out;
  if (dels) {
    out = "del " + (dels == 1 ? std::string(end) + " ch"
                              : std::to_string(dels) + " " + end + " ch");
  }
  if (!inserted.empty()) {
    if (!out.empty()) out += ", ";
    out += "add " + inserted + (is_suffix ? "" : " at start");
  }
  return out;
}

}  // namespace ses_detail

/// Short description of the edit half ("do nothing", "del last ch", ...).
inline std::string describe_edits(const LemmaRule& rule) {
  if (rule.absolute) return "ignore form, use " + uni::encode_utf8(rule.absolute_text);
  std::string pre = ses_detail::describe_half(rule.prefix, false);
  std::string suf = ses_detail::describe_half(rule.suffix, true);
  if (pre.empty() && suf.empty()) return "do nothing";
  if (pre.empty()) return suf;
  if (suf.empty()) return pre;
  return pre + "; " + suf;
}

}  // namespace lemtag
