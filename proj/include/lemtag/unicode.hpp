#pragma once

// Code-point level text utilities: UTF-8 transcoding, simple per-code-point
// case mappings and NFC normalization. No locale dependence anywhere; the
// tables are frozen in unicode_tables.inc.

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>

#include "lemtag/error.hpp"

namespace lemtag::uni {

struct CasePair {
  char32_t cp;
  char32_t mapped;
};
struct CombiningClass {
  char32_t cp;
  std::uint8_t ccc;
};
struct DecompEntry {
  char32_t cp;
  std::uint16_t offset;
  std::uint8_t len;
};
struct ComposeEntry {
  char32_t first;
  char32_t second;
  char32_t composed;
};

#include "lemtag/unicode_tables.inc"

inline bool is_scalar(char32_t cp) {
  return cp < 0x110000 && !(cp >= 0xD800 && cp <= 0xDFFF);
}

inline std::u32string decode_utf8(std::string_view in) {
  std::u32string out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    unsigned char b0 = static_cast<unsigned char>(in[i]);
    char32_t cp = 0;
    std::size_t n = 0;
    if (b0 < 0x80) {
      cp = b0;
      n = 0;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      n = 1;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      n = 2;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      n = 3;
    } else {
      throw Utf8Error("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + n >= in.size())
      throw Utf8Error("truncated UTF-8 sequence at offset " + std::to_string(i));
    for (std::size_t k = 1; k <= n; ++k) {
      unsigned char b = static_cast<unsigned char>(in[i + k]);
      if ((b & 0xC0) != 0x80)
        throw Utf8Error("invalid UTF-8 continuation byte at offset " +
                        std::to_string(i + k));
      cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr char32_t kMin[4] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[n] || !is_scalar(cp))
      throw Utf8Error("ill-formed UTF-8 sequence at offset " + std::to_string(i));
    out.push_back(cp);
    i += n + 1;
  }
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode_utf8(std::u32string_view in) {
  std::string out;
  out.reserve(in.size());
  for (char32_t cp : in) append_utf8(out, cp);
  return out;
}

inline std::string encode_utf8(char32_t cp) {
  std::string out;
  append_utf8(out, cp);
  return out;
}

namespace detail {
template <std::size_t N>
inline char32_t lookup_case(const CasePair (&table)[N], char32_t cp) {
  auto it = std::lower_bound(std::begin(table), std::end(table), cp,
                             [](const CasePair& p, char32_t c) { return p.cp < c; });
  if (it != std::end(table) && it->cp == cp) return it->mapped;
  return cp;
}
}  // namespace detail

/// Simple (single code point) lowercase mapping; identity when none exists.
inline char32_t simple_lower(char32_t cp) { return detail::lookup_case(kLowerMap, cp); }
inline char32_t simple_upper(char32_t cp) { return detail::lookup_case(kUpperMap, cp); }

// The casing half of a lemma rule must be able to restore the original
// character from its lowercased body, so a mapping is only taken when the
// opposite mapping leads back. Characters like U+212A (Kelvin sign) or
// U+0130 (Turkish dotted capital I), whose lowercase forms re-uppercase to a
// different letter, stay untouched and count as uncased here.
inline char32_t lower_safe(char32_t cp) {
  char32_t lo = simple_lower(cp);
  return (lo != cp && simple_upper(lo) == cp) ? lo : cp;
}

inline char32_t upper_safe(char32_t cp) {
  char32_t up = simple_upper(cp);
  return (up != cp && simple_lower(up) == cp) ? up : cp;
}

inline bool is_upper_char(char32_t cp) { return lower_safe(cp) != cp; }
inline bool is_lower_char(char32_t cp) { return upper_safe(cp) != cp; }
inline bool is_cased(char32_t cp) { return is_upper_char(cp) || is_lower_char(cp); }
inline bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

inline std::u32string lower_safe(std::u32string_view s) {
  std::u32string out(s);
  for (char32_t& c : out) c = lower_safe(c);
  return out;
}

inline std::string lower_safe_utf8(std::string_view s) {
  return encode_utf8(lower_safe(decode_utf8(s)));
}

// --- NFC -------------------------------------------------------------------

namespace detail {

constexpr char32_t kHangulSBase = 0xAC00, kHangulLBase = 0x1100,
                   kHangulVBase = 0x1161, kHangulTBase = 0x11A7;
constexpr int kHangulLCount = 19, kHangulVCount = 21, kHangulTCount = 28;
constexpr int kHangulNCount = kHangulVCount * kHangulTCount;
constexpr int kHangulSCount = kHangulLCount * kHangulNCount;

inline int combining_class(char32_t cp) {
  auto it = std::lower_bound(std::begin(kCombiningClass), std::end(kCombiningClass), cp,
                             [](const CombiningClass& p, char32_t c) { return p.cp < c; });
  if (it != std::end(kCombiningClass) && it->cp == cp) return it->ccc;
  return 0;
}

inline void decompose_into(char32_t cp, std::u32string& out) {
  if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
    int s = static_cast<int>(cp - kHangulSBase);
    out.push_back(kHangulLBase + s / kHangulNCount);
    out.push_back(kHangulVBase + (s % kHangulNCount) / kHangulTCount);
    if (s % kHangulTCount) out.push_back(kHangulTBase + s % kHangulTCount);
    return;
  }
  auto it = std::lower_bound(std::begin(kDecomp), std::end(kDecomp), cp,
                             [](const DecompEntry& p, char32_t c) { return p.cp < c; });
  if (it != std::end(kDecomp) && it->cp == cp) {
    for (int k = 0; k < it->len; ++k) out.push_back(kDecompPool[it->offset + k]);
    return;
  }
  out.push_back(cp);
}

inline char32_t compose_pair(char32_t a, char32_t b) {
  if (a >= kHangulLBase && a < kHangulLBase + kHangulLCount && b >= kHangulVBase &&
      b < kHangulVBase + kHangulVCount) {
    return kHangulSBase +
           (static_cast<int>(a - kHangulLBase) * kHangulVCount +
            static_cast<int>(b - kHangulVBase)) *
               kHangulTCount;
  }
  if (a >= kHangulSBase && a < kHangulSBase + kHangulSCount &&
      (a - kHangulSBase) % kHangulTCount == 0 && b > kHangulTBase &&
      b < kHangulTBase + kHangulTCount) {
    return a + (b - kHangulTBase);
  }
  auto it = std::lower_bound(
      std::begin(kCompose), std::end(kCompose), std::pair<char32_t, char32_t>{a, b},
      [](const ComposeEntry& e, const std::pair<char32_t, char32_t>& k) {
        return e.first != k.first ? e.first < k.first : e.second < k.second;
      });
  if (it != std::end(kCompose) && it->first == a && it->second == b) return it->composed;
  return 0;
}

}  // namespace detail

inline std::u32string nfc(std::u32string_view in) {
  // Canonical decomposition.
  std::u32string d;
  d.reserve(in.size());
  for (char32_t cp : in) detail::decompose_into(cp, d);
  // Canonical ordering (stable bubble over combining marks).
  for (std::size_t i = 1; i < d.size(); ++i) {
    int cc = detail::combining_class(d[i]);
    if (cc == 0) continue;
    std::size_t j = i;
    while (j > 0) {
      int prev = detail::combining_class(d[j - 1]);
      if (prev == 0 || prev <= cc) break;
      std::swap(d[j - 1], d[j]);
      --j;
    }
  }
  // Canonical composition.
  if (d.empty()) return d;
  std::u32string out;
  out.reserve(d.size());
  std::size_t last_starter = std::u32string::npos;
  int last_cc = -1;
  for (char32_t cp : d) {
    int cc = detail::combining_class(cp);
    if (last_starter != std::u32string::npos && last_cc < cc) {
      if (char32_t comp = detail::compose_pair(out[last_starter], cp)) {
        out[last_starter] = comp;
        continue;
      }
    }
    if (cc == 0) {
      if (last_starter != std::u32string::npos && last_cc == 0) {
        if (char32_t comp = detail::compose_pair(out[last_starter], cp)) {
          out[last_starter] = comp;
          continue;
        }
      }
      out.push_back(cp);
      last_starter = out.size() - 1;
      last_cc = 0;
    } else {
      out.push_back(cp);
      last_cc = cc;
    }
  }
  return out;
}

inline std::string nfc_utf8(std::string_view s) {
  return encode_utf8(nfc(decode_utf8(s)));
}

}  // namespace lemtag::uni
