#!/usr/bin/env python3
"""Regenerates include/lemtag/unicode_tables.inc from Python's unicodedata.

Emits simple per-code-point case mappings (full mappings that stay a single
code point) plus the canonical decomposition / combining-class / composition
data needed for NFC. Hangul syllables are handled algorithmically in C++ and
are therefore excluded here.
"""

import sys
import unicodedata

OUT = "include/lemtag/unicode_tables.inc"

S_BASE, L_BASE, V_BASE, T_BASE = 0xAC00, 0x1100, 0x1161, 0x11A7
S_COUNT = 19 * 21 * 28


def is_hangul_syllable(cp: int) -> bool:
    return S_BASE <= cp < S_BASE + S_COUNT


def canonical_decomposition(cp: int):
    raw = unicodedata.decomposition(chr(cp))
    if not raw or raw.startswith("<"):
        return None
    return [int(f, 16) for f in raw.split()]


def full_decomposition(cp: int):
    out = []
    stack = [cp]
    while stack:
        c = stack.pop(0)
        d = None if is_hangul_syllable(c) else canonical_decomposition(c)
        if d is None:
            out.append(c)
        else:
            stack = d + stack
    return out


def main() -> None:
    lower, upper = [], []
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        c = chr(cp)
        lo, up = c.lower(), c.upper()
        if len(lo) == 1 and lo != c:
            lower.append((cp, ord(lo)))
        if len(up) == 1 and up != c:
            upper.append((cp, ord(up)))

    ccc = []
    decomp_index, decomp_pool = [], []
    compose = []
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF or is_hangul_syllable(cp):
            continue
        c = chr(cp)
        k = unicodedata.combining(c)
        if k:
            ccc.append((cp, k))
        d = canonical_decomposition(cp)
        if d is None:
            continue
        full = full_decomposition(cp)
        decomp_index.append((cp, len(decomp_pool), len(full)))
        decomp_pool.extend(full)
        # A two-char canonical decomposition recomposes unless excluded;
        # exclusion (incl. non-starter decompositions) shows up as NFC
        # not restoring the original character.
        if len(d) == 2 and unicodedata.normalize("NFC", unicodedata.normalize("NFD", c)) == c:
            compose.append((d[0], d[1], cp))
    compose.sort()

    with open(OUT, "w", encoding="utf-8") as f:
        w = f.write
        w("// Generated by scripts/gen_unicode_tables.py (Unicode %s). Do not edit.\n\n"
          % unicodedata.unidata_version)

        def dump_pairs(name, rows):
            w("inline constexpr CasePair %s[] = {\n" % name)
            for i in range(0, len(rows), 6):
                w("  " + " ".join("{0x%X,0x%X}," % r for r in rows[i:i + 6]) + "\n")
            w("};\n\n")

        dump_pairs("kLowerMap", lower)
        dump_pairs("kUpperMap", upper)

        w("inline constexpr CombiningClass kCombiningClass[] = {\n")
        for i in range(0, len(ccc), 8):
            w("  " + " ".join("{0x%X,%d}," % r for r in ccc[i:i + 8]) + "\n")
        w("};\n\n")

        w("inline constexpr DecompEntry kDecomp[] = {\n")
        for i in range(0, len(decomp_index), 6):
            w("  " + " ".join("{0x%X,%d,%d}," % r for r in decomp_index[i:i + 6]) + "\n")
        w("};\n\n")

        w("inline constexpr char32_t kDecompPool[] = {\n")
        for i in range(0, len(decomp_pool), 10):
            w("  " + " ".join("0x%X," % r for r in decomp_pool[i:i + 10]) + "\n")
        w("};\n\n")

        w("inline constexpr ComposeEntry kCompose[] = {\n")
        for i in range(0, len(compose), 5):
            w("  " + " ".join("{0x%X,0x%X,0x%X}," % r for r in compose[i:i + 5]) + "\n")
        w("};\n")

    sys.stderr.write(
        "wrote %s: %d lower, %d upper, %d ccc, %d decomp (%d pool), %d compose\n"
        % (OUT, len(lower), len(upper), len(ccc), len(decomp_index),
           len(decomp_pool), len(compose)))


if __name__ == "__main__":
    main()
