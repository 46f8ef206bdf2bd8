#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modalcoh {

// A modality is a word over 'b' (box) and 'd' (diamond). The leftmost
// letter is the outermost operator. Position 0 is the rightmost letter.
using Modality = std::string;

inline constexpr char kBox = 'b';
inline constexpr char kDia = 'd';

inline bool is_op(char c) { return c == kBox || c == kDia; }

inline bool valid_modality(std::string_view w) {
  return std::all_of(w.begin(), w.end(), is_op);
}

// "e" stands for the empty word in every textual interface.
inline std::string show(const Modality& m) { return m.empty() ? "e" : m; }

inline Modality read_modality(std::string_view s) {
  if (s == "e") return {};
  if (s.empty() || !valid_modality(s))
    throw std::invalid_argument("bad modality '" + std::string(s) + "'");
  return Modality(s);
}

inline char swap_op(char c) { return c == kBox ? kDia : kBox; }

inline Modality swap_ops(Modality m) {
  for (auto& c : m) c = swap_op(c);
  return m;
}

inline Modality reversed(Modality m) {
  std::reverse(m.begin(), m.end());
  return m;
}

// Letter at position p (0 = rightmost).
inline char letter_at(const Modality& m, std::size_t p) {
  return m[m.size() - 1 - p];
}

// Collapse runs of equal operators: bb -> b, bbddbd -> bdbd.
inline Modality sharp(const Modality& m) {
  Modality out;
  for (char c : m)
    if (out.empty() || out.back() != c) out.push_back(c);
  return out;
}

inline bool alternating(const Modality& m) { return sharp(m) == m; }

}  // namespace modalcoh
