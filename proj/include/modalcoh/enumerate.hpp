#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "modalcoh/chain.hpp"
#include "modalcoh/theory.hpp"

namespace modalcoh {

// All words over `alphabet` of length <= n, shortest first.
inline std::vector<Modality> words_upto(const std::string& alphabet,
                                        std::size_t n) {
  std::vector<Modality> out{""};
  std::size_t from = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i)
      for (char c : alphabet) out.push_back(std::string(1, c) + out[i]);
    from = to;
  }
  return out;
}

// Every single factor of the theory whose source is w.
inline std::vector<Factor> steps_from(const Theory& th, const Modality& w) {
  std::vector<Factor> out;
  for (GenKind k : th.gens) {
    const std::string_view s = info(k).src;
    std::size_t need = is_chi(k) ? th.chi_min_index : th.min_index;
    for (std::size_t p = 0; p + s.size() <= w.size(); ++p) {
      if (w.compare(p, s.size(), s) != 0) continue;
      Factor f{w.substr(0, p), k, w.substr(p + s.size())};
      if (f.index.size() < need || !th.legal_word(f.tgt())) continue;
      out.push_back(std::move(f));
    }
  }
  return out;
}

// Every single factor of the theory whose target is w.
inline std::vector<Factor> steps_into(const Theory& th, const Modality& w) {
  std::vector<Factor> out;
  for (GenKind k : th.gens) {
    const std::string_view t = info(k).tgt;
    std::size_t need = is_chi(k) ? th.chi_min_index : th.min_index;
    for (std::size_t p = 0; p + t.size() <= w.size(); ++p) {
      if (w.compare(p, t.size(), t) != 0) continue;
      Factor f{w.substr(0, p), k, w.substr(p + t.size())};
      if (f.index.size() < need || !th.legal_word(f.src())) continue;
      out.push_back(std::move(f));
    }
  }
  return out;
}

// All chains from `src` with at most max_gens factors, shortest first.
inline std::vector<Chain> enumerate_chains(const Theory& th, const Modality& src,
                                           int max_gens) {
  std::vector<Chain> out{{src, {}}};
  std::size_t from = 0;
  for (int len = 1; len <= max_gens; ++len) {
    std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i)
      for (auto& f : steps_from(th, out[i].tgt())) {
        Chain c = out[i];
        c.fs.push_back(std::move(f));
        out.push_back(std::move(c));
      }
    from = to;
  }
  return out;
}

// Random chain with up to `gens` factors; stops early at dead ends.
template <class Rng>
Chain random_chain(const Theory& th, Rng& rng, const Modality& src, int gens) {
  Chain c{src, {}};
  for (int i = 0; i < gens; ++i) {
    auto opts = steps_from(th, c.tgt());
    if (opts.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, opts.size() - 1);
    c.fs.push_back(opts[pick(rng)]);
  }
  return c;
}

}  // namespace modalcoh
