#pragma once

// Generators and brute-force oracles shared by the unit and acceptance tests.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <compare>
#include <vector>

#include "subdyn/bratteli.hpp"
#include "subdyn/words.hpp"

namespace testing_support {

using subdyn::Letter;
using subdyn::Substitution;
using subdyn::Word;

inline Substitution chacon() {
  return subdyn::parse_substitution("0 -> 00s0\ns -> s\n1 -> 0110\n");
}

inline Substitution thue_morse() { return subdyn::parse_substitution("a -> ab\nb -> ba\n"); }

inline Substitution two_block() {
  return subdyn::parse_substitution("a -> ab\nb -> ba\nc -> cd\nd -> dc\ne -> ae\n");
}

inline std::vector<std::string> letter_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return names;
}

inline Substitution random_substitution(std::mt19937_64& rng, std::size_t max_letters = 5, std::size_t max_len = 5) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_letters)(rng);
  std::vector<Word> images;
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t len = std::uniform_int_distribution<std::size_t>(1, max_len)(rng);
    Word w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<Letter>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)));
    images.push_back(std::move(w));
  }
  return Substitution(letter_names(n), std::move(images));
}

//! Random ordered diagram: every vertex gets 1..3 incoming edges from
//! random sources on the previous level; every vertex gets an outgoing
//! edge on the next level.
inline subdyn::OrderedDiagram random_diagram(std::mt19937_64& rng, std::size_t depth) {
  subdyn::OrderedDiagram d;
  d.levels.push_back({"v0"});
  d.edges.emplace_back();
  for (std::size_t n = 1; n <= depth; ++n) {
    std::size_t width = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < width; ++v) labels.push_back("x" + std::to_string(v));
    std::vector<subdyn::Edge> edges;
    std::size_t prev = d.levels.back().size();
    std::vector<bool> used(prev, false);
    for (std::size_t v = 0; v < width; ++v) {
      std::size_t k = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
      for (std::size_t o = 0; o < k; ++o) {
        std::size_t src = std::uniform_int_distribution<std::size_t>(0, prev - 1)(rng);
        used[src] = true;
        edges.push_back({n - 1, src, v, o});
      }
    }
    for (std::size_t src = 0; src < prev; ++src) {
      if (used[src]) continue;
      std::size_t v = std::uniform_int_distribution<std::size_t>(0, width - 1)(rng);
      std::size_t order = 0;
      for (const auto& e : edges)
        if (e.range == v) ++order;
      edges.push_back({n - 1, src, v, order});
    }
    d.levels.push_back(std::move(labels));
    d.edges.push_back(std::move(edges));
  }
  return d;
}

//! Factors of length <= cap of σ^k(a) for every letter a and k = 1..depth,
//! stopping each expansion once it is long.
inline std::set<Word> language_by_expansion(const Substitution& s, std::size_t cap, unsigned depth,
                                            std::size_t max_size = 4000) {
  std::set<Word> out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    Word w{static_cast<Letter>(a)};
    for (unsigned k = 1; k <= depth && w.size() <= max_size; ++k) {
      w = subdyn::substitute(s, w);
      for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t l = 1; l <= cap && i + l <= w.size(); ++l) out.insert(Word(w.begin() + i, w.begin() + i + l));
    }
  }
  return out;
}

//! Every covering of `window` by images σ(b), clipped at the two ends,
//! found by trying every set of cut positions. Returned as (parent,
//! offset, tail); parents are not checked against the language.
struct RawTiling {
  Word parent;
  std::size_t offset;
  std::size_t tail;
  friend bool operator==(const RawTiling&, const RawTiling&) = default;
  friend auto operator<=>(const RawTiling&, const RawTiling&) = default;
};

inline std::set<RawTiling> raw_tilings(const Substitution& s, const Word& window) {
  std::set<RawTiling> out;
  const std::size_t n = window.size();
  if (n == 0 || n > 20) return out;
  auto eq = [&](const Word& img, std::size_t from, std::size_t begin, std::size_t len) {
    for (std::size_t t = 0; t < len; ++t)
      if (img[from + t] != window[begin + t]) return false;
    return true;
  };
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<std::size_t> cuts{0};
    for (std::size_t p = 1; p < n; ++p)
      if (mask & (1u << (p - 1))) cuts.push_back(p);
    cuts.push_back(n);
    const std::size_t m = cuts.size() - 1;
    // partial results: (parent so far, offset)
    std::vector<std::pair<Word, std::size_t>> partial;
    for (std::size_t a = 0; a < s.size(); ++a) {
      const Word& img = s.image(static_cast<Letter>(a));
      std::size_t len = cuts[1];
      for (std::size_t off = 0; off + len <= img.size(); ++off) {
        if (m > 1 && off + len != img.size()) continue;
        if (!eq(img, off, 0, len)) continue;
        if (m == 1) {
          out.insert({{static_cast<Letter>(a)}, off, img.size() - off - len});
        } else {
          partial.push_back({{static_cast<Letter>(a)}, off});
        }
      }
    }
    if (m == 1) continue;
    for (std::size_t k = 1; k < m && !partial.empty(); ++k) {
      std::size_t begin = cuts[k];
      std::size_t len = cuts[k + 1] - begin;
      bool last = k + 1 == m;
      std::vector<std::pair<Word, std::size_t>> next;
      for (const auto& [parent, off] : partial) {
        for (std::size_t b = 0; b < s.size(); ++b) {
          const Word& img = s.image(static_cast<Letter>(b));
          if (img.size() < len || (!last && img.size() != len) || !eq(img, 0, begin, len)) continue;
          Word p = parent;
          p.push_back(static_cast<Letter>(b));
          if (last) {
            out.insert({p, off, img.size() - len});
          } else {
            next.push_back({p, off});
          }
        }
      }
      partial = std::move(next);
    }
  }
  return out;
}

}  // namespace testing_support
