#include "subdyn/phase_space.hpp"

#include <algorithm>
#include <set>

#include "subdyn/errors.hpp"
#include "subdyn/recognizability.hpp"

namespace subdyn {

std::vector<LambdaSeed> lambda_seeds(const Substitution& s) {
  if (!classify_letters(s).short_letters.empty()) {
    throw InputError("ShortLettersPresent", "seeds need every letter to have unbounded iterates");
  }
  const std::size_t n = s.size();
  const unsigned p_max = static_cast<unsigned>((n + 1) * (n + 1));
  // first and last letters of σ^p(a) for p = 1..p_max
  std::vector<std::vector<Letter>> first(p_max + 1, std::vector<Letter>(n));
  std::vector<std::vector<Letter>> last(p_max + 1, std::vector<Letter>(n));
  for (std::size_t a = 0; a < n; ++a) {
    first[0][a] = last[0][a] = static_cast<Letter>(a);
  }
  for (unsigned p = 1; p <= p_max; ++p) {
    for (std::size_t a = 0; a < n; ++a) {
      first[p][a] = first[p - 1][s.image(static_cast<Letter>(a)).front()];
      last[p][a] = last[p - 1][s.image(static_cast<Letter>(a)).back()];
    }
  }
  std::vector<LambdaSeed> out;
  for (const Word& ab : factor_language(s, 2).of_length(2)) {
    for (unsigned p = 1; p <= p_max; ++p) {
      if (last[p][ab[0]] == ab[0] && first[p][ab[1]] == ab[1]) {
        out.push_back({ab[0], ab[1], p});
        break;
      }
    }
  }
  return out;
}

Word MarkedWindow::word() const {
  Word w = left;
  w.insert(w.end(), right.begin(), right.end());
  return w;
}

std::string MarkedWindow::format(const Substitution& s) const {
  std::string sep = s.single_char_names() ? "" : " ";
  std::string l = s.format(left);
  std::string r = s.format(right);
  return l + sep + "." + (r.empty() ? "" : sep) + r;
}

MarkedWindow lambda_window_at(const Substitution& s, const LambdaSeed& seed, std::size_t radius, unsigned n) {
  Substitution sp = power(s, seed.p);
  Word a = expand(sp, {seed.a}, n);
  Word b = expand(sp, {seed.b}, n);
  if (a.size() < radius || b.size() < radius) {
    throw ScaleError("InsufficientGrowth", "level " + std::to_string(n) + " is too shallow for radius " +
                                               std::to_string(radius));
  }
  return {Word(a.end() - static_cast<std::ptrdiff_t>(radius), a.end()),
          Word(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(radius))};
}

MarkedWindow lambda_window(const Substitution& s, const LambdaSeed& seed, std::size_t radius) {
  Substitution sp = power(s, seed.p);
  for (unsigned n = 0;; ++n) {
    auto len = image_lengths(sp, n);
    if (len[seed.a] >= radius && len[seed.b] >= radius) return lambda_window_at(s, seed, radius, n);
  }
}

void ChainPrefix::validate(const Substitution& s) const {
  if (entries.empty() || entries.front().second != 0) throw InputError("BadChain", "chain must start with i_0 = 0");
  for (std::size_t k = 1; k < entries.size(); ++k) {
    const auto& [a, i] = entries[k];
    const Word& img = s.image(a);
    if (i >= img.size() || img[i] != entries[k - 1].first) {
      throw InputError("BadChain", "entry " + std::to_string(k) + ": " + s.name(entries[k - 1].first) +
                                       " does not occur at position " + std::to_string(i) + " of the image of " +
                                       s.name(a));
    }
  }
}

std::vector<std::uint64_t> ChainPrefix::cut_points(const Substitution& s) const {
  std::vector<std::uint64_t> j{0};
  for (std::size_t k = 0; k + 1 < entries.size(); ++k) {
    auto len = image_lengths(s, static_cast<unsigned>(k));
    const auto& [a, i] = entries[k + 1];
    std::uint64_t add = 0;
    for (std::size_t t = 0; t < i; ++t) add += len[s.image(a)[t]];
    j.push_back(j.back() + add);
  }
  return j;
}

MarkedWindow m0_window(const Substitution& s, const ChainPrefix& chain, std::size_t radius) {
  chain.validate(s);
  auto j = chain.cut_points(s);
  auto n = static_cast<unsigned>(chain.entries.size() - 1);
  Letter an = chain.entries.back().first;
  std::uint64_t len = image_lengths(s, n)[an];
  std::uint64_t jn = j.back();
  if (jn < radius || len - jn < radius) {
    throw ScaleError("InsufficientGrowth", "j_" + std::to_string(n) + " = " + std::to_string(jn) + " and " +
                                               std::to_string(len - jn) + " letters right of it; radius " +
                                               std::to_string(radius) + " needs more depth");
  }
  Word w = expand(s, {an}, n);
  auto c = static_cast<std::ptrdiff_t>(jn);
  auto r = static_cast<std::ptrdiff_t>(radius);
  return {Word(w.begin() + c - r, w.begin() + c), Word(w.begin() + c, w.begin() + c + r)};
}

CoreVerdict core_membership(const Substitution& s, const MarkedWindow& window, unsigned n) {
  Word w = window.word();
  if (n == 0 || w.empty()) return {};
  auto lang = factor_language(s, w.size());
  std::set<std::pair<Word, std::size_t>> states{{w, window.left.size()}};
  for (unsigned k = 1; k <= n; ++k) {
    std::set<std::pair<Word, std::size_t>> next;
    for (const auto& [word, marker] : states) {
      for (const Tiling& t : one_word_tilings(s, lang, word, false)) {
        auto at = std::find(t.starts.begin(), t.starts.end(), static_cast<std::ptrdiff_t>(marker));
        if (at != t.starts.end()) {
          next.emplace(t.parent, static_cast<std::size_t>(at - t.starts.begin()));
        } else if (marker == word.size() && t.tail == 0) {
          next.emplace(t.parent, t.parent.size());
        }
      }
    }
    if (next.empty()) return {false, k};
    states = std::move(next);
  }
  return {};
}

}  // namespace subdyn
