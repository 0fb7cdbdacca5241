#include "subdyn/words.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "subdyn/errors.hpp"

namespace subdyn {

Substitution::Substitution(std::vector<std::string> names, std::vector<Word> images)
    : names_(std::move(names)), images_(std::move(images)) {
  if (names_.size() != images_.size()) {
    throw InputError("Malformed", "alphabet and rule counts differ");
  }
  std::set<std::string> seen;
  for (std::size_t a = 0; a < names_.size(); ++a) {
    if (names_[a].empty()) throw InputError("Malformed", "empty letter name");
    if (!seen.insert(names_[a]).second) {
      throw InputError("DuplicateRule", "letter '" + names_[a] + "' defined twice");
    }
    if (images_[a].empty()) {
      throw InputError("EmptyImage", "image of '" + names_[a] + "' is empty");
    }
    for (Letter b : images_[a]) {
      if (b < 0 || static_cast<std::size_t>(b) >= names_.size()) {
        throw InputError("UnknownLetter", "image of '" + names_[a] + "' leaves the alphabet");
      }
    }
  }
}

std::optional<Letter> Substitution::find(std::string_view name) const {
  for (std::size_t a = 0; a < names_.size(); ++a) {
    if (names_[a] == name) return static_cast<Letter>(a);
  }
  return std::nullopt;
}

bool Substitution::single_char_names() const {
  return std::all_of(names_.begin(), names_.end(),
                     [](const std::string& n) { return n.size() == 1; });
}

std::string Substitution::format(const Word& w) const {
  std::string out;
  bool sep = !single_char_names();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sep && i > 0) out += ' ';
    out += names_.at(w[i]);
  }
  return out;
}

Word Substitution::parse_word(std::string_view text) const {
  Word w;
  if (single_char_names()) {
    for (char c : text) {
      if (c == ' ' || c == '\t') continue;
      auto a = find(std::string_view(&c, 1));
      if (!a) throw InputError("UnknownLetter", std::string("letter '") + c + "' not in alphabet");
      w.push_back(*a);
    }
    return w;
  }
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto a = find(tok);
    if (!a) throw InputError("UnknownLetter", "letter '" + tok + "' not in alphabet");
    w.push_back(*a);
  }
  return w;
}

namespace {

std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

Substitution parse_substitution(std::string_view text) {
  std::vector<std::string> names;
  std::vector<std::string> rhs;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto arrow = line.find("->");
    if (arrow == std::string_view::npos) {
      throw InputError("Malformed", "line " + std::to_string(line_no) + ": expected 'x -> word'");
    }
    auto lhs = trim(line.substr(0, arrow));
    auto right = trim(line.substr(arrow + 2));
    if (lhs.size() != 1) {
      throw InputError("Malformed",
                       "line " + std::to_string(line_no) + ": letters are single characters");
    }
    if (std::find(names.begin(), names.end(), lhs) != names.end()) {
      throw InputError("DuplicateRule", "letter '" + std::string(lhs) + "' defined twice");
    }
    if (right.empty()) {
      throw InputError("EmptyImage", "image of '" + std::string(lhs) + "' is empty");
    }
    names.emplace_back(lhs);
    rhs.emplace_back(right);
  }
  if (names.empty()) throw InputError("Malformed", "no rules");
  std::vector<Word> images(names.size());
  for (std::size_t a = 0; a < names.size(); ++a) {
    for (char c : rhs[a]) {
      if (c == ' ' || c == '\t') continue;
      auto it = std::find(names.begin(), names.end(), std::string(1, c));
      if (it == names.end()) {
        throw InputError("MissingRule", std::string("letter '") + c + "' has no rule");
      }
      images[a].push_back(static_cast<Letter>(it - names.begin()));
    }
  }
  return Substitution(std::move(names), std::move(images));
}

std::string to_spec_text(const Substitution& s) {
  std::string out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    out += s.name(a) + " -> " + s.format(s.image(a)) + "\n";
  }
  return out;
}

Word substitute(const Substitution& s, const Word& w) {
  Word out;
  for (Letter a : w) {
    const Word& img = s.image(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

Word expand(const Substitution& s, const Word& w, unsigned n) {
  Word cur = w;
  for (unsigned k = 0; k < n; ++k) cur = substitute(s, cur);
  return cur;
}

Substitution power(const Substitution& s, unsigned n) {
  std::vector<Word> images;
  images.reserve(s.size());
  for (std::size_t a = 0; a < s.size(); ++a) {
    images.push_back(expand(s, Word{static_cast<Letter>(a)}, n));
  }
  return Substitution(s.names(), std::move(images));
}

std::vector<std::uint64_t> image_lengths(const Substitution& s, unsigned n) {
  std::vector<std::uint64_t> len(s.size(), 1);
  for (unsigned k = 0; k < n; ++k) {
    std::vector<std::uint64_t> next(s.size(), 0);
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (Letter b : s.image(a)) next[a] += len[b];
    }
    len = std::move(next);
  }
  return len;
}

std::pair<std::uint64_t, std::uint64_t> norms(const Substitution& s, unsigned n) {
  auto len = image_lengths(s, n);
  auto [lo, hi] = std::minmax_element(len.begin(), len.end());
  return {*lo, *hi};
}

Matrix incidence_matrix(const Substitution& s) {
  Matrix m(s.size(), std::vector<std::uint64_t>(s.size(), 0));
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (Letter b : s.image(a)) ++m[a][b];
  }
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  std::size_t n = a.size();
  Matrix c(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Matrix matrix_power(const Matrix& m, unsigned n) {
  Matrix r(m.size(), std::vector<std::uint64_t>(m.size(), 0));
  for (std::size_t i = 0; i < m.size(); ++i) r[i][i] = 1;
  for (unsigned k = 0; k < n; ++k) r = multiply(r, m);
  return r;
}

std::vector<std::vector<bool>> occurrence_reach(const Substitution& s) {
  std::size_t n = s.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (Letter b : s.image(a)) reach[a][b] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  return reach;
}

LetterClassification classify_letters(const Substitution& s) {
  std::size_t n = s.size();
  auto reach = occurrence_reach(s);
  std::vector<bool> pump(n, false);
  for (std::size_t c = 0; c < n; ++c) pump[c] = reach[c][c] && s.image(c).size() >= 2;
  LetterClassification out;
  out.is_long.assign(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    bool l = pump[a];
    for (std::size_t c = 0; c < n && !l; ++c) l = reach[a][c] && pump[c];
    out.is_long[a] = l;
    (l ? out.long_letters : out.short_letters).push_back(static_cast<Letter>(a));
  }
  return out;
}

WordSet factors_up_to(const Word& w, std::size_t cap) {
  WordSet out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t len = 1; len <= cap && i + len <= w.size(); ++len) {
      out.emplace(w.begin() + i, w.begin() + i + len);
    }
  }
  return out;
}

std::vector<Word> FactorLanguage::of_length(std::size_t n) const {
  std::vector<Word> out;
  for (const Word& w : factors)
    if (w.size() == n) out.push_back(w);
  return out;
}

namespace {

// Keeps only words that are not factors of another member; the factor
// closure of the result is the factor closure of the input.
WordSet maximal_elements(const WordSet& gens) {
  WordSet out;
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
    const Word& w = *it;
    bool covered = false;
    for (const Word& big : out) {
      if (big.size() > w.size() &&
          std::search(big.begin(), big.end(), w.begin(), w.end()) != big.end()) {
        covered = true;
        break;
      }
    }
    if (!covered) out.insert(w);
  }
  return out;
}

}  // namespace

FactorLanguage factor_language(const Substitution& s, std::size_t cap) {
  std::vector<Word> seeds;
  for (std::size_t a = 0; a < s.size(); ++a) seeds.push_back({static_cast<Letter>(a)});
  return factor_language_from(s, seeds, cap);
}

FactorLanguage factor_language_from(const Substitution& s, const std::vector<Word>& seeds, std::size_t cap) {
  FactorLanguage lang;
  lang.cap = cap;
  if (cap == 0) return lang;
  // S_k is represented by its maximal elements: the length-cap windows of
  // σ^k(a) together with the whole words σ^k(a) shorter than cap.
  auto windows = [cap](const Word& w, WordSet& into) {
    if (w.size() <= cap) {
      into.insert(w);
      return;
    }
    for (std::size_t i = 0; i + cap <= w.size(); ++i) into.emplace(w.begin() + i, w.begin() + i + cap);
  };
  WordSet cur;
  for (const Word& w : seeds) windows(substitute(s, w), cur);
  cur = maximal_elements(cur);
  std::vector<WordSet> history;
  std::map<WordSet, std::size_t> index;
  while (true) {
    auto [it, fresh] = index.emplace(cur, history.size());
    if (!fresh) {
      lang.closure = it->second + 1 == history.size() ? Closure::Converged : Closure::CycleSummed;
      break;
    }
    history.push_back(cur);
    WordSet next;
    for (const Word& u : cur) windows(substitute(s, u), next);
    cur = maximal_elements(next);
  }
  for (const auto& gens : history)
    for (const Word& g : gens) {
      auto f = factors_up_to(g, cap);
      lang.factors.insert(f.begin(), f.end());
    }
  return lang;
}

std::string to_string(NestingClass c) {
  switch (c) {
    case NestingClass::StartsLong: return "StartsLong";
    case NestingClass::EndsLong: return "EndsLong";
    case NestingClass::Both: return "Both";
    case NestingClass::None: return "None";
  }
  return "None";
}

NestingClass nesting_class(const Substitution& s) {
  auto cls = classify_letters(s);
  bool starts = true;
  bool ends = true;
  for (Letter a : cls.long_letters) {
    starts = starts && cls.is_long[s.image(a).front()];
    ends = ends && cls.is_long[s.image(a).back()];
  }
  if (starts && ends) return NestingClass::Both;
  if (starts) return NestingClass::StartsLong;
  if (ends) return NestingClass::EndsLong;
  return NestingClass::None;
}

ShortBlockBound short_block_bound(const Substitution& s, std::size_t cap) {
  auto cls = classify_letters(s);
  auto lang = factor_language(s, cap);
  ShortBlockBound out;
  for (const Word& w : lang.factors) {
    bool all_short = std::none_of(w.begin(), w.end(), [&](Letter a) { return cls.is_long[a]; });
    if (all_short && w.size() > out.longest_short.size()) out.longest_short = w;
  }
  if (out.longest_short.size() < cap) {
    out.bounded = true;
    out.value = out.longest_short.size() + 1;
  } else {
    out.value = cap;
  }
  return out;
}

std::optional<Word> periodicity_witness_search(const Substitution& s, std::size_t max_len,
                                               std::size_t max_pow) {
  auto lang = factor_language(s, max_len * max_pow);
  for (const Word& u : lang.factors) {
    if (u.size() > max_len) break;
    Word p;
    for (std::size_t k = 0; k < max_pow; ++k) p.insert(p.end(), u.begin(), u.end());
    if (lang.contains(p)) return u;
  }
  return std::nullopt;
}

}  // namespace subdyn
