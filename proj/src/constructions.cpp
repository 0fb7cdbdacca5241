#include "subdyn/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "subdyn/errors.hpp"

namespace subdyn {

Word MarkedWord::word() const {
  Word w{v1};
  w.insert(w.end(), s1.begin(), s1.end());
  w.push_back(v2);
  w.insert(w.end(), s2.begin(), s2.end());
  w.push_back(v3);
  return w;
}

std::size_t MarkedWord::dot() const { return dot_after_s1 ? 1 + s1.size() : 1; }

Word MarkedWord::tower_word() const {
  Word w;
  if (dot_after_s1) {
    w.push_back(v2);
    w.insert(w.end(), s2.begin(), s2.end());
  } else {
    w = s1;
    w.push_back(v2);
  }
  return w;
}

std::string MarkedWord::format(const Substitution& s) const {
  Word w = word();
  std::size_t d = dot();
  return s.format(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d))) + "." +
         s.format(Word(w.begin() + static_cast<std::ptrdiff_t>(d), w.end()));
}

namespace {

bool starts_long_side(NestingClass c) { return c == NestingClass::StartsLong || c == NestingClass::Both; }

Substitution reversed(const Substitution& s) {
  std::vector<Word> images = s.images();
  for (auto& w : images) std::reverse(w.begin(), w.end());
  return Substitution(s.names(), std::move(images));
}

Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

// Mirror image: the dot-after-v1 form of a word becomes the dot-after-S1
// form of the reversed word and back.
MarkedWord mirror(const MarkedWord& m) {
  return MarkedWord{m.v3, reversed(m.s2), m.v2, reversed(m.s1), m.v1, !m.dot_after_s1};
}

// Runs (long letter, following short block) of a word starting with a long letter.
std::vector<std::pair<Letter, Word>> long_runs(const Word& w, const std::vector<bool>& is_long) {
  std::vector<std::pair<Letter, Word>> runs;
  for (Letter a : w) {
    if (is_long[a]) {
      runs.push_back({a, {}});
    } else if (runs.empty()) {
      throw Error("NoNesting", "image does not start with a long letter");
    } else {
      runs.back().second.push_back(a);
    }
  }
  return runs;
}

std::vector<MarkedWord> matching_starts_long(const Substitution& s, const std::vector<bool>& is_long,
                                             const MarkedWord& w) {
  Word first{w.v1};
  first.insert(first.end(), w.s1.begin(), w.s1.end());
  Word second{w.v2};
  second.insert(second.end(), w.s2.begin(), w.s2.end());
  auto r1 = long_runs(substitute(s, first), is_long);
  auto r2 = long_runs(substitute(s, second), is_long);
  auto r3 = long_runs(s.image(w.v3), is_long);
  std::vector<MarkedWord> out;
  for (std::size_t j = 0; j < r2.size(); ++j) {
    const auto& prev = j == 0 ? r1.back() : r2[j - 1];
    Letter next = j + 1 == r2.size() ? r3.front().first : r2[j + 1].first;
    out.push_back(MarkedWord{prev.first, prev.second, r2[j].first, r2[j].second, next, true});
  }
  return out;
}

}  // namespace

std::vector<MarkedWord> nesting_vocabulary(const Substitution& s, std::size_t short_cap) {
  auto cls = nesting_class(s);
  if (cls == NestingClass::None) throw InputError("NoNesting", "images of long letters neither all start nor all end long");
  auto bound = short_block_bound(s, short_cap);
  if (!bound.bounded) {
    throw ScaleError("UnboundedShorts", "short blocks reach length " + std::to_string(short_cap));
  }
  auto letters = classify_letters(s);
  bool after_s1 = starts_long_side(cls);
  auto lang = factor_language(s, 2 * bound.value + 3);
  std::vector<MarkedWord> out;
  for (const Word& u : lang.factors) {
    if (u.size() < 3 || !letters.is_long[u.front()] || !letters.is_long[u.back()]) continue;
    std::vector<std::size_t> inner;
    for (std::size_t i = 1; i + 1 < u.size(); ++i)
      if (letters.is_long[u[i]]) inner.push_back(i);
    if (inner.size() != 1) continue;
    std::size_t k = inner.front();
    MarkedWord m;
    m.v1 = u.front();
    m.s1 = Word(u.begin() + 1, u.begin() + static_cast<std::ptrdiff_t>(k));
    m.v2 = u[k];
    m.s2 = Word(u.begin() + static_cast<std::ptrdiff_t>(k) + 1, u.end() - 1);
    m.v3 = u.back();
    m.dot_after_s1 = after_s1;
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<MarkedWord> nesting_matching_rule(const Substitution& s, const MarkedWord& w) {
  auto letters = classify_letters(s);
  if (w.dot_after_s1) return matching_starts_long(s, letters.is_long, w);
  auto out = matching_starts_long(reversed(s), letters.is_long, mirror(w));
  std::reverse(out.begin(), out.end());
  for (auto& m : out) m = mirror(m);
  return out;
}

NestingConstruction nesting_diagram(const Substitution& s, std::size_t short_cap) {
  NestingConstruction out;
  out.vocabulary = nesting_vocabulary(s, short_cap);
  std::map<MarkedWord, Letter> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < out.vocabulary.size(); ++i) {
    index[out.vocabulary[i]] = static_cast<Letter>(i);
    names.push_back("w" + std::to_string(i + 1));
  }
  std::vector<Word> rule;
  std::vector<std::uint64_t> counts;
  for (const auto& w : out.vocabulary) {
    Word img;
    for (const auto& m : nesting_matching_rule(s, w)) {
      auto it = index.find(m);
      if (it == index.end()) {
        throw ScaleError("VocabularyIncomplete", "matching rule of " + w.format(s) + " leaves the vocabulary");
      }
      img.push_back(it->second);
    }
    rule.push_back(std::move(img));
    counts.push_back(w.tower_word().size());
  }
  out.diagram = stationary_from_substitution(Substitution(std::move(names), std::move(rule)), std::move(counts));
  return out;
}

Word EncodedSystem::encode(const Word& w) const {
  Word out;
  for (Letter a : w) out.insert(out.end(), psi[a].begin(), psi[a].end());
  return out;
}

EncodedSystem multi_edge_encoding(const StationaryDiagram& d) {
  const Substitution& s = d.read_rule;
  EncodedSystem enc;
  enc.source = s;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < s.size(); ++a) {
    std::size_t na = d.top_counts[a];
    if (na > s.image(static_cast<Letter>(a)).size()) {
      throw InputError("CountExceedsImage", "letter " + s.name(static_cast<Letter>(a)) + " has " + std::to_string(na) +
                                                " top edges but an image of length " +
                                                std::to_string(s.image(static_cast<Letter>(a)).size()));
    }
    Word p;
    for (std::size_t i = 0; i < na; ++i) {
      p.push_back(static_cast<Letter>(names.size()));
      names.push_back(s.name(static_cast<Letter>(a)) + "_" + std::to_string(i));
    }
    enc.psi.push_back(std::move(p));
  }
  std::vector<Word> images(names.size());
  for (std::size_t a = 0; a < s.size(); ++a) {
    const Word& img = s.image(static_cast<Letter>(a));
    std::size_t na = enc.psi[a].size();
    for (std::size_t i = 0; i + 1 < na; ++i) images[enc.psi[a][i]] = enc.psi[img[i]];
    Word tail;
    for (std::size_t t = na - 1; t < img.size(); ++t) tail.insert(tail.end(), enc.psi[img[t]].begin(), enc.psi[img[t]].end());
    images[enc.psi[a][na - 1]] = std::move(tail);
  }
  enc.tau = Substitution(std::move(names), std::move(images));
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (substitute(enc.tau, enc.psi[a]) != enc.encode(s.image(static_cast<Letter>(a)))) {
      throw Error("EncodingMismatch", "tau(psi(a)) != psi(sigma(a)) for " + s.name(static_cast<Letter>(a)));
    }
  }
  return enc;
}

namespace {

Letter first_letter_power(const Substitution& s, Letter a, unsigned p) {
  for (unsigned k = 0; k < p; ++k) a = s.image(a).front();
  return a;
}

Letter last_letter_power(const Substitution& s, Letter a, unsigned p) {
  for (unsigned k = 0; k < p; ++k) a = s.image(a).back();
  return a;
}

unsigned power_bound(const Substitution& s) {
  auto n = static_cast<unsigned>(s.size()) + 1;
  return n * n;
}

bool subset(const WordSet& a, const WordSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end(), ShortLex{});
}

}  // namespace

std::vector<Component> minimal_components(const Substitution& s, std::size_t scale) {
  auto cls = classify_letters(s);
  const unsigned pmax = power_bound(s);
  std::vector<Letter> seeds;
  for (Letter a : cls.long_letters) {
    for (unsigned p = 1; p <= pmax; ++p) {
      if (first_letter_power(s, a, p) == a) {
        seeds.push_back(a);
        break;
      }
    }
  }
  std::vector<WordSet> langs;
  for (Letter a : seeds) langs.push_back(factor_language_from(s, {{a}}, scale).factors);

  std::vector<Component> groups;
  std::vector<WordSet> group_lang;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    bool placed = false;
    for (std::size_t g = 0; g < groups.size() && !placed; ++g) {
      if (group_lang[g] == langs[i]) {
        groups[g].seeds.push_back(seeds[i]);
        placed = true;
      }
    }
    if (!placed) {
      groups.push_back(Component{{seeds[i]}, {}, {}});
      group_lang.push_back(langs[i]);
    }
  }

  std::vector<Component> out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    bool minimal = true;
    for (std::size_t h = 0; h < groups.size() && minimal; ++h)
      if (h != g && group_lang[h] != group_lang[g] && subset(group_lang[h], group_lang[g])) minimal = false;
    if (!minimal) continue;
    Component c = groups[g];
    for (const Word& w : group_lang[g]) {
      if (w.size() != 2) continue;
      for (unsigned p = 1; p <= pmax; ++p) {
        if (last_letter_power(s, w[0], p) == w[0] && first_letter_power(s, w[1], p) == w[1]) {
          c.fixed_pairs.emplace_back(w[0], w[1]);
          c.pair_powers.push_back(p);
          break;
        }
      }
    }
    // length-2 factors come in shortlex order, which is the lexicographic order of pairs
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<std::size_t> ReturnWordSystem::index_of(const Word& w) const {
  auto it = std::find(vocabulary.begin(), vocabulary.end(), w);
  if (it == vocabulary.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vocabulary.begin());
}

namespace {

bool is_cut(const std::vector<std::pair<Letter, Letter>>& pairs, Letter r, Letter l) {
  return std::find(pairs.begin(), pairs.end(), std::make_pair(r, l)) != pairs.end();
}

// Positions q in (0, |w|) with (w[q-1], w[q]) one of the marked pairs.
std::vector<std::size_t> inner_cuts(const std::vector<std::pair<Letter, Letter>>& pairs, const Word& w) {
  std::vector<std::size_t> cuts;
  for (std::size_t q = 1; q < w.size(); ++q)
    if (is_cut(pairs, w[q - 1], w[q])) cuts.push_back(q);
  return cuts;
}

}  // namespace

ReturnWordSystem return_words(const Substitution& s, std::size_t scale) {
  ReturnWordSystem rs;
  rs.scale = scale;
  unsigned p = 1;
  for (const auto& c : minimal_components(s, std::max<std::size_t>(scale, 2))) {
    if (c.fixed_pairs.empty()) throw InputError("NoFixedPair", "a minimal component has no fixed pair");
    rs.pairs.push_back(c.fixed_pairs.front());
    p = std::lcm(p, c.pair_powers.front());
  }
  if (rs.pairs.empty()) throw InputError("NoFixedPair", "no minimal component found");
  rs.power = p;

  auto lang = factor_language(s, scale + 2);
  std::vector<Letter> lefts, rights;
  for (auto [r, l] : rs.pairs) {
    rights.push_back(r);
    lefts.push_back(l);
  }
  auto member = [&](const Word& w) {
    for (std::size_t i = 0; i < rs.pairs.size(); ++i) {
      if (w.front() != lefts[i]) continue;
      for (std::size_t j = 0; j < rs.pairs.size(); ++j) {
        if (w.back() != rights[j]) continue;
        Word x{rights[i]};
        x.insert(x.end(), w.begin(), w.end());
        x.push_back(lefts[j]);
        if (lang.contains(x)) return true;
      }
    }
    return false;
  };

  WordSet candidates;
  for (const Word& w : lang.factors) {
    if (w.size() > scale) break;
    if (inner_cuts(rs.pairs, w).empty() && member(w)) candidates.insert(w);
  }
  // a marked cut followed by scale+1 letters without another cut
  for (const Word& x : lang.factors) {
    if (x.size() != scale + 2) continue;
    Word y(x.begin() + 1, x.end());
    if (is_cut(rs.pairs, x[0], x[1]) && inner_cuts(rs.pairs, y).empty()) {
      throw ScaleError("ScaleTooSmall", "a return word is longer than " + std::to_string(scale));
    }
  }

  std::set<Word> seen;
  auto take = [&](const Word& w) {
    if (candidates.count(w) && seen.insert(w).second) rs.vocabulary.push_back(w);
  };
  const std::size_t want = std::max<std::size_t>(64, 8 * scale);
  for (Letter l : lefts) {
    Word x{l};
    for (int k = 0; k < 32 && x.size() < want; ++k) x = expand(s, x, p);
    // position 0 is a cut: the expansion is preceded by the matching r
    std::vector<std::size_t> cuts{0};
    for (auto q : inner_cuts(rs.pairs, x)) cuts.push_back(q);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      take(Word(x.begin() + static_cast<std::ptrdiff_t>(cuts[k]), x.begin() + static_cast<std::ptrdiff_t>(cuts[k + 1])));
    }
  }
  for (const Word& w : candidates) take(w);
  for (std::size_t i = 0; i < rs.vocabulary.size(); ++i) rs.names.push_back("v" + std::to_string(i + 1));
  return rs;
}

Substitution derivative_substitution(const ReturnWordSystem& rs, const Substitution& s) {
  std::vector<Word> images;
  for (const Word& w : rs.vocabulary) {
    Word x = expand(s, w, rs.power);
    std::vector<std::size_t> cuts{0};
    for (auto q : inner_cuts(rs.pairs, x)) cuts.push_back(q);
    cuts.push_back(x.size());
    Word img;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      Word piece(x.begin() + static_cast<std::ptrdiff_t>(cuts[k]), x.begin() + static_cast<std::ptrdiff_t>(cuts[k + 1]));
      auto idx = rs.index_of(piece);
      if (!idx) throw Error("DecompositionFailure", "piece " + s.format(piece) + " is not a known return word");
      img.push_back(static_cast<Letter>(*idx));
    }
    images.push_back(std::move(img));
  }
  return Substitution(rs.names, std::move(images));
}

ProperResult is_proper(const Substitution& s, unsigned p_max) {
  auto pairs = factor_language(s, 2).of_length(2);
  for (unsigned p = 1; p <= p_max; ++p) {
    bool ok = true;
    for (std::size_t a = 0; a < s.size() && ok; ++a) {
      std::set<Letter> firsts, lasts;
      for (const Word& w : pairs) {
        if (w[0] == static_cast<Letter>(a)) firsts.insert(first_letter_power(s, w[1], p));
        if (w[1] == static_cast<Letter>(a)) lasts.insert(last_letter_power(s, w[0], p));
      }
      ok = firsts.size() <= 1 && lasts.size() <= 1;
    }
    if (ok) return {true, p};
  }
  return {false, p_max};
}

namespace {

std::string letter_set(const Substitution& s, const std::vector<Letter>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + s.name(xs[i]);
  return out + "}";
}

bool primitive_block(const Substitution& s, const std::vector<Letter>& block) {
  std::size_t n = block.size();
  Matrix m(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (Letter b : s.image(block[i])) {
      auto it = std::find(block.begin(), block.end(), b);
      if (it != block.end()) m[i][static_cast<std::size_t>(it - block.begin())] = 1;
    }
  Matrix pw = m;
  const std::size_t wielandt = (n - 1) * (n - 1) + 1;
  for (std::size_t k = 1; k <= wielandt; ++k) {
    bool positive = true;
    for (auto& row : pw)
      for (auto& x : row) {
        x = x ? 1 : 0;
        positive = positive && x;
      }
    if (positive) return true;
    pw = multiply(pw, m);
  }
  return false;
}

}  // namespace

MPrimitiveResult is_m_primitive(const Substitution& s, std::size_t scale) {
  MPrimitiveResult res;
  res.scale = scale;
  const std::size_t n = s.size();
  auto reach = occurrence_reach(s);
  // bottom strongly connected components: everything reachable reaches back
  std::vector<bool> in_block(n, false);
  std::vector<bool> done(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    if (done[a]) continue;
    std::vector<Letter> scc{static_cast<Letter>(a)};
    for (std::size_t b = 0; b < n; ++b)
      if (b != a && reach[a][b] && reach[b][a]) scc.push_back(static_cast<Letter>(b));
    std::sort(scc.begin(), scc.end());
    for (Letter b : scc) done[b] = true;
    bool bottom = true;
    for (std::size_t b = 0; b < n && bottom; ++b)
      if (reach[a][b] && !reach[b][a]) bottom = false;
    if (!bottom) continue;
    if (scc.size() >= 2 && primitive_block(s, scc)) {
      res.blocks.push_back(scc);
      for (Letter b : scc) in_block[b] = true;
      continue;
    }
    // name the closed set generated by the first letter that falls into this component
    Letter c = scc.front();
    std::size_t origin = 0;
    while (!(origin == static_cast<std::size_t>(c) || reach[origin][c])) ++origin;
    std::vector<Letter> closure{static_cast<Letter>(origin)};
    for (std::size_t b = 0; b < n; ++b)
      if (b != origin && reach[origin][b]) closure.push_back(static_cast<Letter>(b));
    std::sort(closure.begin(), closure.end());
    res.reason = "block " + letter_set(s, closure) + " not primitive: ";
    if (static_cast<std::size_t>(c) != origin) {
      res.reason += s.name(c) + " never produces " + s.name(static_cast<Letter>(origin));
    } else {
      res.reason += "restricted incidence matrix has no strictly positive power";
    }
    return res;
  }
  for (std::size_t a = 0; a < n; ++a)
    if (!in_block[a]) res.extra.push_back(static_cast<Letter>(a));
  res.m_primitive = true;

  auto lang = factor_language(s, scale);
  res.language_stable = factor_language(power(s, 2), scale).factors == lang.factors &&
                        factor_language(power(s, 3), scale).factors == lang.factors;
  auto wide = factor_language(s, 2 * scale + 1);
  std::vector<bool> centred(n, false);
  for (const Word& w : wide.factors)
    if (w.size() == 2 * scale + 1) centred[w[scale]] = true;
  res.letters_extendable = std::all_of(centred.begin(), centred.end(), [](bool b) { return b; });
  return res;
}

DerivativeConstruction diagram_via_derivative(const Substitution& s, std::size_t scale, unsigned p_max) {
  DerivativeConstruction out;
  out.rs = return_words(s, scale);
  out.tau = derivative_substitution(out.rs, s);
  out.proper = is_proper(out.tau, p_max);
  if (!out.proper.proper) throw Error("NotProper", "derivative is not proper up to p = " + std::to_string(p_max));
  std::vector<std::uint64_t> counts;
  for (const Word& w : out.rs.vocabulary) counts.push_back(w.size());
  out.diagram = stationary_from_substitution(out.tau, std::move(counts));
  return out;
}

}  // namespace subdyn
