#include "subdyn/recognizability.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "subdyn/errors.hpp"

namespace subdyn {

std::vector<std::size_t> Tiling::cuts(std::size_t window_length) const {
  std::vector<std::size_t> out;
  for (auto p : starts) {
    if (p >= 0 && static_cast<std::size_t>(p) <= window_length) out.push_back(static_cast<std::size_t>(p));
  }
  if (tail == 0) out.push_back(window_length);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct TilingSearch {
  const Substitution& s;
  const FactorLanguage& lang;
  const Word& window;
  bool interior_only;
  std::vector<Tiling> found;
  Tiling cur;

  bool parent_ok() const { return cur.parent.size() > lang.cap || lang.contains(cur.parent); }

  void finish(std::size_t tail) {
    cur.tail = tail;
    found.push_back(cur);
    cur.tail = 0;
  }

  void extend(std::size_t pos) {
    std::size_t n = window.size();
    if (pos == n) {
      finish(0);
      return;
    }
    for (std::size_t b = 0; b < s.size(); ++b) {
      const Word& img = s.image(static_cast<Letter>(b));
      std::size_t take = std::min(img.size(), n - pos);
      if (take < img.size() && interior_only) continue;
      if (!std::equal(img.begin(), img.begin() + take, window.begin() + pos)) continue;
      cur.parent.push_back(static_cast<Letter>(b));
      cur.starts.push_back(static_cast<std::ptrdiff_t>(pos));
      if (parent_ok()) {
        if (take < img.size()) {
          finish(img.size() - take);
        } else {
          extend(pos + take);
        }
      }
      cur.parent.pop_back();
      cur.starts.pop_back();
    }
  }

  void run() {
    std::size_t n = window.size();
    for (std::size_t a = 0; a < s.size(); ++a) {
      const Word& img = s.image(static_cast<Letter>(a));
      std::size_t last_offset = interior_only ? 1 : img.size();
      for (std::size_t off = 0; off < last_offset; ++off) {
        std::size_t avail = img.size() - off;
        std::size_t take = std::min(avail, n);
        if (take < avail && interior_only) continue;
        if (!std::equal(img.begin() + off, img.begin() + off + take, window.begin())) continue;
        cur = Tiling{};
        cur.parent = {static_cast<Letter>(a)};
        cur.offset = off;
        cur.starts = {-static_cast<std::ptrdiff_t>(off)};
        if (!parent_ok()) continue;
        if (take < avail) {
          finish(avail - take);
        } else {
          extend(take);
        }
      }
    }
  }
};

}  // namespace

std::vector<Tiling> one_word_tilings(const Substitution& s, const FactorLanguage& lang,
                                     const Word& window, bool interior_only) {
  if (window.empty()) return {};
  TilingSearch search{s, lang, window, interior_only, {}, {}};
  search.run();
  auto& out = search.found;
  std::size_t n = window.size();
  std::sort(out.begin(), out.end(), [n](const Tiling& x, const Tiling& y) {
    return std::make_tuple(x.cuts(n), x.parent, x.offset) < std::make_tuple(y.cuts(n), y.parent, y.offset);
  });
  return out;
}

std::vector<Tiling> one_word_tilings(const Substitution& s, const Word& window, bool interior_only) {
  return one_word_tilings(s, factor_language(s, std::max<std::size_t>(window.size(), 1)), window,
                          interior_only);
}

namespace {

// One surviving parse, truncated at some level: the word at that level and
// its tiles in window coordinates.
struct ParseState {
  Word word;
  std::vector<ParseTile> tiles;
  std::vector<std::vector<ParseTile>> history;  // tiles per level, level 0 first
  std::vector<std::pair<Letter, std::size_t>> centers;  // (y_k, i_k), k >= 1
};

constexpr std::size_t kMaxStates = 1u << 14;

InteriorView interior_view(const std::vector<ParseTile>& tiles, const std::pair<Letter, std::size_t>& center,
                           std::ptrdiff_t lo, std::ptrdiff_t hi, std::ptrdiff_t n) {
  InteriorView v;
  v.center_letter = center.first;
  v.center_offset = center.second;
  for (const auto& t : tiles) {
    for (auto p : {t.begin, t.end})
      if (p >= lo && p <= hi) v.cuts.push_back(p);
    if (t.end > lo && t.begin < hi && t.begin >= 0 && t.end <= n) v.tiles.push_back(t);
  }
  std::sort(v.cuts.begin(), v.cuts.end());
  v.cuts.erase(std::unique(v.cuts.begin(), v.cuts.end()), v.cuts.end());
  return v;
}

RecognitionResult recognize_impl(const Substitution& s, const FactorLanguage& lang, const Word& window,
                                 unsigned levels) {
  const auto n = static_cast<std::ptrdiff_t>(window.size());
  const auto clip = static_cast<std::ptrdiff_t>(norms(s, 1).second) - 1;
  if (window.empty() || n - 2 * clip * static_cast<std::ptrdiff_t>(levels) <= 0) {
    throw ScaleError("WindowTooShort", "interior core is empty after " + std::to_string(levels) +
                                           " rounds of clipping " + std::to_string(clip) + " letters");
  }
  const std::ptrdiff_t center = n / 2;

  ParseState base;
  base.word = window;
  for (std::ptrdiff_t p = 0; p < n; ++p) base.tiles.push_back({window[p], p, p + 1});
  base.history.push_back(base.tiles);
  std::vector<ParseState> states{base};

  for (unsigned k = 1; k <= levels; ++k) {
    auto prev_len = image_lengths(s, k - 1);
    auto len = image_lengths(s, k);
    std::vector<ParseState> next;
    for (const auto& st : states) {
      for (const auto& t : one_word_tilings(s, lang, st.word, false)) {
        ParseState ns;
        ns.word = t.parent;
        ns.history = st.history;
        ns.centers = st.centers;
        for (std::size_t m = 0; m < t.parent.size(); ++m) {
          Letter y = t.parent[m];
          std::ptrdiff_t first = t.starts[m];
          std::ptrdiff_t begin;
          if (first >= 0) {
            begin = st.tiles[first].begin;
          } else {
            begin = st.tiles[0].begin;
            for (std::ptrdiff_t q = 0; q < -first; ++q) begin -= static_cast<std::ptrdiff_t>(prev_len[s.image(y)[q]]);
          }
          ParseTile tile{y, begin, begin + static_cast<std::ptrdiff_t>(len[y])};
          ns.tiles.push_back(tile);
          if (tile.begin <= center && center < tile.end) {
            std::size_t child = 0;
            while (!(st.tiles[child].begin <= center && center < st.tiles[child].end)) ++child;
            ns.centers.emplace_back(y, static_cast<std::size_t>(static_cast<std::ptrdiff_t>(child) - first));
          }
        }
        ns.history.push_back(ns.tiles);
        next.push_back(std::move(ns));
        if (next.size() > kMaxStates) break;
      }
      if (next.size() > kMaxStates) break;
    }
    if (next.empty()) {
      throw InputError("NoParse", "window admits no " + std::to_string(k) + "-fold parse");
    }
    states = std::move(next);

    std::ptrdiff_t lo = clip * k;
    std::ptrdiff_t hi = n - clip * k;
    std::set<InteriorView> variants;
    for (const auto& st : states) variants.insert(interior_view(st.tiles, st.centers.back(), lo, hi, n));
    if (variants.size() > 1 || states.size() > kMaxStates) {
      AmbiguityReport rep;
      rep.level = k;
      rep.interior_begin = lo;
      rep.interior_end = hi;
      rep.variants.assign(variants.begin(), variants.end());
      return rep;
    }
  }

  // every surviving parse agrees on each level's interior; any one will do
  const ParseState& st = states.front();
  ParseChain chain;
  chain.window_length = window.size();
  chain.center = static_cast<std::size_t>(center);
  for (unsigned k = 0; k <= levels; ++k) {
    ParseLevel lvl;
    lvl.level = k;
    lvl.interior_begin = clip * k;
    lvl.interior_end = n - clip * k;
    auto c = k == 0 ? std::make_pair(window[center], std::size_t{0}) : st.centers[k - 1];
    lvl.view = interior_view(st.history[k], c, lvl.interior_begin, lvl.interior_end, n);
    for (const auto& t : st.history[k])
      if (t.end > 0 && t.begin < n) lvl.all_tiles.push_back(t);
    chain.levels.push_back(std::move(lvl));
  }
  return chain;
}

}  // namespace

RecognitionResult recognize_window(const Substitution& s, const Word& window, unsigned levels) {
  return recognize_impl(s, factor_language(s, std::max<std::size_t>(window.size(), 1)), window, levels);
}

Recognizer::Recognizer(Substitution s, std::size_t max_window)
    : s_(std::move(s)), lang_(factor_language(s_, std::max<std::size_t>(max_window, 1))) {}

RecognitionResult Recognizer::recognize(const Word& window, unsigned levels) const {
  if (window.size() > lang_.cap) {
    throw InputError("WindowTooLong", "recognizer was built for windows of at most " +
                                          std::to_string(lang_.cap) + " letters");
  }
  return recognize_impl(s_, lang_, window, levels);
}

TowerTable kr_tower_heights(const Substitution& s, unsigned n) {
  TowerTable t;
  t.level = n;
  auto lang = factor_language(s, 3);
  auto len = image_lengths(s, n);
  for (const Word& w : lang.of_length(1)) t.heights[w[0]] = len[w[0]];
  return t;
}

}  // namespace subdyn
