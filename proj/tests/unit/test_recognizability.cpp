#include <catch_amalgamated.hpp>

#include <algorithm>

#include "subdyn/errors.hpp"
#include "subdyn/recognizability.hpp"
#include "support.hpp"

using namespace subdyn;
using namespace testing_support;

namespace {

// Rebuilds the window from a tiling's clipped images.
Word reassemble(const Substitution& s, const Tiling& t) {
  Word out;
  for (Letter y : t.parent) {
    const Word& img = s.image(y);
    out.insert(out.end(), img.begin(), img.end());
  }
  out.erase(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(t.offset));
  out.resize(out.size() - t.tail);
  return out;
}

std::set<RawTiling> as_raw(const std::vector<Tiling>& ts) {
  std::set<RawTiling> out;
  for (const auto& t : ts) out.insert({t.parent, t.offset, t.tail});
  return out;
}

}  // namespace

TEST_CASE("one-word tilings: worked examples") {
  auto s = chacon();
  auto a = one_word_tilings(s, s.parse_word("00s0"), true);
  REQUIRE(a.size() == 1);
  CHECK(s.format(a[0].parent) == "0");
  CHECK(a[0].offset == 0);

  auto b = one_word_tilings(s, s.parse_word("00s000s0s00s0"), true);
  REQUIRE(b.size() == 1);
  CHECK(s.format(b[0].parent) == "00s0");

  // the language of an identity substitution is its alphabet
  auto id = parse_substitution("a -> a\nb -> b\nc -> c");
  auto c = one_word_tilings(id, id.parse_word("b"), false);
  REQUIRE(c.size() == 1);
  CHECK(id.format(c[0].parent) == "b");
  CHECK(c[0].offset == 0);
  CHECK(one_word_tilings(id, id.parse_word("ab"), false).empty());
}

TEST_CASE("one-word tilings reassemble the window") {
  auto s = chacon();
  Word big = expand(s, {0}, 5);
  for (std::size_t start = 0; start + 15 <= big.size(); start += 7) {
    Word window(big.begin() + static_cast<std::ptrdiff_t>(start), big.begin() + static_cast<std::ptrdiff_t>(start + 15));
    auto ts = one_word_tilings(s, window, false);
    CHECK_FALSE(ts.empty());
    for (const auto& t : ts) {
      CHECK(reassemble(s, t) == window);
      CHECK(t.offset < s.image(t.parent.front()).size());
    }
  }
}

TEST_CASE("one-word tilings agree with a cut-placement oracle") {
  std::mt19937_64 rng(21);
  int compared = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto s = random_substitution(rng, 3, 4);
    auto lang = factor_language(s, 12);
    std::vector<Word> windows;
    for (std::size_t len = 1; len <= 12; ++len) {
      auto words = lang.of_length(len);
      if (!words.empty()) windows.push_back(words[rng() % words.size()]);
      Word noise;
      for (std::size_t i = 0; i < len; ++i) noise.push_back(static_cast<Letter>(rng() % s.size()));
      windows.push_back(noise);
    }
    for (const Word& window : windows) {
      std::set<RawTiling> expected;
      std::set<RawTiling> expected_interior;
      for (const auto& t : raw_tilings(s, window)) {
        if (!lang.contains(t.parent)) continue;
        expected.insert(t);
        if (t.offset == 0 && t.tail == 0) expected_interior.insert(t);
      }
      CHECK(as_raw(one_word_tilings(s, lang, window, false)) == expected);
      CHECK(as_raw(one_word_tilings(s, lang, window, true)) == expected_interior);
      ++compared;
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE("tilings come out in a deterministic order") {
  auto s = chacon();
  Word window = s.parse_word("0s00s0");
  auto a = one_word_tilings(s, window, false);
  auto b = one_word_tilings(s, window, false);
  CHECK(a == b);
  for (std::size_t k = 1; k < a.size(); ++k) CHECK(a[k - 1].cuts(window.size()) <= a[k].cuts(window.size()));
}

TEST_CASE("recognition of a doubling window is ambiguous") {
  auto s = parse_substitution("a -> aa");
  auto r = recognize_window(s, s.parse_word("aaaa"), 1);
  REQUIRE(std::holds_alternative<AmbiguityReport>(r));
  CHECK(std::get<AmbiguityReport>(r).variants.size() == 2);
}

TEST_CASE("recognition under the identity keeps every offset at zero") {
  auto s = parse_substitution("a -> a\nb -> b\nc -> c");
  for (unsigned k = 1; k <= 3; ++k) {
    auto r = recognize_window(s, s.parse_word("c"), k);
    REQUIRE(std::holds_alternative<ParseChain>(r));
    for (const auto& lvl : std::get<ParseChain>(r).levels) CHECK(lvl.view.center_offset == 0);
  }
}

TEST_CASE("recognition needs an interior") {
  auto s = chacon();
  CHECK_THROWS_AS(recognize_window(s, s.parse_word("00s0"), 1), ScaleError);
  CHECK_THROWS_AS(recognize_window(s, Word{}, 1), ScaleError);
  auto id = parse_substitution("a -> a\nb -> b");
  CHECK_THROWS_AS(recognize_window(id, id.parse_word("ab"), 1), InputError);
}

TEST_CASE("Chacon windows have unique depth-3 chains that refine level by level") {
  auto s = chacon();
  Recognizer rec(s, 65);
  for (Letter a : {0, 2}) {
    Word big = expand(s, {a}, 6);
    for (std::size_t start = 0; start + 65 <= big.size(); start += 23) {
      Word window(big.begin() + static_cast<std::ptrdiff_t>(start), big.begin() + static_cast<std::ptrdiff_t>(start + 65));
      auto r = rec.recognize(window, 3);
      REQUIRE(std::holds_alternative<ParseChain>(r));
      const auto& chain = std::get<ParseChain>(r);
      REQUIRE(chain.levels.size() == 4);
      for (std::size_t k = 1; k < chain.levels.size(); ++k) {
        const auto& fine = chain.levels[k - 1].view.cuts;
        for (auto c : chain.levels[k].view.cuts)
          CHECK(std::find(fine.begin(), fine.end(), c) != fine.end());
        // every level-k tile splits into the images of its letter
        for (const auto& t : chain.levels[k].all_tiles) {
          CHECK(t.end - t.begin == static_cast<std::ptrdiff_t>(image_lengths(s, static_cast<unsigned>(k))[t.letter]));
        }
      }
    }
  }
}

TEST_CASE("tower heights") {
  auto s = chacon();
  auto t1 = kr_tower_heights(s, 1);
  CHECK(t1.heights == std::map<Letter, std::uint64_t>{{0, 4}, {1, 1}, {2, 4}});
  auto t0 = kr_tower_heights(s, 0);
  for (const auto& [a, h] : t0.heights) CHECK(h == 1);
  auto t2 = kr_tower_heights(s, 2);
  CHECK(t2.heights == std::map<Letter, std::uint64_t>{{0, 13}, {1, 1}, {2, 16}});
  CHECK(t2.level == 2);
}
