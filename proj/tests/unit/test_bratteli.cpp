#include <catch_amalgamated.hpp>

#include <algorithm>

#include "subdyn/bratteli.hpp"
#include "subdyn/constructions.hpp"
#include "subdyn/errors.hpp"
#include "support.hpp"

using namespace subdyn;
using namespace testing_support;

namespace {

std::vector<std::uint64_t> random_counts(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint64_t> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(1 + rng() % 3);
  return c;
}

// Paths compared at the largest index where they differ, by edge order.
bool lex_less(const OrderedDiagram& d, const FinitePath& x, const FinitePath& y) {
  for (std::size_t k = x.edges.size(); k >= 1; --k) {
    if (x.edges[k - 1] == y.edges[k - 1]) continue;
    return d.edges[k][x.edges[k - 1]].order < d.edges[k][y.edges[k - 1]].order;
  }
  return false;
}

// Number of paths from the top to each vertex of level n, by dynamic programming.
std::vector<std::uint64_t> count_paths(const OrderedDiagram& d, std::size_t n) {
  std::vector<std::uint64_t> cnt{1};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::uint64_t> next(d.levels[k].size(), 0);
    for (const Edge& e : d.edges[k]) next[e.range] += cnt[e.source];
    cnt = std::move(next);
  }
  return cnt;
}

bool has_kind(const std::vector<Violation>& vs, const std::string& kind) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_CASE("reading a stationary diagram returns its substitution") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = random_substitution(rng);
    auto d = stationary_from_substitution(s, random_counts(rng, s.size()));
    CHECK(read_substitution(d) == s);
    auto u = d.unroll(4);
    // only letters missing from every image may lack outgoing edges
    for (const auto& v : validate(u)) {
      CHECK(v.kind == "no-outgoing");
      bool used = false;
      for (std::size_t a = 0; a < s.size(); ++a)
        for (Letter b : s.image(static_cast<Letter>(a))) used = used || static_cast<std::size_t>(b) == v.index;
      CHECK_FALSE(used);
    }
    for (std::size_t n = 2; n <= 4; ++n) CHECK(read_substitution(u, n) == s);
  }
}

TEST_CASE("top counts are checked") {
  auto s = chacon();
  CHECK_THROWS_AS(stationary_from_substitution(s, {1, 1}), InputError);
  CHECK_THROWS_AS(stationary_from_substitution(s, {1, 0, 1}), InputError);
}

TEST_CASE("validation reports broken diagrams") {
  auto d = odometer(2).unroll(2);
  CHECK(validate(d).empty());

  auto no_in = d;
  no_in.levels[2].push_back("w");
  CHECK(has_kind(validate(no_in), "no-incoming"));

  auto dup = d;
  dup.edges[1][1].order = 0;
  CHECK(has_kind(validate(dup), "order-not-total"));

  auto bad = d;
  bad.edges[2][0].source = 7;
  CHECK(has_kind(validate(bad), "bad-vertex"));

  auto dangling = d;
  dangling.levels[1].push_back("w");
  dangling.edges[1].push_back({0, 0, 1, 0});
  CHECK(has_kind(validate(dangling), "no-outgoing"));
}

TEST_CASE("path enumeration: order, uniqueness and count") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = random_substitution(rng, 3, 3);
    auto d = stationary_from_substitution(s, random_counts(rng, s.size()));
    auto u = d.unroll(4);
    auto m = incidence_matrix(s);
    // h_1 = counts, h_n(a) = sum_b M(a, b) h_{n-1}(b)
    std::vector<std::uint64_t> h = d.top_counts;
    for (std::size_t n = 1; n <= 4; ++n) {
      if (n > 1) {
        std::vector<std::uint64_t> next(s.size(), 0);
        for (std::size_t a = 0; a < s.size(); ++a)
          for (std::size_t b = 0; b < s.size(); ++b) next[a] += m[a][b] * h[b];
        h = next;
      }
      for (std::size_t v = 0; v < s.size(); ++v) {
        auto paths = enumerate_paths(u, n, v);
        CHECK(paths.size() == h[v]);
        for (std::size_t k = 1; k < paths.size(); ++k) CHECK(lex_less(u, paths[k - 1], paths[k]));
        for (const auto& p : paths) CHECK(is_valid_path(u, p));
        CHECK(paths.front() == minimal_path(u, n, v));
        CHECK(paths.back() == maximal_path(u, n, v));
      }
    }
  }
}

TEST_CASE("successor walks every path once, predecessor walks back") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    auto d = random_diagram(rng, 1 + rng() % 5);
    REQUIRE(validate(d).empty());
    std::size_t n = d.depth();
    auto counts = count_paths(d, n);
    for (std::size_t v = 0; v < d.levels[n].size(); ++v) {
      auto all = enumerate_paths(d, n, v);
      CHECK(all.size() == counts[v]);
      FinitePath p = minimal_path(d, n, v);
      CHECK(is_minimal(d, p));
      std::vector<FinitePath> seen{p};
      while (auto next = vershik_successor(d, p)) {
        CHECK(vershik_predecessor(d, *next) == p);
        p = *next;
        seen.push_back(p);
      }
      CHECK(is_maximal(d, p));
      CHECK(seen == all);
      CHECK_FALSE(vershik_predecessor(d, minimal_path(d, n, v)).has_value());
    }
  }
}

TEST_CASE("extremal paths follow the first and last letter cycles") {
  auto dc = diagram_via_derivative(chacon());
  auto ext = extremal_paths(dc.diagram);
  REQUIRE(ext.minimal.size() == 1);
  REQUIRE(ext.maximal.size() == 1);
  CHECK(ext.minimal[0].period == Word{0});
  CHECK(ext.maximal[0].period == Word{1});

  auto tm = stationary_from_substitution(thue_morse(), {1, 1});
  auto e = extremal_paths(tm);
  CHECK(e.minimal.size() == 2);
  CHECK(e.maximal.size() == 2);
  auto u = tm.unroll(5);
  for (const auto& m : e.minimal) CHECK(is_minimal(u, extremal_truncation(tm, u, m, false, 5)));
  for (const auto& m : e.maximal) CHECK(is_maximal(u, extremal_truncation(tm, u, m, true, 5)));
}

TEST_CASE("telescoping composes paths in lexicographic order") {
  auto d = stationary_from_substitution(chacon(), {1, 1, 1}).unroll(4);
  auto t = telescope(d, {2, 4});
  REQUIRE(t.depth() == 2);
  CHECK(validate(t).empty());
  CHECK(count_paths(t, 2) == count_paths(d, 4));
  CHECK(count_paths(t, 1) == count_paths(d, 2));
  // orbit coding at the kept levels is unchanged
  auto a = vershik_orbit_coding(d, minimal_path(d, 4, 0), 40, 2);
  auto b = vershik_orbit_coding(t, minimal_path(t, 2, 0), 40, 1);
  CHECK(a.labels == b.labels);
  CHECK(a.ranks == b.ranks);
  CHECK_THROWS_AS(telescope(d, {}), InputError);
  CHECK_THROWS_AS(telescope(d, {3, 2}), InputError);
}

TEST_CASE("finite orbit coding stops at the maximal path") {
  auto d = odometer(2).unroll(3);
  auto c = vershik_orbit_coding(d, minimal_path(d, 3, 0), 8, 3);
  CHECK(c.ranks == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK_THROWS_AS(vershik_orbit_coding(d, minimal_path(d, 3, 0), 9, 3), Error);
}

TEST_CASE("odometer orbit counts in binary") {
  auto od = odometer(2);
  auto codings = vershik_orbit_codings(od, FinitePath{}, 64, 4);
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t t = 0; t < 64; ++t) CHECK(codings[k - 1].ranks[t] == t % (std::size_t{1} << k));
}

TEST_CASE("walker steps are invertible") {
  auto dc = diagram_via_derivative(chacon()).diagram;
  StationaryWalker w(dc, FinitePath{});
  w.ensure_depth(3);
  std::vector<std::pair<std::size_t, std::size_t>> forward;
  for (int t = 0; t < 200; ++t) {
    forward.emplace_back(w.label(3), w.rank(3));
    w.forward();
  }
  for (int t = 199; t >= 0; --t) {
    w.backward();
    CHECK(std::make_pair(w.label(3), w.rank(3)) == forward[static_cast<std::size_t>(t)]);
  }
}

TEST_CASE("an unassigned wrap-around is reported") {
  // a -> a pins every extension of a to a single edge
  auto s = parse_substitution("a -> a\nb -> ab");
  auto d = stationary_from_substitution(s, {1, 1});
  auto u = d.unroll(1);
  auto start = minimal_path(u, 1, 0);
  CHECK_THROWS_AS(vershik_orbit_coding(d, start, 3, 1), Error);
  MaxToMin table{{0, 0}, {1, 0}};
  CHECK_NOTHROW(vershik_orbit_coding(d, start, 3, 1, table));
}

TEST_CASE("DOT export") {
  auto u = odometer(2).unroll(2);
  auto dot = export_dot(u);
  CHECK(dot ==
        "digraph bratteli {\n"
        "  \"L0_v0\";\n"
        "  \"L1_v\";\n"
        "  \"L2_v\";\n"
        "  \"L0_v0\" -> \"L1_v\" [label=\"0\"];\n"
        "  \"L0_v0\" -> \"L1_v\" [label=\"1\"];\n"
        "  \"L1_v\" -> \"L2_v\" [label=\"0\"];\n"
        "  \"L1_v\" -> \"L2_v\" [label=\"1\"];\n"
        "}\n");
  CHECK(export_dot(u) == dot);
}
