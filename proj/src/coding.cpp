#include "subdyn/coding.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <unordered_map>

#include "subdyn/errors.hpp"

namespace subdyn {

std::size_t JSymbol::width() const {
  if (rows.empty() || rows.back().empty()) return 0;
  return static_cast<std::size_t>(rows.back().back().end - rows.front().front().begin);
}

JSymbol build_j_symbol(const Substitution& s, Letter base, std::size_t j) {
  std::vector<std::vector<std::uint64_t>> len;
  for (std::size_t k = 0; k <= j; ++k) len.push_back(image_lengths(s, static_cast<unsigned>(k)));
  JSymbol out;
  out.base = s.name(base);
  out.level = j;
  std::vector<Row> rows(j + 1);
  rows[j].push_back({s.name(base), 0, static_cast<std::ptrdiff_t>(len[j][base])});
  for (std::size_t i = j; i-- > 0;) {
    for (const Box& box : rows[i + 1]) {
      Letter b = *s.find(box.label);
      std::ptrdiff_t at = box.begin;
      for (Letter c : s.image(b)) {
        auto w = static_cast<std::ptrdiff_t>(len[i][c]);
        rows[i].push_back({s.name(c), at, at + w});
        at += w;
      }
    }
  }
  out.rows = std::move(rows);
  return out;
}

JSymbol build_j_symbol(const StationaryDiagram& d, Letter base, std::size_t j) {
  if (j == 0) throw InputError("BadLevel", "diagram symbols start at level 1");
  const Substitution& r = d.read_rule;
  std::vector<std::vector<std::uint64_t>> h(j + 1, std::vector<std::uint64_t>(r.size(), 0));
  for (std::size_t a = 0; a < r.size(); ++a) h[1][a] = d.top_counts[a];
  for (std::size_t k = 2; k <= j; ++k)
    for (std::size_t a = 0; a < r.size(); ++a)
      for (Letter c : r.image(static_cast<Letter>(a))) h[k][a] += h[k - 1][c];

  JSymbol out;
  out.base = r.name(base);
  out.level = j;
  out.rows.resize(j + 1);
  out.rows[j].push_back({r.name(base), 0, static_cast<std::ptrdiff_t>(h[j][base])});
  for (std::size_t i = j; i-- > 1;) {
    for (const Box& box : out.rows[i + 1]) {
      std::ptrdiff_t at = box.begin;
      for (Letter c : r.image(*r.find(box.label))) {
        auto w = static_cast<std::ptrdiff_t>(h[i][c]);
        out.rows[i].push_back({r.name(c), at, at + w});
        at += w;
      }
    }
  }
  for (const Box& box : out.rows[1])
    for (std::ptrdiff_t p = box.begin; p < box.end; ++p) out.rows[0].push_back({"v0", p, p + 1});
  return out;
}

std::vector<std::ptrdiff_t> JWindow::cuts(std::size_t i) const {
  std::vector<std::ptrdiff_t> out;
  for (const Box& b : rows.at(i))
    if (b.begin >= begin && b.begin < end) out.push_back(b.begin);
  return out;
}

std::vector<std::string> JWindow::column_labels(std::size_t i) const {
  std::vector<std::string> out;
  for (const Box& b : rows.at(i))
    for (std::ptrdiff_t p = std::max(b.begin, begin); p < std::min(b.end, end); ++p) out.push_back(b.label);
  return out;
}

JWindow JWindow::project(std::size_t i) const {
  JWindow out{begin, end, {}};
  out.rows.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(std::min(i + 1, rows.size())));
  return out;
}

JWindow window_from_parse(const Substitution& s, const ParseChain& chain, std::size_t radius) {
  const auto n = static_cast<std::ptrdiff_t>(chain.window_length);
  const auto c = static_cast<std::ptrdiff_t>(chain.center);
  const auto r = static_cast<std::ptrdiff_t>(radius);
  const ParseLevel& deepest = chain.levels.back();
  if (c - r < deepest.interior_begin || c + r + 1 > deepest.interior_end) {
    throw ScaleError("WindowTooShort", "radius " + std::to_string(radius) + " leaves the recognized interior [" +
                                           std::to_string(deepest.interior_begin) + ", " +
                                           std::to_string(deepest.interior_end) + ")");
  }
  JWindow out{-r, r + 1, {}};
  for (const ParseLevel& lvl : chain.levels) {
    Row row;
    for (const ParseTile& t : lvl.all_tiles) {
      if (t.end <= c - r || t.begin > c + r) continue;
      bool holds_center = t.begin <= c && c < t.end;
      if (!holds_center && (t.begin < 0 || t.end > n)) {
        throw ScaleError("WindowTooShort", "a level-" + std::to_string(lvl.level) +
                                               " box meeting the span is not determined by the window");
      }
      row.push_back({s.name(t.letter), t.begin - c, t.end - c});
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

namespace {

// Per-column orbit data for levels 1..J.
struct Columns {
  std::vector<std::vector<std::size_t>> labels;  // labels[k-1][t]
  std::vector<std::vector<std::size_t>> ranks;
  std::vector<FinitePath> paths;

  explicit Columns(std::size_t levels) : labels(levels), ranks(levels) {}

  void record(StationaryWalker& w, bool keep_path) {
    for (std::size_t k = 1; k <= labels.size(); ++k) {
      labels[k - 1].push_back(w.label(k));
      ranks[k - 1].push_back(w.rank(k));
    }
    if (keep_path) paths.push_back(w.path());
  }
};

// Rows 0..J of the columns [first, last], placed so that column `origin`
// becomes coordinate 0.
JWindow window_of(const StationaryDiagram& d, StationaryWalker& w, const Columns& cols, std::size_t first,
                  std::size_t last, std::size_t origin) {
  const auto o = static_cast<std::ptrdiff_t>(origin);
  JWindow out{static_cast<std::ptrdiff_t>(first) - o, static_cast<std::ptrdiff_t>(last) + 1 - o, {}};
  Row top;
  for (std::ptrdiff_t p = out.begin; p < out.end; ++p) top.push_back({"v0", p, p + 1});
  out.rows.push_back(std::move(top));
  for (std::size_t k = 1; k <= cols.labels.size(); ++k) {
    Row row;
    for (std::size_t t = first; t <= last; ++t) {
      if (t != first && cols.ranks[k - 1][t] != 0) continue;
      std::size_t a = cols.labels[k - 1][t];
      auto begin = static_cast<std::ptrdiff_t>(t) - o - static_cast<std::ptrdiff_t>(cols.ranks[k - 1][t]);
      row.push_back({d.read_rule.name(static_cast<Letter>(a)), begin,
                     begin + static_cast<std::ptrdiff_t>(w.height(k, a))});
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

JWindow orbit_window(const StationaryDiagram& d, const FinitePath& start, std::size_t j, std::size_t radius,
                     const std::optional<MaxToMin>& assignment) {
  StationaryWalker w(d, start, assignment);
  w.ensure_depth(j);
  for (std::size_t t = 0; t < radius; ++t) w.backward();
  Columns cols(j);
  for (std::size_t t = 0; t <= 2 * radius; ++t) {
    cols.record(w, false);
    if (t < 2 * radius) w.forward();
  }
  return window_of(d, w, cols, 0, 2 * radius, radius);
}

Compatibility depth_and_cuts(const JWindow& x, const JWindow& y) {
  if (x.begin != y.begin || x.end != y.end || x.rows.size() != y.rows.size() || x.rows.empty()) {
    throw InputError("SpanMismatch", "windows must share span and row count");
  }
  Compatibility out;
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    if (x.rows[i] != y.rows[i]) break;
    out.depth = i;
  }
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    auto cx = x.cuts(i);
    auto cy = y.cuts(i);
    std::vector<std::ptrdiff_t> both;
    std::set_intersection(cx.begin(), cx.end(), cy.begin(), cy.end(), std::back_inserter(both));
    out.common_cuts.push_back(std::move(both));
  }
  return out;
}

std::optional<Periodicity> eventually_periodic_check(const std::vector<std::string>& row, std::size_t n0,
                                                     std::size_t m_max) {
  if (row.size() <= n0 + 2 * m_max) {
    throw ScaleError("WindowTooShort", "row of length " + std::to_string(row.size()) + " cannot test periods up to " +
                                           std::to_string(m_max) + " beyond " + std::to_string(n0));
  }
  for (std::size_t m = 1; m <= m_max; ++m) {
    bool ok = true;
    for (std::size_t n = n0; n + m < row.size() && ok; ++n) ok = row[n + m] == row[n];
    if (ok) return Periodicity{n0, m};
  }
  return std::nullopt;
}

FinitePath shift_down(const StationaryDiagram& d, const FinitePath& x) {
  if (x.edges.size() < 2) throw InputError("BadPath", "shift_down needs a path through level 2");
  OrderedDiagram u = d.unroll(2);
  std::size_t b = u.edges[2][x.edges[1]].source;
  FinitePath y = minimal_path(u, 2, b);
  y.edges.insert(y.edges.end(), x.edges.begin() + 1, x.edges.end());
  return y;
}

namespace {

std::optional<CompatiblePair> scan_orbit(const StationaryDiagram& d, std::size_t i, std::size_t radius,
                                         std::size_t budget, std::size_t& examined) {
  const std::size_t levels = i + 1;
  const std::size_t span = 2 * radius + 1;
  const std::size_t total = budget + span - 1;
  StationaryWalker w(d, FinitePath{});
  w.ensure_depth(levels);
  Columns cols(levels);
  for (std::size_t t = 0; t < total; ++t) {
    cols.record(w, true);
    if (t + 1 < total) w.forward();
  }

  auto same_rows = [&](std::size_t p, std::size_t q) {
    for (std::size_t k = 0; k < i; ++k) {
      if (!std::equal(cols.labels[k].begin() + p, cols.labels[k].begin() + p + span, cols.labels[k].begin() + q) ||
          !std::equal(cols.ranks[k].begin() + p, cols.ranks[k].begin() + p + span, cols.ranks[k].begin() + q)) {
        return false;
      }
    }
    return true;
  };
  auto hash_rows = [&](std::size_t p) {
    std::uint64_t h = 14695981039346656037ULL;
    for (std::size_t k = 0; k < i; ++k) {
      for (std::size_t t = p; t < p + span; ++t) {
        h = (h ^ cols.labels[k][t]) * 1099511628211ULL;
        h = (h ^ cols.ranks[k][t]) * 1099511628211ULL;
      }
    }
    return h;
  };

  // windows are indexed by their first column; the center sits `radius` later
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  examined = 0;
  for (std::size_t p = 0; p + span <= total && examined < budget; ++p) {
    ++examined;
    auto& bucket = seen[hash_rows(p)];
    bool duplicate = false;
    for (std::size_t q : bucket) {
      if (!same_rows(q, p)) continue;
      std::size_t cq = q + radius;
      std::size_t cp = p + radius;
      if (cols.labels[i][cq] != cols.labels[i][cp] || cols.ranks[i][cq] != cols.ranks[i][cp]) {
        CompatiblePair pair;
        pair.x = cols.paths[cq];
        pair.y = cols.paths[cp];
        pair.wx = window_of(d, w, cols, q, q + span - 1, cq);
        pair.wy = window_of(d, w, cols, p, p + span - 1, cp);
        pair.depth = depth_and_cuts(pair.wx, pair.wy).depth.value_or(0);
        return pair;
      }
      duplicate = true;
      break;
    }
    if (!duplicate) bucket.push_back(p);
  }
  return std::nullopt;
}

}  // namespace

ExpansivenessResult expansiveness_witness_search(const StationaryDiagram& d, std::size_t i, std::size_t radius,
                                                 std::size_t budget) {
  if (i == 0) throw InputError("BadLevel", "compatibility level must be positive");
  ExpansivenessResult out;
  out.level = i;
  out.radius = radius;
  out.budget = budget;
  out.witness = scan_orbit(d, i, radius, budget, out.pairs_examined);
  if (i >= 2) {
    std::size_t ignored = 0;
    auto base = scan_orbit(d, 1, radius, budget, ignored);
    if (base) {
      FinitePath x = base->x;
      FinitePath y = base->y;
      for (std::size_t k = 1; k < i; ++k) {
        x = shift_down(d, x);
        y = shift_down(d, y);
        CompatiblePair pair{x, y, orbit_window(d, x, k + 2, radius), orbit_window(d, y, k + 2, radius), 0};
        pair.depth = depth_and_cuts(pair.wx, pair.wy).depth.value_or(0);
        out.propagated.push_back(std::move(pair));
      }
    }
  }
  return out;
}

std::string format_rows(const std::vector<Row>& rows) {
  std::ostringstream out;
  for (std::size_t i = rows.size(); i-- > 0;) {
    out << "row " << i << ':';
    for (const Box& b : rows[i]) out << ' ' << b.label << '[' << b.begin << ',' << b.end << ')';
    out << '\n';
  }
  return out.str();
}

std::string format_j_symbol(const JSymbol& j) {
  return "[" + j.base + "]_" + std::to_string(j.level) + " width " + std::to_string(j.width()) + "\n" +
         format_rows(j.rows);
}

std::string format_window(const JWindow& w) {
  return "span [" + std::to_string(w.begin) + "," + std::to_string(w.end) + ")\n" + format_rows(w.rows);
}

}  // namespace subdyn
