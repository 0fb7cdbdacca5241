#include "subdyn/bratteli.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

#include "subdyn/errors.hpp"

namespace subdyn {

std::vector<std::size_t> OrderedDiagram::incoming(std::size_t n, std::size_t v) const {
  std::vector<std::size_t> out;
  if (n == 0 || n >= edges.size()) return out;
  for (std::size_t e = 0; e < edges[n].size(); ++e)
    if (edges[n][e].range == v) out.push_back(e);
  std::sort(out.begin(), out.end(),
            [&](std::size_t x, std::size_t y) { return edges[n][x].order < edges[n][y].order; });
  return out;
}

std::vector<Violation> validate(const OrderedDiagram& d) {
  std::vector<Violation> out;
  if (d.levels.empty() || d.levels[0].size() != 1) {
    out.push_back({"bad-vertex", 0, 0, "level 0 must hold exactly the top vertex"});
    return out;
  }
  if (d.edges.size() != d.levels.size() || !d.edges[0].empty()) {
    out.push_back({"bad-vertex", 0, 0, "edge levels do not match vertex levels"});
    return out;
  }
  for (std::size_t n = 1; n <= d.depth(); ++n) {
    std::vector<std::vector<std::size_t>> orders(d.levels[n].size());
    std::vector<bool> has_out(d.levels[n - 1].size(), false);
    for (std::size_t e = 0; e < d.edges[n].size(); ++e) {
      const Edge& edge = d.edges[n][e];
      if (edge.source_level + 1 != n) {
        out.push_back({"level-skew", n, e,
                       "source on level " + std::to_string(edge.source_level) + ", range on level " +
                           std::to_string(n)});
        continue;
      }
      if (edge.source >= d.levels[n - 1].size() || edge.range >= d.levels[n].size()) {
        out.push_back({"bad-vertex", n, e, "endpoint out of range"});
        continue;
      }
      has_out[edge.source] = true;
      orders[edge.range].push_back(edge.order);
    }
    for (std::size_t v = 0; v < d.levels[n].size(); ++v) {
      if (orders[v].empty()) {
        out.push_back({"no-incoming", n, v, "vertex " + d.levels[n][v] + " has no incoming edge"});
        continue;
      }
      auto sorted = orders[v];
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (sorted[k] != k) {
          out.push_back({"order-not-total", n, v, "incoming orders of " + d.levels[n][v] + " are not 0..k-1"});
          break;
        }
      }
    }
    for (std::size_t u = 0; u < d.levels[n - 1].size(); ++u) {
      if (!has_out[u]) {
        out.push_back({"no-outgoing", n - 1, u, "vertex " + d.levels[n - 1][u] + " has no outgoing edge"});
      }
    }
  }
  return out;
}

OrderedDiagram StationaryDiagram::unroll(std::size_t depth) const {
  OrderedDiagram d;
  d.levels.push_back({"v0"});
  d.edges.emplace_back();
  for (std::size_t n = 1; n <= depth; ++n) {
    d.levels.push_back(read_rule.names());
    std::vector<Edge> level;
    for (std::size_t a = 0; a < read_rule.size(); ++a) {
      if (n == 1) {
        for (std::size_t j = 0; j < top_counts[a]; ++j) level.push_back({0, 0, a, j});
      } else {
        const Word& img = read_rule.image(static_cast<Letter>(a));
        for (std::size_t t = 0; t < img.size(); ++t)
          level.push_back({n - 1, static_cast<std::size_t>(img[t]), a, t});
      }
    }
    d.edges.push_back(std::move(level));
  }
  return d;
}

StationaryDiagram stationary_from_substitution(const Substitution& s, std::vector<std::uint64_t> top_counts) {
  if (top_counts.size() != s.size()) throw InputError("BadCounts", "one top count per letter required");
  for (auto c : top_counts)
    if (c == 0) throw InputError("BadCounts", "top counts must be positive");
  return StationaryDiagram{s, std::move(top_counts)};
}

Substitution read_substitution(const OrderedDiagram& d, std::size_t n) {
  if (n < 2 || n > d.depth()) throw InputError("BadLevel", "read level must lie in [2, depth]");
  std::vector<Word> images;
  for (std::size_t a = 0; a < d.levels[n].size(); ++a) {
    Word img;
    for (std::size_t e : d.incoming(n, a)) {
      const std::string& label = d.levels[n - 1][d.edges[n][e].source];
      auto it = std::find(d.levels[n].begin(), d.levels[n].end(), label);
      if (it == d.levels[n].end()) throw InputError("NotStationary", "label " + label + " missing on level " + std::to_string(n));
      img.push_back(static_cast<Letter>(it - d.levels[n].begin()));
    }
    images.push_back(std::move(img));
  }
  return Substitution(d.levels[n], std::move(images));
}

Substitution read_substitution(const StationaryDiagram& d) {
  auto unrolled = d.unroll(3);
  auto s2 = read_substitution(unrolled, 2);
  if (!(read_substitution(unrolled, 3) == s2)) throw InputError("NotStationary", "levels 2 and 3 disagree");
  return s2;
}

std::size_t terminal(const OrderedDiagram& d, const FinitePath& p) {
  if (p.edges.empty()) return 0;
  return d.edges[p.edges.size()][p.edges.back()].range;
}

bool is_valid_path(const OrderedDiagram& d, const FinitePath& p) {
  if (p.edges.size() > d.depth()) return false;
  std::size_t at = 0;
  for (std::size_t k = 1; k <= p.edges.size(); ++k) {
    if (p.edges[k - 1] >= d.edges[k].size()) return false;
    const Edge& e = d.edges[k][p.edges[k - 1]];
    if (e.source != at) return false;
    at = e.range;
  }
  return true;
}

std::vector<FinitePath> enumerate_paths(const OrderedDiagram& d, std::size_t n, std::size_t v) {
  if (n == 0) return {FinitePath{}};
  std::vector<FinitePath> out;
  for (std::size_t e : d.incoming(n, v)) {
    for (auto& prefix : enumerate_paths(d, n - 1, d.edges[n][e].source)) {
      prefix.edges.push_back(e);
      out.push_back(std::move(prefix));
    }
  }
  return out;
}

namespace {

FinitePath extremal_path_to(const OrderedDiagram& d, std::size_t n, std::size_t v, bool maximal) {
  FinitePath p;
  p.edges.resize(n);
  for (std::size_t k = n; k >= 1; --k) {
    auto inc = d.incoming(k, v);
    if (inc.empty()) throw InputError("NoPath", "vertex without incoming edges on level " + std::to_string(k));
    std::size_t e = maximal ? inc.back() : inc.front();
    p.edges[k - 1] = e;
    v = d.edges[k][e].source;
  }
  return p;
}

bool edge_is_extremal(const OrderedDiagram& d, std::size_t k, std::size_t e, bool maximal) {
  const Edge& edge = d.edges[k][e];
  if (!maximal) return edge.order == 0;
  return edge.order + 1 == d.incoming(k, edge.range).size();
}

}  // namespace

FinitePath minimal_path(const OrderedDiagram& d, std::size_t n, std::size_t v) {
  return extremal_path_to(d, n, v, false);
}

FinitePath maximal_path(const OrderedDiagram& d, std::size_t n, std::size_t v) {
  return extremal_path_to(d, n, v, true);
}

bool is_maximal(const OrderedDiagram& d, const FinitePath& p) {
  for (std::size_t k = 1; k <= p.edges.size(); ++k)
    if (!edge_is_extremal(d, k, p.edges[k - 1], true)) return false;
  return true;
}

bool is_minimal(const OrderedDiagram& d, const FinitePath& p) {
  for (std::size_t k = 1; k <= p.edges.size(); ++k)
    if (!edge_is_extremal(d, k, p.edges[k - 1], false)) return false;
  return true;
}

std::optional<FinitePath> vershik_successor(const OrderedDiagram& d, const FinitePath& p) {
  for (std::size_t k = 1; k <= p.edges.size(); ++k) {
    const Edge& edge = d.edges[k][p.edges[k - 1]];
    auto inc = d.incoming(k, edge.range);
    if (edge.order + 1 < inc.size()) {
      std::size_t next = inc[edge.order + 1];
      FinitePath out = minimal_path(d, k - 1, d.edges[k][next].source);
      out.edges.push_back(next);
      out.edges.insert(out.edges.end(), p.edges.begin() + static_cast<std::ptrdiff_t>(k), p.edges.end());
      return out;
    }
  }
  return std::nullopt;
}

std::optional<FinitePath> vershik_predecessor(const OrderedDiagram& d, const FinitePath& p) {
  for (std::size_t k = 1; k <= p.edges.size(); ++k) {
    const Edge& edge = d.edges[k][p.edges[k - 1]];
    if (edge.order > 0) {
      std::size_t prev = d.incoming(k, edge.range)[edge.order - 1];
      FinitePath out = maximal_path(d, k - 1, d.edges[k][prev].source);
      out.edges.push_back(prev);
      out.edges.insert(out.edges.end(), p.edges.begin() + static_cast<std::ptrdiff_t>(k), p.edges.end());
      return out;
    }
  }
  return std::nullopt;
}

namespace {

std::vector<ExtremalPath> cycle_sequences(const Substitution& s, bool last) {
  std::size_t n = s.size();
  auto m = [&](Letter a) { return last ? s.image(a).back() : s.image(a).front(); };
  std::vector<ExtremalPath> out;
  for (std::size_t c = 0; c < n; ++c) {
    Letter x = static_cast<Letter>(c);
    bool on_cycle = false;
    for (std::size_t k = 0; k < n && !on_cycle; ++k) {
      x = m(x);
      on_cycle = x == static_cast<Letter>(c);
    }
    if (!on_cycle) continue;
    // a_{n+1} is the cycle predecessor of a_n: walk the cycle forward and reverse
    Word forward{static_cast<Letter>(c)};
    for (Letter y = m(static_cast<Letter>(c)); y != static_cast<Letter>(c); y = m(y)) forward.push_back(y);
    ExtremalPath e;
    e.period.push_back(static_cast<Letter>(c));
    for (std::size_t k = forward.size(); k-- > 1;) e.period.push_back(forward[k]);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

ExtremalPaths extremal_paths(const StationaryDiagram& d) {
  return {cycle_sequences(d.read_rule, false), cycle_sequences(d.read_rule, true)};
}

FinitePath extremal_truncation(const StationaryDiagram&, const OrderedDiagram& unrolled, const ExtremalPath& e,
                               bool maximal, std::size_t n) {
  FinitePath p;
  for (std::size_t k = 1; k <= n; ++k) {
    auto inc = unrolled.incoming(k, static_cast<std::size_t>(e.label(k)));
    p.edges.push_back(maximal ? inc.back() : inc.front());
  }
  return p;
}

OrderedDiagram telescope(const OrderedDiagram& d, const std::vector<std::size_t>& picks) {
  if (picks.empty()) throw InputError("EmptyPicks", "telescoping needs at least one level");
  for (std::size_t j = 0; j < picks.size(); ++j) {
    if (picks[j] == 0 || picks[j] > d.depth() || (j > 0 && picks[j] <= picks[j - 1])) {
      throw InputError("BadPicks", "picks must be strictly increasing levels in [1, depth]");
    }
  }
  OrderedDiagram out;
  out.levels.push_back(d.levels[0]);
  out.edges.emplace_back();
  std::size_t from = 0;
  for (std::size_t j = 0; j < picks.size(); ++j) {
    std::size_t to = picks[j];
    // paths from level `from` to each vertex of level `to`, largest index most significant
    std::function<std::vector<std::size_t>(std::size_t, std::size_t)> sources =
        [&](std::size_t n, std::size_t v) -> std::vector<std::size_t> {
      if (n == from) return {v};
      std::vector<std::size_t> res;
      for (std::size_t e : d.incoming(n, v)) {
        auto up = sources(n - 1, d.edges[n][e].source);
        res.insert(res.end(), up.begin(), up.end());
      }
      return res;
    };
    std::vector<Edge> level;
    for (std::size_t v = 0; v < d.levels[to].size(); ++v) {
      auto src = sources(to, v);
      for (std::size_t k = 0; k < src.size(); ++k) level.push_back({j, src[k], v, k});
    }
    out.levels.push_back(d.levels[to]);
    out.edges.push_back(std::move(level));
    from = to;
  }
  return out;
}

namespace {

// Number of paths from the top to every vertex of each level.
std::vector<std::vector<std::uint64_t>> path_counts(const OrderedDiagram& d) {
  std::vector<std::vector<std::uint64_t>> cnt(d.levels.size());
  cnt[0] = {1};
  for (std::size_t n = 1; n <= d.depth(); ++n) {
    cnt[n].assign(d.levels[n].size(), 0);
    for (const Edge& e : d.edges[n]) cnt[n][e.range] += cnt[n - 1][e.source];
  }
  return cnt;
}

std::size_t prefix_rank(const OrderedDiagram& d, const std::vector<std::vector<std::uint64_t>>& cnt,
                        const FinitePath& p, std::size_t level) {
  std::size_t rank = 0;
  for (std::size_t k = 1; k <= level; ++k) {
    const Edge& edge = d.edges[k][p.edges[k - 1]];
    auto inc = d.incoming(k, edge.range);
    std::size_t below = 0;
    for (std::size_t o = 0; o < edge.order; ++o) below += cnt[k - 1][d.edges[k][inc[o]].source];
    rank += below;
  }
  return rank;
}

void emit(const OrderedDiagram& d, const std::vector<std::vector<std::uint64_t>>& cnt, const FinitePath& p,
          std::size_t level, OrbitCoding& out) {
  out.labels.push_back(d.edges[level][p.edges[level - 1]].range);
  out.ranks.push_back(prefix_rank(d, cnt, p, level));
}

}  // namespace

OrbitCoding vershik_orbit_coding(const OrderedDiagram& d, const FinitePath& start, std::size_t steps,
                                 std::size_t level) {
  if (level == 0 || level > start.edges.size()) throw InputError("BadLevel", "coding level exceeds path depth");
  auto cnt = path_counts(d);
  OrbitCoding out;
  FinitePath p = start;
  for (std::size_t t = 0; t < steps; ++t) {
    emit(d, cnt, p, level, out);
    if (t + 1 == steps) break;
    auto next = vershik_successor(d, p);
    if (!next) throw Error("ImproperOrdering", "orbit reached the maximal path of a finite diagram");
    p = std::move(*next);
  }
  return out;
}

namespace {

std::uint64_t sat_add(std::uint64_t x, std::uint64_t y) {
  return x > UINT64_MAX - y ? UINT64_MAX : x + y;
}

}  // namespace

StationaryWalker::StationaryWalker(const StationaryDiagram& d, FinitePath start, std::optional<MaxToMin> assignment)
    : d_(&d), assignment_(std::move(assignment)), path_(std::move(start)) {
  OrderedDiagram u = d.unroll(2);
  top_edges_ = u.edges[1];
  edges_ = u.edges[2];
  for (std::size_t a = 0; a < d.read_rule.size(); ++a) {
    top_in_.push_back(u.incoming(1, a));
    in_.push_back(u.incoming(2, a));
  }
  heights_.push_back({1});
  std::size_t at = 0;
  for (std::size_t k = 1; k <= path_.edges.size(); ++k) {
    const auto& level = k == 1 ? top_edges_ : edges_;
    if (path_.edges[k - 1] >= level.size() || level[path_.edges[k - 1]].source != at) {
      throw InputError("BadPath", "start is not a path of the diagram");
    }
    at = level[path_.edges[k - 1]].range;
  }
}

const Edge& StationaryWalker::edge(std::size_t k, std::size_t e) const {
  return k == 1 ? top_edges_[e] : edges_[e];
}

const std::vector<std::size_t>& StationaryWalker::incoming(std::size_t k, std::size_t v) const {
  return k == 1 ? top_in_[v] : in_[v];
}

std::uint64_t StationaryWalker::height(std::size_t k, std::size_t a) {
  while (heights_.size() <= k) {
    std::size_t n = heights_.size();
    std::vector<std::uint64_t> h(d_->read_rule.size(), 0);
    for (std::size_t v = 0; v < h.size(); ++v)
      for (std::size_t e : incoming(n, v)) h[v] = sat_add(h[v], heights_[n - 1][edge(n, e).source]);
    heights_.push_back(std::move(h));
  }
  return heights_[k][a];
}

std::size_t StationaryWalker::label(std::size_t k) {
  ensure_depth(k);
  return edge(k, path_.edges[k - 1]).range;
}

std::size_t StationaryWalker::rank(std::size_t k) {
  ensure_depth(k);
  std::uint64_t r = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    const Edge& e = edge(j, path_.edges[j - 1]);
    const auto& inc = incoming(j, e.range);
    for (std::size_t o = 0; o < e.order; ++o) r = sat_add(r, height(j - 1, edge(j, inc[o]).source));
  }
  return static_cast<std::size_t>(r);
}

void StationaryWalker::ensure_depth(std::size_t n) {
  while (path_.edges.size() < n) extend(true);
}

void StationaryWalker::extend(bool for_forward) {
  std::size_t n = path_.edges.size();
  std::size_t a = n == 0 ? 0 : edge(n, path_.edges.back()).range;
  std::size_t k = n + 1;
  std::optional<std::size_t> pick;
  for (std::size_t b = 0; b < d_->read_rule.size() && !pick; ++b) {
    const auto& inc = incoming(k, b);
    std::size_t e = for_forward ? inc.front() : inc.back();
    if (edge(k, e).source == a) pick = e;
  }
  const auto& level = k == 1 ? top_edges_ : edges_;
  if (for_forward) {
    for (std::size_t e = 0; e < level.size() && !pick; ++e)
      if (level[e].source == a) pick = e;
  } else {
    for (std::size_t e = level.size(); e-- > 0 && !pick;)
      if (level[e].source == a) pick = e;
  }
  path_.edges.push_back(*pick);
}

void StationaryWalker::wrap(bool forward) {
  if (!ext_) ext_ = extremal_paths(*d_);
  const auto& from = forward ? ext_->maximal : ext_->minimal;
  const auto& to = forward ? ext_->minimal : ext_->maximal;
  Letter a1 = static_cast<Letter>(label(1));
  std::size_t index = 0;
  while (index < from.size() && from[index].label(1) != a1) ++index;
  if (index == from.size()) throw Error("ImproperOrdering", "extremal path does not follow a letter cycle");
  std::optional<std::size_t> target;
  if (assignment_) {
    if (forward) {
      auto it = assignment_->find(index);
      if (it != assignment_->end()) target = it->second;
    } else {
      for (const auto& [mx, mn] : *assignment_)
        if (mn == index) target = mx;
    }
    if (!target || *target >= to.size()) throw Error("ImproperOrdering", "assignment table misses an extremal path");
  } else if (ext_->maximal.size() == 1 && ext_->minimal.size() == 1) {
    target = 0;
  } else {
    throw Error("ImproperOrdering", "several extremal paths and no max-to-min assignment");
  }
  const ExtremalPath& e = to[*target];
  for (std::size_t k = 1; k <= path_.edges.size(); ++k) {
    const auto& inc = incoming(k, static_cast<std::size_t>(e.label(k)));
    path_.edges[k - 1] = forward ? inc.front() : inc.back();
  }
}

bool StationaryWalker::step(bool forward) {
  for (std::size_t k = 1; k <= path_.edges.size(); ++k) {
    const Edge& e = edge(k, path_.edges[k - 1]);
    const auto& inc = incoming(k, e.range);
    bool can = forward ? e.order + 1 < inc.size() : e.order > 0;
    if (!can) continue;
    path_.edges[k - 1] = inc[forward ? e.order + 1 : e.order - 1];
    std::size_t v = edge(k, path_.edges[k - 1]).source;
    for (std::size_t j = k - 1; j >= 1; --j) {
      const auto& in = incoming(j, v);
      path_.edges[j - 1] = forward ? in.front() : in.back();
      v = edge(j, path_.edges[j - 1]).source;
    }
    return true;
  }
  return false;
}

void StationaryWalker::move(bool forward) {
  if (step(forward)) return;
  for (std::size_t extra = 0; extra <= d_->read_rule.size() + 1; ++extra) {
    extend(forward);
    if (step(forward)) return;
  }
  // the path follows an infinite extremal path; jump to the assigned one
  wrap(forward);
}

void StationaryWalker::forward() { move(true); }
void StationaryWalker::backward() { move(false); }

std::vector<OrbitCoding> vershik_orbit_codings(const StationaryDiagram& d, const FinitePath& start, std::size_t steps,
                                               std::size_t max_level, const std::optional<MaxToMin>& assignment) {
  if (max_level == 0) throw InputError("BadLevel", "coding level must be positive");
  StationaryWalker w(d, start, assignment);
  std::vector<OrbitCoding> out(max_level);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t k = 1; k <= max_level; ++k) {
      out[k - 1].labels.push_back(w.label(k));
      out[k - 1].ranks.push_back(w.rank(k));
    }
    if (t + 1 < steps) w.forward();
  }
  return out;
}

OrbitCoding vershik_orbit_coding(const StationaryDiagram& d, const FinitePath& start, std::size_t steps,
                                 std::size_t level, const std::optional<MaxToMin>& assignment) {
  if (level == 0) throw InputError("BadLevel", "coding level must be positive");
  return std::move(vershik_orbit_codings(d, start, steps, level, assignment).back());
}

std::string export_dot(const OrderedDiagram& d) {
  std::ostringstream out;
  out << "digraph bratteli {\n";
  for (std::size_t n = 0; n < d.levels.size(); ++n)
    for (const auto& label : d.levels[n]) out << "  \"L" << n << '_' << label << "\";\n";
  for (std::size_t n = 1; n < d.edges.size(); ++n) {
    std::vector<const Edge*> sorted;
    for (const Edge& e : d.edges[n]) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(), [](const Edge* x, const Edge* y) {
      return std::tie(x->range, x->order) < std::tie(y->range, y->order);
    });
    for (const Edge* e : sorted) {
      out << "  \"L" << e->source_level << '_' << d.levels[e->source_level][e->source] << "\" -> \"L" << n << '_'
          << d.levels[n][e->range] << "\" [label=\"" << e->order << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

StationaryDiagram odometer(std::size_t base) {
  Substitution s({"v"}, {Word(base, 0)});
  return StationaryDiagram{s, {base}};
}

}  // namespace subdyn
