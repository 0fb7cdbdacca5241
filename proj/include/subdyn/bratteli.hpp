#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subdyn/words.hpp"

namespace subdyn {

//! An edge between consecutive levels. `order` is the rank of the edge
//! among the incoming edges of its range vertex.
struct Edge {
  std::size_t source_level = 0;
  std::size_t source = 0;
  std::size_t range = 0;
  std::size_t order = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

//! A finite ordered Bratteli diagram truncated at depth() levels.
//! levels[0] holds the top vertex; edges[n] (n >= 1) end in level n and
//! edges[0] is always empty.
struct OrderedDiagram {
  std::vector<std::vector<std::string>> levels;
  std::vector<std::vector<Edge>> edges;

  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
  //! Indices into edges[n] of the edges ending at vertex v, by order.
  std::vector<std::size_t> incoming(std::size_t n, std::size_t v) const;
};

struct Violation {
  std::string kind;  // no-incoming, no-outgoing, level-skew, bad-vertex, order-not-total
  std::size_t level = 0;
  std::size_t index = 0;
  std::string detail;
};

std::vector<Violation> validate(const OrderedDiagram& d);

//! One labelled level repeated forever: the edges ending at V_n(a), n >= 2,
//! come from the letters of read_rule(a) in that order, and V_1(a)
//! receives top_counts[a] edges from the top vertex.
struct StationaryDiagram {
  Substitution read_rule;
  std::vector<std::uint64_t> top_counts;

  OrderedDiagram unroll(std::size_t depth) const;
};

//! \throws InputError if a count is zero or the count vector has the wrong size.
StationaryDiagram stationary_from_substitution(const Substitution& s, std::vector<std::uint64_t> top_counts);

//! The substitution read on the diagram: a ↦ ordered source labels of the
//! edges ending at V_n(a), n >= 2. Read off an unrolled copy.
//! \throws InputError if levels 2 and 3 of the unrolling disagree.
Substitution read_substitution(const StationaryDiagram& d);

//! Reads the same map from levels n-1 -> n of an explicit diagram (n >= 2).
Substitution read_substitution(const OrderedDiagram& d, std::size_t n);

//! Edge indices e_1..e_n; edges[k-1] indexes d.edges[k].
struct FinitePath {
  std::vector<std::size_t> edges;
  friend bool operator==(const FinitePath&, const FinitePath&) = default;
};

std::size_t terminal(const OrderedDiagram& d, const FinitePath& p);
bool is_valid_path(const OrderedDiagram& d, const FinitePath& p);

//! All paths from the top to vertex v of level n, in the order that
//! compares two paths at the largest index where they differ.
std::vector<FinitePath> enumerate_paths(const OrderedDiagram& d, std::size_t n, std::size_t v);

//! The minimal path from the top to vertex v of level n.
FinitePath minimal_path(const OrderedDiagram& d, std::size_t n, std::size_t v);
FinitePath maximal_path(const OrderedDiagram& d, std::size_t n, std::size_t v);

bool is_maximal(const OrderedDiagram& d, const FinitePath& p);
bool is_minimal(const OrderedDiagram& d, const FinitePath& p);

//! Vershik successor on a truncated path; nullopt when every edge is maximal.
std::optional<FinitePath> vershik_successor(const OrderedDiagram& d, const FinitePath& p);

//! Inverse of vershik_successor; nullopt when every edge is minimal.
std::optional<FinitePath> vershik_predecessor(const OrderedDiagram& d, const FinitePath& p);

//! An infinite extremal path of a stationary diagram, given by the
//! vertex labels a_1, a_2, ...; all of them lie on a cycle of the first
//! (or last) letter map, so the sequence is purely periodic:
//! a_n = period[(n-1) % period.size()].
struct ExtremalPath {
  Word period;
  Letter label(std::size_t n) const { return period[(n - 1) % period.size()]; }
};

struct ExtremalPaths {
  std::vector<ExtremalPath> minimal;
  std::vector<ExtremalPath> maximal;
};

ExtremalPaths extremal_paths(const StationaryDiagram& d);

//! Truncation to depth n of an extremal path.
FinitePath extremal_truncation(const StationaryDiagram& d, const OrderedDiagram& unrolled,
                               const ExtremalPath& e, bool maximal, std::size_t n);

//! Composes the edge blocks between the picked levels. The top level is
//! always kept; picks must be strictly increasing and positive.
//! \throws InputError on an empty or malformed pick list.
OrderedDiagram telescope(const OrderedDiagram& d, const std::vector<std::size_t>& picks);

//! Level-i vertex label and the rank of the path prefix e_1..e_i among all
//! paths to that vertex, one entry per visited point.
struct OrbitCoding {
  std::vector<std::size_t> labels;
  std::vector<std::size_t> ranks;
};

//! Codes `steps` points of the orbit of `start` in a finite diagram.
//! \throws Error("ImproperOrdering") if the orbit reaches the maximal path.
OrbitCoding vershik_orbit_coding(const OrderedDiagram& d, const FinitePath& start, std::size_t steps,
                                 std::size_t level);

//! Maps maximal-path indices to minimal-path indices of extremal_paths().
using MaxToMin = std::map<std::size_t, std::size_t>;

//! A point of a stationary diagram moved by the Vershik map in both
//! directions. The truncation is deepened on demand: forward, by the
//! minimal edge into the first V_{n+1}(b) whose first letter is the
//! current terminal (failing that, the first edge leaving it); backward,
//! by the maximal edge into the first V_{n+1}(b) whose last letter is the
//! terminal (failing that, the last edge leaving it).
class StationaryWalker {
 public:
  //! \throws InputError("BadPath") if `start` is not a path of `d`.
  StationaryWalker(const StationaryDiagram& d, FinitePath start, std::optional<MaxToMin> assignment = std::nullopt);

  const FinitePath& path() const noexcept { return path_; }
  //! \throws Error("ImproperOrdering") as vershik_orbit_coding does.
  void forward();
  void backward();
  void ensure_depth(std::size_t n);
  //! Label index of the level-k vertex and the rank of e_1..e_k among the
  //! paths to it (k >= 1, deepening as needed).
  std::size_t label(std::size_t k);
  std::size_t rank(std::size_t k);
  //! Number of paths from the top to V_k(a), saturating.
  std::uint64_t height(std::size_t k, std::size_t a);

 private:
  const Edge& edge(std::size_t k, std::size_t e) const;
  const std::vector<std::size_t>& incoming(std::size_t k, std::size_t v) const;
  void extend(bool for_forward);
  bool step(bool forward);
  void move(bool forward);
  void wrap(bool forward);

  const StationaryDiagram* d_;
  std::optional<MaxToMin> assignment_;
  std::vector<Edge> top_edges_, edges_;
  std::vector<std::vector<std::size_t>> top_in_, in_;
  std::vector<std::vector<std::uint64_t>> heights_;
  std::optional<ExtremalPaths> ext_;
  FinitePath path_;
};

//! Codes points of the orbit at every level 1..max_level at once.
std::vector<OrbitCoding> vershik_orbit_codings(const StationaryDiagram& d, const FinitePath& start, std::size_t steps,
                                               std::size_t max_level,
                                               const std::optional<MaxToMin>& assignment = std::nullopt);

//! Codes `steps` points of the orbit of `start` in a stationary diagram,
//! deepening the truncation as StationaryWalker does.
//! \throws Error("ImproperOrdering") when an infinite maximal path is hit
//! and there are several extremal paths but no assignment table.
OrbitCoding vershik_orbit_coding(const StationaryDiagram& d, const FinitePath& start, std::size_t steps,
                                 std::size_t level, const std::optional<MaxToMin>& assignment = std::nullopt);

//! Byte-stable DOT text; vertices are "L<level>_<label>", edges carry
//! label="<order>" and are sorted by (level, range, order).
std::string export_dot(const OrderedDiagram& d);

//! One vertex per level and `base` edges between consecutive levels.
StationaryDiagram odometer(std::size_t base = 2);

}  // namespace subdyn
