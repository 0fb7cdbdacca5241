#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "subdyn/bratteli.hpp"
#include "subdyn/recognizability.hpp"
#include "subdyn/words.hpp"

namespace subdyn {

//! Columns [begin, end) covered by one labelled box.
struct Box {
  std::string label;
  std::ptrdiff_t begin = 0;
  std::ptrdiff_t end = 0;

  std::ptrdiff_t width() const { return end - begin; }
  friend bool operator==(const Box&, const Box&) = default;
  friend auto operator<=>(const Box&, const Box&) = default;
};

using Row = std::vector<Box>;

//! [a]_j: rows 0..j, row j a single box labelled a, row i-1 refining row i.
struct JSymbol {
  std::string base;
  std::size_t level = 0;
  std::vector<Row> rows;

  std::size_t width() const;
};

//! Row i holds the i-fold images; row 0 is made of unit boxes.
JSymbol build_j_symbol(const Substitution& s, Letter base, std::size_t j);

//! Row i holds level-i vertices; row 0 holds the top vertex "v0" once per
//! path, so the width is the number of paths from the top to V_j(base).
//! \throws InputError("BadLevel") for j == 0.
JSymbol build_j_symbol(const StationaryDiagram& d, Letter base, std::size_t j);

//! Rows 0..j of a j-sequence seen on the columns [begin, end). Each row
//! lists the boxes meeting the span in absolute coordinates, so boxes at
//! the ends may stick out.
struct JWindow {
  std::ptrdiff_t begin = 0;
  std::ptrdiff_t end = 0;
  std::vector<Row> rows;

  std::size_t top() const { return rows.empty() ? 0 : rows.size() - 1; }
  //! Columns n in [begin, end) where a box of row i starts.
  std::vector<std::ptrdiff_t> cuts(std::size_t i) const;
  //! Box label at every column of the span.
  std::vector<std::string> column_labels(std::size_t i) const;
  //! Rows 0..i only.
  JWindow project(std::size_t i) const;
};

//! Rows 0..levels of a recognized window, columns centered on the chain's
//! center with the given radius. Row i is labelled by letter names.
//! \throws ScaleError("WindowTooShort") when the span leaves the deepest
//! interior or meets a box that is neither inside the window nor the box
//! holding the center.
JWindow window_from_parse(const Substitution& s, const ParseChain& chain, std::size_t radius);

//! Rows 0..j of the orbit of `start` on columns [-radius, radius].
JWindow orbit_window(const StationaryDiagram& d, const FinitePath& start, std::size_t j, std::size_t radius,
                     const std::optional<MaxToMin>& assignment = std::nullopt);

struct Compatibility {
  //! Largest i with rows 0..i identical on the span; nullopt if row 0 differs.
  std::optional<std::size_t> depth;
  //! Per level, the columns where both windows have a cut.
  std::vector<std::vector<std::ptrdiff_t>> common_cuts;
};

//! \throws InputError("SpanMismatch") unless spans and row counts agree.
Compatibility depth_and_cuts(const JWindow& x, const JWindow& y);

struct Periodicity {
  std::size_t n0 = 0;
  std::size_t m = 0;
};

//! Least m <= m_max with row[n + m] == row[n] for every n >= n0 in range.
//! \throws ScaleError("WindowTooShort") unless row.size() > n0 + 2 m_max.
std::optional<Periodicity> eventually_periodic_check(const std::vector<std::string>& row, std::size_t n0,
                                                     std::size_t m_max);

//! y_n = x_{n-1} for n >= 3 and (y_1, y_2) the minimal path to the source
//! of y_3: every row of the point moves one level down.
//! \throws InputError("BadPath") if x has fewer than two edges.
FinitePath shift_down(const StationaryDiagram& d, const FinitePath& x);

struct CompatiblePair {
  FinitePath x;
  FinitePath y;
  JWindow wx;
  JWindow wy;
  std::size_t depth = 0;
};

struct ExpansivenessResult {
  std::size_t level = 0;
  std::size_t radius = 0;
  std::size_t budget = 0;
  std::size_t pairs_examined = 0;
  //! Two orbit points whose rows 0..level agree on [-radius, radius] while
  //! row level+1 differs at column 0.
  std::optional<CompatiblePair> witness;
  //! f^k applied to a 1-compatible pair, k = 1..level-1, with the depth
  //! observed on their windows.
  std::vector<CompatiblePair> propagated;
};

//! Scans windows along one long orbit, starting from the truncation grown
//! from the top by the forward deepening rule, and compares each with the
//! earlier windows that share its rows 0..i. Stops after `budget` windows.
ExpansivenessResult expansiveness_witness_search(const StationaryDiagram& d, std::size_t i, std::size_t radius,
                                                 std::size_t budget);

//! Rows from the top down, one line each: "row i: label[begin,end) ...".
std::string format_rows(const std::vector<Row>& rows);
std::string format_j_symbol(const JSymbol& j);
std::string format_window(const JWindow& w);

}  // namespace subdyn
