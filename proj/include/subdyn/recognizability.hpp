#pragma once

#include <cstddef>
#include <map>
#include <variant>
#include <vector>

#include "subdyn/words.hpp"

namespace subdyn {

//! A decomposition of a window as T^i σ(parent), possibly clipped at
//! both ends.
struct Tiling {
  Word parent;
  //! Letters of σ(parent.front()) lying before the window start.
  std::size_t offset = 0;
  //! Letters of σ(parent.back()) lying after the window end.
  std::size_t tail = 0;
  //! Window position where each tile starts; the first is -offset.
  std::vector<std::ptrdiff_t> starts;

  //! Tile boundaries that fall inside [0, window length].
  std::vector<std::size_t> cuts(std::size_t window_length) const;

  friend bool operator==(const Tiling&, const Tiling&) = default;
};

//! Every tiling of `window` by images σ(a) whose parent word belongs to
//! the language. With `interior_only` the end tiles may not be clipped.
//! Sorted by cut positions, then parent, then offset.
std::vector<Tiling> one_word_tilings(const Substitution& s, const Word& window, bool interior_only);

//! Same, validating parents against a precomputed language whose cap is
//! at least the window length.
std::vector<Tiling> one_word_tilings(const Substitution& s, const FactorLanguage& lang,
                                     const Word& window, bool interior_only);

//! A level-k tile of a parse, in window coordinates (half-open, may
//! extend past the window).
struct ParseTile {
  Letter letter = 0;
  std::ptrdiff_t begin = 0;
  std::ptrdiff_t end = 0;
  friend bool operator==(const ParseTile&, const ParseTile&) = default;
  friend auto operator<=>(const ParseTile&, const ParseTile&) = default;
};

//! What a parse says about the interior of a window at one level: the
//! tile boundaries inside it, the tiles meeting it that the window shows
//! completely, and the center data (y_k, i_k). Letters of tiles that stick
//! out of the window are not determined by the window and are left out.
struct InteriorView {
  std::vector<std::ptrdiff_t> cuts;
  std::vector<ParseTile> tiles;
  //! y_k: letter of the tile covering the window center.
  Letter center_letter = 0;
  //! i_k: index of the level-(k-1) tile covering the center inside σ(y_k).
  std::size_t center_offset = 0;
  friend bool operator==(const InteriorView&, const InteriorView&) = default;
  friend auto operator<=>(const InteriorView&, const InteriorView&) = default;
};

struct ParseLevel {
  unsigned level = 0;
  //! The region of the window the level is certified on.
  std::ptrdiff_t interior_begin = 0;
  std::ptrdiff_t interior_end = 0;
  InteriorView view;
  //! Every tile of the parse meeting the window, including clipped ones.
  std::vector<ParseTile> all_tiles;
};

//! The unique desubstitution chain of a window. levels[0] is the window
//! itself (unit tiles), levels[k] the k-fold parse.
struct ParseChain {
  std::size_t window_length = 0;
  std::size_t center = 0;
  std::vector<ParseLevel> levels;
};

struct AmbiguityReport {
  unsigned level = 0;
  std::ptrdiff_t interior_begin = 0;
  std::ptrdiff_t interior_end = 0;
  //! Distinct interior views of the surviving parses.
  std::vector<InteriorView> variants;
};

using RecognitionResult = std::variant<ParseChain, AmbiguityReport>;

//! Desubstitutes `window` `levels` times. At level k the parses are only
//! compared on the interior left after clipping k·(‖σ‖-1) letters from
//! each end.
//! \throws ScaleError("WindowTooShort") when that interior is empty.
//! \throws InputError("NoParse") when the window admits no parse at all.
RecognitionResult recognize_window(const Substitution& s, const Word& window, unsigned levels);

//! Reuses a language across many windows of at most `max_window` letters.
class Recognizer {
 public:
  Recognizer(Substitution s, std::size_t max_window);
  RecognitionResult recognize(const Word& window, unsigned levels) const;
  const Substitution& substitution() const noexcept { return s_; }
  const FactorLanguage& language() const noexcept { return lang_; }

 private:
  Substitution s_;
  FactorLanguage lang_;
};

struct TowerTable {
  unsigned level = 0;
  std::map<Letter, std::uint64_t> heights;
};

//! |σⁿ(a)| for each letter of the language.
TowerTable kr_tower_heights(const Substitution& s, unsigned n);

}  // namespace subdyn
