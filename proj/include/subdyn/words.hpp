#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace subdyn {

using Letter = int;
using Word = std::vector<Letter>;

//! Length first, then lexicographic on letter indices.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using WordSet = std::set<Word, ShortLex>;

//! A map from a finite ordered alphabet to nonempty words.
//!
//! Letters are indices into the alphabet; the alphabet order is the
//! order used for every tie-break in the library.
class Substitution {
 public:
  Substitution() = default;

  //! \throws InputError if an image is empty, refers to a letter outside
  //! the alphabet, or two letters share a name.
  Substitution(std::vector<std::string> names, std::vector<Word> images);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Letter a) const { return names_.at(a); }
  const Word& image(Letter a) const { return images_.at(a); }
  const std::vector<Word>& images() const noexcept { return images_; }
  std::optional<Letter> find(std::string_view name) const;

  //! Single-character alphabets are written without separators,
  //! anything else with single spaces.
  std::string format(const Word& w) const;
  //! Inverse of format(). \throws InputError on unknown letters.
  Word parse_word(std::string_view text) const;

  bool single_char_names() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Word> images_;
};

//! Parses lines `x -> word`; `#` starts a comment, blank lines are skipped.
//! \throws InputError on duplicate left-hand sides, empty right-hand
//! sides, or letters used without a rule.
Substitution parse_substitution(std::string_view text);

//! Writes `s` back in the grammar accepted by parse_substitution.
std::string to_spec_text(const Substitution& s);

Word substitute(const Substitution& s, const Word& w);
Word expand(const Substitution& s, const Word& w, unsigned n);
Substitution power(const Substitution& s, unsigned n);

//! (min_a |σⁿ(a)|, max_a |σⁿ(a)|). Lengths only, no expansion.
std::pair<std::uint64_t, std::uint64_t> norms(const Substitution& s, unsigned n);

//! Lengths |σⁿ(a)| for every letter, computed through the incidence matrix.
std::vector<std::uint64_t> image_lengths(const Substitution& s, unsigned n);

using Matrix = std::vector<std::vector<std::uint64_t>>;

//! Entry (a, b) counts occurrences of b in σ(a).
Matrix incidence_matrix(const Substitution& s);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix matrix_power(const Matrix& m, unsigned n);

//! Reachability in the occurrence graph (edge a -> b when b occurs in σ(a)).
//! reach[a][b] holds for paths of length >= 1.
std::vector<std::vector<bool>> occurrence_reach(const Substitution& s);

struct LetterClassification {
  std::vector<Letter> long_letters;
  std::vector<Letter> short_letters;
  std::vector<bool> is_long;
};

LetterClassification classify_letters(const Substitution& s);

enum class Closure { Converged, CycleSummed };

//! The factors of length <= cap of the words σⁿ(a), n >= 1.
struct FactorLanguage {
  std::size_t cap = 0;
  WordSet factors;
  Closure closure = Closure::Converged;

  bool contains(const Word& w) const { return factors.count(w) != 0; }
  std::vector<Word> of_length(std::size_t n) const;
};

FactorLanguage factor_language(const Substitution& s, std::size_t cap);

//! The factors of length <= cap of the words σⁿ(w), n >= 1, w in `seeds`.
FactorLanguage factor_language_from(const Substitution& s, const std::vector<Word>& seeds, std::size_t cap);

//! All factors of `w` with length in [1, cap].
WordSet factors_up_to(const Word& w, std::size_t cap);

enum class NestingClass { StartsLong, EndsLong, Both, None };

NestingClass nesting_class(const Substitution& s);
std::string to_string(NestingClass c);

struct ShortBlockBound {
  bool bounded = false;
  //! M when bounded, otherwise the cap that was exhausted.
  std::size_t value = 0;
  //! Longest word over short letters found in the language.
  Word longest_short;
};

ShortBlockBound short_block_bound(const Substitution& s, std::size_t cap);

//! Shortlex-least u with |u| <= max_len and u^max_pow in the language.
//! An empty result is not a proof of aperiodicity.
std::optional<Word> periodicity_witness_search(const Substitution& s, std::size_t max_len,
                                               std::size_t max_pow);

}  // namespace subdyn
