#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subdyn/bratteli.hpp"
#include "subdyn/words.hpp"

namespace subdyn {

//! v1 S1 v2 S2 v3 with long v_i and short blocks S_i. The dot sits after
//! v1 S1 when images of long letters start long, after v1 otherwise.
struct MarkedWord {
  Letter v1 = 0;
  Word s1;
  Letter v2 = 0;
  Word s2;
  Letter v3 = 0;
  bool dot_after_s1 = true;

  Word word() const;
  std::size_t dot() const;
  //! The part whose images stack into the tower: v2 S2, or S1 v2.
  Word tower_word() const;
  std::string format(const Substitution& s) const;

  friend bool operator==(const MarkedWord&, const MarkedWord&) = default;
  friend auto operator<=>(const MarkedWord&, const MarkedWord&) = default;
};

//! Words v1 S1 v2 S2 v3 of the language, in shortlex order of the word.
//! \throws InputError("NoNesting") without the nesting property.
//! \throws ScaleError("UnboundedShorts") if short blocks reach `short_cap`.
std::vector<MarkedWord> nesting_vocabulary(const Substitution& s, std::size_t short_cap = 32);

//! The marked words whose towers stack into the level-one tower of W.
std::vector<MarkedWord> nesting_matching_rule(const Substitution& s, const MarkedWord& w);

struct NestingConstruction {
  std::vector<MarkedWord> vocabulary;
  //! Vertex labels w1..wN follow the vocabulary order.
  StationaryDiagram diagram;
};

NestingConstruction nesting_diagram(const Substitution& s, std::size_t short_cap = 32);

//! Edge-splitting of a stationary diagram into one with a simple top:
//! letters (a, i), 0 <= i < n_a.
struct EncodedSystem {
  Substitution source;
  Substitution tau;
  //! psi[a] = (a,0)...(a,n_a - 1), over tau's alphabet.
  std::vector<Word> psi;

  Word encode(const Word& w) const;
};

//! \throws InputError("CountExceedsImage") when n_a > |σ(a)| for some a.
EncodedSystem multi_edge_encoding(const StationaryDiagram& d);

struct Component {
  //! Long letters a with σ^p(a) starting with a that generate this component.
  std::vector<Letter> seeds;
  //! (r, l) with rl in the component's language, σ^p(r) ending in r and
  //! σ^p(l) starting with l for a common p; lexicographic order.
  std::vector<std::pair<Letter, Letter>> fixed_pairs;
  std::vector<unsigned> pair_powers;
};

//! Groups seed letters whose languages (up to `scale`) coincide and keeps
//! the groups whose language contains no other group's.
std::vector<Component> minimal_components(const Substitution& s, std::size_t scale = 16);

struct ReturnWordSystem {
  //! One canonical (r_i, l_i) per minimal component.
  std::vector<std::pair<Letter, Letter>> pairs;
  //! Power p with σ^p(r_i) ending in r_i and σ^p(l_i) starting with l_i for all i.
  unsigned power = 1;
  std::size_t scale = 0;
  //! phi: index -> return word.
  std::vector<Word> vocabulary;
  std::vector<std::string> names;

  std::optional<std::size_t> index_of(const Word& w) const;
};

//! \throws ScaleError("ScaleTooSmall") when some return word is longer than `scale`.
//! \throws InputError("NoFixedPair") when a component has no fixed pair.
ReturnWordSystem return_words(const Substitution& s, std::size_t scale = 16);

//! Cuts σ^p(φ(w)) at every r_i l_i and reads the pieces as return words.
//! \throws Error("DecompositionFailure") if a piece is not in the vocabulary.
Substitution derivative_substitution(const ReturnWordSystem& rs, const Substitution& s);

struct ProperResult {
  bool proper = false;
  //! Witness power when proper, else the bound that was searched.
  unsigned p = 0;
};

ProperResult is_proper(const Substitution& s, unsigned p_max = 6);

struct MPrimitiveResult {
  bool m_primitive = false;
  std::string reason;
  std::vector<std::vector<Letter>> blocks;
  std::vector<Letter> extra;
  std::size_t scale = 0;
  //! L(σ) = L(σ^k), k = 2, 3, compared up to `scale`.
  bool language_stable = false;
  //! Every letter sits in the middle of a language word of length 2·scale+1.
  bool letters_extendable = false;
};

MPrimitiveResult is_m_primitive(const Substitution& s, std::size_t scale = 8);

struct DerivativeConstruction {
  ReturnWordSystem rs;
  Substitution tau;
  ProperResult proper;
  StationaryDiagram diagram;
};

//! Return words, derivative, properness check, then the stationary diagram
//! of the derivative with |φ(w)| edges from the top to w.
//! \throws Error("NotProper") if the derivative is not proper up to `p_max`.
DerivativeConstruction diagram_via_derivative(const Substitution& s, std::size_t scale = 16, unsigned p_max = 6);

}  // namespace subdyn
