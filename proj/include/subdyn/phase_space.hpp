#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "subdyn/words.hpp"

namespace subdyn {

//! A letter pair ab of the language with σ^p(a) ending in a and σ^p(b)
//! starting with b; p is the least such power.
struct LambdaSeed {
  Letter a = 0;
  Letter b = 0;
  unsigned p = 0;
  friend bool operator==(const LambdaSeed&, const LambdaSeed&) = default;
};

//! Seeds in lexicographic order of (a, b), searching p <= (|A|+1)^2.
//! \throws InputError("ShortLettersPresent") unless every letter is long.
std::vector<LambdaSeed> lambda_seeds(const Substitution& s);

//! A window w[-left.size(), right.size()) split at the origin.
struct MarkedWindow {
  Word left;
  Word right;

  Word word() const;
  std::string format(const Substitution& s) const;
  friend bool operator==(const MarkedWindow&, const MarkedWindow&) = default;
};

//! Radius-r window around the marker of lim σ^{pn}(a).σ^{pn}(b), with the
//! least n making both sides at least r long.
MarkedWindow lambda_window(const Substitution& s, const LambdaSeed& seed, std::size_t radius);

//! Same window at an explicit n (n >= the least admissible one).
MarkedWindow lambda_window_at(const Substitution& s, const LambdaSeed& seed, std::size_t radius, unsigned n);

//! (a_0, i_0), ..., (a_n, i_n): i_0 = 0 and a_{k-1} occurs at position
//! i_k of σ(a_k).
struct ChainPrefix {
  std::vector<std::pair<Letter, std::size_t>> entries;

  //! \throws InputError("BadChain") on a wrong occurrence or i_0 != 0.
  void validate(const Substitution& s) const;
  //! j_0 = 0 and j_{k+1} = j_k + |σ^k(c_0)| + ... + |σ^k(c_{i-1})| where
  //! σ(a_{k+1}) = c_0 c_1 ... and i = i_{k+1}.
  std::vector<std::uint64_t> cut_points(const Substitution& s) const;
};

//! σ^n(a_n) placed on [-j_n, |σ^n(a_n)| - j_n), cut to radius r.
//! \throws ScaleError("InsufficientGrowth") if j_n < r or |σ^n(a_n)| - j_n < r.
MarkedWindow m0_window(const Substitution& s, const ChainPrefix& chain, std::size_t radius);

struct CoreVerdict {
  bool consistent = true;
  //! Level at which no parse keeps the marker on a cut (0 if consistent).
  unsigned refuted_at = 0;
};

//! Necessary condition for lying in σ^n(X): an n-fold parse chain whose
//! tiles have a cut at the marker on every level.
CoreVerdict core_membership(const Substitution& s, const MarkedWindow& window, unsigned n);

}  // namespace subdyn
