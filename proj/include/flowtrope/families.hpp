#ifndef FLOWTROPE_FAMILIES_HPP_
#define FLOWTROPE_FAMILIES_HPP_

// Named substitutions on {a, b} that recur in examples and tests.

#include "flowtrope/symbolic.hpp"

namespace flowtrope::families {

  inline Substitution sigma() {
    return Substitution::from_strings("ab", {"aabaabab", "aabab"});
  }

  inline Substitution tau() {
    return Substitution::from_strings("ab", {"aabaabab", "abaab"});
  }

  inline Substitution rho() {
    return Substitution::from_strings("ab", {"ba", "bba"});
  }

  //! c_a sigma, spelled positively.
  inline Substitution alpha() {
    return Substitution::from_strings("ab", {"abaababa", "ababa"});
  }

  //! c_{b^-1} sigma, spelled positively.
  inline Substitution beta() {
    return Substitution::from_strings("ab", {"baabaaba", "baaba"});
  }

  inline Substitution thue_morse() {
    return Substitution::from_strings("ab", {"abba", "baab"});
  }

  inline Substitution fibonacci() {
    return Substitution::from_strings("ab", {"ab", "a"});
  }

}  // namespace flowtrope::families

#endif  // FLOWTROPE_FAMILIES_HPP_
