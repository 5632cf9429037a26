#ifndef FLOWTROPE_REWRITE_HPP_
#define FLOWTROPE_REWRITE_HPP_

// Factor languages of substitution subshifts, and the return-word rewriting
// that turns a primitive substitution into a proper one on tiles.
//
// A junction (a, b, k) has s^k(a) ending with a, s^k(b) starting with b and
// ab in the language. Tiles are the words between consecutive occurrences
// of ab in the right-infinite fixed point of s^k starting with b; each tile
// starts with b and ends with a, so s^k of a tile splits again into tiles.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flowtrope/error.hpp"
#include "flowtrope/symbolic.hpp"

namespace flowtrope {

  //! Factors of the subshift of lengths 1 .. max_length, each length in
  //! lexicographic order of symbol indices.
  class LanguageTable {
   public:
    LanguageTable(Substitution s, std::vector<std::set<Word>> by_length)
        : _substitution(std::move(s)), _by_length(std::move(by_length)) {}

    [[nodiscard]] Substitution const& substitution() const noexcept {
      return _substitution;
    }
    [[nodiscard]] std::size_t max_length() const noexcept {
      return _by_length.size();
    }
    [[nodiscard]] std::set<Word> const& words(std::size_t length) const {
      if (length == 0 || length > _by_length.size()) {
        throw Error(ErrorKind::BadIndex,
                    "no factors of length " + std::to_string(length) + " stored");
      }
      return _by_length[length - 1];
    }
    [[nodiscard]] bool contains(Word const& w) const {
      return !w.empty() && w.size() <= _by_length.size()
             && _by_length[w.size() - 1].contains(w);
    }

   private:
    Substitution                _substitution;
    std::vector<std::set<Word>> _by_length;
  };

  namespace detail {

    inline void require_primitive_endomorphism(Substitution const& s) {
      if (!s.is_endomorphism()) {
        throw Error(ErrorKind::NotEndomorphic, "substitution is not an endomorphism");
      }
      if (!is_eventually_primitive(s)) {
        throw Error(ErrorKind::NotPrimitive, "substitution is not primitive");
      }
    }

    inline void add_factors(Word const& w, std::size_t k, std::vector<std::set<Word>>& out) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t len = 1; len <= k && i + len <= w.size(); ++len) {
          out[len - 1].emplace(w.begin() + static_cast<std::ptrdiff_t>(i),
                               w.begin() + static_cast<std::ptrdiff_t>(i + len));
        }
      }
    }

  }  // namespace detail

  //! Every factor of length <= k of s^n(x), over all n and letters x. A factor
  //! of s(v) of length <= k lies in s(u) for a factor u of v of length <= k,
  //! so closing the letters under "factors of images" is exact.
  inline LanguageTable language(Substitution const& s, std::size_t k) {
    detail::require_primitive_endomorphism(s);
    if (k == 0) {
      throw Error(ErrorKind::ValidationError, "factor length must be positive");
    }
    std::vector<std::set<Word>> table(k);
    std::vector<Word>           frontier;
    for (Symbol x = 0; x < s.source().size(); ++x) {
      table[0].insert(Word{x});
      frontier.push_back(Word{x});
    }
    while (!frontier.empty()) {
      std::vector<Word> next;
      for (Word const& u : frontier) {
        std::vector<std::set<Word>> found(k);
        detail::add_factors(s.apply(u), k, found);
        for (std::size_t len = 0; len < k; ++len) {
          for (auto const& w : found[len]) {
            if (table[len].insert(w).second) {
              next.push_back(w);
            }
          }
        }
      }
      frontier = std::move(next);
    }
    return LanguageTable(s, std::move(table));
  }

  struct Junction {
    Symbol      left;
    Symbol      right;
    std::size_t k;

    friend bool operator==(Junction const&, Junction const&) = default;
  };

  namespace detail {
    inline bool junction_ends_ok(Substitution const& sk, Symbol a, Symbol b) {
      return sk.image(a).back() == a && sk.image(b).front() == b;
    }
  }  // namespace detail

  //! For each pair (a, b) with ab in the language, the smallest k <= max_k
  //! making (a, b, k) a junction. Sorted by (a, b).
  inline std::vector<Junction> junction_candidates(Substitution const& s,
                                                   std::size_t         max_k) {
    detail::require_primitive_endomorphism(s);
    auto const             lang = language(s, 2);
    std::size_t const      n    = s.source().size();
    std::vector<Junction>  out;
    std::vector<Substitution> powers;
    Substitution           p = s;
    for (std::size_t k = 1; k <= max_k; ++k) {
      powers.push_back(p);
      p = compose(p, s);
    }
    for (Symbol a = 0; a < n; ++a) {
      for (Symbol b = 0; b < n; ++b) {
        if (!lang.contains(Word{a, b})) {
          continue;
        }
        for (std::size_t k = 1; k <= max_k; ++k) {
          if (detail::junction_ends_ok(powers[k - 1], a, b)) {
            out.push_back({a, b, k});
            break;
          }
        }
      }
    }
    return out;
  }

  //! For a proper substitution, (last letter, first letter, 1) is a junction.
  inline Junction induced_junction(Substitution const& s) {
    if (!is_proper(s)) {
      throw Error(ErrorKind::InvalidJunction, "substitution is not proper");
    }
    return {s.image(0).back(), s.image(0).front(), 1};
  }

  struct ProperRewrite {
    std::vector<Word> tiles;       // over the original alphabet
    Substitution      rewritten;   // on the tile alphabet A, B, ...
    Junction          junction;
  };

  //! Spelling of a word over the tile alphabet in the original letters.
  inline Word flatten(ProperRewrite const& r, Word const& tile_word) {
    Word out;
    for (Symbol t : tile_word) {
      out.insert(out.end(), r.tiles.at(t).begin(), r.tiles.at(t).end());
    }
    return out;
  }

  namespace detail {

    inline Alphabet tile_alphabet(std::size_t n) {
      if (n <= 26) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) {
          names.emplace_back(1, static_cast<char>('A' + i));
        }
        return Alphabet(std::move(names));
      }
      return Alphabet::numbered(n, "T");
    }

    // Cut points: 0 and every p with w[p - 1] == a, w[p] == b.
    inline std::vector<std::size_t> cuts(Word const& w, Symbol a, Symbol b) {
      std::vector<std::size_t> out{0};
      for (std::size_t p = 1; p < w.size(); ++p) {
        if (w[p - 1] == a && w[p] == b) {
          out.push_back(p);
        }
      }
      return out;
    }

    inline ProperRewrite rewrite_once(Substitution const& s,
                                      Junction const&     j,
                                      std::size_t         horizon) {
      Substitution const sk = power(s, j.k);
      Word               w{j.right};
      while (w.size() < horizon) {
        Word next = sk.apply(w);
        if (next.size() == w.size()) {
          throw Error(ErrorKind::NotAperiodic, "fixed point does not grow");
        }
        w = std::move(next);
      }
      w.resize(horizon);

      auto const        cut = cuts(w, j.left, j.right);
      std::vector<Word> tiles;
      std::map<Word, Symbol> index;
      for (std::size_t i = 0; i + 1 < cut.size(); ++i) {
        Word t(w.begin() + static_cast<std::ptrdiff_t>(cut[i]),
               w.begin() + static_cast<std::ptrdiff_t>(cut[i + 1]));
        if (index.emplace(t, static_cast<Symbol>(tiles.size())).second) {
          tiles.push_back(std::move(t));
        }
      }
      if (tiles.empty()) {
        throw Error(ErrorKind::HorizonTooSmall, "no complete tile within the horizon");
      }
      if (tiles.size() < 2) {
        throw Error(ErrorKind::NotAperiodic, "only one return word");
      }

      std::vector<Word> images;
      for (Word const& t : tiles) {
        Word        u = sk.apply(t);
        auto        c = cuts(u, j.left, j.right);
        Word        img;
        c.push_back(u.size());
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
          Word piece(u.begin() + static_cast<std::ptrdiff_t>(c[i]),
                     u.begin() + static_cast<std::ptrdiff_t>(c[i + 1]));
          auto it = index.find(piece);
          if (it == index.end()) {
            throw Error(ErrorKind::HorizonTooSmall,
                        "image of a tile contains an unseen tile");
          }
          img.push_back(it->second);
        }
        images.push_back(std::move(img));
      }
      Alphabet     tiles_ab = tile_alphabet(tiles.size());
      Substitution rewritten(tiles_ab, tiles_ab, std::move(images));
      if (!is_proper(rewritten)) {
        throw Error(ErrorKind::InvalidJunction, "rewritten substitution is not proper");
      }
      return {std::move(tiles), std::move(rewritten), j};
    }

  }  // namespace detail

  inline void validate_junction(Substitution const& s, Junction const& j) {
    std::size_t const n = s.source().size();
    if (j.left >= n || j.right >= n || j.k == 0) {
      throw Error(ErrorKind::InvalidJunction, "junction symbols or exponent out of range");
    }
    if (!detail::junction_ends_ok(power(s, j.k), j.left, j.right)) {
      throw Error(ErrorKind::InvalidJunction,
                  "s^k(a) must end with a and s^k(b) start with b");
    }
    if (!language(s, 2).contains(Word{j.left, j.right})) {
      throw Error(ErrorKind::InvalidJunction, "ab does not occur in the language");
    }
  }

  //! Scans the first `horizon` letters of the fixed point.
  inline ProperRewrite rewrite_proper(Substitution const& s,
                                      Junction const&     j,
                                      std::size_t         horizon) {
    detail::require_primitive_endomorphism(s);
    validate_junction(s, j);
    if (horizon == 0) {
      throw Error(ErrorKind::HorizonTooSmall, "horizon must be positive");
    }
    return detail::rewrite_once(s, j, horizon);
  }

  //! n^2 * max |s^(2k)(x)| letters, doubled up to four times while the scan
  //! misses a tile or sees a single one.
  inline ProperRewrite rewrite_proper(Substitution const& s, Junction const& j) {
    detail::require_primitive_endomorphism(s);
    validate_junction(s, j);
    Substitution const s2k = power(s, 2 * j.k);
    std::size_t        longest = 0;
    for (auto const& img : s2k.images()) {
      longest = std::max(longest, img.size());
    }
    std::size_t const n       = s.source().size();
    std::size_t       horizon = n * n * longest;
    for (int attempt = 0;; ++attempt) {
      try {
        return detail::rewrite_once(s, j, horizon);
      } catch (Error const& e) {
        bool short_scan = e.kind() == ErrorKind::HorizonTooSmall
                          || e.kind() == ErrorKind::NotAperiodic;
        if (!short_scan || attempt == 4) {
          throw;
        }
        horizon *= 2;
      }
    }
  }

  //! A bijection p on symbols with y.image(p[x]) == p(x.image(x)), if any.
  inline std::optional<std::vector<Symbol>> relabeling(Substitution const& x,
                                                       Substitution const& y) {
    std::size_t const n = x.source().size();
    if (!x.is_endomorphism() || !y.is_endomorphism() || y.source().size() != n) {
      return std::nullopt;
    }
    constexpr Symbol    none = static_cast<Symbol>(-1);
    std::vector<Symbol> fwd(n, none), bwd(n, none);

    // Assigns u -> v and everything it forces; false on contradiction.
    auto propagate = [&](Symbol u0, Symbol v0) {
      std::vector<std::pair<Symbol, Symbol>> todo{{u0, v0}};
      while (!todo.empty()) {
        auto [u, v] = todo.back();
        todo.pop_back();
        if (fwd[u] == v && bwd[v] == u) {
          continue;
        }
        if (fwd[u] != none || bwd[v] != none) {
          return false;
        }
        fwd[u] = v;
        bwd[v] = u;
        Word const& a = x.image(u);
        Word const& b = y.image(v);
        if (a.size() != b.size()) {
          return false;
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
          todo.emplace_back(a[i], b[i]);
        }
      }
      return true;
    };

    auto search = [&](auto&& self) -> bool {
      auto it = std::find(fwd.begin(), fwd.end(), none);
      if (it == fwd.end()) {
        return true;
      }
      Symbol u = static_cast<Symbol>(it - fwd.begin());
      for (Symbol v = 0; v < n; ++v) {
        if (bwd[v] != none) {
          continue;
        }
        auto saved_f = fwd;
        auto saved_b = bwd;
        if (propagate(u, v) && self(self)) {
          return true;
        }
        fwd = std::move(saved_f);
        bwd = std::move(saved_b);
      }
      return false;
    };
    if (!search(search)) {
      return std::nullopt;
    }
    return fwd;
  }

  inline bool equal_up_to_relabeling(Substitution const& x, Substitution const& y) {
    return relabeling(x, y).has_value();
  }

}  // namespace flowtrope

#endif  // FLOWTROPE_REWRITE_HPP_
