#ifndef FLOWTROPE_TROPE_HPP_
#define FLOWTROPE_TROPE_HPP_

// The positive trope relation f ~ g (f = c_a g for some a), conjugate zigzag
// diagrams, and validation of primitive proper sequences.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "flowtrope/error.hpp"
#include "flowtrope/freegroup.hpp"
#include "flowtrope/symbolic.hpp"

namespace flowtrope {

  namespace detail {

    inline std::size_t primitive_root_length(Word const& w) {
      std::size_t const n = w.size();
      for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) {
          continue;
        }
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) {
          periodic = w[i] == w[i - p];
        }
        if (periodic) {
          return p;
        }
      }
      return n;
    }

    // Length of the longest common prefix of x^omega and y^omega. Finite
    // unless the primitive roots agree; Fine and Wilf bound it by
    // |x| + |y| - gcd(|x|, |y|), which is also where we stop.
    inline std::size_t omega_lcp(Word const& x, Word const& y) {
      std::size_t const bound = x.size() + y.size();
      for (std::size_t i = 0; i < bound; ++i) {
        if (x[i % x.size()] != y[i % y.size()]) {
          return i;
        }
      }
      return bound;
    }

    // Per generator: the positive solutions x of w x = x u are the prefixes
    // of r^omega of length t = offset (mod |r|), r the primitive root of w.
    struct PeriodicSolutions {
      Word        root;
      std::size_t offset;
    };

    inline std::optional<PeriodicSolutions> solve_one(Word const& w, Word const& u) {
      if (w.size() != u.size()) {
        return std::nullopt;
      }
      std::size_t const ell = primitive_root_length(w);
      Word              root(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(ell));
      std::size_t const n = w.size();
      // x = r^k p with r = p q needs u = (q p)^e, i.e. u is w rotated left by |p|.
      for (std::size_t t = 0; t < ell; ++t) {
        bool match = true;
        for (std::size_t i = 0; i < n && match; ++i) {
          match = u[i] == w[(i + t) % n];
        }
        if (match) {
          return PeriodicSolutions{std::move(root), t};
        }
      }
      return std::nullopt;
    }

    // Shortest positive x with g(e) x = x f(e) for every generator e, i.e.
    // f = c_x g.
    inline std::optional<Word> solve_positive(GroupHom const& f, GroupHom const& g) {
      std::vector<PeriodicSolutions> sols;
      for (std::size_t i = 0; i < f.domain_rank(); ++i) {
        auto s = solve_one(g.image(i).symbols(), f.image(i).symbols());
        if (!s) {
          return std::nullopt;
        }
        sols.push_back(std::move(*s));
      }
      if (sols.empty()) {
        return Word{};
      }
      Word const& r0 = sols.front().root;
      std::size_t limit = static_cast<std::size_t>(-1);
      for (auto const& s : sols) {
        if (s.root != r0) {
          limit = std::min(limit, omega_lcp(r0, s.root));
        }
      }
      if (limit == static_cast<std::size_t>(-1)) {
        // One common root: the congruences must coincide.
        for (auto const& s : sols) {
          if (s.offset != sols.front().offset) {
            return std::nullopt;
          }
        }
        limit = sols.front().offset;
      }
      for (std::size_t t = 0; t <= limit; ++t) {
        bool ok = true;
        for (auto const& s : sols) {
          ok = ok && t % s.root.size() == s.offset;
        }
        if (ok) {
          Word x(t);
          for (std::size_t i = 0; i < t; ++i) {
            x[i] = r0[i % r0.size()];
          }
          return x;
        }
      }
      return std::nullopt;
    }

    inline void check_trope_input(GroupHom const& f, GroupHom const& g) {
      if (f.domain_rank() != g.domain_rank()
          || f.codomain_rank() != g.codomain_rank()) {
        throw Error(ErrorKind::RankMismatch,
                    "homs must share domain and codomain ranks");
      }
      if (!is_positive_hom(f) || !is_positive_hom(g)) {
        throw Error(ErrorKind::NotPositive, "trope relation needs positive homs");
      }
    }

  }  // namespace detail

  //! Some a with conjugate_hom(g, a) == f, or nullopt. The witness is the
  //! shortest one, ties broken in shortlex order. Witnesses are never unique
  //! when the images share a common root (the centralizer is then non-trivial).
  inline std::optional<GroupWord> solve_conjugator(GroupHom const& f,
                                                   GroupHom const& g) {
    detail::check_trope_input(f, g);
    std::size_t const        n = f.codomain_rank();
    std::optional<GroupWord> best;
    if (auto x = detail::solve_positive(f, g)) {
      best = GroupWord::positive(n, *x);
    }
    if (auto y = detail::solve_positive(g, f)) {
      GroupWord a = GroupWord::positive(n, *y).inverse();
      if (!best || shortlex_less(a, *best)) {
        best = std::move(a);
      }
    }
    if (best && !(conjugate_hom(g, *best) == f)) {
      throw std::logic_error("solve_conjugator produced a false witness");
    }
    return best;
  }

  inline bool are_trope_related(GroupHom const& f, GroupHom const& g) {
    return solve_conjugator(f, g).has_value();
  }

  ////////////////////////////////////////////////////////////////////////////
  // Conjugate zigzag diagrams
  ////////////////////////////////////////////////////////////////////////////

  //! top[n] : top level n + 1 -> top level n, bottom[n] likewise.
  //! downs[n] : top n -> bottom n, ups[n] : bottom n + 1 -> top n.
  //! The triangles are
  //!   lower(n): downs[n] o ups[n]      = c_{h[n]} bottom[n]
  //!   upper(n): ups[n]   o downs[n + 1] = c_{g[n]} top[n]
  //! where g = up_conjugators, h = down_conjugators.
  struct CzzWitness {
    std::vector<GroupHom>  top;
    std::vector<GroupHom>  bottom;
    std::vector<GroupHom>  downs;
    std::vector<GroupHom>  ups;
    std::vector<GroupWord> down_conjugators;
    std::vector<GroupWord> up_conjugators;
  };

  struct Triangle {
    enum class Side { Lower, Upper };
    Side        side;
    std::size_t level;

    friend bool operator==(Triangle const&, Triangle const&) = default;
  };

  inline std::string to_string(Triangle const& t) {
    return std::string(t.side == Triangle::Side::Lower ? "lower" : "upper")
           + " " + std::to_string(t.level);
  }

  struct CzzFailure {
    Triangle    triangle;
    std::string reason;
  };

  struct CzzReport {
    bool                      ok;
    std::optional<CzzFailure> first_failure;
    std::size_t               triangles_checked;
  };

  //! Checks every triangle whose four ingredients are present, in zigzag
  //! order lower(0), upper(0), lower(1), ... Nothing is extrapolated.
  inline CzzReport verify_czz(CzzWitness const& w) {
    std::size_t levels = std::max({w.top.size(), w.bottom.size(), w.downs.size(),
                                   w.ups.size()});
    std::size_t checked = 0;
    auto check = [&](Triangle t,
                     GroupHom const&  outer,
                     GroupHom const&  inner,
                     GroupHom const&  bond,
                     GroupWord const& conj) -> std::optional<CzzFailure> {
      ++checked;
      try {
        GroupHom lhs = compose_hom(outer, inner);
        GroupHom rhs = conjugate_hom(bond, conj);
        if (!(lhs == rhs)) {
          return CzzFailure{t, "composite differs from the conjugated bond"};
        }
      } catch (Error const& e) {
        if (e.kind() == ErrorKind::RankMismatch) {
          throw Error(ErrorKind::RankMismatch,
                      "triangle " + to_string(t) + ": " + e.what());
        }
        throw;
      }
      return std::nullopt;
    };
    for (std::size_t n = 0; n < levels; ++n) {
      if (n < w.downs.size() && n < w.ups.size() && n < w.bottom.size()
          && n < w.down_conjugators.size()) {
        if (auto f = check({Triangle::Side::Lower, n}, w.downs[n], w.ups[n],
                           w.bottom[n], w.down_conjugators[n])) {
          return {false, std::move(f), checked};
        }
      }
      if (n < w.ups.size() && n + 1 < w.downs.size() && n < w.top.size()
          && n < w.up_conjugators.size()) {
        if (auto f = check({Triangle::Side::Upper, n}, w.ups[n], w.downs[n + 1],
                           w.top[n], w.up_conjugators[n])) {
          return {false, std::move(f), checked};
        }
      }
    }
    return {true, std::nullopt, checked};
  }

  ////////////////////////////////////////////////////////////////////////////
  // Primitive proper sequences
  ////////////////////////////////////////////////////////////////////////////

  //! Which of the two checks failed, with their reports.
  struct PpsRejection {
    ProperReport    proper;
    PrimitiveReport primitive;

    [[nodiscard]] bool proper_failed() const noexcept {
      return proper.verdict != ProperVerdict::Proper;
    }
    [[nodiscard]] bool primitive_failed() const noexcept {
      return primitive.verdict != PrimitiveVerdict::Primitive;
    }
  };

  //! A sequence that passed both symbolic checks, with its levels lifted to
  //! positive homomorphisms.
  class PpsSpec {
   public:
    [[nodiscard]] SequenceSpec const& sequence() const noexcept {
      return _sequence;
    }
    [[nodiscard]] ProperReport const& proper() const noexcept {
      return _proper;
    }
    [[nodiscard]] PrimitiveReport const& primitive() const noexcept {
      return _primitive;
    }
    [[nodiscard]] GroupHom hom(std::size_t level) const {
      return hom_from_substitution(_sequence.level(level));
    }

   private:
    PpsSpec(SequenceSpec seq, ProperReport p, PrimitiveReport q)
        : _sequence(std::move(seq)), _proper(p), _primitive(q) {}

    friend std::variant<PpsSpec, PpsRejection>
    validate_pps(SequenceSpec const&, std::size_t);

    SequenceSpec    _sequence;
    ProperReport    _proper;
    PrimitiveReport _primitive;
  };

  inline std::variant<PpsSpec, PpsRejection> validate_pps(SequenceSpec const& seq,
                                                          std::size_t window = 8) {
    auto p = sequence_is_proper(seq, window);
    auto q = sequence_is_primitive(seq, window);
    if (p.verdict == ProperVerdict::Proper
        && q.verdict == PrimitiveVerdict::Primitive) {
      return PpsSpec(seq, p, q);
    }
    return PpsRejection{p, q};
  }

}  // namespace flowtrope

#endif  // FLOWTROPE_TROPE_HPP_
