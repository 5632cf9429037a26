#ifndef FLOWTROPE_ABELIAN_HPP_
#define FLOWTROPE_ABELIAN_HPP_

// Letter-count matrices, the L/R factorization of nonnegative unimodular 2x2
// matrices, tail equivalence of label streams, and classification of the
// two-letter families built from a dictionary of substitutions.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "flowtrope/error.hpp"
#include "flowtrope/families.hpp"
#include "flowtrope/folding.hpp"
#include "flowtrope/freegroup.hpp"
#include "flowtrope/symbolic.hpp"
#include "flowtrope/trope.hpp"

namespace flowtrope {

  ////////////////////////////////////////////////////////////////////////////
  // IntMatrix
  ////////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::int64_t checked_add(std::int64_t x, std::int64_t y) {
      std::int64_t r;
      if (__builtin_add_overflow(x, y, &r)) {
        throw Error(ErrorKind::Overflow, "integer overflow in matrix arithmetic");
      }
      return r;
    }
    inline std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
      std::int64_t r;
      if (__builtin_mul_overflow(x, y, &r)) {
        throw Error(ErrorKind::Overflow, "integer overflow in matrix arithmetic");
      }
      return r;
    }
  }  // namespace detail

  //! Dense row-major integer matrix. Arithmetic throws Overflow rather than
  //! wrapping.
  class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : _rows(rows), _cols(cols), _entries(rows * cols, 0) {}

    //! From nested rows; all rows must have equal length.
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
        : IntMatrix(std::vector<std::vector<std::int64_t>>(rows.begin(), rows.end())) {}

    explicit IntMatrix(std::vector<std::vector<std::int64_t>> const& rows)
        : _rows(rows.size()), _cols(rows.empty() ? 0 : rows.front().size()) {
      for (auto const& r : rows) {
        if (r.size() != _cols) {
          throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
        }
        _entries.insert(_entries.end(), r.begin(), r.end());
      }
    }

    static IntMatrix identity(std::size_t n) {
      IntMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
      }
      return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept {
      return _rows;
    }
    [[nodiscard]] std::size_t cols() const noexcept {
      return _cols;
    }
    [[nodiscard]] bool is_square() const noexcept {
      return _rows == _cols;
    }
    [[nodiscard]] std::vector<std::int64_t> const& entries() const noexcept {
      return _entries;
    }

    std::int64_t& operator()(std::size_t i, std::size_t j) {
      return _entries[i * _cols + j];
    }
    std::int64_t operator()(std::size_t i, std::size_t j) const {
      return _entries[i * _cols + j];
    }

    [[nodiscard]] bool nonnegative() const {
      return std::all_of(_entries.begin(), _entries.end(),
                         [](std::int64_t x) { return x >= 0; });
    }

    friend IntMatrix operator*(IntMatrix const& x, IntMatrix const& y) {
      if (x._cols != y._rows) {
        throw Error(ErrorKind::DimensionMismatch,
                    "cannot multiply " + std::to_string(x._rows) + "x"
                        + std::to_string(x._cols) + " by "
                        + std::to_string(y._rows) + "x" + std::to_string(y._cols));
      }
      IntMatrix out(x._rows, y._cols);
      for (std::size_t i = 0; i < x._rows; ++i) {
        for (std::size_t k = 0; k < x._cols; ++k) {
          std::int64_t a = x(i, k);
          if (a == 0) {
            continue;
          }
          for (std::size_t j = 0; j < y._cols; ++j) {
            out(i, j) = detail::checked_add(out(i, j), detail::checked_mul(a, y(k, j)));
          }
        }
      }
      return out;
    }

    friend bool operator==(IntMatrix const&, IntMatrix const&) = default;

   private:
    std::size_t               _rows = 0;
    std::size_t               _cols = 0;
    std::vector<std::int64_t> _entries;
  };

  inline std::int64_t det2(IntMatrix const& m) {
    if (m.rows() != 2 || m.cols() != 2) {
      throw Error(ErrorKind::BadDimension, "expected a 2x2 matrix");
    }
    return detail::checked_add(detail::checked_mul(m(0, 0), m(1, 1)),
                               -detail::checked_mul(m(0, 1), m(1, 0)));
  }

  //! Entry (i, j) counts target symbol i in the image of source symbol j, so
  //! abelianize(compose(s, t)) == abelianize(s) * abelianize(t). For sigma,
  //! a -> aabaabab and b -> aabab give the columns (5, 3) and (3, 2).
  inline IntMatrix abelianize(Substitution const& s) {
    IntMatrix m(s.target().size(), s.source().size());
    for (Symbol j = 0; j < s.source().size(); ++j) {
      for (Symbol i : s.image(j)) {
        m(i, j) += 1;
      }
    }
    return m;
  }

  //! Signed exponent sums; same convention as for substitutions.
  inline IntMatrix abelianize(GroupHom const& h) {
    IntMatrix m(h.codomain_rank(), h.domain_rank());
    for (std::size_t j = 0; j < h.domain_rank(); ++j) {
      for (Letter l : h.image(j).letters()) {
        m(l.gen, j) += l.sign();
      }
    }
    return m;
  }

  ////////////////////////////////////////////////////////////////////////////
  // FactorChain
  ////////////////////////////////////////////////////////////////////////////

  //! M = M_0 M_1 ... M_k with M_0 in {I, S} and the rest in {L, R}, where
  //! L = (1 0; 1 1), R = (1 1; 0 1), S = (0 1; 1 0).
  struct FactorChain {
    enum class Head { I, S };
    enum class Tag { L, R };

    Head             head = Head::I;
    std::vector<Tag> tail;

    friend bool operator==(FactorChain const&, FactorChain const&) = default;
  };

  inline IntMatrix matrix_of(FactorChain::Tag t) {
    return t == FactorChain::Tag::L ? IntMatrix{{1, 0}, {1, 1}}
                                    : IntMatrix{{1, 1}, {0, 1}};
  }

  inline IntMatrix matrix_of(FactorChain::Head h) {
    return h == FactorChain::Head::I ? IntMatrix::identity(2)
                                     : IntMatrix{{0, 1}, {1, 0}};
  }

  //! "I;RLRL", "S;" and so on.
  inline std::string to_string(FactorChain const& c) {
    std::string out = c.head == FactorChain::Head::I ? "I;" : "S;";
    for (auto t : c.tail) {
      out += t == FactorChain::Tag::L ? 'L' : 'R';
    }
    return out;
  }

  inline FactorChain parse_chain(std::string_view text) {
    if (text.size() < 2 || (text[0] != 'I' && text[0] != 'S') || text[1] != ';') {
      throw Error(ErrorKind::ValidationError,
                  "chain must start with \"I;\" or \"S;\"");
    }
    FactorChain c;
    c.head = text[0] == 'I' ? FactorChain::Head::I : FactorChain::Head::S;
    for (char ch : text.substr(2)) {
      if (ch == 'L') {
        c.tail.push_back(FactorChain::Tag::L);
      } else if (ch == 'R') {
        c.tail.push_back(FactorChain::Tag::R);
      } else {
        throw Error(ErrorKind::ValidationError,
                    std::string("unexpected chain tag '") + ch + "'");
      }
    }
    return c;
  }

  inline IntMatrix multiply_out(FactorChain const& c) {
    IntMatrix m = matrix_of(c.head);
    for (auto t : c.tail) {
      m = m * matrix_of(t);
    }
    return m;
  }

  //! The unique chain for a nonnegative 2x2 matrix of determinant +-1.
  inline FactorChain factorize_gl2(IntMatrix m) {
    if (m.rows() != 2 || m.cols() != 2) {
      throw Error(ErrorKind::BadDimension, "factorization needs a 2x2 matrix");
    }
    if (!m.nonnegative()) {
      throw Error(ErrorKind::NegativeEntry, "factorization needs entries >= 0");
    }
    std::int64_t d = det2(m);
    if (d != 1 && d != -1) {
      throw Error(ErrorKind::NotUnimodular,
                  "determinant is " + std::to_string(d));
    }
    FactorChain c;
    if (d == -1) {
      c.head = FactorChain::Head::S;
      m      = matrix_of(FactorChain::Head::S) * m;
    }
    IntMatrix const id = IntMatrix::identity(2);
    while (!(m == id)) {
      bool row0_dominates = m(0, 0) >= m(1, 0) && m(0, 1) >= m(1, 1);
      bool row1_dominates = m(1, 0) >= m(0, 0) && m(1, 1) >= m(0, 1);
      if (row0_dominates) {
        c.tail.push_back(FactorChain::Tag::R);
        m(0, 0) -= m(1, 0);
        m(0, 1) -= m(1, 1);
      } else if (row1_dominates) {
        c.tail.push_back(FactorChain::Tag::L);
        m(1, 0) -= m(0, 0);
        m(1, 1) -= m(0, 1);
      } else {
        throw Error(ErrorKind::NotUnimodular, "no row dominates");
      }
    }
    return c;
  }

  ////////////////////////////////////////////////////////////////////////////
  // LabelStream and tail equivalence
  ////////////////////////////////////////////////////////////////////////////

  //! A sequence of labels from a fixed label set, either finite or
  //! eventually periodic (prefix then a repeating non-empty cycle).
  class LabelStream {
   public:
    static LabelStream finite(std::vector<std::string> labels,
                              std::set<std::string>    label_set) {
      return LabelStream(std::move(labels), {}, false, std::move(label_set));
    }

    static LabelStream eventually_periodic(std::vector<std::string> prefix,
                                           std::vector<std::string> cycle,
                                           std::set<std::string>    label_set) {
      if (cycle.empty()) {
        throw Error(ErrorKind::ValidationError, "periodic cycle is empty");
      }
      return LabelStream(std::move(prefix), std::move(cycle), true,
                         std::move(label_set));
    }

    [[nodiscard]] bool is_periodic() const noexcept {
      return _periodic;
    }
    [[nodiscard]] std::vector<std::string> const& prefix() const noexcept {
      return _prefix;
    }
    [[nodiscard]] std::vector<std::string> const& cycle() const noexcept {
      return _cycle;
    }
    [[nodiscard]] std::set<std::string> const& label_set() const noexcept {
      return _label_set;
    }

    //! Label i; finite streams throw BadIndex past their end.
    [[nodiscard]] std::string const& at(std::size_t i) const {
      if (i < _prefix.size()) {
        return _prefix[i];
      }
      if (!_periodic) {
        throw Error(ErrorKind::BadIndex, "index past the end of a finite stream");
      }
      return _cycle[(i - _prefix.size()) % _cycle.size()];
    }

    //! Tail equivalent to a constant sequence.
    [[nodiscard]] bool is_eventually_constant() const {
      return _periodic
             && std::all_of(_cycle.begin(), _cycle.end(),
                            [&](auto const& l) { return l == _cycle.front(); });
    }

    //! Every label occurring in the stream.
    [[nodiscard]] std::set<std::string> used_labels() const {
      std::set<std::string> out(_prefix.begin(), _prefix.end());
      out.insert(_cycle.begin(), _cycle.end());
      return out;
    }

    friend bool operator==(LabelStream const&, LabelStream const&) = default;

   private:
    LabelStream(std::vector<std::string> prefix,
                std::vector<std::string> cycle,
                bool                     periodic,
                std::set<std::string>    label_set)
        : _prefix(std::move(prefix)),
          _cycle(std::move(cycle)),
          _periodic(periodic),
          _label_set(std::move(label_set)) {
      for (auto const* part : {&_prefix, &_cycle}) {
        for (auto const& l : *part) {
          if (!_label_set.contains(l)) {
            throw Error(ErrorKind::ValidationError,
                        "label \"" + l + "\" is not in the label set");
          }
        }
      }
    }

    std::vector<std::string> _prefix;
    std::vector<std::string> _cycle;
    bool                     _periodic;
    std::set<std::string>    _label_set;
  };

  enum class TailVerdictKind { Equivalent, Distinct, Inconclusive };

  inline std::string_view to_string(TailVerdictKind k) noexcept {
    switch (k) {
      case TailVerdictKind::Equivalent: return "equivalent";
      case TailVerdictKind::Distinct: return "distinct";
      case TailVerdictKind::Inconclusive: return "inconclusive";
    }
    return "?";
  }

  //! For Equivalent, A from index `offsets.first` on equals B from index
  //! `offsets.second` on.
  struct TailVerdict {
    TailVerdictKind                                   kind;
    std::optional<std::pair<std::size_t, std::size_t>> offsets;
  };

  //! Exact for two eventually periodic streams: offsets can be reduced below
  //! prefix length plus cycle length, and two tails that are both periodic
  //! past max(prefixes) with common period L agree everywhere once they agree
  //! on L consecutive positions there. A finite stream can only be shown
  //! Equivalent, by a common non-empty suffix with another finite stream.
  inline TailVerdict tail_equivalent(LabelStream const& a, LabelStream const& b) {
    if (a.label_set() != b.label_set()) {
      throw Error(ErrorKind::LabelSetMismatch,
                  "streams are over different label sets");
    }
    if (!a.is_periodic() || !b.is_periodic()) {
      if (!a.is_periodic() && !b.is_periodic()) {
        auto const& x = a.prefix();
        auto const& y = b.prefix();
        std::size_t k = 0;
        while (k < x.size() && k < y.size()
               && x[x.size() - 1 - k] == y[y.size() - 1 - k]) {
          ++k;
        }
        if (k > 0) {
          return {TailVerdictKind::Equivalent,
                  std::pair{x.size() - k, y.size() - k}};
        }
      }
      return {TailVerdictKind::Inconclusive, std::nullopt};
    }
    std::size_t const pa = a.prefix().size();
    std::size_t const pb = b.prefix().size();
    std::size_t const period
        = std::lcm(a.cycle().size(), b.cycle().size());
    std::size_t const span = std::max(pa, pb) + period;
    for (std::size_t i = 0; i < pa + period; ++i) {
      for (std::size_t j = 0; j < pb + period; ++j) {
        bool same = true;
        for (std::size_t k = 0; k < span && same; ++k) {
          same = a.at(i + k) == b.at(j + k);
        }
        if (same) {
          return {TailVerdictKind::Equivalent, std::pair{i, j}};
        }
      }
    }
    return {TailVerdictKind::Distinct, std::nullopt};
  }

  ////////////////////////////////////////////////////////////////////////////
  // Free semigroup checks
  ////////////////////////////////////////////////////////////////////////////

  //! Words over generator indices.
  struct SemigroupCollision {
    std::vector<std::size_t> first;
    std::vector<std::size_t> second;
  };

  struct SemigroupVerdict {
    std::optional<SemigroupCollision> collision;  // nullopt: none up to depth

    [[nodiscard]] bool clean() const noexcept {
      return !collision.has_value();
    }
  };

  //! Multiplies out every non-empty word of length <= depth in shortlex
  //! order and reports the first product already seen, paired with the
  //! earlier word giving it.
  inline SemigroupVerdict semigroup_free_check(std::vector<IntMatrix> const& mats,
                                               std::size_t depth) {
    if (mats.empty()) {
      throw Error(ErrorKind::ValidationError, "no generators");
    }
    if (depth == 0) {
      throw Error(ErrorKind::ValidationError, "depth must be positive");
    }
    std::size_t const n = mats.front().rows();
    for (auto const& m : mats) {
      if (m.rows() != n || m.cols() != n) {
        throw Error(ErrorKind::DimensionMismatch,
                    "generators must be square of one dimension");
      }
    }
    std::map<std::vector<std::int64_t>, std::vector<std::size_t>> seen;
    // Level by level; each level in lexicographic order.
    std::vector<std::pair<std::vector<std::size_t>, IntMatrix>> level{
        {{}, IntMatrix::identity(n)}};
    for (std::size_t len = 1; len <= depth; ++len) {
      std::vector<std::pair<std::vector<std::size_t>, IntMatrix>> next;
      next.reserve(level.size() * mats.size());
      for (auto const& [word, prod] : level) {
        for (std::size_t g = 0; g < mats.size(); ++g) {
          auto w = word;
          w.push_back(g);
          IntMatrix p = prod * mats[g];
          auto [it, inserted] = seen.emplace(p.entries(), w);
          if (!inserted) {
            return {SemigroupCollision{it->second, std::move(w)}};
          }
          next.emplace_back(std::move(w), std::move(p));
        }
      }
      level = std::move(next);
    }
    return {std::nullopt};
  }

  namespace detail {

    using Code = std::vector<std::vector<FactorChain::Tag>>;

    // Sardinas-Patterson: the words form a code iff no dangling suffix is
    // itself a codeword.
    inline bool is_code(Code const& words) {
      std::set<std::vector<FactorChain::Tag>> const cw(words.begin(), words.end());
      if (cw.size() != words.size()
          || cw.contains(std::vector<FactorChain::Tag>{})) {
        return false;
      }
      auto quotients = [](auto const& xs, auto const& ys) {
        // { s : x s = y for x in xs, y in ys, s non-empty }
        std::set<std::vector<FactorChain::Tag>> out;
        for (auto const& x : xs) {
          for (auto const& y : ys) {
            if (y.size() > x.size() && std::equal(x.begin(), x.end(), y.begin())) {
              out.emplace(y.begin() + static_cast<std::ptrdiff_t>(x.size()), y.end());
            }
          }
        }
        return out;
      };
      auto current = quotients(cw, cw);
      std::set<std::set<std::vector<FactorChain::Tag>>> history;
      while (!current.empty()) {
        for (auto const& s : current) {
          if (cw.contains(s)) {
            return false;
          }
        }
        if (!history.insert(current).second) {
          return true;
        }
        auto next = quotients(cw, current);
        auto more = quotients(current, cw);
        next.insert(more.begin(), more.end());
        current = std::move(next);
      }
      return true;
    }

  }  // namespace detail

  //! Exact freeness test for nonnegative 2x2 matrices of determinant 1: by
  //! uniqueness of the L/R factorization, they freely generate a free
  //! semigroup exactly when their L/R words form a code. nullopt when some
  //! matrix is outside that class.
  inline std::optional<bool> freely_generates_sl2(std::vector<IntMatrix> const& mats) {
    detail::Code words;
    for (auto const& m : mats) {
      if (m.rows() != 2 || m.cols() != 2 || !m.nonnegative() || det2(m) != 1) {
        return std::nullopt;
      }
      words.push_back(factorize_gl2(m).tail);
    }
    return detail::is_code(words);
  }

  ////////////////////////////////////////////////////////////////////////////
  // Family classification
  ////////////////////////////////////////////////////////////////////////////

  enum class FamilyVerdictKind { FlowEquivalent, Distinct, Unknown };

  inline std::string_view to_string(FamilyVerdictKind k) noexcept {
    switch (k) {
      case FamilyVerdictKind::FlowEquivalent: return "flow-equivalent";
      case FamilyVerdictKind::Distinct: return "distinct";
      case FamilyVerdictKind::Unknown: return "unknown";
    }
    return "?";
  }

  struct FamilyVerdict {
    FamilyVerdictKind kind;
    std::string       reason;
  };

  using Dictionary = std::map<std::string, Substitution>;

  namespace detail {

    inline SequenceSpec to_sequence(LabelStream const& s, Dictionary const& dict) {
      auto lift = [&](std::vector<std::string> const& labels) {
        std::vector<Substitution> out;
        for (auto const& l : labels) {
          out.push_back(dict.at(l));
        }
        return out;
      };
      if (s.is_periodic()) {
        return SequenceSpec::eventually_periodic(lift(s.prefix()), lift(s.cycle()));
      }
      return SequenceSpec::finite(lift(s.prefix()));
    }

    inline bool is_sigma_rho_pair(Substitution const& x, Substitution const& y) {
      auto s = families::sigma();
      auto r = families::rho();
      return (x == s && y == r) || (x == r && y == s);
    }

  }  // namespace detail

  //! Classifies two label streams whose labels name substitutions on one
  //! two-letter alphabet. Only verdicts backed by a theorem are returned:
  //!  - Distinct when one tail uses invertible maps only and the other
  //!    repeats a non-invertible one;
  //!  - FlowEquivalent for tail equivalent streams, and for the constant
  //!    sigma / rho pair;
  //!  - for two non-constant streams whose labels have abelianizations
  //!    freely generating a semigroup, flow equivalence is tail equivalence,
  //!    so they are otherwise Distinct.
  //! Everything else is Unknown.
  inline FamilyVerdict classify_family(LabelStream const& a,
                                       LabelStream const& b,
                                       Dictionary const&  dict) {
    if (a.label_set() != b.label_set()) {
      throw Error(ErrorKind::LabelSetMismatch,
                  "streams are over different label sets");
    }
    std::set<std::string> used = a.used_labels();
    auto                  ub   = b.used_labels();
    used.insert(ub.begin(), ub.end());
    std::optional<Alphabet> alphabet;
    for (auto const& l : used) {
      auto it = dict.find(l);
      if (it == dict.end()) {
        throw Error(ErrorKind::ValidationError,
                    "label \"" + l + "\" has no substitution");
      }
      if (!it->second.is_endomorphism()) {
        throw Error(ErrorKind::NotEndomorphic,
                    "substitution \"" + l + "\" is not an endomorphism");
      }
      if (alphabet && !(*alphabet == it->second.source())) {
        throw Error(ErrorKind::AlphabetMismatch,
                    "substitutions are on different alphabets");
      }
      alphabet = it->second.source();
    }
    if (!a.is_periodic() || !b.is_periodic()) {
      return {FamilyVerdictKind::Unknown, "finite stream"};
    }
    for (auto const* s : {&a, &b}) {
      auto pps = validate_pps(detail::to_sequence(*s, dict));
      if (std::holds_alternative<PpsRejection>(pps)) {
        return {FamilyVerdictKind::Unknown,
                std::string("stream ") + (s == &a ? "A" : "B")
                    + " is not a primitive proper sequence"};
      }
    }

    std::map<std::string, bool> invertible;
    for (auto const& l : used) {
      invertible[l] = is_invertible(hom_from_substitution(dict.at(l)));
    }
    auto all_invertible = [&](LabelStream const& s) {
      return std::all_of(s.cycle().begin(), s.cycle().end(),
                         [&](auto const& l) { return invertible[l]; });
    };
    auto has_noninvertible = [&](LabelStream const& s) {
      return std::any_of(s.cycle().begin(), s.cycle().end(),
                         [&](auto const& l) { return !invertible[l]; });
    };
    if ((all_invertible(a) && has_noninvertible(b))
        || (all_invertible(b) && has_noninvertible(a))) {
      return {FamilyVerdictKind::Distinct,
              "one tail is invertible throughout, the other repeats a "
              "non-invertible map"};
    }

    auto tail = tail_equivalent(a, b);
    if (tail.kind == TailVerdictKind::Equivalent) {
      return {FamilyVerdictKind::FlowEquivalent,
              "tail equivalent at offsets " + std::to_string(tail.offsets->first)
                  + ", " + std::to_string(tail.offsets->second)};
    }

    bool const const_a = a.is_eventually_constant();
    bool const const_b = b.is_eventually_constant();
    if (const_a && const_b
        && detail::is_sigma_rho_pair(dict.at(a.cycle().front()),
                                     dict.at(b.cycle().front()))) {
      return {FamilyVerdictKind::FlowEquivalent,
              "constant sigma and constant rho spaces are flow equivalent"};
    }

    if (!const_a && !const_b) {
      std::vector<IntMatrix> mats;
      for (auto const& l : used) {
        mats.push_back(abelianize(dict.at(l)));
      }
      auto free = freely_generates_sl2(mats);
      if (free && *free) {
        return {FamilyVerdictKind::Distinct,
                "non-constant, abelianizations generate a free semigroup, "
                "and the streams are not tail equivalent"};
      }
      return {FamilyVerdictKind::Unknown,
              free ? "abelianizations do not generate a free semigroup"
                   : "freeness of the abelianizations is not decided"};
    }
    return {FamilyVerdictKind::Unknown,
            "constant stream outside the known constant cases"};
  }

}  // namespace flowtrope

#endif  // FLOWTROPE_ABELIAN_HPP_
