#ifndef FLOWTROPE_FREEGROUP_HPP_
#define FLOWTROPE_FREEGROUP_HPP_

// Reduced words in free groups with a chosen basis, homomorphisms given by
// generator images, and conjugation of homomorphisms.
//
// Conjugation follows c_a h (x) = a^-1 h(x) a, hence
//   conjugate_hom(conjugate_hom(h, a), b) == conjugate_hom(h, a * b),
// i.e. as operators c_b o c_a = c_{ab}.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flowtrope/error.hpp"
#include "flowtrope/symbolic.hpp"

namespace flowtrope {

  //! A generator or its inverse. Ordered by generator, then positive before
  //! inverse.
  struct Letter {
    std::uint32_t gen     = 0;
    bool          inverse = false;

    [[nodiscard]] Letter inverted() const noexcept {
      return {gen, !inverse};
    }
    [[nodiscard]] int sign() const noexcept {
      return inverse ? -1 : 1;
    }

    friend auto operator<=>(Letter const&, Letter const&) = default;
  };

  inline Letter pos(std::uint32_t g) noexcept {
    return {g, false};
  }
  inline Letter neg(std::uint32_t g) noexcept {
    return {g, true};
  }

  enum class SignClass { Identity, Positive, Negative, Mixed };

  inline std::string_view to_string(SignClass c) noexcept {
    switch (c) {
      case SignClass::Identity: return "identity";
      case SignClass::Positive: return "positive";
      case SignClass::Negative: return "negative";
      case SignClass::Mixed: return "mixed";
    }
    return "?";
  }

  //! A freely reduced word in a free group of the given rank.
  class GroupWord {
   public:
    GroupWord() = default;
    explicit GroupWord(std::size_t rank) : _rank(rank) {}

    //! Freely reduces an arbitrary letter sequence.
    static GroupWord reduce(std::size_t rank, std::span<Letter const> letters) {
      GroupWord w(rank);
      for (Letter l : letters) {
        w.push_reduced(l);
      }
      return w;
    }

    static GroupWord positive(std::size_t rank, Word const& symbols) {
      GroupWord w(rank);
      for (Symbol s : symbols) {
        w.push_reduced(pos(s));
      }
      return w;
    }

    static GroupWord generator(std::size_t rank, std::uint32_t g) {
      GroupWord w(rank);
      w.push_reduced(pos(g));
      return w;
    }

    [[nodiscard]] std::size_t rank() const noexcept {
      return _rank;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _letters.size();
    }
    [[nodiscard]] bool empty() const noexcept {
      return _letters.empty();
    }
    [[nodiscard]] std::vector<Letter> const& letters() const noexcept {
      return _letters;
    }
    [[nodiscard]] Letter operator[](std::size_t i) const {
      return _letters[i];
    }

    [[nodiscard]] GroupWord inverse() const {
      GroupWord w(_rank);
      w._letters.reserve(_letters.size());
      for (auto it = _letters.rbegin(); it != _letters.rend(); ++it) {
        w._letters.push_back(it->inverted());
      }
      return w;
    }

    GroupWord& operator*=(GroupWord const& other) {
      check_rank(other._rank);
      for (Letter l : other._letters) {
        push_reduced(l);
      }
      return *this;
    }

    friend GroupWord operator*(GroupWord x, GroupWord const& y) {
      x *= y;
      return x;
    }

    //! Appends one letter, cancelling against the last letter if possible.
    void push_reduced(Letter l) {
      if (l.gen >= _rank) {
        throw Error(ErrorKind::BadIndex,
                    "generator " + std::to_string(l.gen)
                        + " out of range for rank " + std::to_string(_rank));
      }
      if (!_letters.empty() && _letters.back() == l.inverted()) {
        _letters.pop_back();
      } else {
        _letters.push_back(l);
      }
    }

    //! Positive symbols of a word with no inverse letters.
    [[nodiscard]] Word symbols() const {
      Word out;
      out.reserve(_letters.size());
      for (Letter l : _letters) {
        out.push_back(l.gen);
      }
      return out;
    }

    friend bool operator==(GroupWord const& x, GroupWord const& y) {
      return x._rank == y._rank && x._letters == y._letters;
    }

    //! Shortlex: shorter first, then lexicographic on letters.
    friend bool shortlex_less(GroupWord const& x, GroupWord const& y) {
      if (x.size() != y.size()) {
        return x.size() < y.size();
      }
      return x._letters < y._letters;
    }

   private:
    void check_rank(std::size_t r) const {
      if (r != _rank) {
        throw Error(ErrorKind::RankMismatch,
                    "rank " + std::to_string(r) + " vs "
                        + std::to_string(_rank));
      }
    }

    std::size_t         _rank = 0;
    std::vector<Letter> _letters;
  };

  inline GroupWord reduce(std::size_t rank, std::span<Letter const> letters) {
    return GroupWord::reduce(rank, letters);
  }

  inline SignClass classify_sign(GroupWord const& w) {
    if (w.empty()) {
      return SignClass::Identity;
    }
    auto const& ls   = w.letters();
    bool        posv = std::none_of(ls.begin(), ls.end(),
                             [](Letter l) { return l.inverse; });
    bool        negv = std::all_of(ls.begin(), ls.end(),
                            [](Letter l) { return l.inverse; });
    return posv ? SignClass::Positive
                : (negv ? SignClass::Negative : SignClass::Mixed);
  }

  //! A homomorphism F_m -> F_n given by the images of the m basis elements.
  //! Images need not be positive; positivity is a predicate.
  class GroupHom {
   public:
    GroupHom(std::size_t codomain_rank, std::vector<GroupWord> images)
        : _codomain_rank(codomain_rank), _images(std::move(images)) {
      for (auto const& w : _images) {
        if (w.rank() != _codomain_rank) {
          throw Error(ErrorKind::RankMismatch,
                      "image of rank " + std::to_string(w.rank())
                          + " in a hom to rank "
                          + std::to_string(_codomain_rank));
        }
      }
    }

    [[nodiscard]] std::size_t domain_rank() const noexcept {
      return _images.size();
    }
    [[nodiscard]] std::size_t codomain_rank() const noexcept {
      return _codomain_rank;
    }
    [[nodiscard]] std::vector<GroupWord> const& images() const noexcept {
      return _images;
    }
    [[nodiscard]] GroupWord const& image(std::size_t g) const {
      if (g >= _images.size()) {
        throw Error(ErrorKind::BadIndex,
                    "generator " + std::to_string(g) + " out of range");
      }
      return _images[g];
    }

    friend bool operator==(GroupHom const& x, GroupHom const& y) {
      return x._codomain_rank == y._codomain_rank && x._images == y._images;
    }

   private:
    std::size_t            _codomain_rank;
    std::vector<GroupWord> _images;
  };

  inline GroupHom identity_hom(std::size_t rank) {
    std::vector<GroupWord> images;
    for (std::uint32_t g = 0; g < rank; ++g) {
      images.push_back(GroupWord::generator(rank, g));
    }
    return GroupHom(rank, std::move(images));
  }

  inline GroupWord apply(GroupHom const& h, GroupWord const& w) {
    if (w.rank() != h.domain_rank()) {
      throw Error(ErrorKind::RankMismatch,
                  "word of rank " + std::to_string(w.rank())
                      + " applied to a hom from rank "
                      + std::to_string(h.domain_rank()));
    }
    GroupWord out(h.codomain_rank());
    for (Letter l : w.letters()) {
      GroupWord const& img = h.image(l.gen);
      if (l.inverse) {
        out *= img.inverse();
      } else {
        out *= img;
      }
    }
    return out;
  }

  //! outer o inner.
  inline GroupHom compose_hom(GroupHom const& outer, GroupHom const& inner) {
    if (inner.codomain_rank() != outer.domain_rank()) {
      throw Error(ErrorKind::RankMismatch,
                  "inner hom lands in rank "
                      + std::to_string(inner.codomain_rank())
                      + " but outer hom starts at rank "
                      + std::to_string(outer.domain_rank()));
    }
    std::vector<GroupWord> images;
    images.reserve(inner.domain_rank());
    for (auto const& w : inner.images()) {
      images.push_back(apply(outer, w));
    }
    return GroupHom(outer.codomain_rank(), std::move(images));
  }

  //! c_a h: every image w becomes a^-1 w a.
  inline GroupHom conjugate_hom(GroupHom const& h, GroupWord const& a) {
    if (a.rank() != h.codomain_rank()) {
      throw Error(ErrorKind::RankMismatch,
                  "conjugator of rank " + std::to_string(a.rank())
                      + " for a hom to rank "
                      + std::to_string(h.codomain_rank()));
    }
    GroupWord const        a_inv = a.inverse();
    std::vector<GroupWord> images;
    images.reserve(h.domain_rank());
    for (auto const& w : h.images()) {
      images.push_back(a_inv * w * a);
    }
    return GroupHom(h.codomain_rank(), std::move(images));
  }

  //! Every generator image is a non-empty positive word. Homs with an
  //! identity image are rejected.
  inline bool is_positive_hom(GroupHom const& h) {
    return std::all_of(h.images().begin(), h.images().end(), [](auto const& w) {
      return classify_sign(w) == SignClass::Positive;
    });
  }

  //! The induced map on fundamental groups: acts on basis elements exactly
  //! as the substitution acts on symbols.
  inline GroupHom hom_from_substitution(Substitution const& s) {
    std::size_t const      n = s.target().size();
    std::vector<GroupWord> images;
    images.reserve(s.source().size());
    for (auto const& w : s.images()) {
      images.push_back(GroupWord::positive(n, w));
    }
    return GroupHom(n, std::move(images));
  }

  //! Spells a group word with names; inverses carry a trailing apostrophe.
  inline std::string spell(Alphabet const& alphabet, GroupWord const& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += ' ';
      }
      out += alphabet.name(w[i].gen);
      if (w[i].inverse) {
        out += '\'';
      }
    }
    return out;
  }

}  // namespace flowtrope

#endif  // FLOWTROPE_FREEGROUP_HPP_
