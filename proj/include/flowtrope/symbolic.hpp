#ifndef FLOWTROPE_SYMBOLIC_HPP_
#define FLOWTROPE_SYMBOLIC_HPP_

// Finite alphabets, substitutions between them, and the proper / degenerate
// proper / primitive predicates on single maps and on inverse sequences of
// maps.
//
// Conventions: a Substitution goes from its source alphabet to words over its
// target alphabet. In a sequence, level i maps alphabet i + 1 to words over
// alphabet i, so composing levels n, ..., m - 1 means applying level m - 1
// first (innermost) and level n last (outermost).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flowtrope/error.hpp"

namespace flowtrope {

  using Symbol = std::uint32_t;
  using Word   = std::vector<Symbol>;

  ////////////////////////////////////////////////////////////////////////////
  // Alphabet
  ////////////////////////////////////////////////////////////////////////////

  //! An ordered list of distinct symbol names; the position of a name is its
  //! index. Names are only used at the I/O boundary.
  class Alphabet {
   public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> names) : _names(std::move(names)) {
      if (_names.empty()) {
        throw Error(ErrorKind::InvalidAlphabet, "alphabet is empty");
      }
      for (std::size_t i = 0; i < _names.size(); ++i) {
        if (!is_valid_name(_names[i])) {
          throw Error(ErrorKind::InvalidAlphabet,
                      "invalid symbol name \"" + _names[i] + "\"");
        }
        auto [it, inserted] = _index.emplace(_names[i], static_cast<Symbol>(i));
        if (!inserted) {
          throw Error(ErrorKind::InvalidAlphabet,
                      "duplicate symbol \"" + _names[i] + "\"");
        }
      }
    }

    //! One symbol per character, e.g. Alphabet::of_chars("ab").
    static Alphabet of_chars(std::string_view chars) {
      std::vector<std::string> names;
      for (char c : chars) {
        names.emplace_back(1, c);
      }
      return Alphabet(std::move(names));
    }

    //! Symbols named prefix + 0, prefix + 1, ...
    static Alphabet numbered(std::size_t n, std::string const& prefix = "x") {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < n; ++i) {
        names.push_back(prefix + std::to_string(i));
      }
      return Alphabet(std::move(names));
    }

    static bool is_valid_name(std::string_view name) noexcept {
      if (name.empty() || name == "->") {
        return false;
      }
      return std::none_of(name.begin(), name.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\''
               || c == '#';
      });
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _names.size();
    }

    [[nodiscard]] std::string const& name(Symbol s) const {
      if (s >= _names.size()) {
        throw Error(ErrorKind::BadIndex,
                    "symbol index " + std::to_string(s) + " out of range");
      }
      return _names[s];
    }

    [[nodiscard]] std::vector<std::string> const& names() const noexcept {
      return _names;
    }

    [[nodiscard]] std::optional<Symbol> index_of(std::string_view name) const {
      auto it = _index.find(std::string(name));
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    //! True when every name is a single character, so words can be spelled
    //! without separators.
    [[nodiscard]] bool single_char_names() const noexcept {
      return std::all_of(_names.begin(), _names.end(),
                         [](auto const& n) { return n.size() == 1; });
    }

    friend bool operator==(Alphabet const& x, Alphabet const& y) {
      return x._names == y._names;
    }

   private:
    std::vector<std::string>                _names;
    std::unordered_map<std::string, Symbol> _index;
  };

  //! Spells a word with its symbol names. Names are joined by `sep`; when
  //! `sep` is empty they are concatenated.
  inline std::string spell(Alphabet const& alphabet,
                           Word const&     word,
                           std::string_view sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i != 0) {
        out += sep;
      }
      out += alphabet.name(word[i]);
    }
    return out;
  }

  //! Compact spelling: concatenated when all names are single characters,
  //! space separated otherwise.
  inline std::string spell_compact(Alphabet const& alphabet, Word const& word) {
    return spell(alphabet, word, alphabet.single_char_names() ? "" : " ");
  }

  ////////////////////////////////////////////////////////////////////////////
  // Substitution
  ////////////////////////////////////////////////////////////////////////////

  //! A symbolic map source -> target^*: one non-empty image per source symbol,
  //! and every target symbol occurs in some image.
  class Substitution {
   public:
    Substitution(Alphabet source, Alphabet target, std::vector<Word> images)
        : _source(std::move(source)),
          _target(std::move(target)),
          _images(std::move(images)) {
      if (_images.size() != _source.size()) {
        throw Error(ErrorKind::AlphabetMismatch,
                    "expected " + std::to_string(_source.size())
                        + " images, got " + std::to_string(_images.size()));
      }
      std::vector<bool> seen(_target.size(), false);
      for (std::size_t i = 0; i < _images.size(); ++i) {
        if (_images[i].empty()) {
          throw Error(ErrorKind::EmptyImage,
                      "image of \"" + _source.name(i) + "\" is empty");
        }
        for (Symbol s : _images[i]) {
          if (s >= _target.size()) {
            throw Error(ErrorKind::BadIndex,
                        "image of \"" + _source.name(i)
                            + "\" uses an index outside the target alphabet");
          }
          seen[s] = true;
        }
      }
      for (std::size_t j = 0; j < seen.size(); ++j) {
        if (!seen[j]) {
          throw Error(ErrorKind::NotSurjective,
                      "target symbol \"" + _target.name(j)
                          + "\" occurs in no image");
        }
      }
    }

    //! Endomorphism on an alphabet whose symbols are single characters:
    //! Substitution::from_strings("ab", {"abba", "baab"}).
    static Substitution from_strings(std::string_view                    chars,
                                     std::vector<std::string_view> const& images) {
      return from_strings(chars, chars, images);
    }

    static Substitution from_strings(std::string_view                    source,
                                     std::string_view                    target,
                                     std::vector<std::string_view> const& images) {
      Alphabet          src = Alphabet::of_chars(source);
      Alphabet          tgt = Alphabet::of_chars(target);
      std::vector<Word> words;
      for (auto img : images) {
        Word w;
        for (char c : img) {
          auto s = tgt.index_of(std::string_view(&c, 1));
          if (!s) {
            throw Error(ErrorKind::BadIndex,
                        std::string("unknown symbol '") + c + "'");
          }
          w.push_back(*s);
        }
        words.push_back(std::move(w));
      }
      return Substitution(std::move(src), std::move(tgt), std::move(words));
    }

    [[nodiscard]] Alphabet const& source() const noexcept {
      return _source;
    }
    [[nodiscard]] Alphabet const& target() const noexcept {
      return _target;
    }
    [[nodiscard]] Word const& image(Symbol s) const {
      if (s >= _images.size()) {
        throw Error(ErrorKind::BadIndex,
                    "symbol index " + std::to_string(s) + " out of range");
      }
      return _images[s];
    }
    [[nodiscard]] std::vector<Word> const& images() const noexcept {
      return _images;
    }
    [[nodiscard]] bool is_endomorphism() const {
      return _source == _target;
    }

    //! Image of a word over the source alphabet (concatenation of images).
    [[nodiscard]] Word apply(Word const& word) const {
      Word out;
      for (Symbol s : word) {
        Word const& img = image(s);
        out.insert(out.end(), img.begin(), img.end());
      }
      return out;
    }

    friend bool operator==(Substitution const& x, Substitution const& y) {
      return x._source == y._source && x._target == y._target
             && x._images == y._images;
    }

   private:
    Alphabet          _source;
    Alphabet          _target;
    std::vector<Word> _images;
  };

  inline Substitution identity_substitution(Alphabet const& alphabet) {
    std::vector<Word> images;
    for (Symbol s = 0; s < alphabet.size(); ++s) {
      images.push_back({s});
    }
    return Substitution(alphabet, alphabet, std::move(images));
  }

  //! outer o inner: each inner image is rewritten letter by letter through
  //! outer. Requires outer.source() == inner.target().
  inline Substitution compose(Substitution const& outer,
                              Substitution const& inner) {
    if (!(outer.source() == inner.target())) {
      throw Error(ErrorKind::AlphabetMismatch,
                  "source of the outer map differs from target of the inner "
                  "map");
    }
    std::vector<Word> images;
    images.reserve(inner.source().size());
    for (Word const& w : inner.images()) {
      images.push_back(outer.apply(w));
    }
    return Substitution(inner.source(), outer.target(), std::move(images));
  }

  inline Substitution power(Substitution const& s, std::size_t k) {
    if (!s.is_endomorphism()) {
      throw Error(ErrorKind::NotEndomorphic, "power of a non-endomorphism");
    }
    Substitution result = identity_substitution(s.source());
    for (std::size_t i = 0; i < k; ++i) {
      result = compose(result, s);
    }
    return result;
  }

  //! All images start with one common symbol, end with one common symbol and
  //! have length at least two.
  inline bool is_proper(std::vector<Word> const& imgs) {
    if (imgs.empty() || imgs.front().empty()) {
      return false;
    }
    Symbol first = imgs.front().front();
    Symbol last  = imgs.front().back();
    return std::all_of(imgs.begin(), imgs.end(), [&](Word const& w) {
      return w.size() >= 2 && w.front() == first && w.back() == last;
    });
  }

  //! Every image starts and ends with one symbol a, and some image is exactly
  //! the single letter a.
  inline bool is_degenerate_proper(std::vector<Word> const& imgs) {
    if (imgs.empty() || imgs.front().empty()) {
      return false;
    }
    Symbol a   = imgs.front().front();
    bool   all = std::all_of(imgs.begin(), imgs.end(), [&](Word const& w) {
      return !w.empty() && w.front() == a && w.back() == a;
    });
    bool some_single = std::any_of(imgs.begin(), imgs.end(), [&](Word const& w) {
      return w.size() == 1;
    });
    return all && some_single;
  }

  //! Every image contains every one of the n target symbols.
  inline bool is_primitive(std::vector<Word> const& imgs, std::size_t n) {
    for (Word const& w : imgs) {
      std::vector<bool> seen(n, false);
      std::size_t       count = 0;
      for (Symbol x : w) {
        if (x < n && !seen[x]) {
          seen[x] = true;
          ++count;
        }
      }
      if (count != n) {
        return false;
      }
    }
    return true;
  }

  inline bool is_proper(Substitution const& s) {
    return is_proper(s.images());
  }

  inline bool is_degenerate_proper(Substitution const& s) {
    return is_degenerate_proper(s.images());
  }

  inline bool is_primitive(Substitution const& s) {
    return is_primitive(s.images(), s.target().size());
  }

  //! Primitive in the sense of substitution dynamics: some power of the
  //! endomorphism s is primitive. Decided on the 0/1 incidence matrix; by
  //! Wielandt's bound it suffices to look at powers up to (n - 1)^2 + 1.
  inline bool is_eventually_primitive(Substitution const& s) {
    if (!s.is_endomorphism()) {
      throw Error(ErrorKind::NotEndomorphic,
                  "primitivity of powers needs an endomorphism");
    }
    std::size_t n = s.source().size();
    // contains[i][j]: image of j contains i
    std::vector<std::vector<bool>> step(n, std::vector<bool>(n, false));
    for (Symbol j = 0; j < n; ++j) {
      for (Symbol i : s.image(j)) {
        step[i][j] = true;
      }
    }
    auto current = step;
    auto full    = [&](auto const& m) {
      for (auto const& row : m) {
        if (std::find(row.begin(), row.end(), false) != row.end()) {
          return false;
        }
      }
      return true;
    };
    std::size_t bound = (n - 1) * (n - 1) + 1;
    for (std::size_t k = 1; k <= bound; ++k) {
      if (full(current)) {
        return true;
      }
      std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < n; ++l) {
          if (!current[i][l]) {
            continue;
          }
          for (std::size_t j = 0; j < n; ++j) {
            if (step[l][j]) {
              next[i][j] = true;
            }
          }
        }
      }
      current = std::move(next);
    }
    return full(current);
  }

  ////////////////////////////////////////////////////////////////////////////
  // SequenceSpec
  ////////////////////////////////////////////////////////////////////////////

  //! An inverse sequence of substitutions, either a finite list or an
  //! eventually periodic one (prefix followed by a repeating cycle).
  class SequenceSpec {
   public:
    static SequenceSpec finite(std::vector<Substitution> levels) {
      if (levels.empty()) {
        throw Error(ErrorKind::ValidationError, "sequence has no levels");
      }
      SequenceSpec spec(std::move(levels), {}, false);
      spec.check_chain();
      return spec;
    }

    static SequenceSpec eventually_periodic(std::vector<Substitution> prefix,
                                            std::vector<Substitution> cycle) {
      if (cycle.empty()) {
        throw Error(ErrorKind::ValidationError, "periodic cycle is empty");
      }
      SequenceSpec spec(std::move(prefix), std::move(cycle), true);
      spec.check_chain();
      return spec;
    }

    static SequenceSpec constant(Substitution s) {
      return eventually_periodic({}, {std::move(s)});
    }

    [[nodiscard]] bool is_periodic() const noexcept {
      return _periodic;
    }

    //! Number of levels of a finite spec; nullopt when eventually periodic.
    [[nodiscard]] std::optional<std::size_t> length() const noexcept {
      if (_periodic) {
        return std::nullopt;
      }
      return _prefix.size();
    }

    [[nodiscard]] std::vector<Substitution> const& prefix() const noexcept {
      return _prefix;
    }
    [[nodiscard]] std::vector<Substitution> const& cycle() const noexcept {
      return _cycle;
    }

    //! Level i, the map from alphabet i + 1 to words over alphabet i.
    [[nodiscard]] Substitution const& level(std::size_t i) const {
      if (i < _prefix.size()) {
        return _prefix[i];
      }
      if (!_periodic) {
        throw Error(ErrorKind::BadIndex,
                    "level " + std::to_string(i) + " beyond a finite sequence");
      }
      return _cycle[(i - _prefix.size()) % _cycle.size()];
    }

   private:
    SequenceSpec(std::vector<Substitution> prefix,
                 std::vector<Substitution> cycle,
                 bool                      periodic)
        : _prefix(std::move(prefix)), _cycle(std::move(cycle)), _periodic(periodic) {}

    void check_chain() const {
      std::size_t count = _prefix.size() + (_periodic ? _cycle.size() + 1 : 0);
      for (std::size_t i = 1; i < count; ++i) {
        if (!(level(i).target() == level(i - 1).source())) {
          throw Error(ErrorKind::AlphabetMismatch,
                      "level " + std::to_string(i)
                          + " does not chain with level "
                          + std::to_string(i - 1));
        }
      }
    }

    std::vector<Substitution> _prefix;
    std::vector<Substitution> _cycle;
    bool                      _periodic;
  };

  enum class ProperVerdict { Proper, DegenerateStabilized, Inconclusive };
  enum class PrimitiveVerdict { Primitive, Inconclusive, NotPrimitive };

  inline std::string_view to_string(ProperVerdict v) noexcept {
    switch (v) {
      case ProperVerdict::Proper: return "proper";
      case ProperVerdict::DegenerateStabilized: return "degenerate-stabilized";
      case ProperVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
  }

  inline std::string_view to_string(PrimitiveVerdict v) noexcept {
    switch (v) {
      case PrimitiveVerdict::Primitive: return "primitive";
      case PrimitiveVerdict::Inconclusive: return "inconclusive";
      case PrimitiveVerdict::NotPrimitive: return "not-primitive";
    }
    return "?";
  }

  //! `failing_level` is the first level with no qualifying composition.
  //! `exact` is true when every composition from that level was accounted
  //! for (eventually periodic specs), so Inconclusive then means "never".
  struct ProperReport {
    ProperVerdict              verdict;
    std::optional<std::size_t> failing_level;
    bool                       exact;
  };

  struct PrimitiveReport {
    PrimitiveVerdict           verdict;
    std::optional<std::size_t> failing_level;
    bool                       exact;
  };

  namespace detail {

    // What properness needs to know about a composition s_n o ... o s_{m-1}:
    // first and last letter of each image, and which images are one letter.
    struct EndpointState {
      std::vector<Symbol> first;
      std::vector<Symbol> last;
      std::vector<char>   single;

      explicit EndpointState(std::size_t n) : first(n), last(n), single(n, 1) {
        for (Symbol x = 0; x < n; ++x) {
          first[x] = last[x] = x;
        }
      }

      // Compose with `inner` on the right.
      void extend(Substitution const& inner) {
        std::size_t         n = inner.source().size();
        std::vector<Symbol> f(n), l(n);
        std::vector<char>   s(n);
        for (Symbol y = 0; y < n; ++y) {
          Word const& img = inner.image(y);
          f[y]            = first[img.front()];
          l[y]            = last[img.back()];
          s[y]            = img.size() == 1 && single[img.front()];
        }
        first  = std::move(f);
        last   = std::move(l);
        single = std::move(s);
      }

      [[nodiscard]] bool proper() const {
        bool same_first = std::all_of(first.begin(), first.end(),
                                      [&](Symbol x) { return x == first[0]; });
        bool same_last  = std::all_of(last.begin(), last.end(),
                                     [&](Symbol x) { return x == last[0]; });
        return same_first && same_last && !has_single();
      }

      [[nodiscard]] bool has_single() const {
        return std::find(single.begin(), single.end(), 1) != single.end();
      }

      [[nodiscard]] std::vector<std::uint32_t> key() const {
        std::vector<std::uint32_t> k(first.begin(), first.end());
        k.insert(k.end(), last.begin(), last.end());
        k.insert(k.end(), single.begin(), single.end());
        return k;
      }
    };

    // Incidence of a composition: contains[i * cols + y] says the image of y
    // contains the symbol i of the outermost alphabet.
    struct IncidenceState {
      std::size_t       rows;
      std::size_t       cols;
      std::vector<char> contains;

      explicit IncidenceState(std::size_t n)
          : rows(n), cols(n), contains(n * n, 0) {
        for (std::size_t i = 0; i < n; ++i) {
          contains[i * n + i] = 1;
        }
      }

      void extend(Substitution const& inner) {
        std::size_t       n = inner.source().size();
        std::vector<char> next(rows * n, 0);
        for (Symbol y = 0; y < n; ++y) {
          for (Symbol x : inner.image(y)) {
            for (std::size_t i = 0; i < rows; ++i) {
              if (contains[i * cols + x]) {
                next[i * n + y] = 1;
              }
            }
          }
        }
        cols     = n;
        contains = std::move(next);
      }

      [[nodiscard]] bool full() const {
        return std::find(contains.begin(), contains.end(), 0) == contains.end();
      }

      [[nodiscard]] std::vector<std::uint32_t> key() const {
        return {contains.begin(), contains.end()};
      }
    };

    struct LevelOutcome {
      bool found;
      bool stuck_on_single;  // only meaningful for properness
    };

    // Decides whether some composition starting at level n satisfies
    // State::<done>. For periodic specs the search runs until the pair
    // (phase in the cycle, state) repeats, which covers every m > n.
    template <typename State, typename Done>
    LevelOutcome search_level(SequenceSpec const& spec,
                              std::size_t         n,
                              std::size_t         window,
                              Done                done) {
      State state(spec.level(n).target().size());
      if (!spec.is_periodic()) {
        std::size_t end = std::min(n + window, *spec.length());
        for (std::size_t m = n; m < end; ++m) {
          state.extend(spec.level(m));
          if (done(state)) {
            return {true, false};
          }
        }
        return {false, stuck(state)};
      }
      std::size_t const prefix = spec.prefix().size();
      std::size_t const period = spec.cycle().size();
      std::set<std::pair<std::size_t, std::vector<std::uint32_t>>> seen;
      for (std::size_t m = n;; ++m) {
        state.extend(spec.level(m));
        if (done(state)) {
          return {true, false};
        }
        if (m + 1 >= prefix) {
          std::size_t phase = (m + 1 - prefix) % period;
          if (!seen.emplace(phase, state.key()).second) {
            return {false, stuck(state)};
          }
        }
      }
    }

    inline bool stuck(EndpointState const& s) {
      return s.has_single();
    }
    inline bool stuck(IncidenceState const&) {
      return false;
    }

    inline std::size_t levels_to_check(SequenceSpec const& spec) {
      if (spec.is_periodic()) {
        return spec.prefix().size() + spec.cycle().size();
      }
      return *spec.length();
    }

  }  // namespace detail

  //! Looks, for every level n, for m > n with s_n o ... o s_{m-1} proper.
  //! Finite specs search m <= n + window. Eventually periodic specs are
  //! decided exactly (window is then only validated). A level whose
  //! compositions keep an image of length one forever is reported as
  //! DegenerateStabilized: the corresponding circle is carried
  //! homeomorphically through every bonding map, i.e. a periodic orbit.
  inline ProperReport sequence_is_proper(SequenceSpec const& spec,
                                         std::size_t         window = 8) {
    if (window == 0) {
      throw Error(ErrorKind::WindowTooSmall, "window must be positive");
    }
    std::size_t const count = detail::levels_to_check(spec);
    std::optional<std::size_t> first_fail;
    bool                       degenerate = false;
    for (std::size_t n = 0; n < count; ++n) {
      auto outcome = detail::search_level<detail::EndpointState>(
          spec, n, window, [](auto const& s) { return s.proper(); });
      if (!outcome.found) {
        if (!first_fail) {
          first_fail = n;
        }
        // A finite spec can only show a length-one image up to its end.
        degenerate = degenerate || (spec.is_periodic() && outcome.stuck_on_single);
      }
    }
    if (!first_fail) {
      return {ProperVerdict::Proper, std::nullopt, spec.is_periodic()};
    }
    return {degenerate ? ProperVerdict::DegenerateStabilized
                       : ProperVerdict::Inconclusive,
            first_fail,
            spec.is_periodic()};
  }

  //! As sequence_is_proper, for primitive compositions. Eventually periodic
  //! specs that never reach a primitive composition are NotPrimitive.
  inline PrimitiveReport sequence_is_primitive(SequenceSpec const& spec,
                                               std::size_t         window = 8) {
    if (window == 0) {
      throw Error(ErrorKind::WindowTooSmall, "window must be positive");
    }
    std::size_t const count = detail::levels_to_check(spec);
    for (std::size_t n = 0; n < count; ++n) {
      auto outcome = detail::search_level<detail::IncidenceState>(
          spec, n, window, [](auto const& s) { return s.full(); });
      if (!outcome.found) {
        return {spec.is_periodic() ? PrimitiveVerdict::NotPrimitive
                                   : PrimitiveVerdict::Inconclusive,
                n,
                spec.is_periodic()};
      }
    }
    return {PrimitiveVerdict::Primitive, std::nullopt, spec.is_periodic()};
  }

}  // namespace flowtrope

#endif  // FLOWTROPE_SYMBOLIC_HPP_
