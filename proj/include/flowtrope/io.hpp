#ifndef FLOWTROPE_IO_HPP_
#define FLOWTROPE_IO_HPP_

// Text formats.
//
// Substitution and hom files:
//
//   # comment
//   alphabet: a b
//   target: a b          (optional, defaults to the alphabet)
//   a -> a b b a
//   b -> b a a b
//
// Symbols are whitespace separated. In hom files a trailing apostrophe
// marks an inverse letter and an image may be empty.
//
// Matrices are rows separated by ';' with entries separated by spaces:
// "5 3; 3 2". Label streams are "prefix|cycle" with comma separated labels,
// e.g. "s,s|s,r"; without '|' the stream is finite.
//
// Conjugate zigzag files start with an alphabet line, then blocks headed
// [top n], [bottom n], [down n], [up n] holding hom rules and [g n], [h n]
// holding a "word:" line. Block indices start at 1.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flowtrope/abelian.hpp"
#include "flowtrope/error.hpp"
#include "flowtrope/freegroup.hpp"
#include "flowtrope/symbolic.hpp"
#include "flowtrope/trope.hpp"

namespace flowtrope {

  namespace detail {

    struct Token {
      std::string text;
      std::size_t line;
      std::size_t column;
    };

    struct Line {
      std::size_t        number;
      std::size_t        end_column;  // one past the last content character
      std::vector<Token> tokens;
    };

    // Non-blank lines with comments stripped, split on whitespace.
    inline std::vector<Line> lex(std::string_view text) {
      std::vector<Line> out;
      std::size_t       number = 0;
      std::size_t       pos    = 0;
      while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
          eol = text.size();
        }
        std::string_view raw = text.substr(pos, eol - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) {
          raw = raw.substr(0, hash);
        }
        Line line{number, raw.size() + 1, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
          if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
            ++i;
            continue;
          }
          std::size_t j = i;
          while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') {
            ++j;
          }
          line.tokens.push_back({std::string(raw.substr(i, j - i)), number, i + 1});
          i = j;
        }
        if (!line.tokens.empty()) {
          out.push_back(std::move(line));
        }
        if (eol == text.size()) {
          break;
        }
        pos = eol + 1;
      }
      return out;
    }

    inline std::string render_names(std::string const& key, Alphabet const& a) {
      std::string out = key;
      for (auto const& n : a.names()) {
        out += " " + n;
      }
      return out + "\n";
    }

    [[noreturn]] inline void invalid_at(Token const& t, std::string const& what) {
      throw Error(ErrorKind::ValidationError,
                  "line " + std::to_string(t.line) + ", column "
                      + std::to_string(t.column) + ": " + what);
    }

    inline Alphabet alphabet_from(std::vector<Token> const& tokens,
                                  std::size_t               from,
                                  Line const&               line) {
      if (from >= tokens.size()) {
        throw SyntaxError(line.number, line.end_column, "at least one symbol");
      }
      std::vector<std::string> names;
      for (std::size_t i = from; i < tokens.size(); ++i) {
        names.push_back(tokens[i].text);
      }
      try {
        return Alphabet(std::move(names));
      } catch (Error const& e) {
        invalid_at(tokens[from], e.what());
      }
    }

    struct Rule {
      Token              lhs;
      std::vector<Token> rhs;
    };

    struct RuleBlock {
      std::optional<Alphabet> source;
      std::optional<Alphabet> target;
      std::vector<Rule>       rules;
      std::size_t             first_line = 1;
    };

    // Header lines then rules. `lines` must all belong to this block.
    inline RuleBlock parse_rule_block(std::vector<Line> const& lines,
                                      bool                     require_alphabet) {
      RuleBlock                      block;
      std::set<std::string>          seen;
      bool                           in_rules = false;
      if (!lines.empty()) {
        block.first_line = lines.front().number;
      }
      for (auto const& line : lines) {
        auto const& t = line.tokens;
        if (t[0].text == "alphabet:" || t[0].text == "target:") {
          bool is_alpha = t[0].text == "alphabet:";
          if (in_rules || (is_alpha && (block.source || block.target))
              || (!is_alpha && (!block.source || block.target))) {
            throw SyntaxError(t[0].line, t[0].column,
                              is_alpha ? "a rule" : "a rule or end of header");
          }
          (is_alpha ? block.source : block.target) = alphabet_from(t, 1, line);
          continue;
        }
        if (require_alphabet && !block.source) {
          throw SyntaxError(t[0].line, t[0].column, "\"alphabet:\"");
        }
        in_rules = true;
        if (t.size() < 2 || t[1].text != "->") {
          std::size_t col = t.size() < 2 ? line.end_column : t[1].column;
          throw SyntaxError(line.number, col, "\"->\"");
        }
        if (!seen.insert(t[0].text).second) {
          throw SyntaxError(t[0].line, t[0].column,
                            "a rule for a new symbol (duplicate key \"" + t[0].text
                                + "\")");
        }
        block.rules.push_back({t[0], {t.begin() + 2, t.end()}});
      }
      if (require_alphabet && !block.source) {
        throw SyntaxError(lines.empty() ? 1 : lines.front().number, 1, "\"alphabet:\"");
      }
      return block;
    }

    // Rules reordered to the source alphabet; every symbol exactly once.
    inline std::vector<Rule const*> ordered_rules(RuleBlock const& b) {
      std::vector<Rule const*> out(b.source->size(), nullptr);
      for (auto const& r : b.rules) {
        auto s = b.source->index_of(r.lhs.text);
        if (!s) {
          invalid_at(r.lhs, "unknown symbol \"" + r.lhs.text + "\"");
        }
        out[*s] = &r;
      }
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] == nullptr) {
          throw Error(ErrorKind::ValidationError,
                      "no rule for \"" + b.source->name(static_cast<Symbol>(i)) + "\"");
        }
      }
      return out;
    }

    inline std::optional<Letter> letter_of(Alphabet const& alphabet, std::string_view tok) {
      bool inverse = false;
      if (!tok.empty() && tok.back() == '\'') {
        inverse = true;
        tok.remove_suffix(1);
      }
      auto s = alphabet.index_of(tok);
      if (!s) {
        return std::nullopt;
      }
      return Letter{*s, inverse};
    }

  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////////
  // Substitutions
  ////////////////////////////////////////////////////////////////////////////

  inline Substitution parse_substitution(std::string_view text) {
    auto       lines = detail::lex(text);
    auto       block = detail::parse_rule_block(lines, true);
    Alphabet   tgt   = block.target ? *block.target : *block.source;
    auto const rules = detail::ordered_rules(block);
    std::vector<Word> images;
    for (auto const* r : rules) {
      Word w;
      for (auto const& tok : r->rhs) {
        auto s = tgt.index_of(tok.text);
        if (!s) {
          detail::invalid_at(tok, "unknown symbol \"" + tok.text + "\"");
        }
        w.push_back(*s);
      }
      images.push_back(std::move(w));
    }
    try {
      return Substitution(*block.source, std::move(tgt), std::move(images));
    } catch (Error const& e) {
      throw Error(ErrorKind::ValidationError, e.what());
    }
  }

  inline std::string render_substitution(Substitution const& s) {
    std::string out = detail::render_names("alphabet:", s.source());
    if (!s.is_endomorphism()) {
      out += detail::render_names("target:", s.target());
    }
    for (Symbol x = 0; x < s.source().size(); ++x) {
      out += s.source().name(x) + " -> " + spell(s.target(), s.image(x)) + "\n";
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Homomorphisms and group words
  ////////////////////////////////////////////////////////////////////////////

  //! A hom between free groups whose bases carry names.
  struct NamedHom {
    Alphabet domain;
    Alphabet codomain;
    GroupHom hom;

    friend bool operator==(NamedHom const& x, NamedHom const& y) {
      return x.domain == y.domain && x.codomain == y.codomain && x.hom == y.hom;
    }
  };

  //! Whitespace separated letters, e.g. "a b'". With single-character names
  //! a compact spelling "ab'" is accepted as well.
  inline GroupWord parse_group_word(Alphabet const& alphabet, std::string_view text) {
    GroupWord        w(alphabet.size());
    std::string_view rest = text;
    std::size_t      col  = 1;
    while (!rest.empty()) {
      std::size_t skip = rest.find_first_not_of(" \t\r\n");
      if (skip == std::string_view::npos) {
        break;
      }
      rest.remove_prefix(skip);
      col += skip;
      std::size_t      len = std::min(rest.find_first_of(" \t\r\n"), rest.size());
      std::string_view tok = rest.substr(0, len);
      if (auto l = detail::letter_of(alphabet, tok)) {
        w.push_reduced(*l);
      } else if (alphabet.single_char_names()) {
        for (std::size_t i = 0; i < tok.size(); ++i) {
          auto l2 = detail::letter_of(alphabet, tok.substr(i, 1));
          if (!l2) {
            throw Error(ErrorKind::ValidationError,
                        "column " + std::to_string(col + i) + ": unknown symbol \""
                            + std::string(tok.substr(i, 1)) + "\"");
          }
          if (i + 1 < tok.size() && tok[i + 1] == '\'') {
            l2->inverse = true;
            ++i;
          }
          w.push_reduced(*l2);
        }
      } else {
        throw Error(ErrorKind::ValidationError,
                    "column " + std::to_string(col) + ": unknown symbol \""
                        + std::string(tok) + "\"");
      }
      rest.remove_prefix(len);
      col += len;
    }
    return w;
  }

  namespace detail {

    inline NamedHom hom_from_block(RuleBlock const& block,
                                   Alphabet const&  default_alphabet) {
      Alphabet dom = block.source ? *block.source : default_alphabet;
      Alphabet cod = block.target ? *block.target : dom;
      RuleBlock b  = block;
      b.source     = dom;
      auto const rules = ordered_rules(b);
      std::vector<GroupWord> images;
      for (auto const* r : rules) {
        GroupWord w(cod.size());
        for (auto const& tok : r->rhs) {
          auto l = letter_of(cod, tok.text);
          if (!l) {
            invalid_at(tok, "unknown symbol \"" + tok.text + "\"");
          }
          w.push_reduced(*l);
        }
        images.push_back(std::move(w));
      }
      std::size_t rank = cod.size();
      return {std::move(dom), std::move(cod), GroupHom(rank, std::move(images))};
    }

    inline std::string render_rules(NamedHom const& h) {
      std::string out;
      for (Symbol x = 0; x < h.domain.size(); ++x) {
        out += h.domain.name(x) + " ->";
        std::string img = spell(h.codomain, h.hom.image(x));
        if (!img.empty()) {
          out += " " + img;
        }
        out += "\n";
      }
      return out;
    }

  }  // namespace detail

  inline NamedHom parse_hom(std::string_view text) {
    auto lines = detail::lex(text);
    auto block = detail::parse_rule_block(lines, true);
    return detail::hom_from_block(block, *block.source);
  }

  inline std::string render_hom(NamedHom const& h) {
    std::string out = detail::render_names("alphabet:", h.domain);
    if (!(h.domain == h.codomain)) {
      out += detail::render_names("target:", h.codomain);
    }
    return out + detail::render_rules(h);
  }

  ////////////////////////////////////////////////////////////////////////////
  // Matrices
  ////////////////////////////////////////////////////////////////////////////

  inline IntMatrix parse_matrix(std::string_view text) {
    std::vector<std::vector<std::int64_t>> rows;
    std::size_t                            col = 1;
    std::size_t                            start = 0;
    while (start <= text.size()) {
      std::size_t end = std::min(text.find(';', start), text.size());
      std::string_view row = text.substr(start, end - start);
      std::vector<std::int64_t> entries;
      std::size_t i = 0;
      while (i < row.size()) {
        if (row[i] == ' ' || row[i] == '\t') {
          ++i;
          continue;
        }
        std::size_t j = i;
        if (row[j] == '-' || row[j] == '+') {
          ++j;
        }
        std::size_t digits = j;
        while (j < row.size() && row[j] >= '0' && row[j] <= '9') {
          ++j;
        }
        if (j == digits || (j < row.size() && row[j] != ' ' && row[j] != '\t')) {
          throw SyntaxError(1, col + i, "an integer");
        }
        try {
          entries.push_back(std::stoll(std::string(row.substr(i, j - i))));
        } catch (std::out_of_range const&) {
          throw Error(ErrorKind::Overflow, "matrix entry out of range");
        }
        i = j;
      }
      if (entries.empty()) {
        throw SyntaxError(1, col + row.size(), "a matrix row");
      }
      rows.push_back(std::move(entries));
      col += row.size() + 1;
      if (end == text.size()) {
        break;
      }
      start = end + 1;
    }
    for (auto const& r : rows) {
      if (r.size() != rows.front().size()) {
        throw Error(ErrorKind::DimensionMismatch, "rows of different lengths");
      }
    }
    return IntMatrix(rows);
  }

  inline std::string render_matrix(IntMatrix const& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != 0) {
        out += "; ";
      }
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j != 0) {
          out += ' ';
        }
        out += std::to_string(m(i, j));
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Label streams
  ////////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::vector<std::string> split_labels(std::string_view text) {
      std::vector<std::string> out;
      auto trim = [](std::string_view s) {
        std::size_t b = s.find_first_not_of(" \t");
        if (b == std::string_view::npos) {
          return std::string_view();
        }
        std::size_t e = s.find_last_not_of(" \t");
        return s.substr(b, e - b + 1);
      };
      if (trim(text).empty()) {
        return out;
      }
      std::size_t start = 0;
      for (;;) {
        std::size_t      end = std::min(text.find(',', start), text.size());
        std::string_view tok = trim(text.substr(start, end - start));
        if (tok.empty()) {
          throw SyntaxError(1, start + 1, "a label");
        }
        out.emplace_back(tok);
        if (end == text.size()) {
          break;
        }
        start = end + 1;
      }
      return out;
    }
  }  // namespace detail

  inline LabelStream parse_label_stream(std::string_view             text,
                                        std::set<std::string> const& label_set) {
    auto bar = text.find('|');
    if (bar == std::string_view::npos) {
      auto labels = detail::split_labels(text);
      if (labels.empty()) {
        throw SyntaxError(1, 1, "a label");
      }
      return LabelStream::finite(std::move(labels), label_set);
    }
    if (text.find('|', bar + 1) != std::string_view::npos) {
      throw SyntaxError(1, text.find('|', bar + 1) + 1, "a label or ','");
    }
    auto prefix = detail::split_labels(text.substr(0, bar));
    auto cycle  = detail::split_labels(text.substr(bar + 1));
    if (cycle.empty()) {
      throw SyntaxError(1, text.size() + 1, "a cycle label");
    }
    return LabelStream::eventually_periodic(std::move(prefix), std::move(cycle),
                                            label_set);
  }

  inline std::string render_label_stream(LabelStream const& s) {
    auto join = [](std::vector<std::string> const& xs) {
      std::string out;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? "," : "") + xs[i];
      }
      return out;
    };
    if (!s.is_periodic()) {
      return join(s.prefix());
    }
    return join(s.prefix()) + "|" + join(s.cycle());
  }

  ////////////////////////////////////////////////////////////////////////////
  // Conjugate zigzag files
  ////////////////////////////////////////////////////////////////////////////

  struct CzzFile {
    Alphabet   alphabet;
    CzzWitness witness;
  };

  inline CzzFile parse_czz(std::string_view text) {
    auto lines = detail::lex(text);
    if (lines.empty() || lines.front().tokens[0].text != "alphabet:") {
      throw SyntaxError(lines.empty() ? 1 : lines.front().number, 1, "\"alphabet:\"");
    }
    Alphabet alphabet = detail::alphabet_from(lines.front().tokens, 1, lines.front());

    struct Block {
      std::string       kind;
      std::size_t       index;
      detail::Token     head;
      std::vector<detail::Line> body;
    };
    std::vector<Block> blocks;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto const& t = lines[i].tokens;
      if (t[0].text.front() == '[') {
        std::string joined;
        for (auto const& tok : t) {
          joined += (joined.empty() ? "" : " ") + tok.text;
        }
        std::istringstream in(joined.substr(1));
        std::string        kind;
        long long          index = 0;
        char               close = 0;
        if (!(in >> kind >> index >> close) || close != ']' || index < 1
            || (kind != "top" && kind != "bottom" && kind != "down" && kind != "up"
                && kind != "g" && kind != "h")) {
          throw SyntaxError(t[0].line, t[0].column,
                            "a block header like [top 1], [g 1]");
        }
        blocks.push_back({kind, static_cast<std::size_t>(index - 1), t[0], {}});
        continue;
      }
      if (blocks.empty()) {
        throw SyntaxError(t[0].line, t[0].column, "a block header");
      }
      blocks.back().body.push_back(lines[i]);
    }

    std::map<std::string, std::map<std::size_t, detail::Token>> seen;
    std::map<std::string, std::vector<std::optional<GroupHom>>>  homs;
    std::map<std::string, std::vector<std::optional<GroupWord>>> words;
    for (auto const& b : blocks) {
      if (!seen[b.kind].emplace(b.index, b.head).second) {
        throw SyntaxError(b.head.line, b.head.column,
                          "a new block (duplicate [" + b.kind + " "
                              + std::to_string(b.index + 1) + "])");
      }
      if (b.kind == "g" || b.kind == "h") {
        GroupWord w(alphabet.size());
        if (b.body.size() > 1
            || (b.body.size() == 1 && b.body[0].tokens[0].text != "word:")) {
          auto const& tok = b.body.size() == 1 ? b.body[0].tokens[0]
                                                : b.body[1].tokens[0];
          throw SyntaxError(tok.line, tok.column, "a single \"word:\" line");
        }
        if (b.body.size() == 1) {
          std::string spelled;
          auto const& t = b.body[0].tokens;
          for (std::size_t k = 1; k < t.size(); ++k) {
            spelled += (k > 1 ? " " : "") + t[k].text;
          }
          w = parse_group_word(alphabet, spelled);
        }
        auto& v = words[b.kind];
        v.resize(std::max(v.size(), b.index + 1));
        v[b.index] = std::move(w);
      } else {
        auto block = detail::parse_rule_block(b.body, false);
        auto h     = detail::hom_from_block(block, alphabet);
        auto& v    = homs[b.kind];
        v.resize(std::max(v.size(), b.index + 1));
        v[b.index] = std::move(h.hom);
      }
    }

    auto collect = [&](auto& table, std::string const& kind) {
      using T = typename std::decay_t<decltype(table[kind])>::value_type::value_type;
      std::vector<T> out;
      for (std::size_t i = 0; i < table[kind].size(); ++i) {
        if (!table[kind][i]) {
          throw Error(ErrorKind::ValidationError,
                      "missing block [" + kind + " " + std::to_string(i + 1) + "]");
        }
        out.push_back(std::move(*table[kind][i]));
      }
      return out;
    };
    CzzFile file{alphabet, {}};
    file.witness.top              = collect(homs, "top");
    file.witness.bottom           = collect(homs, "bottom");
    file.witness.downs            = collect(homs, "down");
    file.witness.ups              = collect(homs, "up");
    file.witness.up_conjugators   = collect(words, "g");
    file.witness.down_conjugators = collect(words, "h");
    return file;
  }

  inline std::string render_czz(CzzFile const& f) {
    std::string out = detail::render_names("alphabet:", f.alphabet);
    auto homs = [&](std::string const& kind, std::vector<GroupHom> const& hs) {
      for (std::size_t i = 0; i < hs.size(); ++i) {
        out += "\n[" + kind + " " + std::to_string(i + 1) + "]\n";
        NamedHom h{f.alphabet, f.alphabet, hs[i]};
        if (h.hom.domain_rank() != f.alphabet.size()
            || h.hom.codomain_rank() != f.alphabet.size()) {
          throw Error(ErrorKind::RankMismatch,
                      "czz files hold maps on the one declared alphabet");
        }
        out += detail::render_rules(h);
      }
    };
    auto words = [&](std::string const& kind, std::vector<GroupWord> const& ws) {
      for (std::size_t i = 0; i < ws.size(); ++i) {
        out += "\n[" + kind + " " + std::to_string(i + 1) + "]\n";
        std::string spelled = spell(f.alphabet, ws[i]);
        out += spelled.empty() ? "word:\n" : "word: " + spelled + "\n";
      }
    };
    homs("top", f.witness.top);
    homs("bottom", f.witness.bottom);
    homs("down", f.witness.downs);
    homs("up", f.witness.ups);
    words("g", f.witness.up_conjugators);
    words("h", f.witness.down_conjugators);
    return out;
  }

}  // namespace flowtrope

#endif  // FLOWTROPE_IO_HPP_
