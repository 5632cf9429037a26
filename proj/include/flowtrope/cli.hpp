#ifndef FLOWTROPE_CLI_HPP_
#define FLOWTROPE_CLI_HPP_

// Command dispatch for the flowtrope tool. Reports go to `out`, diagnostics
// to `err`. Exit codes: 0 yes / ok / equivalent, 1 no / distinct,
// 2 bad input, 3 unknown.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flowtrope/abelian.hpp"
#include "flowtrope/error.hpp"
#include "flowtrope/folding.hpp"
#include "flowtrope/freegroup.hpp"
#include "flowtrope/io.hpp"
#include "flowtrope/rewrite.hpp"
#include "flowtrope/symbolic.hpp"
#include "flowtrope/trope.hpp"

namespace flowtrope::cli {

  namespace detail {

    struct Context {
      std::optional<std::filesystem::path> fixtures;

      [[nodiscard]] std::filesystem::path resolve(std::string const& name) const {
        std::filesystem::path p(name);
        if (fixtures && p.is_relative() && !std::filesystem::exists(p)) {
          return *fixtures / p;
        }
        return p;
      }

      [[nodiscard]] std::string read(std::string const& name) const {
        auto          path = resolve(name);
        std::ifstream in(path, std::ios::binary);
        if (!in) {
          throw Error(ErrorKind::ValidationError, "cannot read " + path.string());
        }
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
      }
    };

    inline char const* yes_no(bool b) {
      return b ? "yes" : "no";
    }

    // Reads a file as a substitution, attaching the file name to errors.
    inline Substitution load_substitution(Context const& ctx, std::string const& name) {
      try {
        return parse_substitution(ctx.read(name));
      } catch (SyntaxError const& e) {
        throw Error(ErrorKind::SyntaxError, name + ": " + e.what());
      } catch (Error const& e) {
        throw Error(e.kind(), name + ": " + e.what());
      }
    }

    inline NamedHom load_hom(Context const& ctx, std::string const& name) {
      try {
        return parse_hom(ctx.read(name));
      } catch (Error const& e) {
        throw Error(e.kind(), name + ": " + e.what());
      }
    }

    // label=FILE, or FILE with the file stem as label.
    inline Dictionary load_dictionary(Context const&                  ctx,
                                      std::vector<std::string> const& entries) {
      Dictionary dict;
      for (auto const& entry : entries) {
        std::string label;
        std::string file;
        if (auto eq = entry.find('='); eq != std::string::npos) {
          label = entry.substr(0, eq);
          file  = entry.substr(eq + 1);
        } else {
          file  = entry;
          label = std::filesystem::path(file).stem().string();
        }
        if (label.empty()) {
          throw Error(ErrorKind::ValidationError, "empty label in --dict " + entry);
        }
        if (!dict.emplace(label, load_substitution(ctx, file)).second) {
          throw Error(ErrorKind::ValidationError, "label \"" + label + "\" given twice");
        }
      }
      return dict;
    }

    inline std::set<std::string> labels_of(Dictionary const& dict) {
      std::set<std::string> out;
      for (auto const& [k, v] : dict) {
        out.insert(k);
      }
      return out;
    }

    inline int sub_check(Context const& ctx, std::string const& file, std::ostream& out) {
      NamedHom h = load_hom(ctx, file);
      std::vector<Word> images;
      for (auto const& w : h.hom.images()) {
        if (classify_sign(w) != SignClass::Positive) {
          throw Error(ErrorKind::ValidationError,
                      file + ": substitution images must be non-empty and positive");
        }
        images.push_back(w.symbols());
      }
      std::vector<bool> seen(h.codomain.size(), false);
      for (auto const& w : images) {
        for (Symbol x : w) {
          seen[x] = true;
        }
      }
      bool surjective = std::find(seen.begin(), seen.end(), false) == seen.end();
      out << "proper: " << yes_no(is_proper(images)) << "\n";
      out << "degenerate-proper: " << yes_no(is_degenerate_proper(images)) << "\n";
      out << "primitive: " << yes_no(is_primitive(images, h.codomain.size())) << "\n";
      if (surjective && h.domain == h.codomain) {
        Substitution s(h.domain, h.codomain, images);
        out << "eventually-primitive: " << yes_no(is_eventually_primitive(s)) << "\n";
      }
      out << "surjective: " << yes_no(surjective) << "\n";
      return 0;
    }

    inline std::optional<Symbol> symbol_named(Alphabet const& a, std::string const& n) {
      return a.index_of(n);
    }

    inline int sub_rewrite(Context const&     ctx,
                           std::string const& file,
                           std::string const& junction,
                           std::size_t        k,
                           std::size_t        horizon,
                           std::ostream&      out) {
      Substitution s     = load_substitution(ctx, file);
      auto         comma = junction.find(',');
      if (comma == std::string::npos) {
        throw Error(ErrorKind::ValidationError, "--junction expects a,b");
      }
      auto a = symbol_named(s.source(), junction.substr(0, comma));
      auto b = symbol_named(s.source(), junction.substr(comma + 1));
      if (!a || !b) {
        throw Error(ErrorKind::ValidationError, "junction names an unknown symbol");
      }
      Junction j{*a, *b, k};
      if (k == 0) {
        bool found = false;
        for (auto const& c : junction_candidates(s, 8)) {
          if (c.left == *a && c.right == *b) {
            j     = c;
            found = true;
          }
        }
        if (!found) {
          throw Error(ErrorKind::InvalidJunction,
                      "no exponent k <= 8 makes " + junction + " a junction");
        }
      }
      ProperRewrite r = horizon == 0 ? rewrite_proper(s, j) : rewrite_proper(s, j, horizon);
      Alphabet const& tiles = r.rewritten.source();
      out << "junction: " << s.source().name(j.left) << "," << s.source().name(j.right)
          << " k=" << j.k << "\n";
      for (Symbol t = 0; t < tiles.size(); ++t) {
        out << tiles.name(t) << " = " << spell_compact(s.source(), r.tiles[t]) << "\n";
      }
      out << "\n";
      out << render_substitution(r.rewritten);
      return 0;
    }

    inline int hom_invertible(Context const&     ctx,
                              std::string const& file,
                              bool               want_inverse,
                              std::ostream&      out) {
      NamedHom h = load_hom(ctx, file);
      if (h.hom.domain_rank() != h.hom.codomain_rank()) {
        throw Error(ErrorKind::RankMismatch, "invertibility needs an endomorphism");
      }
      LabeledGraph core = image_core(h.hom);
      bool         inv  = core.is_rose();
      out << (inv ? "invertible" : "not-invertible") << "\n";
      out << "vertices: " << core.vertex_count() << "\n";
      out << "edges: " << core.edge_count() << "\n";
      out << "rank: " << subgroup_rank(core) << "\n";
      if (inv && want_inverse) {
        auto w = inverse_witness(h.hom);
        if (w) {
          out << "inverse:\n" << render_hom({h.codomain, h.domain, *w});
        }
      }
      return inv ? 0 : 1;
    }

    inline int trope_relate(Context const&     ctx,
                            std::string const& f_file,
                            std::string const& g_file,
                            std::ostream&      out) {
      NamedHom f = load_hom(ctx, f_file);
      NamedHom g = load_hom(ctx, g_file);
      if (!(f.domain == g.domain) || !(f.codomain == g.codomain)) {
        throw Error(ErrorKind::AlphabetMismatch, "the two maps use different alphabets");
      }
      auto a = solve_conjugator(f.hom, g.hom);
      if (!a) {
        out << "not-related\n";
        return 1;
      }
      std::string spelled = spell(f.codomain, *a);
      out << "witness:" << (spelled.empty() ? "" : " " + spelled) << "\n";
      return 0;
    }

    inline int trope_czz(Context const& ctx, std::string const& file, std::ostream& out) {
      CzzFile czz = [&] {
        try {
          return parse_czz(ctx.read(file));
        } catch (Error const& e) {
          throw Error(e.kind(), file + ": " + e.what());
        }
      }();
      CzzReport r = verify_czz(czz.witness);
      if (r.ok) {
        out << "ok (" << r.triangles_checked << " triangles)\n";
        return 0;
      }
      auto const& t = r.first_failure->triangle;
      out << "fail: " << (t.side == Triangle::Side::Lower ? "lower " : "upper ")
          << t.level + 1 << ": " << r.first_failure->reason << "\n";
      return 1;
    }

    inline int classify(Context const&                  ctx,
                        std::string const&              a,
                        std::string const&              b,
                        std::vector<std::string> const& dict_entries,
                        std::ostream&                   out) {
      Dictionary dict   = load_dictionary(ctx, dict_entries);
      auto       labels = labels_of(dict);
      auto       v = classify_family(parse_label_stream(a, labels),
                                     parse_label_stream(b, labels), dict);
      out << to_string(v.kind) << ": " << v.reason << "\n";
      switch (v.kind) {
        case FamilyVerdictKind::FlowEquivalent: return 0;
        case FamilyVerdictKind::Distinct: return 1;
        case FamilyVerdictKind::Unknown: return 3;
      }
      return 3;
    }

    inline int seq_validate(Context const&                  ctx,
                            std::string const&              stream,
                            std::vector<std::string> const& dict_entries,
                            std::size_t                     window,
                            std::ostream&                   out) {
      Dictionary dict = load_dictionary(ctx, dict_entries);
      auto       s    = parse_label_stream(stream, labels_of(dict));
      auto       seq  = flowtrope::detail::to_sequence(s, dict);
      auto       p    = sequence_is_proper(seq, window);
      auto       q    = sequence_is_primitive(seq, window);
      auto level = [](std::optional<std::size_t> const& l) {
        return l ? " (level " + std::to_string(*l) + ")" : std::string();
      };
      out << "proper: " << to_string(p.verdict) << level(p.failing_level) << "\n";
      out << "primitive: " << to_string(q.verdict) << level(q.failing_level) << "\n";
      bool accepted = p.verdict == ProperVerdict::Proper
                      && q.verdict == PrimitiveVerdict::Primitive;
      out << "pps: " << (accepted ? "accepted" : "rejected") << "\n";
      return accepted ? 0 : 1;
    }

  }  // namespace detail

  //! Runs one command line (without the program name).
  inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symbolic tools for one-dimensional flow spaces", "flowtrope"};
    app.require_subcommand(1);
    detail::Context ctx;
    std::string     fixtures;
    app.add_option("--fixtures", fixtures, "Directory searched for relative input files");

    int                      code = 0;
    std::string              file1, file2, junction, matrix, stream_a, stream_b;
    std::size_t              length = 0, k = 0, horizon = 0, window = 8;
    bool                     want_inverse = false;
    std::vector<std::string> dict;

    auto* sub = app.add_subcommand("sub", "Substitution files");
    sub->require_subcommand(1);
    auto* sub_check = sub->add_subcommand("check", "Report proper / primitive flags");
    sub_check->add_option("FILE", file1)->required();
    auto* sub_compose = sub->add_subcommand("compose", "Print OUTER o INNER");
    sub_compose->add_option("OUTER", file1)->required();
    sub_compose->add_option("INNER", file2)->required();
    auto* sub_language = sub->add_subcommand("language", "List factors of one length");
    sub_language->add_option("FILE", file1)->required();
    sub_language->add_option("--length", length, "Factor length")->required();
    auto* sub_rewrite = sub->add_subcommand("rewrite", "Rewrite on return-word tiles");
    sub_rewrite->add_option("FILE", file1)->required();
    sub_rewrite->add_option("--junction", junction, "Junction symbols a,b")->required();
    sub_rewrite->add_option("--k", k, "Junction exponent (default: smallest)");
    sub_rewrite->add_option("--horizon", horizon, "Scan length (default: adaptive)");

    auto* hom = app.add_subcommand("hom", "Free group homomorphisms");
    hom->require_subcommand(1);
    auto* hom_inv = hom->add_subcommand("invertible", "Decide invertibility by folding");
    hom_inv->add_option("FILE", file1)->required();
    hom_inv->add_flag("--inverse", want_inverse, "Also print the inverse");
    auto* hom_ab = hom->add_subcommand("abelianize", "Print the abelianization");
    hom_ab->add_option("FILE", file1)->required();
    auto* hom_fac = hom->add_subcommand("factorize", "Factor a 2x2 matrix into I/S, L, R");
    hom_fac->add_option("MATRIX", matrix)->required();

    auto* trope = app.add_subcommand("trope", "Positive trope relation");
    trope->require_subcommand(1);
    auto* trope_rel = trope->add_subcommand("relate", "Find a with F = c_a G");
    trope_rel->add_option("F", file1)->required();
    trope_rel->add_option("G", file2)->required();
    auto* trope_czz = trope->add_subcommand("czz", "Verify a conjugate zigzag diagram");
    trope_czz->add_option("FILE", file1)->required();

    auto* cls = app.add_subcommand("classify", "Classify two label streams");
    cls->add_option("A", stream_a)->required();
    cls->add_option("B", stream_b)->required();
    cls->add_option("--dict", dict, "label=FILE or FILE")->required();

    auto* seq = app.add_subcommand("seq", "Sequences of substitutions");
    seq->require_subcommand(1);
    auto* seq_val = seq->add_subcommand("validate", "Check a stream is primitive and proper");
    seq_val->add_option("STREAM", stream_a)->required();
    seq_val->add_option("--dict", dict, "label=FILE or FILE")->required();
    seq_val->add_option("--window", window, "Search window for finite streams");

    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (CLI::CallForHelp const& e) {
      return app.exit(e, out, err);
    } catch (CLI::CallForAllHelp const& e) {
      return app.exit(e, out, err);
    } catch (CLI::ParseError const& e) {
      app.exit(e, out, err);
      return 2;
    }
    if (!fixtures.empty()) {
      ctx.fixtures = fixtures;
    }

    try {
      if (*sub_check) {
        code = detail::sub_check(ctx, file1, out);
      } else if (*sub_compose) {
        out << render_substitution(compose(detail::load_substitution(ctx, file1),
                                           detail::load_substitution(ctx, file2)));
      } else if (*sub_language) {
        Substitution s = detail::load_substitution(ctx, file1);
        LanguageTable const table = language(s, length);
        for (auto const& w : table.words(length)) {
          out << spell_compact(s.source(), w) << "\n";
        }
      } else if (*sub_rewrite) {
        code = detail::sub_rewrite(ctx, file1, junction, k, horizon, out);
      } else if (*hom_inv) {
        code = detail::hom_invertible(ctx, file1, want_inverse, out);
      } else if (*hom_ab) {
        out << render_matrix(abelianize(detail::load_hom(ctx, file1).hom)) << "\n";
      } else if (*hom_fac) {
        out << to_string(factorize_gl2(parse_matrix(matrix))) << "\n";
      } else if (*trope_rel) {
        code = detail::trope_relate(ctx, file1, file2, out);
      } else if (*trope_czz) {
        code = detail::trope_czz(ctx, file1, out);
      } else if (*cls) {
        code = detail::classify(ctx, stream_a, stream_b, dict, out);
      } else if (*seq_val) {
        code = detail::seq_validate(ctx, stream_a, dict, window, out);
      }
    } catch (Error const& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    return code;
  }

}  // namespace flowtrope::cli

#endif  // FLOWTROPE_CLI_HPP_
