#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "flowtrope/families.hpp"
#include "flowtrope/io.hpp"
#include "oracles.hpp"

using namespace flowtrope;

namespace {
  std::string slurp(std::filesystem::path const& p) {
    std::ifstream     in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::filesystem::path data(std::string const& name) {
    return std::filesystem::path(FLOWTROPE_DATA_DIR) / name;
  }

  ErrorKind kind_of(auto&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::ValidationError;
  }
}  // namespace

TEST_CASE("parse a substitution file", "[io]") {
  auto s = parse_substitution("alphabet: a b\na -> a b b a\nb -> b a a b\n");
  CHECK(s == families::thue_morse());
  auto commented = parse_substitution("# tm\nalphabet: a b # two letters\n\nb -> b a a b\na -> a b b a\n");
  CHECK(commented == families::thue_morse());
  auto cross = parse_substitution("alphabet: x\ntarget: a b\nx -> a b a\n");
  CHECK_FALSE(cross.is_endomorphism());
  CHECK(cross.target().size() == 2);
}

TEST_CASE("substitution parse errors", "[io]") {
  CHECK(kind_of([] { parse_substitution("alphabet: a b\na -> a c\nb -> b\n"); })
        == ErrorKind::ValidationError);
  CHECK(kind_of([] { parse_substitution("alphabet: a b\na -> a\nb ->\n"); })
        == ErrorKind::ValidationError);
  CHECK(kind_of([] { parse_substitution("alphabet: a b\na -> a\nb -> a\n"); })
        == ErrorKind::ValidationError);
  CHECK(kind_of([] { parse_substitution("alphabet: a b\na -> a\n"); })
        == ErrorKind::ValidationError);
  try {
    (void) parse_substitution("alphabet: a b\na -> a b\na -> b\nb -> a\n");
    FAIL("expected a duplicate key error");
  } catch (SyntaxError const& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 1);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
  try {
    (void) parse_substitution("alphabet: a b\na a b\n");
    FAIL("expected a missing arrow error");
  } catch (SyntaxError const& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_substitution("a -> a\n"), SyntaxError);
}

TEST_CASE("fixtures round trip", "[io]") {
  for (auto const& entry : std::filesystem::directory_iterator(FLOWTROPE_DATA_DIR)) {
    auto const ext  = entry.path().extension();
    auto const text = slurp(entry.path());
    INFO(entry.path().string());
    if (ext == ".sub") {
      auto s = parse_substitution(text);
      CHECK(parse_substitution(render_substitution(s)) == s);
    } else if (ext == ".hom") {
      auto h = parse_hom(text);
      CHECK(parse_hom(render_hom(h)) == h);
    } else if (ext == ".czz") {
      auto f    = parse_czz(text);
      auto back = parse_czz(render_czz(f));
      CHECK(back.alphabet == f.alphabet);
      CHECK(back.witness.top == f.witness.top);
      CHECK(back.witness.bottom == f.witness.bottom);
      CHECK(back.witness.downs == f.witness.downs);
      CHECK(back.witness.ups == f.witness.ups);
      CHECK(back.witness.up_conjugators == f.witness.up_conjugators);
      CHECK(back.witness.down_conjugators == f.witness.down_conjugators);
    }
  }
  CHECK(parse_substitution(slurp(data("sigma.sub"))) == families::sigma());
  CHECK(parse_substitution(slurp(data("tau.sub"))) == families::tau());
  CHECK(parse_substitution(slurp(data("rho.sub"))) == families::rho());
  CHECK(parse_substitution(slurp(data("alpha.sub"))) == families::alpha());
  CHECK(parse_substitution(slurp(data("beta.sub"))) == families::beta());
}

TEST_CASE("random substitutions round trip", "[io]") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t m = 1 + rng() % 4;
    std::size_t n = 1 + rng() % 4;
    auto s = oracle::random_substitution(rng, m, n, 5);
    CHECK(parse_substitution(render_substitution(s)) == s);
  }
  // Multi-character names.
  Alphabet     names({"x1", "x2", "long"});
  Substitution s(names, names, {{0, 2}, {1}, {2, 2, 1}});
  CHECK(parse_substitution(render_substitution(s)) == s);
}

TEST_CASE("hom files and group words", "[io]") {
  auto inv = parse_hom(slurp(data("inv.hom")));
  auto fwd = parse_hom(slurp(data("fwd.hom")));
  CHECK(compose_hom(fwd.hom, inv.hom) == identity_hom(2));
  auto ab = Alphabet::of_chars("ab");
  CHECK(parse_group_word(ab, "a b'") == parse_group_word(ab, "ab'"));
  CHECK(parse_group_word(ab, "a a'").empty());
  CHECK(kind_of([&] { parse_group_word(ab, "c"); }) == ErrorKind::ValidationError);
  auto e = parse_hom("alphabet: a b\na ->\nb -> b\n");
  CHECK(e.hom.image(0).empty());
}

TEST_CASE("matrix wire format", "[io]") {
  auto m = parse_matrix("5 3; 3 2");
  CHECK(m == IntMatrix{{5, 3}, {3, 2}});
  CHECK(render_matrix(m) == "5 3; 3 2");
  CHECK(parse_matrix(render_matrix(IntMatrix{{-1, 0}, {7, 12}})) == IntMatrix{{-1, 0}, {7, 12}});
  CHECK_THROWS_AS(parse_matrix("5 x; 3 2"), SyntaxError);
  CHECK_THROWS_AS(parse_matrix("5 3;"), SyntaxError);
  CHECK(kind_of([] { parse_matrix("5 3; 3"); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("label stream wire format", "[io]") {
  std::set<std::string> const ls{"r", "s"};
  auto x = parse_label_stream("s,s|s,r", ls);
  CHECK(x.is_periodic());
  CHECK(x.prefix() == std::vector<std::string>{"s", "s"});
  CHECK(x.cycle() == std::vector<std::string>{"s", "r"});
  CHECK(render_label_stream(x) == "s,s|s,r");
  auto y = parse_label_stream("|r", ls);
  CHECK(y.prefix().empty());
  CHECK(render_label_stream(y) == "|r");
  auto f = parse_label_stream("s, r", ls);
  CHECK_FALSE(f.is_periodic());
  CHECK(render_label_stream(f) == "s,r");
  CHECK_THROWS_AS(parse_label_stream("s|", ls), SyntaxError);
  CHECK_THROWS_AS(parse_label_stream("s,,r", ls), SyntaxError);
  CHECK_THROWS_AS(parse_label_stream("s|r|s", ls), SyntaxError);
  CHECK(kind_of([&] { parse_label_stream("|q", ls); }) == ErrorKind::ValidationError);
}

TEST_CASE("czz file errors", "[io]") {
  CHECK_THROWS_AS(parse_czz("[top 1]\na -> a\n"), SyntaxError);
  CHECK_THROWS_AS(parse_czz("alphabet: a\n[side 1]\na -> a\n"), SyntaxError);
  CHECK_THROWS_AS(parse_czz("alphabet: a\n[top 1]\na -> a\n[top 1]\na -> a\n"), SyntaxError);
  CHECK(kind_of([] { parse_czz("alphabet: a\n[top 2]\na -> a\n"); })
        == ErrorKind::ValidationError);
}
