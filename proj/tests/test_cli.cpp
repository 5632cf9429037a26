#include <catch_amalgamated.hpp>

#include <sstream>

#include "flowtrope/cli.hpp"

namespace {
  struct Result {
    int         code;
    std::string out;
    std::string err;
  };

  Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), {"--fixtures", FLOWTROPE_DATA_DIR});
    std::ostringstream out, err;
    int code = flowtrope::cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }
}  // namespace

TEST_CASE("sub check", "[cli]") {
  auto r = invoke({"sub", "check", "thue_morse.sub"});
  CHECK(r.code == 0);
  CHECK(r.out.find("proper: no\n") != std::string::npos);
  CHECK(r.out.find("primitive: yes\n") != std::string::npos);
  CHECK(r.out.find("surjective: yes\n") != std::string::npos);
  auto s = invoke({"sub", "check", "sigma.sub"});
  CHECK(s.out.find("proper: yes\n") != std::string::npos);
  auto d = invoke({"sub", "check", "stabilized.sub"});
  CHECK(d.out.rfind("proper: no\n", 0) == 0);
  CHECK(d.out.find("primitive: no\n") != std::string::npos);
}

TEST_CASE("sub compose and language", "[cli]") {
  auto r = invoke({"sub", "compose", "rho.sub", "rho.sub"});
  CHECK(r.code == 0);
  CHECK(r.out == "alphabet: a b\na -> b b a b a\nb -> b b a b b a b a\n");
  auto l = invoke({"sub", "language", "thue_morse.sub", "--length", "2"});
  CHECK(l.code == 0);
  CHECK(l.out == "aa\nab\nba\nbb\n");
}

TEST_CASE("sub rewrite", "[cli]") {
  auto r = invoke({"sub", "rewrite", "thue_morse.sub", "--junction", "a,a"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("junction: a,a k=1\n", 0) == 0);
  for (auto tile : {"abbaba\n", "abba\n", "ababbaba\n", "ababba\n"}) {
    CHECK(r.out.find(std::string(" = ") + tile) != std::string::npos);
  }
  auto bad = invoke({"sub", "rewrite", "thue_morse.sub", "--junction", "a,c"});
  CHECK(bad.code == 2);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("hom commands", "[cli]") {
  auto s = invoke({"hom", "invertible", "sigma.sub"});
  CHECK(s.code == 0);
  CHECK(s.out.rfind("invertible\n", 0) == 0);
  CHECK(s.out.find("rank: 2\n") != std::string::npos);
  auto t = invoke({"hom", "invertible", "tau.sub"});
  CHECK(t.code == 1);
  CHECK(t.out.rfind("not-invertible\n", 0) == 0);
  auto f = invoke({"hom", "invertible", "fwd.hom", "--inverse"});
  CHECK(f.code == 0);
  CHECK(f.out.find("a -> a b'\nb -> b a' b\n") != std::string::npos);

  auto ab = invoke({"hom", "abelianize", "sigma.sub"});
  CHECK(ab.out == "5 3; 3 2\n");
  auto abi = invoke({"hom", "abelianize", "inv.hom"});
  CHECK(abi.out == "1 -1; -1 2\n");

  auto fac = invoke({"hom", "factorize", "5 3; 3 2"});
  CHECK(fac.code == 0);
  CHECK(fac.out == "I;RLRL\n");
  CHECK(invoke({"hom", "factorize", "0 1; 1 0"}).out == "S;\n");
  CHECK(invoke({"hom", "factorize", "2 1; 1 2"}).code == 2);
}

TEST_CASE("trope commands", "[cli]") {
  auto a = invoke({"trope", "relate", "alpha.sub", "sigma.sub"});
  CHECK(a.code == 0);
  CHECK(a.out == "witness: a\n");
  auto b = invoke({"trope", "relate", "beta.sub", "sigma.sub"});
  CHECK(b.out == "witness: b'\n");
  auto e = invoke({"trope", "relate", "sigma.sub", "sigma.sub"});
  CHECK(e.out == "witness:\n");
  auto n = invoke({"trope", "relate", "sigma.sub", "tau.sub"});
  CHECK(n.code == 1);
  CHECK(n.out == "not-related\n");
  auto c = invoke({"trope", "czz", "sigma_alpha.czz"});
  CHECK(c.code == 0);
  CHECK(c.out == "ok (6 triangles)\n");
}

TEST_CASE("classify and seq validate", "[cli]") {
  std::vector<std::string> dict{"--dict", "s=sigma.sub", "--dict", "r=rho.sub", "--dict",
                                "t=tau.sub"};
  auto with = [&](std::vector<std::string> args) {
    args.insert(args.end(), dict.begin(), dict.end());
    return invoke(args);
  };
  CHECK(with({"classify", "|s", "|r"}).code == 0);
  CHECK(with({"classify", "|s,r", "|t,r"}).code == 1);
  CHECK(with({"classify", "|s", "|s,r"}).code == 3);
  CHECK(with({"classify", "|s", "|q"}).code == 2);

  auto v = with({"seq", "validate", "|s"});
  CHECK(v.code == 0);
  CHECK(v.out.find("pps: accepted") != std::string::npos);
  auto tm = invoke({"seq", "validate", "|m", "--dict", "m=thue_morse.sub"});
  CHECK(tm.code == 1);
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"sub", "check"}).code == 2);
  CHECK(invoke({"sub", "check", "missing.sub"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}
