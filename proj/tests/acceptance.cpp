// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "flowtrope/cli.hpp"
#include "flowtrope/families.hpp"
#include "flowtrope/flowtrope.hpp"
#include "oracles.hpp"

using namespace flowtrope;

namespace {

  // Pinned limits.
  constexpr double      kRewriteSeconds   = 1.0;
  constexpr double      kTotalSeconds     = 60.0;
  constexpr int         kRoundTrips       = 1000;
  constexpr std::size_t kChainLength      = 12;
  constexpr std::size_t kBruteGolden      = 16;
  constexpr std::size_t kBruteRandom      = 12;
  constexpr int         kTropePairs       = 200;
  constexpr int         kFunctorPairs     = 100;
  constexpr int         kFoldOrders       = 50;
  constexpr int         kFoldGraphs       = 20;
  constexpr int         kClassifyPairs    = 100;
  constexpr std::size_t kMaxWindow        = 8;

  using Clock = std::chrono::steady_clock;

  double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }

  GroupHom pi(Substitution const& s) {
    return hom_from_substitution(s);
  }

  std::string slurp(std::string const& name) {
    std::ifstream     in(std::string(FLOWTROPE_DATA_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  struct Outcome {
    bool        pass;
    std::string detail;
  };

  // g(x) = w u_x and f(x) = u_x w, so f = c_w g.
  std::pair<GroupHom, GroupHom> related_pair(std::mt19937_64& rng, Word const& w,
                                             std::size_t max_u) {
    std::vector<GroupWord> fs, gs;
    for (std::size_t x = 0; x < 2; ++x) {
      Word u = oracle::random_positive(rng, 2, w.empty() ? 1 : 0, max_u);
      Word g = w;
      g.insert(g.end(), u.begin(), u.end());
      Word f = u;
      f.insert(f.end(), w.begin(), w.end());
      fs.push_back(GroupWord::positive(2, f));
      gs.push_back(GroupWord::positive(2, g));
    }
    return {GroupHom(2, fs), GroupHom(2, gs)};
  }

  Outcome thue_morse_rewrite() {
    auto               t0 = Clock::now();
    std::ostringstream out, err;
    int code = cli::run({"--fixtures", FLOWTROPE_DATA_DIR, "sub", "rewrite", "thue_morse.sub",
                         "--junction", "a,a"},
                        out, err);
    double const elapsed = seconds_since(t0);
    if (code != 0) {
      return {false, "exit " + std::to_string(code) + ": " + err.str()};
    }
    // Tile lines "X = word", rule lines "X -> Y Z ...".
    std::map<std::string, std::string>              tile_of;
    std::map<std::string, std::vector<std::string>> rules;
    std::istringstream                              in(out.str());
    for (std::string line; std::getline(in, line);) {
      std::istringstream ls(line);
      std::string        name, op;
      ls >> name >> op;
      if (op == "=") {
        ls >> tile_of[name];
      } else if (op == "->") {
        for (std::string t; ls >> t;) {
          rules[name].push_back(t);
        }
      }
    }
    // Canonical labels fixed by the tile words.
    std::map<std::string, std::string> const canon{
        {"abbaba", "A"}, {"abba", "B"}, {"ababbaba", "C"}, {"ababba", "D"}};
    std::map<std::string, std::string> const want{
        {"A", "ABCD"}, {"B", "ABD"}, {"C", "ACBCD"}, {"D", "ACBD"}};
    if (tile_of.size() != 4) {
      return {false, std::to_string(tile_of.size()) + " tiles"};
    }
    std::map<std::string, std::string> relabel;
    for (auto const& [name, word] : tile_of) {
      auto it = canon.find(word);
      if (it == canon.end()) {
        return {false, "unexpected tile " + word};
      }
      relabel[name] = it->second;
    }
    std::map<std::string, std::string> got;
    for (auto const& [name, img] : rules) {
      std::string s;
      for (auto const& t : img) {
        s += relabel.at(t);
      }
      got[relabel.at(name)] = s;
    }
    if (got != want) {
      return {false, "image table differs"};
    }
    if (elapsed >= kRewriteSeconds) {
      return {false, "took " + std::to_string(elapsed) + " s"};
    }
    return {true, "4 tiles, table matches, " + std::to_string(elapsed) + " s"};
  }

  Outcome invertibility() {
    bool s = is_invertible(pi(families::sigma()));
    bool t = is_invertible(pi(families::tau()));
    bool r = is_invertible(pi(families::rho()));
    return {s && !t && r, std::string("sigma ") + (s ? "yes" : "no") + ", tau "
                              + (t ? "yes" : "no") + ", rho " + (r ? "yes" : "no")};
  }

  Outcome abelianization() {
    IntMatrix const m{{5, 3}, {3, 2}};
    bool ok = abelianize(families::sigma()) == m && abelianize(families::tau()) == m;
    auto c1 = to_string(factorize_gl2(m));
    auto c2 = to_string(factorize_gl2(IntMatrix{{1, 1}, {1, 2}}));
    ok      = ok && c1 == "I;RLRL" && c2 == "I;LR";
    return {ok, c1 + ", " + c2};
  }

  Outcome factor_round_trip() {
    std::mt19937_64 rng(401);
    int             failures = 0;
    for (int i = 0; i < kRoundTrips; ++i) {
      auto c = oracle::random_chain(rng, kChainLength);
      if (!(factorize_gl2(multiply_out(c)) == c)) {
        ++failures;
      }
    }
    return {failures == 0, std::to_string(failures) + " failures in "
                               + std::to_string(kRoundTrips)};
  }

  Outcome trope_golden() {
    auto sigma = pi(families::sigma());
    auto ab    = Alphabet::of_chars("ab");
    auto x     = solve_conjugator(pi(families::alpha()), sigma);
    auto y     = solve_conjugator(pi(families::beta()), sigma);
    auto z     = solve_conjugator(sigma, pi(families::tau()));
    auto brute = oracle::brute_conjugator(sigma, pi(families::tau()), kBruteGolden);
    std::string sx = x ? spell(ab, *x) : "None";
    std::string sy = y ? spell(ab, *y) : "None";
    bool ok = sx == "a" && sy == "b'" && !z && !brute;
    return {ok, "alpha: " + sx + ", beta: " + sy + ", sigma/tau: "
                    + (z ? "related" : "None") + " (brute force to "
                    + std::to_string(kBruteGolden) + ": " + (brute ? "found" : "none") + ")"};
  }

  Outcome trope_oracle() {
    std::mt19937_64 rng(402);
    int             unsolved = 0;
    for (int i = 0; i < kTropePairs; ++i) {
      auto [f, g] = related_pair(rng, oracle::random_positive(rng, 2, 0, 6), 4);
      auto a      = solve_conjugator(f, g);
      if (!a || !(conjugate_hom(g, *a) == f)) {
        ++unsolved;
      }
    }
    int disagreements = 0;
    int related       = 0;
    for (int i = 0; i < kTropePairs; ++i) {
      GroupHom f = oracle::random_positive_hom(rng, 2, 3);
      GroupHom g = oracle::random_positive_hom(rng, 2, 3);
      if (i % 2 == 1) {
        std::tie(f, g) = related_pair(rng, oracle::random_positive(rng, 2, 0, 4), 3);
        // Break some of them again.
        if (i % 4 == 3) {
          g = GroupHom(2, {g.image(1), g.image(0)});
        }
      }
      bool fast = solve_conjugator(f, g).has_value();
      bool slow = oracle::brute_conjugator(f, g, kBruteRandom).has_value();
      disagreements += fast != slow;
      related += fast;
    }
    return {unsolved == 0 && disagreements == 0,
            std::to_string(unsolved) + " unsolved constructed pairs, "
                + std::to_string(disagreements) + " disagreements ("
                + std::to_string(related) + " of " + std::to_string(kTropePairs)
                + " random pairs related)"};
  }

  Outcome inverse_pair() {
    auto f = parse_hom("alphabet: a b\na -> a a b\nb -> a b\n").hom;
    auto g = parse_hom("alphabet: a b\na -> a b'\nb -> b a' b\n").hom;
    bool ok = compose_hom(f, g) == identity_hom(2) && compose_hom(g, f) == identity_hom(2);
    return {ok, ok ? "identity both ways" : "composite is not the identity"};
  }

  Outcome functoriality() {
    std::mt19937_64 rng(403);
    int             failures = 0;
    for (int i = 0; i < kFunctorPairs; ++i) {
      auto s = oracle::random_substitution(rng, 2, 3, 5);
      auto t = oracle::random_substitution(rng, 3, 2, 5);
      failures += !(abelianize(compose(s, t))
                    == oracle::naive_product(abelianize(s), abelianize(t)));
    }
    int fold_failures = 0;
    for (int i = 0; i < kFoldGraphs; ++i) {
      std::vector<GroupWord> words;
      for (int j = 0; j < 3; ++j) {
        words.push_back(oracle::random_reduced(rng, 2, 8));
      }
      auto g   = bouquet(std::span<GroupWord const>(words), 2);
      auto ref = fold(g);
      for (int seed = 0; seed < kFoldOrders; ++seed) {
        fold_failures += !(fold_randomized(g, static_cast<std::uint64_t>(seed)) == ref);
      }
    }
    return {failures == 0 && fold_failures == 0,
            std::to_string(failures) + " abelianization failures, "
                + std::to_string(fold_failures) + " fold order failures"};
  }

  Outcome czz() {
    auto base = parse_czz(slurp("sigma_alpha.czz")).witness;
    auto r    = verify_czz(base);
    if (!r.ok) {
      return {false, "fixture fails at " + to_string(r.first_failure->triangle)};
    }
    int        unlocated = 0;
    int        tried     = 0;
    auto const extra     = GroupWord::generator(2, 1);
    for (bool lower : {true, false}) {
      auto& list = lower ? base.down_conjugators : base.up_conjugators;
      for (std::size_t i = 0; i < list.size(); ++i) {
        auto w  = base;
        auto& l = lower ? w.down_conjugators : w.up_conjugators;
        l[i]    = l[i] * extra;
        auto p  = verify_czz(w);
        ++tried;
        Triangle want{lower ? Triangle::Side::Lower : Triangle::Side::Upper, i};
        if (p.ok || !(p.first_failure->triangle == want)) {
          ++unlocated;
        }
      }
    }
    return {unlocated == 0, "ok (" + std::to_string(r.triangles_checked) + " triangles), "
                                + std::to_string(tried - unlocated) + "/"
                                + std::to_string(tried) + " perturbations located"};
  }

  Outcome classification() {
    std::set<std::string> const labels{"r", "s", "t"};
    Dictionary const dict{{"s", families::sigma()}, {"t", families::tau()},
                          {"r", families::rho()}};
    auto periodic = [&](std::vector<std::string> p, std::vector<std::string> c) {
      return LabelStream::eventually_periodic(std::move(p), std::move(c), labels);
    };
    bool const c1 = classify_family(periodic({}, {"s"}), periodic({}, {"r"}), dict).kind
                    == FamilyVerdictKind::FlowEquivalent;
    bool const c2 = classify_family(periodic({}, {"s", "r"}), periodic({"t"}, {"r", "t", "t"}), dict)
                        .kind
                    == FamilyVerdictKind::Distinct;
    std::mt19937_64 rng(404);
    int             done = 0, mismatches = 0, equivalent = 0;
    while (done < kClassifyPairs) {
      auto x = oracle::random_stream(rng, {"r", "s"}, 3, 4);
      auto y = oracle::random_stream(rng, {"r", "s"}, 3, 4);
      if (x.is_eventually_constant() || y.is_eventually_constant()) {
        continue;
      }
      x = periodic(x.prefix(), x.cycle());
      y = periodic(y.prefix(), y.cycle());
      ++done;
      bool const same = oracle::brute_tail_equivalent(x, y, 12, 40);
      equivalent += same;
      auto v = classify_family(x, y, dict).kind;
      mismatches += v != (same ? FamilyVerdictKind::FlowEquivalent : FamilyVerdictKind::Distinct);
    }
    return {c1 && c2 && mismatches == 0,
            std::string("sigma/rho ") + (c1 ? "equivalent" : "WRONG") + ", sigma-rho/tau-rho "
                + (c2 ? "distinct" : "WRONG") + ", " + std::to_string(mismatches)
                + " mismatches in " + std::to_string(kClassifyPairs) + " ("
                + std::to_string(equivalent) + " tail equivalent)"};
  }

  Outcome pps() {
    bool const sigma_ok
        = std::holds_alternative<PpsSpec>(validate_pps(SequenceSpec::constant(families::sigma())));
    bool tm_rejected = true;
    for (std::size_t w = 1; w <= kMaxWindow; ++w) {
      auto v = validate_pps(SequenceSpec::constant(families::thue_morse()), w);
      tm_rejected = tm_rejected && std::holds_alternative<PpsRejection>(v)
                    && std::get<PpsRejection>(v).proper_failed();
    }
    auto stab = sequence_is_proper(
        SequenceSpec::constant(Substitution::from_strings("ab", {"a", "ab"})));
    bool const degenerate = stab.verdict == ProperVerdict::DegenerateStabilized;
    return {sigma_ok && tm_rejected && degenerate,
            std::string("sigma ") + (sigma_ok ? "accepted" : "REJECTED") + ", thue-morse "
                + (tm_rejected ? "rejected" : "ACCEPTED") + " at windows 1.."
                + std::to_string(kMaxWindow) + ", a->a b->ab " + std::string(to_string(stab.verdict))};
  }

}  // namespace

int main() {
  struct Criterion {
    char const*              name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> const criteria{
      {"thue-morse rewriting", thue_morse_rewrite},
      {"invertibility separation", invertibility},
      {"abelianization identity", abelianization},
      {"factorization round trip", factor_round_trip},
      {"trope solver golden", trope_golden},
      {"trope solver vs brute force", trope_oracle},
      {"inverse pair", inverse_pair},
      {"functoriality and fold confluence", functoriality},
      {"czz verification", czz},
      {"family classification", classification},
      {"pps validation", pps},
  };
  auto const t0       = Clock::now();
  int        failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (std::exception const& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str());
  }
  double const total = seconds_since(t0);
  bool const   fast  = total < kTotalSeconds;
  failures += !fast;
  std::printf("%s    total time: %.2f s (limit %.0f s)\n", fast ? "PASS" : "FAIL", total,
              kTotalSeconds);
  return failures == 0 ? 0 : 1;
}
