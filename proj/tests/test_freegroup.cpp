#include <catch_amalgamated.hpp>

#include "flowtrope/families.hpp"
#include "flowtrope/freegroup.hpp"
#include "oracles.hpp"

using namespace flowtrope;

namespace {
  GroupWord w2(std::vector<Letter> ls) {
    return GroupWord::reduce(2, ls);
  }
  Letter const a{0, false}, A{0, true}, b{1, false}, B{1, true};
}  // namespace

TEST_CASE("free reduction", "[freegroup]") {
  CHECK(w2({a, A}).empty());
  CHECK(w2({a, b, B, A}).empty());
  CHECK(w2({a, b, B, b}) == w2({a, b}));
  CHECK(w2({a, b}).inverse() == w2({B, A}));
  CHECK((w2({a, b}) * w2({B, a})) == w2({a, a}));
  GroupWord x(2);
  CHECK_THROWS_AS(x.push_reduced({2, false}), Error);
  CHECK_THROWS_AS(GroupWord(1) * GroupWord(2), Error);
}

TEST_CASE("sign classes", "[freegroup]") {
  CHECK(classify_sign(GroupWord(2)) == SignClass::Identity);
  CHECK(classify_sign(w2({a, b})) == SignClass::Positive);
  CHECK(classify_sign(w2({A, B})) == SignClass::Negative);
  CHECK(classify_sign(w2({a, B})) == SignClass::Mixed);
}

TEST_CASE("the inverse of a -> aab, b -> ab", "[freegroup]") {
  GroupHom f(2, {w2({a, a, b}), w2({a, b})});
  GroupHom g(2, {w2({a, B}), w2({b, A, b})});
  CHECK(compose_hom(f, g) == identity_hom(2));
  CHECK(compose_hom(g, f) == identity_hom(2));
  CHECK(is_positive_hom(f));
  CHECK_FALSE(is_positive_hom(g));
}

TEST_CASE("conjugation composes as c_b c_a = c_ab", "[freegroup]") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto h = oracle::random_positive_hom(rng, 2, 5);
    auto x = oracle::random_reduced(rng, 2, 4);
    auto y = oracle::random_reduced(rng, 2, 4);
    CHECK(conjugate_hom(conjugate_hom(h, x), y) == conjugate_hom(h, x * y));
    CHECK(conjugate_hom(conjugate_hom(h, x), x.inverse()) == h);
  }
}

TEST_CASE("alpha and beta are conjugates of sigma", "[freegroup]") {
  auto sigma = hom_from_substitution(families::sigma());
  auto alpha = hom_from_substitution(families::alpha());
  auto beta  = hom_from_substitution(families::beta());
  CHECK(conjugate_hom(sigma, w2({a})) == alpha);
  CHECK(conjugate_hom(sigma, w2({B})) == beta);
}

TEST_CASE("hom application and rank checks", "[freegroup]") {
  auto sigma = hom_from_substitution(families::sigma());
  CHECK(apply(sigma, w2({a, A})).empty());
  CHECK(apply(sigma, w2({b})).symbols() == families::sigma().image(1));
  CHECK_THROWS_AS(apply(sigma, GroupWord(3)), Error);
  CHECK_THROWS_AS(GroupHom(3, {w2({a})}), Error);
  GroupHom to3(3, {GroupWord::generator(3, 2)});
  CHECK_THROWS_AS(compose_hom(to3, to3), Error);
}

TEST_CASE("spelling group words", "[freegroup]") {
  auto ab = Alphabet::of_chars("ab");
  CHECK(spell(ab, w2({a, B, b, b})) == "a b");
  CHECK(spell(ab, w2({b, A})) == "b a'");
  CHECK(spell(ab, GroupWord(2)).empty());
}

TEST_CASE("shortlex order puts positive letters first", "[freegroup]") {
  CHECK(shortlex_less(w2({a}), w2({A})));
  CHECK(shortlex_less(w2({A}), w2({b})));
  CHECK(shortlex_less(w2({b}), w2({a, a})));
}
