#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wseq/dga.hpp"

#include <random>

using namespace wseq;

namespace {

AlgElement g(const FreeDGA& d, const std::string& name, long c = 1) {
  return AlgElement::generator(*d.find(name), Integer(c));
}

// Number of words of degree n over the given generator degrees, by recursion on the first letter.
long long count_words(const std::vector<int>& degs, int n) {
  if (n == 0) return 1;
  long long total = 0;
  for (int d : degs)
    if (d <= n) total += count_words(degs, n - d);
  return total;
}

FreeDGA sample() {
  FreeDGA d;
  d.add_generator("a", 1);
  d.add_generator("x", 1);
  d.add_generator("b", 3);
  d.add_generator("c", 3);
  d.add_generator("e", 5);
  d.set_diff("b", g(d, "a") * g(d, "x"));
  d.set_diff("c", g(d, "x") * g(d, "a"));
  d.set_diff("e", g(d, "b") * g(d, "a") + g(d, "a") * g(d, "c"));
  return d;
}

}  // namespace

TEST_CASE("word bases match composition counts") {
  FreeDGA d = sample();
  const std::vector<int> degs = {1, 1, 3, 3, 5};
  for (int n = 1; n <= 6; ++n) {
    CHECK(static_cast<long long>(d.word_basis(n, 5).size()) == count_words(degs, n));
    CHECK(static_cast<long long>(d.word_basis(n, 1).size()) == count_words({1, 1}, n));
  }
  CHECK(d.word_basis(0, 5).empty());
}

TEST_CASE("Leibniz rule and d d = 0") {
  FreeDGA d;
  d.add_generator("a", 1);
  d.add_generator("b", 2);
  d.add_generator("c", 3);
  d.set_diff("b", g(d, "a", 2));
  d.set_diff("c", g(d, "a") * g(d, "a"));
  // d(a b) = d(a) b - a d(b), d(b a) = d(b) a + b d(a)
  CHECK(d.apply_diff(g(d, "a") * g(d, "b")) == -(g(d, "a") * g(d, "a", 2)));
  CHECK(d.apply_diff(g(d, "b") * g(d, "a")) == g(d, "a", 2) * g(d, "a"));
  CHECK(d.validate().ok);
}

TEST_CASE("validation rejects non-square-zero differentials") {
  FreeDGA d;
  d.add_generator("a", 1);
  d.add_generator("b", 2);
  d.add_generator("c", 3);
  d.set_diff("b", g(d, "a"));
  d.set_diff("c", g(d, "b"));
  CHECK_FALSE(d.validate().ok);
  CHECK_THROWS_AS(d.set_diff("c", g(d, "a")), DomainError);
}

TEST_CASE("d d = 0 on random elements of a valid DGA") {
  FreeDGA d = sample();
  REQUIRE(d.validate().ok);
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 6; ++n) {
    const auto& words = d.word_basis(n, 5);
    std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
    for (int t = 0; t < 10; ++t) {
      AlgElement x;
      for (int k = 0; k < 3; ++k) x.add(words[pick(rng)], static_cast<long>(k) - 1);
      CHECK(d.apply_diff(d.apply_diff(x)).is_zero());
    }
    CHECK(is_zero(IntMatrix(mul(d.diff_matrix(n - 1, 5), d.diff_matrix(n, 5)))));
  }
}

TEST_CASE("tensor algebra homology") {
  FreeDGA t;
  t.add_generator("a", 1);
  for (int n = 1; n <= 5; ++n) CHECK(t.truncation_homology(n + 1, n).group() == AbGroup::free(1));

  // contractible generators give an acyclic tensor algebra
  FreeDGA c;
  c.add_generator("a", 1);
  c.add_generator("b", 2);
  c.set_diff("b", g(c, "a"));
  for (int n = 1; n <= 5; ++n) CHECK(c.truncation_homology(n + 1, n).group().is_trivial());

  for (long k : {1L, 2L, 3L}) {
    FreeDGA s;
    s.add_generator("a", 1);
    s.add_generator("c", 3);
    s.set_diff("c", g(s, "a", k) * g(s, "a"));
    CHECK(s.truncation_homology(3, 2).group() == AbGroup::cyclic(k));
    CHECK(s.truncation_homology(2, 2).group() == AbGroup::free(1));
  }
}

TEST_CASE("linear part and boundary preimages") {
  FreeDGA d;
  d.add_generator("a", 1);
  d.add_generator("b", 2);
  d.add_generator("c", 3);
  d.set_diff("c", g(d, "b", 2) + g(d, "a") * g(d, "a"));
  auto lin = d.linear_part();
  CHECK(lin.diff(3)(0, 0) == 2);
  CHECK(lin.diff(2).isZero());

  auto y = d.apply_diff(g(d, "c") * g(d, "a"));
  auto x = d.boundary_preimage(3, y);
  REQUIRE(x);
  CHECK(d.apply_diff(*x) == y);
  CHECK_FALSE(d.boundary_preimage(3, g(d, "a") * g(d, "a")));
}

TEST_CASE("morphisms") {
  FreeDGA d;
  d.add_generator("a", 1);
  d.add_generator("b", 2);
  d.set_diff("b", g(d, "a", 2));
  auto id = DgaMorphism::identity(d);
  CHECK(id.validate().ok);
  CHECK(id.linear_matrix(2) == identity(1));
  CHECK(equal(induced_H(id, 1), AbHom::identity(d.truncation_homology(2, 1).group())));

  // a -> -a, b -> -b is a DGA automorphism
  DgaMorphism neg(d, d, {g(d, "a", -1), g(d, "b", -1)});
  CHECK(neg.validate().ok);
  // a -> a, b -> -b does not commute with d
  DgaMorphism bad(d, d, {g(d, "a"), g(d, "b", -1)});
  CHECK_FALSE(bad.validate().ok);
}

TEST_CASE("resource bound on word bases") {
  FreeDGA d;
  for (int i = 0; i < 6; ++i) d.add_generator("a" + std::to_string(i), 1);
  CHECK_THROWS_AS(d.word_basis(12, 1), ResourceError);
}
