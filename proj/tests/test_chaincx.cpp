#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "wseq/chaincx.hpp"

using namespace wseq;

TEST_CASE("homology of hand examples") {
  FreeChainComplex c;
  c.set_rank(3, 1);
  CHECK(homology(c, 3).group() == AbGroup::free(1));
  CHECK(homology(c, 2).group().is_trivial());

  FreeChainComplex k;
  k.set_rank(4, 1);
  k.set_rank(3, 1);
  IntMatrix d(1, 1);
  d << 5;
  k.set_diff(4, d);
  CHECK(homology(k, 3).group() == AbGroup::cyclic(5));
  CHECK(homology(k, 4).group().is_trivial());
  CHECK(validate(k).ok);
}

TEST_CASE("validation catches d d != 0") {
  FreeChainComplex c;
  c.set_rank(1, 1);
  c.set_rank(2, 1);
  c.set_rank(3, 1);
  IntMatrix one(1, 1);
  one << 1;
  c.set_diff(2, one);
  c.set_diff(3, one);
  auto v = validate(c);
  CHECK_FALSE(v.ok);
  CHECK(v.degree == 3);
}

TEST_CASE("homology agrees with coset enumeration") {
  std::mt19937_64 rng(2024);
  int done = 0;
  while (done < 60) {
    auto s = oracle::random_complex(rng, 4, 3);
    if (!s) continue;
    auto expected = oracle::torsion_of_cokernel(s->A);
    REQUIRE(expected);
    long long order = 0;
    for (const auto& [o, n] : *expected) order += n;
    if (order > 200) continue;
    FreeChainComplex cx = oracle::to_complex(*s, 5);
    REQUIRE(validate(cx).ok);
    AbGroup h = homology(cx, 5).group();
    REQUIRE(h.is_finite());
    CHECK(oracle::profile(h) == *expected);
    ++done;
  }
}

TEST_CASE("splitting and resolution") {
  std::mt19937_64 rng(5);
  int done = 0;
  while (done < 30) {
    auto s = oracle::random_complex(rng, 4, 3);
    if (!s) continue;
    FreeChainComplex cx = oracle::to_complex(*s, 3);
    for (int n : {3, 4}) {
      auto sp = splitting(cx, n);
      const Index r = cx.rank(n);
      CHECK(sp.complement_basis.cols() + sp.kernel_basis.cols() == r);
      IntMatrix basis = hcat(sp.complement_basis, sp.kernel_basis);
      if (r > 0) CHECK(mul(sp.to_split, basis) == identity(r));
      CHECK(is_zero(IntMatrix(mul(cx.diff(n), sp.kernel_basis))));
    }
    auto res = resolution_of_H(cx, 3);
    CHECK(res.homology.group() == homology(cx, 3).group());
    CHECK(res.boundary.rows() == res.kernel_basis.cols());
    ++done;
  }
}
