#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "wseq/abgroup.hpp"

using namespace wseq;

namespace {

AbGroup Z(int r = 1) { return AbGroup::free(r); }
AbGroup C(int n) { return AbGroup::cyclic(n); }
AbGroup P(const std::string& s) { return AbGroup::parse(s); }

long long euler_phi(long long n) {
  long long c = 0;
  for (long long k = 1; k <= n; ++k)
    if (oracle::gcdll(k, n) == 1) ++c;
  return c;
}

}  // namespace

TEST_CASE("invariant factor normalization and notation") {
  CHECK(AbGroup::from_cyclic({2, 3}) == C(6));
  CHECK(AbGroup::from_cyclic({2, 4, 0, 1}).str() == "Z + Z2 + Z4");
  CHECK(AbGroup::from_cyclic({4, 6}).str() == "Z2 + Z12");
  CHECK(P("Z^2 + Z4") == AbGroup::from_cyclic({0, 0, 4}));
  CHECK(P("0").is_trivial());
  CHECK(P("Z2 + Z3") == C(6));
  CHECK(C(1).is_trivial());
  CHECK(C(12).cardinality() == 12);
  CHECK_THROWS_AS(P("Z + Q"), DomainError);
  CHECK_THROWS_AS(Z().cardinality(), InfiniteError);
}

TEST_CASE("functor values") {
  CHECK(hom_group(C(2), C(2)) == C(2));
  CHECK(hom_group(C(4), C(2)) == C(2));
  CHECK(ext_group(C(2), Z()) == C(2));
  CHECK(tor(C(2), C(2)) == C(2));
  CHECK(hom_group(Z(), C(2)) == C(2));
  CHECK(hom_group(C(2), Z()).is_trivial());
  CHECK(ext_group(Z(), C(5)).is_trivial());
  CHECK(tensor(Z(2), C(3)) == P("Z3 + Z3"));
  CHECK(tensor(C(4), C(6)) == C(2));
  CHECK(ext_group(C(4), C(6)) == C(2));
}

TEST_CASE("cyclic functors agree with resolution brute force") {
  for (long long m = 0; m <= 12; ++m)
    for (long long n = 0; n <= 12; ++n) {
      if (m == 1 || n == 1) continue;
      CAPTURE(m);
      CAPTURE(n);
      const AbGroup a = AbGroup::cyclic(m), b = AbGroup::cyclic(n);
      const auto f = oracle::cyclic_functors(m, n);
      auto same = [](const AbGroup& g, const std::optional<oracle::OrderProfile>& p) {
        if (!p) return !g.is_finite();
        return g.is_finite() && oracle::profile(g) == *p;
      };
      CHECK(same(hom_group(a, b), f.hom));
      CHECK(same(ext_group(a, b), f.ext));
      CHECK(same(tensor(a, b), f.tensor));
      CHECK(same(tor(a, b), f.tor));
    }
}

TEST_CASE("functors are additive in each variable") {
  const std::vector<AbGroup> gs = {C(2), C(4), C(6), Z(), P("Z2 + Z4"), P("Z + Z3")};
  for (const auto& a : gs)
    for (const auto& b : gs)
      for (const auto& c : gs) {
        CHECK(tensor(direct_sum(a, b), c) == direct_sum(tensor(a, c), tensor(b, c)));
        CHECK(tor(a, direct_sum(b, c)) == direct_sum(tor(a, b), tor(a, c)));
        CHECK(hom_group(direct_sum(a, b), c) == direct_sum(hom_group(a, c), hom_group(b, c)));
        CHECK(ext_group(a, direct_sum(b, c)) == direct_sum(ext_group(a, b), ext_group(a, c)));
      }
}

TEST_CASE("hom enumeration") {
  const std::vector<AbGroup> gs = {C(2), C(4), C(6), P("Z2 + Z4"), P("Z3 + Z3"), Z()};
  for (const auto& a : gs)
    for (const auto& b : gs) {
      if (!hom_group(a, b).is_finite()) {
        CHECK_THROWS_AS(hom_elements(a, b), InfiniteError);
        continue;
      }
      auto homs = hom_elements(a, b);
      CHECK(Integer(homs.size()) == hom_count(a, b));
      CHECK(Integer(homs.size()) == hom_group(a, b).cardinality());
      CHECK(homs.front().is_zero());
      for (size_t i = 0; i + 1 < homs.size(); ++i) CHECK_FALSE(equal(homs[i], homs[i + 1]));
    }
  CHECK(hom_elements(C(4), C(2)).size() == 2);
  CHECK(hom_elements(Z(), C(2)).size() == 2);
}

TEST_CASE("automorphisms") {
  for (int n = 2; n <= 12; ++n) CHECK(static_cast<long long>(automorphisms(C(n)).size()) == euler_phi(n));
  CHECK(automorphisms(P("Z2 + Z2")).size() == 6);
  CHECK(automorphisms(P("Z2 + Z4")).size() == 8);
  long long count = 0;
  for_each_automorphism(Z(), [&](const AbHom&) {
    ++count;
    return true;
  });
  CHECK(count == 2);
  for (const auto& f : automorphisms(P("Z2 + Z4"))) {
    CHECK(is_isomorphism(f));
    CHECK(equal(compose(inverse(f), f), AbHom::identity(f.domain())));
  }
}

TEST_CASE("kernel, image and cokernel") {
  IntMatrix m(1, 1);
  m << 2;
  AbHom twice(C(4), C(4), m);
  CHECK(kernel(twice).group == C(2));
  CHECK(image(twice) == C(2));
  CHECK(cokernel(twice).group == C(2));
  CHECK_THROWS_AS(AbHom(C(2), C(3), IntMatrix::Ones(1, 1)), DomainError);

  IntMatrix e(2, 1);
  e << 1, 2;
  AbHom f(Z(), P("Z + Z4"), e);
  auto k = cokernel(f);
  CHECK(k.group.cardinality() == 4);
  CHECK(is_zero(IntMatrix(mul(k.projection.matrix(), f.matrix()))) == false);
  CHECK(k.group.is_zero(mul(k.projection.matrix(), IntVector(f.matrix().col(0)))));
}

TEST_CASE("presented groups") {
  IntMatrix rel(2, 2);
  rel << 2, 0, 0, 3;
  auto p = PresentedGroup::present(2, rel);
  CHECK(p.group() == C(6));
  IntVector v(2);
  v << 1, 1;
  auto c = p.to_canonical(v);
  CHECK_FALSE(p.group().is_zero(c));
  IntVector six = 6 * p.lift(c);
  CHECK(p.group().is_zero(p.to_canonical(six)));
  AbHom id = induced_hom(p, p, identity(2));
  CHECK(equal(id, AbHom::identity(p.group())));
}
