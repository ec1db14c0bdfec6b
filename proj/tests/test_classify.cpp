#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wseq/io.hpp"

#include <random>

using namespace wseq;

namespace {

std::string fx(const std::string& name) { return std::string(WSEQ_FIXTURES) + "/" + name; }

GradedGroup example() { return load_hgr(fx("example25.hgr")); }

AbGroup C(int n) { return AbGroup::cyclic(n); }

ClassificationResult run(const GradedGroup& h, const GammaProvider& p, int top, Equivalence mode) {
  ClassifyOptions o;
  o.max_degree = top;
  o.mode = mode;
  return count_classes(h, p, o);
}

}  // namespace

TEST_CASE("minimal complex realizes the homology") {
  GradedGroup h = example();
  FreeChainComplex c = minimal_complex(h);
  CHECK(validate(c).ok);
  long total = 0;
  for (const auto& [n, r] : c.ranks()) total += static_cast<long>(r);
  CHECK(total == 15);
  for (int n = 1; n <= 11; ++n) CHECK(homology(c, n).group() == at_degree(h, n));
  auto gens = minimal_generators(h, 4);
  REQUIRE(gens.size() == 2);
  CHECK(gens[0].name == "y4_1");
  CHECK(gens[1].name == "x4_1");
  CHECK(gens[1].order == 2);
}

TEST_CASE("tabulated Gamma groups give the stagewise counts 2, 4, 12, 18") {
  TableGammaProvider table(load_gamma_table(fx("example25_gamma.table")));
  auto r = run(example(), table, 10, Equivalence::naive);
  CHECK(r.outcome == ClassificationResult::Outcome::finite);
  CHECK(r.stage_counts == std::vector<long>{2, 4, 12, 18});
  CHECK(r.count == 18);
}

TEST_CASE("closed-form Gamma groups") {
  GradedGroup h = example();
  CHECK(gamma_closed_form(h, {}, 6) == C(2));
  CHECK(gamma_closed_form(h, {}, 7) == C(2));
  CHECK(gamma_closed_form(h, {}, 8) == C(3));
  // Tor(H4, H4) = Z3 next to the triple tensor Z2
  CHECK(gamma_closed_form(h, {}, 9) == C(6));
  AbHom b7(C(2), C(2), IntMatrix::Ones(1, 1));
  CHECK(gamma_closed_form(h, {{7, b7}}, 9) == C(3));
  CHECK(gamma_closed_form(h, {}, 5).is_trivial());

  // coprime orders: only the terms pairing a degree with itself survive
  GradedGroup coprime{{3, C(5)}, {4, C(7)}, {5, C(11)}};
  CHECK(gamma_closed_form(coprime, {}, 6) == C(5));
  CHECK(gamma_closed_form(coprime, {}, 7) == C(5));
  CHECK(gamma_closed_form(coprime, {}, 8) == C(7));
  CHECK(gamma_closed_form(coprime, {}, 9) == C(35));

  GradedGroup bad{{2, C(2)}};
  CHECK_THROWS_AS(gamma_closed_form(bad, {}, 6), DomainError);
}

TEST_CASE("closed-form and realized providers agree") {
  GradedGroup h = example();
  auto cf = run(h, ClosedFormGammaProvider(), 10, Equivalence::naive);
  auto re = run(h, RealizedGammaProvider(), 10, Equivalence::naive);
  CHECK(cf.count == 54);
  CHECK(re.count == cf.count);
  CHECK(re.per_degree == cf.per_degree);
}

TEST_CASE("realized Gamma matches closed form on small random homology") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> ord(1, 6);
  ClosedFormGammaProvider cf;
  for (int t = 0; t < 6; ++t) {
    GradedGroup h;
    for (int n = 3; n <= 5; ++n) h[n] = C(ord(rng));
    AdaptedSystem s = initial_system(h);
    while (s.built < 8) {
      const int k = s.built;
      const AbGroup g = gamma_via_realization(s, k).presented.group();
      CHECK(g == cf.gamma(s, k));
      auto homs = hom_elements(at_degree(h, k + 1), g);
      s = realize_step(s, homs[static_cast<size_t>(t) % homs.size()]);
    }
  }
}

TEST_CASE("infinite Hom is detected at the right degree") {
  GradedGroup h = load_hgr(fx("h1_h3_free.hgr"));
  auto r = run(h, RealizedGammaProvider(), 4, Equivalence::naive);
  CHECK(r.outcome == ClassificationResult::Outcome::infinite);
  CHECK(r.infinite_degree == 3);
}

TEST_CASE("finite homology gives a finite answer") {
  GradedGroup h{{3, C(2)}, {4, C(2)}, {5, C(2)}};
  auto r = run(h, RealizedGammaProvider(), 6, Equivalence::naive);
  CHECK(r.outcome == ClassificationResult::Outcome::finite);
  GradedGroup none{{3, C(5)}};
  auto z = run(none, ClosedFormGammaProvider(), 6, Equivalence::naive);
  CHECK(z.count == 1);
}

TEST_CASE("all-zero table gives only the zero system") {
  TableGammaProvider zero(GammaTable{});
  auto r = run(example(), zero, 10, Equivalence::naive);
  CHECK(r.count == 1);
  CHECK(r.representatives.front().b.at(7).is_zero());
}

TEST_CASE("orbit counting") {
  GradedGroup h = example();
  ClosedFormGammaProvider cf;
  auto naive = run(h, cf, 10, Equivalence::naive);
  auto orbit = run(h, cf, 10, Equivalence::orbit);
  CHECK(orbit.outcome == ClassificationResult::Outcome::finite);
  CHECK(orbit.count <= naive.count);
  CHECK(orbit.count == 24);
  CHECK(run(h, RealizedGammaProvider(), 10, Equivalence::orbit).outcome ==
        ClassificationResult::Outcome::unknown);
}

TEST_CASE("automorphism action on Gamma") {
  GradedGroup h = example();
  ClosedFormGammaProvider cf;
  AdaptedSystem s = initial_system(h, false);
  for (int n = 6; n <= 9; ++n) {
    auto id = cf.action(s, s, {}, n);
    CHECK(equal(id, AbHom::identity(cf.gamma(s, n))));
  }
  // x2 on H4 = Z3 acts by 2 * 2 = 1 on Tor(H4, H4) and on H4 x H4
  IntMatrix two = IntMatrix::Constant(1, 1, 2);
  std::map<int, AbHom> f{{4, AbHom(C(3), C(3), two)}};
  auto a8 = induced_gamma_action(cf, s, s, f, 8);
  CHECK(equal(a8, AbHom::identity(C(3))));
  auto a9 = induced_gamma_action(cf, s, s, f, 9);
  CHECK(equal(a9, AbHom::identity(C(6))));
  // H3 = Z2 has no nontrivial automorphism, so Gamma_6 = Z2 is fixed
  CHECK(automorphisms(C(2)).size() == 1);
}
